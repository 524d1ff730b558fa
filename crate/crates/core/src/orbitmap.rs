//! Orbit classes: decompose the jet Euler class in the ideal generated by the
//! group classes, apply the S-homomorphism and slant against cycles.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::algebra::rational::{self, Rational};
use crate::algebra::{reduce_with_cofactors, CofactorDecomposition, Polynomial, RingMorphism};
use crate::charclass::{chern_number, f_x, jet_total_chern};
use crate::error::{Error, Result};
use crate::spaces::{
    even_quadric, format_params, odd_quadric, so_projective, GroupPresentation, HomologyCycle, LineBundleSpec, Params,
    SpacePresentation,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTerm {
    pub symbol: String,
    pub degree: u32,
    pub coefficient: Rational,
}

/// A rational combination of primitive generators `γ*(g)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupClass {
    terms: Vec<GroupTerm>,
}

impl GroupClass {
    pub fn zero() -> Self {
        GroupClass::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = GroupTerm>) -> Self {
        let mut g = GroupClass::zero();
        for t in terms {
            g.add_term(&t.symbol, t.degree, t.coefficient);
        }
        g
    }

    pub fn add_term(&mut self, symbol: &str, degree: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.iter().position(|t| t.symbol == symbol) {
            Some(i) => {
                self.terms[i].coefficient += c;
                if self.terms[i].coefficient.is_zero() {
                    self.terms.remove(i);
                }
            }
            None => {
                self.terms.push(GroupTerm { symbol: symbol.to_string(), degree, coefficient: c });
                self.terms.sort_by(|a, b| (a.degree, &a.symbol).cmp(&(b.degree, &b.symbol)));
            }
        }
    }

    pub fn terms(&self) -> &[GroupTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, symbol: &str) -> Rational {
        self.terms.iter().find(|t| t.symbol == symbol).map(|t| t.coefficient.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        GroupClass::from_terms(self.terms.iter().map(|t| GroupTerm { coefficient: &t.coefficient * c, ..t.clone() }))
    }

    pub fn add(&self, other: &GroupClass) -> Self {
        GroupClass::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.iter().map(|t| t.degree).collect();
        d.dedup();
        d
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let neg = rational::is_negative(&t.coefficient);
            let abs = if neg { -t.coefficient.clone() } else { t.coefficient.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                if abs.is_integer() {
                    out.push_str(&abs.to_string());
                } else {
                    out.push_str(&format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom()));
                }
            }
            out.push_str(&format!("\\gamma^*({})", latex_symbol(&t.symbol)));
        }
        out
    }
}

fn latex_symbol(s: &str) -> String {
    let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
    let (head, tail) = s.split_at(split);
    let head = if head == "chi" { "\\chi" } else { head };
    if tail.is_empty() {
        head.to_string()
    } else {
        format!("{head}_{{{tail}}}")
    }
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = rational::is_negative(&t.coefficient);
            let abs = if neg { -t.coefficient.clone() } else { t.coefficient.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{}*", rational::format(&abs))?;
            }
            write!(f, "g({})", t.symbol)?;
        }
        Ok(())
    }
}

impl Serialize for GroupClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.terms.len()))?;
        for t in &self.terms {
            m.serialize_entry(&t.symbol, &rational::format(&t.coefficient))?;
        }
        m.end()
    }
}

/// `Σ γ*(g_i) ⊠ x_i` with `x_i` in the ring of `X`.
#[derive(Clone, Debug, Default)]
pub struct MixedClass {
    pub terms: Vec<(String, u32, Polynomial)>,
}

impl MixedClass {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitClassResult {
    pub space: String,
    pub bundle: String,
    pub params: Params,
    pub cycle: String,
    pub value: GroupClass,
    #[serde(with = "rational::serde_str")]
    pub hypothesis_chern_number: Rational,
}

fn group_generators(space: &SpacePresentation) -> Vec<Polynomial> {
    space.beta.images().to_vec()
}

/// `x = Σ β*(g_i)·a_i` over the group generators `g_i`; fails unless `x ∈ I₁`.
pub fn decompose_in_i1(x: &Polynomial, space: &SpacePresentation) -> Result<CofactorDecomposition> {
    let d = reduce_with_cofactors(x, &group_generators(space), &space.borel)?;
    if !d.is_member() {
        return Err(Error::NotInI1 { remainder: space.borel.format(&d.remainder) });
    }
    Ok(d)
}

/// Linear part of a group-ring element as primitive symbols; decomposables die.
pub fn gamma_star(p: &Polynomial, group: &GroupPresentation) -> GroupClass {
    let mut g = GroupClass::zero();
    for (e, c) in p.terms() {
        let ones: Vec<usize> = e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| i).collect();
        if ones.len() == 1 && e[ones[0]] == 1 {
            let sym = &group.primitives[ones[0]];
            g.add_term(&sym.symbol, sym.degree, c.clone());
        }
    }
    g
}

/// `Σ b_i ⊗ a_i ↦ Σ γ*(b_i) ⊠ α*(a_i)`.
pub fn tilde_s(pairs: &[(Polynomial, Polynomial)], space: &SpacePresentation) -> Result<MixedClass> {
    let mut acc: BTreeMap<(u32, String), Polynomial> = BTreeMap::new();
    for (b, a) in pairs {
        let xa = space.alpha.apply(a)?;
        if xa.is_zero() {
            continue;
        }
        for t in gamma_star(b, &space.group).terms() {
            let e = acc.entry((t.degree, t.symbol.clone())).or_insert_with(|| space.x_ring.zero());
            e.add_scaled(&xa, &t.coefficient);
        }
    }
    let terms = acc
        .into_iter()
        .map(|((deg, sym), p)| (sym, deg, space.x_ring.normal_form(&p)))
        .filter(|(_, _, p)| !p.is_zero())
        .collect();
    Ok(MixedClass { terms })
}

/// `S₁(x)` through the cofactor decomposition of `x` against the group generators.
pub fn s_homomorphism(x: &Polynomial, space: &SpacePresentation) -> Result<MixedClass> {
    let d = decompose_in_i1(x, space)?;
    let pairs: Vec<(Polynomial, Polynomial)> = space
        .group
        .bg_ring
        .generators()
        .iter()
        .enumerate()
        .zip(&d.pairs)
        .map(|((i, _), (_, a))| (space.group.bg_ring.gen(i), a.clone()))
        .collect();
    tilde_s(&pairs, space)
}

pub fn slant(m: &MixedClass, y: &HomologyCycle, space: &SpacePresentation) -> GroupClass {
    let mut g = GroupClass::zero();
    for (sym, deg, x) in &m.terms {
        g.add_term(sym, *deg, space.pairing(x, y));
    }
    g
}

/// S₁ of the jet Euler class for a given equivariant first Chern class.
pub fn jet_s_class(space: &SpacePresentation, c1: &Polynomial) -> Result<MixedClass> {
    let e = f_x(space, c1);
    debug_assert!(space.alpha.apply(&e).map(|p| p.is_zero()).unwrap_or(false));
    s_homomorphism(&e, space)
}

fn hypothesis(space: &SpacePresentation, c1: &Polynomial, y: &HomologyCycle) -> Result<Rational> {
    chern_number(space, &jet_total_chern(space, c1), y)
}

/// Orbit class for an explicit `c₁^G(L)`; depends on `L` only through it.
pub fn orbit_class_for_c1(space: &SpacePresentation, c1: &Polynomial, y: &HomologyCycle) -> Result<(GroupClass, Rational)> {
    let h = hypothesis(space, c1, y)?;
    if h.is_zero() {
        return Err(Error::HypothesisViolated { cycle: y.name.clone(), dim: y.complex_dim });
    }
    let m = jet_s_class(space, c1)?;
    Ok((slant(&m, y, space), h))
}

fn instantiate(space: &SpacePresentation, bundle: &LineBundleSpec, params: &Params) -> Result<Polynomial> {
    if !bundle.jet_spanned(params)? {
        return Err(Error::NotJetSpanned { bundle: bundle.name.clone(), params: format_params(params) });
    }
    bundle.c1(&space.borel, params)
}

pub fn orbit_class(space: &SpacePresentation, bundle: &LineBundleSpec, params: &Params, y: &HomologyCycle) -> Result<OrbitClassResult> {
    let c1 = instantiate(space, bundle, params)?;
    let (value, h) = orbit_class_for_c1(space, &c1, y)?;
    Ok(OrbitClassResult {
        space: space.id.clone(),
        bundle: bundle.name.clone(),
        params: params.clone(),
        cycle: y.name.clone(),
        value,
        hypothesis_chern_number: h,
    })
}

/// Orbit classes for several cycles, sharing one decomposition.
pub fn orbit_classes(
    space: &SpacePresentation,
    bundle: &LineBundleSpec,
    params: &Params,
    cycles: &[&HomologyCycle],
) -> Result<Vec<Result<OrbitClassResult>>> {
    let c1 = instantiate(space, bundle, params)?;
    let total = jet_total_chern(space, &c1);
    let m = jet_s_class(space, &c1)?;
    Ok(cycles
        .iter()
        .map(|y| {
            let h = chern_number(space, &total, y)?;
            if h.is_zero() {
                return Err(Error::HypothesisViolated { cycle: y.name.clone(), dim: y.complex_dim });
            }
            Ok(OrbitClassResult {
                space: space.id.clone(),
                bundle: bundle.name.clone(),
                params: params.clone(),
                cycle: y.name.clone(),
                value: slant(&m, y, space),
                hypothesis_chern_number: h,
            })
        })
        .collect())
}

/// Degree of `Sing_Y(L)`: the Chern number `⟨c_{dim Y}(J(L)), [Y]⟩`.
pub fn discriminant_degree(space: &SpacePresentation, bundle: &LineBundleSpec, params: &Params, y: &HomologyCycle) -> Result<Rational> {
    let c1 = bundle.c1(&space.borel, params)?;
    hypothesis(space, &c1, y)
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferRecord {
    pub cycle: String,
    pub restricted_cycle: String,
    pub lhs: GroupClass,
    pub rhs: GroupClass,
    pub equal: bool,
}

/// A preimage under `α*` of a class of the ring of `X`.
fn lift_through_alpha(space: &SpacePresentation, p: &Polynomial) -> Result<Polynomial> {
    let x = &space.x_ring;
    if p.is_zero() {
        return Ok(space.borel.zero());
    }
    let d = x.degree(p).ok_or_else(|| Error::MalformedTransfer("inhomogeneous dual class".into()))?;
    let monos = space.borel.standard_monomials(d);
    let cols: Vec<Vec<Rational>> = monos.iter().map(|e| -> Result<Vec<Rational>> { Ok(x.coordinates(&space.alpha.apply(&space.borel.monomial(e))?, d)) }).collect::<Result<_>>()?;
    let rows = x.standard_monomials(d).len();
    let a: Vec<Vec<Rational>> = (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let sol = crate::algebra::linalg::solve(&a, &x.coordinates(p, d))
        .ok_or_else(|| Error::MalformedTransfer("dual class is not in the image of alpha".into()))?;
    let mut out = space.borel.zero();
    for (e, c) in monos.iter().zip(sol) {
        out.add_scaled(&space.borel.monomial(e), &c);
    }
    Ok(out)
}

/// Compares `O*(Lk_Z(L))` on `X` with `(1−r)/r · O*(Lk_{i^!Z}(i*L))` on the divisor `Y`.
/// `restriction` is `i*` on Borel rings.
pub fn divisor_transfer_check(
    x_space: &SpacePresentation,
    y_space: &SpacePresentation,
    bundle: &LineBundleSpec,
    params: &Params,
    z: &HomologyCycle,
    r: &Rational,
    restriction: &RingMorphism,
) -> Result<TransferRecord> {
    if r.is_zero() {
        return Err(Error::MalformedTransfer("r must be nonzero".into()));
    }
    if x_space.group.primitives != y_space.group.primitives {
        return Err(Error::MalformedTransfer(format!("groups {} and {} differ", x_space.group.name, y_space.group.name)));
    }
    if z.complex_dim == 0 || y_space.dim_x + 1 != x_space.dim_x {
        return Err(Error::MalformedTransfer("Y must be a divisor and Z of positive dimension".into()));
    }
    for (bx, by) in x_space.beta.images().iter().zip(y_space.beta.images()) {
        if &restriction.apply(bx)? != by {
            return Err(Error::MalformedTransfer("restriction does not commute with the group maps".into()));
        }
    }
    let c1 = instantiate(x_space, bundle, params)?;
    let (lhs, _) = orbit_class_for_c1(x_space, &c1, z)?;

    let pd = lift_through_alpha(x_space, &z.pd_class)?;
    let restricted = HomologyCycle {
        name: format!("i^!{}", z.name),
        complex_dim: z.complex_dim - 1,
        pd_class: y_space.alpha.apply(&restriction.apply(&pd)?)?,
    };
    let (on_y, _) = orbit_class_for_c1(y_space, &restriction.apply(&c1)?, &restricted)?;
    let factor = (Rational::one() - r) / r;
    let rhs = on_y.scale(&factor);
    if !lhs.is_zero() && !rhs.is_zero() && lhs.degrees() != rhs.degrees() {
        return Err(Error::MalformedTransfer(format!("degrees {:?} and {:?} differ", lhs.degrees(), rhs.degrees())));
    }
    let equal = lhs == rhs;
    Ok(TransferRecord { cycle: z.name.clone(), restricted_cycle: restricted.name, lhs, rhs, equal })
}

/// `P^{n+1}` with `SO(n+2)`, its invariant quadric and the restriction map.
pub fn so_quadric_divisor(n: u32) -> Result<(SpacePresentation, SpacePresentation, RingMorphism)> {
    let x = so_projective(n)?;
    let y = match n {
        2 => even_quadric(1)?,
        3 => odd_quadric(1)?,
        _ => return Err(Error::UnsupportedSize(format!("quadric divisor n={n} outside {{2, 3}}"))),
    };
    let images = x
        .borel
        .names()
        .iter()
        .map(|g| match y.beta.image_of(g) {
            Some(p) => Ok(p.clone()),
            None if g == "c" => Ok(y.borel.var("c")),
            None => Err(Error::MalformedTransfer(format!("no restriction for {g}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let rho = RingMorphism::new(x.borel.clone(), y.borel.clone(), images)?;
    Ok((x, y, rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};
    use crate::spaces::{params, projective_space};

    fn m(d: i64, n: i64, i: i64) -> Rational {
        let base = int(d - 1);
        let sign = if (i + 1) % 2 == 0 { int(1) } else { int(-1) };
        rational::pow(&base, (n + 1) as u32) + sign * rational::pow(&base, (n + 1 - i) as u32)
    }

    fn orbit(s: &SpacePresentation, d: i64, cycle: &str) -> GroupClass {
        orbit_class(s, s.require_bundle("O").unwrap(), &params(&[("d", d)]), s.require_cycle(cycle).unwrap()).unwrap().value
    }

    #[test]
    fn p1_d3_point() {
        let s = projective_space(1).unwrap();
        let v = orbit(&s, 3, "P0");
        assert_eq!(v.to_string(), "-3*g(c2)");
        assert_eq!(v.terms()[0].degree, 3);
    }

    #[test]
    fn p2_d3_line() {
        let s = projective_space(2).unwrap();
        assert_eq!(orbit(&s, 3, "P1").coefficient("c2"), -m(3, 2, 2));
        assert_eq!(orbit(&s, 3, "P0").coefficient("c3"), int(-9));
        assert!(orbit(&s, 3, "P2").is_zero());
    }

    #[test]
    fn projective_decomposition_matches_display() {
        // e = −Σ m(d,n,i) a_i b1^{n+1−i}, so S₁ = −Σ m γ*(c_i) ⊠ c^{n+1−i}
        for n in 1..=3i64 {
            let s = projective_space(n as u32).unwrap();
            let c1 = s.borel.parse("4*b1").unwrap();
            let mc = jet_s_class(&s, &c1).unwrap();
            for (sym, _, x) in &mc.terms {
                let i: i64 = sym[1..].parse().unwrap();
                let expected = s.x_ring.var("c").pow((n + 1 - i) as u32).scale(&-m(4, n, i));
                assert_eq!(x, &expected, "n={n} {sym}");
            }
        }
    }

    #[test]
    fn trivial_decompositions() {
        let s = projective_space(3).unwrap();
        let c2 = s.beta.image_of("c2").unwrap().clone();
        let mc = s_homomorphism(&c2, &s).unwrap();
        assert_eq!(mc.terms.len(), 1);
        assert_eq!(mc.terms[0].0, "c2");
        assert_eq!(mc.terms[0].2, s.x_ring.one());
        assert!(s_homomorphism(&s.borel.zero(), &s).unwrap().is_zero());
        let prod = &c2 * s.beta.image_of("c3").unwrap();
        assert!(s_homomorphism(&prod, &s).unwrap().is_zero());
        assert!(matches!(decompose_in_i1(&s.borel.var("b1"), &s), Err(Error::NotInI1 { .. })));
    }

    #[test]
    fn odd_quadric_odd_cycles_vanish() {
        let s = odd_quadric(1).unwrap();
        assert!(orbit(&s, 3, "Z_1").is_zero());
        assert!(orbit(&s, 3, "Z_3").is_zero());
        // k = 0: −m(d,4,4)/(d−2) γ*(p2)
        assert_eq!(orbit(&s, 3, "Z_0").coefficient("p2"), -m(3, 4, 4));
        // k = 2 ≥ n+1: factor 2
        assert_eq!(orbit(&s, 4, "Z_2").coefficient("p1"), -m(4, 4, 2) * frac(2, 2));
    }

    #[test]
    fn even_quadric_w_cycles_flip_chi() {
        let s = even_quadric(2).unwrap();
        let a = orbit(&s, 3, "W_1");
        let b = orbit(&s, 3, "W_2");
        assert_eq!(a.coefficient("chi"), m(3, 5, 6));
        assert_eq!(b.coefficient("chi"), -m(3, 5, 6));
    }

    #[test]
    fn hypothesis_and_jet_checks() {
        let s = projective_space(2).unwrap();
        let o = s.require_bundle("O").unwrap();
        let y = s.require_cycle("P1").unwrap();
        assert!(matches!(orbit_class(&s, o, &params(&[("d", 1)]), y), Err(Error::HypothesisViolated { .. })));
        assert!(matches!(orbit_class(&s, o, &params(&[("d", 0)]), y), Err(Error::NotJetSpanned { .. })));
        assert_eq!(discriminant_degree(&s, o, &params(&[("d", 2)]), s.require_cycle("P2").unwrap()).unwrap(), int(3));
    }

    #[test]
    fn divisor_transfer_small() {
        let (x, y, rho) = so_quadric_divisor(2).unwrap();
        let o = x.require_bundle("O").unwrap();
        let rec = divisor_transfer_check(&x, &y, o, &params(&[("d", 3)]), x.require_cycle("P2").unwrap(), &frac(2, 3), &rho).unwrap();
        assert!(rec.equal, "{} vs {}", rec.lhs, rec.rhs);
        assert!(!rec.lhs.is_zero());
    }

    #[test]
    fn formatting() {
        let g = GroupClass::from_terms(vec![
            GroupTerm { symbol: "p2".into(), degree: 7, coefficient: frac(-3, 2) },
            GroupTerm { symbol: "chi".into(), degree: 5, coefficient: int(1) },
        ]);
        assert_eq!(g.to_string(), "g(chi) - 3/2*g(p2)");
        assert_eq!(g.to_latex(), "\\gamma^*(\\chi) - \\frac{3}{2}\\gamma^*(p_{2})");
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"chi":"1","p2":"-3/2"}"#);
    }
}
