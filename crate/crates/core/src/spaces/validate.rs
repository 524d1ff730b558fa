//! Invariant checks for presentations.

use num_traits::One;

use crate::algebra::linalg;
use crate::algebra::{Polynomial, Rational, RingMorphism};

use super::{Params, SpacePresentation, Violation};

fn morphism_violations(name: &str, f: &RingMorphism, out: &mut Vec<Violation>) {
    for v in f.violations() {
        let kind = if v.starts_with("degree mismatch") {
            "degree-mismatch"
        } else if v.starts_with("relation") {
            "relation-not-preserved"
        } else {
            "inhomogeneous"
        };
        out.push(Violation::new(kind, format!("{name}: {v}")));
    }
}

/// Every violated invariant, with the offending generator, relation or cycle.
pub fn validate_presentation(s: &SpacePresentation) -> Vec<Violation> {
    let mut out = Vec::new();
    morphism_violations("beta", &s.beta, &mut out);
    morphism_violations("alpha", &s.alpha, &mut out);

    if let Ok(ab) = s.beta.then(&s.alpha) {
        for (g, img) in s.group.bg_ring.names().iter().zip(ab.images()) {
            if !img.is_zero() {
                out.push(Violation::new("composite-nonzero", format!("alpha(beta({g})) = {}", s.x_ring.format(img))));
            }
        }
    } else {
        out.push(Violation::new("composite-nonzero", "beta target is not alpha source"));
    }

    if s.cotangent_chern.len() != s.dim_x as usize + 1 {
        out.push(Violation::new(
            "cotangent",
            format!("{} classes given, expected c_0..c_{}", s.cotangent_chern.len(), s.dim_x),
        ));
    }
    for (i, c) in s.cotangent_chern.iter().enumerate() {
        if i == 0 {
            if c.as_constant() != Some(Rational::one()) {
                out.push(Violation::new("cotangent", format!("c_0 = {}, expected 1", s.borel.format(c))));
            }
        } else if !c.is_zero() && s.borel.degree(c) != Some(2 * i as u32) {
            out.push(Violation::new("cotangent", format!("c_{i} = {} is not homogeneous of degree {}", s.borel.format(c), 2 * i)));
        }
    }

    out.extend(s.integration_issues().iter().cloned());

    let x = &s.x_ring;
    let maxw = x.weights().iter().copied().max().unwrap_or(2);
    for d in (2 * s.dim_x + 2..=2 * s.dim_x + 2 * maxw).step_by(2) {
        if !x.standard_monomials(d).is_empty() {
            out.push(Violation::new("x-ring", format!("ring of X is nonzero in degree {d} > 2*dim")));
            break;
        }
    }

    for c in &s.cycles {
        if c.complex_dim > s.dim_x {
            out.push(Violation::new("cycle-degree", format!("{}: dimension {} exceeds dim X = {}", c.name, c.complex_dim, s.dim_x)));
            continue;
        }
        let want = 2 * (s.dim_x - c.complex_dim);
        if !c.pd_class.is_zero() && x.degree(&c.pd_class) != Some(want) {
            out.push(Violation::new("cycle-degree", format!("{}: dual class {} is not of degree {want}", c.name, x.format(&c.pd_class))));
        }
    }
    for (i, a) in s.cycles.iter().enumerate() {
        if s.cycles[..i].iter().any(|b| b.name == a.name) {
            out.push(Violation::new("cycle-degree", format!("duplicate cycle name {}", a.name)));
        }
    }

    for m in 0..=s.dim_x {
        let basis = x.standard_monomials(2 * m);
        let cycles: Vec<_> = s.cycles.iter().filter(|c| c.complex_dim == m).collect();
        if basis.is_empty() && cycles.is_empty() {
            continue;
        }
        let matrix: Vec<Vec<Rational>> =
            basis.iter().map(|e| cycles.iter().map(|c| s.pairing(&x.monomial(e), c)).collect()).collect();
        if basis.len() != cycles.len() {
            out.push(Violation::new(
                "pairing-singular",
                format!("degree {}: {} cohomology classes against {} cycles", 2 * m, basis.len(), cycles.len()),
            ));
        } else if linalg::rank(&matrix) < basis.len() {
            out.push(Violation::new("pairing-singular", format!("pairing matrix in degree {} is singular", 2 * m)));
        }
    }

    for b in &s.bundles {
        let probe: Params = b.parameters(&s.borel).into_iter().map(|p| (p, 1)).collect();
        if let Err(e) = b.c1(&s.borel, &probe) {
            out.push(Violation::new("bundle", format!("{}: {e}", b.name)));
        }
        if let Err(e) = b.jet_spanned(&probe) {
            out.push(Violation::new("bundle", format!("{}: {e}", b.name)));
        }
    }

    // α* hits every generator of the ring of X
    for (gi, g) in x.generators().iter().enumerate() {
        let target = x.standard_monomials(g.degree);
        let rows: Vec<Vec<Rational>> = s
            .borel
            .standard_monomials(g.degree)
            .iter()
            .filter_map(|e| s.alpha.apply(&s.borel.monomial(e)).ok())
            .map(|p| x.coordinates(&p, g.degree))
            .collect();
        let mut rows = rows;
        let want = x.coordinates(&x.gen(gi), g.degree);
        let r0 = linalg::rank(&rows);
        rows.push(want);
        if target.is_empty() {
            continue;
        }
        if linalg::rank(&rows) > r0 {
            out.push(Violation::new("alpha-not-surjective", format!("{} is not in the image of alpha", g.name)));
        }
    }
    out
}

fn coordinate_rows(s: &SpacePresentation, polys: impl Iterator<Item = Polynomial>, d: u32) -> Vec<Vec<Rational>> {
    polys.map(|p| s.borel.coordinates(&p, d)).collect()
}

/// Compares `ker α*` with the ideal generated by `β*` of the group generators,
/// degree by degree up to `max_degree`.
pub fn check_kernel_equals_i1(s: &SpacePresentation, max_degree: u32) -> Vec<Violation> {
    let mut out = Vec::new();
    for d in (2..=max_degree).step_by(2) {
        let basis = s.borel.standard_monomials(d);
        if basis.is_empty() {
            continue;
        }
        let images: Vec<Vec<Rational>> = basis
            .iter()
            .map(|e| s.alpha.apply(&s.borel.monomial(e)).map(|p| s.x_ring.coordinates(&p, d)).unwrap_or_default())
            .collect();
        let cols = s.x_ring.standard_monomials(d).len();
        let ker = basis.len() - if cols == 0 { 0 } else { linalg::rank(&images) };
        let mut gens = Vec::new();
        for (g, img) in s.group.bg_ring.generators().iter().zip(s.beta.images()) {
            if g.degree > d {
                continue;
            }
            for e in s.borel.standard_monomials(d - g.degree) {
                gens.push(&s.borel.monomial(&e) * img);
            }
        }
        let i1 = linalg::rank(&coordinate_rows(s, gens.into_iter(), d));
        if i1 != ker {
            out.push(Violation::new(
                "kernel-mismatch",
                format!("degree {d}: dim ker(alpha) = {ker}, dim I1 = {i1}"),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{even_quadric, grassmannian, odd_quadric, projective_space, so_projective};

    #[test]
    fn kernel_equals_i1_on_builtins() {
        let spaces = vec![
            projective_space(1).unwrap(),
            projective_space(3).unwrap(),
            odd_quadric(1).unwrap(),
            odd_quadric(2).unwrap(),
            even_quadric(1).unwrap(),
            even_quadric(2).unwrap(),
            even_quadric(3).unwrap(),
            grassmannian(2, 4).unwrap(),
            so_projective(2).unwrap(),
            so_projective(3).unwrap(),
        ];
        for s in spaces {
            let v = check_kernel_equals_i1(&s, 2 * s.dim_x + 2);
            assert!(v.is_empty(), "{}: {v:?}", s.id);
        }
    }

    #[test]
    fn detects_composite_nonzero() {
        let s = projective_space(2).unwrap();
        let bad = crate::algebra::RingMorphism::unchecked(
            s.group.bg_ring.clone(),
            s.borel.clone(),
            vec![s.borel.parse("b2").unwrap(), s.borel.parse("-b1*b2").unwrap()],
        )
        .unwrap();
        let mut t = s.clone();
        t.beta = bad;
        assert!(validate_presentation(&t).iter().any(|v| v.kind == "composite-nonzero"));
    }
}
