//! Built-in presentations: projective spaces, quadrics, Grassmannians and the
//! SO-equivariant projective spaces shipped as config files.

use crate::algebra::rational::{frac, int};
use crate::algebra::{Exponents, Generator, OrderKind, Polynomial, Rational, Ring, RingMorphism, RingPresentation, TermOrder};
use crate::charclass::{reduce_total, whitney_sum, RootBlock, RootRing, TotalChernClass};
use crate::error::{Error, Result};

use super::{parse_presentation, Family, GroupPresentation, HomologyCycle, LineBundleSpec, SpacePresentation};

const SO4_P3: &str = include_str!("../../configs/so4_p3.toml");
const SO5_P4: &str = include_str!("../../configs/so5_p4.toml");

fn free(label: &str, gens: Vec<Generator>) -> Result<Ring> {
    RingPresentation::free(label, gens, OrderKind::Grevlex)
}

fn presented(label: &str, gens: Vec<Generator>, relations: &[String]) -> Result<Ring> {
    let tmp = free(label, gens.clone())?;
    let rels = relations.iter().map(|r| tmp.parse(r)).collect::<Result<Vec<_>>>()?;
    let n = gens.len();
    RingPresentation::new(label, gens, rels, TermOrder::new(OrderKind::Grevlex, n))
}

fn morphism(source: &Ring, target: &Ring, images: Vec<Polynomial>) -> Result<RingMorphism> {
    RingMorphism::new(source.clone(), target.clone(), images)
}

fn cycle(name: impl Into<String>, complex_dim: u32, pd_class: Polynomial) -> HomologyCycle {
    HomologyCycle { name: name.into(), complex_dim, pd_class }
}

/// Single-entry integration table `∫ p = value` for a top-degree class `p`,
/// expressed on the (one-dimensional) standard top-degree basis.
fn top_table(x: &Ring, dim: u32, p: &Polynomial, value: Rational) -> Result<Vec<(Exponents, Rational)>> {
    let top = x.standard_monomials(2 * dim);
    if top.len() != 1 {
        return Err(Error::Malformed(format!("{}: top degree has rank {}, expected 1", x.label(), top.len())));
    }
    let coeff = x.normal_form(p).coefficient(&top[0]);
    if coeff == int(0) {
        return Err(Error::Malformed(format!("{}: fundamental class vanishes", x.label())));
    }
    Ok(vec![(top[0].clone(), value / coeff)])
}

fn check_size(what: &str, ok: bool, bound: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedSize(format!("{what} outside {bound}")))
    }
}

/// `P^n` with `SL(n+1)`: `H*(BG) = Q[c_2..c_{n+1}]`, Borel ring `Q[b_1..b_n]`,
/// `β*(c_i) = b_i − b_1 b_{i−1}` with `b_{n+1} = 0`, `α*(b_i) = c^i`.
pub fn projective_space(n: u32) -> Result<SpacePresentation> {
    check_size(&format!("P^{n}"), (1..=11).contains(&n), "1 <= n <= 11")?;
    let bg = free("BSL", (2..=n + 1).map(|i| Generator::new(format!("c{i}"), 2 * i)).collect())?;
    let borel = free("Borel", (1..=n).map(|i| Generator::new(format!("b{i}"), 2 * i)).collect())?;
    let x = presented("H(P)", vec![Generator::new("c", 2)], &[format!("c^{}", n + 1)])?;
    let b = |i: u32| if i == 0 { borel.one() } else if i <= n { borel.var(&format!("b{i}")) } else { borel.zero() };
    let beta = morphism(&bg, &borel, (2..=n + 1).map(|i| &b(i) - &(&b(1) * &b(i - 1))).collect())?;
    let h = x.var("c");
    let alpha = morphism(&borel, &x, (1..=n).map(|i| h.pow(i)).collect())?;

    // Ω = F ⊗ Q* with c1(F) = −b1 and c(Q) = 1 + b1 + … + bn
    let q = TotalChernClass::new(borel.clone(), (0..=n).map(b).collect())?;
    let omega = q.dual().tensor_line(&-&b(1));

    let integrate = top_table(&x, n, &h.pow(n), int(1))?;
    let cycles = (0..=n).map(|k| cycle(format!("P{k}"), k, h.pow(n - k))).collect();
    let bundles = vec![LineBundleSpec::new("O", "d*b1", "d >= 1")?];
    let group = GroupPresentation::new(&format!("SL{}", n + 1), bg)?;
    Ok(SpacePresentation::assemble(
        &format!("pn{n}"),
        Some(Family::Projective { n }),
        group,
        n,
        borel,
        x,
        beta,
        alpha,
        omega.components().to_vec(),
        integrate,
        cycles,
        bundles,
    ))
}

/// Quadric of dimension `2n+1` with `SO(2n+3)`.
pub fn odd_quadric(n: u32) -> Result<SpacePresentation> {
    check_size(&format!("odd quadric n={n}"), (1..=5).contains(&n), "1 <= n <= 5")?;
    let dim = 2 * n + 1;
    let bg = free("BSO", (1..=n + 1).map(|i| Generator::new(format!("p{i}"), 4 * i)).collect())?;
    let mut gens: Vec<Generator> = (1..=n).map(|i| Generator::new(format!("q{i}"), 4 * i)).collect();
    gens.push(Generator::new("c", 2));
    let borel = free("Borel", gens)?;
    let x = presented(
        "H(Q)",
        vec![Generator::new("h", 2), Generator::new("L", 2 * n + 2)],
        &[format!("h^{}", 2 * n + 2), format!("h^{} - 2*L", n + 1)],
    )?;
    let c = borel.var("c");
    let q = |i: u32| if i == 0 { borel.one() } else if i <= n { borel.var(&format!("q{i}")) } else { borel.zero() };
    let beta = morphism(&bg, &borel, (1..=n + 1).map(|i| &q(i) - &(&c.pow(2) * &q(i - 1))).collect())?;
    let (h, lam) = (x.var("h"), x.var("L"));
    let mut images: Vec<Polynomial> = (1..=n).map(|i| h.pow(2 * i)).collect();
    images.push(h.clone());
    let alpha = morphism(&borel, &x, images)?;

    // Ω = F ⊗ W with W = F^⊥/F of rank 2n+1, c(W) = 1 + q1 + … + qn
    let w = TotalChernClass::new(borel.clone(), (0..=dim).map(|k| if k % 2 == 0 { q(k / 2) } else { borel.zero() }).collect())?;
    let omega = w.dual().tensor_line(&-&c);

    let integrate = top_table(&x, dim, &h.pow(dim), int(2))?;
    let cycles = (0..=dim)
        .map(|k| {
            let pd = if k <= n { &lam * &h.pow(n - k) } else { h.pow(dim - k) };
            cycle(format!("Z_{k}"), k, x.normal_form(&pd))
        })
        .collect();
    let bundles = vec![LineBundleSpec::new("O", "d*c", "d >= 2")?];
    let group = GroupPresentation::new(&format!("SO{}", 2 * n + 3), bg)?;
    Ok(SpacePresentation::assemble(
        &format!("odd-quadric{n}"),
        Some(Family::OddQuadric { n }),
        group,
        dim,
        borel,
        x,
        beta,
        alpha,
        omega.components().to_vec(),
        integrate,
        cycles,
        bundles,
    ))
}

/// Quadric of dimension `2n` with `SO(2n+2)`. The top class of the rank-`2n`
/// bundle `W` is `q_n = (−1)^n χ1²`, and `β*(χ) = (−1)^n χ1 c`.
pub fn even_quadric(n: u32) -> Result<SpacePresentation> {
    check_size(&format!("even quadric n={n}"), (1..=5).contains(&n), "1 <= n <= 5")?;
    let dim = 2 * n;
    let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
    let mut bg_gens: Vec<Generator> = (1..=n).map(|i| Generator::new(format!("p{i}"), 4 * i)).collect();
    bg_gens.push(Generator::new("chi", 2 * n + 2));
    let bg = free("BSO", bg_gens)?;
    let mut gens: Vec<Generator> = (1..n).map(|i| Generator::new(format!("q{i}"), 4 * i)).collect();
    gens.push(Generator::new("chi1", 2 * n));
    gens.push(Generator::new("c", 2));
    let borel = free("Borel", gens)?;
    let extra = if n.is_multiple_of(2) { "L1*L2".to_string() } else { "L1^2".to_string() };
    let x = presented(
        "H(Q)",
        vec![Generator::new("h", 2), Generator::new("L1", 2 * n), Generator::new("L2", 2 * n)],
        &[format!("h^{}", 2 * n + 1), format!("h^{n} - L1 - L2"), "h*L1 - h*L2".to_string(), extra],
    )?;
    let (c, chi1) = (borel.var("c"), borel.var("chi1"));
    let q = |i: u32| match i {
        0 => borel.one(),
        i if i < n => borel.var(&format!("q{i}")),
        i if i == n => chi1.pow(2).scale(&sign),
        _ => borel.zero(),
    };
    let mut images: Vec<Polynomial> = (1..=n).map(|i| &q(i) - &(&c.pow(2) * &q(i - 1))).collect();
    images.push((&chi1 * &c).scale(&sign));
    let beta = morphism(&bg, &borel, images)?;
    let (h, l1, l2) = (x.var("h"), x.var("L1"), x.var("L2"));
    let mut images: Vec<Polynomial> = (1..n).map(|i| h.pow(2 * i)).collect();
    images.push(&l1 - &l2);
    images.push(h.clone());
    let alpha = morphism(&borel, &x, images)?;

    let w = TotalChernClass::new(borel.clone(), (0..=dim).map(|k| if k % 2 == 0 { q(k / 2) } else { borel.zero() }).collect())?;
    let omega = w.dual().tensor_line(&-&c);

    let integrate = top_table(&x, dim, &h.pow(dim), int(2))?;
    let mut cycles: Vec<HomologyCycle> = Vec::new();
    for k in 0..=dim {
        if k == n {
            let (w1, w2) = if n.is_multiple_of(2) { (l1.clone(), l2.clone()) } else { (l2.clone(), l1.clone()) };
            cycles.push(cycle("W_1", n, w1));
            cycles.push(cycle("W_2", n, w2));
        } else {
            let pd = if k < n { h.pow(dim - k).scale(&frac(1, 2)) } else { h.pow(dim - k) };
            cycles.push(cycle(format!("Z_{k}"), k, x.normal_form(&pd)));
        }
    }
    let bundles = vec![LineBundleSpec::new("O", "d*c", "d >= 2")?];
    let group = GroupPresentation::new(&format!("SO{}", 2 * n + 2), bg)?;
    Ok(SpacePresentation::assemble(
        &format!("even-quadric{n}"),
        Some(Family::EvenQuadric { n }),
        group,
        dim,
        borel,
        x,
        beta,
        alpha,
        omega.components().to_vec(),
        integrate,
        cycles,
        bundles,
    ))
}

/// Partitions in the `k × (n−k)` box, by increasing size.
pub fn schubert_partitions(k: u32, n: u32) -> Vec<Vec<u32>> {
    fn rec(rows: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.iter().copied().filter(|&x| x > 0).collect());
        if cur.len() as u32 == rows {
            return;
        }
        let last = cur.last().copied().unwrap_or(max);
        for v in 1..=last {
            cur.push(v);
            rec(rows, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, n - k, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().sum::<u32>().cmp(&b.iter().sum::<u32>()).then_with(|| b.cmp(a)));
    out
}

fn schubert_name(lambda: &[u32]) -> String {
    format!("X[{}]", lambda.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
}

/// Determinant by cofactor expansion along the first row, skipping zeros.
fn poly_det(ring: &Ring, m: &[Vec<Polynomial>]) -> Polynomial {
    fn rec(ring: &Ring, m: &[Vec<Polynomial>], row: usize, used: &mut Vec<bool>) -> Polynomial {
        if row == m.len() {
            return ring.one();
        }
        let mut acc = ring.zero();
        let mut sign = 1i64;
        for j in 0..m.len() {
            if used[j] {
                continue;
            }
            if !m[row][j].is_zero() {
                used[j] = true;
                let minor = rec(ring, m, row + 1, used);
                used[j] = false;
                if !minor.is_zero() {
                    acc.add_scaled(&ring.normal_form(&(&m[row][j] * &minor)), &int(sign));
                }
            }
            sign = -sign;
        }
        acc
    }
    rec(ring, m, 0, &mut vec![false; m.len()])
}

/// `Gr(k, n)` of `k`-planes in `C^n` with `SL(n)`. Borel ring in the Chern
/// classes `t_i = c_i(Q)` and `s_j = c_j(S)`, `j ≥ 2` (`s_1 = −t_1`); the ring of
/// `X` in `y_j = c_j(S*)` with relations `[1/c(y)]_j = 0` for `j > n−k`.
pub fn grassmannian(k: u32, n: u32) -> Result<SpacePresentation> {
    check_size(&format!("Gr({k},{n})"), 1 <= k && k < n && n <= 8, "1 <= k < n <= 8")?;
    let r = n - k;
    let dim = k * r;
    let bg = free("BSL", (2..=n).map(|i| Generator::new(format!("c{i}"), 2 * i)).collect())?;
    let mut gens: Vec<Generator> = (1..=r).map(|i| Generator::new(format!("t{i}"), 2 * i)).collect();
    gens.extend((2..=k).map(|j| Generator::new(format!("s{j}"), 2 * j)));
    let borel = free("Borel", gens)?;
    let t = |i: u32| if i == 0 { borel.one() } else if i <= r { borel.var(&format!("t{i}")) } else { borel.zero() };
    let s = |j: u32| match j {
        0 => borel.one(),
        1 => -&borel.var("t1"),
        j if j <= k => borel.var(&format!("s{j}")),
        _ => borel.zero(),
    };
    let beta_images = (2..=n)
        .map(|i| (0..=i).fold(borel.zero(), |acc, j| &acc + &(&s(j) * &t(i - j))))
        .collect();
    let beta = morphism(&bg, &borel, beta_images)?;

    // 1/c(y) in the free ring on y_1..y_k
    let ygens: Vec<Generator> = (1..=k).map(|j| Generator::new(format!("y{j}"), 2 * j)).collect();
    let yfree = free("H(Gr)", ygens.clone())?;
    let mut inv = vec![yfree.one()];
    for j in 1..=n {
        let mut acc = yfree.zero();
        for i in 1..=j.min(k) {
            acc -= &(&yfree.var(&format!("y{i}")) * &inv[(j - i) as usize]);
        }
        inv.push(acc);
    }
    let rels: Vec<Polynomial> = (r + 1..=n).map(|j| inv[j as usize].clone()).collect();
    let x = RingPresentation::new("H(Gr)", ygens, rels, TermOrder::new(OrderKind::Grevlex, k as usize))?;
    let sgn = |i: u32| if i.is_multiple_of(2) { int(1) } else { int(-1) };
    let mut images: Vec<Polynomial> = (1..=r).map(|i| x.normal_form(&inv[i as usize].scale(&sgn(i)))).collect();
    images.extend((2..=k).map(|j| x.var(&format!("y{j}")).scale(&sgn(j))));
    let alpha = morphism(&borel, &x, images)?;

    // Ω = S ⊗ Q*, expanded over the roots of the smaller tautological bundle
    let cq = TotalChernClass::new(borel.clone(), (0..=r).map(t).collect())?;
    let cs = TotalChernClass::new(borel.clone(), (0..=k).map(s).collect())?;
    let (block, other, negate) = if k <= r {
        (RootBlock::new("S", (1..=k).map(s).collect()), cq.dual(), false)
    } else {
        (RootBlock::new("Q", (1..=r).map(t).collect()), cs, true)
    };
    let rr = RootRing::new(borel.clone(), vec![block])?;
    let other = other.map(rr.ring().clone(), |p| Ok(rr.embed(p)))?;
    let mut total = TotalChernClass::trivial(rr.ring().clone(), 0);
    for root in rr.block_roots(0) {
        let root = if negate { -&root } else { root };
        total = whitney_sum(&total, &other.tensor_line(&root))?;
    }
    let omega = reduce_total(&total, &rr)?;

    let ct = |i: i64| if i < 0 || i > r as i64 { x.zero() } else { alpha_t(&alpha, &x, i as u32) };
    let mut cycles = Vec::new();
    for lambda in schubert_partitions(k, n) {
        let len = lambda.len();
        let m: Vec<Vec<Polynomial>> = (0..len)
            .map(|i| (0..len).map(|j| ct(lambda[i] as i64 + j as i64 - i as i64)).collect())
            .collect();
        let pd = if len == 0 { x.one() } else { poly_det(&x, &m) };
        let size: u32 = lambda.iter().sum();
        cycles.push(cycle(schubert_name(&lambda), dim - size, pd));
    }
    cycles.reverse();
    let point = alpha_t(&alpha, &x, r).pow(k);
    let integrate = top_table(&x, dim, &point, int(1))?;
    let bundles = vec![LineBundleSpec::new("O", "d*t1", "d >= 1")?];
    let group = GroupPresentation::new(&format!("SL{n}"), bg)?;
    Ok(SpacePresentation::assemble(
        &format!("gr{k}-{n}"),
        Some(Family::Grassmannian { k, n }),
        group,
        dim,
        borel,
        x,
        beta,
        alpha,
        omega.components().to_vec(),
        integrate,
        cycles,
        bundles,
    ))
}

/// `α*(t_i) = c_i(Q)` in the ring of `X`, with `t_0 = 1`.
fn alpha_t(alpha: &RingMorphism, x: &Ring, i: u32) -> Polynomial {
    if i == 0 {
        x.one()
    } else {
        alpha.images()[(i - 1) as usize].clone()
    }
}

/// `P^{n+1}` with `SO(n+2)` for `n ∈ {2, 3}`, loaded from the shipped configs.
pub fn so_projective(n: u32) -> Result<SpacePresentation> {
    let text = match n {
        2 => SO4_P3,
        3 => SO5_P4,
        _ => return Err(Error::UnsupportedSize(format!("so-pn n={n} outside {{2, 3}}"))),
    };
    let mut s = parse_presentation(text)?;
    s.family = Some(Family::SoProjective { n });
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::validate_presentation;

    #[test]
    fn projective_tables() {
        let s = projective_space(1).unwrap();
        assert_eq!(s.beta.image_of("c2").unwrap(), &s.borel.parse("-b1^2").unwrap());
        let s = projective_space(2).unwrap();
        assert_eq!(s.alpha.image_of("b2").unwrap(), &s.x_ring.parse("c^2").unwrap());
        for n in 1..=4 {
            let s = projective_space(n).unwrap();
            for g in s.beta.images() {
                assert!(s.alpha.apply(g).unwrap().is_zero());
            }
            assert!(validate_presentation(&s).is_empty(), "{:?}", validate_presentation(&s));
        }
        assert!(matches!(projective_space(12), Err(Error::UnsupportedSize(_))));
    }

    #[test]
    fn projective_cotangent() {
        // c(Ω_{P^2}) pulled back to X is (1 − h)^3
        let s = projective_space(2).unwrap();
        let got: Vec<_> = s.cotangent_chern.iter().map(|c| s.alpha.apply(c).unwrap()).collect();
        let h = s.x_ring.var("c");
        assert_eq!(got[1], h.scale(&int(-3)));
        assert_eq!(got[2], h.pow(2).scale(&int(3)));
    }

    #[test]
    fn quadric_tables() {
        for n in 1..=3 {
            let s = odd_quadric(n).unwrap();
            assert_eq!(s.alpha.image_of("c").unwrap(), &s.x_ring.var("h"));
            assert_eq!(s.integrate(&s.x_ring.var("h").pow(2 * n + 1)), int(2));
            let v = validate_presentation(&s);
            assert!(v.is_empty(), "{v:?}");
        }
        for n in 1..=3 {
            let s = even_quadric(n).unwrap();
            assert_eq!(s.alpha.image_of("chi1").unwrap(), &s.x_ring.parse("L1 - L2").unwrap());
            assert_eq!(s.integrate(&s.x_ring.var("h").pow(2 * n)), int(2));
            let v = validate_presentation(&s);
            assert!(v.is_empty(), "{v:?}");
            // <Λ_i, W_j> = δ_ij
            for (i, l) in ["L1", "L2"].iter().enumerate() {
                for (j, w) in ["W_1", "W_2"].iter().enumerate() {
                    let expected = if i == j { int(1) } else { int(0) };
                    assert_eq!(s.pairing(&s.x_ring.var(l), s.cycle(w).unwrap()), expected);
                }
            }
        }
    }

    #[test]
    fn odd_quadric_integration_oracle() {
        // h^n · h^{n+1} = 2 h^n Λ and <h^n Λ, [X]> = 1
        let s = odd_quadric(2).unwrap();
        let x = &s.x_ring;
        assert_eq!(s.integrate(&x.parse("h^2*L").unwrap()), int(1));
        assert_eq!(x.normal_form(&x.parse("h^5").unwrap()), x.parse("2*h^2*L").unwrap());
    }

    #[test]
    fn schubert_partition_counts() {
        assert_eq!(schubert_partitions(2, 4).len(), 6);
        assert_eq!(schubert_partitions(2, 5).len(), 10);
        assert_eq!(schubert_partitions(3, 6).len(), 20);
        assert_eq!(schubert_partitions(1, 3), vec![vec![], vec![1], vec![2]]);
    }

    #[test]
    fn grassmannian_validates() {
        for (k, n) in [(1, 3), (2, 4), (2, 5), (3, 5)] {
            let s = grassmannian(k, n).unwrap();
            for g in s.beta.images() {
                assert!(s.alpha.apply(g).unwrap().is_zero());
            }
            let v = validate_presentation(&s);
            assert!(v.is_empty(), "Gr({k},{n}): {v:?}");
        }
        assert!(matches!(grassmannian(3, 9), Err(Error::UnsupportedSize(_))));
    }

    #[test]
    fn gr24_middle_pairing_unimodular() {
        let s = grassmannian(2, 4).unwrap();
        let mid: Vec<&HomologyCycle> = s.cycles.iter().filter(|c| c.complex_dim == 2).collect();
        assert_eq!(mid.len(), 2);
        let m: Vec<Vec<Rational>> = mid.iter().map(|a| mid.iter().map(|b| s.integrate(&(&a.pd_class * &b.pd_class))).collect()).collect();
        let det = crate::algebra::linalg::determinant(&m);
        assert!(det == int(1) || det == int(-1), "det {det}");
    }

    #[test]
    fn gr_cotangent_top_matches_brute_roots() {
        // Gr(2,4): c_4(Ω) over 4 explicit roots σ_a − τ_b, integrated, is χ = 6
        let s = grassmannian(2, 4).unwrap();
        let top = s.alpha.apply(&s.cotangent_chern[4]).unwrap();
        assert_eq!(s.integrate(&top), int(6));
        let c1 = s.alpha.apply(&s.cotangent_chern[1]).unwrap();
        let t1 = s.alpha.image_of("t1").unwrap();
        assert_eq!(c1, t1.scale(&int(-4)));
    }

    #[test]
    fn gr1_matches_projective() {
        for n in 1..=4u32 {
            let p = projective_space(n).unwrap();
            let g = grassmannian(1, n + 1).unwrap();
            assert_eq!(p.group.bg_ring.names(), g.group.bg_ring.names());
            let rename: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
            assert_eq!(g.borel.names(), &rename[..]);
            for (a, b) in p.beta.images().iter().zip(g.beta.images()) {
                assert_eq!(a, b);
            }
            for (a, b) in p.cotangent_chern.iter().zip(&g.cotangent_chern) {
                assert_eq!(a, b);
            }
            for (a, b) in p.alpha.images().iter().zip(g.alpha.images()) {
                assert_eq!(a.terms().collect::<Vec<_>>(), b.terms().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn so_configs_load() {
        for n in [2, 3] {
            let s = so_projective(n).unwrap();
            assert_eq!(s.dim_x, n + 1);
            assert!(validate_presentation(&s).is_empty());
        }
    }
}
