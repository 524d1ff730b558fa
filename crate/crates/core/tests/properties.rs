use std::collections::BTreeMap;

use jetlink_core::algebra::rational::{frac, int};
use jetlink_core::algebra::{reduce_with_cofactors, Generator, OrderKind, Polynomial, Ring, RingMorphism, RingPresentation};
use jetlink_core::charclass::{jet_euler, whitney_sum, TotalChernClass};
use jetlink_core::division::{check_surjectivity, closed_form, scan_bundles, PointStatus};
use jetlink_core::orbitmap::{jet_s_class, orbit_class, slant, tilde_s};
use jetlink_core::spaces::{
    even_quadric, grassmannian, odd_quadric, params, projective_space, so_projective, HomologyCycle, LineBundleSpec, SpacePresentation,
};
use proptest::prelude::*;

fn spaces() -> Vec<SpacePresentation> {
    vec![
        projective_space(2).unwrap(),
        projective_space(3).unwrap(),
        odd_quadric(1).unwrap(),
        even_quadric(2).unwrap(),
        grassmannian(2, 4).unwrap(),
        so_projective(2).unwrap(),
    ]
}

/// A homogeneous element of degree `2·deg` built from small coefficients.
fn homogeneous(ring: &Ring, deg: u32, coeffs: &[i64]) -> Polynomial {
    let monos = ring.monomials_of_degree(2 * deg);
    let mut p = ring.zero();
    for (m, c) in monos.iter().zip(coeffs.iter().cycle()) {
        p.add_scaled(&ring.monomial(m), &int(*c));
    }
    p
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 1..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_idempotent(which in 0usize..6, deg in 0u32..6, c in coeffs()) {
        let s = &spaces()[which];
        for ring in [&s.borel, &s.x_ring] {
            let p = homogeneous(ring, deg, &c);
            let nf = ring.normal_form(&p);
            prop_assert_eq!(ring.normal_form(&nf), nf);
        }
    }

    #[test]
    fn normal_form_is_a_congruence(which in 0usize..6, d1 in 0u32..4, d2 in 0u32..4, c1 in coeffs(), c2 in coeffs()) {
        let s = &spaces()[which];
        for ring in [&s.borel, &s.x_ring] {
            let p = homogeneous(ring, d1, &c1);
            let q = homogeneous(ring, d2, &c2);
            let lhs = ring.normal_form(&(&p * &q));
            let rhs = ring.normal_form(&(&ring.normal_form(&p) * &ring.normal_form(&q)));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cofactors_reexpand_exactly(which in 0usize..6, deg in 1u32..6, c in coeffs()) {
        let s = &spaces()[which];
        let p = homogeneous(&s.borel, deg, &c);
        let d = reduce_with_cofactors(&p, s.beta.images(), &s.borel).unwrap();
        prop_assert_eq!(d.expand(), p);
    }

    #[test]
    fn membership_does_not_depend_on_order(which in 0usize..6, deg in 2u32..6, c in coeffs(), junk in any::<bool>()) {
        let s = &spaces()[which];
        let lex = s.with_order(OrderKind::Lex).unwrap();
        // an element of I₁, optionally perturbed
        let mut p = s.borel.zero();
        for (i, g) in s.beta.images().iter().enumerate() {
            let gd = s.borel.degree(g).unwrap_or(0) / 2;
            if gd <= deg {
                let shifted: Vec<i64> = c.iter().map(|x| x + i as i64).collect();
                p += &(g * &homogeneous(&s.borel, deg - gd, &shifted));
            }
        }
        if junk {
            p += &homogeneous(&s.borel, deg, &c);
        }
        let a = reduce_with_cofactors(&p, s.beta.images(), &s.borel).unwrap();
        let b = reduce_with_cofactors(&p, lex.beta.images(), &lex.borel).unwrap();
        prop_assert_eq!(a.is_member(), b.is_member());
        if !junk {
            prop_assert!(a.is_member());
        }
    }

    #[test]
    fn morphisms_violating_relations_are_rejected(k in 1i64..6) {
        let x = projective_space(2).unwrap().x_ring;
        let free = RingPresentation::free("Q[u]", vec![Generator::new("u", 2)], OrderKind::Grevlex).unwrap();
        let image = free.var("u").scale(&int(k));
        prop_assert!(RingMorphism::new(x.clone(), free.clone(), vec![image.clone()]).is_err());
        prop_assert!(RingMorphism::unchecked(x, free, vec![image]).unwrap().violations().iter().any(|v| v.starts_with("relation")));
    }

    #[test]
    fn whitney_sum_is_commutative_and_associative(a in coeffs(), b in coeffs(), c in coeffs()) {
        let ring = RingPresentation::free(
            "Q[u,v]",
            vec![Generator::new("u", 2), Generator::new("v", 2)],
            OrderKind::Grevlex,
        )
        .unwrap();
        let class = |cs: &[i64], rank: u32| {
            let comps = (0..=rank).map(|i| if i == 0 { ring.one() } else { homogeneous(&ring, i, &cs[(i as usize - 1) % cs.len()..]) }).collect();
            TotalChernClass::new(ring.clone(), comps).unwrap()
        };
        let (x, y, z) = (class(&a, 2), class(&b, 1), class(&c, 3));
        let xy = whitney_sum(&x, &y).unwrap();
        prop_assert!(xy.equals(&whitney_sum(&y, &x).unwrap()));
        let left = whitney_sum(&xy, &z).unwrap();
        let right = whitney_sum(&x, &whitney_sum(&y, &z).unwrap()).unwrap();
        prop_assert!(left.equals(&right));
    }

    #[test]
    fn jet_euler_restricts_to_zero(which in 0usize..6, d in 1i64..8) {
        let s = &spaces()[which];
        let b = s.require_bundle("O").unwrap();
        let p = params(&[("d", d)]);
        if b.jet_spanned(&p).unwrap() {
            let e = jet_euler(s, b, &p).unwrap();
            prop_assert!(s.alpha.apply(&e.value).unwrap().is_zero());
        }
    }

    #[test]
    fn decomposables_are_killed(which in 0usize..6, i in 0usize..4, j in 0usize..4, deg in 0u32..3, c in coeffs()) {
        let s = &spaces()[which];
        let n = s.group.bg_ring.nvars();
        let (i, j) = (i % n, j % n);
        let a = homogeneous(&s.borel, deg, &c);
        let gi = s.group.bg_ring.gen(i);
        let gj = s.group.bg_ring.gen(j);
        let bj = s.beta.images()[j].clone();
        let original = tilde_s(&[(gi.clone(), &a * &bj)], s).unwrap();
        let moved = tilde_s(&[(&gi * &gj, a)], s).unwrap();
        prop_assert!(original.is_zero());
        prop_assert!(moved.is_zero());
    }

    #[test]
    fn orbit_class_degrees(which in 0usize..6, d in 3i64..6) {
        let s = &spaces()[which];
        let b = s.require_bundle("O").unwrap();
        for y in &s.cycles {
            if let Ok(r) = orbit_class(s, b, &params(&[("d", d)]), y) {
                for t in r.value.terms() {
                    prop_assert_eq!(t.degree, 2 * (s.dim_x - y.complex_dim) + 1);
                }
            }
        }
    }

    #[test]
    fn slant_is_linear_in_the_cycle(which in 0usize..2, d in 2i64..6, p in -5i64..5, q in 1i64..5) {
        let (s, names) = match which {
            0 => (grassmannian(2, 4).unwrap(), ["X[2]", "X[1,1]"]),
            _ => (even_quadric(2).unwrap(), ["W_1", "W_2"]),
        };
        let c1 = s.require_bundle("O").unwrap().c1(&s.borel, &params(&[("d", d)])).unwrap();
        let m = jet_s_class(&s, &c1).unwrap();
        let (y1, y2) = (s.require_cycle(names[0]).unwrap(), s.require_cycle(names[1]).unwrap());
        let (a, b) = (int(p), frac(1, q));
        let combo = HomologyCycle {
            name: "combo".into(),
            complex_dim: y1.complex_dim,
            pd_class: &y1.pd_class.scale(&a) + &y2.pd_class.scale(&b),
        };
        let expected = slant(&m, y1, &s).scale(&a).add(&slant(&m, y2, &s).scale(&b));
        prop_assert_eq!(slant(&m, &combo, &s), expected);
    }

    #[test]
    fn orbit_class_depends_on_c1_only(which in 0usize..6, d in 3i64..6) {
        let s = &spaces()[which];
        let o = s.require_bundle("O").unwrap();
        let c1 = o.c1(&s.borel, &params(&[("d", d)])).unwrap();
        let fixed = LineBundleSpec::fixed("M", &s.borel, &c1).unwrap();
        for y in &s.cycles {
            let a = orbit_class(s, o, &params(&[("d", d)]), y).map(|r| r.value);
            let b = orbit_class(s, &fixed, &params(&[]), y).map(|r| r.value);
            prop_assert_eq!(a.ok(), b.ok());
        }
    }

    #[test]
    fn verdicts_survive_basis_changes(which in 0usize..6, d in 2i64..6, seed in any::<u64>(), scale in 1i64..7) {
        let s = &spaces()[which];
        let b = s.require_bundle("O").unwrap();
        let p = params(&[("d", d)]);
        let Ok(base) = check_surjectivity(s, b, &p) else { return Ok(()); };
        let mut t = s.clone();
        let len = t.cycles.len();
        t.cycles.rotate_left((seed as usize) % len);
        let k = (seed as usize / 7) % len;
        t.cycles[k].pd_class = t.cycles[k].pd_class.scale(&frac(scale, (seed % 5) as i64 + 1));
        let moved = check_surjectivity(&t, b, &p).unwrap();
        prop_assert_eq!(base.surjective, moved.surjective);
        prop_assert_eq!(base.per_degree, moved.per_degree);
    }
}

/// `m(d,n,i)` evaluated directly.
fn m(d: i64, n: u32, i: u32) -> i64 {
    let b = d - 1;
    let sign = if (i + 1).is_multiple_of(2) { 1 } else { -1 };
    b.pow(n + 1) + sign * b.pow(n + 1 - i)
}

#[test]
fn scan_failures_are_zeros_of_annotated_coefficients() {
    for n in 1..=4u32 {
        let s = projective_space(n).unwrap();
        let grid = BTreeMap::from([("d".to_string(), (1..=7).collect::<Vec<i64>>())]);
        let r = scan_bundles(&s, s.require_bundle("O").unwrap(), &grid).unwrap();
        // independent zero set: some m(d,n,i), 2 ≤ i ≤ n+1, vanishes
        let zeros: Vec<i64> = (1..=7).filter(|&d| (2..=n + 1).any(|i| m(d, n, i) == 0)).collect();
        let delta: Vec<i64> = r.exceptional.iter().map(|p| p["d"]).collect();
        let indeterminate: Vec<i64> =
            r.points.iter().filter(|p| matches!(p.status, PointStatus::Indeterminate { .. })).map(|p| p.params["d"]).collect();
        // at d = 1 only the point satisfies the hypothesis; P^1 is decided from it alone
        let expected: Vec<i64> = if n >= 2 { vec![1] } else { vec![] };
        assert_eq!(indeterminate, expected, "P^{n}");
        assert_eq!(delta, zeros.into_iter().filter(|d| *d != 1).collect::<Vec<_>>(), "P^{n}");
        for p in &r.points {
            if let PointStatus::NotSurjective { vanishing, .. } = &p.status {
                assert!(!vanishing.is_empty());
                for v in vanishing {
                    let f = closed_form(&s, &v.cycle, &v.symbol).unwrap();
                    assert_eq!(f.eval(&int(p.params["d"])), int(0));
                }
            }
        }
    }
}
