//! Surjectivity of the orbit map, scans over bundle families and rank checks on
//! the map `F_X`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::linalg;
use crate::algebra::rational::{self, int, Rational};
use crate::algebra::{Exponents, Polynomial};
use crate::charclass::f_x;
use crate::error::{Error, Result};
use crate::orbitmap::{orbit_classes, OrbitClassResult};
use crate::spaces::{Family, LineBundleSpec, Params, SpacePresentation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRank {
    pub primitives: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub cycle: String,
    #[serde(with = "rational::serde_str")]
    pub coefficient: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkippedCycle {
    pub cycle: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurjectivityVerdict {
    pub surjective: bool,
    pub per_degree: BTreeMap<u32, DegreeRank>,
    pub witnesses: BTreeMap<String, Witness>,
    pub failures: Vec<u32>,
    pub skipped: Vec<SkippedCycle>,
    pub results: Vec<OrbitClassResult>,
}

/// Rank of the orbit classes of the basis cycles in each odd degree carrying
/// primitives. Cycles failing the Chern-number hypothesis are skipped.
pub fn check_surjectivity(space: &SpacePresentation, bundle: &LineBundleSpec, params: &Params) -> Result<SurjectivityVerdict> {
    let cycles: Vec<_> = space.cycles.iter().collect();
    let mut results = Vec::new();
    let mut skipped = Vec::new();
    for (c, r) in cycles.iter().zip(orbit_classes(space, bundle, params, &cycles)?) {
        match r {
            Ok(r) => results.push(r),
            Err(e @ Error::HypothesisViolated { .. }) => skipped.push(SkippedCycle { cycle: c.name.clone(), reason: e.to_string() }),
            Err(e) => return Err(e),
        }
    }

    let mut per_degree = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    let mut failures = Vec::new();
    for deg in space.group.primitive_degrees() {
        let symbols: Vec<&str> =
            space.group.primitives.iter().filter(|p| p.degree == deg).map(|p| p.symbol.as_str()).collect();
        let in_degree = |name: &str| space.cycle(name).map(|c| 2 * (space.dim_x - c.complex_dim) + 1 == deg).unwrap_or(false);
        let candidates = space.cycles.iter().filter(|c| in_degree(&c.name)).count();
        let used: Vec<&OrbitClassResult> = results.iter().filter(|r| in_degree(&r.cycle)).collect();
        if candidates > 0 && used.is_empty() {
            return Err(Error::Indeterminate {
                degree: deg,
                diagnostic: format!("all {candidates} cycles contributing to degree {deg} fail the Chern-number hypothesis"),
            });
        }
        let rows: Vec<Vec<Rational>> = used.iter().map(|r| symbols.iter().map(|s| r.value.coefficient(s)).collect()).collect();
        let rank = linalg::rank(&rows);
        if rank < symbols.len() {
            failures.push(deg);
        }
        per_degree.insert(deg, DegreeRank { primitives: symbols.len(), rank });
        for s in &symbols {
            if let Some(r) = used.iter().find(|r| !r.value.coefficient(s).is_zero()) {
                witnesses.insert(s.to_string(), Witness { cycle: r.cycle.clone(), coefficient: r.value.coefficient(s) });
            }
        }
    }
    Ok(SurjectivityVerdict { surjective: failures.is_empty(), per_degree, witnesses, failures, skipped, results })
}

/// `m(d,n,i) = (d−1)^{n+1} + (−1)^{i+1}(d−1)^{n+1−i}`.
pub fn m_coefficient(d: &Rational, n: u32, i: u32) -> Rational {
    let b = d - Rational::one();
    let tail = rational::pow(&b, n + 1 - i);
    let tail = if i % 2 == 1 { tail } else { -tail };
    rational::pow(&b, n + 1) + tail
}

/// `m(d,n,i)/(d−2)` as a polynomial in `d`; needs `i` even.
pub fn m_over_d_minus_2(d: &Rational, n: u32, i: u32) -> Rational {
    assert!(i.is_multiple_of(2), "m(d,n,i)/(d-2) is polynomial only for even i");
    let b = d - Rational::one();
    let geometric = (0..i).fold(Rational::zero(), |acc, j| acc + rational::pow(&b, j));
    rational::pow(&b, n + 1 - i) * geometric
}

/// A coefficient `factor · m(d,N,i)` or `factor · m(d,N,i)/(d−2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientFormula {
    pub factor: Rational,
    pub big_n: u32,
    pub i: u32,
    pub over_d_minus_2: bool,
}

impl CoefficientFormula {
    pub fn eval(&self, d: &Rational) -> Rational {
        let m = if self.over_d_minus_2 { m_over_d_minus_2(d, self.big_n, self.i) } else { m_coefficient(d, self.big_n, self.i) };
        &self.factor * m
    }

    pub fn label(&self) -> String {
        let f = if self.factor == int(1) {
            String::new()
        } else if self.factor == int(-1) {
            "-".to_string()
        } else {
            format!("{}*", rational::format(&self.factor))
        };
        let tail = if self.over_d_minus_2 { "/(d-2)" } else { "" };
        format!("{f}m(d,{},{}){tail}", self.big_n, self.i)
    }
}

fn symbol_index(symbol: &str, prefix: &str) -> Option<u32> {
    symbol.strip_prefix(prefix)?.parse().ok()
}

fn cycle_index(name: &str, prefix: &str) -> Option<u32> {
    name.strip_prefix(prefix)?.parse().ok()
}

/// Closed form of the coefficient of `γ*(symbol)` in the orbit class of `cycle`
/// under `O(d)`, for the projective and quadric families.
pub fn closed_form(space: &SpacePresentation, cycle: &str, symbol: &str) -> Option<CoefficientFormula> {
    let f = |factor: i64, big_n: u32, i: u32, over: bool| Some(CoefficientFormula { factor: int(factor), big_n, i, over_d_minus_2: over });
    match space.family? {
        Family::Projective { n } => {
            let k = cycle_index(cycle, "P")?;
            let i = symbol_index(symbol, "c")?;
            (k < n && i == n - k + 1).then_some(())?;
            f(-1, n, i, false)
        }
        Family::OddQuadric { n } => {
            let k = cycle_index(cycle, "Z_")?;
            (k % 2 == 0 && k < 2 * n + 1).then_some(())?;
            let j = symbol_index(symbol, "p")?;
            (j == n + 1 - k / 2).then_some(())?;
            f(if k <= n { -1 } else { -2 }, 2 * n + 2, 2 * n + 2 - k, true)
        }
        Family::EvenQuadric { n } => {
            if let Some(w) = cycle_index(cycle, "W_") {
                let sign = if w == 1 { 1 } else { -1 };
                if symbol == "chi" {
                    return f(sign, 2 * n + 1, 2 * n + 2, true);
                }
                let j = symbol_index(symbol, "p")?;
                (n % 2 == 1 && j == n.div_ceil(2)).then_some(())?;
                return f(-1, 2 * n + 1, n + 1, true);
            }
            let k = cycle_index(cycle, "Z_")?;
            (k % 2 == 1 && k < 2 * n).then_some(())?;
            let j = symbol_index(symbol, "p")?;
            (j == n - (k - 1) / 2).then_some(())?;
            f(if k < n { -1 } else { -2 }, 2 * n + 1, 2 * n + 1 - k, true)
        }
        _ => None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingEntry {
    pub cycle: String,
    pub symbol: String,
    pub formula: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum PointStatus {
    Surjective,
    NotSurjective { failures: Vec<u32>, vanishing: Vec<VanishingEntry> },
    NotJetSpanned,
    Indeterminate { diagnostic: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanPoint {
    pub params: Params,
    #[serde(flatten)]
    pub status: PointStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub space: String,
    pub bundle: String,
    pub grid: BTreeMap<String, Vec<i64>>,
    pub points: Vec<ScanPoint>,
    pub exceptional: Vec<Params>,
}

fn grid_points(grid: &BTreeMap<String, Vec<i64>>) -> Vec<Params> {
    if grid.is_empty() || grid.values().any(|v| v.is_empty()) {
        return Vec::new();
    }
    let mut points = vec![Params::new()];
    for (name, values) in grid {
        points = points
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |v| {
                    let mut q = p.clone();
                    q.insert(name.clone(), *v);
                    q
                })
            })
            .collect();
    }
    points
}

type PointOutcome = (Params, Option<SurjectivityVerdict>, Option<String>);

/// Verdict at every grid point. Failures list the coefficients that vanish there,
/// with their closed form when the family has one.
pub fn scan_bundles(space: &SpacePresentation, bundle: &LineBundleSpec, grid: &BTreeMap<String, Vec<i64>>) -> Result<ScanReport> {
    let points = grid_points(grid);
    let verdicts: Vec<Result<PointOutcome>> = points
        .into_par_iter()
        .map(|p| {
            if !bundle.jet_spanned(&p)? {
                return Ok((p, None, None));
            }
            match check_surjectivity(space, bundle, &p) {
                Ok(v) => Ok((p, Some(v), None)),
                Err(e @ Error::Indeterminate { .. }) => Ok((p, None, Some(e.to_string()))),
                Err(e) => Err(e),
            }
        })
        .collect();
    let verdicts = verdicts.into_iter().collect::<Result<Vec<_>>>()?;

    // (cycle, symbol) pairs that are nonzero somewhere on the grid
    let mut live: BTreeMap<(String, String), bool> = BTreeMap::new();
    for (_, v, _) in &verdicts {
        for r in v.iter().flat_map(|v| &v.results) {
            for t in r.value.terms() {
                live.insert((r.cycle.clone(), t.symbol.clone()), true);
            }
        }
    }

    let mut out = Vec::new();
    let mut exceptional = Vec::new();
    for (p, v, indeterminate) in verdicts {
        let status = match (v, indeterminate) {
            (_, Some(d)) => PointStatus::Indeterminate { diagnostic: d },
            (None, None) => PointStatus::NotJetSpanned,
            (Some(v), None) if v.surjective => PointStatus::Surjective,
            (Some(v), None) => {
                let d = p.values().next().map(|d| int(*d));
                let mut vanishing = Vec::new();
                for r in &v.results {
                    let deg = 2 * (space.dim_x - space.cycle(&r.cycle).map(|c| c.complex_dim).unwrap_or(0)) + 1;
                    if !v.failures.contains(&deg) {
                        continue;
                    }
                    for prim in space.group.primitives.iter().filter(|s| s.degree == deg) {
                        if !r.value.coefficient(&prim.symbol).is_zero() {
                            continue;
                        }
                        let formula = closed_form(space, &r.cycle, &prim.symbol);
                        let known = match (&formula, &d) {
                            (Some(f), Some(d)) => f.eval(d).is_zero(),
                            _ => live.contains_key(&(r.cycle.clone(), prim.symbol.clone())),
                        };
                        if known {
                            vanishing.push(VanishingEntry {
                                cycle: r.cycle.clone(),
                                symbol: prim.symbol.clone(),
                                formula: formula.map(|f| f.label()),
                            });
                        }
                    }
                }
                exceptional.push(p.clone());
                PointStatus::NotSurjective { failures: v.failures, vanishing }
            }
        };
        out.push(ScanPoint { params: p, status });
    }
    Ok(ScanReport { space: space.id.clone(), bundle: bundle.name.clone(), grid: grid.clone(), points: out, exceptional })
}

#[derive(Clone, Debug, Serialize)]
pub struct GenericRankRecord {
    pub sample_size: usize,
    pub span_rank: usize,
    pub image_dim: usize,
    pub target_dim: usize,
    pub hyperplane_free: bool,
}

fn multinomial(e: &[u32]) -> Rational {
    let mut n = 0i64;
    let mut acc = int(1);
    for &k in e {
        for j in 1..=k as i64 {
            n += 1;
            acc = acc * int(n) / int(j);
        }
    }
    acc
}

fn compositions(len: usize, total: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(len - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Rank of `{F_X(x)}` over a sample of degree-2 classes, against the dimension
/// of the linear span of the whole image of `F_X`.
pub fn generic_rank_check(space: &SpacePresentation, sample: &[Polynomial]) -> Result<GenericRankRecord> {
    if sample.is_empty() {
        return Err(Error::InsufficientSample("empty sample".into()));
    }
    let b = &space.borel;
    for x in sample {
        if !x.is_zero() && b.degree(x) != Some(2) {
            return Err(Error::InsufficientSample(format!("{} is not of degree 2", b.format(x))));
        }
    }
    let h2: Vec<Exponents> = b.standard_monomials(2);
    let coords: Vec<Vec<Rational>> = sample.iter().map(|x| b.coordinates(x, 2)).collect();
    if sample.len() > 1 && h2.len() > 1 && linalg::rank(&coords) < 2 {
        return Err(Error::InsufficientSample("sample points are collinear".into()));
    }

    let top = 2 * (space.dim_x + 1);
    let target_dim = b.standard_monomials(top).len();
    let values: Vec<Vec<Rational>> = sample.iter().map(|x| b.coordinates(&f_x(space, x), top)).collect();
    let span_rank = linalg::rank(&values);
    if span_rank == 0 {
        return Err(Error::InsufficientSample("F_X vanishes on every sample point".into()));
    }

    // coefficients of F_X(Σ t_j e_j) as a polynomial in the t_j
    let basis: Vec<Polynomial> = h2.iter().map(|e| b.monomial(e)).collect();
    let mut image = Vec::new();
    for (i, c) in space.cotangent_chern.iter().enumerate() {
        let power = space.dim_x + 1 - i as u32;
        for alpha in compositions(basis.len(), power) {
            let mut v = c.scale(&multinomial(&alpha));
            for (e, &k) in basis.iter().zip(&alpha) {
                v = &v * &e.pow(k);
            }
            image.push(b.coordinates(&b.normal_form(&v), top));
        }
    }
    let image_dim = linalg::rank(&image);
    Ok(GenericRankRecord { sample_size: sample.len(), span_rank, image_dim, target_dim, hyperplane_free: span_rank == image_dim })
}
