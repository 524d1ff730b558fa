//! Presentations of pairs (G, X): group ring, Borel ring, ring of X, the maps
//! between them, cotangent Chern data, integration and a homology basis.

mod builtin;
mod config;
mod validate;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::linalg;
use crate::algebra::{Expr, Exponents, OrderKind, Polynomial, Predicate, Rational, Ring, RingMorphism, RingPresentation};
use crate::error::{Error, Result};

pub use builtin::{even_quadric, grassmannian, odd_quadric, projective_space, so_projective, schubert_partitions};
pub use config::{load_presentation, parse_presentation, parse_presentation_unchecked, to_toml};
pub use validate::{check_kernel_equals_i1, validate_presentation};

pub type Params = BTreeMap<String, i64>;

pub fn params(pairs: &[(&str, i64)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

pub fn format_params(p: &Params) -> String {
    if p.is_empty() {
        return "-".to_string();
    }
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: String,
    pub detail: String,
}

impl Violation {
    pub fn new(kind: &str, detail: impl Into<String>) -> Self {
        Violation { kind: kind.to_string(), detail: detail.into() }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.kind, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimitiveSymbol {
    pub symbol: String,
    pub degree: u32,
    pub generator: usize,
}

#[derive(Clone, Debug)]
pub struct GroupPresentation {
    pub name: String,
    pub rank: usize,
    pub bg_ring: Ring,
    pub primitives: Vec<PrimitiveSymbol>,
}

impl GroupPresentation {
    pub fn new(name: &str, bg_ring: Ring) -> Result<Self> {
        if !bg_ring.is_free() {
            return Err(Error::Malformed(format!("group {name}: classifying-space ring must be free")));
        }
        let primitives = bg_ring
            .generators()
            .iter()
            .enumerate()
            .map(|(i, g)| PrimitiveSymbol { symbol: g.name.clone(), degree: g.degree - 1, generator: i })
            .collect();
        Ok(GroupPresentation { name: name.to_string(), rank: bg_ring.nvars(), bg_ring, primitives })
    }

    pub fn primitive(&self, symbol: &str) -> Option<&PrimitiveSymbol> {
        self.primitives.iter().find(|p| p.symbol == symbol)
    }

    /// Odd degrees carrying primitives, ascending.
    pub fn primitive_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.primitives.iter().map(|p| p.degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

#[derive(Clone, Debug)]
pub struct HomologyCycle {
    pub name: String,
    pub complex_dim: u32,
    pub pd_class: Polynomial,
}

#[derive(Clone, Debug)]
pub struct LineBundleSpec {
    pub name: String,
    c1_source: String,
    c1: Expr,
    jet: Predicate,
}

impl LineBundleSpec {
    pub fn new(name: &str, c1_source: &str, jet_source: &str) -> Result<Self> {
        Ok(LineBundleSpec {
            name: name.to_string(),
            c1_source: c1_source.to_string(),
            c1: Expr::parse(c1_source)?,
            jet: Predicate::parse(jet_source)?,
        })
    }

    /// A bundle with a fixed first Chern class and no parameters.
    pub fn fixed(name: &str, borel: &RingPresentation, c1: &Polynomial) -> Result<Self> {
        Self::new(name, &borel.format(c1), "true")
    }

    pub fn c1_source(&self) -> &str {
        &self.c1_source
    }

    pub fn jet_source(&self) -> &str {
        self.jet.source()
    }

    /// Integer parameters: identifiers that are not Borel generators.
    pub fn parameters(&self, borel: &RingPresentation) -> Vec<String> {
        let mut v: Vec<String> = self.c1.variables().into_iter().filter(|x| borel.index_of(x).is_none()).collect();
        v.extend(self.jet.variables());
        v.sort();
        v.dedup();
        v
    }

    pub fn c1(&self, borel: &RingPresentation, params: &Params) -> Result<Polynomial> {
        let p = self.c1.eval(borel.nvars(), &|v| match borel.index_of(v) {
            Some(i) => Some(borel.gen(i)),
            None => params.get(v).map(|x| borel.constant(Rational::from_integer((*x).into()))),
        })?;
        match borel.degree(&p) {
            Some(2) => Ok(p),
            _ if p.is_zero() => Ok(p),
            Some(d) => Err(Error::DegreeMismatch { what: format!("c1 of bundle {}", self.name), expected: 2, found: d }),
            None => Err(Error::Inhomogeneous { input: self.c1_source.clone(), degrees: p.degrees(borel.weights()) }),
        }
    }

    pub fn jet_spanned(&self, params: &Params) -> Result<bool> {
        self.jet.eval(&|v| params.get(v).map(|x| Rational::from_integer((*x).into())))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Projective { n: u32 },
    OddQuadric { n: u32 },
    EvenQuadric { n: u32 },
    Grassmannian { k: u32, n: u32 },
    SoProjective { n: u32 },
}

#[derive(Clone, Debug)]
pub struct SpacePresentation {
    pub id: String,
    pub family: Option<Family>,
    pub group: GroupPresentation,
    pub dim_x: u32,
    pub borel: Ring,
    pub x_ring: Ring,
    pub beta: RingMorphism,
    pub alpha: RingMorphism,
    pub cotangent_chern: Vec<Polynomial>,
    pub integrate_table: Vec<(Exponents, Rational)>,
    pub cycles: Vec<HomologyCycle>,
    pub bundles: Vec<LineBundleSpec>,
    integration: Integration,
}

/// Values of the integration functional on the standard top-degree monomials.
#[derive(Clone, Debug)]
struct Integration {
    values: Vec<(Exponents, Rational)>,
    issues: Vec<Violation>,
}

impl Integration {
    fn from_table(x: &RingPresentation, dim: u32, table: &[(Exponents, Rational)]) -> Self {
        let top = x.standard_monomials(2 * dim);
        let mut issues = Vec::new();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (e, v) in table {
            if x.monomial_degree(e) != 2 * dim {
                issues.push(Violation::new(
                    "integration",
                    format!("monomial {} is not of top degree {}", x.format_monomial(e), 2 * dim),
                ));
                continue;
            }
            let nf = x.normal_form(&x.monomial(e));
            rows.push(top.iter().map(|s| nf.coefficient(s)).collect::<Vec<_>>());
            rhs.push(v.clone());
        }
        let values = match linalg::solve(&rows, &rhs) {
            Some(sol) if rows.is_empty() && !top.is_empty() => {
                issues.push(Violation::new("integration", "integration table is empty"));
                top.iter().cloned().zip(sol.into_iter().chain(std::iter::repeat(Rational::zero()))).collect()
            }
            Some(sol) => {
                if linalg::rank(&rows) < top.len() {
                    issues.push(Violation::new("integration", "integration table does not determine the functional on top degree"));
                }
                top.iter().cloned().zip(sol).collect()
            }
            None => {
                issues.push(Violation::new("integration", "integration table is inconsistent with the relations"));
                top.iter().map(|e| (e.clone(), Rational::zero())).collect()
            }
        };
        Integration { values, issues }
    }
}

impl SpacePresentation {
    #[allow(clippy::too_many_arguments)]
    pub fn assemble(
        id: &str,
        family: Option<Family>,
        group: GroupPresentation,
        dim_x: u32,
        borel: Ring,
        x_ring: Ring,
        beta: RingMorphism,
        alpha: RingMorphism,
        cotangent_chern: Vec<Polynomial>,
        integrate_table: Vec<(Exponents, Rational)>,
        cycles: Vec<HomologyCycle>,
        bundles: Vec<LineBundleSpec>,
    ) -> SpacePresentation {
        let integration = Integration::from_table(&x_ring, dim_x, &integrate_table);
        SpacePresentation {
            id: id.to_string(),
            family,
            group,
            dim_x,
            borel,
            x_ring,
            beta,
            alpha,
            cotangent_chern,
            integrate_table,
            cycles,
            bundles,
            integration,
        }
    }

    pub fn integrate(&self, x: &Polynomial) -> Rational {
        let top = self.x_ring.normal_form(&self.x_ring.graded_component(x, 2 * self.dim_x as i64));
        self.integration.values.iter().fold(Rational::zero(), |acc, (e, v)| acc + top.coefficient(e) * v)
    }

    /// `⟨x, [Y]⟩ = ∫ x · pd(Y)` using the degree-`2·dim Y` part of `x`.
    pub fn pairing(&self, x: &Polynomial, y: &HomologyCycle) -> Rational {
        let part = self.x_ring.graded_component(x, 2 * y.complex_dim as i64);
        self.integrate(&(&part * &y.pd_class))
    }

    pub fn cycle(&self, name: &str) -> Option<&HomologyCycle> {
        self.cycles.iter().find(|c| c.name == name)
    }

    pub fn bundle(&self, name: &str) -> Option<&LineBundleSpec> {
        self.bundles.iter().find(|b| b.name == name)
    }

    pub fn require_cycle(&self, name: &str) -> Result<&HomologyCycle> {
        self.cycle(name).ok_or_else(|| Error::UnknownSymbol(format!("cycle {name} on {}", self.id)))
    }

    pub fn require_bundle(&self, name: &str) -> Result<&LineBundleSpec> {
        self.bundle(name).ok_or_else(|| Error::UnknownSymbol(format!("bundle {name} on {}", self.id)))
    }

    pub fn order(&self) -> OrderKind {
        self.borel.order().kind
    }

    /// The same presentation with every ring under `kind`.
    pub fn with_order(&self, kind: OrderKind) -> Result<SpacePresentation> {
        let bg = self.group.bg_ring.with_order(kind)?;
        let borel = self.borel.with_order(kind)?;
        let x = self.x_ring.with_order(kind)?;
        let group = GroupPresentation::new(&self.group.name, bg.clone())?;
        let beta = RingMorphism::unchecked(bg, borel.clone(), self.beta.images().to_vec())?;
        let alpha = RingMorphism::unchecked(borel.clone(), x.clone(), self.alpha.images().to_vec())?;
        Ok(SpacePresentation::assemble(
            &self.id,
            self.family,
            group,
            self.dim_x,
            borel,
            x,
            beta,
            alpha,
            self.cotangent_chern.clone(),
            self.integrate_table.clone(),
            self.cycles.clone(),
            self.bundles.clone(),
        ))
    }

    pub fn content_hash(&self) -> String {
        crate::algebra::cache::hash_text(&format!("{}\norder={}", to_toml(self), self.order().name()))
    }

    pub(crate) fn integration_issues(&self) -> &[Violation] {
        &self.integration.issues
    }
}

pub struct FamilyInfo {
    pub id: &'static str,
    pub description: &'static str,
    pub parameters: &'static str,
    pub bounds: &'static str,
}

pub fn builtin_families() -> Vec<FamilyInfo> {
    vec![
        FamilyInfo { id: "pn", description: "projective space P^n with SL(n+1)", parameters: "n", bounds: "1 <= n <= 11" },
        FamilyInfo { id: "odd-quadric", description: "quadric of dimension 2n+1 with SO(2n+3)", parameters: "n", bounds: "1 <= n <= 5" },
        FamilyInfo { id: "even-quadric", description: "quadric of dimension 2n with SO(2n+2)", parameters: "n", bounds: "1 <= n <= 5" },
        FamilyInfo { id: "gr", description: "Grassmannian Gr(k,n) with SL(n)", parameters: "k, n", bounds: "1 <= k < n <= 8" },
        FamilyInfo { id: "so-pn", description: "P^(n+1) with SO(n+2), from shipped config", parameters: "n", bounds: "n in {2, 3}" },
    ]
}

/// Built-ins plus user-loaded presentations.
#[derive(Default)]
pub struct Registry {
    loaded: Vec<Arc<SpacePresentation>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ListingEntry {
    pub id: String,
    pub kind: String,
    pub description: String,
    pub bounds: String,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn load(&mut self, path: &std::path::Path) -> Result<Arc<SpacePresentation>> {
        let s = Arc::new(load_presentation(path)?);
        self.loaded.retain(|x| x.id != s.id);
        self.loaded.push(s.clone());
        Ok(s)
    }

    pub fn get(&self, id: &str) -> Option<Arc<SpacePresentation>> {
        self.loaded.iter().find(|s| s.id == id).cloned()
    }

    pub fn listing(&self) -> Vec<ListingEntry> {
        let mut out: Vec<ListingEntry> = builtin_families()
            .into_iter()
            .map(|f| ListingEntry {
                id: f.id.to_string(),
                kind: "built-in".to_string(),
                description: f.description.to_string(),
                bounds: format!("{}: {}", f.parameters, f.bounds),
            })
            .collect();
        for s in &self.loaded {
            out.push(ListingEntry {
                id: s.id.clone(),
                kind: "config".to_string(),
                description: format!("dim {} with {}", s.dim_x, s.group.name),
                bounds: "-".to_string(),
            });
        }
        out
    }
}
