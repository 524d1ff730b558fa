//! Presented graded rings `Q[generators]/(relations)`.

use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::cache;
use super::groebner::ReductionBasis;
use super::order::{OrderKind, TermOrder};
use super::parse::Expr;
use super::poly::{weighted_degree, Exponents, Polynomial};
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator { name: name.into(), degree }
    }
}

#[derive(Debug)]
pub struct RingPresentation {
    label: String,
    generators: Vec<Generator>,
    names: Vec<String>,
    weights: Vec<u32>,
    relations: Vec<Polynomial>,
    order: TermOrder,
    hash: String,
    basis: OnceLock<Arc<ReductionBasis>>,
}

pub type Ring = Arc<RingPresentation>;

fn valid_ident(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(x) if x.is_ascii_alphabetic()) && c.all(|x| x.is_ascii_alphanumeric() || x == '_')
}

impl RingPresentation {
    pub fn new(label: &str, generators: Vec<Generator>, relations: Vec<Polynomial>, order: TermOrder) -> Result<Ring> {
        let n = generators.len();
        for (i, g) in generators.iter().enumerate() {
            if !valid_ident(&g.name) {
                return Err(Error::Malformed(format!("{label}: invalid generator name {:?}", g.name)));
            }
            if g.degree == 0 || g.degree % 2 == 1 {
                return Err(Error::Malformed(format!("{label}: generator {} has degree {}, expected positive even", g.name, g.degree)));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Malformed(format!("{label}: duplicate generator {}", g.name)));
            }
        }
        if order.ranking.len() != n {
            return Err(Error::Malformed(format!("{label}: term order ranks {} variables, ring has {n}", order.ranking.len())));
        }
        let weights: Vec<u32> = generators.iter().map(|g| g.degree).collect();
        let names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
        let mut rels = Vec::new();
        for r in relations {
            if r.nvars() != n {
                return Err(Error::Malformed(format!("{label}: relation has wrong variable count")));
            }
            if r.homogeneous_degree(&weights).is_none() {
                return Err(Error::Inhomogeneous { input: r.format_with(&names), degrees: r.degrees(&weights) });
            }
            if !r.is_zero() {
                rels.push(r);
            }
        }
        let mut text = format!("order={}:{:?}\n", order.kind.name(), order.ranking);
        for g in &generators {
            text.push_str(&format!("gen {} {}\n", g.name, g.degree));
        }
        for r in &rels {
            text.push_str(&format!("rel {}\n", r.format_with(&names)));
        }
        Ok(Arc::new(RingPresentation {
            label: label.to_string(),
            generators,
            names,
            weights,
            relations: rels,
            order,
            hash: cache::hash_text(&text),
            basis: OnceLock::new(),
        }))
    }

    pub fn free(label: &str, generators: Vec<Generator>, kind: OrderKind) -> Result<Ring> {
        let n = generators.len();
        Self::new(label, generators, Vec::new(), TermOrder::new(kind, n))
    }

    /// Same presentation under another term order.
    pub fn with_order(&self, kind: OrderKind) -> Result<Ring> {
        let order = TermOrder::with_ranking(kind, self.order.ranking.clone());
        Self::new(&self.label, self.generators.clone(), self.relations.clone(), order)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.generators.len()
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn content_hash(&self) -> &str {
        &self.hash
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn gen(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars(), i)
    }

    /// Generator by name; panics if absent (use [`Self::index_of`] for lookups).
    pub fn var(&self, name: &str) -> Polynomial {
        let i = self.index_of(name).unwrap_or_else(|| panic!("{}: no generator {name}", self.label));
        self.gen(i)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.nvars())
    }

    pub fn constant(&self, c: Rational) -> Polynomial {
        Polynomial::constant(self.nvars(), c)
    }

    pub fn check_member(&self, p: &Polynomial) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(Error::Malformed(format!(
                "{}: polynomial in {} variables, ring has {}",
                self.label,
                p.nvars(),
                self.nvars()
            )));
        }
        Ok(())
    }

    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        let e = Expr::parse(src)?;
        e.eval(self.nvars(), &|v| self.index_of(v).map(|i| self.gen(i)))
    }

    /// Parses and insists on a homogeneous result of the expected degree.
    pub fn parse_homogeneous(&self, src: &str, expected: Option<u32>) -> Result<Polynomial> {
        let p = self.parse(src)?;
        match p.homogeneous_degree(&self.weights) {
            None => Err(Error::Inhomogeneous { input: src.to_string(), degrees: p.degrees(&self.weights) }),
            Some(d) => match expected {
                Some(e) if !p.is_zero() && d != e => Err(Error::DegreeMismatch { what: src.to_string(), expected: e, found: d }),
                _ => Ok(p),
            },
        }
    }

    pub fn format(&self, p: &Polynomial) -> String {
        p.format_with(&self.names)
    }

    pub fn format_monomial(&self, e: &[u16]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(j, &k)| if k == 1 { self.names[j].clone() } else { format!("{}^{}", self.names[j], k) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn basis(&self) -> Arc<ReductionBasis> {
        self.basis
            .get_or_init(|| {
                cache::get_or_compute(&self.hash, &self.order, &self.weights, || {
                    ReductionBasis::compute(&self.relations, &self.order, &self.weights, false)
                })
            })
            .clone()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        if self.relations.is_empty() {
            return p.clone();
        }
        self.basis().normal_form(p)
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.normal_form(&(a * b))
    }

    pub fn degree(&self, p: &Polynomial) -> Option<u32> {
        p.homogeneous_degree(&self.weights)
    }

    pub fn graded_component(&self, p: &Polynomial, d: i64) -> Polynomial {
        p.graded_component(&self.weights, d)
    }

    /// All monomials of weighted degree `d`, in a fixed order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Exponents> {
        fn rec(w: &[u32], i: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
            if i == w.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let mut k = 0u32;
            while k * w[i] <= left {
                cur[i] = k as u16;
                rec(w, i + 1, left - k * w[i], cur, out);
                k += 1;
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        let mut cur: Exponents = smallvec::smallvec![0; self.nvars()];
        rec(&self.weights, 0, d, &mut cur, &mut out);
        out
    }

    /// Monomials of degree `d` not divisible by any leading monomial: a basis of the degree-`d` piece.
    pub fn standard_monomials(&self, d: u32) -> Vec<Exponents> {
        let all = self.monomials_of_degree(d);
        if self.relations.is_empty() {
            return all;
        }
        let b = self.basis();
        all.into_iter().filter(|e| b.is_standard(e)).collect()
    }

    /// Coordinates of the degree-`d` part of `p` in the standard monomial basis.
    pub fn coordinates(&self, p: &Polynomial, d: u32) -> Vec<Rational> {
        let nf = self.normal_form(&self.graded_component(p, d as i64));
        self.standard_monomials(d).iter().map(|e| nf.coefficient(e)).collect()
    }

    pub fn monomial(&self, e: &[u16]) -> Polynomial {
        Polynomial::monomial(e.iter().copied().collect(), Rational::from_integer(1.into()))
    }

    pub fn monomial_degree(&self, e: &[u16]) -> u32 {
        weighted_degree(e, &self.weights)
    }

    pub fn is_zero_in_ring(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }
}

/// Convenience: values of a polynomial that must be a rational constant.
pub fn constant_value(p: &Polynomial) -> Option<Rational> {
    if p.is_zero() {
        return Some(Rational::zero());
    }
    p.as_constant()
}
