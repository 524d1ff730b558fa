//! Exact graded polynomial algebra: rings, normal forms, morphisms and
//! cofactor-tracked ideal reduction.

pub mod cache;
pub mod groebner;
pub mod linalg;
pub mod morphism;
pub mod order;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod ring;

use std::sync::Arc;

pub use groebner::ReductionBasis;
pub use morphism::RingMorphism;
pub use order::{OrderKind, TermOrder};
pub use parse::{Expr, Predicate};
pub use poly::{Exponents, Polynomial};
pub use rational::Rational;
pub use ring::{Generator, Ring, RingPresentation};

use crate::error::{Error, Result};

pub fn normal_form(p: &Polynomial, ring: &RingPresentation) -> Polynomial {
    ring.normal_form(p)
}

pub fn apply_morphism(f: &RingMorphism, p: &Polynomial) -> Result<Polynomial> {
    f.apply(p)
}

pub fn graded_component(p: &Polynomial, ring: &RingPresentation, d: i64) -> Polynomial {
    ring.graded_component(p, d)
}

/// `input = Σ generator·cofactor + Σ relation·cofactor + remainder` in the free ring.
#[derive(Clone, Debug)]
pub struct CofactorDecomposition {
    pub input: Polynomial,
    pub pairs: Vec<(Polynomial, Polynomial)>,
    /// Multiples of the ring's own relations, needed when the ring is not free.
    pub relation_pairs: Vec<(Polynomial, Polynomial)>,
    pub remainder: Polynomial,
}

impl CofactorDecomposition {
    /// Re-expands the decomposition; equals `input` exactly.
    pub fn expand(&self) -> Polynomial {
        let mut acc = self.remainder.clone();
        for (g, c) in self.pairs.iter().chain(&self.relation_pairs) {
            acc += &(g * c);
        }
        acc
    }

    pub fn is_member(&self) -> bool {
        self.remainder.is_zero()
    }
}

/// Tracked basis of `ideal_gens + relations(ring)`, cached by content.
pub fn ideal_basis(ideal_gens: &[Polynomial], ring: &RingPresentation) -> Result<Arc<ReductionBasis>> {
    let mut inputs = Vec::with_capacity(ideal_gens.len() + ring.relations().len());
    let mut text = format!("ideal over {}\n", ring.content_hash());
    for g in ideal_gens {
        ring.check_member(g)?;
        if ring.degree(g).is_none() {
            return Err(Error::Inhomogeneous { input: ring.format(g), degrees: g.degrees(ring.weights()) });
        }
        text.push_str(&ring.format(g));
        text.push('\n');
        inputs.push(g.clone());
    }
    inputs.extend(ring.relations().iter().cloned());
    let key = cache::hash_text(&text);
    Ok(cache::get_or_compute(&key, ring.order(), ring.weights(), || {
        ReductionBasis::compute(&inputs, ring.order(), ring.weights(), true)
    }))
}

pub fn reduce_with_cofactors(p: &Polynomial, ideal_gens: &[Polynomial], ring: &RingPresentation) -> Result<CofactorDecomposition> {
    ring.check_member(p)?;
    let basis = ideal_basis(ideal_gens, ring)?;
    let red = basis.reduce_tracked(p);
    let k = ideal_gens.len();
    let pairs = ideal_gens.iter().cloned().zip(red.cofactors[..k].iter().cloned()).collect();
    let relation_pairs = ring.relations().iter().cloned().zip(red.cofactors[k..].iter().cloned()).collect();
    Ok(CofactorDecomposition { input: p.clone(), pairs, relation_pairs, remainder: red.remainder })
}
