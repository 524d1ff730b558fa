//! Buchberger completion with Gebauer–Möller pair pruning.
//!
//! Every basis element optionally carries its expression in the input
//! generators, so reductions can report cofactors against the original
//! generators rather than the completed basis.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::order::{Key, MonomialCodec, TermOrder};
use super::poly::{Exponents, Polynomial};
use super::rational::{self, Rational};

type KPoly = BTreeMap<Key, Rational>;

fn kp_add_scaled_shifted(p: &mut KPoly, q: &KPoly, c: &Rational, shift: &Key, codec: &MonomialCodec) {
    for (k, x) in q {
        let key = codec.mul(k, shift);
        let v = x * c;
        match p.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += v;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

fn kp_scale(p: &mut KPoly, c: &Rational) {
    for v in p.values_mut() {
        *v *= c;
    }
}

#[derive(Clone, Debug)]
struct Element {
    lead: Key,
    poly: KPoly,
    repr: Option<Vec<KPoly>>,
}

/// A completed, reduced basis of an ideal.
#[derive(Clone, Debug)]
pub struct ReductionBasis {
    codec: MonomialCodec,
    ninputs: usize,
    elems: Vec<Element>,
    tracked: bool,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub remainder: Polynomial,
    /// One cofactor per input generator; empty when the basis is untracked.
    pub cofactors: Vec<Polynomial>,
}

impl ReductionBasis {
    pub fn compute(inputs: &[Polynomial], order: &TermOrder, weights: &[u32], track: bool) -> Self {
        let codec = MonomialCodec::new(order, weights);
        let ninputs = inputs.len();
        let mut builder = Builder { codec: codec.clone(), ninputs, track, elems: Vec::new(), active: Vec::new(), pairs: Vec::new() };
        let mut order_in: Vec<usize> = (0..ninputs).collect();
        let enc: Vec<KPoly> = inputs.iter().map(|p| builder.encode(p)).collect();
        order_in.sort_by_key(|&i| enc[i].keys().next_back().map(|k| codec.degree(k)).unwrap_or(0));
        for i in order_in {
            if enc[i].is_empty() {
                continue;
            }
            let repr = track.then(|| {
                let mut r = vec![KPoly::new(); ninputs];
                r[i].insert(codec.one(), Rational::one());
                r
            });
            builder.add_reduced(enc[i].clone(), repr);
        }
        builder.run();
        builder.finish()
    }

    pub fn is_tracked(&self) -> bool {
        self.tracked
    }

    pub fn ninputs(&self) -> usize {
        self.ninputs
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elems.iter().any(|e| e.lead == self.codec.one())
    }

    pub fn lead_monomials(&self) -> Vec<Exponents> {
        self.elems.iter().map(|e| self.codec.decode(&e.lead)).collect()
    }

    pub fn elements(&self) -> Vec<Polynomial> {
        self.elems.iter().map(|e| decode(&self.codec, &e.poly)).collect()
    }

    pub fn is_standard(&self, exps: &[u16]) -> bool {
        let k = self.codec.encode(exps);
        !self.elems.iter().any(|e| self.codec.divides(&e.lead, &k))
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        if self.elems.is_empty() {
            return p.clone();
        }
        let (rem, _) = reduce(&self.codec, &self.elems, encode(&self.codec, p), None);
        decode(&self.codec, &rem)
    }

    /// Full reduction returning `p = Σ cofactor_i · input_i + remainder`.
    pub fn reduce_tracked(&self, p: &Polynomial) -> Reduction {
        assert!(self.tracked, "basis was computed without cofactor tracking");
        let nv = p.nvars();
        let (rem, repr) = reduce(&self.codec, &self.elems, encode(&self.codec, p), Some(vec![KPoly::new(); self.ninputs]));
        let cofactors = repr
            .unwrap()
            .iter()
            .map(|r| {
                let mut q = decode(&self.codec, r);
                q = -&q;
                if q.nvars() != nv {
                    Polynomial::zero(nv)
                } else {
                    q
                }
            })
            .collect();
        Reduction { remainder: decode(&self.codec, &rem), cofactors }
    }

    pub(crate) fn to_stored(&self) -> StoredBasis {
        let enc = |p: &KPoly| -> Vec<(Vec<u16>, String)> {
            p.iter().map(|(k, c)| (self.codec.decode(k).to_vec(), rational::format(c))).collect()
        };
        StoredBasis {
            ninputs: self.ninputs,
            tracked: self.tracked,
            elems: self
                .elems
                .iter()
                .map(|e| StoredElement { poly: enc(&e.poly), repr: e.repr.as_ref().map(|r| r.iter().map(enc).collect()) })
                .collect(),
        }
    }

    pub(crate) fn from_stored(s: &StoredBasis, order: &TermOrder, weights: &[u32]) -> Option<Self> {
        let codec = MonomialCodec::new(order, weights);
        let dec = |v: &Vec<(Vec<u16>, String)>| -> Option<KPoly> {
            let mut p = KPoly::new();
            for (e, c) in v {
                if e.len() != codec.nvars() {
                    return None;
                }
                p.insert(codec.encode(e), rational::parse(c)?);
            }
            Some(p)
        };
        let mut elems = Vec::new();
        for e in &s.elems {
            let poly = dec(&e.poly)?;
            let lead = poly.keys().next_back()?.clone();
            let repr = match &e.repr {
                Some(r) => Some(r.iter().map(dec).collect::<Option<Vec<_>>>()?),
                None => None,
            };
            if s.tracked && repr.as_ref().map(|r| r.len()) != Some(s.ninputs) {
                return None;
            }
            elems.push(Element { lead, poly, repr });
        }
        Some(ReductionBasis { codec, ninputs: s.ninputs, elems, tracked: s.tracked })
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct StoredElement {
    poly: Vec<(Vec<u16>, String)>,
    repr: Option<Vec<Vec<(Vec<u16>, String)>>>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct StoredBasis {
    ninputs: usize,
    tracked: bool,
    elems: Vec<StoredElement>,
}

fn encode(codec: &MonomialCodec, p: &Polynomial) -> KPoly {
    p.terms().map(|(e, c)| (codec.encode(e), c.clone())).collect()
}

fn decode(codec: &MonomialCodec, p: &KPoly) -> Polynomial {
    Polynomial::from_terms(codec.nvars(), p.iter().map(|(k, c)| (codec.decode(k), c.clone())))
}

/// Fully reduces `p`. Each reduction step adds a multiple of a basis element,
/// and the same multiple of that element's expression is added to `repr`.
fn reduce(codec: &MonomialCodec, elems: &[Element], mut p: KPoly, mut repr: Option<Vec<KPoly>>) -> (KPoly, Option<Vec<KPoly>>) {
    let mut rem = KPoly::new();
    while let Some((lt, lc)) = p.pop_last() {
        let g = elems.iter().find(|g| codec.divides(&g.lead, &lt));
        match g {
            Some(g) => {
                let shift = codec.div(&lt, &g.lead);
                let c = -lc;
                // the leading term cancels by construction; skip it
                for (k, x) in g.poly.iter().rev().skip(1) {
                    let key = codec.mul(k, &shift);
                    let v = x * &c;
                    match p.entry(key) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(v);
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            *e.get_mut() += v;
                            if e.get().is_zero() {
                                e.remove();
                            }
                        }
                    }
                }
                if let (Some(r), Some(gr)) = (repr.as_mut(), g.repr.as_ref()) {
                    for (ri, gi) in r.iter_mut().zip(gr) {
                        kp_add_scaled_shifted(ri, gi, &c, &shift, codec);
                    }
                }
            }
            None => {
                rem.insert(lt, lc);
            }
        }
    }
    (rem, repr)
}

struct Builder {
    codec: MonomialCodec,
    ninputs: usize,
    track: bool,
    elems: Vec<Element>,
    active: Vec<bool>,
    pairs: Vec<(usize, usize, Key)>,
}

impl Builder {
    fn encode(&self, p: &Polynomial) -> KPoly {
        encode(&self.codec, p)
    }

    fn active_elems(&self) -> Vec<Element> {
        self.elems.iter().zip(&self.active).filter(|(_, &a)| a).map(|(e, _)| e.clone()).collect()
    }

    fn add_reduced(&mut self, p: KPoly, repr: Option<Vec<KPoly>>) {
        let act: Vec<Element> = self.active_elems();
        let (mut h, mut hr) = reduce(&self.codec, &act, p, repr);
        let Some((lead, lc)) = h.last_key_value().map(|(k, c)| (k.clone(), c.clone())) else {
            return;
        };
        let inv = Rational::one() / lc;
        kp_scale(&mut h, &inv);
        if let Some(r) = hr.as_mut() {
            for ri in r.iter_mut() {
                kp_scale(ri, &inv);
            }
        }
        self.update(Element { lead, poly: h, repr: hr });
    }

    fn update(&mut self, h: Element) {
        let codec = &self.codec;
        let hi = self.elems.len();
        let hl = h.lead.clone();
        let cands: Vec<usize> = (0..self.elems.len()).filter(|&g| self.active[g]).collect();
        let lcms: Vec<Key> = cands.iter().map(|&g| codec.lcm(&hl, &self.elems[g].lead)).collect();
        let coprime: Vec<bool> = cands.iter().map(|&g| codec.coprime(&hl, &self.elems[g].lead)).collect();
        let mut keep = vec![false; cands.len()];
        for i in 0..cands.len() {
            keep[i] = coprime[i]
                || !((i + 1..cands.len()).any(|j| codec.divides(&lcms[j], &lcms[i]))
                    || (0..i).any(|j| keep[j] && codec.divides(&lcms[j], &lcms[i])));
        }
        let new_pairs: Vec<(usize, usize, Key)> =
            (0..cands.len()).filter(|&i| keep[i] && !coprime[i]).map(|i| (cands[i], hi, lcms[i].clone())).collect();
        let old = std::mem::take(&mut self.pairs);
        for (a, b, l) in old {
            let la = codec.lcm(&self.elems[a].lead, &hl);
            let lb = codec.lcm(&self.elems[b].lead, &hl);
            if codec.divides(&hl, &l) && la != l && lb != l {
                continue;
            }
            self.pairs.push((a, b, l));
        }
        self.pairs.extend(new_pairs);
        for g in 0..self.elems.len() {
            if self.active[g] && codec.divides(&hl, &self.elems[g].lead) {
                self.active[g] = false;
            }
        }
        self.elems.push(h);
        self.active.push(true);
    }

    fn run(&mut self) {
        while !self.pairs.is_empty() {
            let codec = &self.codec;
            let best = (0..self.pairs.len())
                .min_by(|&i, &j| {
                    let (a, b) = (&self.pairs[i].2, &self.pairs[j].2);
                    codec.degree(a).cmp(&codec.degree(b)).then_with(|| a.cmp(b))
                })
                .unwrap();
            let (i, j, l) = self.pairs.swap_remove(best);
            let (gi, gj) = (&self.elems[i], &self.elems[j]);
            let si = codec.div(&l, &gi.lead);
            let sj = codec.div(&l, &gj.lead);
            let mut s = KPoly::new();
            kp_add_scaled_shifted(&mut s, &gi.poly, &Rational::one(), &si, codec);
            kp_add_scaled_shifted(&mut s, &gj.poly, &-Rational::one(), &sj, codec);
            let repr = if self.track {
                let mut r = vec![KPoly::new(); self.ninputs];
                for (k, rk) in r.iter_mut().enumerate() {
                    kp_add_scaled_shifted(rk, &gi.repr.as_ref().unwrap()[k], &Rational::one(), &si, codec);
                    kp_add_scaled_shifted(rk, &gj.repr.as_ref().unwrap()[k], &-Rational::one(), &sj, codec);
                }
                Some(r)
            } else {
                None
            };
            self.add_reduced(s, repr);
        }
    }

    fn finish(self) -> ReductionBasis {
        let codec = self.codec.clone();
        let mut basis: Vec<Element> = self.active_elems();
        basis.sort_by(|a, b| a.lead.cmp(&b.lead));
        // interreduce tails
        for i in 0..basis.len() {
            let others: Vec<Element> = basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, e)| e.clone()).collect();
            let mut tail = basis[i].poly.clone();
            let lc = tail.pop_last().unwrap();
            let (rem, repr) = reduce(&codec, &others, tail, basis[i].repr.clone());
            let mut poly = rem;
            poly.insert(lc.0, lc.1);
            basis[i].poly = poly;
            basis[i].repr = repr;
        }
        ReductionBasis { codec, ninputs: self.ninputs, elems: basis, tracked: self.track }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::order::OrderKind;
    use crate::algebra::rational::int;

    fn v(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn check_tracking(inputs: &[Polynomial], kind: OrderKind, weights: &[u32]) -> ReductionBasis {
        let n = inputs[0].nvars();
        let b = ReductionBasis::compute(inputs, &TermOrder::new(kind, n), weights, true);
        for e in &b.elems {
            let poly = decode(&b.codec, &e.poly);
            let mut acc = Polynomial::zero(n);
            for (r, f) in e.repr.as_ref().unwrap().iter().zip(inputs) {
                acc += &(&decode(&b.codec, r) * f);
            }
            assert_eq!(acc, poly, "stored syzygy expression must reproduce the element");
        }
        b
    }

    #[test]
    fn twisted_cubic() {
        // ideal of the twisted cubic in grevlex: y^2 - xz, xy - z... classic 3 quadrics
        let n = 4;
        let (x, y, z, w) = (v(n, 0), v(n, 1), v(n, 2), v(n, 3));
        let gens = [&(&x * &z) - &(&y * &y), &(&x * &w) - &(&y * &z), &(&y * &w) - &(&z * &z)];
        for kind in [OrderKind::Grevlex, OrderKind::Lex] {
            let b = check_tracking(&gens, kind, &[2; 4]);
            for g in &gens {
                assert!(b.normal_form(g).is_zero());
            }
            let p = &(&x * &gens[2]) + &(&w.pow(3) * &gens[0]);
            assert!(b.normal_form(&p).is_zero());
            let r = b.reduce_tracked(&p);
            let mut acc = r.remainder.clone();
            for (c, g) in r.cofactors.iter().zip(&gens) {
                acc += &(c * g);
            }
            assert_eq!(acc, p);
        }
    }

    #[test]
    fn single_generator_cofactor() {
        let b1 = v(1, 0);
        let a2 = -&b1.pow(2);
        let basis = ReductionBasis::compute(std::slice::from_ref(&a2), &TermOrder::new(OrderKind::Grevlex, 1), &[2], true);
        let r = basis.reduce_tracked(&b1.pow(2).scale(&int(3)));
        assert!(r.remainder.is_zero());
        assert_eq!(r.cofactors[0], Polynomial::constant(1, int(-3)));
        let r = basis.reduce_tracked(&b1);
        assert_eq!(r.remainder, b1);
    }

    #[test]
    fn unit_ideal_detected() {
        let x = v(2, 0);
        let y = v(2, 1);
        let one = Polynomial::one(2);
        let b = ReductionBasis::compute(&[&(&x * &y) - &one, x.clone()], &TermOrder::new(OrderKind::Grevlex, 2), &[2, 2], true);
        assert!(b.is_unit_ideal());
        assert!(b.normal_form(&y).is_zero());
    }

    #[test]
    fn stored_round_trip() {
        let n = 2;
        let gens = [&v(n, 0).pow(2) - &v(n, 1), v(n, 1).pow(2)];
        let o = TermOrder::new(OrderKind::Grevlex, n);
        let b = ReductionBasis::compute(&gens, &o, &[2, 4], true);
        let s = b.to_stored();
        let b2 = ReductionBasis::from_stored(&s, &o, &[2, 4]).unwrap();
        assert_eq!(b.elements(), b2.elements());
    }
}
