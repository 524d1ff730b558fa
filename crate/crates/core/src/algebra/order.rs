//! Term orders and an order-preserving monomial encoding.
//!
//! A monomial is stored as a key whose lexicographic comparison agrees with
//! the term order, so sorted maps keep leading terms at the end.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::poly::Exponents;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    #[default]
    Grevlex,
    Lex,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Grevlex => "grevlex",
            OrderKind::Lex => "lex",
        }
    }
}

impl std::str::FromStr for OrderKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "grevlex" => Ok(OrderKind::Grevlex),
            "lex" => Ok(OrderKind::Lex),
            _ => Err(format!("unknown term order {s:?} (expected grevlex or lex)")),
        }
    }
}

/// Term order with a variable ranking; `ranking[0]` is the largest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    pub kind: OrderKind,
    pub ranking: Vec<usize>,
}

impl TermOrder {
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        TermOrder { kind, ranking: (0..nvars).collect() }
    }

    pub fn with_ranking(kind: OrderKind, ranking: Vec<usize>) -> Self {
        let mut check = ranking.clone();
        check.sort_unstable();
        assert!(check.iter().enumerate().all(|(i, &v)| i == v), "ranking must be a permutation");
        TermOrder { kind, ranking }
    }

    pub fn compare(&self, a: &[u16], b: &[u16], weights: &[u32]) -> Ordering {
        let codec = MonomialCodec::new(self, weights);
        codec.encode(a).cmp(&codec.encode(b))
    }
}

pub type Key = SmallVec<[i32; 10]>;

#[derive(Clone, Debug)]
pub struct MonomialCodec {
    kind: OrderKind,
    ranking: Vec<usize>,
    /// Weight of the variable stored in each key slot (grevlex slots start at 1).
    slot_weights: Vec<u32>,
}

impl MonomialCodec {
    pub fn new(order: &TermOrder, weights: &[u32]) -> Self {
        assert_eq!(order.ranking.len(), weights.len(), "order/weight length mismatch");
        let slot_weights = match order.kind {
            OrderKind::Lex => order.ranking.iter().map(|&v| weights[v]).collect(),
            OrderKind::Grevlex => order.ranking.iter().rev().map(|&v| weights[v]).collect(),
        };
        MonomialCodec { kind: order.kind, ranking: order.ranking.clone(), slot_weights }
    }

    pub fn nvars(&self) -> usize {
        self.ranking.len()
    }

    fn offset(&self) -> usize {
        match self.kind {
            OrderKind::Lex => 0,
            OrderKind::Grevlex => 1,
        }
    }

    pub fn encode(&self, exps: &[u16]) -> Key {
        let n = self.ranking.len();
        match self.kind {
            OrderKind::Lex => self.ranking.iter().map(|&v| exps[v] as i32).collect(),
            OrderKind::Grevlex => {
                let mut k: Key = SmallVec::with_capacity(n + 1);
                let deg: u32 = self.ranking.iter().rev().zip(&self.slot_weights).map(|(&v, &w)| exps[v] as u32 * w).sum();
                k.push(deg as i32);
                for &v in self.ranking.iter().rev() {
                    k.push(-(exps[v] as i32));
                }
                k
            }
        }
    }

    pub fn decode(&self, key: &Key) -> Exponents {
        let n = self.ranking.len();
        let mut e: Exponents = smallvec::smallvec![0; n];
        match self.kind {
            OrderKind::Lex => {
                for (slot, &v) in self.ranking.iter().enumerate() {
                    e[v] = key[slot] as u16;
                }
            }
            OrderKind::Grevlex => {
                for (slot, &v) in self.ranking.iter().rev().enumerate() {
                    e[v] = (-key[slot + 1]) as u16;
                }
            }
        }
        e
    }

    fn exp(&self, key: &Key, slot: usize) -> i32 {
        match self.kind {
            OrderKind::Lex => key[slot],
            OrderKind::Grevlex => -key[slot + 1],
        }
    }

    pub fn degree(&self, key: &Key) -> u32 {
        match self.kind {
            OrderKind::Grevlex => key[0] as u32,
            OrderKind::Lex => key.iter().zip(&self.slot_weights).map(|(&e, &w)| e as u32 * w).sum(),
        }
    }

    pub fn mul(&self, a: &Key, b: &Key) -> Key {
        a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
    }

    /// `b / a`; caller guarantees `a | b`.
    pub fn div(&self, b: &Key, a: &Key) -> Key {
        b.iter().zip(a.iter()).map(|(x, y)| x - y).collect()
    }

    pub fn divides(&self, a: &Key, b: &Key) -> bool {
        let o = self.offset();
        (0..self.nvars()).all(|s| self.exp(a, s) <= self.exp(b, s)) && (o == 0 || a[0] <= b[0])
    }

    pub fn lcm(&self, a: &Key, b: &Key) -> Key {
        match self.kind {
            OrderKind::Lex => a.iter().zip(b.iter()).map(|(x, y)| *x.max(y)).collect(),
            OrderKind::Grevlex => {
                let mut k: Key = SmallVec::with_capacity(a.len());
                k.push(0);
                let mut deg = 0i32;
                for s in 0..self.nvars() {
                    let e = self.exp(a, s).max(self.exp(b, s));
                    deg += e * self.slot_weights[s] as i32;
                    k.push(-e);
                }
                k[0] = deg;
                k
            }
        }
    }

    pub fn coprime(&self, a: &Key, b: &Key) -> bool {
        (0..self.nvars()).all(|s| self.exp(a, s) == 0 || self.exp(b, s) == 0)
    }

    pub fn one(&self) -> Key {
        smallvec::smallvec![0; self.nvars() + self.offset()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[u16]) -> Exponents {
        v.iter().copied().collect()
    }

    #[test]
    fn grevlex_matches_textbook() {
        let o = TermOrder::new(OrderKind::Grevlex, 3);
        let w = [1, 1, 1];
        // x^2 z < x y^2 in grevlex (z is smallest and x^2z has more of it)
        assert_eq!(o.compare(&e(&[2, 0, 1]), &e(&[1, 2, 0]), &w), Ordering::Less);
        assert_eq!(o.compare(&e(&[0, 0, 3]), &e(&[1, 0, 0]), &w), Ordering::Greater);
    }

    #[test]
    fn lex_matches_textbook() {
        let o = TermOrder::new(OrderKind::Lex, 3);
        let w = [1, 1, 1];
        assert_eq!(o.compare(&e(&[1, 0, 0]), &e(&[0, 5, 5]), &w), Ordering::Greater);
    }

    #[test]
    fn weights_enter_grevlex() {
        let o = TermOrder::new(OrderKind::Grevlex, 2);
        // b2 (weight 4) beats b1 (weight 2)
        assert_eq!(o.compare(&e(&[0, 1]), &e(&[1, 0]), &[2, 4]), Ordering::Greater);
    }

    #[test]
    fn codec_round_trip_and_ops() {
        for kind in [OrderKind::Grevlex, OrderKind::Lex] {
            let o = TermOrder::with_ranking(kind, vec![2, 0, 1]);
            let c = MonomialCodec::new(&o, &[2, 4, 6]);
            let a = e(&[1, 0, 2]);
            let b = e(&[0, 3, 1]);
            let (ka, kb) = (c.encode(&a), c.encode(&b));
            assert_eq!(c.decode(&ka), a);
            assert_eq!(c.decode(&c.mul(&ka, &kb)), e(&[1, 3, 3]));
            assert_eq!(c.decode(&c.lcm(&ka, &kb)), e(&[1, 3, 2]));
            assert!(c.divides(&ka, &c.mul(&ka, &kb)));
            assert!(!c.divides(&ka, &kb));
            assert!(!c.coprime(&ka, &kb));
            assert_eq!(c.degree(&ka), 14);
            assert_eq!(c.lcm(&ka, &kb), c.encode(&e(&[1, 3, 2])));
        }
    }
}
