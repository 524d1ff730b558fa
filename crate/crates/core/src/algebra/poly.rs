//! Sparse multivariate polynomials over Q in a fixed number of variables.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::rational::{self, Rational};

pub type Exponents = SmallVec<[u16; 8]>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

pub fn weighted_degree(exps: &[u16], weights: &[u32]) -> u32 {
    exps.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(smallvec::smallvec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e: Exponents = smallvec::smallvec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exps: Exponents, c: Rational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u16]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0u16; self.nvars])
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        for (e, x) in &other.terms {
            self.add_term(e.clone(), x * c);
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Degree if homogeneous; `Some(0)` for the zero polynomial.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| weighted_degree(e, weights));
        let first = match degs.next() {
            Some(d) => d,
            None => return Some(0),
        };
        degs.all(|d| d == first).then_some(first)
    }

    pub fn max_degree(&self, weights: &[u32]) -> Option<u32> {
        self.terms.keys().map(|e| weighted_degree(e, weights)).max()
    }

    pub fn degrees(&self, weights: &[u32]) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|e| weighted_degree(e, weights)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn graded_component(&self, weights: &[u32], d: i64) -> Self {
        if d < 0 {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| weighted_degree(e, weights) as i64 == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `images[i]` for variable `i`; all images share one variable count.
    pub fn substitute(&self, images: &[Polynomial], target_nvars: usize) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(p.nvars)]).collect();
        let mut out = Polynomial::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(target_nvars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k as usize];
            }
            out += &t;
        }
        out
    }

    /// Embeds into a ring with `nvars` variables, mapping variable `i` to `positions[i]`.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.nvars);
        let mut out = Polynomial::zero(nvars);
        for (e, c) in &self.terms {
            let mut f: Exponents = smallvec::smallvec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                f[positions[i]] += k;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Inverse of [`Polynomial::embed`]; `None` if a dropped variable occurs.
    pub fn restrict(&self, nvars: usize, positions: &[usize]) -> Option<Self> {
        assert_eq!(positions.len(), nvars);
        let mut out = Polynomial::zero(nvars);
        for (e, c) in &self.terms {
            let mut f: Exponents = smallvec::smallvec![0; nvars];
            let mut used = 0u32;
            for (j, &p) in positions.iter().enumerate() {
                f[j] = e[p];
                used += e[p] as u32;
            }
            if used != e.iter().map(|&x| x as u32).sum::<u32>() {
                return None;
            }
            out.add_term(f, c.clone());
        }
        Some(out)
    }

    /// Sum of coefficients times a monomial-wise functional.
    pub fn pair_with(&self, f: impl Fn(&Exponents) -> Rational) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| acc + c * f(e))
    }

    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = rational::is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| if k == 1 { names[j].clone() } else { format!("{}^{}", names[j], k) })
                .collect();
            if mono.is_empty() {
                out.push_str(&rational::format(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&rational::format(&abs));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl std::ops::AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl std::ops::SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
