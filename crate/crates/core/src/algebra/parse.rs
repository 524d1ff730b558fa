//! Polynomial text grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | ident | '(' expr ')'
//! ```

use num_traits::Zero;

use super::poly::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser { src, pos: 0 };
        p.skip_ws();
        if p.pos == src.len() {
            return Err(p.error("empty expression"));
        }
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => out.push(v.clone()),
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Evaluates with `resolve` supplying a polynomial for each identifier.
    pub fn eval(&self, nvars: usize, resolve: &dyn Fn(&str) -> Option<Polynomial>) -> Result<Polynomial> {
        Ok(match self {
            Expr::Num(r) => Polynomial::constant(nvars, r.clone()),
            Expr::Var(v) => resolve(v).ok_or_else(|| Error::UnknownSymbol(v.clone()))?,
            Expr::Neg(a) => -&a.eval(nvars, resolve)?,
            Expr::Add(a, b) => &a.eval(nvars, resolve)? + &b.eval(nvars, resolve)?,
            Expr::Sub(a, b) => &a.eval(nvars, resolve)? - &b.eval(nvars, resolve)?,
            Expr::Mul(a, b) => &a.eval(nvars, resolve)? * &b.eval(nvars, resolve)?,
            Expr::Pow(a, k) => a.eval(nvars, resolve)?.pow(*k),
        })
    }

    /// Evaluates an expression with no ring variables to a rational.
    pub fn eval_scalar(&self, resolve: &dyn Fn(&str) -> Option<Rational>) -> Result<Rational> {
        let p = self.eval(0, &|v| resolve(v).map(|r| Polynomial::constant(0, r)))?;
        Ok(p.as_constant().unwrap_or_else(Rational::zero))
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { input: self.src.to_string(), position: self.pos, message: msg.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        self.skip_ws();
        let mut acc = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                continue;
            }
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let k = self.integer()?;
            let k: u32 = k.parse().map_err(|_| self.error("exponent out of range"))?;
            Ok(Expr::Pow(Box::new(base), k))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let p: num_bigint::BigInt = self.integer()?.parse().unwrap();
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let q: num_bigint::BigInt = self.integer()?.parse().unwrap();
                    if q.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    Ok(Expr::Num(Rational::new(p, q)))
                } else {
                    self.pos = save;
                    Ok(Expr::Num(Rational::from_integer(p)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                Ok(Expr::Var(self.src[start..self.pos].to_string()))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Comparison predicate over integer parameters, e.g. `d >= 2 && e >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Predicate {
    clauses: Vec<(Expr, Cmp, Expr)>,
    source: String,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Cmp {
    Ge,
    Gt,
    Le,
    Lt,
    Eq,
    Ne,
}

impl Predicate {
    pub fn always() -> Self {
        Predicate { clauses: Vec::new(), source: "true".to_string() }
    }

    pub fn parse(src: &str) -> Result<Self> {
        let s = src.trim();
        if s.is_empty() || s == "true" {
            return Ok(Predicate { clauses: Vec::new(), source: s.to_string() });
        }
        let mut clauses = Vec::new();
        for clause in s.split("&&") {
            let ops = [(">=", Cmp::Ge), ("<=", Cmp::Le), ("!=", Cmp::Ne), ("==", Cmp::Eq), (">", Cmp::Gt), ("<", Cmp::Lt)];
            let found = ops.iter().find_map(|(tok, op)| clause.find(tok).map(|i| (i, tok.len(), *op)));
            let (i, len, op) = found.ok_or_else(|| Error::Parse {
                input: src.to_string(),
                position: 0,
                message: format!("clause {clause:?} has no comparison"),
            })?;
            clauses.push((Expr::parse(&clause[..i])?, op, Expr::parse(&clause[i + len..])?));
        }
        Ok(Predicate { clauses, source: s.to_string() })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self.clauses.iter().flat_map(|(a, _, b)| a.variables().into_iter().chain(b.variables())).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn eval(&self, resolve: &dyn Fn(&str) -> Option<Rational>) -> Result<bool> {
        for (a, op, b) in &self.clauses {
            let (x, y) = (a.eval_scalar(resolve)?, b.eval_scalar(resolve)?);
            let ok = match op {
                Cmp::Ge => x >= y,
                Cmp::Gt => x > y,
                Cmp::Le => x <= y,
                Cmp::Lt => x < y,
                Cmp::Eq => x == y,
                Cmp::Ne => x != y,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    fn eval2(s: &str) -> Polynomial {
        let e = Expr::parse(s).unwrap();
        e.eval(2, &|v| match v {
            "x" => Some(Polynomial::var(2, 0)),
            "y" => Some(Polynomial::var(2, 1)),
            _ => None,
        })
        .unwrap()
    }

    #[test]
    fn grammar_basics() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        assert_eq!(eval2("3/4*x^2 - y"), &x.pow(2).scale(&frac(3, 4)) - &y);
        assert_eq!(eval2("-x*y + 2"), &Polynomial::constant(2, int(2)) - &(&x * &y));
        assert_eq!(eval2("(x+y)^2"), (&x + &y).pow(2));
        assert_eq!(eval2("2x y"), (&x * &y).scale(&int(2)));
    }

    #[test]
    fn errors_carry_position() {
        match Expr::parse("x + * y") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(Expr::parse("1/0").is_err());
        assert!(Expr::parse("").is_err());
        assert!(Expr::parse("x)").is_err());
        assert!(matches!(Expr::parse("z").unwrap().eval(2, &|_| None), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn predicates() {
        let p = Predicate::parse("d >= 2 && d != 5").unwrap();
        let at = |d: i64| p.eval(&|v| (v == "d").then(|| int(d))).unwrap();
        assert!(!at(1));
        assert!(at(2));
        assert!(!at(5));
        assert!(Predicate::parse("true").unwrap().eval(&|_| None).unwrap());
        assert!(Predicate::parse("d").is_err());
    }
}
