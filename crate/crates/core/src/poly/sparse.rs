//! Sparse multivariate polynomials over ℚ.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Exponent vector, ordered graded-lexicographically (earlier variables
/// dominate within a degree).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u16]>);

impl Monomial {
    pub fn new(exps: impl Into<Box<[u16]>>) -> Self {
        Monomial(exps.into())
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into())
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Box<[u16]>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored. Binary operations require both
/// operands to use the same variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero(vars: &[String]) -> Self {
        SparsePoly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn var(vars: &[String], name: &str) -> Result<Self> {
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::MissingVariable(name.to_string()))?;
        let mut e = vec![0u16; vars.len()];
        e[i] = 1;
        Ok(Self::from_terms(vars, [(Monomial::new(e), Rational::one())]))
    }

    pub fn from_terms(
        vars: &[String],
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.exps().len(), vars.len(), "exponent length mismatch");
            p.add_term(m, c);
        }
        p
    }

    /// Affine form `c₀ + Σ cᵢ·varᵢ`.
    pub fn affine(vars: &[String], constant: &Rational, linear: &[Rational]) -> Self {
        let mut p = Self::constant(vars, constant.clone());
        for (i, c) in linear.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0u16; vars.len()];
                e[i] = 1;
                p.add_term(Monomial::new(e), c.clone());
            }
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Total degree counting only the variables at `indices`.
    pub fn degree_in(&self, indices: &[usize]) -> u32 {
        self.terms
            .keys()
            .map(|m| indices.iter().map(|&i| m.exps()[i] as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Greatest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn check_vars(&self, other: &SparsePoly) {
        assert_eq!(self.vars, other.vars, "polynomials over different variable lists");
    }

    /// Exact quotient `self / divisor`; `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &SparsePoly) -> Option<SparsePoly> {
        self.check_vars(divisor);
        let (lm, lc) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c / lc;
            for (dm, dc) in &divisor.terms {
                rem.add_term(qm.mul(dm), -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn eval_f64(&self, values: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exps()
                    .iter()
                    .zip(values)
                    .fold(rational::to_f64(c), |acc, (&e, &v)| acc * v.powi(e as i32))
            })
            .sum()
    }

    pub fn eval_exact(&self, values: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exps()
                    .iter()
                    .zip(values)
                    .fold(c.clone(), |acc, (&e, v)| acc * num_traits::pow(v.clone(), e as usize))
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Canonical text, terms in descending graded-lex order, e.g.
    /// `d^2 - x^2 + 2*x*u1 - u1^2`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(rational::format(&abs));
            }
            for (v, &e) in self.vars.iter().zip(m.exps().iter()) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            schema: POLY_SCHEMA.to_string(),
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson { coeff: rational::format(c), exps: m.exps().to_vec() })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self> {
        if json.schema != POLY_SCHEMA {
            return Err(Error::invalid(format!("unsupported polynomial schema `{}`", json.schema)));
        }
        let mut p = Self::zero(&json.vars);
        for t in &json.terms {
            if t.exps.len() != json.vars.len() {
                return Err(Error::invalid("term exponent length does not match vars"));
            }
            p.add_term(Monomial::new(t.exps.clone()), rational::parse(&t.coeff)?);
        }
        Ok(p)
    }
}

pub const POLY_SCHEMA: &str = "kellipse.poly/v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub schema: String,
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u16>,
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_vars(rhs);
        let mut out = SparsePoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::new(vec![2u16, 0]);
        let b = Monomial::new(vec![1u16, 1]);
        let c = Monomial::new(vec![0u16, 3]);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn arithmetic_and_text() {
        let v = vars(&["x", "y"]);
        let x = SparsePoly::var(&v, "x").unwrap();
        let y = SparsePoly::var(&v, "y").unwrap();
        let s = &x + &y;
        let d = &x - &y;
        let p = &s * &d;
        assert_eq!(p.to_text(), "x^2 - y^2");
        assert_eq!(p.term_count(), 2);
        assert_eq!(p.total_degree(), 2);
        assert!((&p - &p).is_zero());
        assert_eq!(p.div_exact(&s).unwrap(), d);
        assert!(p.div_exact(&x).is_none());
        assert_eq!(SparsePoly::constant(&v, int(-3)).to_text(), "-3");
        assert_eq!(p.eval_exact(&[int(3), int(2)]), int(5));
    }

    #[test]
    fn json_round_trip() {
        let v = vars(&["x", "d"]);
        let p = SparsePoly::affine(&v, &crate::rational::ratio(1, 3), &[int(2), int(-1)]);
        let q = &p * &p;
        assert_eq!(SparsePoly::from_json(&q.to_json()).unwrap(), q);
    }
}
