//! Dense univariate polynomials over ℚ: interpolation, square-free
//! decomposition and Sturm real-root counting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};

/// Coefficients stored from the constant term upwards, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![Rational::one()] }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + rational::to_f64(c))
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rational::int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (UniPoly::zero(), UniPoly::zero());
        };
        if sd < dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let q = &rem[i + dd] / lc;
            if !q.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * c;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Positive rescaling to a primitive integer polynomial (keeps every sign).
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let l = rational::lcm_of_denominators(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        UniPoly::new(ints.into_iter().map(|v| Rational::from_integer(v / &g)).collect())
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => UniPoly::zero(),
        }
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `(factor, multiplicity)` pairs whose
    /// product (with multiplicities) equals `self` up to a constant.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.primitive();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let nb = b.div_rem(&a).0;
            let nc = d.div_rem(&a).0;
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.primitive(), i));
            }
            d = nc.sub(&nb.derivative());
            b = nb;
            i += 1;
        }
        out
    }

    /// Sturm chain `p, p', −rem(p, p'), …` with positive rescaling.
    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.primitive()];
        if self.degree().unwrap_or(0) == 0 {
            return seq;
        }
        seq.push(self.derivative().primitive());
        loop {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&-Rational::one()).primitive());
        }
        seq
    }

    /// Number of distinct real roots.
    pub fn count_distinct_real_roots(&self) -> usize {
        let Some(deg) = self.degree() else { return 0 };
        if deg == 0 {
            return 0;
        }
        let seq = self.sturm_sequence();
        let sign_at = |pos: bool| -> Vec<i8> {
            seq.iter()
                .map(|p| {
                    let s = if p.leading().unwrap().is_positive() { 1 } else { -1 };
                    if !pos && p.degree().unwrap() % 2 == 1 {
                        -s
                    } else {
                        s
                    }
                })
                .collect()
        };
        sign_changes(&sign_at(false)) - sign_changes(&sign_at(true))
    }

    /// Number of real roots counted with multiplicity.
    pub fn count_real_roots_with_multiplicity(&self) -> usize {
        self.squarefree_decomposition()
            .iter()
            .map(|(f, m)| m * f.count_distinct_real_roots())
            .sum()
    }

    /// Certifies that every root is real and simple from approximate roots:
    /// exact signs at `deg + 1` separating rationals must alternate.
    /// Returns the degree on success and `None` when the test is inconclusive.
    pub fn certify_simple_real_roots(&self, approx: &[f64]) -> Option<usize> {
        let deg = self.degree()?;
        if deg == 0 || approx.len() != deg || approx.iter().any(|t| !t.is_finite()) {
            return None;
        }
        let mut roots = approx.to_vec();
        roots.sort_by(f64::total_cmp);
        let spread = (roots[deg - 1] - roots[0]).max(1.0);
        let mut probes = Vec::with_capacity(deg + 1);
        probes.push(roots[0] - spread);
        for w in roots.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            if !(w[0] < mid && mid < w[1]) {
                return None;
            }
            probes.push(mid);
        }
        probes.push(roots[deg - 1] + spread);
        let mut prev = 0i8;
        let mut changes = 0;
        for t in probes {
            let v = self.eval(&rational::from_f64(t).ok()?);
            let s = if v.is_positive() { 1 } else if v.is_negative() { -1 } else { return None };
            if prev != 0 && s != prev {
                changes += 1;
            }
            prev = s;
        }
        (changes == deg).then_some(deg)
    }

    /// Newton interpolation through `(nodes[i], values[i])`.
    pub fn interpolate(nodes: &[Rational], values: &[Rational]) -> UniPoly {
        assert_eq!(nodes.len(), values.len());
        let n = nodes.len();
        let mut dd = values.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&nodes[i] - &nodes[i - level]);
            }
        }
        // Horner-style expansion of the Newton form.
        let mut acc = UniPoly::zero();
        for i in (0..n).rev() {
            let lin = UniPoly::new(vec![-nodes[i].clone(), Rational::one()]);
            acc = acc.mul(&lin);
            acc = acc.sub(&UniPoly::new(vec![-dd[i].clone()]));
        }
        acc
    }

    /// Interpolation on the nodes `0, 1, …, values.len()−1`.
    pub fn interpolate_consecutive(values: &[Rational]) -> UniPoly {
        let nodes: Vec<Rational> = (0..values.len()).map(|i| rational::int(i as i64)).collect();
        Self::interpolate(&nodes, values)
    }
}

fn sign_changes(signs: &[i8]) -> usize {
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}
