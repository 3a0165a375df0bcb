//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables are indexed by edge; they print as `k1, k2, ...` (edge 0 is
//! `k1`), or as `k` when there is a single variable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultivariatePolynomial {
    nvars: usize,
    /// Exponent vector -> nonzero coefficient.
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MultivariatePolynomial {
    pub fn zero(nvars: usize) -> Self {
        MultivariatePolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::from_terms(nvars, [(vec![0; nvars], c)])
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(nvars, [(e, BigRational::one())])
    }

    /// Builds a polynomial, merging repeated exponents and dropping zeros.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            nvars,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), BigRational::from_integer((*c).into()))),
        )
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Largest exponent sum, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| (e.clone(), c * s)),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.nvars, BigRational::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, point: &[BigInt]) -> Result<BigRational> {
        if point.len() != self.nvars {
            return Err(Error::LengthMismatch {
                what: "evaluation point",
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut m = BigInt::one();
            for (x, &a) in point.iter().zip(e) {
                if a > 0 {
                    m *= num_traits::pow(x.clone(), a as usize);
                }
            }
            total += c * BigRational::from_integer(m);
        }
        Ok(total)
    }

    pub fn evaluate_i64(&self, point: &[i64]) -> Result<BigRational> {
        let p: Vec<BigInt> = point.iter().map(|&v| BigInt::from(v)).collect();
        self.evaluate(&p)
    }

    /// Replaces variable `var` by the polynomial `by`.
    pub fn substitute(&self, var: usize, by: &MultivariatePolynomial) -> Self {
        assert_eq!(by.nvars, self.nvars);
        let mut powers = vec![Self::constant(self.nvars, BigRational::one())];
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let a = e[var] as usize;
            while powers.len() <= a {
                let next = powers.last().expect("nonempty") * by;
                powers.push(next);
            }
            let mut rest = e.clone();
            rest[var] = 0;
            let mono = Self::from_terms(self.nvars, [(rest, c.clone())]);
            out = &out + &(&mono * &powers[a]);
        }
        out
    }

    /// Coefficients (constant first) of the univariate polynomial t -> p(t * point).
    pub fn restrict_to_ray(&self, point: &[i64]) -> Vec<BigRational> {
        let d = self.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![BigRational::zero(); d + 1];
        for (e, c) in &self.terms {
            let mut m = BigInt::one();
            for (&x, &a) in point.iter().zip(e) {
                if a > 0 {
                    m *= num_traits::pow(BigInt::from(x), a as usize);
                }
            }
            let deg: u32 = e.iter().sum();
            coeffs[deg as usize] += c * BigRational::from_integer(m);
        }
        coeffs
    }

    /// The polynomial as integer terms over a common positive denominator,
    /// or `None` if that does not fit in i128.
    pub fn to_scaled_i128(&self) -> Option<ScaledPolynomial> {
        let mut denom = BigInt::one();
        for c in self.terms.values() {
            denom = num_integer::Integer::lcm(&denom, c.denom());
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let n = c.numer() * (&denom / c.denom());
                Some((e.clone(), i128::try_from(&n).ok()?))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(ScaledPolynomial {
            terms,
            denom: i128::try_from(&denom).ok()?,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| TermJson {
                exponents: e.clone(),
                coefficient: c.to_string(),
            })
            .collect();
        serde_json::to_value(terms).expect("terms serialize")
    }

    pub fn from_json(nvars: usize, value: &serde_json::Value) -> Result<Self> {
        let terms: Vec<TermJson> = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            if t.exponents.len() != nvars {
                return Err(Error::LengthMismatch {
                    what: "exponent vector",
                    expected: nvars,
                    found: t.exponents.len(),
                });
            }
            let c: BigRational = t.coefficient.parse().map_err(|_| {
                Error::InvalidArgument(format!("bad coefficient `{}`", t.coefficient))
            })?;
            out.push((t.exponents, c));
        }
        Ok(Self::from_terms(nvars, out))
    }

    fn var_name(&self, i: usize) -> String {
        if self.nvars == 1 {
            "k".to_string()
        } else {
            format!("k{}", i + 1)
        }
    }
}

/// Serializes any displayable value (rationals, big integers) as a string.
pub fn serialize_display<T: fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exponents: Vec<u32>,
    coefficient: String,
}

impl Serialize for MultivariatePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Terms print in descending lexicographic order of exponent vectors.
impl fmt::Display for MultivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(v, &a)| {
                    if a == 1 {
                        self.var_name(v)
                    } else {
                        format!("{}^{}", self.var_name(v), a)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else if abs.is_integer() {
                write!(f, "{}*{}", abs, mono.join("*"))?;
            } else {
                write!(f, "({})*{}", abs, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &MultivariatePolynomial {
    type Output = MultivariatePolynomial;
    fn add(self, rhs: &MultivariatePolynomial) -> MultivariatePolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultivariatePolynomial {
    type Output = MultivariatePolynomial;
    fn sub(self, rhs: &MultivariatePolynomial) -> MultivariatePolynomial {
        self + &(-rhs)
    }
}

impl Neg for &MultivariatePolynomial {
    type Output = MultivariatePolynomial;
    fn neg(self) -> MultivariatePolynomial {
        MultivariatePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MultivariatePolynomial {
    type Output = MultivariatePolynomial;
    fn mul(self, rhs: &MultivariatePolynomial) -> MultivariatePolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultivariatePolynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

/// A rational polynomial stored as integer terms over one denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledPolynomial {
    pub terms: Vec<(Vec<u32>, i128)>,
    pub denom: i128,
}

impl ScaledPolynomial {
    /// denom · p(t · point) for t = 1, ..., n, or `None` on overflow.
    pub fn scaled_ray_values(&self, point: &[i64], n: usize) -> Option<Vec<i128>> {
        let deg = self
            .terms
            .iter()
            .map(|(e, _)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0) as usize;
        let mut by_degree = vec![0i128; deg + 1];
        for (e, c) in &self.terms {
            let mut m = *c;
            for (&x, &a) in point.iter().zip(e) {
                for _ in 0..a {
                    m = m.checked_mul(i128::from(x))?;
                }
            }
            let d: u32 = e.iter().sum();
            by_degree[d as usize] = by_degree[d as usize].checked_add(m)?;
        }
        (1..=n as i128)
            .map(|t| {
                by_degree
                    .iter()
                    .rev()
                    .try_fold(0i128, |acc, &c| acc.checked_mul(t)?.checked_add(c))
            })
            .collect()
    }
}

/// Integer linear form sum_e c_e k_e (no constant term).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Vec<i64>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<i64>) -> Self {
        LinearForm { coeffs }
    }

    /// k_e - sum of k_f over `others`.
    pub fn balance(nvars: usize, e: usize, others: impl IntoIterator<Item = usize>) -> Self {
        let mut coeffs = vec![0; nvars];
        coeffs[e] = 1;
        for f in others {
            coeffs[f] -= 1;
        }
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn eval(&self, point: &[i64]) -> i64 {
        self.coeffs.iter().zip(point).map(|(c, x)| c * x).sum()
    }

    pub fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        self.coeffs
            .iter()
            .zip(point)
            .map(|(&c, x)| x * BigRational::from_integer(c.into()))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Scales so the first nonzero coefficient is positive.
    pub fn normalized(&self) -> Self {
        match self.coeffs.iter().find(|&&c| c != 0) {
            Some(&c) if c < 0 => LinearForm {
                coeffs: self.coeffs.iter().map(|c| -c).collect(),
            },
            _ => self.clone(),
        }
    }

    /// Whether `p` vanishes identically on the hyperplane {form = 0}.
    /// Requires some coefficient of absolute value 1.
    pub fn annihilates(&self, p: &MultivariatePolynomial) -> Option<bool> {
        let pivot = self.coeffs.iter().position(|c| c.abs() == 1)?;
        let n = self.coeffs.len();
        // k_pivot = -c_pivot * sum_{f != pivot} c_f k_f
        let sign = -self.coeffs[pivot];
        let by = MultivariatePolynomial::from_terms(
            n,
            (0..n)
                .filter(|&f| f != pivot && self.coeffs[f] != 0)
                .map(|f| {
                    let mut e = vec![0; n];
                    e[f] = 1;
                    (e, BigRational::from_integer((sign * self.coeffs[f]).into()))
                }),
        );
        Some(p.substitute(pivot, &by).is_zero())
    }
}

/// Prints as an equation with the shorter side on the left: `k3 = k1 + k2`.
impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |positive: bool| {
            let parts: Vec<String> = self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| if positive { c > 0 } else { c < 0 })
                .map(|(i, &c)| match c.abs() {
                    1 => format!("k{}", i + 1),
                    a => format!("{a}*k{}", i + 1),
                })
                .collect();
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            }
        };
        let count = |positive: bool| {
            self.coeffs
                .iter()
                .filter(|&&c| if positive { c > 0 } else { c < 0 })
                .count()
        };
        if count(false) < count(true) {
            write!(f, "{} = {}", side(false), side(true))
        } else {
            write!(f, "{} = {}", side(true), side(false))
        }
    }
}

impl Serialize for LinearForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// -k1^2 + 2k1k2 + 2k1k3 - 5k1 - k2^2 + 2k2k3 - 3k2 - k3^2 - k3 + 6
    pub(crate) fn three_k2_middle_piece() -> MultivariatePolynomial {
        MultivariatePolynomial::from_int_terms(
            3,
            &[
                (&[2, 0, 0], -1),
                (&[1, 1, 0], 2),
                (&[1, 0, 1], 2),
                (&[1, 0, 0], -5),
                (&[0, 2, 0], -1),
                (&[0, 1, 1], 2),
                (&[0, 1, 0], -3),
                (&[0, 0, 2], -1),
                (&[0, 0, 1], -1),
                (&[0, 0, 0], 6),
            ],
        )
    }

    #[test]
    fn evaluate_examples() {
        let p = three_k2_middle_piece();
        assert_eq!(p.evaluate_i64(&[0, 0, 0]).unwrap(), q(6));
        assert_eq!(p.evaluate_i64(&[-2, -2, -3]).unwrap(), q(40));
        assert_eq!(
            p.evaluate_i64(&[0, 0, 0]).unwrap(),
            p.coefficient(&[0, 0, 0])
        );
        assert!(p.evaluate_i64(&[1, 2]).is_err());
    }

    #[test]
    fn display_matches_lexicographic_layout() {
        assert_eq!(
            three_k2_middle_piece().to_string(),
            "-k1^2 + 2*k1*k2 + 2*k1*k3 - 5*k1 - k2^2 + 2*k2*k3 - 3*k2 - k3^2 - k3 + 6"
        );
        let u = MultivariatePolynomial::from_int_terms(1, &[(&[2], 1), (&[1], -3), (&[0], 2)]);
        assert_eq!(u.to_string(), "k^2 - 3*k + 2");
        assert_eq!(MultivariatePolynomial::zero(2).to_string(), "0");
    }

    #[test]
    fn arithmetic() {
        let k1 = MultivariatePolynomial::variable(2, 0);
        let k2 = MultivariatePolynomial::variable(2, 1);
        let one = MultivariatePolynomial::constant(2, q(1));
        // (2k1-2)(2k2-3) = 4k1k2 - 6k1 - 4k2 + 6
        let a = &k1.scale(&q(2)) - &one.scale(&q(2));
        let b = &k2.scale(&q(2)) - &one.scale(&q(3));
        let prod = &a * &b;
        assert_eq!(
            prod,
            MultivariatePolynomial::from_int_terms(
                2,
                &[(&[1, 1], 4), (&[1, 0], -6), (&[0, 1], -4), (&[0, 0], 6)]
            )
        );
        assert_eq!(prod.total_degree(), Some(2));
        assert!((&prod - &prod).is_zero());
        assert_eq!((&prod - &prod).total_degree(), None);
        assert_eq!(prod.homogeneous_part(2).term_count(), 1);
    }

    #[test]
    fn substitution_and_annihilation() {
        // (k3 - k1 - k2)(k3 - k1 - k2 + 1) vanishes on k3 = k1 + k2
        let l = LinearForm::balance(3, 2, [0, 1]);
        let lp = MultivariatePolynomial::from_int_terms(
            3,
            &[(&[0, 0, 1], 1), (&[1, 0, 0], -1), (&[0, 1, 0], -1)],
        );
        let one = MultivariatePolynomial::constant(3, q(1));
        let d = &lp * &(&lp + &one);
        assert_eq!(l.annihilates(&d), Some(true));
        assert_eq!(LinearForm::balance(3, 0, [1]).annihilates(&d), Some(false));
        assert_eq!(l.to_string(), "k3 = k1 + k2");
    }

    #[test]
    fn ray_restriction() {
        let p = three_k2_middle_piece();
        let coeffs = p.restrict_to_ray(&[1, 2, 2]);
        for t in -3i64..4 {
            let direct = p.evaluate_i64(&[t, 2 * t, 2 * t]).unwrap();
            let via: BigRational = coeffs
                .iter()
                .enumerate()
                .map(|(d, c)| c * q(t.pow(d as u32)))
                .fold(BigRational::zero(), |a, b| a + b);
            assert_eq!(direct, via);
        }
    }

    #[test]
    fn json_roundtrip() {
        let p = three_k2_middle_piece().scale(&BigRational::new(1.into(), 3.into()));
        let back = MultivariatePolynomial::from_json(3, &p.to_json()).unwrap();
        assert_eq!(back, p);
        assert!(p.to_json().to_string().contains("\"coefficient\":\"-1/3\""));
    }
}
