//! Exact interpolation of polynomial pieces of the capacity counting function.
//!
//! A piece of total degree at most d (the cyclomatic number) is fitted on the
//! principal lattice {b + δ : δ >= 0, |δ| <= d} using multivariate forward
//! differences, so the fit reproduces every sample by construction. Small
//! systems are also solved by fraction-free elimination in the monomial basis
//! and the two answers must coincide.
//!
//! The base is dilated (b = λ·base for λ = 1, 2, 4, ...) until the fit also
//! reproduces the count at |E| + 2 validation points: one step of d + 1 along
//! each axis and the two further multiples (λ+1)·base and (λ+2)·base.
//! Dilations that put an entry of b at 1 are skipped: the count vanishes
//! whenever some k_e = 1, so such grids can fit the zero polynomial.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::count::{FlowCountQuery, FlowSpace};
use crate::error::{Error, Result};
use crate::graph::{CapacityVector, Multigraph};
use crate::linalg::solve_exact;
use crate::par;
use crate::polynomial::MultivariatePolynomial;

/// Largest monomial count for which the elimination cross-check runs.
pub const CROSS_CHECK_LIMIT: usize = 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterpolationOptions {
    /// Largest dilation factor tried before giving up. Dilations double
    /// from 1.
    pub max_dilation: u64,
    /// Run the elimination cross-check when the system is small enough.
    pub cross_check: bool,
}

impl Default for InterpolationOptions {
    fn default() -> Self {
        InterpolationOptions {
            max_dilation: 8,
            cross_check: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InterpolationReport {
    pub piece: MultivariatePolynomial,
    /// The requested base point.
    pub base_point: CapacityVector,
    /// Dilation factor at which the fit validated.
    pub dilation: u64,
    pub sample_points: Vec<Vec<u64>>,
    pub validation_points: Vec<Vec<u64>>,
    #[serde(serialize_with = "crate::polynomial::serialize_display")]
    pub max_residual: BigRational,
    /// The cyclomatic number, which bounds the degree of every piece.
    pub claimed_degree: usize,
    pub degree: Option<u32>,
    pub cross_checked: bool,
}

/// Exponent vectors of total degree at most `d` in `m` variables, graded then
/// lexicographic. For m = 0 this is the single empty vector.
pub fn monomials(m: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(m: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        for a in 0..=left {
            prefix.push(a);
            rec(m, left - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, d as u32, &mut Vec::with_capacity(m), &mut out);
    out.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse(e.clone())));
    out
}

/// The principal lattice of order `d` at `base`.
pub fn principal_lattice(base: &[u64], d: usize) -> Vec<Vec<u64>> {
    offsets_to_points(base, &monomials(base.len(), d))
}

fn counts_at(space: &FlowSpace, points: &[Vec<u64>]) -> Vec<BigInt> {
    par::map(points, |p| {
        let q = FlowCountQuery::nowhere_zero(CapacityVector::new(p.clone()).expect("positive"));
        BigInt::from(space.count(&q.ranges()))
    })
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Fits the degree-`d` polynomial through `values` on the principal lattice
/// at `base` via the Newton form sum_α Δ^α f(b) · Π_e C(k_e - b_e, α_e).
fn newton_fit(
    base: &[u64],
    d: usize,
    values: &HashMap<Vec<u32>, BigInt>,
) -> MultivariatePolynomial {
    let m = base.len();
    let mut piece = MultivariatePolynomial::zero(m);
    for alpha in monomials(m, d) {
        // Δ^α f(b) = Σ_{β ≤ α} (-1)^{|α-β|} Π C(α_e, β_e) f(b + β)
        let mut diff = BigInt::zero();
        let mut beta = vec![0u32; m];
        loop {
            let mut w = BigInt::one();
            let mut parity = 0u32;
            for e in 0..m {
                w *= binomial(alpha[e], beta[e]);
                parity += alpha[e] - beta[e];
            }
            let term = w * &values[&beta];
            if parity.is_multiple_of(2) {
                diff += term;
            } else {
                diff -= term;
            }
            // odometer over β ≤ α
            let mut i = 0;
            while i < m && beta[i] == alpha[i] {
                beta[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
            beta[i] += 1;
        }
        if diff.is_zero() {
            continue;
        }
        let mut basis = MultivariatePolynomial::constant(m, BigRational::from_integer(diff));
        for e in 0..m {
            let mut fact = BigInt::one();
            for i in 0..alpha[e] {
                // (k_e - b_e - i)
                let shift = BigRational::from_integer(BigInt::from(base[e]) + BigInt::from(i));
                let factor = &MultivariatePolynomial::variable(m, e)
                    - &MultivariatePolynomial::constant(m, shift);
                basis = &basis * &factor;
                fact *= BigInt::from(i + 1);
            }
            if !fact.is_one() {
                basis = basis.scale(&BigRational::new(BigInt::one(), fact));
            }
        }
        piece = &piece + &basis;
    }
    piece
}

/// Solves for the monomial coefficients directly.
fn elimination_fit(
    base: &[u64],
    d: usize,
    values: &HashMap<Vec<u32>, BigInt>,
) -> Result<MultivariatePolynomial> {
    let m = base.len();
    let monos = monomials(m, d);
    let mut a = Vec::with_capacity(monos.len());
    let mut b = Vec::with_capacity(monos.len());
    for delta in &monos {
        let point: Vec<BigInt> = base
            .iter()
            .zip(delta)
            .map(|(&x, &y)| BigInt::from(x + y as u64))
            .collect();
        a.push(
            monos
                .iter()
                .map(|e| {
                    point
                        .iter()
                        .zip(e)
                        .map(|(x, &p)| num_traits::pow(x.clone(), p as usize))
                        .product()
                })
                .collect(),
        );
        b.push(values[delta].clone());
    }
    let coeffs = solve_exact(&a, &b)?;
    Ok(MultivariatePolynomial::from_terms(
        m,
        monos.into_iter().zip(coeffs),
    ))
}

/// Offsets of the axis validation points: d + 1 along each axis.
fn axis_offsets(m: usize, d: usize) -> Vec<Vec<u32>> {
    (0..m)
        .map(|e| {
            let mut delta = vec![0; m];
            delta[e] = d as u32 + 1;
            delta
        })
        .collect()
}

/// Validation points for a fit at `b` (= λ·base): one step of d + 1 along
/// each axis, then (λ+1)·base and (λ+2)·base.
fn validation_points(base: &[u64], lambda: u64, d: usize) -> Vec<Vec<u64>> {
    let b: Vec<u64> = base.iter().map(|x| x * lambda).collect();
    let mut out = offsets_to_points(&b, &axis_offsets(base.len(), d));
    for extra in [1, 2] {
        out.push(base.iter().map(|x| x * (lambda + extra)).collect());
    }
    out
}

fn offsets_to_points(b: &[u64], offsets: &[Vec<u32>]) -> Vec<Vec<u64>> {
    offsets
        .iter()
        .map(|delta| {
            b.iter()
                .zip(delta)
                .map(|(x, &y)| x + u64::from(y))
                .collect()
        })
        .collect()
}

pub(crate) fn to_bigints(p: &[u64]) -> Vec<BigInt> {
    p.iter().map(|&x| BigInt::from(x)).collect()
}

/// Fits a piece at exactly the dilation `lambda`. Returns the report with its
/// true `max_residual`, which is nonzero when the sample region crosses a wall.
pub(crate) fn fit_at_dilation(
    g: &Multigraph,
    space: &FlowSpace,
    base: &CapacityVector,
    lambda: u64,
    cross_check: bool,
) -> Result<InterpolationReport> {
    let d = g.cyclomatic_number();
    let m = g.edge_count();
    let scaled: Vec<u64> = base.values().iter().map(|x| x * lambda).collect();
    let deltas = monomials(m, d);
    let samples = principal_lattice(&scaled, d);
    let checks = validation_points(base.values(), lambda, d);
    // samples and axis checks both lie in the lattice of order d + 1
    let mut offsets = deltas.clone();
    offsets.extend(axis_offsets(m, d));
    let mut lattice_counts: Vec<BigInt> = space
        .count_lattice(&scaled, d + 1, &offsets)
        .into_iter()
        .map(BigInt::from)
        .collect();
    let mut check_counts = lattice_counts.split_off(deltas.len());
    check_counts.extend(counts_at(space, &checks[m..]));
    let sample_counts = lattice_counts;
    let values: HashMap<Vec<u32>, BigInt> = deltas.iter().cloned().zip(sample_counts).collect();

    let piece = newton_fit(&scaled, d, &values);
    let cross_checked = cross_check && deltas.len() <= CROSS_CHECK_LIMIT;
    if cross_checked {
        let other = elimination_fit(&scaled, d, &values)?;
        if other != piece {
            return Err(Error::ValidationFailed {
                point: CapacityVector::new(scaled).expect("positive").to_string(),
                expected: piece.to_string(),
                found: other.to_string(),
            });
        }
    }
    let mut max_residual = BigRational::zero();
    for (p, c) in checks.iter().zip(&check_counts) {
        let r = (piece.evaluate(&to_bigints(p))? - BigRational::from_integer(c.clone())).abs();
        if r > max_residual {
            max_residual = r;
        }
    }
    Ok(InterpolationReport {
        degree: piece.total_degree(),
        piece,
        base_point: base.clone(),
        dilation: lambda,
        sample_points: samples,
        validation_points: checks,
        max_residual,
        claimed_degree: d,
        cross_checked,
    })
}

fn require_bridgeless(g: &Multigraph) -> Result<()> {
    match g.bridges().first() {
        Some(&edge) => Err(Error::HasBridge { edge }),
        None => Ok(()),
    }
}

pub fn interpolate_piece(g: &Multigraph, base: &CapacityVector) -> Result<InterpolationReport> {
    interpolate_piece_with(g, base, &InterpolationOptions::default())
}

pub fn interpolate_piece_with(
    g: &Multigraph,
    base: &CapacityVector,
    options: &InterpolationOptions,
) -> Result<InterpolationReport> {
    crate::graph::check_len("base point", g.edge_count(), base.len())?;
    require_bridgeless(g)?;
    let space = &FlowSpace::for_capacities(g, base.values());
    let smallest = base.values().iter().copied().min().unwrap_or(u64::MAX);
    let mut lambda = 1;
    while lambda <= options.max_dilation {
        if smallest.saturating_mul(lambda) < 2 {
            lambda *= 2;
            continue;
        }
        let report = fit_at_dilation(g, space, base, lambda, options.cross_check)?;
        if report.max_residual.is_zero() {
            return Ok(report);
        }
        lambda *= 2;
    }
    Err(Error::NoValidatedPiece {
        base: base.to_string(),
        max_dilation: options.max_dilation,
    })
}

/// Which univariate count to fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Counter {
    /// Integer flows with values in {-k+1, ..., k-1}.
    Integer,
    /// Z_k flows.
    Modular,
}

impl Counter {
    pub fn count(self, g: &Multigraph, k: u64) -> Result<BigInt> {
        let c = match self {
            Counter::Integer => crate::count::count_nowhere_zero_integer(g, k)?,
            Counter::Modular => crate::count::count_nowhere_zero_zk(g, k)?,
        };
        Ok(BigInt::from(c))
    }
}

/// Fits the polynomial of degree at most `degree` through the counts at
/// k = 2, ..., degree + 2 and checks it at degree + 3 and degree + 4.
pub fn interpolate_univariate(
    counter: Counter,
    g: &Multigraph,
    degree: usize,
) -> Result<MultivariatePolynomial> {
    let ks: Vec<u64> = (2..=degree as u64 + 2).collect();
    let values: Vec<BigInt> = ks
        .iter()
        .map(|&k| counter.count(g, k))
        .collect::<Result<_>>()?;
    let a: Vec<Vec<BigInt>> = ks
        .iter()
        .map(|&k| {
            (0..=degree)
                .map(|p| num_traits::pow(BigInt::from(k), p))
                .collect()
        })
        .collect();
    let coeffs = solve_exact(&a, &values)?;
    let poly = MultivariatePolynomial::from_terms(
        1,
        coeffs
            .into_iter()
            .enumerate()
            .map(|(p, c)| (vec![p as u32], c)),
    );
    for k in [degree as u64 + 3, degree as u64 + 4] {
        let expected = BigRational::from_integer(counter.count(g, k)?);
        let found = poly.evaluate(&[BigInt::from(k)])?;
        if expected != found {
            return Err(Error::ValidationFailed {
                point: format!("k = {k}"),
                expected: expected.to_string(),
                found: found.to_string(),
            });
        }
    }
    Ok(poly)
}
