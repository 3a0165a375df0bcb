//! Reciprocity at negated capacities, checked against totally cyclic
//! orientations.
//!
//! A capacity vector k lies inside a fitted piece P when P(t·k) equals the
//! count at t·k for t = 1, ..., ξ + 2. Both sides are then polynomials in t of
//! degree at most ξ agreeing at ξ + 2 points, so P agrees with the count along
//! the whole ray, and P(-k) is the value of that ray polynomial at t = -1.
//!
//! A [`PieceAtlas`] keeps the validated pieces of one graph. To place a point
//! on a wall it fits pieces at perturbed multiples of the point and keeps the
//! first one whose ray check succeeds.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::count::{
    oriented_ranges, weighted_tco_flow_count_with, BoundMode, FlowCountQuery, FlowSpace,
};
use crate::error::{Error, Result};
use crate::graph::{check_len, CapacityVector, Multigraph};
use crate::interp::{interpolate_piece_with, InterpolationOptions, InterpolationReport};
use crate::orientations::{enumerate_totally_cyclic, OrientationSet};
use crate::par;
use crate::polynomial::{serialize_display, MultivariatePolynomial, ScaledPolynomial};

/// How [`PieceAtlas::locate`] searches for a piece containing a point that
/// no known piece contains. After the point itself it tries bases s·k + p
/// for each scale s, with p drawn uniformly from {0, ..., s/2}^E. Fits at
/// perturbed bases skip the elimination cross-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocateStrategy {
    pub scales: Vec<u64>,
    pub perturbations: usize,
    /// Largest dilation tried for a perturbed base.
    pub max_dilation: u64,
}

impl Default for LocateStrategy {
    fn default() -> Self {
        LocateStrategy {
            scales: vec![8, 16],
            perturbations: 4,
            max_dilation: 4,
        }
    }
}

#[derive(Debug)]
pub struct PieceAtlas {
    graph: Multigraph,
    xi: usize,
    options: InterpolationOptions,
    pieces: Vec<InterpolationReport>,
    scaled: Vec<Option<ScaledPolynomial>>,
    tcos: OnceLock<OrientationSet>,
    strategy: LocateStrategy,
}

impl PieceAtlas {
    pub fn new(g: &Multigraph) -> Result<Self> {
        Self::with_options(g, InterpolationOptions::default())
    }

    pub fn with_options(g: &Multigraph, options: InterpolationOptions) -> Result<Self> {
        if let Some(&edge) = g.bridges().first() {
            return Err(Error::HasBridge { edge });
        }
        Ok(PieceAtlas {
            graph: g.clone(),
            xi: g.cyclomatic_number(),
            options,
            pieces: Vec::new(),
            scaled: Vec::new(),
            tcos: OnceLock::new(),
            strategy: LocateStrategy::default(),
        })
    }

    pub fn set_strategy(&mut self, strategy: LocateStrategy) {
        self.strategy = strategy;
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn pieces(&self) -> &[InterpolationReport] {
        &self.pieces
    }

    pub fn totally_cyclic(&self) -> Result<&OrientationSet> {
        if let Some(t) = self.tcos.get() {
            return Ok(t);
        }
        let t = enumerate_totally_cyclic(&self.graph)?;
        Ok(self.tcos.get_or_init(|| t))
    }

    fn count(&self, k: &[u64]) -> BigInt {
        let q = FlowCountQuery::nowhere_zero(CapacityVector::new(k.to_vec()).expect("positive"));
        BigInt::from(FlowSpace::for_capacities(&self.graph, k).count(&q.ranges()))
    }

    /// Counts at t·k for t = 1, ..., ξ + 2.
    pub fn ray_values(&self, k: &CapacityVector) -> Vec<BigInt> {
        let ts: Vec<u64> = (1..=self.xi as u64 + 2).collect();
        par::map(&ts, |&t| self.count(k.scaled(t).values()))
    }

    fn agrees_on_ray(
        piece: &MultivariatePolynomial,
        scaled: Option<&ScaledPolynomial>,
        k: &CapacityVector,
        values: &[BigInt],
    ) -> bool {
        let point: Vec<i64> = k.values().iter().map(|&x| x as i64).collect();
        if let Some(sp) = scaled {
            let fast = sp.scaled_ray_values(&point, values.len()).and_then(|got| {
                values
                    .iter()
                    .zip(got)
                    .map(|(v, g)| Some(i128::try_from(v).ok()?.checked_mul(sp.denom)? == g))
                    .collect::<Option<Vec<bool>>>()
            });
            if let Some(eq) = fast {
                return eq.into_iter().all(|b| b);
            }
        }
        let coeffs = piece.restrict_to_ray(&point);
        values.iter().enumerate().all(|(i, v)| {
            let t = BigRational::from_integer(BigInt::from(i + 1));
            let mut acc = BigRational::zero();
            for c in coeffs.iter().rev() {
                acc = acc * &t + c;
            }
            acc == BigRational::from_integer(v.clone())
        })
    }

    fn piece_agrees(&self, idx: usize, k: &CapacityVector, values: &[BigInt]) -> bool {
        Self::agrees_on_ray(
            &self.pieces[idx].piece,
            self.scaled[idx].as_ref(),
            k,
            values,
        )
    }

    /// Whether `k` lies inside the piece of report `idx`.
    pub fn contains(&self, idx: usize, k: &CapacityVector) -> Result<bool> {
        check_len("capacity vector", self.graph.edge_count(), k.len())?;
        Ok(self.piece_agrees(idx, k, &self.ray_values(k)))
    }

    /// Index of a known piece containing `k`, without fitting new pieces.
    pub fn find(&self, k: &CapacityVector) -> Result<Option<usize>> {
        check_len("capacity vector", self.graph.edge_count(), k.len())?;
        let values = self.ray_values(k);
        Ok(self.find_with(k, &values))
    }

    fn find_with(&self, k: &CapacityVector, values: &[BigInt]) -> Option<usize> {
        (0..self.pieces.len()).find(|&i| self.piece_agrees(i, k, values))
    }

    /// Fits a piece at `base` and records it unless an equal piece is known.
    pub fn add_piece(&mut self, base: &CapacityVector) -> Result<usize> {
        let report = interpolate_piece_with(&self.graph, base, &self.options)?;
        Ok(self.insert(report))
    }

    fn insert(&mut self, report: InterpolationReport) -> usize {
        match self.pieces.iter().position(|r| r.piece == report.piece) {
            Some(i) => i,
            None => {
                self.scaled.push(report.piece.to_scaled_i128());
                self.pieces.push(report);
                self.pieces.len() - 1
            }
        }
    }

    /// Index of a piece containing `k`, fitting new pieces as needed: first
    /// at `k` itself, then at perturbed multiples s·k + p of growing scale.
    pub fn locate(&mut self, k: &CapacityVector) -> Result<usize> {
        check_len("capacity vector", self.graph.edge_count(), k.len())?;
        let values = self.ray_values(k);
        if let Some(i) = self.find_with(k, &values) {
            return Ok(i);
        }
        let seed = k.values().iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &x| {
            (h ^ x).wrapping_mul(0x0000_0100_0000_01b3)
        });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bases = vec![(k.clone(), self.options)];
        let perturbed = InterpolationOptions {
            max_dilation: self.strategy.max_dilation,
            cross_check: false,
        };
        for &s in &self.strategy.scales {
            for _ in 0..self.strategy.perturbations {
                let p: Vec<u64> = k
                    .values()
                    .iter()
                    .map(|&x| s * x + rng.gen_range(0..=s / 2))
                    .collect();
                bases.push((CapacityVector::new(p).expect("positive"), perturbed));
            }
        }
        for (base, options) in &bases {
            let report = match interpolate_piece_with(&self.graph, base, options) {
                Ok(r) => r,
                Err(Error::NoValidatedPiece { .. }) => continue,
                Err(e) => return Err(e),
            };
            let i = self.insert(report);
            if self.piece_agrees(i, k, &values) {
                return Ok(i);
            }
        }
        Err(Error::PointOutsidePiece(k.to_string()))
    }

    /// Fits pieces at `n` pseudo-random bases, each a shuffle of the values
    /// 2^(i+2) - 1. Distinct entries of this form have no small sum relations,
    /// so the bases avoid the walls that integer points near the origin sit
    /// on. Bases where no piece validates are skipped. Returns the number of
    /// pieces now known.
    pub fn seed_pieces(&mut self, n: usize, seed: u64) -> Result<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = self.graph.edge_count();
        let generic: Vec<u64> = (0..m).map(|i| (1u64 << (i + 2).min(62)) - 1).collect();
        for _ in 0..n {
            let mut base = generic.clone();
            base.shuffle(&mut rng);
            match self.add_piece(&CapacityVector::new(base).expect("positive")) {
                Ok(_) | Err(Error::NoValidatedPiece { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(self.pieces.len())
    }

    /// (-1)^ξ P(-k) for the piece `idx`.
    pub fn signed_value_at_negation(&self, idx: usize, k: &CapacityVector) -> Result<BigRational> {
        let neg: Vec<i64> = k.values().iter().map(|&x| -(x as i64)).collect();
        let v = self.pieces[idx].piece.evaluate_i64(&neg)?;
        Ok(if self.xi.is_multiple_of(2) { v } else { -v })
    }

    /// Sum over totally cyclic orientations of the closed per-orientation counts.
    pub fn closed_orientation_sum(&self, k: &CapacityVector) -> Result<BigInt> {
        check_len("capacity vector", self.graph.edge_count(), k.len())?;
        let tcos: Vec<_> = self.totally_cyclic()?.iter().cloned().collect();
        let space = FlowSpace::for_capacities(&self.graph, k.values());
        let parts = par::map(&tcos, |sigma| {
            space.count(&oriented_ranges(sigma, k.values(), BoundMode::Closed))
        });
        Ok(parts.into_iter().map(BigInt::from).sum())
    }

    /// Checks reciprocity at `k` using a piece that contains it.
    pub fn reciprocity(&mut self, k: &CapacityVector) -> Result<ReciprocityReport> {
        let idx = self.locate(k)?;
        self.reciprocity_with_piece(idx, k)
    }

    /// Checks reciprocity at `k` with a given piece; the caller vouches that
    /// `k` lies inside it.
    pub fn reciprocity_with_piece(
        &self,
        idx: usize,
        k: &CapacityVector,
    ) -> Result<ReciprocityReport> {
        let lhs = self.signed_value_at_negation(idx, k)?;
        let rhs = BigInt::from(weighted_tco_flow_count_with(
            &self.graph,
            k.values(),
            self.totally_cyclic()?,
        )?);
        let closed_sum = self.closed_orientation_sum(k)?;
        let pass = lhs == BigRational::from_integer(rhs.clone()) && rhs == closed_sum;
        let piece = &self.pieces[idx];
        Ok(ReciprocityReport {
            capacities: k.clone(),
            cyclomatic_number: self.xi,
            lhs,
            rhs,
            closed_sum,
            pass,
            piece_base: piece.base_point.clone(),
            piece_dilation: piece.dilation,
        })
    }

    /// Evaluates every known piece at 0 and compares with the number of
    /// totally cyclic orientations.
    pub fn zero_report(&self) -> Result<ZeroReport> {
        let tco_count = self.totally_cyclic()?.len() as u64;
        let sign = if self.xi.is_multiple_of(2) {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        let values: Vec<PieceValue> = self
            .pieces
            .iter()
            .map(|r| PieceValue {
                base_point: r.base_point.clone(),
                dilation: r.dilation,
                value: &sign * r.piece.coefficient(&vec![0; self.graph.edge_count()]),
            })
            .collect();
        let target = BigRational::from_integer(tco_count.into());
        let pass = !values.is_empty() && values.iter().all(|v| v.value == target);
        Ok(ZeroReport {
            cyclomatic_number: self.xi,
            tco_count,
            pieces: values,
            pass,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReciprocityReport {
    pub capacities: CapacityVector,
    pub cyclomatic_number: usize,
    /// (-1)^ξ P(-k).
    #[serde(serialize_with = "serialize_display")]
    pub lhs: BigRational,
    /// Flows with |x_e| <= k_e, each weighted by its compatible orientations.
    #[serde(serialize_with = "serialize_display")]
    pub rhs: BigInt,
    /// Sum over totally cyclic orientations of the closed counts.
    #[serde(serialize_with = "serialize_display")]
    pub closed_sum: BigInt,
    pub pass: bool,
    pub piece_base: CapacityVector,
    pub piece_dilation: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PieceValue {
    pub base_point: CapacityVector,
    pub dilation: u64,
    /// (-1)^ξ P(0).
    #[serde(serialize_with = "serialize_display")]
    pub value: BigRational,
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroReport {
    pub cyclomatic_number: usize,
    pub tco_count: u64,
    pub pieces: Vec<PieceValue>,
    pub pass: bool,
}

/// Reciprocity at `k` for a bridgeless graph.
pub fn reciprocity_check(g: &Multigraph, k: &CapacityVector) -> Result<ReciprocityReport> {
    PieceAtlas::new(g)?.reciprocity(k)
}

/// Default number of seed bases for [`tco_count_via_zero`].
pub const DEFAULT_ZERO_SEEDS: usize = 4;

/// Evaluates pieces fitted at a few pseudo-random bases at 0 and compares
/// each with the number of totally cyclic orientations.
pub fn tco_count_via_zero(g: &Multigraph) -> Result<ZeroReport> {
    let mut atlas = PieceAtlas::new(g)?;
    atlas.seed_pieces(DEFAULT_ZERO_SEEDS, 0)?;
    if atlas.pieces().is_empty() {
        atlas.locate(&CapacityVector::ones(g.edge_count()))?;
    }
    atlas.zero_report()
}
