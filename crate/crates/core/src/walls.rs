//! Empirical probe for walls between polynomial pieces along a segment.
//!
//! Pieces are fitted at the rounded sample points of the segment. Where two
//! consecutive fitted pieces differ, the probe looks for a linear form that
//! changes sign between the two samples and on whose zero set the two pieces
//! agree. Forms are tried in order: those from fundamental circuits, those
//! from cuts (fundamental cuts and vertex stars), then (for small graphs)
//! every form with coefficients in {-1, 0, 1}. Intervals that none of these explain are
//! reported as unexplained.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{check_len, CapacityVector, Multigraph};
use crate::interp::{interpolate_piece_with, InterpolationOptions};
use crate::polynomial::{serialize_display, LinearForm, MultivariatePolynomial};

/// Largest edge count for the exhaustive {-1, 0, 1} form search.
pub const EXHAUSTIVE_FORM_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// k_e = sum of the other edges of a fundamental circuit.
    CircuitDerived,
    /// k_e = sum of the other edges of a fundamental cut.
    CutDerived,
    /// Found by the exhaustive search over small forms.
    DetectedByProbe,
}

#[derive(Debug, Clone, Serialize)]
pub struct WallCandidate {
    pub form: LinearForm,
    /// The form as an equation, e.g. `k3 = k1 + k2`.
    pub equation: String,
    pub provenance: Provenance,
    /// Sample indices of the two fitted pieces on either side.
    pub interval: (usize, usize),
    /// Segment parameter in [0, 1] where the form vanishes.
    #[serde(serialize_with = "serialize_display")]
    pub crossing: BigRational,
    /// The point where the form vanishes, one rational per edge.
    pub crossing_point: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeSample {
    pub index: usize,
    pub point: CapacityVector,
    /// The fitted piece, or `None` if no piece validated here.
    pub piece: Option<MultivariatePolynomial>,
}

#[derive(Debug, Clone, Serialize)]
pub struct UnexplainedInterval {
    pub interval: (usize, usize),
    pub difference: MultivariatePolynomial,
}

#[derive(Debug, Clone, Serialize)]
pub struct WallProbeReport {
    pub samples: Vec<ProbeSample>,
    pub walls: Vec<WallCandidate>,
    pub unexplained: Vec<UnexplainedInterval>,
}

/// Largest cut whose sub-sums are all offered as candidates.
const SUBSET_CUT_LIMIT: usize = 6;

/// Candidate wall forms, deduplicated: k_e = sum of the rest of a
/// fundamental circuit, then k_e = sum of a subset of the rest of a cut.
/// The cuts are the fundamental cuts and the vertex stars; for cuts with
/// more than [`SUBSET_CUT_LIMIT`] edges only the full sum is used.
pub fn candidate_forms(g: &Multigraph) -> Vec<(LinearForm, Provenance)> {
    let m = g.edge_count();
    let mut out: Vec<(LinearForm, Provenance)> = Vec::new();
    let mut push = |e: usize, others: Vec<usize>, tag: Provenance| {
        let f = LinearForm::balance(m, e, others);
        if f.is_zero() {
            return;
        }
        let f = f.normalized();
        if !out.iter().any(|(g, _)| *g == f) {
            out.push((f, tag));
        }
    };
    for c in g.fundamental_cycle_basis() {
        let support = c.support();
        for &e in &support {
            push(
                e,
                support.iter().copied().filter(|&x| x != e).collect(),
                Provenance::CircuitDerived,
            );
        }
    }
    let mut cuts: Vec<Vec<usize>> = g
        .fundamental_cut_basis()
        .iter()
        .map(|c| c.support())
        .collect();
    for v in 0..g.vertex_count() {
        let star: Vec<usize> = (0..m)
            .filter(|&e| {
                let edge = g.edge(e);
                !edge.is_loop() && (edge.tail == v || edge.head == v)
            })
            .collect();
        if !star.is_empty() && !cuts.contains(&star) {
            cuts.push(star);
        }
    }
    for cut in cuts {
        for &e in &cut {
            let rest: Vec<usize> = cut.iter().copied().filter(|&x| x != e).collect();
            if cut.len() > SUBSET_CUT_LIMIT {
                push(e, rest, Provenance::CutDerived);
                continue;
            }
            for mask in 1u32..(1 << rest.len()) {
                let subset = (0..rest.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| rest[i])
                    .collect();
                push(e, subset, Provenance::CutDerived);
            }
        }
    }
    out
}

fn all_small_forms(m: usize) -> Vec<LinearForm> {
    let mut out = Vec::new();
    let total = 3usize.pow(m as u32);
    for code in 0..total {
        let mut c = code;
        let coeffs: Vec<i64> = (0..m)
            .map(|_| {
                let d = (c % 3) as i64 - 1;
                c /= 3;
                d
            })
            .collect();
        let f = LinearForm::new(coeffs);
        if !f.is_zero() && f.normalized() == f {
            out.push(f);
        }
    }
    out
}

/// Rounded point at parameter i/steps along the segment.
fn sample_point(a: &[u64], b: &[u64], i: u64, steps: u64) -> Vec<u64> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let num = x as i128 * (steps - i) as i128 + y as i128 * i as i128;
            // round half up
            ((2 * num + steps as i128) / (2 * steps as i128)) as u64
        })
        .collect()
}

fn as_i64(p: &CapacityVector) -> Vec<i64> {
    p.values().iter().map(|&x| x as i64).collect()
}

pub fn probe_walls(
    g: &Multigraph,
    a: &CapacityVector,
    b: &CapacityVector,
    steps: u64,
) -> Result<WallProbeReport> {
    probe_walls_with(g, a, b, steps, &InterpolationOptions::default())
}

pub fn probe_walls_with(
    g: &Multigraph,
    a: &CapacityVector,
    b: &CapacityVector,
    steps: u64,
    options: &InterpolationOptions,
) -> Result<WallProbeReport> {
    check_len("segment start", g.edge_count(), a.len())?;
    check_len("segment end", g.edge_count(), b.len())?;
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    if let Some(&edge) = g.bridges().first() {
        return Err(Error::HasBridge { edge });
    }
    let mut samples: Vec<ProbeSample> = Vec::new();
    for i in 0..=steps {
        let point = CapacityVector::new(sample_point(a.values(), b.values(), i, steps))?;
        if samples.last().is_some_and(|s| s.point == point) {
            continue;
        }
        let piece = match interpolate_piece_with(g, &point, options) {
            Ok(r) => Some(r.piece),
            Err(Error::NoValidatedPiece { .. }) => None,
            Err(e) => return Err(e),
        };
        samples.push(ProbeSample {
            index: samples.len(),
            point,
            piece,
        });
    }

    let candidates = candidate_forms(g);
    let small = if g.edge_count() <= EXHAUSTIVE_FORM_LIMIT {
        all_small_forms(g.edge_count())
    } else {
        Vec::new()
    };
    let mut walls = Vec::new();
    let mut unexplained = Vec::new();
    let fitted: Vec<&ProbeSample> = samples.iter().filter(|s| s.piece.is_some()).collect();
    for pair in fitted.windows(2) {
        let (s, t) = (pair[0], pair[1]);
        let (p, q) = (
            s.piece.as_ref().expect("fitted"),
            t.piece.as_ref().expect("fitted"),
        );
        if p == q {
            continue;
        }
        let diff = q - p;
        let (u, v) = (as_i64(&s.point), as_i64(&t.point));
        let explains = |f: &LinearForm| {
            let (lu, lv) = (f.eval(&u), f.eval(&v));
            lu.signum() * lv.signum() < 0 && f.annihilates(&diff) == Some(true)
        };
        let hit = candidates
            .iter()
            .find(|(f, _)| explains(f))
            .map(|(f, tag)| (f.clone(), *tag))
            .or_else(|| {
                small
                    .iter()
                    .find(|f| explains(f))
                    .map(|f| (f.clone(), Provenance::DetectedByProbe))
            });
        match hit {
            Some((form, provenance)) => {
                walls.push(crossing(form, provenance, s, t, a, b));
            }
            None => unexplained.push(UnexplainedInterval {
                interval: (s.index, t.index),
                difference: diff,
            }),
        }
    }
    Ok(WallProbeReport {
        samples,
        walls,
        unexplained,
    })
}

/// Locates the zero of `form` on the segment between two samples by linear
/// interpolation of its values there.
fn crossing(
    form: LinearForm,
    provenance: Provenance,
    s: &ProbeSample,
    t: &ProbeSample,
    a: &CapacityVector,
    b: &CapacityVector,
) -> WallCandidate {
    let rat = |x: i64| BigRational::from_integer(BigInt::from(x));
    let (lu, lv) = (form.eval(&as_i64(&s.point)), form.eval(&as_i64(&t.point)));
    // parameters of the two samples in units of 1/steps, from their points
    let param = |p: &CapacityVector| -> BigRational {
        let seg: Vec<i64> = a
            .values()
            .iter()
            .zip(b.values())
            .map(|(&x, &y)| y as i64 - x as i64)
            .collect();
        match seg.iter().position(|&d| d != 0) {
            Some(e) => BigRational::new(
                BigInt::from(p.values()[e] as i64 - a.values()[e] as i64),
                BigInt::from(seg[e]),
            ),
            None => rat(0),
        }
    };
    let (pu, pv) = (param(&s.point), param(&t.point));
    let frac = BigRational::new(BigInt::from(-lu), BigInt::from(lv - lu));
    let crossing = &pu + (&pv - &pu) * &frac;
    let crossing_point = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(&x, &y)| (rat(x as i64) + rat(y as i64 - x as i64) * &crossing).to_string())
        .collect();
    WallCandidate {
        equation: form.to_string(),
        form,
        provenance,
        interval: (s.index, t.index),
        crossing,
        crossing_point,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn caps(v: &[u64]) -> CapacityVector {
        CapacityVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn three_k2_single_wall() {
        let r = probe_walls(&corpus::three_k2(), &caps(&[2, 3, 2]), &caps(&[2, 3, 9]), 7).unwrap();
        assert_eq!(r.walls.len(), 1, "{r:#?}");
        let w = &r.walls[0];
        assert_eq!(w.form, LinearForm::new(vec![-1, -1, 1]).normalized());
        assert_eq!(w.equation, "k3 = k1 + k2");
        assert_eq!(w.crossing_point, vec!["2", "3", "5"]);
        assert!(r.unexplained.is_empty());
    }

    #[test]
    fn k3_no_wall() {
        let r = probe_walls(&corpus::k3(), &caps(&[2, 5, 5]), &caps(&[5, 5, 5]), 3).unwrap();
        assert!(r.walls.is_empty());
        assert!(r.unexplained.is_empty());
        assert!(r.samples[..3].iter().all(|s| s.piece.is_some()));
    }

    #[test]
    fn inside_one_piece() {
        let r = probe_walls(&corpus::three_k2(), &caps(&[5, 6, 8]), &caps(&[6, 7, 9]), 4).unwrap();
        assert!(r.walls.is_empty());
        assert!(r.unexplained.is_empty());
    }

    #[test]
    fn three_k2_forms() {
        let forms = candidate_forms(&corpus::three_k2());
        assert!(forms
            .iter()
            .any(|(f, t)| f.to_string() == "k3 = k1 + k2" && *t == Provenance::CutDerived));
        assert!(forms.iter().any(|(_, t)| *t == Provenance::CircuitDerived));
    }

    #[test]
    fn vertex_star_forms() {
        let forms = candidate_forms(&corpus::prism());
        for eq in ["k1 = k7", "k7 = k1 + k3", "k1 = k3 + k7"] {
            assert!(
                forms
                    .iter()
                    .any(|(f, t)| f.to_string() == eq && *t == Provenance::CutDerived),
                "{eq}"
            );
        }
    }
}
