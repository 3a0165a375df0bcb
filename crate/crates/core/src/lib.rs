//! Exact counting of nowhere-zero flows on multigraphs with per-edge
//! capacities, together with the tools to study the counting function:
//! totally cyclic orientations, exact multivariate interpolation of its
//! polynomial pieces, reciprocity checks at negated capacities, and an
//! empirical probe for the walls between pieces.

pub mod corpus;
pub mod count;
pub mod error;
pub mod graph;
pub mod interp;
pub mod linalg;
pub mod oracle;
pub mod orientations;
pub mod par;
pub mod polynomial;
pub mod recip;
pub mod walls;

pub use count::{
    count_flows, count_nowhere_zero_integer, count_nowhere_zero_kvec, count_nowhere_zero_zk,
    enumerate_flows, per_orientation_closed_count, per_orientation_open_count,
    weighted_tco_flow_count, BoundMode, EdgeRange, FlowCountQuery, FlowSpace, ZeroMode,
};
pub use error::{Error, Result};
pub use graph::{CapacityVector, Edge, FlowVector, IncidenceMatrix, Multigraph, Orientation, Sign};
pub use interp::{
    interpolate_piece, interpolate_univariate, Counter, InterpolationOptions, InterpolationReport,
};
pub use oracle::oracle_enumerate;
pub use orientations::{
    count_compatible_tco, enumerate_totally_cyclic, is_totally_cyclic, OrientationSet,
};
pub use polynomial::{LinearForm, MultivariatePolynomial};
pub use recip::{
    reciprocity_check, tco_count_via_zero, LocateStrategy, PieceAtlas, ReciprocityReport,
    ZeroReport,
};
pub use walls::{probe_walls, Provenance, WallCandidate, WallProbeReport};
