//! Topological signatures of multipartite entanglement.
//!
//! Pure qubit states are turned into filtered simplicial complexes by an entropic
//! correlation functional; the crate computes their persistent homology over F2 and
//! the scalar invariants built on top of it (integrated Euler characteristic, average
//! distillable entanglement and its bounds), together with the graph-state
//! combinatorics that predict those barcodes.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); closed-form
//! combinatorial values are exact rationals. The aliases below fix `f64`.

pub mod correlations;
pub mod error;
pub mod exact;
pub mod f2;
pub mod graphstates;
pub mod homology;
pub mod invariants;
pub mod oracle;
pub mod qstate;
pub mod scalar;
pub mod subset;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;
pub use subset::QubitSubset;

pub type State = qstate::PureState<f64>;
pub type Density = qstate::DensityMatrix<f64>;
pub type Complex = homology::FilteredComplex<f64>;
pub type Curve = homology::BettiCurve<f64>;
pub type Bars = homology::Barcode<f64>;
pub type Functional = correlations::CorrelationFunctional<f64>;
pub type Iec = invariants::IecReport<f64>;
pub type Bounds = invariants::BoundsReport<f64>;
