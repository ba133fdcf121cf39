//! Polygons in the space of weighted rank-one Hermitian matrices, their
//! bending flows and action-angle coordinates, and the lattice-point
//! combinatorics attached to integral side lengths.
//!
//! Numerical code is generic over [`Real`] (`f32`, `f64`); side-length
//! combinatorics is generic over [`Scalar`], which also covers exact
//! rationals. Concrete aliases for the common instantiations are below.

pub mod acceptance;
pub mod bending;
pub mod combinatorics;
pub mod duality;
pub mod error;
pub mod io;
pub mod linalg;
pub mod polygon;
pub mod random;
pub mod reconstruction;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::{Rational, Real, Scalar};

pub use bending::{angle_values, bend, four_point, mu_values, poisson_bracket_fd, ActionAngle, AngleSet, FlowSpec, Observable};
pub use combinatorics::{count_lattice_points, kostka, multiplicity_report, Count, MultiplicityReport};
pub use duality::{duality_report, hitchin_invariance_report, EuclideanPolygon, HitchinSpec};
pub use linalg::{eig_hermitian, ComplexMatrix, HermitianMatrix, Spectrum, C};
pub use polygon::{
    check_semistable, check_triangle_inequalities, enumerate_walls, moduli_dimension, Edge, Polygon, SideLengths,
    TriangleVerdict, WallId,
};
pub use reconstruction::{random_interior_pattern, reconstruct, sample_polygon, PhaseMap};
pub use spectral::{action_index_set, action_values, GTsPattern};

pub type Polygon64 = Polygon<f64>;
pub type Polygon32 = Polygon<f32>;
pub type Edge64 = Edge<f64>;
pub type Hermitian64 = HermitianMatrix<f64>;
pub type Matrix64 = ComplexMatrix<f64>;
pub type Spectrum64 = Spectrum<f64>;
pub type Pattern64 = GTsPattern<f64>;
pub type PatternQ = GTsPattern<Rational>;
pub type SideLengths64 = SideLengths<f64>;
pub type SideLengthsQ = SideLengths<Rational>;
pub type EuclideanPolygon64 = EuclideanPolygon<f64>;
