//! Exact construction, verification and classification of distinguished and
//! principal nilpotent pairs in the classical Lie algebras `sl`, `so` and `sp`,
//! driven by the combinatorics of skew-graphs.
//!
//! The pipeline is
//! [`skewgraph::enumerate_admissible`] → [`liealg::build_pair`] →
//! [`liealg::verify_relations`] → [`centralizer::analyze`], and
//! [`catalog::classify`] runs it for a whole algebra. All arithmetic is exact.

pub mod catalog;
pub mod centralizer;
pub mod error;
pub mod liealg;
pub mod linalg;
pub mod matrix;
pub mod rational;
pub mod series;
pub mod skewgraph;

pub use catalog::{classify, count_orbits, export, CatalogEntry, CountMode, ExportFormat};
pub use centralizer::{
    analyze, bigrade, centralizer, closed_form_centralizer, graph_from_pair, is_rectangular_pair,
    BiGrading, CentralizerReport, ClosedForm,
};
pub use error::Error;
pub use liealg::{algebra_basis, build_pair, verify_relations, AlgebraSpec, OrbitSign, PairRealization};
pub use matrix::Matrix;
pub use rational::Rational;
pub use series::{PairKind, Series};
pub use skewgraph::{
    classify_component, enumerate_admissible, enumerate_connected, validate, Component, Node,
    ShapeClass, SkewGraph,
};
