//! Exact computations for deformation problems controlled by weight-graded
//! DG Lie algebras: homotopy transfer, augmentation cones, Maurer-Cartan
//! functors over Artin rings, presentations, and monodromy-type filtrations.
//!
//! The linear algebra and filtration layers are generic over a [`scalar::Field`];
//! everything above them works over [`Q`].

pub mod cone;
pub mod deformation;
pub mod error;
pub mod exact_linalg;
pub mod filtrations;
pub mod graded_lie;
pub mod linfinity;
pub mod poly;
pub mod report;
pub mod samples;
pub mod scenarios;
pub mod scalar;

pub use error::{Error, Result};
pub use report::{CheckItem, CheckReport};
pub use scalar::Q;

pub type Matrix = exact_linalg::Matrix<Q>;
pub type Subspace = exact_linalg::Subspace<Q>;
pub type QuotientData = exact_linalg::QuotientData<Q>;
pub type Filtration = filtrations::Filtration<Q>;
pub type NilpotentEndo = filtrations::NilpotentEndo<Q>;
pub type FilteredNilpotentSpace = filtrations::FilteredNilpotentSpace<Q>;
