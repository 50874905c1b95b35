//! Numerical core for factorizing position-dependent-mass Schrödinger
//! operators and building their coherent states.
//!
//! The crate is organized around a deformed coordinate mu(x) (the integral
//! of sqrt(m)) and a superpotential W stored as a function of mu, so that
//! one W serves every admissible mass profile:
//!
//! * [`mass`] — mass profiles m(x), the deformation U = m^(-1/4), mu(x);
//! * [`grid`], [`stencil`], [`quad`], [`tridiag`] — the discrete kernel;
//! * [`classes`] — the three Riccati-type superpotential families;
//! * [`factorization`] — ladder operators, structure function, ground state;
//! * [`coherent`] — displaced states and their identity checks;
//! * [`swanson`] — the non-Hermitian quadratic Hamiltonian, its similarity
//!   map and metric;
//! * [`catalog`] — eleven named exactly solvable systems with fixtures and
//!   cross-check machinery.
//!
//! Everything numeric is generic over the scalar (`f32`/`f64`) through
//! [`scalar::Real`]; the aliases below pin the common `f64` instantiation.

pub mod catalog;
pub mod classes;
pub mod coherent;
pub mod error;
pub mod expr;
pub mod factorization;
pub mod grid;
pub mod mass;
pub mod quad;
pub mod report;
pub mod scalar;
pub mod stencil;
pub mod swanson;
pub mod tridiag;

pub use error::{Error, Result};
pub use scalar::{Real, RealFn};

/// `f64` instantiations of the core types.
pub type Grid64 = grid::Grid<f64>;
pub type SampledFunction64 = grid::SampledFunction<f64>;
pub type MassProfile64 = mass::MassProfile<f64>;
pub type TridiagonalSymmetric64 = tridiag::TridiagonalSymmetric<f64>;
pub type ClassSpec64 = classes::ClassSpec<f64>;
pub type FactorizedSystem64 = factorization::FactorizedSystem<f64>;
pub type Superpotential64 = factorization::Superpotential<f64>;
pub type CoherentParams64 = coherent::CoherentParams<f64>;
pub type SwansonSystem64 = swanson::SwansonSystem<f64>;
pub type CatalogEntry64 = catalog::CatalogEntry<f64>;
pub type EntryParams64 = catalog::EntryParams<f64>;
