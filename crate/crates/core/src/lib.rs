//! Finite-difference WENO solver library.

pub mod boundary;
pub mod characteristic;
pub mod error;
pub mod integrate;
pub mod mesh;
pub mod physics;
pub mod riemann;
pub mod scalar;
pub mod stencil;

pub use error::{Error, Result};
pub use scalar::{Real, Scalar};

pub mod diagnostics;
pub mod problems;
pub mod run;

/// Double-precision field with `M` components.
pub type FieldF64<const M: usize> = mesh::Field<f64, M>;
pub type GridF64 = mesh::Grid<f64>;
pub type SchemeConfigF64 = stencil::SchemeConfig<f64>;
pub type StepControlF64 = integrate::StepControl<f64>;
pub type RunSettingsF64 = run::RunSettings<f64>;
pub type SnapshotF64 = run::Snapshot<f64>;
