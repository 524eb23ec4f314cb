//! mocert: certification toolkit for multiobjective optimization.
//!
//! Given a problem `min f(x) s.t. g(x) <= 0` and finite candidate sets,
//! this crate decides approximate Pareto membership, Geoffrion properness
//! with a preset trade-off bound, and modified approximate KKT conditions,
//! and verifies the scalarization and saddle-point bridges between them at
//! desk scale.
//!
//! Start with [`problem::registry_instance`] to get a built-in instance,
//! or see the runnable programs under `examples/`.

pub mod error;
pub mod geoffrion;
pub mod kkt;
pub mod lagrangian;
pub mod numerics;
pub mod pareto;
pub mod problem;
pub mod scalarization;
pub mod sequences;

pub mod cli;

pub use error::{Error, Result};
