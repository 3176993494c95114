//! Exact arithmetic and certificates for the birational reduction of moduli
//! stacks of vector bundles on a curve.
//!
//! For a smooth projective curve of genus `g ≥ 2`, the stack `Bun_{r,d}` of
//! rank `r`, degree `d` vector bundles is birationally linear over
//! `Bun_{h,0}` with `h = hcf(r, d)`: it is birational to `Bun_{h,0} × A^n`
//! with `n = (g − 1)(r² − h²)`. This crate computes the numerical skeleton of
//! that reduction (ranks, degrees, Euler forms, weights, Grassmannian and
//! Hecke dimensions, determinant-degree maps) as a [`ReductionTrace`] and
//! re-verifies traces with independent arithmetic.
//!
//! ```
//! use bunred_core::{reduce, verify_trace, GenusContext, SheafType};
//!
//! let trace = reduce(GenusContext::new(2)?, SheafType::new(2, 1)?)?;
//! assert_eq!(trace.total_affine_dim, 3);
//! assert!(verify_trace(&trace)?.is_valid());
//! # Ok::<(), bunred_core::Error>(())
//! ```

pub mod det;
pub mod diophantine;
pub mod error;
pub mod euler;
pub mod exec;
pub mod grassmann;
pub mod hirschowitz;
pub mod reduction;
pub mod report;
pub mod sweep;
pub mod trace_io;
pub mod types;
pub mod verify;
pub mod weights;

pub use det::{compose_det, DegreeAffineMap};
pub use diophantine::{solve_lemma, solve_lemma_bruteforce, LemmaSolution};
pub use error::{Error, Result};
pub use euler::{bun_stack_dim, euler_form, ext_relative_dim, ext_stack_dim};
pub use exec::Execution;
pub use reduction::{reduce, reduce_with, CompositeStep, ReductionTrace, StepNode};
pub use sweep::{run_sweep, SweepRow, SweepSpec};
pub use types::{GenusContext, SheafType};
pub use verify::{audit_trace, verify_trace, VerificationReport};
