//! High-precision quantum invariants of the figure-eight knot.
//!
//! The crate evaluates the colored Jones polynomial exactly at roots of
//! unity, builds the Turaev-Viro invariant from it, solves the saddle-point
//! equations of the associated potential functions, and assembles the
//! asymptotic expansion formulas that tie the growth rates of both invariants
//! to the hyperbolic volume of the knot complement.
//!
//! Everything runs at user-selected MPFR precision through a
//! [`PrecisionContext`]; exponentially large values travel as [`LogComplex`].
//!
//! Modules:
//! - [`dilog`], [`qdilog`]: complex dilogarithm, Clausen/Lobachevsky, and the
//!   quantum dilogarithm with its contour quadrature and closed-form ratios;
//! - [`jones`]: the exact Habiro sum and its term-magnitude analysis;
//! - [`tv`]: the Turaev-Viro invariant and its window decomposition;
//! - [`potentials`]: potential families, saddle solvers, and the window
//!   functions Theta, Xi, Psi, Upsilon;
//! - [`aef`]: the asymptotic expansion formula evaluators;
//! - [`verify`]: independent oracles (contour representation, Laplace engine,
//!   Riemann-sum equivalence);
//! - [`reference`]: deliberately naive reference implementations for tests.

pub mod aef;
pub mod dilog;
pub mod error;
pub mod jones;
pub mod logcx;
pub mod potentials;
pub mod prec;
pub mod qdilog;
pub mod quad;
pub mod reference;
pub mod tv;
pub mod verify;

pub use dilog::{clausen, dilog as dilog_fn, fig8_volume, lobachevsky};
pub use error::{Error, Result};
pub use jones::{colored_jones_exact, JonesValue, RootSpec};
pub use logcx::LogComplex;
pub use prec::PrecisionContext;
pub use tv::{tv_invariant, TvResult};

// Re-export the bignum backend so downstream crates track the same version.
pub use rug;
