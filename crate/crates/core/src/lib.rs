//! Controllability analysis for networks of interacting spin-1/2 particles.
//!
//! A network is described by per-particle gyromagnetic ratios, pairwise
//! coupling triples `(M, N, P)` on the `xx`, `yy` and `zz` interactions, and
//! the set of globally driven field axes. From it we build the drift and
//! control operators as exact rational combinations of `i·(Pauli word)`,
//! close them under the commutator to obtain the dynamical Lie algebra, and
//! decide operator and state controllability.
//!
//! Two independent routes are kept side by side:
//!
//! - the exact symbolic route ([`pauli`], [`operator_space`], [`lie_closure`]),
//!   where all rank decisions are made over the rationals;
//! - the numeric route ([`dense_oracle`]), which materializes every operator
//!   as a `2ⁿ×2ⁿ` complex matrix built directly from the 2×2 spin matrices.
//!
//! Graph-theoretic shortcuts ([`graph_analysis`]) predict the closure without
//! computing it; [`classify::analyze`] runs both and reports any disagreement.

pub mod cases;
pub mod classify;
pub mod config;
pub mod dense_oracle;
mod error;
pub mod graph_analysis;
pub mod lie_closure;
pub mod operator_space;
pub mod pauli;
pub mod rational;
pub mod spin_model;

pub use error::{Error, Result};

pub use classify::{analyze, AnalysisOptions, AnalysisReport};
pub use lie_closure::{close, ClosureResult};
pub use operator_space::EchelonBasis;
pub use pauli::{AlgebraElement, PauliWord, SiteSymbol};
pub use rational::Rational;
pub use spin_model::{Axis, CouplingTriple, SpinNetwork};
