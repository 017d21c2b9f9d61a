//! Coupled-mode toolkit for nonreciprocal optical transmission in a
//! two-cavity optomechanical system.
//!
//! Two optical modes exchange photons directly (tunneling rate `J`) and
//! indirectly through a shared mechanical mode (effective couplings `G1`,
//! `G2`); interference between the two paths makes the forward and backward
//! transmission differ once the coupling phase difference `theta` is away
//! from `0, pi`. The crate computes:
//!
//! - the driven self-consistent steady state and its inversion
//!   ([`steady_state`]),
//! - the gauge reduction to the symmetric linearized model ([`model`]),
//! - closed-form transmission spectra and their shape metrics
//!   ([`response`]),
//! - the exact parameter conditions for perfect isolation, with a
//!   brute-force verifier ([`conditions`]),
//! - independent numerical oracles: generic linear solve, time-domain
//!   integration with and without the counter-rotating terms, harmonic
//!   demodulation ([`oracle`]).
//!
//! All numerics are generic over the scalar type through [`scalar::Real`];
//! the `*64` aliases below fix `f64`, the working precision of the CLI and
//! of every pinned tolerance.

// Validations are written as negated comparisons (`!(x > 0)`) so NaN fails
// them too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conditions;
pub mod model;
pub mod oracle;
pub mod response;
pub mod scalar;
pub mod steady_state;

pub use scalar::Real;

pub type SystemParams64 = model::SystemParams<f64>;
pub type ProbeSpec64 = model::ProbeSpec<f64>;
pub type SteadyState64 = model::SteadyState<f64>;
pub type LinearizedSystem64 = model::LinearizedSystem<f64>;
pub type GeneralLinearizedSystem64 = model::GeneralLinearizedSystem<f64>;
pub type ResponseAmplitudes64 = response::ResponseAmplitudes<f64>;
pub type ScatteringPoint64 = response::ScatteringPoint<f64>;
pub type ConditionSet64 = conditions::ConditionSet<f64>;
pub type TimeSeries64 = oracle::TimeSeries<f64>;
