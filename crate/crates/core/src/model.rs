//! Domain types, validation, and the gauge reduction from a raw steady state
//! to the symmetric linearized system.
//!
//! Unit convention: the library is unit-agnostic. Every rate and detuning
//! (`kappa*`, `gamma`, `omega_m`, `delta_c`, probe detuning `x`) carries the
//! same angular-frequency unit and no conversion ever happens here. Phases
//! are radians, stored on the principal branch `(-pi, pi]`.

use num_complex::Complex;
use thiserror::Error;

use crate::scalar::{real, Real};

/// Relative tolerance on the cavity decay match `kappa1 = kappa2` required by
/// [`linearized_from_steady`].
pub const KAPPA_MATCH_RTOL: f64 = 1e-9;

/// Relative tolerance on the effective-coupling match `g0|c1| = g0|c2|`
/// required by [`linearized_from_steady`].
pub const COUPLING_MATCH_RTOL: f64 = 1e-6;

/// Validation and reduction errors for the model types.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    /// A decay rate or the mechanical frequency is zero or negative.
    #[error("rate `{name}` must be positive, got {value}")]
    NonPositiveRate { name: &'static str, value: f64 },
    /// A coupling strength is negative.
    #[error("coupling `{name}` must be nonnegative, got {value}")]
    NegativeCoupling { name: &'static str, value: f64 },
    /// The steady state does not fit the symmetric reduced model; callers
    /// must keep the general description and use the oracle path.
    #[error("asymmetric system: {quantity} mismatch beyond tolerance ({lhs} vs {rhs})")]
    AsymmetricSystem {
        quantity: &'static str,
        lhs: f64,
        rhs: f64,
    },
    /// Cavity-1 steady amplitude vanishes, so no coupling gauge can be fixed.
    #[error("cavity-1 steady amplitude is zero; cannot fix the coupling gauge")]
    ZeroCoupling,
}

/// Full physical parameter set of the driven two-cavity + mechanics model.
///
/// `eps_c` / `eps_d` are the (complex) coupling-drive amplitudes on cavity 1
/// and cavity 2; `delta_c` is the detuning of the cavity resonance from the
/// coupling field. Absolute optical frequencies never appear: only
/// detunings are stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams<T: Real> {
    /// Cavity-1 amplitude decay rate.
    pub kappa1: T,
    /// Cavity-2 amplitude decay rate.
    pub kappa2: T,
    /// Mechanical amplitude decay rate.
    pub gamma: T,
    /// Mechanical frequency.
    pub omega_m: T,
    /// Single-photon optomechanical coupling.
    pub g0: T,
    /// Cavity-cavity tunneling rate J.
    pub tunneling: T,
    /// Coupling-field detuning.
    pub delta_c: T,
    /// Coupling-drive amplitude on cavity 1.
    pub eps_c: Complex<T>,
    /// Coupling-drive amplitude on cavity 2.
    pub eps_d: Complex<T>,
}

impl<T: Real> SystemParams<T> {
    /// Validates and builds a parameter set. Nothing is clamped: any
    /// violated constraint is an error.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        kappa1: T,
        kappa2: T,
        gamma: T,
        omega_m: T,
        g0: T,
        tunneling: T,
        delta_c: T,
        eps_c: Complex<T>,
        eps_d: Complex<T>,
    ) -> Result<Self, ModelError> {
        for (name, value) in [
            ("kappa1", kappa1),
            ("kappa2", kappa2),
            ("gamma", gamma),
            ("omega_m", omega_m),
        ] {
            if !(value > T::zero()) {
                return Err(ModelError::NonPositiveRate {
                    name,
                    value: value.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        for (name, value) in [("g0", g0), ("J", tunneling)] {
            if value < T::zero() {
                return Err(ModelError::NegativeCoupling {
                    name,
                    value: value.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self {
            kappa1,
            kappa2,
            gamma,
            omega_m,
            g0,
            tunneling,
            delta_c,
            eps_c,
            eps_d,
        })
    }
}

/// Probe drive: complex amplitudes injected on the left (cavity 1) and right
/// (cavity 2) ports, at detuning `x` from the mechanical sideband.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeSpec<T: Real> {
    pub eps_left: Complex<T>,
    pub eps_right: Complex<T>,
    /// Probe detuning from the mechanical sideband.
    pub x: T,
}

impl<T: Real> ProbeSpec<T> {
    pub fn new(eps_left: Complex<T>, eps_right: Complex<T>, x: T) -> Self {
        Self {
            eps_left,
            eps_right,
            x,
        }
    }

    /// One-sided drive on the left port.
    pub fn left(eps: Complex<T>, x: T) -> Self {
        Self::new(eps, Complex::new(T::zero(), T::zero()), x)
    }

    /// One-sided drive on the right port.
    pub fn right(eps: Complex<T>, x: T) -> Self {
        Self::new(Complex::new(T::zero(), T::zero()), eps, x)
    }
}

/// Self-consistent mean-field steady state of the driven system.
///
/// `delta1`/`delta2` are the effective cavity detunings shifted by the
/// static mechanical displacement, `delta_c -/+ g0*(b + b*)`; their sum is
/// `2*delta_c` by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState<T: Real> {
    /// Mechanical steady amplitude.
    pub b: Complex<T>,
    /// Cavity-1 steady amplitude.
    pub c1: Complex<T>,
    /// Cavity-2 steady amplitude.
    pub c2: Complex<T>,
    /// Effective detuning of cavity 1.
    pub delta1: T,
    /// Effective detuning of cavity 2.
    pub delta2: T,
}

/// Reduced symmetric model: equal cavity decays, equal effective coupling
/// magnitudes, and a single physical phase between the two couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearizedSystem<T: Real> {
    /// Effective optomechanical coupling magnitude G (common to both arms).
    pub g: T,
    /// Phase difference between the two effective couplings, in `(-pi, pi]`.
    pub theta: T,
    /// Cavity-cavity tunneling rate J.
    pub tunneling: T,
    /// Common cavity decay rate.
    pub kappa: T,
    /// Mechanical decay rate.
    pub gamma: T,
}

impl<T: Real> LinearizedSystem<T> {
    /// Builds a reduced model directly from its parameters, wrapping `theta`
    /// onto the principal branch.
    pub fn new(g: T, theta: T, tunneling: T, kappa: T, gamma: T) -> Result<Self, ModelError> {
        for (name, value) in [("kappa", kappa), ("gamma", gamma)] {
            if !(value > T::zero()) {
                return Err(ModelError::NonPositiveRate {
                    name,
                    value: value.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        for (name, value) in [("G", g), ("J", tunneling)] {
            if value < T::zero() {
                return Err(ModelError::NegativeCoupling {
                    name,
                    value: value.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self {
            g,
            theta: wrap_angle(theta),
            tunneling,
            kappa,
            gamma,
        })
    }

    /// The same system in the general (complex-coupling) description, with
    /// the gauge `G1 = G` real positive and `G2 = G e^{i theta}`.
    pub fn general(&self) -> GeneralLinearizedSystem<T> {
        GeneralLinearizedSystem {
            g1: Complex::new(self.g, T::zero()),
            g2: Complex::from_polar(self.g, self.theta),
            kappa1: self.kappa,
            kappa2: self.kappa,
            gamma: self.gamma,
            tunneling: self.tunneling,
        }
    }
}

/// General linearized model with complex effective couplings and distinct
/// cavity decays. Only the oracle solvers accept it; the closed-form
/// response requires the symmetric reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralLinearizedSystem<T: Real> {
    /// Effective coupling of cavity 1, `g0 * c1`.
    pub g1: Complex<T>,
    /// Effective coupling of cavity 2, `g0 * c2`.
    pub g2: Complex<T>,
    pub kappa1: T,
    pub kappa2: T,
    pub gamma: T,
    /// Cavity-cavity tunneling rate J.
    pub tunneling: T,
}

/// Maps an angle onto the principal branch `(-pi, pi]`.
pub fn wrap_angle<T: Real>(theta: T) -> T {
    let mut a = theta % T::TAU();
    if a > T::PI() {
        a -= T::TAU();
    } else if a <= -T::PI() {
        a += T::TAU();
    }
    a
}

/// Reduces a raw steady state to the symmetric linearized system.
///
/// Gauge: only the relative phase of the two effective couplings is
/// physical, so the global phase is rotated to make `g0*c1` real positive;
/// then `G = g0*|c1|` and `theta = arg(c2) - arg(c1)` on `(-pi, pi]`.
///
/// Fails with [`ModelError::AsymmetricSystem`] when the decays or coupling
/// magnitudes differ beyond tolerance ([`KAPPA_MATCH_RTOL`],
/// [`COUPLING_MATCH_RTOL`]); such systems must stay in the
/// [`GeneralLinearizedSystem`] description.
pub fn linearized_from_steady<T: Real>(
    params: &SystemParams<T>,
    steady: &SteadyState<T>,
) -> Result<LinearizedSystem<T>, ModelError> {
    let to64 = |v: T| v.to_f64().unwrap_or(f64::NAN);

    let dk = (params.kappa1 - params.kappa2).abs();
    if dk > real::<T>(KAPPA_MATCH_RTOL) * params.kappa1.max(params.kappa2) {
        return Err(ModelError::AsymmetricSystem {
            quantity: "cavity decay kappa",
            lhs: to64(params.kappa1),
            rhs: to64(params.kappa2),
        });
    }

    let g1 = params.g0 * steady.c1.norm();
    let g2 = params.g0 * steady.c2.norm();
    if steady.c1.norm() == T::zero() {
        return Err(ModelError::ZeroCoupling);
    }
    if (g1 - g2).abs() > real::<T>(COUPLING_MATCH_RTOL) * g1.max(g2) {
        return Err(ModelError::AsymmetricSystem {
            quantity: "effective coupling G",
            lhs: to64(g1),
            rhs: to64(g2),
        });
    }

    // arg(c2 * conj(c1)) is the relative phase, independent of the global
    // gauge by construction.
    let theta = (steady.c2 * steady.c1.conj()).arg();

    Ok(LinearizedSystem {
        g: g1,
        theta: wrap_angle(theta),
        tunneling: params.tunneling,
        kappa: params.kappa1,
        gamma: params.gamma,
    })
}
