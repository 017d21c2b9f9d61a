//! Self-consistent steady state of the driven system, its verification, and
//! its inversion (drive amplitudes that realize a target coupling gauge).
//!
//! The steady state couples back into itself only through the real scalar
//! `u = b + b*` entering the effective detunings, so the solver is a damped
//! one-dimensional fixed-point iteration on `u` seeded at `u = 0`. Multiple
//! roots (static bistability) are not tracked: if the seeded branch does not
//! converge the solver reports failure rather than hunting for another one.

use num_complex::Complex;
use thiserror::Error;

use crate::model::{SteadyState, SystemParams};
use crate::scalar::{real, Real};

/// Default damping factor of the fixed-point update.
pub const DEFAULT_DAMPING: f64 = 0.5;

/// Default convergence tolerance: `|u_next - u| <= tol * (1 + |u_next|)`.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Default iteration cap.
pub const DEFAULT_MAX_ITERS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SteadyStateError {
    /// The damped iteration hit its cap; likely a bistable or unstable
    /// regime. `last_step` is the final update magnitude `|u_next - u|`.
    #[error(
        "steady state did not converge after {iterations} iterations (last step {last_step:e})"
    )]
    NoConvergence { iterations: usize, last_step: f64 },
    /// Target-coupling inversion needs a positive single-photon coupling.
    #[error("drives_for_target requires g0 > 0")]
    ZeroG0,
}

/// Fixed-point solver knobs. Defaults are the pinned values used everywhere
/// in this crate; `f32` callers will want a looser `tol`.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions<T: Real> {
    pub damping: T,
    pub tol: T,
    pub max_iters: usize,
}

impl<T: Real> Default for SolveOptions<T> {
    fn default() -> Self {
        Self {
            damping: real(DEFAULT_DAMPING),
            tol: real(DEFAULT_TOL),
            max_iters: DEFAULT_MAX_ITERS,
        }
    }
}

/// Cavity steady amplitudes for a given static displacement scalar `u`.
fn cavity_steady<T: Real>(p: &SystemParams<T>, u: T) -> (Complex<T>, Complex<T>, T, T) {
    let delta1 = p.delta_c - p.g0 * u;
    let delta2 = p.delta_c + p.g0 * u;
    let half = real::<T>(0.5);
    let a1 = Complex::new(half * p.kappa1, delta1);
    let a2 = Complex::new(half * p.kappa2, delta2);
    let i = Complex::<T>::i();
    let jj = Complex::new(p.tunneling, T::zero());
    let den = jj * jj + a1 * a2;
    let c1 = (a2 * p.eps_c - i * jj * p.eps_d) / den;
    let c2 = (a1 * p.eps_d - i * jj * p.eps_c) / den;
    (c1, c2, delta1, delta2)
}

/// Mechanical steady amplitude from the photon-number imbalance
/// `w = |c2|^2 - |c1|^2`.
fn mech_steady<T: Real>(p: &SystemParams<T>, w: T) -> Complex<T> {
    let half = real::<T>(0.5);
    -Complex::<T>::i() * Complex::new(p.g0 * w, T::zero()) / Complex::new(half * p.gamma, p.omega_m)
}

/// The bare fixed-point map `u -> u_raw(u)` (before damping).
fn displacement_map<T: Real>(p: &SystemParams<T>, u: T) -> T {
    let (c1, c2, _, _) = cavity_steady(p, u);
    let w = c2.norm_sqr() - c1.norm_sqr();
    let half = real::<T>(0.5);
    let two = real::<T>(2.0);
    // 2 * Re(b) with b = -i g0 w / (gamma/2 + i omega_m)
    -two * p.g0 * p.omega_m * w / ((half * p.gamma) * (half * p.gamma) + p.omega_m * p.omega_m)
}

/// Solves the self-consistent steady state with the default options.
pub fn solve_steady_state<T: Real>(
    params: &SystemParams<T>,
) -> Result<SteadyState<T>, SteadyStateError> {
    solve_steady_state_with(params, &SolveOptions::default()).map(|(state, _)| state)
}

/// Solves the steady state with explicit options, also reporting the number
/// of fixed-point iterations used.
pub fn solve_steady_state_with<T: Real>(
    params: &SystemParams<T>,
    opts: &SolveOptions<T>,
) -> Result<(SteadyState<T>, usize), SteadyStateError> {
    let one = T::one();
    let mut u = T::zero();
    let mut last_step = T::infinity();

    for iter in 1..=opts.max_iters {
        let raw = displacement_map(params, u);
        let u_next = (one - opts.damping) * u + opts.damping * raw;
        if !u_next.is_finite() {
            return Err(SteadyStateError::NoConvergence {
                iterations: iter,
                last_step: f64::NAN,
            });
        }
        last_step = (u_next - u).abs();
        u = u_next;
        if last_step <= opts.tol * (one + u.abs()) {
            let (c1, c2, delta1, delta2) = cavity_steady(params, u);
            let b = mech_steady(params, c2.norm_sqr() - c1.norm_sqr());
            return Ok((
                SteadyState {
                    b,
                    c1,
                    c2,
                    delta1,
                    delta2,
                },
                iter,
            ));
        }
    }

    Err(SteadyStateError::NoConvergence {
        iterations: opts.max_iters,
        last_step: last_step.to_f64().unwrap_or(f64::NAN),
    })
}

/// Maximum absolute mismatch of the three steady-state relations, with the
/// effective detunings recomputed from the stored mechanical amplitude.
///
/// Zero (up to rounding) iff `steady` actually solves the self-consistent
/// equations for `params`; this is the independent check on the solver.
pub fn steady_residual<T: Real>(params: &SystemParams<T>, steady: &SteadyState<T>) -> T {
    let u = steady.b.re + steady.b.re; // b + b*
    let (c1_ref, c2_ref, _, _) = cavity_steady(params, u);
    let b_ref = mech_steady(params, steady.c2.norm_sqr() - steady.c1.norm_sqr());

    let r1 = (steady.c1 - c1_ref).norm();
    let r2 = (steady.c2 - c2_ref).norm();
    let r3 = (steady.b - b_ref).norm();
    r1.max(r2).max(r3)
}

/// Inverts the steady-state relations: drive amplitudes that realize the
/// target gauge `c1 = G/g0` (real positive), `c2 = (G/g0) e^{i theta}` at the
/// given effective detunings.
///
/// The inversion is exactly self-consistent when `delta1 = delta2` (the
/// equal-magnitude target makes the static displacement vanish).
#[allow(clippy::too_many_arguments)]
pub fn drives_for_target<T: Real>(
    g: T,
    theta: T,
    tunneling: T,
    kappa1: T,
    kappa2: T,
    g0: T,
    delta1: T,
    delta2: T,
) -> Result<(Complex<T>, Complex<T>), SteadyStateError> {
    if !(g0 > T::zero()) {
        return Err(SteadyStateError::ZeroG0);
    }
    let half = real::<T>(0.5);
    let c1 = Complex::new(g / g0, T::zero());
    let c2 = Complex::from_polar(g / g0, theta);
    let i = Complex::<T>::i();
    let jj = Complex::new(tunneling, T::zero());
    let eps_c = Complex::new(half * kappa1, delta1) * c1 + i * jj * c2;
    let eps_d = Complex::new(half * kappa2, delta2) * c2 + i * jj * c1;
    Ok((eps_c, eps_d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::linearized_from_steady;
    use std::f64::consts::FRAC_PI_2;

    fn c64(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn driven_params() -> SystemParams<f64> {
        SystemParams::new(
            1.0,
            1.0,
            0.01,
            100.0,
            1e-3,
            0.5,
            100.0,
            c64(200.0, 0.0),
            c64(0.0, 200.0),
        )
        .unwrap()
    }

    #[test]
    fn decoupled_mechanics_solves_in_closed_form() {
        let mut p = driven_params();
        p.g0 = 0.0;
        let (state, iters) = solve_steady_state_with(&p, &SolveOptions::default()).unwrap();
        assert_eq!(iters, 1);
        assert_eq!(state.b, c64(0.0, 0.0));
        // direct evaluation at delta1 = delta2 = delta_c
        let (c1, c2, _, _) = cavity_steady(&p, 0.0);
        assert_eq!(state.c1, c1);
        assert_eq!(state.c2, c2);
        assert!(steady_residual(&p, &state) < 1e-12);
    }

    #[test]
    fn undriven_system_is_empty() {
        let mut p = driven_params();
        p.eps_c = c64(0.0, 0.0);
        p.eps_d = c64(0.0, 0.0);
        let state = solve_steady_state(&p).unwrap();
        assert_eq!(state.b.norm(), 0.0);
        assert_eq!(state.c1.norm(), 0.0);
        assert_eq!(state.c2.norm(), 0.0);
    }

    #[test]
    fn driven_solution_passes_the_residual_oracle() {
        let p = driven_params();
        let state = solve_steady_state(&p).unwrap();
        assert!(steady_residual(&p, &state) < 1e-10);
        // the definition delta1 + delta2 = 2 delta_c survives rounding
        assert!(
            (state.delta1 + state.delta2 - 2.0 * p.delta_c).abs()
                <= 4.0 * f64::EPSILON * p.delta_c.abs()
        );
    }

    #[test]
    fn residual_detects_a_perturbed_solution() {
        let p = driven_params();
        let mut state = solve_steady_state(&p).unwrap();
        state.c1 += c64(1e-6, 0.0);
        let r = steady_residual(&p, &state);
        assert!((1e-8..=1e-4).contains(&r), "residual {r:e} out of range");
    }

    #[test]
    fn residual_of_zero_state_scales_with_drive() {
        // small detuning so the would-be amplitudes are on the drive scale
        let p = SystemParams::new(
            1.0,
            1.0,
            0.5,
            2.0,
            1e-3,
            0.3,
            0.3,
            c64(2.0, 0.0),
            c64(0.0, 1.0),
        )
        .unwrap();
        let zero = SteadyState {
            b: c64(0.0, 0.0),
            c1: c64(0.0, 0.0),
            c2: c64(0.0, 0.0),
            delta1: p.delta_c,
            delta2: p.delta_c,
        };
        let r = steady_residual(&p, &zero);
        let scale = p.eps_c.norm().max(p.eps_d.norm());
        assert!(
            r > 0.05 * scale && r < 20.0 * scale,
            "residual {r} vs scale {scale}"
        );
    }

    #[test]
    fn damping_factor_does_not_move_the_limit() {
        let p = driven_params();
        let mut states = Vec::new();
        for damping in [0.3, 0.5, 0.7] {
            let opts = SolveOptions {
                damping,
                ..SolveOptions::default()
            };
            let (state, _) = solve_steady_state_with(&p, &opts).unwrap();
            states.push(state);
        }
        for s in &states[1..] {
            assert!((s.b - states[0].b).norm() < 1e-10);
            assert!((s.c1 - states[0].c1).norm() < 1e-10);
            assert!((s.c2 - states[0].c2).norm() < 1e-10);
        }
    }

    #[test]
    fn single_mode_drive_inversion() {
        // J = 0, delta1 = 0, kappa1 = 1, target c1 = 10: the cavity-1 drive
        // is kappa1/2 * c1 = 5 regardless of the other port
        let (eps_c, _) =
            drives_for_target(10.0 * 0.01, 0.0, 0.0, 1.0, 1.0, 0.01, 0.0, 0.0).unwrap();
        assert!((eps_c - c64(5.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_target_means_zero_drives() {
        let (eps_c, eps_d) =
            drives_for_target(0.0, 1.0, 0.5, 1.0, 1.0, 1e-3, 100.0, 100.0).unwrap();
        assert_eq!(eps_c.norm(), 0.0);
        assert_eq!(eps_d.norm(), 0.0);
    }

    #[test]
    fn zero_g0_is_rejected() {
        assert_eq!(
            drives_for_target(0.05, 0.0, 0.5, 1.0, 1.0, 0.0, 100.0, 100.0).unwrap_err(),
            SteadyStateError::ZeroG0
        );
    }

    #[test]
    fn target_gauge_round_trips_through_the_solver() {
        let (g_target, theta_target) = (0.05, -FRAC_PI_2);
        let (tunneling, kappa, g0, delta) = (0.5, 1.0, 1e-3, 100.0);
        let (eps_c, eps_d) = drives_for_target(
            g_target,
            theta_target,
            tunneling,
            kappa,
            kappa,
            g0,
            delta,
            delta,
        )
        .unwrap();
        let p = SystemParams::new(
            kappa, kappa, 0.01, delta, g0, tunneling, delta, eps_c, eps_d,
        )
        .unwrap();
        let state = solve_steady_state(&p).unwrap();
        let lin = linearized_from_steady(&p, &state).unwrap();
        assert!((lin.g - g_target).abs() <= 1e-6 * g_target);
        assert!((lin.theta - theta_target).abs() <= 1e-6);
        assert!(steady_residual(&p, &state) < 1e-10);
    }

    proptest::proptest! {
        // Inverting the steady state at equal effective detunings is exactly
        // self-consistent, so any target gauge round-trips through the solver.
        #[test]
        fn any_equal_detuning_target_round_trips(
            g_target in 1e-3f64..0.5,
            theta_target in -3.1f64..3.1,
            tunneling in 0.0f64..2.0,
            delta in 20.0f64..200.0,
            g0_exp in -4.0f64..-2.0,
        ) {
            let (kappa, gamma) = (1.0, 0.05);
            let g0 = 10f64.powf(g0_exp);
            let (eps_c, eps_d) = drives_for_target(
                g_target, theta_target, tunneling, kappa, kappa, g0, delta, delta,
            )
            .unwrap();
            let p = SystemParams::new(
                kappa, kappa, gamma, delta, g0, tunneling, delta, eps_c, eps_d,
            )
            .unwrap();
            let state = solve_steady_state(&p).unwrap();
            let lin = linearized_from_steady(&p, &state).unwrap();
            proptest::prop_assert!((lin.g - g_target).abs() <= 1e-6 * g_target);
            proptest::prop_assert!(
                crate::model::wrap_angle(lin.theta - theta_target).abs() <= 1e-6
            );
            proptest::prop_assert!(steady_residual(&p, &state) < 1e-10);
        }
    }
}
