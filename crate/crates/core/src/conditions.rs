//! Analytic conditions for perfect nonreciprocal transmission, the
//! isolation-direction bookkeeping, and a brute-force grid verifier.
//!
//! Setting the backward (blocked) numerator of the transmission pair to zero
//! forces one complex condition on `(x, G^2/J)`; demanding unit forward
//! transmission then pins the tunneling rate to
//!
//! ```text
//! J = -e^{-i theta} (gamma cot(theta) + i kappa) / 2      (block R -> L)
//! J = +e^{+i theta} (gamma cot(theta) - i kappa) / 2      (block L -> R)
//! ```
//!
//! which is real (and can be chosen positive) only on two branches: the
//! phase pinned to `-pi/2` (or `+pi/2` for the reversed direction), where
//! any mechanical decay works, or equal damping rates `kappa = gamma`, where
//! any phase away from `0, pi` works.

use num_complex::Complex;
use thiserror::Error;

use crate::model::{wrap_angle, LinearizedSystem};
use crate::response::{scattering_point, Direction};
use crate::scalar::{real, Real};

/// Absolute tolerance for phase-equality checks (`theta = +-pi/2`, poles).
pub const THETA_MATCH_ATOL: f64 = 1e-12;

/// Relative tolerance for the equal-damping check `kappa = gamma`.
pub const EQUAL_DAMPING_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConditionError {
    /// `cot(theta)` is undefined at multiples of pi.
    #[error("theta = {theta} is a multiple of pi; no nonreciprocal condition exists there")]
    ThetaDegenerate { theta: f64 },
    /// The branch does not apply at this phase.
    #[error("branch {branch:?} does not apply at theta = {theta}")]
    InvalidBranch { branch: Branch, theta: f64 },
}

/// Which of the two analytic solution families a condition belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Phase pinned to `+-pi/2`; no restriction on the mechanical decay.
    ThetaHalfPi,
    /// Equal damping `kappa = gamma`; any phase away from `0, pi`.
    EqualDamping,
}

/// Sign branch of the tunneling-rate condition: `Upper` targets isolation
/// passing left-to-right (blocked right-to-left), `Lower` the reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignBranch {
    Upper,
    Lower,
}

/// One perfect-nonreciprocity solution: the detuning and couplings at which
/// the transmission pair reaches exactly (1, 0) or (0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionSet<T: Real> {
    /// Probe detuning of the perfect point.
    pub x_star: T,
    /// Required tunneling rate.
    pub j_star: T,
    /// Required optomechanical coupling.
    pub g_star: T,
    /// Which direction passes.
    pub direction: Direction,
    pub branch: Branch,
}

fn near<T: Real>(a: T, b: T, atol: T) -> bool {
    (a - b).abs() <= atol
}

/// Tunneling rate required for perfect nonreciprocity at the given phase, as
/// a complex number. A physical solution exists only where the imaginary
/// part vanishes and the real part is positive.
pub fn required_coupling_j<T: Real>(
    kappa: T,
    gamma: T,
    theta: T,
    sign: SignBranch,
) -> Result<Complex<T>, ConditionError> {
    let theta = wrap_angle(theta);
    if theta.sin().abs() <= real::<T>(THETA_MATCH_ATOL) {
        return Err(ConditionError::ThetaDegenerate {
            theta: theta.to_f64().unwrap_or(f64::NAN),
        });
    }
    let cot = theta.cos() / theta.sin();
    let half = real::<T>(0.5);
    let j = match sign {
        SignBranch::Upper => {
            -Complex::from_polar(T::one(), -theta) * Complex::new(gamma * cot, kappa).scale(half)
        }
        SignBranch::Lower => {
            Complex::from_polar(T::one(), theta) * Complex::new(gamma * cot, -kappa).scale(half)
        }
    };
    Ok(j)
}

/// Analytic perfect-nonreciprocity solution for the given decay rates and
/// phase, or `None` when neither branch applies.
///
/// When both branches apply (`kappa = gamma` and `theta = +-pi/2`) the two
/// formulas coincide; the result is reported as [`Branch::ThetaHalfPi`].
pub fn perfect_conditions<T: Real>(kappa: T, gamma: T, theta: T) -> Option<ConditionSet<T>> {
    if !(kappa > T::zero()) || !(gamma > T::zero()) {
        return None;
    }
    let theta = wrap_angle(theta);
    let atol = real::<T>(THETA_MATCH_ATOL);
    let half = real::<T>(0.5);

    if near(theta, -T::FRAC_PI_2(), atol) || near(theta, T::FRAC_PI_2(), atol) {
        let direction = if theta < T::zero() {
            Direction::LeftToRight
        } else {
            Direction::RightToLeft
        };
        return Some(ConditionSet {
            x_star: T::zero(),
            j_star: half * kappa,
            g_star: half * (kappa * gamma).sqrt(),
            direction,
            branch: Branch::ThetaHalfPi,
        });
    }

    let equal_damping = (kappa - gamma).abs() <= real::<T>(EQUAL_DAMPING_RTOL) * kappa;
    let degenerate = theta.sin().abs() <= atol;
    if equal_damping && !degenerate {
        let s = if theta > T::zero() {
            T::one()
        } else {
            -T::one()
        };
        let x_star = s * half * gamma * theta.cos() / theta.sin();
        let jg = s * half * gamma / theta.sin();
        let direction = if theta > T::zero() {
            Direction::RightToLeft
        } else {
            Direction::LeftToRight
        };
        return Some(ConditionSet {
            x_star,
            j_star: jg,
            g_star: jg,
            direction,
            branch: Branch::EqualDamping,
        });
    }

    None
}

/// Which direction passes at the perfect point of the given branch.
pub fn isolation_direction<T: Real>(theta: T, branch: Branch) -> Result<Direction, ConditionError> {
    let theta = wrap_angle(theta);
    let atol = real::<T>(THETA_MATCH_ATOL);
    let invalid = || ConditionError::InvalidBranch {
        branch,
        theta: theta.to_f64().unwrap_or(f64::NAN),
    };
    match branch {
        Branch::ThetaHalfPi => {
            if near(theta, -T::FRAC_PI_2(), atol) {
                Ok(Direction::LeftToRight)
            } else if near(theta, T::FRAC_PI_2(), atol) {
                Ok(Direction::RightToLeft)
            } else {
                Err(invalid())
            }
        }
        Branch::EqualDamping => {
            if theta.sin().abs() <= atol {
                Err(invalid())
            } else if theta > T::zero() {
                Ok(Direction::RightToLeft)
            } else {
                Ok(Direction::LeftToRight)
            }
        }
    }
}

/// Outcome of the brute-force grid search around an analytic condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridReport<T: Real> {
    /// Grid minimizer of `T_blocked + (1 - T_passed)`.
    pub best_j: T,
    pub best_g: T,
    pub best_x: T,
    /// Objective value at the minimizer.
    pub best_objective: T,
    /// Grid spacing per axis.
    pub step_j: T,
    pub step_g: T,
    pub step_x: T,
    /// Distance from the minimizer to the analytic `(J*, G*, x*)`.
    pub offset_j: T,
    pub offset_g: T,
    pub offset_x: T,
}

impl<T: Real> GridReport<T> {
    /// True when the grid minimizer agrees with the analytic optimum to
    /// within one grid step on every axis.
    pub fn within_one_step(&self) -> bool {
        self.offset_j <= self.step_j && self.offset_g <= self.step_g && self.offset_x <= self.step_x
    }
}

/// Number of grid points per axis in [`verify_condition_by_grid`].
pub const GRID_POINTS_PER_AXIS: usize = 41;

/// Independent confirmation of an analytic condition: scans
/// `J in [0.2 J*, 2 J*]`, `G in [0.2 G*, 2 G*]`, `x in [x* - 2 kappa,
/// x* + 2 kappa]` and locates the minimizer of
/// `T_blocked + (1 - T_passed)`, which must land within one grid step of
/// the analytic point.
pub fn verify_condition_by_grid<T: Real>(
    kappa: T,
    gamma: T,
    theta: T,
    cond: &ConditionSet<T>,
) -> GridReport<T> {
    let n = GRID_POINTS_PER_AXIS;
    let steps = real::<T>((n - 1) as f64);
    let lo = real::<T>(0.2);
    let hi = real::<T>(2.0);
    let two = real::<T>(2.0);

    let j_lo = lo * cond.j_star;
    let g_lo = lo * cond.g_star;
    let x_lo = cond.x_star - two * kappa;
    let step_j = (hi * cond.j_star - j_lo) / steps;
    let step_g = (hi * cond.g_star - g_lo) / steps;
    let step_x = (two * kappa + two * kappa) / steps;

    let passed = cond.direction;
    let blocked = cond.direction.reversed();

    let mut best = (T::infinity(), T::zero(), T::zero(), T::zero());
    for kj in 0..n {
        let j = j_lo + step_j * real::<T>(kj as f64);
        for kg in 0..n {
            let g = g_lo + step_g * real::<T>(kg as f64);
            let lin = LinearizedSystem {
                g,
                theta: wrap_angle(theta),
                tunneling: j,
                kappa,
                gamma,
            };
            for kx in 0..n {
                let x = x_lo + step_x * real::<T>(kx as f64);
                let Ok(point) = scattering_point(&lin, x) else {
                    continue;
                };
                let objective =
                    point.transmission(blocked) + (T::one() - point.transmission(passed));
                if objective < best.0 {
                    best = (objective, j, g, x);
                }
            }
        }
    }

    GridReport {
        best_j: best.1,
        best_g: best.2,
        best_x: best.3,
        best_objective: best.0,
        step_j,
        step_g,
        step_x,
        offset_j: (best.1 - cond.j_star).abs(),
        offset_g: (best.2 - cond.g_star).abs(),
        offset_x: (best.3 - cond.x_star).abs(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    #[test]
    fn half_pi_phase_needs_half_kappa_tunneling() {
        let j = required_coupling_j(1.0, 0.3, -FRAC_PI_2, SignBranch::Upper).unwrap();
        assert!((j - Complex::new(0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn equal_damping_quarter_pi_lower_branch_is_real_positive() {
        let j = required_coupling_j(1.0, 1.0, FRAC_PI_4, SignBranch::Lower).unwrap();
        let expected = 1.0 / (2.0 * FRAC_PI_4.sin()); // csc(pi/4)/2 = sqrt(2)/2
        assert!((j - Complex::new(expected, 0.0)).norm() < 1e-14);
        assert!((expected - 2.0f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn generic_parameters_leave_a_complex_requirement() {
        let j = required_coupling_j(2.0, 1.0, FRAC_PI_3, SignBranch::Upper).unwrap();
        assert!(j.im.abs() > 0.2, "expected nonzero imaginary part, got {j}");
    }

    #[test]
    fn degenerate_phase_is_rejected() {
        assert!(matches!(
            required_coupling_j(1.0, 1.0, 0.0, SignBranch::Upper),
            Err(ConditionError::ThetaDegenerate { .. })
        ));
        assert!(matches!(
            required_coupling_j(1.0, 1.0, PI, SignBranch::Lower),
            Err(ConditionError::ThetaDegenerate { .. })
        ));
    }

    // The requirement turns real-positive exactly on the two analytic
    // branches and nowhere else.
    #[test]
    fn positive_real_requirement_maps_the_two_branches() {
        let n_ratio = 100;
        let n_theta = 100;
        for i in 0..n_ratio {
            // kappa/gamma from 0.2 to 5, gamma = 1
            let kappa = 0.2 + 4.8 * (i as f64) / ((n_ratio - 1) as f64);
            let gamma = 1.0;
            for k in 0..n_theta {
                let theta = -PI + 2.0 * PI * (k as f64 + 0.5) / (n_theta as f64);
                if theta.sin().abs() <= 1e-12 {
                    continue;
                }
                for sign in [SignBranch::Upper, SignBranch::Lower] {
                    let j = required_coupling_j(kappa, gamma, theta, sign).unwrap();
                    let positive_real = j.im.abs() <= 1e-10 * j.norm() && j.re > 0.0;
                    let expected = match sign {
                        SignBranch::Upper => {
                            (theta + FRAC_PI_2).abs() <= 1e-9
                                || ((kappa - gamma).abs() <= 1e-9 && theta < 0.0)
                        }
                        SignBranch::Lower => {
                            (theta - FRAC_PI_2).abs() <= 1e-9
                                || ((kappa - gamma).abs() <= 1e-9 && theta > 0.0)
                        }
                    };
                    assert_eq!(
                        positive_real, expected,
                        "kappa {kappa} theta {theta} sign {sign:?} j {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn half_pi_branch_conditions() {
        let cond = perfect_conditions(1.0, 0.01, -FRAC_PI_2).unwrap();
        assert_eq!(cond.branch, Branch::ThetaHalfPi);
        assert_eq!(cond.direction, Direction::LeftToRight);
        assert_eq!(cond.x_star, 0.0);
        assert!((cond.j_star - 0.5).abs() < 1e-15);
        assert!((cond.g_star - 0.05).abs() < 1e-15);

        let rev = perfect_conditions(1.0, 0.01, FRAC_PI_2).unwrap();
        assert_eq!(rev.direction, Direction::RightToLeft);
        assert_eq!(rev.j_star, cond.j_star);
        assert_eq!(rev.g_star, cond.g_star);
    }

    #[test]
    fn equal_damping_branch_conditions() {
        let cond = perfect_conditions(1.0, 1.0, FRAC_PI_4).unwrap();
        assert_eq!(cond.branch, Branch::EqualDamping);
        assert_eq!(cond.direction, Direction::RightToLeft);
        assert!((cond.x_star - 0.5).abs() < 1e-15);
        let sqrt_half = 2.0f64.sqrt() / 2.0;
        assert!((cond.j_star - sqrt_half).abs() < 1e-15);
        assert!((cond.g_star - sqrt_half).abs() < 1e-15);
    }

    #[test]
    fn no_branch_applies_for_generic_parameters() {
        assert_eq!(perfect_conditions(2.0, 1.0, FRAC_PI_3), None);
        // degenerate phases have no solution even at equal damping
        assert_eq!(perfect_conditions(1.0, 1.0, 0.0), None);
        assert_eq!(perfect_conditions(1.0, 1.0, PI), None);
    }

    #[test]
    fn both_branches_coincide_at_the_overlap() {
        let cond = perfect_conditions(1.0, 1.0, -FRAC_PI_2).unwrap();
        assert_eq!(cond.branch, Branch::ThetaHalfPi);
        assert!((cond.j_star - 0.5).abs() < 1e-15);
        assert!((cond.g_star - 0.5).abs() < 1e-15);
        assert_eq!(cond.x_star, 0.0);
    }

    #[test]
    fn direction_bookkeeping() {
        assert_eq!(
            isolation_direction(-FRAC_PI_2, Branch::ThetaHalfPi).unwrap(),
            Direction::LeftToRight
        );
        assert_eq!(
            isolation_direction(3.0 * FRAC_PI_4, Branch::EqualDamping).unwrap(),
            Direction::RightToLeft
        );
        assert_eq!(
            isolation_direction(-FRAC_PI_4, Branch::EqualDamping).unwrap(),
            Direction::LeftToRight
        );
        assert!(matches!(
            isolation_direction(FRAC_PI_3, Branch::ThetaHalfPi),
            Err(ConditionError::InvalidBranch { .. })
        ));
        assert!(matches!(
            isolation_direction(0.0, Branch::EqualDamping),
            Err(ConditionError::InvalidBranch { .. })
        ));
    }

    #[test]
    fn perfect_points_reach_the_unit_zero_pair() {
        for (kappa, gamma, theta) in [
            (1.0, 2.0, -FRAC_PI_2),
            (1.0, 1.0, -FRAC_PI_2),
            (1.0, 0.2, -FRAC_PI_2),
            (1.0, 0.01, -FRAC_PI_2),
            (1.0, 1.0, FRAC_PI_4),
            (1.0, 1.0, -3.0 * FRAC_PI_4),
            (1.0, 1.0, FRAC_PI_2),
        ] {
            let cond = perfect_conditions(kappa, gamma, theta).unwrap();
            let lin = LinearizedSystem::new(cond.g_star, theta, cond.j_star, kappa, gamma).unwrap();
            let point = scattering_point(&lin, cond.x_star).unwrap();
            let passed = point.transmission(cond.direction);
            let blocked = point.transmission(cond.direction.reversed());
            assert!(
                (passed - 1.0).abs() < 1e-9,
                "theta {theta}: passed {passed}"
            );
            assert!(blocked < 1e-9, "theta {theta}: blocked {blocked}");
        }
    }

    #[test]
    fn minimum_coupling_sits_at_half_pi() {
        let g_at = |theta: f64| perfect_conditions(1.0, 1.0, theta).unwrap().g_star;
        let g_min = g_at(FRAC_PI_2);
        assert!((g_min - 0.5).abs() < 1e-15);
        assert!((g_at(-FRAC_PI_2) - 0.5).abs() < 1e-15);
        for k in 1..200 {
            let theta = -PI + (k as f64) * PI / 100.0;
            if theta.sin().abs() < 1e-9 {
                continue;
            }
            assert!(g_at(theta) >= g_min - 1e-12, "theta {theta}");
        }
    }

    #[test]
    fn grid_verifier_confirms_the_analytic_points() {
        for (kappa, gamma, theta) in [
            (1.0, 1.0, -FRAC_PI_2),
            (1.0, 0.01, -FRAC_PI_2),
            (1.0, 1.0, FRAC_PI_4),
        ] {
            let cond = perfect_conditions(kappa, gamma, theta).unwrap();
            let report = verify_condition_by_grid(kappa, gamma, theta, &cond);
            assert!(
                report.within_one_step(),
                "theta {theta}: minimizer ({}, {}, {}) vs analytic ({}, {}, {})",
                report.best_j,
                report.best_g,
                report.best_x,
                cond.j_star,
                cond.g_star,
                cond.x_star
            );
        }
    }
}
