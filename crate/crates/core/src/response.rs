//! Closed-form frequency-domain response of the symmetric linearized system:
//! intracavity amplitudes, input-output fields, transmission coefficients,
//! spectrum sweeps, and a full-width-at-half-maximum metric.
//!
//! With the harmonic ansatz `ds = ds_+ e^{-ixt}` (the counter-rotating
//! component vanishes identically in this model) the three coupled modes
//! solve to rational functions of the shifted decays `gamma_x = gamma - 2ix`
//! and `kappa_x = kappa - 2ix`, all sharing the denominator
//!
//! ```text
//! D(x) = 8 G^2 kappa_x + (4 J^2 + kappa_x^2) gamma_x + 16i G^2 J cos(theta)
//! ```
//!
//! Port normalization is fixed to `eps_in = eps / sqrt(kappa)`, so the
//! transmission magnitudes are directly comparable between the two
//! directions and bounded by one (no gain in the beam-splitter regime).

use num_complex::Complex;
use thiserror::Error;

use crate::model::{LinearizedSystem, ProbeSpec};
use crate::scalar::{real, Real};

/// Squared-magnitude threshold below which the shared denominator `D(x)` is
/// treated as singular.
pub const SINGULAR_DENOM_NORM_SQR: f64 = 1e-30;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResponseError {
    /// `|D(x)|^2` fell below [`SINGULAR_DENOM_NORM_SQR`]; the response is
    /// undefined rather than silently infinite.
    #[error("response denominator is singular at x = {x} (|D|^2 = {norm_sqr:e})")]
    SingularDenominator { x: f64, norm_sqr: f64 },
    /// Sweep grid is not a valid ascending grid of at least two points.
    #[error("bad sweep grid: x_min {x_min} must be < x_max {x_max} and n_points {n_points} >= 2")]
    BadGrid {
        x_min: f64,
        x_max: f64,
        n_points: usize,
    },
    /// Half maximum is not bracketed inside the swept grid.
    #[error("half maximum not bracketed inside the swept grid")]
    NotFound,
}

/// Transmission direction through the device.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Left port in, right port out.
    LeftToRight,
    /// Right port in, left port out.
    RightToLeft,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::LeftToRight => Direction::RightToLeft,
            Direction::RightToLeft => Direction::LeftToRight,
        }
    }
}

/// Harmonic response amplitudes at one probe detuning. Only the `e^{-ixt}`
/// components exist; the counter-rotating ones vanish identically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseAmplitudes<T: Real> {
    pub b_plus: Complex<T>,
    pub c1_plus: Complex<T>,
    pub c2_plus: Complex<T>,
}

/// Complex forward/backward transmission coefficients and their magnitudes
/// at one probe detuning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringPoint<T: Real> {
    pub x: T,
    pub t_lr: Complex<T>,
    pub t_rl: Complex<T>,
    pub t_lr_mag: T,
    pub t_rl_mag: T,
}

impl<T: Real> ScatteringPoint<T> {
    pub fn amplitude(&self, direction: Direction) -> Complex<T> {
        match direction {
            Direction::LeftToRight => self.t_lr,
            Direction::RightToLeft => self.t_rl,
        }
    }

    pub fn transmission(&self, direction: Direction) -> T {
        match direction {
            Direction::LeftToRight => self.t_lr_mag,
            Direction::RightToLeft => self.t_rl_mag,
        }
    }
}

/// Shifted decay rates and the shared denominator at detuning `x`.
fn denominator<T: Real>(lin: &LinearizedSystem<T>, x: T) -> (Complex<T>, Complex<T>, Complex<T>) {
    let two = real::<T>(2.0);
    let gamma_x = Complex::new(lin.gamma, -two * x);
    let kappa_x = Complex::new(lin.kappa, -two * x);
    let g2 = lin.g * lin.g;
    let j = lin.tunneling;
    let d = kappa_x.scale(real::<T>(8.0) * g2)
        + gamma_x * (kappa_x * kappa_x + Complex::new(real::<T>(4.0) * j * j, T::zero()))
        + Complex::new(T::zero(), real::<T>(16.0) * g2 * j * lin.theta.cos());
    (gamma_x, kappa_x, d)
}

fn check_denominator<T: Real>(d: Complex<T>, x: T) -> Result<(), ResponseError> {
    if d.norm_sqr() <= real::<T>(SINGULAR_DENOM_NORM_SQR) {
        return Err(ResponseError::SingularDenominator {
            x: x.to_f64().unwrap_or(f64::NAN),
            norm_sqr: d.norm_sqr().to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Closed-form harmonic response of the three modes to the probe drive.
pub fn response_amplitudes<T: Real>(
    lin: &LinearizedSystem<T>,
    probe: &ProbeSpec<T>,
) -> Result<ResponseAmplitudes<T>, ResponseError> {
    let (gamma_x, kappa_x, d) = denominator(lin, probe.x);
    check_denominator(d, probe.x)?;

    let i = Complex::<T>::i();
    let g = lin.g;
    let g2 = g * g;
    let j = Complex::new(lin.tunneling, T::zero());
    let e_pos = Complex::from_polar(T::one(), lin.theta);
    let e_neg = e_pos.conj();
    let (el, er) = (probe.eps_left, probe.eps_right);

    let two = real::<T>(2.0);
    let four = real::<T>(4.0);
    let eight = real::<T>(8.0);

    let b_plus = ((i * kappa_x - j.scale(two) * e_neg) * el
        + (j.scale(two) - i * kappa_x * e_neg) * er)
        .scale(four * g)
        / d;
    let common = (gamma_x * kappa_x + Complex::new(four * g2, T::zero())).scale(two);
    let cross_neg = e_neg.scale(eight * g2) - i * j * gamma_x.scale(four);
    let cross_pos = e_pos.scale(eight * g2) - i * j * gamma_x.scale(four);
    let c1_plus = (common * el + cross_neg * er) / d;
    let c2_plus = (common * er + cross_pos * el) / d;

    Ok(ResponseAmplitudes {
        b_plus,
        c1_plus,
        c2_plus,
    })
}

/// Output fields at the two ports, from the input-output relation
/// `eps_out = sqrt(kappa) dc - eps / sqrt(kappa)`.
pub fn output_fields<T: Real>(
    lin: &LinearizedSystem<T>,
    probe: &ProbeSpec<T>,
) -> Result<(Complex<T>, Complex<T>), ResponseError> {
    let amps = response_amplitudes(lin, probe)?;
    let sqrt_kappa = lin.kappa.sqrt();
    let out_l = amps.c1_plus.scale(sqrt_kappa) - probe.eps_left.unscale(sqrt_kappa);
    let out_r = amps.c2_plus.scale(sqrt_kappa) - probe.eps_right.unscale(sqrt_kappa);
    Ok((out_l, out_r))
}

/// Forward and backward transmission coefficients at one detuning.
pub fn scattering_point<T: Real>(
    lin: &LinearizedSystem<T>,
    x: T,
) -> Result<ScatteringPoint<T>, ResponseError> {
    let (gamma_x, _, d) = denominator(lin, x);
    check_denominator(d, x)?;

    let i = Complex::<T>::i();
    let two_g2 = real::<T>(2.0) * lin.g * lin.g;
    let j = Complex::new(lin.tunneling, T::zero());
    let e_pos = Complex::from_polar(T::one(), lin.theta);
    let four_kappa = real::<T>(4.0) * lin.kappa;

    let t_lr = (e_pos.scale(two_g2) - i * j * gamma_x).scale(four_kappa) / d;
    let t_rl = (e_pos.conj().scale(two_g2) - i * j * gamma_x).scale(four_kappa) / d;

    Ok(ScatteringPoint {
        x,
        t_lr,
        t_rl,
        t_lr_mag: t_lr.norm(),
        t_rl_mag: t_rl.norm(),
    })
}

/// Transmission spectra on a uniform inclusive grid, detuning-ascending.
/// Every point is computed independently of the others.
pub fn sweep<T: Real>(
    lin: &LinearizedSystem<T>,
    x_min: T,
    x_max: T,
    n_points: usize,
) -> Result<Vec<ScatteringPoint<T>>, ResponseError> {
    if !(x_min < x_max) || n_points < 2 {
        return Err(ResponseError::BadGrid {
            x_min: x_min.to_f64().unwrap_or(f64::NAN),
            x_max: x_max.to_f64().unwrap_or(f64::NAN),
            n_points,
        });
    }
    let step = (x_max - x_min) / real::<T>((n_points - 1) as f64);
    (0..n_points)
        .map(|k| {
            let x = if k == n_points - 1 {
                x_max
            } else {
                x_min + step * real::<T>(k as f64)
            };
            scattering_point(lin, x)
        })
        .collect()
}

/// Linear-interpolated full width at half maximum of the selected
/// transmission curve. Requires the half-maximum level to be crossed on
/// both sides of the (unique) peak inside the grid.
pub fn fwhm<T: Real>(
    points: &[ScatteringPoint<T>],
    direction: Direction,
) -> Result<T, ResponseError> {
    if points.len() < 3 {
        return Err(ResponseError::NotFound);
    }
    let mag = |p: &ScatteringPoint<T>| p.transmission(direction);
    let (peak_idx, peak) = points.iter().enumerate().map(|(k, p)| (k, mag(p))).fold(
        (0, T::neg_infinity()),
        |acc, cur| {
            if cur.1 > acc.1 {
                cur
            } else {
                acc
            }
        },
    );
    if !(peak > T::zero()) {
        return Err(ResponseError::NotFound);
    }
    let half = peak * real::<T>(0.5);

    let interp = |inside: &ScatteringPoint<T>, outside: &ScatteringPoint<T>| {
        let (ti, to) = (mag(inside), mag(outside));
        inside.x + (half - ti) * (outside.x - inside.x) / (to - ti)
    };

    let left = (0..peak_idx)
        .rev()
        .find(|&k| mag(&points[k]) < half)
        .map(|k| interp(&points[k + 1], &points[k]));
    let right = (peak_idx + 1..points.len())
        .find(|&k| mag(&points[k]) < half)
        .map(|k| interp(&points[k - 1], &points[k]));

    match (left, right) {
        (Some(l), Some(r)) => Ok(r - l),
        _ => Err(ResponseError::NotFound),
    }
}
