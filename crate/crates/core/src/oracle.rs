//! Independent numerical validators for the closed-form response: a generic
//! frequency-domain linear solve (arbitrary decays and complex couplings),
//! fixed-step RK4 integration of both the sideband-resolved equations and
//! the full time-dependent linearized equations (all counter-rotating terms
//! kept), and two-tone harmonic demodulation of the resulting trajectories.
//!
//! None of these paths share algebra with `response`: the linear solve is
//! Gauss-Jordan elimination with partial pivoting, and the time-domain
//! routes never form the rational closed form at all.

use std::io;

use num_complex::Complex;
use thiserror::Error;

use crate::model::{GeneralLinearizedSystem, ProbeSpec, SteadyState, SystemParams};
use crate::response::ResponseAmplitudes;
use crate::scalar::{real, Real};

/// Infinity-norm condition-number cap for the frequency-domain solve.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Safety factor for the RK4 step against the fastest sideband-resolved
/// rate: `dt <= 0.05 / max(kappa, gamma, G, J, |x|)`.
pub const RWA_STEP_FACTOR: f64 = 0.05;

/// Safety factor for the RK4 step against the mechanical frequency in the
/// full equations: `dt <= 0.02 / omega_m`.
pub const FULL_STEP_FACTOR: f64 = 0.02;

/// Minimum number of trailing samples the demodulator needs.
pub const MIN_DEMOD_SAMPLES: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    /// Frequency-domain system matrix is singular or too ill-conditioned.
    #[error("frequency-domain system matrix is singular (condition estimate {cond:e})")]
    SingularMatrix { cond: f64 },
    /// Integration step does not resolve the fastest rate in the problem.
    #[error("step {dt:e} too large; need dt <= {max_dt:e}")]
    StepTooLarge { dt: f64, max_dt: f64 },
    /// Demodulation window holds fewer samples than the fit needs.
    #[error("demodulation window holds {samples} samples; need at least {min}")]
    WindowTooShort { samples: usize, min: usize },
}

/// Uniformly sampled trajectory of the three fluctuation amplitudes
/// `(dc1, dc2, db)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries<T: Real> {
    pub t0: T,
    pub dt: T,
    pub samples: Vec<[Complex<T>; 3]>,
}

impl<T: Real> TimeSeries<T> {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sample time of index `k`.
    pub fn time_at(&self, k: usize) -> T {
        self.t0 + self.dt * real::<T>(k as f64)
    }

    /// Dumps the trajectory as CSV with header
    /// `t,re_c1,im_c1,re_c2,im_c2,re_b,im_b`.
    pub fn write_csv<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "t,re_c1,im_c1,re_c2,im_c2,re_b,im_b")?;
        for (k, s) in self.samples.iter().enumerate() {
            writeln!(
                w,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                self.time_at(k).to_f64().unwrap_or(f64::NAN),
                s[0].re.to_f64().unwrap_or(f64::NAN),
                s[0].im.to_f64().unwrap_or(f64::NAN),
                s[1].re.to_f64().unwrap_or(f64::NAN),
                s[1].im.to_f64().unwrap_or(f64::NAN),
                s[2].re.to_f64().unwrap_or(f64::NAN),
                s[2].im.to_f64().unwrap_or(f64::NAN),
            )?;
        }
        Ok(())
    }
}

/// Two-tone fit result for one mode: the coefficients of `e^{-ixt}` (plus)
/// and `e^{+ixt}` (minus).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoTone<T: Real> {
    pub plus: Complex<T>,
    pub minus: Complex<T>,
}

/// Gauss-Jordan solve of a 3x3 complex system with partial pivoting.
/// Also inverts the matrix to estimate the infinity-norm condition number.
fn solve3<T: Real>(
    a: &[[Complex<T>; 3]; 3],
    b: &[Complex<T>; 3],
) -> Result<[Complex<T>; 3], OracleError> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut m = [[zero; 7]; 3];
    for r in 0..3 {
        m[r][..3].copy_from_slice(&a[r]);
        m[r][3] = b[r];
        m[r][4 + r] = Complex::new(T::one(), T::zero());
    }

    let row_sum = |row: &[Complex<T>]| row.iter().fold(T::zero(), |acc, v| acc + v.norm());
    let norm_a = a.iter().map(|r| row_sum(r)).fold(T::zero(), T::max);

    for col in 0..3 {
        let pivot_row = (col..3)
            .max_by(|&r1, &r2| {
                m[r1][col]
                    .norm_sqr()
                    .partial_cmp(&m[r2][col].norm_sqr())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        m.swap(col, pivot_row);
        let pivot = m[col][col];
        if pivot.norm_sqr() == T::zero() {
            return Err(OracleError::SingularMatrix {
                cond: f64::INFINITY,
            });
        }
        let pivot_row = m[col];
        for (r, row) in m.iter_mut().enumerate() {
            if r == col {
                continue;
            }
            let factor = row[col] / pivot;
            for (c, entry) in row.iter_mut().enumerate().skip(col) {
                *entry -= factor * pivot_row[c];
            }
        }
    }

    let mut x = [zero; 3];
    let mut inv = [[zero; 3]; 3];
    for r in 0..3 {
        let pivot = m[r][r];
        x[r] = m[r][3] / pivot;
        for (c, entry) in inv[r].iter_mut().enumerate() {
            *entry = m[r][4 + c] / pivot;
        }
    }
    let norm_inv = inv.iter().map(|r| row_sum(r)).fold(T::zero(), T::max);
    let cond = norm_a * norm_inv;
    if !cond.is_finite() || cond > real::<T>(CONDITION_LIMIT) {
        return Err(OracleError::SingularMatrix {
            cond: cond.to_f64().unwrap_or(f64::INFINITY),
        });
    }
    Ok(x)
}

/// Frequency-domain matrix of the sideband-resolved equations for the
/// harmonic ansatz `ds = ds_+ e^{-ixt}`, in the general description.
fn frequency_matrix<T: Real>(sys: &GeneralLinearizedSystem<T>, x: T) -> [[Complex<T>; 3]; 3] {
    let half = real::<T>(0.5);
    let i = Complex::<T>::i();
    let jj = Complex::new(sys.tunneling, T::zero());
    [
        [Complex::new(half * sys.kappa1, -x), i * jj, -i * sys.g1],
        [i * jj, Complex::new(half * sys.kappa2, -x), i * sys.g2],
        [
            -i * sys.g1.conj(),
            i * sys.g2.conj(),
            Complex::new(half * sys.gamma, -x),
        ],
    ]
}

/// Harmonic response of the general linearized system, obtained as a plain
/// 3x3 linear solve instead of the closed form.
pub fn linsolve_response<T: Real>(
    sys: &GeneralLinearizedSystem<T>,
    probe: &ProbeSpec<T>,
) -> Result<ResponseAmplitudes<T>, OracleError> {
    let a = frequency_matrix(sys, probe.x);
    let rhs = [
        probe.eps_left,
        probe.eps_right,
        Complex::new(T::zero(), T::zero()),
    ];
    let x = solve3(&a, &rhs)?;
    Ok(ResponseAmplitudes {
        c1_plus: x[0],
        c2_plus: x[1],
        b_plus: x[2],
    })
}

/// Transmission coefficients of the general system, with each port
/// normalized by its own decay rate: `t = sqrt(kappa1 kappa2) dc / eps`.
/// Reduces to the closed-form pair when the decays are equal.
pub fn general_scattering<T: Real>(
    sys: &GeneralLinearizedSystem<T>,
    x: T,
) -> Result<(Complex<T>, Complex<T>), OracleError> {
    let one = Complex::new(T::one(), T::zero());
    let fwd = linsolve_response(sys, &ProbeSpec::left(one, x))?;
    let bwd = linsolve_response(sys, &ProbeSpec::right(one, x))?;
    let scale = (sys.kappa1 * sys.kappa2).sqrt();
    Ok((fwd.c2_plus.scale(scale), bwd.c1_plus.scale(scale)))
}

fn add3<T: Real>(a: &[Complex<T>; 3], b: &[Complex<T>; 3], factor: T) -> [Complex<T>; 3] {
    [
        a[0] + b[0].scale(factor),
        a[1] + b[1].scale(factor),
        a[2] + b[2].scale(factor),
    ]
}

/// Classic fixed-step RK4 over `n` steps from `y0` at `t0`, recording every
/// state including the initial one.
fn rk4<T: Real, F>(y0: [Complex<T>; 3], t0: T, dt: T, n: usize, f: F) -> Vec<[Complex<T>; 3]>
where
    F: Fn(T, &[Complex<T>; 3]) -> [Complex<T>; 3],
{
    let half = real::<T>(0.5);
    let sixth = real::<T>(1.0 / 6.0);
    let two = real::<T>(2.0);
    let mut out = Vec::with_capacity(n + 1);
    out.push(y0);
    let mut y = y0;
    for k in 0..n {
        let t = t0 + dt * real::<T>(k as f64);
        let k1 = f(t, &y);
        let k2 = f(t + half * dt, &add3(&y, &k1, half * dt));
        let k3 = f(t + half * dt, &add3(&y, &k2, half * dt));
        let k4 = f(t + dt, &add3(&y, &k3, dt));
        for m in 0..3 {
            y[m] += (k1[m] + (k2[m] + k3[m]).scale(two) + k4[m]).scale(sixth * dt);
        }
        out.push(y);
    }
    out
}

fn steps_for<T: Real>(t_end: T, dt: T) -> usize {
    (t_end / dt).ceil().to_f64().unwrap_or(1.0).max(1.0) as usize
}

/// Integrates the sideband-resolved equations from rest under the probe
/// drive `eps e^{-ixt}` on both ports.
///
/// The step must satisfy `dt <= 0.05 / max(kappa, gamma, G, J, |x|)`;
/// `t_end` of at least `10 / min(kappa, gamma)` is needed before the
/// trailing window is transient-free.
pub fn integrate_rwa<T: Real>(
    lin: &crate::model::LinearizedSystem<T>,
    probe: &ProbeSpec<T>,
    t_end: T,
    dt: T,
) -> Result<TimeSeries<T>, OracleError> {
    let fastest = lin
        .kappa
        .max(lin.gamma)
        .max(lin.g)
        .max(lin.tunneling)
        .max(probe.x.abs());
    let max_dt = real::<T>(RWA_STEP_FACTOR) / fastest;
    if !(dt > T::zero()) || dt > max_dt {
        return Err(OracleError::StepTooLarge {
            dt: dt.to_f64().unwrap_or(f64::NAN),
            max_dt: max_dt.to_f64().unwrap_or(f64::NAN),
        });
    }

    let half = real::<T>(0.5);
    let i = Complex::<T>::i();
    let g1 = Complex::new(lin.g, T::zero());
    let g2 = Complex::from_polar(lin.g, lin.theta);
    let jj = Complex::new(lin.tunneling, T::zero());
    let (el, er, x) = (probe.eps_left, probe.eps_right, probe.x);

    let f = move |t: T, y: &[Complex<T>; 3]| {
        let drive = Complex::from_polar(T::one(), -x * t);
        let [c1, c2, b] = *y;
        [
            -c1.scale(half * lin.kappa) + i * g1 * b - i * jj * c2 + el * drive,
            -c2.scale(half * lin.kappa) - i * g2 * b - i * jj * c1 + er * drive,
            -b.scale(half * lin.gamma) + i * g1.conj() * c1 - i * g2.conj() * c2,
        ]
    };

    let zero = Complex::new(T::zero(), T::zero());
    let n = steps_for(t_end, dt);
    Ok(TimeSeries {
        t0: T::zero(),
        dt,
        samples: rk4([zero; 3], T::zero(), dt, n, f),
    })
}

/// Integrates the full linearized equations, counter-rotating terms and all,
/// in the interaction picture of the effective detunings.
///
/// The effective couplings are taken straight from the steady state
/// (`g0 * c1`, `g0 * c2`), so no coupling gauge is involved; the cavity
/// amplitudes are directly comparable with the sideband-resolved route,
/// while the mechanical amplitude differs by the global gauge phase.
/// The step must resolve the fast phases: `dt <= 0.02 / omega_m`.
pub fn integrate_full<T: Real>(
    params: &SystemParams<T>,
    steady: &SteadyState<T>,
    probe: &ProbeSpec<T>,
    t_end: T,
    dt: T,
) -> Result<TimeSeries<T>, OracleError> {
    let max_dt = real::<T>(FULL_STEP_FACTOR) / params.omega_m;
    if !(dt > T::zero()) || dt > max_dt {
        return Err(OracleError::StepTooLarge {
            dt: dt.to_f64().unwrap_or(f64::NAN),
            max_dt: max_dt.to_f64().unwrap_or(f64::NAN),
        });
    }

    let half = real::<T>(0.5);
    let i = Complex::<T>::i();
    let gam1 = steady.c1.scale(params.g0);
    let gam2 = steady.c2.scale(params.g0);
    let jj = Complex::new(params.tunneling, T::zero());
    let (d1, d2, wm) = (steady.delta1, steady.delta2, params.omega_m);
    let (kappa1, kappa2, gamma) = (params.kappa1, params.kappa2, params.gamma);
    let (el, er, x) = (probe.eps_left, probe.eps_right, probe.x);

    let f = move |t: T, y: &[Complex<T>; 3]| {
        let e1m = Complex::from_polar(T::one(), (d1 - wm) * t);
        let e1p = Complex::from_polar(T::one(), (d1 + wm) * t);
        let e2m = Complex::from_polar(T::one(), (d2 - wm) * t);
        let e2p = Complex::from_polar(T::one(), (d2 + wm) * t);
        let ex = Complex::from_polar(T::one(), -x * t);
        let [c1, c2, b] = *y;
        [
            -c1.scale(half * kappa1) + i * gam1 * (b * e1m + b.conj() * e1p)
                - i * jj * c2 * (e1m * e2m.conj())
                + el * ex * e1m,
            -c2.scale(half * kappa2)
                - i * gam2 * (b * e2m + b.conj() * e2p)
                - i * jj * c1 * (e2m * e1m.conj())
                + er * ex * e2m,
            -b.scale(half * gamma) + i * gam1.conj() * c1 * e1m.conj() + i * gam1 * c1.conj() * e1p
                - i * gam2.conj() * c2 * e2m.conj()
                - i * gam2 * c2.conj() * e2p,
        ]
    };

    let zero = Complex::new(T::zero(), T::zero());
    let n = steps_for(t_end, dt);
    Ok(TimeSeries {
        t0: T::zero(),
        dt,
        samples: rk4([zero; 3], T::zero(), dt, n, f),
    })
}

/// Least-squares fit of each mode's trailing samples to
/// `a e^{-ixt} + b e^{+ixt}`, returning `(a, b)` per mode in the order
/// `(dc1, dc2, db)`.
///
/// The fit is exact for two-tone signals, with no spectral leakage. When
/// the two basis tones are unresolvable over the window (`x` near zero),
/// everything is attributed to the co-rotating coefficient.
pub fn demodulate<T: Real>(
    ts: &TimeSeries<T>,
    x: T,
    window_fraction: T,
) -> Result<[TwoTone<T>; 3], OracleError> {
    let n_total = ts.len();
    let take = if window_fraction > T::zero() && window_fraction < T::one() {
        ((real::<T>(n_total as f64) * window_fraction)
            .ceil()
            .to_f64()
            .unwrap_or(0.0)) as usize
    } else {
        0
    };
    if take < MIN_DEMOD_SAMPLES {
        return Err(OracleError::WindowTooShort {
            samples: take,
            min: MIN_DEMOD_SAMPLES,
        });
    }
    let start = n_total - take;

    let zero = Complex::new(T::zero(), T::zero());
    let count = real::<T>(take as f64);
    let mut gram_cross = zero; // sum e^{2ixt}
    let mut rhs_plus = [zero; 3]; // sum e^{+ixt} y
    let mut rhs_minus = [zero; 3]; // sum e^{-ixt} y
    for k in start..n_total {
        let t = ts.time_at(k);
        let e_plus = Complex::from_polar(T::one(), x * t);
        gram_cross += e_plus * e_plus;
        for m in 0..3 {
            let y = ts.samples[k][m];
            rhs_plus[m] += e_plus * y;
            rhs_minus[m] += e_plus.conj() * y;
        }
    }

    let det = count * count - gram_cross.norm_sqr();
    let resolvable = det > real::<T>(1e-12) * count * count;
    let mut out = [TwoTone {
        plus: zero,
        minus: zero,
    }; 3];
    for m in 0..3 {
        if resolvable {
            let a = (rhs_plus[m].scale(count) - gram_cross * rhs_minus[m]).unscale(det);
            let b = (rhs_minus[m].scale(count) - gram_cross.conj() * rhs_plus[m]).unscale(det);
            out[m] = TwoTone { plus: a, minus: b };
        } else {
            out[m] = TwoTone {
                plus: rhs_plus[m].unscale(count),
                minus: zero,
            };
        }
    }
    Ok(out)
}
