//! Output formatting: CSV schemas and JSON with floats at 17 significant
//! digits, so every number round-trips a double losslessly.

use std::io::{self, Write};

use num_complex::Complex;
use serde::Serialize;
use serde_json::ser::Formatter;

use nonrecip_core::response::{fwhm, Direction, ScatteringPoint};

pub const SWEEP_CSV_HEADER: &str = "x,T_LR,T_RL,re_tLR,im_tLR,re_tRL,im_tRL";

/// JSON formatter printing every float as `d.dddddddddddddddde[+-]exp`
/// (17 significant digits).
pub struct Sig17;

impl Formatter for Sig17 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes a value to one-line JSON with 17-digit floats.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17);
    value
        .serialize(&mut ser)
        .expect("report serialization cannot fail");
    String::from_utf8(out).expect("JSON is UTF-8")
}

pub fn complex_pair(z: Complex<f64>) -> [f64; 2] {
    [z.re, z.im]
}

/// Writes the sweep CSV: one detuning-ascending row per grid point.
pub fn write_sweep_csv<W: Write>(mut w: W, points: &[ScatteringPoint<f64>]) -> io::Result<()> {
    writeln!(w, "{SWEEP_CSV_HEADER}")?;
    for p in points {
        writeln!(
            w,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            p.x, p.t_lr_mag, p.t_rl_mag, p.t_lr.re, p.t_lr.im, p.t_rl.re, p.t_rl.im
        )?;
    }
    Ok(())
}

/// Peak statistics of one transmission direction over a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DirectionSummary {
    pub max_t: f64,
    pub argmax_x: f64,
    pub fwhm: Option<f64>,
}

pub fn direction_summary(
    points: &[ScatteringPoint<f64>],
    direction: Direction,
) -> DirectionSummary {
    let (mut max_t, mut argmax_x) = (f64::NEG_INFINITY, f64::NAN);
    for p in points {
        let t = p.transmission(direction);
        if t > max_t {
            max_t = t;
            argmax_x = p.x;
        }
    }
    DirectionSummary {
        max_t,
        argmax_x,
        fwhm: fwhm(points, direction).ok(),
    }
}

/// Reduced-system parameters echoed in summaries.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LinSummary {
    #[serde(rename = "G")]
    pub g: f64,
    pub theta: f64,
    #[serde(rename = "J")]
    pub j: f64,
    pub kappa: f64,
    pub gamma: f64,
}

/// Steady-state solution as reported by `steady` and by self-consistent
/// sweeps.
#[derive(Debug, Clone, Serialize)]
pub struct SteadySummary {
    pub b: [f64; 2],
    pub c1: [f64; 2],
    pub c2: [f64; 2],
    pub delta1: f64,
    pub delta2: f64,
    pub iterations: usize,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linearized: Option<LinSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linearized_error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub out: String,
    pub n_points: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub lr: DirectionSummary,
    pub rl: DirectionSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steady: Option<SteadySummary>,
}
