//! Phase values in flags and configs accept exact `pi` fractions
//! ("-pi/2", "3pi/4", "0.6") so the special angles of the condition
//! branches carry no decimal drift.

use std::f64::consts::PI;

/// Parses a phase literal: `[+-] [coef] [*] [pi] [/ denom]` or a plain
/// radian number.
pub fn parse_theta(input: &str) -> Result<f64, String> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty phase literal".to_string());
    }
    let (sign, unsigned) = match compact.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, compact.strip_prefix('+').unwrap_or(&compact)),
    };

    let (numerator, denominator) = match unsigned.split_once('/') {
        Some((num, den)) => {
            let den: f64 = den
                .parse()
                .map_err(|_| format!("bad phase denominator `{den}`"))?;
            if den == 0.0 {
                return Err("zero phase denominator".to_string());
            }
            (num, den)
        }
        None => (unsigned, 1.0),
    };

    let value = if let Some(coef) = numerator.strip_suffix("pi") {
        let coef = coef.strip_suffix('*').unwrap_or(coef);
        let coef: f64 = if coef.is_empty() {
            1.0
        } else {
            coef.parse()
                .map_err(|_| format!("bad phase coefficient `{coef}`"))?
        };
        coef * PI
    } else {
        numerator
            .parse()
            .map_err(|_| format!("bad phase literal `{input}`"))?
    };

    Ok(sign * value / denominator)
}
