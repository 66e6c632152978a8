//! Width extrapolation of cylinder data.

use crate::error::{Error, Result};

/// Limit and error estimate of a width sequence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extrapolated {
    pub limit: f64,
    pub error: f64,
}

/// Differences below this are treated as converged rather than fitted.
pub const NOISE_FLOOR: f64 = 1e-12;

/// Fits v(W) = limit + B e^(-cW) through the three widest points (Aitken's delta-squared).
///
/// Input pairs are (width, value); widths must be evenly spaced.
pub fn extrapolate(values: &[(usize, f64)]) -> Result<Extrapolated> {
    if values.len() < 3 {
        return Err(Error::Extrapolation(format!("need at least 3 widths, got {}", values.len())));
    }
    let mut v = values.to_vec();
    v.sort_by_key(|p| p.0);
    let step = v[1].0 - v[0].0;
    if step == 0 || v.windows(2).any(|w| w[1].0 - w[0].0 != step) {
        return Err(Error::Extrapolation("widths are not evenly spaced".into()));
    }
    let n = v.len();
    let (a, b, c) = (v[n - 3].1, v[n - 2].1, v[n - 1].1);
    let (d1, d2) = (b - a, c - b);
    if d1.abs() <= NOISE_FLOOR && d2.abs() <= NOISE_FLOOR {
        return Ok(Extrapolated { limit: c, error: 4.0 * d2.abs() });
    }
    let ratio = d2 / d1;
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::Extrapolation(format!(
            "tail is not a decaying exponential (successive differences {d1:e}, {d2:e})"
        )));
    }
    let limit = c - d2 * d2 / (d2 - d1);
    Ok(Extrapolated { limit, error: 4.0 * (c - limit).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sequence() {
        let e = extrapolate(&[(4, 0.25), (6, 0.25), (8, 0.25)]).unwrap();
        assert_eq!(e.limit, 0.25);
        assert_eq!(e.error, 0.0);
    }

    #[test]
    fn synthetic_exponential() {
        let data: Vec<_> = [8usize, 10, 12, 14].iter().map(|&w| (w, 0.3 + 0.5 * (-(w as f64)).exp())).collect();
        let e = extrapolate(&data).unwrap();
        assert!((e.limit - 0.3).abs() < 1e-10);
    }

    #[test]
    fn rejects_growth_and_bad_spacing() {
        assert!(extrapolate(&[(4, 0.1), (6, 0.2), (8, 0.4)]).is_err());
        assert!(extrapolate(&[(4, 0.1), (6, 0.2), (8, 0.1)]).is_err());
        assert!(extrapolate(&[(4, 0.1), (6, 0.2), (9, 0.25)]).is_err());
        assert!(extrapolate(&[(4, 0.1), (6, 0.2)]).is_err());
    }
}
