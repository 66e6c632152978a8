//! Generalized Fibonacci words and the column sign patterns built from them.
//!
//! Bit n of family j is the floor difference
//! `floor(gamma + (n+1)/alpha_j) - floor(gamma + n/alpha_j)` with
//! `alpha_j = ((j+1) + sqrt((j+1)^2 + 4)) / 2`. Flipping whole rows of spins
//! by a sign sequence turns the uniform model into a mixed-sign one whose
//! correlations are the uniform ones times s(n) s(n').

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FibonacciSpec {
    pub j: u32,
    /// Phase offset in [0, 1).
    pub gamma: f64,
}

impl FibonacciSpec {
    pub fn new(j: u32, gamma: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&gamma) {
            return Err(Error::Domain(format!("offset gamma = {gamma} must lie in [0, 1)")));
        }
        Ok(Self { j, gamma })
    }

    /// Golden ratio for j = 0, silver ratio 1 + sqrt(2) for j = 1.
    pub fn alpha(&self) -> f64 {
        let a = f64::from(self.j) + 1.0;
        0.5 * (a + (a * a + 4.0).sqrt())
    }
}

impl Default for FibonacciSpec {
    fn default() -> Self {
        Self { j: 0, gamma: 0.0 }
    }
}

pub fn fib_bit(spec: &FibonacciSpec, n: i64) -> u8 {
    let inv = 1.0 / spec.alpha();
    let hi = (spec.gamma + (n + 1) as f64 * inv).floor();
    let lo = (spec.gamma + n as f64 * inv).floor();
    (hi - lo) as u8
}

/// Signs assigned to the bits 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BitMap {
    pub zero: i8,
    pub one: i8,
}

impl BitMap {
    /// Both bits map to +1; the uniform model.
    pub const IDENTITY: BitMap = BitMap { zero: 1, one: 1 };

    pub fn new(zero: i8, one: i8) -> Result<Self> {
        if ![zero, one].iter().all(|s| *s == 1 || *s == -1) {
            return Err(Error::Domain(format!("bit map signs must be +1 or -1, got ({zero}, {one})")));
        }
        Ok(Self { zero, one })
    }

    pub fn apply(&self, bit: u8) -> i8 {
        if bit == 0 {
            self.zero
        } else {
            self.one
        }
    }
}

impl Default for BitMap {
    fn default() -> Self {
        Self { zero: 1, one: -1 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignSequence {
    pub spec: FibonacciSpec,
    pub bit_map: BitMap,
    pub signs: Vec<i8>,
}

impl SignSequence {
    /// Wraps an arbitrary ±1 pattern, for tests and custom gauges.
    pub fn from_signs(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() || signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::Domain("sign pattern must be non-empty and contain only +1 and -1".into()));
        }
        Ok(Self {
            spec: FibonacciSpec::default(),
            bit_map: BitMap::default(),
            signs,
        })
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }
}

pub fn fib_bits(spec: &FibonacciSpec, count: usize) -> Vec<u8> {
    (0..count as i64).map(|n| fib_bit(spec, n)).collect()
}

pub fn sign_sequence(spec: &FibonacciSpec, bit_map: BitMap, window: usize) -> Result<SignSequence> {
    if window == 0 {
        return Err(Error::Domain("sign window must hold at least one site".into()));
    }
    Ok(SignSequence {
        spec: *spec,
        bit_map,
        signs: (0..window as i64).map(|n| bit_map.apply(fib_bit(spec, n))).collect(),
    })
}

/// kappa(d) = sum_n s(n) s(n+d) / (N - d) for d = 0..=delta_max.
pub fn autocorrelation(seq: &SignSequence, delta_max: usize) -> Result<Vec<f64>> {
    let n = seq.len();
    if 2 * delta_max >= n {
        return Err(Error::Range(format!(
            "lag {delta_max} needs a window longer than {}, got {n}",
            2 * delta_max
        )));
    }
    let s = &seq.signs;
    Ok((0..=delta_max)
        .map(|d| {
            let sum: i64 = s[..n - d].iter().zip(&s[d..]).map(|(a, b)| i64::from(a * b)).sum();
            sum as f64 / (n - d) as f64
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_prefix() {
        let spec = FibonacciSpec::default();
        assert_eq!(fib_bits(&spec, 5), vec![0, 1, 0, 1, 1]);
        let seq = sign_sequence(&spec, BitMap::default(), 5).unwrap();
        assert_eq!(seq.signs, vec![1, -1, 1, -1, -1]);
        assert!((spec.alpha() - 1.618_033_988_749_895).abs() < 1e-15);
    }

    #[test]
    fn silver_ratio() {
        let spec = FibonacciSpec::new(1, 0.0).unwrap();
        assert!((spec.alpha() - (1.0 + 2f64.sqrt())).abs() < 1e-15);
        assert_eq!(fib_bit(&spec, 0), 0);
    }

    #[test]
    fn frequency_of_ones() {
        for j in 0..3 {
            let spec = FibonacciSpec::new(j, 0.3).unwrap();
            let n = 10_000;
            let ones = fib_bits(&spec, n).iter().map(|&b| b as usize).sum::<usize>();
            assert!((ones as f64 / n as f64 - 1.0 / spec.alpha()).abs() <= 2.0 / n as f64);
        }
    }

    #[test]
    fn autocorrelation_cases() {
        let alt = SignSequence::from_signs((0..100).map(|n| if n % 2 == 0 { 1 } else { -1 }).collect()).unwrap();
        let k = autocorrelation(&alt, 10).unwrap();
        for (d, v) in k.iter().enumerate() {
            assert_eq!(*v, if d % 2 == 0 { 1.0 } else { -1.0 });
        }
        let flat = sign_sequence(&FibonacciSpec::default(), BitMap::IDENTITY, 50).unwrap();
        assert!(autocorrelation(&flat, 20).unwrap().iter().all(|&v| v == 1.0));
        assert!(matches!(autocorrelation(&flat, 25), Err(Error::Range(_))));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(FibonacciSpec::new(0, 1.0).is_err());
        assert!(BitMap::new(1, 0).is_err());
        assert!(sign_sequence(&FibonacciSpec::default(), BitMap::default(), 0).is_err());
    }
}
