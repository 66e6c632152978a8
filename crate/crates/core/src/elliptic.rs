//! Complete elliptic integrals and Jacobi elliptic functions.
//!
//! Everything is built on the arithmetic-geometric mean. The generic
//! routines run at the precision carried by their [`Real`] arguments;
//! the `f64` wrappers are what the rest of the crate calls by default.

use crate::error::{domain, Error, Result};
use crate::real::Real;

/// An elliptic modulus together with its complement and quarter periods.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Modulus {
    pub k: f64,
    /// sqrt(1 - k^2)
    pub complement: f64,
    /// K(k)
    pub quarter_period: f64,
    /// K(k'), the quarter period of the complementary modulus.
    pub complement_quarter_period: f64,
}

impl Modulus {
    /// Rejects k outside (0, 1). Criticality k = 1 has no finite quarter period.
    pub fn new(k: f64) -> Result<Self> {
        if !(k > 0.0 && k < 1.0) {
            return domain(format!("modulus k = {k} must lie in (0, 1)"));
        }
        let complement = complement(&k);
        Ok(Self {
            k,
            complement,
            quarter_period: complete_k(&k),
            complement_quarter_period: complete_k(&complement),
        })
    }
}

fn complement<R: Real>(k: &R) -> R {
    let one = R::one(k.bits());
    ((one.clone() - k.clone()) * (one + k.clone())).sqrt()
}

fn agm_done<R: Real>(a: &R, b: &R) -> bool {
    let bits = a.bits();
    let tol = R::pow2_neg(bits.saturating_sub(4), bits) * a.clone();
    (a.clone() - b.clone()).abs() < tol
}

/// Arithmetic-geometric mean of two positive numbers.
pub fn agm<R: Real>(a: &R, b: &R) -> R {
    let two = R::from_i64(2, a.bits());
    let (mut a, mut b) = (a.clone(), b.clone());
    for _ in 0..64 {
        if agm_done(&a, &b) {
            break;
        }
        let next = (a.clone() + b.clone()) / two.clone();
        b = (a * b).sqrt();
        a = next;
    }
    a
}

/// K(k) = pi / (2 AGM(1, k')) for 0 <= k < 1, at the precision of `k`.
pub fn complete_k<R: Real>(k: &R) -> R {
    let bits = k.bits();
    let kp = complement(k);
    R::pi(bits) / (R::from_i64(2, bits) * agm(&R::one(bits), &kp))
}

/// (K(k), E(k)) from one AGM run. E/K = 1 - sum 2^(n-1) c_n^2 with c_0 = k.
pub fn complete_k_e<R: Real>(k: &R) -> (R, R) {
    let bits = k.bits();
    let one = R::one(bits);
    let two = R::from_i64(2, bits);
    let four = R::from_i64(4, bits);
    let (mut a, mut b) = (one.clone(), complement(k));
    let mut c = k.clone();
    let mut weight = one.clone() / two.clone();
    let mut sum = weight.clone() * c.clone() * c.clone();
    for _ in 0..64 {
        if agm_done(&a, &b) {
            break;
        }
        let next = (a.clone() + b.clone()) / two.clone();
        // c_{n+1} = (a_n - b_n)/2 without the cancellation
        c = c.clone() * c / (four.clone() * next.clone());
        b = (a * b).sqrt();
        a = next;
        weight = weight * two.clone();
        sum = sum + weight.clone() * c.clone() * c.clone();
    }
    let kk = R::pi(bits) / (two * a);
    let ee = kk.clone() * (one - sum);
    (kk, ee)
}

/// K as a function of the modulus, in double precision.
pub fn complete_elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return domain(format!("K(k) needs 0 <= k < 1, got {k}"));
    }
    Ok(complete_k(&k))
}

/// E as a function of the modulus, in double precision.
pub fn complete_elliptic_e(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return domain(format!("E(k) needs 0 <= k < 1, got {k}"));
    }
    Ok(complete_k_e(&k).1)
}

/// The Jacobi triple at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jacobi {
    pub u: f64,
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

impl Jacobi {
    /// sn/cn; fails where cn vanishes.
    pub fn sc(&self) -> Result<f64> {
        if self.cn.abs() <= 4.0 * f64::EPSILON * self.sn.abs().max(1.0) {
            return Err(Error::Pole { u: self.u });
        }
        Ok(self.sn / self.cn)
    }

    /// cn/sn; fails where sn vanishes.
    pub fn cs(&self) -> Result<f64> {
        if self.sn.abs() <= 4.0 * f64::EPSILON * self.cn.abs().max(1.0) {
            return Err(Error::Pole { u: self.u });
        }
        Ok(self.cn / self.sn)
    }
}

/// sn, cn, dn by the descending Landen (AGM) scheme.
pub fn jacobi_elliptic(u: f64, k: f64) -> Result<Jacobi> {
    if !(0.0..1.0).contains(&k) || !u.is_finite() {
        return domain(format!("Jacobi functions need 0 <= k < 1 and finite u, got k = {k}, u = {u}"));
    }
    let mut a = vec![1.0];
    let mut c = vec![k];
    let mut b = complement(&k);
    while c.last().unwrap().abs() > f64::EPSILON * 0.5 && a.len() < 40 {
        let an = *a.last().unwrap();
        a.push(0.5 * (an + b));
        c.push(0.5 * (an - b));
        b = (an * b).sqrt();
    }
    let levels = a.len() - 1;
    let mut phi = (1u64 << levels) as f64 * a[levels] * u;
    for n in (1..=levels).rev() {
        phi = 0.5 * (phi + (c[n] / a[n] * phi.sin()).asin());
    }
    let (sn, cn) = phi.sin_cos();
    let dn = (1.0 - k * k * sn * sn).sqrt();
    Ok(Jacobi { u, sn, cn, dn })
}

/// sc(u, k).
pub fn sc(u: f64, k: f64) -> Result<f64> {
    jacobi_elliptic(u, k)?.sc()
}

/// cs(u, k).
pub fn cs(u: f64, k: f64) -> Result<f64> {
    jacobi_elliptic(u, k)?.cs()
}
