//! Correlation tables of the square-lattice Ising model and its dual.
//!
//! `C(m, n)` is the pair correlation of the isotropic model with
//! sinh 2K = sqrt(k) (disordered for k < 1) and `Cbar(m, n)` that of its
//! Kramers-Wannier dual with sinh 2K = 1/sqrt(k). Writing
//!
//! ```text
//! Q(m,n; X) = X(m, n+1) X(m, n-1) - X(m, n)^2     (vertical second difference)
//! P(m,n; X) = X(m+1, n) X(m-1, n) - X(m, n)^2     (horizontal)
//! ```
//!
//! the pair obeys, away from the origin,
//!
//! ```text
//! Q(Cbar) + k P(C) = 0,     P(Cbar) + k Q(C) = 0,
//! Cbar(m,n) Cbar(m+1,n+1) - Cbar(m+1,n) Cbar(m,n+1) = k [same with C],
//! sqrt(k) [C(m+1,n) Cbar(m-1,n) + C(m-1,n) Cbar(m+1,n) + C(m,n+1) Cbar(m,n-1) + C(m,n-1) Cbar(m,n+1)]
//!     = 2 (k+1) C(m,n) Cbar(m,n),
//! sqrt(k) C(1,0) + Cbar(0,1) = sqrt(k+1).
//! ```
//!
//! Tables are filled from the diagonal, the next diagonal and the first two
//! relations, one superdiagonal at a time. The last two relations are only
//! used as a post-hoc check.

use std::io::Write;

use crate::elliptic::{complete_k_e, Modulus};
use crate::error::{domain, Error, Result};
use crate::real::{Big, Real};

/// Precision tag for the double-precision path.
pub const DOUBLE_BITS: usize = 53;
/// Default precision of [`build_table`] callers.
pub const DEFAULT_BITS: usize = 256;
/// Smallest allowed 1 - k.
pub const CRITICAL_MARGIN: f64 = 1e-6;

/// Which member of the dual pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Correlator {
    /// sinh 2K = sqrt(k)
    Primary,
    /// sinh 2K = 1/sqrt(k)
    Dual,
}

#[inline]
fn octant_index(m: usize, n: usize) -> usize {
    let (lo, hi) = if m <= n { (m, n) } else { (n, m) };
    hi * (hi + 1) / 2 + lo
}

fn octant_len(radius: usize) -> usize {
    (radius + 1) * (radius + 2) / 2
}

/// Onsager's nearest-neighbour correlation of the disordered model.
///
/// C(1,0) = (1/2) sqrt((1+k)/k) (mu + k) / (1 + mu) with mu = AGM(1, k') - 1,
/// the Landen-transformed form of the classical closed expression.
pub fn nearest_neighbour<R: Real>(k: &R) -> R {
    let bits = k.bits();
    let one = R::one(bits);
    let two = R::from_i64(2, bits);
    // track a = 1 + delta, b = 1 + eps so mu stays accurate as k -> 0
    let kp = ((one.clone() - k.clone()) * (one.clone() + k.clone())).sqrt();
    let mut delta = R::zero(bits);
    let mut eps = -(k.clone() * k.clone()) / (one.clone() + kp);
    let tol = R::pow2_neg(bits.saturating_sub(4), bits);
    for _ in 0..64 {
        if (delta.clone() - eps.clone()).abs() <= tol.clone() * (one.clone() + delta.clone()).abs() {
            break;
        }
        let b = ((one.clone() + delta.clone()) * (one.clone() + eps.clone())).sqrt();
        let next_eps = (delta.clone() + eps.clone() + delta.clone() * eps.clone()) / (one.clone() + b);
        delta = (delta + eps) / two.clone();
        eps = next_eps;
    }
    let mu = delta;
    let pref = ((one.clone() + k.clone()) / k.clone()).sqrt() / two;
    pref * (mu.clone() + k.clone()) / (one + mu)
}

/// C(1,0) of the disordered model at modulus k.
pub fn onsager_nn(modulus: &Modulus) -> f64 {
    nearest_neighbour(&modulus.k)
}

/// Cbar(0,1) fixed by the linear seed relation.
pub fn dual_nearest_neighbour<R: Real>(k: &R, c10: &R) -> R {
    let one = R::one(k.bits());
    (one + k.clone()).sqrt() - k.sqrt() * c10.clone()
}

/// Large-distance limit of Cbar is the square of (1 - k^2)^(1/8).
pub fn dual_magnetization(modulus: &Modulus) -> f64 {
    (1.0 - modulus.k * modulus.k).powf(0.125)
}

/// Seeds of the sweep: nearest neighbours, diagonal and next diagonal.
#[derive(Clone, Debug)]
pub struct SeedSet<R = f64> {
    pub c10: R,
    pub cbar01: R,
    /// (C(n,n), Cbar(n,n)) for n = 0..=n_max.
    pub diag: Vec<(R, R)>,
    /// (C(n,n+1), Cbar(n,n+1)) for n = 0..n_max.
    pub next_diag: Vec<(R, R)>,
}

impl<R: Real> SeedSet<R> {
    /// Residual of sqrt(k) C(1,0) + Cbar(0,1) = sqrt(k+1).
    pub fn linear_residual(&self, k: &R) -> f64 {
        let one = R::one(k.bits());
        (k.sqrt() * self.c10.clone() + self.cbar01.clone() - (one + k.clone()).sqrt())
            .abs()
            .to_f64()
    }
}

/// Fourier coefficients a_p, p in [-n, n), of (1 - k/z)^(1/2) (1 - k z)^(-1/2).
///
/// Double precision sums the defining double series unless the three-term
/// recurrence loses at most a few bits; wider types always use the recurrence
/// with guard bits covering its growth.
fn symbol_coefficients<R: Real>(k: &R, n: usize) -> Vec<R> {
    let bits = k.bits();
    let kf = k.to_f64();
    let loss = 2.0 * n as f64 * (1.0 / kf).log2() + 2.0 * (1.0 / kf).log2();
    if bits <= DOUBLE_BITS && loss > 3.0 {
        return series_coefficients(kf, n).into_iter().map(|x| R::from_f64(x, bits)).collect();
    }
    let guard = if bits <= DOUBLE_BITS { 0 } else { loss.ceil() as usize + 32 };
    let wide = bits + guard;
    let coeffs = recurrence_coefficients(&k.clone(), n, wide);
    coeffs.into_iter().map(|c| c.with_bits(bits)).collect()
}

fn series_coefficients(k: f64, n: usize) -> Vec<f64> {
    // c: (1-x)^(1/2), d: (1-x)^(-1/2)
    let terms = 20000usize;
    let k2 = k * k;
    let mut out = Vec::with_capacity(2 * n);
    for p in -(n as i64)..(n as i64) {
        let a0 = if p < 0 { (-p) as usize } else { 0 };
        let mut c = 1.0;
        for a in 1..=a0 {
            c *= (a as f64 - 1.5) / a as f64;
        }
        let mut d = 1.0;
        for b in 1..=(a0 as i64 + p) as usize {
            d *= (b as f64 - 0.5) / b as f64;
        }
        let mut kp = k.powi(2 * a0 as i32 + p as i32);
        let mut sum = 0.0;
        for a in a0..terms {
            let term = c * d * kp;
            sum += term;
            if a > a0 + 2 && term.abs() < 1e-18 * sum.abs() {
                break;
            }
            let b = (a as i64 + p) as usize + 1;
            c *= (a as f64 + 1.0 - 1.5) / (a as f64 + 1.0);
            d *= (b as f64 - 0.5) / b as f64;
            kp *= k2;
        }
        out.push(sum);
    }
    out
}

fn recurrence_coefficients<R: Real>(k_in: &R, n: usize, bits: usize) -> Vec<R> {
    let k = k_in.with_bits(bits);
    let one = R::one(bits);
    let int = |v: i64| R::from_i64(v, bits);
    let (kk, ee) = complete_k_e(&k);
    let pi = R::pi(bits);
    let a0 = int(2) * ee.clone() / pi.clone();
    let kp2 = one.clone() - k.clone() * k.clone();
    let am1 = -(int(2) / (pi * k.clone())) * (ee - kp2 * kk);
    let k2 = k.clone() * k.clone();
    // k (2p+1) a_p = [2(1+k^2)(p-1) + 2k^2] a_{p-1} - k (2p-3) a_{p-2}
    let mid = |p: i64| int(2) * (one.clone() + k2.clone()) * int(p - 1) + int(2) * k2.clone();
    let n = n as i64;
    let mut pos = vec![a0.clone()];
    let mut prev = am1.clone();
    for p in 1..n {
        let cur = pos.last().unwrap().clone();
        let next = (mid(p) * cur.clone() - k.clone() * int(2 * p - 3) * prev) / (k.clone() * int(2 * p + 1));
        prev = cur;
        pos.push(next);
    }
    let mut neg = vec![am1.clone()];
    let (mut hi, mut lo) = (a0, am1);
    // a_{p-2} from a_{p-1}, a_p with p = 0, -1, ...
    for p in (-(n) + 2..=0).rev() {
        let next = (mid(p) * lo.clone() - k.clone() * int(2 * p + 1) * hi) / (k.clone() * int(2 * p - 3));
        hi = lo;
        lo = next.clone();
        neg.push(next);
    }
    neg.truncate(n as usize);
    neg.reverse();
    neg.extend(pos);
    neg
}

/// Leading principal minors det[t_{i-j}]_{N x N}, N = 1..=n, from one elimination without pivoting.
fn toeplitz_minors<R: Real>(entry: impl Fn(i64) -> R, n: usize) -> Vec<R> {
    let mut a: Vec<Vec<R>> = (0..n)
        .map(|i| (0..n).map(|j| entry(i as i64 - j as i64)).collect())
        .collect();
    let mut out = Vec::with_capacity(n);
    let bits = a[0][0].bits();
    let mut det = R::one(bits);
    for p in 0..n {
        let pivot = a[p][p].clone();
        det = det * pivot.clone();
        out.push(det.clone());
        if pivot.log2_magnitude().is_none() {
            break;
        }
        let (done, rest) = a.split_at_mut(p + 1);
        let pivot_row = &done[p];
        for row in rest {
            let f = row[p].clone() / pivot.clone();
            for (v, u) in row[p + 1..].iter_mut().zip(&pivot_row[p + 1..]) {
                *v = v.clone() - f.clone() * u.clone();
            }
        }
    }
    out
}

/// (C(n,n), Cbar(n,n)) for n = 0..=n_max from Toeplitz determinants.
pub fn diagonal_seeds<R: Real>(k: &R, n_max: usize) -> Result<Vec<(R, R)>> {
    let kf = k.to_f64();
    if !(kf > 0.0 && kf < 1.0) {
        return domain(format!("diagonal seeds need 0 < k < 1, got {kf}"));
    }
    if n_max == 0 {
        return domain("diagonal seeds need n_max >= 1");
    }
    let bits = k.bits();
    let coeffs = symbol_coefficients(k, n_max);
    let at = |p: i64| coeffs[(p + n_max as i64) as usize].clone();
    let dual = toeplitz_minors(at, n_max);
    let primary = toeplitz_minors(|p| -at(p - 1), n_max);
    let mut out = vec![(R::one(bits), R::one(bits))];
    for (i, (c, cb)) in primary.into_iter().zip(dual).enumerate() {
        let zero = R::zero(bits);
        if !(c > zero) || !(cb > zero) {
            return Err(Error::PrecisionExhausted {
                m: i as i64 + 1,
                n: i as i64 + 1,
                detail: "diagonal Toeplitz determinant is not positive".into(),
            });
        }
        out.push((c, cb));
    }
    Ok(out)
}

/// (C(m,m+1), Cbar(m,m+1)) for m = 0..n_max, where n_max + 1 = diag.len().
///
/// At each m the linear four-term relation and the determinant relation at
/// (m, m) give a quadratic for the two unknowns; the diagonal form of the
/// first second-difference relation is checked on the chosen root.
pub fn next_diagonal_seeds<R: Real>(k: &R, diag: &[(R, R)], base: (R, R)) -> Result<Vec<(R, R)>> {
    let bits = k.bits();
    let one = R::one(bits);
    let zero = R::zero(bits);
    let sk = k.sqrt();
    let kp1 = one.clone() + k.clone();
    let tol = inconsistency_tolerance(bits);
    let mut out = vec![base];
    for m in 1..diag.len().saturating_sub(1) {
        let (p, q) = out[m - 1].clone();
        let (d, db) = diag[m].clone();
        let (d1, db1) = diag[m + 1].clone();
        // y = alpha - beta x
        let alpha = kp1.clone() * d.clone() * db.clone() / (sk.clone() * p.clone());
        let beta = q.clone() / p.clone();
        let a2 = k.clone() - beta.clone() * beta.clone();
        let a1 = R::from_i64(2, bits) * alpha.clone() * beta.clone();
        let a0 = db.clone() * db1 - alpha.clone() * alpha.clone() - k.clone() * d.clone() * d1;
        let disc = a1.clone() * a1.clone() - R::from_i64(4, bits) * a2.clone() * a0.clone();
        if disc < zero {
            return Err(Error::PrecisionExhausted {
                m: m as i64,
                n: m as i64 + 1,
                detail: "next-diagonal quadratic has no real root".into(),
            });
        }
        let root = disc.sqrt();
        // numerically stable pair of roots
        let qv = if a1 >= zero {
            -(a1.clone() + root) / R::from_i64(2, bits)
        } else {
            (root - a1.clone()) / R::from_i64(2, bits)
        };
        let mut roots = Vec::new();
        if qv.log2_magnitude().is_some() {
            roots.push(a0.clone() / qv.clone());
        }
        if a2.log2_magnitude().is_some() {
            roots.push(qv / a2.clone());
        }
        let mut best: Option<(R, R, R)> = None;
        for x in roots {
            let y = alpha.clone() - beta.clone() * x.clone();
            if !(x > zero && x < one && y > zero && y < one) {
                continue;
            }
            let dist = (x.clone() - p.clone()).abs();
            let better = match &best {
                None => true,
                Some((bx, _, bd)) => dist < *bd || (dist == *bd && x > *bx),
            };
            if better {
                best = Some((x, y, dist));
            }
        }
        let Some((x, y, _)) = best else {
            return Err(Error::PrecisionExhausted {
                m: m as i64,
                n: m as i64 + 1,
                detail: "no root of the next-diagonal system lies in (0, 1)".into(),
            });
        };
        let check = y.clone() * q - db.clone() * db + k.clone() * (x.clone() * p - d.clone() * d);
        let residual = check.abs().to_f64();
        if residual > tol {
            return Err(Error::Inconsistency { m, residual });
        }
        out.push((x, y));
    }
    Ok(out)
}

fn inconsistency_tolerance(bits: usize) -> f64 {
    (2.0f64).powi(-((bits / 2) as i32)).max(1e-300) * 1e3
}

/// All seeds needed for a table of the given radius.
pub fn seed_set<R: Real>(k: &R, radius: usize) -> Result<SeedSet<R>> {
    let c10 = nearest_neighbour(k);
    let cbar01 = dual_nearest_neighbour(k, &c10);
    let diag = diagonal_seeds(k, radius)?;
    let next_diag = next_diagonal_seeds(k, &diag, (c10.clone(), cbar01.clone()))?;
    Ok(SeedSet { c10, cbar01, diag, next_diag })
}

/// Worst residuals of the relations not used by the sweep.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ResidualReport {
    /// Determinant relation, worst over the octant.
    pub determinant: f64,
    pub determinant_at: (usize, usize),
    /// Linear four-term relation, worst over the octant minus the origin.
    pub linear: f64,
    pub linear_at: (usize, usize),
}

impl ResidualReport {
    pub fn worst(&self) -> f64 {
        self.determinant.max(self.linear)
    }
}

/// Octant tables of C and Cbar with build metadata.
#[derive(Clone, Debug)]
pub struct CorrelationTable {
    /// Modulus the recurrences ran at; for requests with k > 1 this is 1/k.
    pub modulus: Modulus,
    pub radius: usize,
    pub precision_bits: usize,
    pub residual_report: ResidualReport,
    /// Set when the table was requested at k > 1 and served from 1/k with the roles exchanged.
    pub dual_swapped: bool,
    primary: Vec<f64>,
    dual: Vec<f64>,
}

struct Sweep<R> {
    radius: usize,
    c: Vec<R>,
    cb: Vec<R>,
}

impl<R: Real> Sweep<R> {
    fn get(&self, m: i64, n: i64) -> (&R, &R) {
        let i = octant_index(m.unsigned_abs() as usize, n.unsigned_abs() as usize);
        (&self.c[i], &self.cb[i])
    }
}

/// Runs the superdiagonal sweep. With `strict`, entries outside (0, 1] abort the fill.
fn fill<R: Real>(k: &R, radius: usize, seeds: &SeedSet<R>, strict: bool) -> Result<Sweep<R>> {
    let bits = k.bits();
    let zero = R::zero(bits);
    let one = R::one(bits);
    let len = octant_len(radius);
    let kinv = one.clone() / k.clone();
    let mut s = Sweep { radius, c: vec![zero.clone(); len], cb: vec![zero.clone(); len] };
    for (n, (c, cb)) in seeds.diag.iter().enumerate().take(radius + 1) {
        let i = octant_index(n, n);
        s.c[i] = c.clone();
        s.cb[i] = cb.clone();
    }
    for (m, (c, cb)) in seeds.next_diag.iter().enumerate().take(radius) {
        let i = octant_index(m, m + 1);
        s.c[i] = c.clone();
        s.cb[i] = cb.clone();
    }
    for d in 1..radius {
        for m in 0..radius - d {
            let (mi, n) = (m as i64, (m + d) as i64);
            let at = |a: i64, b: i64| {
                let (x, y) = s.get(a, b);
                (x.clone(), y.clone())
            };
            let (c, cb) = at(mi, n);
            let (cr, cbr) = at(mi + 1, n);
            let (cl, cbl) = at(mi - 1, n);
            let (cd, cbd) = at(mi, n - 1);
            let (nm, nn) = (m, m + d + 1);
            if cd.log2_magnitude().is_none() || cbd.log2_magnitude().is_none() {
                return Err(Error::PrecisionExhausted {
                    m: nm as i64,
                    n: nn as i64,
                    detail: "division by zero".into(),
                });
            }
            let pc = R::diff_of_products(&cr, &cl, &c, &c);
            let pb = R::diff_of_products(&cbr, &cbl, &cb, &cb);
            let new_cb = R::diff_of_products(&cb, &cb, k, &pc) / cbd;
            let new_c = R::diff_of_products(&c, &c, &pb, &kinv) / cd;
            if strict {
                for v in [&new_c, &new_cb] {
                    if !(*v > zero) || *v > one {
                        return Err(Error::PrecisionExhausted {
                            m: nm as i64,
                            n: nn as i64,
                            detail: format!("entry {:e} outside (0, 1]", v.to_f64()),
                        });
                    }
                }
            }
            let i = octant_index(nm, nn);
            s.c[i] = new_c;
            s.cb[i] = new_cb;
        }
    }
    Ok(s)
}

/// Seeds with small relative perturbations of varying sign and size.
fn perturbed<R: Real>(seeds: &SeedSet<R>, rel: &R) -> SeedSet<R> {
    let bits = rel.bits();
    let factor = |i: usize| {
        let w = R::from_i64([3, -2, 5, -4, 1, -6][i % 6], bits);
        R::one(bits) + rel.clone() * w
    };
    let shake = |v: &[(R, R)], offset: usize| -> Vec<(R, R)> {
        v.iter()
            .enumerate()
            .map(|(i, (a, b))| {
                if i == 0 && offset == 0 {
                    (a.clone(), b.clone())
                } else {
                    (a.clone() * factor(2 * i + offset), b.clone() * factor(2 * i + offset + 1))
                }
            })
            .collect()
    };
    SeedSet {
        c10: seeds.c10.clone(),
        cbar01: seeds.cbar01.clone(),
        diag: shake(&seeds.diag, 0),
        next_diag: shake(&seeds.next_diag, 7),
    }
}

/// Sweep plus an estimate of the significant bits left in every entry.
///
/// A second sweep from seeds perturbed by 2^-(bits-4) measures how much the
/// recurrence amplifies errors at each entry; rounding errors injected along
/// the way are amplified the same way.
fn sweep<R: Real>(k: &R, radius: usize, seeds: &SeedSet<R>) -> Result<Sweep<R>> {
    let bits = k.bits();
    let main = fill(k, radius, seeds, true)?;
    let shift = bits.saturating_sub(4);
    let rel = R::pow2_neg(shift, bits);
    let shadow = fill(k, radius, &perturbed(seeds, &rel), false);
    let order = (1..=radius).flat_map(|d| (0..=radius - d).map(move |m| (m, m + d)));
    for (m, n) in order {
        let lost = match &shadow {
            Ok(sh) => {
                let i = octant_index(m, n);
                [(&main.c[i], &sh.c[i]), (&main.cb[i], &sh.cb[i])]
                    .into_iter()
                    .map(|(a, b)| {
                        let diff = (a.clone() - b.clone()).abs();
                        match (diff.log2_magnitude(), a.log2_magnitude()) {
                            (None, _) => 0.0,
                            (Some(e), Some(f)) => (e - f + shift as i64) as f64,
                            (Some(_), None) => f64::INFINITY,
                        }
                    })
                    .fold(0.0, f64::max)
            }
            Err(_) => f64::INFINITY,
        };
        let sig = bits as f64 - lost.max(0.0);
        if sig < 8.0 {
            return Err(Error::PrecisionExhausted {
                m: m as i64,
                n: n as i64,
                detail: format!("only {:.0} significant bits remain", sig.max(0.0)),
            });
        }
    }
    Ok(main)
}

fn residuals<R: Real>(k: &R, s: &Sweep<R>) -> ResidualReport {
    let bits = k.bits();
    let sk = k.sqrt();
    let two_kp1 = R::from_i64(2, bits) * (R::one(bits) + k.clone());
    let mut rep = ResidualReport::default();
    let r = s.radius as i64;
    for n in 0..r {
        for m in 0..=n {
            let c = |a: i64, b: i64| s.get(a, b).0.clone();
            let cb = |a: i64, b: i64| s.get(a, b).1.clone();
            let det = cb(m, n) * cb(m + 1, n + 1) - cb(m + 1, n) * cb(m, n + 1)
                - k.clone() * (c(m, n) * c(m + 1, n + 1) - c(m + 1, n) * c(m, n + 1));
            let det = det.abs().to_f64();
            if det > rep.determinant {
                rep.determinant = det;
                rep.determinant_at = (m as usize, n as usize);
            }
            if m == 0 && n == 0 {
                continue;
            }
            let lin = sk.clone()
                * (c(m + 1, n) * cb(m - 1, n)
                    + c(m - 1, n) * cb(m + 1, n)
                    + c(m, n + 1) * cb(m, n - 1)
                    + c(m, n - 1) * cb(m, n + 1))
                - two_kp1.clone() * c(m, n) * cb(m, n);
            let lin = lin.abs().to_f64();
            if lin > rep.linear {
                rep.linear = lin;
                rep.linear_at = (m as usize, n as usize);
            }
        }
    }
    rep
}

/// Precision of the seeds handed to a double-precision sweep.
const DOUBLE_SEED_BITS: usize = 128;

fn round_seeds(seeds: &SeedSet<Big>) -> SeedSet<f64> {
    let pair = |v: &[(Big, Big)]| v.iter().map(|(a, b)| (Real::to_f64(a), Real::to_f64(b))).collect();
    SeedSet {
        c10: Real::to_f64(&seeds.c10),
        cbar01: Real::to_f64(&seeds.cbar01),
        diag: pair(&seeds.diag),
        next_diag: pair(&seeds.next_diag),
    }
}

fn build_generic<R: Real>(k: &R, radius: usize, seeds: SeedSet<R>) -> Result<(Vec<f64>, Vec<f64>, ResidualReport)> {
    let s = sweep(k, radius, &seeds)?;
    let report = residuals(k, &s);
    Ok((
        s.c.iter().map(Real::to_f64).collect(),
        s.cb.iter().map(Real::to_f64).collect(),
        report,
    ))
}

/// Fills the octant 0 <= m <= n <= radius.
///
/// `precision_bits` at or below 53 selects double precision. Requests with
/// k > 1 are served from modulus 1/k with the two correlators exchanged.
pub fn build_table(k: f64, radius: usize, precision_bits: usize) -> Result<CorrelationTable> {
    if !(k > 0.0) || !k.is_finite() || k == 1.0 {
        return domain(format!("modulus k = {k} must be positive and different from 1"));
    }
    let (kb, swapped) = if k > 1.0 { (1.0 / k, true) } else { (k, false) };
    if 1.0 - kb < CRITICAL_MARGIN * (1.0 - 1e-9) {
        return domain(format!(
            "k = {k} is within {CRITICAL_MARGIN:e} of criticality; tables are meaningless there"
        ));
    }
    if radius < 2 {
        return domain(format!("radius {radius} must be at least 2"));
    }
    let modulus = Modulus::new(kb)?;
    // the next-diagonal march roughly doubles seed errors per step, so even the
    // double-precision sweep starts from seeds computed with extra bits
    let (bits, (primary, dual, report)) = if precision_bits <= DOUBLE_BITS {
        let seeds = round_seeds(&seed_set(&Big::from_f64(kb, DOUBLE_SEED_BITS), radius)?);
        (DOUBLE_BITS, build_generic(&kb, radius, seeds)?)
    } else {
        let kbig = Big::from_f64(kb, precision_bits);
        let seeds = seed_set(&kbig, radius)?;
        (precision_bits, build_generic(&kbig, radius, seeds)?)
    };
    let (primary, dual) = if swapped { (dual, primary) } else { (primary, dual) };
    Ok(CorrelationTable {
        modulus,
        radius,
        precision_bits: bits,
        residual_report: report,
        dual_swapped: swapped,
        primary,
        dual,
    })
}

impl CorrelationTable {
    /// The modulus the table answers for (1/k of the build modulus when swapped).
    pub fn requested_k(&self) -> f64 {
        if self.dual_swapped {
            1.0 / self.modulus.k
        } else {
            self.modulus.k
        }
    }

    /// Symmetry-reduced value at any (m, n) with |m|, |n| <= radius.
    pub fn lookup(&self, m: i64, n: i64, which: Correlator) -> Result<f64> {
        let (a, b) = (m.unsigned_abs() as usize, n.unsigned_abs() as usize);
        if a > self.radius || b > self.radius {
            return Err(Error::Range(format!("({m}, {n}) outside table radius {}", self.radius)));
        }
        let i = octant_index(a, b);
        Ok(match which {
            Correlator::Primary => self.primary[i],
            Correlator::Dual => self.dual[i],
        })
    }

    pub fn c(&self, m: i64, n: i64) -> Result<f64> {
        self.lookup(m, n, Correlator::Primary)
    }

    pub fn cbar(&self, m: i64, n: i64) -> Result<f64> {
        self.lookup(m, n, Correlator::Dual)
    }

    /// A copy with one stored value replaced, for sensitivity checks of verifiers.
    pub fn with_entry(mut self, m: usize, n: usize, which: Correlator, value: f64) -> Self {
        let i = octant_index(m, n);
        match which {
            Correlator::Primary => self.primary[i] = value,
            Correlator::Dual => self.dual[i] = value,
        }
        self
    }

    /// Octant points ordered by superdiagonal, then by m.
    pub fn octant_points(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..=self.radius).flat_map(move |d| (0..=self.radius - d).map(move |m| (m, m + d)))
    }

    /// CSV with header `m,n,C,Cbar`.
    pub fn write_csv(&self, out: &mut (impl Write + ?Sized)) -> std::io::Result<()> {
        writeln!(out, "m,n,C,Cbar")?;
        for (m, n) in self.octant_points() {
            let i = octant_index(m, n);
            writeln!(out, "{m},{n},{:.16e},{:.16e}", self.primary[i], self.dual[i])?;
        }
        Ok(())
    }
}
