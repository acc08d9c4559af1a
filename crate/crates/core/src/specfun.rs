//! Complete elliptic integrals, Jacobi elliptic functions and the third theta function.
//!
//! All elliptic routines use the parameter convention `m` (not the modulus `k = √m`):
//!
//! ```text
//! K(m) = ∫₀^{π/2} dθ / √(1 − m sin²θ)
//! E(m) = ∫₀^{π/2} √(1 − m sin²θ) dθ
//! Π(n, m) = ∫₀^{π/2} dθ / ((1 − n sin²θ) √(1 − m sin²θ))
//! ```

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

const AGM_MAX_ITER: usize = 64;

fn check_m(m: f64) -> Result<()> {
    if !(0.0..1.0).contains(&m) || !m.is_finite() {
        return Err(Error::Domain(format!("elliptic parameter m = {m} outside [0, 1)")));
    }
    Ok(())
}

/// Complete elliptic integrals `(K(m), E(m))` by the arithmetic-geometric mean.
pub fn complete_elliptic(m: f64) -> Result<(f64, f64)> {
    check_m(m)?;
    if m == 0.0 {
        return Ok((FRAC_PI_2, FRAC_PI_2));
    }
    let mut a = 1.0_f64;
    let mut b = (1.0 - m).sqrt();
    let mut c = m.sqrt();
    let mut sum = 0.5 * c * c;
    let mut pow2 = 0.5;
    for _ in 0..AGM_MAX_ITER {
        if c.abs() <= f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        c = 0.5 * (a - b);
        a = an;
        b = bn;
        pow2 *= 2.0;
        sum += pow2 * c * c;
    }
    let k = PI / (2.0 * a);
    Ok((k, k * (1.0 - sum)))
}

/// `K(m)` alone.
pub fn ellip_k(m: f64) -> Result<f64> {
    complete_elliptic(m).map(|(k, _)| k)
}

/// `E(m)` alone.
pub fn ellip_e(m: f64) -> Result<f64> {
    complete_elliptic(m).map(|(_, e)| e)
}

/// Carlson's symmetric integral `R_F(x, y, z)`.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + z) / 3.0;
    let mut a = a0;
    let q = (3.0 * f64::EPSILON).powf(-1.0 / 6.0)
        * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let mut pow4 = 1.0;
    while q >= a.abs() * pow4 && pow4 < 1e60 {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sy * sz + sz * sx;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        a = 0.25 * (a + lambda);
        pow4 *= 4.0;
    }
    let xx = (a - x) / a;
    let yy = (a - y) / a;
    let zz = -xx - yy;
    let e2 = xx * yy - zz * zz;
    let e3 = xx * yy * zz;
    (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / a.sqrt()
}

fn rc_one_plus(e: f64) -> f64 {
    // R_C(1, 1 + e)
    if e.abs() < 1e-6 {
        1.0 - e / 3.0 + e * e / 5.0 - e * e * e / 7.0
    } else if e > 0.0 {
        let s = e.sqrt();
        s.atan() / s
    } else {
        let s = (-e).sqrt();
        s.atanh() / s
    }
}

/// Carlson's symmetric integral `R_J(x, y, z, p)` for `p > 0`.
pub fn carlson_rj(x: f64, y: f64, z: f64, p: f64) -> f64 {
    let (mut x, mut y, mut z, mut p) = (x, y, z, p);
    let a0 = (x + y + z + 2.0 * p) / 5.0;
    let delta = (p - x) * (p - y) * (p - z);
    let mut a = a0;
    let q = (0.25 * f64::EPSILON).powf(-1.0 / 6.0)
        * (a0 - x)
            .abs()
            .max((a0 - y).abs())
            .max((a0 - z).abs())
            .max((a0 - p).abs());
    let mut pow4 = 1.0_f64;
    let mut sum = 0.0;
    while q >= a.abs() * pow4 && pow4 < 1e60 {
        let (sx, sy, sz, sp) = (x.sqrt(), y.sqrt(), z.sqrt(), p.sqrt());
        let lambda = sx * sy + sy * sz + sz * sx;
        let d = (sp + sx) * (sp + sy) * (sp + sz);
        let e = delta / (pow4 * pow4 * pow4 * d * d);
        sum += rc_one_plus(e) / (pow4 * d);
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        p = 0.25 * (p + lambda);
        a = 0.25 * (a + lambda);
        pow4 *= 4.0;
    }
    let xx = (a - x) / a;
    let yy = (a - y) / a;
    let zz = (a - z) / a;
    let pp = -(xx + yy + zz) / 2.0;
    let e2 = xx * yy + xx * zz + yy * zz - 3.0 * pp * pp;
    let e3 = xx * yy * zz + 2.0 * e2 * pp + 4.0 * pp * pp * pp;
    let e4 = (2.0 * xx * yy * zz + e2 * pp + 3.0 * pp * pp * pp) * pp;
    let e5 = xx * yy * zz * pp * pp;
    let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
        - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    series / (pow4 * a * a.sqrt()) + 6.0 * sum
}

/// Complete elliptic integral of the third kind `Π(n, m)` for `n < 1`.
pub fn complete_pi(n: f64, m: f64) -> Result<f64> {
    check_m(m)?;
    if !(n < 1.0) || !n.is_finite() {
        return Err(Error::Domain(format!("characteristic n = {n} must be < 1")));
    }
    let y = 1.0 - m;
    let rf = carlson_rf(0.0, y, 1.0);
    if n == 0.0 {
        return Ok(rf);
    }
    Ok(rf + n / 3.0 * carlson_rj(0.0, y, 1.0, 1.0 - n))
}

/// Jacobi elliptic functions `(sn, cn, dn)` at real argument, by descending Landen transformation.
pub fn jacobi_elliptic(z: f64, m: f64) -> Result<(f64, f64, f64)> {
    check_m(m)?;
    if !z.is_finite() {
        return Err(Error::Domain("non-finite argument".into()));
    }
    if m == 0.0 {
        return Ok((z.sin(), z.cos(), 1.0));
    }
    let mut a = [0.0_f64; AGM_MAX_ITER];
    let mut c = [0.0_f64; AGM_MAX_ITER];
    a[0] = 1.0;
    let mut b = (1.0 - m).sqrt();
    c[0] = m.sqrt();
    let mut n = 0;
    while c[n].abs() > f64::EPSILON * a[n] && n + 1 < AGM_MAX_ITER {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        n += 1;
    }
    let mut phi = 2f64.powi(n as i32) * a[n] * z;
    for j in (1..=n).rev() {
        phi = 0.5 * (phi + (c[j] / a[j] * phi.sin()).asin());
    }
    let (s, cc) = phi.sin_cos();
    let dn = ((1.0 - m) + m * cc * cc).sqrt();
    Ok((s, cc, dn))
}

/// `dn(z, m)`.
pub fn jacobi_dn(z: f64, m: f64) -> Result<f64> {
    jacobi_elliptic(z, m).map(|t| t.2)
}

/// Third Jacobi theta function `θ₃(z; τ) = Σ exp(2πinz + πin²τ)`.
///
/// The symmetric sum is extended until the terms drop below `10⁻¹⁷` of the partial
/// sum, past the location of the largest term (which moves with `Im z`).
pub fn theta3(z: Complex64, tau: Complex64) -> Result<Complex64> {
    if !(tau.im > 0.0) {
        return Err(Error::Domain(format!("Im τ = {} must be positive", tau.im)));
    }
    let base = (40.0 / (PI * tau.im)).sqrt().ceil() as i64 + 2;
    let n_peak = (z.im.abs() / tau.im).ceil() as i64;
    let i = Complex64::i();
    let mut sum = Complex64::new(1.0, 0.0);
    let mut n: i64 = 1;
    loop {
        let nf = n as f64;
        let quad = i * PI * nf * nf * tau;
        let tp = (quad + 2.0 * PI * i * nf * z).exp();
        let tm = (quad - 2.0 * PI * i * nf * z).exp();
        sum += tp + tm;
        if n >= base + n_peak && (tp.norm() + tm.norm()) <= 1e-17 * sum.norm() {
            break;
        }
        if n > 100_000 {
            return Err(Error::Accuracy("theta series failed to converge".into()));
        }
        n += 1;
    }
    Ok(sum)
}

/// `θ₃` at real `z` with purely imaginary `τ = i·tau_im`, returned as a real number.
pub fn theta3_real(z: f64, tau_im: f64) -> Result<f64> {
    theta3(Complex64::new(z, 0.0), Complex64::new(0.0, tau_im)).map(|v| v.re)
}
