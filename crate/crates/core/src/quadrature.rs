//! Quadrature rules: Gauss–Legendre, Gauss–Chebyshev, adaptive Gauss–Kronrod.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes in increasing order.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Gauss–Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_on(a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let h = 0.5 * (b - a);
    let c = 0.5 * (b + a);
    (x.iter().map(|&t| c + h * t).collect(), w.iter().map(|&v| h * v).collect())
}

/// Nodes of the `n`-point Gauss–Chebyshev rule of the first kind, as angles `ψ_i = (i+½)π/n`.
pub fn chebyshev_angles(n: usize) -> Vec<f64> {
    (0..n).map(|i| (i as f64 + 0.5) * PI / n as f64).collect()
}

const GK_X: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const GK_WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * GK_WK[7];
    let mut g = fc * GK_WG[3];
    for j in 0..7 {
        let dx = h * GK_X[j];
        let s = f(c - dx) + f(c + dx);
        k += s * GK_WK[j];
        if j % 2 == 1 {
            g += s * GK_WG[j / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

/// Adaptive Gauss–Kronrod (7/15) integration of a complex-valued function on `[a, b]`.
pub fn integrate_adaptive<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Result<Complex64> {
    let mut stack = vec![(a, b, 0u32)];
    let mut total = Complex64::new(0.0, 0.0);
    let whole = gk15(&f, a, b).0.norm().max(1e-300);
    let mut evals = 0usize;
    while let Some((lo, hi, depth)) = stack.pop() {
        let (v, err) = gk15(&f, lo, hi);
        evals += 15;
        let span = (hi - lo).abs() / (b - a).abs();
        if err <= tol * whole.max(v.norm()) * span.max(1e-3) || err < 1e-15 * whole || depth > 50 {
            if depth > 50 && err > tol * whole {
                return Err(Error::Accuracy(format!("adaptive quadrature on [{a}, {b}] stalled")));
            }
            total += v;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
        if evals > 2_000_000 {
            return Err(Error::Accuracy("adaptive quadrature exceeded its budget".into()));
        }
    }
    Ok(total)
}

/// Real-valued convenience wrapper around [`integrate_adaptive`].
pub fn integrate_adaptive_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    integrate_adaptive(|x| Complex64::new(f(x), 0.0), a, b, tol).map(|v| v.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials() {
        for n in [1usize, 2, 5, 16, 64] {
            let (x, w) = gauss_legendre(n);
            let deg = 2 * n - 1;
            let s: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32 - 1)).sum();
            let exact = if (deg - 1) % 2 == 0 { 2.0 / deg as f64 } else { 0.0 };
            assert!((s - exact).abs() < 1e-13, "n={n} s={s}");
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
        }
    }

    #[test]
    fn adaptive_handles_peaks() {
        let v = integrate_adaptive_real(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-12).unwrap();
        let exact = 2.0 * (1.0 / 1e-2f64) * (1.0 / 1e-2f64).atan();
        assert!(((v - exact) / exact).abs() < 1e-10);
    }
}
