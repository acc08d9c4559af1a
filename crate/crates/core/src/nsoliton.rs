//! Exact N-soliton solutions of mKdV from the residue linear system, and the
//! midpoint sampling that discretizes a gas into finitely many solitons.

use crate::error::{Error, Result};
use crate::fredholm::{q_pair, DiscretizedOperator};
use crate::scenario::GasSpec;
use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;

/// Poles `iκ_j` with norming constants `χ_j = σ_j e^{log|χ_j|}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolitonSet {
    pub kappas: Vec<f64>,
    pub signs: Vec<f64>,
    pub log_abs_chis: Vec<f64>,
}

impl SolitonSet {
    pub fn new(kappas: Vec<f64>, chis: Vec<f64>) -> Result<Self> {
        if chis.iter().any(|c| *c == 0.0 || !c.is_finite()) {
            return Err(Error::Invalid("norming constants must be finite and nonzero".into()));
        }
        let signs = chis.iter().map(|c| c.signum()).collect();
        let logs = chis.iter().map(|c| c.abs().ln()).collect();
        Self::from_log(kappas, signs, logs)
    }

    pub fn from_log(kappas: Vec<f64>, signs: Vec<f64>, log_abs_chis: Vec<f64>) -> Result<Self> {
        if kappas.len() != signs.len() || kappas.len() != log_abs_chis.len() {
            return Err(Error::Invalid("kappas and chis differ in length".into()));
        }
        if kappas.iter().any(|k| !(*k > 0.0) || !k.is_finite()) {
            return Err(Error::Invalid("kappas must be positive".into()));
        }
        let mut sorted = kappas.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("kappas must be distinct".into()));
        }
        if signs.iter().any(|s| *s != 1.0 && *s != -1.0) {
            return Err(Error::Invalid("signs must be +1 or -1".into()));
        }
        Ok(SolitonSet { kappas, signs, log_abs_chis })
    }

    pub fn len(&self) -> usize {
        self.kappas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kappas.is_empty()
    }

    fn uniform_sign(&self) -> Option<f64> {
        let s = *self.signs.first()?;
        self.signs.iter().all(|v| *v == s).then_some(s)
    }

    /// `log a_j = ½ log|χ_j| + xκ_j − 4tκ_j³`.
    pub fn log_amplitudes(&self, x: f64, t: f64) -> Vec<f64> {
        self.kappas
            .iter()
            .zip(&self.log_abs_chis)
            .map(|(k, l)| 0.5 * l + x * k - 4.0 * t * k * k * k)
            .collect()
    }
}

/// `A_{jℓ} = σ_j a_j a_ℓ/(κ_j+κ_ℓ)` at a fixed `(x, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolitonMatrix {
    pub a: DMatrix<f64>,
    pub x: f64,
    pub t: f64,
}

pub fn soliton_matrix(s: &SolitonSet, x: f64, t: f64, max_exponent: f64) -> Result<SolitonMatrix> {
    let n = s.len();
    for j in 0..n {
        let k = s.kappas[j];
        let e = (x * k - 4.0 * t * k * k * k).abs() + 0.5 * s.log_abs_chis[j].abs();
        if e > max_exponent {
            return Err(Error::Range(format!(
                "soliton {j}: exponent {e:.1} exceeds the guard {max_exponent} at (x, t) = ({x}, {t})"
            )));
        }
    }
    let la = s.log_amplitudes(x, t);
    let a = DMatrix::from_fn(n, n, |j, l| s.signs[j] * (la[j] + la[l]).exp() / (s.kappas[j] + s.kappas[l]));
    Ok(SolitonMatrix { a, x, t })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// `−2Σβ_j` from the dense 2N×2N residue system; loses accuracy as `cond(I + A²)` grows.
    Sum,
    /// `2 tr((I+A²)⁻¹ ∂ₓA)`, evaluated on the factored Cauchy core.
    LogDet,
    /// `∂ₓ² log det(I+A²)`, returning `q²`.
    Squared,
}

/// `q_N(x, t)` (or `q_N²` for [`Method::Squared`]).
pub fn q_exact(s: &SolitonSet, x: f64, t: f64, method: Method) -> Result<f64> {
    q_exact_guarded(s, x, t, method, 250.0)
}

pub fn q_exact_guarded(s: &SolitonSet, x: f64, t: f64, method: Method, max_exponent: f64) -> Result<f64> {
    if s.is_empty() {
        return Ok(0.0);
    }
    let m = soliton_matrix(s, x, t, max_exponent)?;
    match method {
        Method::Sum => q_sum(s, &m),
        Method::LogDet | Method::Squared => {
            if s.uniform_sign().is_none() {
                return Err(Error::Invalid("determinant formulas need norming constants of one sign".into()));
            }
            // the dense I + A² is hopelessly conditioned once the amplitudes grow, so
            // the trace identities go through the factored Cauchy core instead
            let log_a = s.log_amplitudes(m.x, m.t);
            let max_log_entry = s
                .kappas
                .iter()
                .zip(&log_a)
                .map(|(u, la)| 2.0 * la - (2.0 * u).ln())
                .fold(f64::NEG_INFINITY, f64::max);
            let op = DiscretizedOperator {
                nodes: s.kappas.clone(),
                weights: s.log_abs_chis.iter().map(|l| l.exp()).collect(),
                log_a,
                signs: s.signs.clone(),
                pole_index: None,
                max_log_entry,
            };
            let (q, q2) = q_pair(&op)?;
            Ok(if method == Method::LogDet { q } else { q2 })
        }
    }
}

fn q_sum(s: &SolitonSet, m: &SolitonMatrix) -> Result<f64> {
    let n = s.len();
    let la = s.log_amplitudes(m.x, m.t);
    let mut big = DMatrix::<f64>::identity(2 * n, 2 * n);
    big.view_mut((0, n), (n, n)).copy_from(&m.a);
    big.view_mut((n, 0), (n, n)).copy_from(&(-&m.a));
    let mut rhs = DVector::<f64>::zeros(2 * n);
    for j in 0..n {
        rhs[n + j] = -s.signs[j] * la[j].exp();
    }
    let sol = big
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::LinearAlgebra("residue system is singular".into()))?;
    // β_j = √|χ_j| e^{−iθ_j} β̃_j
    Ok(-2.0 * (0..n).map(|j| la[j].exp() * sol[n + j]).sum::<f64>())
}

/// `q = 2 tr(M⁻¹A′)` and `q² = tr(M⁻¹M″) − tr(M⁻¹M′M⁻¹M′)` with `M = I + A²`.
pub(crate) fn trace_identities(a: &DMatrix<f64>, u: &[f64]) -> Result<(f64, f64)> {
    let n = a.nrows();
    let d1 = DMatrix::from_fn(n, n, |j, l| (u[j] + u[l]) * a[(j, l)]);
    let d2 = DMatrix::from_fn(n, n, |j, l| (u[j] + u[l]).powi(2) * a[(j, l)]);
    let m = DMatrix::<f64>::identity(n, n) + a * a;
    let lu = m.lu();
    let solve = |b: &DMatrix<f64>| lu.solve(b).ok_or_else(|| Error::LinearAlgebra("I + A^2 is singular".into()));
    let q = 2.0 * solve(&d1)?.trace();
    let m1 = a * &d1 + &d1 * a;
    let m2 = 2.0 * &d1 * &d1 + a * &d2 + &d2 * a;
    let x1 = solve(&m1)?;
    let q2 = solve(&m2)?.trace() - (&x1 * &x1).trace();
    Ok((q, q2))
}

/// Midpoint sampling of the uniform density: `κ_j = η₁ + (j−½)(η₂−η₁)/N`,
/// `χ_j = (η₂−η₁) r(iκ_j)/(2πN)`.
pub fn sample_gas_solitons(n: usize, gas: &GasSpec) -> Result<SolitonSet> {
    if n == 0 {
        return Err(Error::Invalid("need at least one soliton".into()));
    }
    let h = (gas.eta2 - gas.eta1) / n as f64;
    let kappas: Vec<f64> = (0..n).map(|j| gas.eta1 + (j as f64 + 0.5) * h).collect();
    let logs = kappas.iter().map(|&k| (h * gas.r.eval(k) / (2.0 * PI)).ln()).collect();
    SolitonSet::from_log(kappas, vec![1.0; n], logs)
}

/// Free one-soliton profile `2σκ sech(2κ(x − 4κ²t − x₀))`.
pub fn one_soliton(kappa: f64, x0: f64, sigma: f64, x: f64, t: f64) -> f64 {
    2.0 * sigma * kappa / (2.0 * kappa * (x - 4.0 * kappa * kappa * t - x0)).cosh()
}
