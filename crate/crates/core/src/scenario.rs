//! Problem instances: gas band, reflection amplitude, trial soliton, region classification.

use crate::error::{Error, Result};
use crate::modulation;
use num_complex::Complex64;

/// Reflection amplitude `r(u) > 0` on the band `[η₁, η₂]`.
#[derive(Debug, Clone, PartialEq)]
pub enum Reflection {
    Constant(f64),
    /// Monotone cubic (Fritsch–Carlson) interpolation through `(u, r(u))` pairs.
    Table { u: Vec<f64>, r: Vec<f64>, slopes: Vec<f64> },
}

impl Reflection {
    pub fn constant(value: f64) -> Result<Self> {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::Invalid(format!("r must be positive and finite, got {value}")));
        }
        Ok(Reflection::Constant(value))
    }

    pub fn table(u: Vec<f64>, r: Vec<f64>) -> Result<Self> {
        if u.len() != r.len() || u.len() < 2 {
            return Err(Error::Invalid("reflection table needs at least two (u, r) pairs".into()));
        }
        if u.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Invalid("reflection table abscissae must increase strictly".into()));
        }
        if r.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
            return Err(Error::Invalid("reflection table values must be positive and finite".into()));
        }
        let n = u.len();
        let d: Vec<f64> = (0..n - 1).map(|i| (r[i + 1] - r[i]) / (u[i + 1] - u[i])).collect();
        let mut m = vec![0.0; n];
        m[0] = d[0];
        m[n - 1] = d[n - 2];
        for i in 1..n - 1 {
            m[i] = if d[i - 1] * d[i] <= 0.0 { 0.0 } else { 0.5 * (d[i - 1] + d[i]) };
        }
        for i in 0..n - 1 {
            if d[i] == 0.0 {
                m[i] = 0.0;
                m[i + 1] = 0.0;
                continue;
            }
            let a = m[i] / d[i];
            let b = m[i + 1] / d[i];
            let s = a * a + b * b;
            if s > 9.0 {
                let tau = 3.0 / s.sqrt();
                m[i] = tau * a * d[i];
                m[i + 1] = tau * b * d[i];
            }
        }
        Ok(Reflection::Table { u, r, slopes: m })
    }

    /// `r(u)`; tabulated data is held constant outside its range.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Reflection::Constant(v) => *v,
            Reflection::Table { u, r, slopes } => {
                let n = u.len();
                if x <= u[0] {
                    return r[0];
                }
                if x >= u[n - 1] {
                    return r[n - 1];
                }
                let i = match u.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
                    Ok(i) => return r[i],
                    Err(i) => i - 1,
                };
                let h = u[i + 1] - u[i];
                let s = (x - u[i]) / h;
                let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
                let h10 = s * (1.0 - s) * (1.0 - s);
                let h01 = s * s * (3.0 - 2.0 * s);
                let h11 = s * s * (s - 1.0);
                h00 * r[i] + h10 * h * slopes[i] + h01 * r[i + 1] + h11 * h * slopes[i + 1]
            }
        }
    }

    pub fn log_r(&self, u: f64) -> f64 {
        self.eval(u).ln()
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Reflection::Constant(v) if *v == 1.0)
    }
}

/// Spectral band `[iη₁, iη₂]` and reflection amplitude of the gas.
#[derive(Debug, Clone, PartialEq)]
pub struct GasSpec {
    pub eta1: f64,
    pub eta2: f64,
    pub r: Reflection,
}

impl GasSpec {
    pub fn new(eta1: f64, eta2: f64, r: Reflection) -> Result<Self> {
        if !(eta1 > 0.0 && eta2 > eta1) || !eta2.is_finite() {
            return Err(Error::Invalid(format!("need 0 < eta1 < eta2, got eta1 = {eta1}, eta2 = {eta2}")));
        }
        Ok(GasSpec { eta1, eta2, r })
    }

    pub fn uniform(eta1: f64, eta2: f64) -> Result<Self> {
        Self::new(eta1, eta2, Reflection::Constant(1.0))
    }
}

/// How a user-supplied `x₀` is turned into the norming constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChiConvention {
    /// `χ = 2κ₀σ e^{−2κ₀x₀}`
    #[default]
    AsWritten,
    /// `χ = 2κ₀σ e^{+2κ₀x₀}`
    NegatedX0,
}

/// The trial soliton: pole `iκ₀` and norming constant `χ`, stored as `σ` and `log|χ|`
/// because `|χ|` routinely leaves the double range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSolitonSpec {
    pub kappa0: f64,
    /// Position parameter as supplied by the user.
    pub x0: f64,
    pub sigma: f64,
    pub log_abs_chi: f64,
}

impl TrialSolitonSpec {
    pub fn from_x0(kappa0: f64, x0: f64, sigma: f64, convention: ChiConvention) -> Result<Self> {
        check_kappa_sigma(kappa0, sigma)?;
        let sgn = match convention {
            ChiConvention::AsWritten => -1.0,
            ChiConvention::NegatedX0 => 1.0,
        };
        let log_abs_chi = (2.0 * kappa0).ln() + sgn * 2.0 * kappa0 * x0;
        Ok(TrialSolitonSpec { kappa0, x0, sigma, log_abs_chi })
    }

    /// Builds the soliton from an explicit `(σ, log|χ|)` pair; `x0` is set to the position
    /// parameter it implies.
    pub fn from_log_chi(kappa0: f64, sigma: f64, log_abs_chi: f64) -> Result<Self> {
        check_kappa_sigma(kappa0, sigma)?;
        if !log_abs_chi.is_finite() {
            return Err(Error::Invalid("log|chi| must be finite".into()));
        }
        let x0 = ((2.0 * kappa0).ln() - log_abs_chi) / (2.0 * kappa0);
        Ok(TrialSolitonSpec { kappa0, x0, sigma, log_abs_chi })
    }

    pub fn from_chi(kappa0: f64, chi: f64) -> Result<Self> {
        if chi == 0.0 || !chi.is_finite() {
            return Err(Error::Invalid("chi must be finite and nonzero".into()));
        }
        Self::from_log_chi(kappa0, chi.signum(), chi.abs().ln())
    }

    /// `χ` itself (may overflow to ±∞ or underflow to 0).
    pub fn chi(&self) -> f64 {
        self.sigma * self.log_abs_chi.exp()
    }

    /// Centre of the free soliton at `t = 0`: `(1/2κ₀) log(2κ₀/|χ|)`.
    pub fn position(&self) -> f64 {
        ((2.0 * self.kappa0).ln() - self.log_abs_chi) / (2.0 * self.kappa0)
    }
}

fn check_kappa_sigma(kappa0: f64, sigma: f64) -> Result<()> {
    if !(kappa0 > 0.0) || !kappa0.is_finite() {
        return Err(Error::Invalid(format!("kappa0 must be positive, got {kappa0}")));
    }
    if sigma != 1.0 && sigma != -1.0 {
        return Err(Error::Invalid(format!("sigma must be +1 or -1, got {sigma}")));
    }
    Ok(())
}

/// A gas (optionally absent, for pole-only checks) plus an optional trial soliton.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub gas: Option<GasSpec>,
    pub soliton: Option<TrialSolitonSpec>,
    pub chi_sign_convention: ChiConvention,
}

impl Scenario {
    pub fn new(gas: Option<GasSpec>, soliton: Option<TrialSolitonSpec>, conv: ChiConvention) -> Result<Self> {
        if let (Some(g), Some(s)) = (&gas, &soliton) {
            if !(s.kappa0 > g.eta2) {
                return Err(Error::Invalid(format!(
                    "kappa0 = {} must exceed eta2 = {}",
                    s.kappa0, g.eta2
                )));
            }
        }
        Ok(Scenario { gas, soliton, chi_sign_convention: conv })
    }

    pub fn gas_only(gas: GasSpec) -> Self {
        Scenario { gas: Some(gas), soliton: None, chi_sign_convention: ChiConvention::AsWritten }
    }

    pub fn gas(&self) -> Result<&GasSpec> {
        self.gas.as_ref().ok_or_else(|| Error::Invalid("scenario has no gas".into()))
    }
}

/// Tolerances and discretization sizes shared by the solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Numerics {
    pub band_nodes: usize,
    pub fredholm_nodes: usize,
    pub tol_quad: f64,
    pub tol_root: f64,
    pub max_exponent: f64,
}

impl Default for Numerics {
    fn default() -> Self {
        Numerics { band_nodes: 256, fredholm_nodes: 200, tol_quad: 1e-10, tol_root: 1e-12, max_exponent: 250.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    Left,
    Modulated,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionTag {
    pub sector: Sector,
    pub side: Side,
}

/// Half-width in `v = x/t` of the excluded bands around `4η₁²` and `v₂`.
pub const TRANSITION_HALF_WIDTH: f64 = 1e-8;

/// `χ = 2κ₀σ e^{−2κ₀x₀}`.
pub fn norming_constant(kappa0: f64, x0: f64, sigma: f64) -> Result<f64> {
    check_kappa_sigma(kappa0, sigma)?;
    if (2.0 * kappa0 * x0).abs() > 700.0 {
        return Err(Error::Range(format!(
            "|2 kappa0 x0| = {} exceeds 700; use the log-space representation",
            (2.0 * kappa0 * x0).abs()
        )));
    }
    Ok(2.0 * kappa0 * sigma * (-2.0 * kappa0 * x0).exp())
}

/// Inverse of [`norming_constant`] up to sign: `x₀ = (1/2κ₀) log(2κ₀/|χ|)`.
pub fn x0_of(kappa0: f64, chi: f64) -> f64 {
    (2.0 * kappa0 / chi.abs()).ln() / (2.0 * kappa0)
}

/// `θ(k; x, t) = 4tk³ + xk`.
pub fn bare_phase(k: Complex64, x: f64, t: f64) -> Complex64 {
    4.0 * t * k * k * k + x * k
}

/// Sector only (no soliton side).
pub fn classify_sector(gas: &GasSpec, x: f64, t: f64) -> Result<Sector> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("t = {t} must be positive")));
    }
    let v = x / t;
    let v1 = 4.0 * gas.eta1 * gas.eta1;
    let v2 = modulation::front_speed_v2(gas)?;
    if (v - v1).abs() <= TRANSITION_HALF_WIDTH || (v - v2).abs() <= TRANSITION_HALF_WIDTH {
        return Err(Error::Transition(format!("x/t = {v} at a sector boundary")));
    }
    Ok(if v < v1 {
        Sector::Left
    } else if v < v2 {
        Sector::Modulated
    } else {
        Sector::Right
    })
}

/// `log|χ/2κ₀| + 2 Im φ(iκ₀; x, t)`: positive ahead of the soliton (side plus).
pub fn side_criterion(scn: &Scenario, sector: Sector, x: f64, t: f64) -> Result<f64> {
    let sol = scn
        .soliton
        .ok_or_else(|| Error::Invalid("side criterion needs a trial soliton".into()))?;
    let k0 = sol.kappa0;
    let im_phi = match sector {
        Sector::Left => x * k0 - 4.0 * t * k0 * k0 * k0,
        _ => {
            let band = modulation::BandParams::at(scn.gas()?, x / t)?;
            modulation::phi_at_pole(k0, x, t, &band)?.im
        }
    };
    Ok(sol.log_abs_chi - (2.0 * k0).ln() + 2.0 * im_phi)
}

/// Sector from `x/t` and, with a trial soliton, the side from [`side_criterion`].
pub fn classify_region(scn: &Scenario, x: f64, t: f64) -> Result<RegionTag> {
    let sector = classify_sector(scn.gas()?, x, t)?;
    let side = match scn.soliton {
        None => Side::None,
        Some(_) => {
            let c = side_criterion(scn, sector, x, t)?;
            if c > 0.0 {
                Side::Plus
            } else if c < 0.0 {
                Side::Minus
            } else {
                return Err(Error::Transition(format!("side criterion vanishes at (x, t) = ({x}, {t})")));
            }
        }
    };
    Ok(RegionTag { sector, side })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norming_constant_examples() {
        assert_eq!(norming_constant(1.0, 0.0, 1.0).unwrap(), 2.0);
        let v = norming_constant(0.5, -1.0, -1.0).unwrap();
        assert!((v + std::f64::consts::E).abs() < 1e-15);
        assert!(norming_constant(2.0, 200.0, 1.0).is_err());
        let s = TrialSolitonSpec::from_x0(2.0, 200.0, 1.0, ChiConvention::AsWritten).unwrap();
        assert!((s.log_abs_chi - (4f64.ln() - 800.0)).abs() < 1e-12);
        let s = TrialSolitonSpec::from_x0(2.0, -200.0, 1.0, ChiConvention::NegatedX0).unwrap();
        assert!((s.log_abs_chi - (4f64.ln() - 800.0)).abs() < 1e-12);
        assert!((s.position() - 200.0).abs() < 1e-12);
    }

    #[test]
    fn bare_phase_examples() {
        assert_eq!(bare_phase(Complex64::new(0.0, 0.0), 5.0, 3.0), Complex64::new(0.0, 0.0));
        let v = bare_phase(Complex64::i(), 1.0, 1.0);
        assert!((v - Complex64::new(0.0, -3.0)).norm() < 1e-15);
    }

    #[test]
    fn sectors() {
        let g = GasSpec::uniform(0.25, 1.0).unwrap();
        assert_eq!(classify_sector(&g, 0.1, 1.0).unwrap(), Sector::Left);
        assert_eq!(classify_sector(&g, 7.0, 1.0).unwrap(), Sector::Right);
        assert_eq!(classify_sector(&g, 3.0, 1.0).unwrap(), Sector::Modulated);
        assert!(matches!(classify_sector(&g, 0.25, 1.0), Err(Error::Transition(_))));
    }

    #[test]
    fn monotone_table() {
        let r = Reflection::table(vec![0.0, 1.0, 2.0, 3.0], vec![1.0, 2.0, 2.0, 5.0]).unwrap();
        assert_eq!(r.eval(1.0), 2.0);
        let mut prev = r.eval(0.0);
        for i in 1..=300 {
            let v = r.eval(i as f64 * 0.01);
            assert!(v >= prev - 1e-15);
            prev = v;
        }
        assert!(Reflection::table(vec![0.0, 1.0], vec![1.0, -1.0]).is_err());
    }

    #[test]
    fn kappa_must_exceed_band() {
        let g = GasSpec::uniform(0.25, 1.0).unwrap();
        let s = TrialSolitonSpec::from_x0(0.9, 0.0, 1.0, ChiConvention::AsWritten).unwrap();
        assert!(Scenario::new(Some(g), Some(s), ChiConvention::AsWritten).is_err());
    }
}
