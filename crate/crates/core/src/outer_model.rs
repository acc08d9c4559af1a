//! Leading-order asymptotic solution: the theta-function outer matrix, the elliptic
//! background and the Darboux dressing by the trial soliton.

use crate::error::{Error, Result};
use crate::modulation::{
    abel_a, abel_band, abel_on_axis, f_exponent, phase_state, phi_at_pole, BandParams, CutSide, PhaseState,
};
use crate::nsoliton::one_soliton;
use crate::scenario::{classify_region, Numerics, Scenario, Sector, Side};
use crate::specfun::{jacobi_dn, theta3};
use nalgebra::Matrix2;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Offset used to realise the two boundary values on the band.
const SIDE_OFFSET: f64 = 1e-200;

/// `γ(k) = ((k−iα)/(k−iη₁))^{1/4} ((k+iη₁)/(k+iα))^{1/4}` with `γ → 1` at infinity.
///
/// With a `side`, `k = iu` must lie on the upper band and the boundary value from that
/// side is returned.
pub fn gamma_quarter(k: Complex64, band: &BandParams, side: CutSide) -> Result<Complex64> {
    let i = Complex64::i();
    let on_cut = k.re == 0.0 && k.im.abs() >= band.eta1 && k.im.abs() <= band.alpha;
    let k = match side {
        CutSide::Off if on_cut => {
            return Err(Error::Domain(format!("gamma evaluated on the cut at k = {k} without a side")));
        }
        CutSide::Off => k,
        _ if !(k.re == 0.0 && k.im > band.eta1 && k.im < band.alpha) => {
            return Err(Error::Domain(format!("boundary value of gamma requested off the upper band at k = {k}")));
        }
        CutSide::Plus => Complex64::new(-SIDE_OFFSET, k.im),
        CutSide::Minus => Complex64::new(SIDE_OFFSET, k.im),
    };
    let r1 = (k - i * band.alpha) / (k - i * band.eta1);
    let r2 = (k + i * band.eta1) / (k + i * band.alpha);
    Ok(r1.powf(0.25) * r2.powf(0.25))
}

fn abel_at(k: Complex64, band: &BandParams, side: CutSide) -> Result<Complex64> {
    match side {
        CutSide::Off => abel_a(k, band),
        _ => abel_band(k.im, band, side),
    }
}

/// `Δ^(±)` for the region side (`Side::None` uses the behind value).
pub fn delta_for(ps: &PhaseState, side: Side) -> Result<f64> {
    ps.delta(side == Side::Plus)
}

/// `z = (Ω+Δ)/2π` reduced to `[0, 1)`.
fn shift(ps: &PhaseState, side: Side) -> Result<f64> {
    Ok(((ps.omega + delta_for(ps, side)?) / (2.0 * PI)).rem_euclid(1.0))
}

fn entries(a: Complex64, g: Complex64, z: f64, tau: Complex64) -> Result<Matrix2<Complex64>> {
    let zc = Complex64::new(z, 0.0);
    let norm = theta3(Complex64::new(0.0, 0.0), tau)? / theta3(zc, tau)?;
    let plus = 0.5 * (g + 1.0 / g) * norm;
    let minus = 0.5 * (g - 1.0 / g) * norm;
    let ratio = |arg: Complex64| -> Result<Complex64> {
        let den = theta3(arg, tau)?;
        let num = theta3(arg + zc, tau)?;
        if den.norm() <= 1e-13 * num.norm().max(1.0) {
            return Err(Error::ModelPole(format!("theta3({arg}) vanishes")));
        }
        Ok(num / den)
    };
    Ok(Matrix2::new(
        plus * ratio(a + 0.25)?,
        minus * ratio(-a + 0.25)?,
        minus * ratio(a - 0.25)?,
        plus * ratio(-a - 0.25)?,
    ))
}

/// The pole-free outer matrix `W⁽⁰⁾(k)` with `Δ = Δ^(side)`; `cut` selects a boundary
/// value on the upper band.
pub fn outer_matrix(k: Complex64, ps: &PhaseState, side: Side, cut: CutSide) -> Result<Matrix2<Complex64>> {
    let b = &ps.band;
    let a = abel_at(k, b, cut)?;
    let g = gamma_quarter(k, b, cut)?;
    entries(a, g, shift(ps, side)?, b.tau())
}

/// `W⁽⁰⁾(iκ)` for `κ > α`, where every entry is real.
fn outer_on_axis(kappa: f64, b: &BandParams, z: f64) -> Result<[f64; 4]> {
    let a = Complex64::new(abel_on_axis(kappa, b)?, 0.0);
    let g = gamma_quarter(Complex64::new(0.0, kappa), b, CutSide::Off)?;
    let w = entries(a, g, z, b.tau())?;
    Ok([w[(0, 0)].re, w[(0, 1)].re, w[(1, 0)].re, w[(1, 1)].re])
}

fn ratio_on_axis(kappa: f64, b: &BandParams, z: f64, side: Side) -> Result<f64> {
    let w = outer_on_axis(kappa, b, z)?;
    Ok(if side == Side::Plus { w[0] / w[2] } else { w[1] / w[3] })
}

/// `(α+η₁) dn((α+η₁)(x − 2(η₁²+α²)t) + K(m₁)(Δ/π + 1), m₁)`, checked against the theta ratio
/// `(α−η₁) θ₃(0)/θ₃(½) · θ₃(½+z)/θ₃(z)`.
pub fn q_background(ps: &PhaseState, side: Side) -> Result<f64> {
    let b = &ps.band;
    let d = delta_for(ps, side)?;
    let s = b.alpha + b.eta1;
    let arg = s * (ps.x - b.v_bg() * ps.t) + b.k1 * (d / PI + 1.0);
    let dn = s * jacobi_dn(arg, b.m1)?;
    let theta = q_background_theta(ps, side)?;
    if (dn - theta).abs() > 1e-10 * s {
        return Err(Error::Accuracy(format!("background forms disagree: dn {dn}, theta {theta}")));
    }
    Ok(dn)
}

/// Theta-ratio form of the background.
pub fn q_background_theta(ps: &PhaseState, side: Side) -> Result<f64> {
    let b = &ps.band;
    let tau = b.tau();
    let z = Complex64::new(shift(ps, side)?, 0.0);
    let half = Complex64::new(0.5, 0.0);
    let th = |w: Complex64| theta3(w, tau);
    let v = (b.alpha - b.eta1) * th(Complex64::new(0.0, 0.0))? / th(half)? * th(half + z)? / th(z)?;
    Ok(v.re)
}

/// Background shifts `x^(±)` such that `q_bg = (α+η₁) dn((α+η₁)(x − 2(η₁²+α²)t − x^(±)), m₁)`,
/// namely `x^(±) = −K(m₁)(Δ^(±)/π + 1)/(α+η₁)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackgroundShift {
    pub x_plus: f64,
    pub x_minus: f64,
}

impl BackgroundShift {
    pub fn new(ps: &PhaseState) -> Result<Self> {
        let b = &ps.band;
        let f = |d: f64| -b.k1 * (d / PI + 1.0) / (b.alpha + b.eta1);
        Ok(BackgroundShift { x_plus: f(ps.delta(true)?), x_minus: f(ps.delta_minus) })
    }

    /// `x^(−) − x^(+)`, the displacement of the background as the soliton passes.
    pub fn shift(&self) -> f64 {
        self.x_minus - self.x_plus
    }
}

/// Darboux data at `(x, t)` for one side of the soliton.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OuterState {
    pub side: Side,
    pub w11: f64,
    pub w12: f64,
    pub w21: f64,
    pub w22: f64,
    pub q: f64,
    pub q_kappa: f64,
    /// `X^(±)`; infinite when the exponential term overflows.
    pub big_x: f64,
    pub big_y: f64,
    /// The `α̂`, `β̂` of the Darboux prefactor.
    pub darboux_a: f64,
    pub darboux_b: f64,
    /// Signed logarithm of the exponential part of `X`, kept for the residue check.
    pub log_term: f64,
}

impl OuterState {
    pub fn q_soliton(&self) -> f64 {
        q_sol_formula(self.q, self.big_x, self.big_y)
    }

    pub fn determinant(&self) -> f64 {
        self.w11 * self.w22 - self.w12 * self.w21
    }
}

/// `(2(1−Q²)X + 4QY)/(X²+Y²)`, with the `X → ±∞` limit taken explicitly.
pub fn q_sol_formula(q: f64, x: f64, y: f64) -> f64 {
    if !x.is_finite() {
        return 0.0;
    }
    if x.abs() > 1e150 {
        let r = y / x;
        return (2.0 * (1.0 - q * q) + 4.0 * q * r) / (x * (1.0 + r * r));
    }
    (2.0 * (1.0 - q * q) * x + 4.0 * q * y) / (x * x + y * y)
}

/// `∂_κ₀ Q` by central differences with step `10⁻⁵κ₀` and one Richardson step.
fn q_derivative(kappa0: f64, b: &BandParams, z: f64, side: Side) -> Result<f64> {
    let d = |h: f64| -> Result<f64> {
        Ok((ratio_on_axis(kappa0 + h, b, z, side)? - ratio_on_axis(kappa0 - h, b, z, side)?) / (2.0 * h))
    };
    let h = 1e-5 * kappa0;
    Ok((4.0 * d(0.5 * h)? - d(h)?) / 3.0)
}

pub fn outer_state(scn: &Scenario, ps: &PhaseState, side: Side, num: &Numerics) -> Result<OuterState> {
    let sol = scn
        .soliton
        .ok_or_else(|| Error::Invalid("outer_state needs a trial soliton".into()))?;
    if side == Side::None {
        return Err(Error::Invalid("outer_state needs a soliton side".into()));
    }
    let gas = scn.gas()?;
    let b = &ps.band;
    let k0 = sol.kappa0;
    if !(k0 > b.alpha) {
        return Err(Error::Domain(format!("kappa0 = {k0} must exceed alpha = {}", b.alpha)));
    }
    let z = shift(ps, side)?;
    let [w11, w12, w21, w22] = outer_on_axis(k0, b, z)?;
    let plus = side == Side::Plus;
    let q = if plus { w11 / w21 } else { w12 / w22 };
    let q_kappa = q_derivative(k0, b, z, side)?;
    let d = delta_for(ps, side)?;
    let pole = Complex64::new(0.0, k0);
    let e = f_exponent(pole, b, gas, d, plus.then_some(k0), num.band_nodes, CutSide::Off)?.re;
    let im_phi = phi_at_pole(k0, ps.x, ps.t, b)?.im;
    let lchi = sol.log_abs_chi;
    // X = σ e^{L} + Q_κ (minus) or X = −σ e^{L} + Q_κ (plus)
    let (log_term, sign) = if plus {
        (2.0 * e + lchi + 2.0 * im_phi - (4.0 * k0 * k0 * w21 * w21).ln(), -sol.sigma)
    } else {
        (-(2.0 * e + 2.0 * w22.abs().ln() + lchi + 2.0 * im_phi), sol.sigma)
    };
    let big_x = if log_term > 700.0 { sign * f64::INFINITY } else { sign * log_term.exp() + q_kappa };
    let big_y = (1.0 + q * q) / (2.0 * k0);
    let (darboux_a, darboux_b) = if big_x.is_finite() {
        let den = big_x * big_x + big_y * big_y;
        if den < 1e-30 {
            return Err(Error::LinearAlgebra(format!("Darboux system denominator {den} is degenerate")));
        }
        ((big_y - q * big_x) / den, -(big_x + q * big_y) / den)
    } else {
        (0.0, 0.0)
    };
    Ok(OuterState { side, w11, w12, w21, w22, q, q_kappa, big_x, big_y, darboux_a, darboux_b, log_term })
}

pub fn q_soliton_part(scn: &Scenario, ps: &PhaseState, side: Side, num: &Numerics) -> Result<f64> {
    Ok(outer_state(scn, ps, side, num)?.q_soliton())
}

/// Closed form of `Q^(−)` as a product of two `dn` factors.
pub fn q_minus_closed_form(kappa0: f64, ps: &PhaseState) -> Result<f64> {
    let b = &ps.band;
    let a = abel_on_axis(kappa0, b)?;
    let g = gamma_quarter(Complex64::new(0.0, kappa0), b, CutSide::Off)?.re;
    let g2 = g * g;
    let s = ps.omega + ps.delta_minus;
    let pref = (g2 - 1.0) / (g2 + 1.0) * (b.alpha + b.eta1) / (b.alpha - b.eta1);
    let d1 = jacobi_dn(2.0 * b.k1 * (a + 0.25), b.m1)?;
    let d2 = jacobi_dn(2.0 * b.k1 * (a - 0.25 - s / (2.0 * PI)), b.m1)?;
    Ok(pref * d1 * d2)
}

/// Largest entry of `Res W − lim W·N` at `iκ₀` for the Darboux-dressed `W`, where `N` is
/// the nilpotent residue matrix of the region side.
pub fn residue_residual(scn: &Scenario, ps: &PhaseState, side: Side, num: &Numerics) -> Result<f64> {
    let st = outer_state(scn, ps, side, num)?;
    if !st.big_x.is_finite() {
        return Err(Error::Range("residue coefficient overflows at this point".into()));
    }
    let sol = scn.soliton.ok_or_else(|| Error::Invalid("needs a trial soliton".into()))?;
    let k0 = sol.kappa0;
    let b = &ps.band;
    let z = shift(ps, side)?;
    let (aa, bb) = (st.darboux_a, st.darboux_b);
    let (gg, dd) = (-aa * st.q, bb * st.q);
    let m1 = Matrix2::new(aa, gg, bb, -dd);
    let m2 = Matrix2::new(dd, bb, gg, -aa);
    let w0 = Matrix2::new(st.w11, st.w12, st.w21, st.w22);
    let h = 1e-5 * k0;
    let wp = outer_on_axis(k0 + h, b, z)?;
    let wm = outer_on_axis(k0 - h, b, z)?;
    let wp2 = outer_on_axis(k0 + 0.5 * h, b, z)?;
    let wm2 = outer_on_axis(k0 - 0.5 * h, b, z)?;
    // d/dκ W0(iκ), so d/dk = −i d/dκ
    let dk = Matrix2::from_fn(|r, c| {
        let j = 2 * r + c;
        let d1 = (wp[j] - wm[j]) / (2.0 * h);
        let d2 = (wp2[j] - wm2[j]) / h;
        (4.0 * d2 - d1) / 3.0
    });
    // X − Q_κ = ±σe^{L} carries the residue coefficient
    let c = st.big_x - st.q_kappa;
    let n = if side == Side::Plus {
        // i χ⁻¹ f′⁻² e^{2iφ} = i (X − Q_κ)⁻¹ / w₂₁²
        Matrix2::new(0.0, 1.0 / (c * st.w21 * st.w21), 0.0, 0.0)
    } else {
        // −i χ f² e^{−2iφ} = −i (X − Q_κ)⁻¹ / w₂₂²
        Matrix2::new(0.0, 0.0, -1.0 / (c * st.w22 * st.w22), 0.0)
    };
    let to_c = |m: Matrix2<f64>| m.map(|v| Complex64::new(v, 0.0));
    let i = Complex64::i();
    let nn = to_c(n) * i;
    let lhs = to_c(m1 * w0) * i;
    let id = Matrix2::<f64>::identity();
    let rhs = to_c((id + m2 / (2.0 * k0)) * w0) * nn + to_c(m1) * i * (to_c(dk) * (-i)) * nn;
    Ok((lhs - rhs).iter().map(|v| v.norm()).fold(0.0, f64::max))
}

/// Background and soliton parts of the leading-order solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticParts {
    pub sector: Sector,
    pub side: Side,
    pub q_bg: f64,
    pub q_sol: f64,
}

impl AsymptoticParts {
    pub fn total(&self) -> f64 {
        self.q_bg + self.q_sol
    }
}

pub fn asymptotic_parts(x: f64, t: f64, scn: &Scenario, num: &Numerics) -> Result<AsymptoticParts> {
    let region = classify_region(scn, x, t)?;
    if region.sector == Sector::Left {
        let q_sol = match scn.soliton {
            Some(s) => one_soliton(s.kappa0, s.position(), s.sigma, x, t),
            None => 0.0,
        };
        return Ok(AsymptoticParts { sector: region.sector, side: region.side, q_bg: 0.0, q_sol });
    }
    let ps = phase_state(scn, x, t, num)?;
    let q_bg = q_background(&ps, region.side)?;
    let q_sol = match region.side {
        Side::None => 0.0,
        side => q_soliton_part(scn, &ps, side, num)?,
    };
    Ok(AsymptoticParts { sector: region.sector, side: region.side, q_bg, q_sol })
}

/// `q_bg + q_sol`, or the free soliton in the quiescent sector.
pub fn q_asymptotic(x: f64, t: f64, scn: &Scenario, num: &Numerics) -> Result<f64> {
    asymptotic_parts(x, t, scn, num).map(|p| p.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{ChiConvention, GasSpec, TrialSolitonSpec};

    fn setup(x: f64, t: f64, k0: f64, x0: f64) -> (Scenario, PhaseState, Numerics) {
        let g = GasSpec::uniform(0.25, 1.0).unwrap();
        let s = TrialSolitonSpec::from_x0(k0, x0, 1.0, ChiConvention::AsWritten).unwrap();
        let scn = Scenario::new(Some(g), Some(s), ChiConvention::AsWritten).unwrap();
        let num = Numerics::default();
        let ps = phase_state(&scn, x, t, &num).unwrap();
        (scn, ps, num)
    }

    #[test]
    fn gamma_limits() {
        let b = BandParams::new(0.25, 0.8).unwrap();
        let far = gamma_quarter(Complex64::new(3e7, 1e7), &b, CutSide::Off).unwrap();
        assert!((far - 1.0).norm() < 1e-6);
        let g0 = gamma_quarter(Complex64::new(0.0, 0.0), &b, CutSide::Off).unwrap();
        assert!((g0.powi(4) - 1.0).norm() < 1e-14);
        let gk = gamma_quarter(Complex64::new(0.0, 2.0), &b, CutSide::Off).unwrap();
        assert!(gk.im.abs() < 1e-15 && gk.re > 0.0 && gk.re < 1.0);
        for u in [0.3, 0.5, 0.75] {
            let k = Complex64::new(0.0, u);
            let p = gamma_quarter(k, &b, CutSide::Plus).unwrap();
            let m = gamma_quarter(k, &b, CutSide::Minus).unwrap();
            assert!((p - Complex64::i() * m).norm() < 1e-12, "{p} {m}");
        }
        assert!(gamma_quarter(Complex64::new(0.0, 0.5), &b, CutSide::Off).is_err());
    }

    #[test]
    fn outer_matrix_normalization_and_determinant() {
        let (_, ps, _) = setup(60.0, 20.0, 2.0, -260.0);
        let far = outer_matrix(Complex64::new(1e6, 2e5), &ps, Side::Minus, CutSide::Off).unwrap();
        assert!((far - Matrix2::identity()).iter().all(|v| v.norm() < 1e-6));
        for k in [Complex64::new(0.3, 0.4), Complex64::new(-1.1, -0.2), Complex64::new(0.0, 1.7), Complex64::new(0.05, 0.1)] {
            for side in [Side::Minus, Side::Plus] {
                let w = outer_matrix(k, &ps, side, CutSide::Off).unwrap();
                assert!((w.determinant() - 1.0).norm() < 1e-8, "{k}: {}", w.determinant());
            }
        }
    }

    #[test]
    fn band_jump() {
        let (_, ps, _) = setup(60.0, 20.0, 2.0, -260.0);
        let b = ps.band;
        let j = Matrix2::new(Complex64::new(0.0, 0.0), Complex64::i(), Complex64::i(), Complex64::new(0.0, 0.0));
        for f in [0.2, 0.5, 0.8] {
            let k = Complex64::new(0.0, b.eta1 + f * (b.alpha - b.eta1));
            let p = outer_matrix(k, &ps, Side::Minus, CutSide::Plus).unwrap();
            let m = outer_matrix(k, &ps, Side::Minus, CutSide::Minus).unwrap();
            let r = p - m * j;
            assert!(r.iter().all(|v| v.norm() < 1e-7), "{r}");
        }
    }

    #[test]
    fn background_forms_agree_over_a_period() {
        let (_, ps0, num) = setup(60.0, 20.0, 2.0, -260.0);
        let b = ps0.band;
        let period = 2.0 * b.k1 / (b.alpha + b.eta1);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for j in 0..64 {
            let mut ps = ps0;
            ps.x = 60.0 + period * j as f64 / 64.0;
            ps.omega = b.omega(ps.x, ps.t);
            for side in [Side::Minus, Side::Plus] {
                let d = q_background(&ps, side).unwrap();
                let th = q_background_theta(&ps, side).unwrap();
                assert!((d - th).abs() < 1e-10);
            }
            let v = q_background(&ps, Side::Minus).unwrap();
            lo = lo.min(v);
            hi = hi.max(v);
        }
        let _ = num;
        assert!(lo >= b.alpha - b.eta1 - 1e-12 && hi <= b.alpha + b.eta1 + 1e-12);
        assert!(hi - lo > 0.9 * 2.0 * b.eta1);
    }

    #[test]
    fn crest_where_phase_is_pi() {
        let (_, mut ps, _) = setup(60.0, 20.0, 2.0, -260.0);
        let b = ps.band;
        ps.omega = PI - ps.delta_minus;
        ps.x = ps.omega * b.k / (PI * b.alpha) + b.v_bg() * ps.t;
        assert!((q_background(&ps, Side::Minus).unwrap() - (b.alpha + b.eta1)).abs() < 1e-12);
    }

    #[test]
    fn q_minus_closed_form_and_sign() {
        for x in [45.0, 52.0, 60.0, 71.0] {
            let (scn, ps, num) = setup(x, 20.0, 2.0, -260.0);
            let st = outer_state(&scn, &ps, Side::Minus, &num).unwrap();
            let cf = q_minus_closed_form(2.0, &ps).unwrap();
            assert!((st.q - cf).abs() < 1e-9, "{} {}", st.q, cf);
            assert!(st.q < 0.0);
            assert!((st.determinant() - 1.0).abs() < 1e-8);
            let b = ps.band;
            let g = gamma_quarter(Complex64::new(0.0, 2.0), &b, CutSide::Off).unwrap().re;
            let c = (1.0 - g * g) / (1.0 + g * g);
            let lo = -c * (b.alpha + b.eta1) / (b.alpha - b.eta1);
            let hi = -c * ((b.alpha - b.eta1) / (b.alpha + b.eta1)).sqrt();
            assert!(st.q > lo && st.q < hi, "{lo} < {} < {hi}", st.q);
        }
    }

    #[test]
    fn q_derivative_matches_five_point_stencil() {
        let (_, ps, _) = setup(60.0, 20.0, 2.0, -260.0);
        let z = shift(&ps, Side::Minus).unwrap();
        let b = ps.band;
        let h = 1e-3;
        let r = |k: f64| ratio_on_axis(k, &b, z, Side::Minus).unwrap();
        let five = (8.0 * (r(2.0 + h) - r(2.0 - h)) - (r(2.0 + 2.0 * h) - r(2.0 - 2.0 * h))) / (12.0 * h);
        let rich = q_derivative(2.0, &b, z, Side::Minus).unwrap();
        assert!((five - rich).abs() < 1e-8, "{five} {rich}");
    }

    #[test]
    fn residue_condition_holds() {
        for x in [55.0, 58.0, 60.0, 61.0, 62.0, 66.0] {
            let (scn, ps, num) = setup(x, 20.0, 2.0, -260.0);
            let side = classify_region(&scn, x, 20.0).unwrap().side;
            let r = residue_residual(&scn, &ps, side, &num).unwrap();
            assert!(r < 1e-7, "x = {x} {side:?}: {r}");
        }
    }

    #[test]
    fn soliton_part_vanishes_far_away() {
        let (scn, ps, num) = setup(45.0, 20.0, 2.0, -260.0);
        let region = classify_region(&scn, 45.0, 20.0).unwrap();
        assert_eq!(region.side, Side::Minus);
        assert!(q_soliton_part(&scn, &ps, Side::Minus, &num).unwrap().abs() < 1e-6);
        let (scn, ps, num) = setup(78.0, 20.0, 2.0, -260.0);
        assert_eq!(classify_region(&scn, 78.0, 20.0).unwrap().side, Side::Plus);
        assert!(q_soliton_part(&scn, &ps, Side::Plus, &num).unwrap().abs() < 1e-6);
    }

    #[test]
    fn quiescent_sector_is_free_soliton() {
        let (scn, _, num) = setup(60.0, 20.0, 2.0, -260.0);
        assert!(q_asymptotic(-40.0, 20.0, &scn, &num).unwrap().abs() < 1e-8);
        let g = GasSpec::uniform(0.25, 1.0).unwrap();
        let s = TrialSolitonSpec::from_x0(2.0, 3.0, 1.0, ChiConvention::AsWritten).unwrap();
        let scn = Scenario::new(Some(g), Some(s), ChiConvention::AsWritten).unwrap();
        let v = q_asymptotic(-2.0, 0.5, &scn, &num).unwrap();
        assert!((v - one_soliton(2.0, 3.0, 1.0, -2.0, 0.5)).abs() < 1e-14);
    }

    #[test]
    fn right_sector_is_unmodulated() {
        let g = GasSpec::uniform(0.25, 1.0).unwrap();
        let scn = Scenario::gas_only(g);
        let num = Numerics::default();
        let x = 8.0 * 20.0;
        let ps = phase_state(&scn, x, 20.0, &num).unwrap();
        assert_eq!(ps.band.alpha, 1.0);
        let v = q_asymptotic(x, 20.0, &scn, &num).unwrap();
        assert!((v - q_background(&ps, Side::None).unwrap()).abs() < 1e-15);
    }
}
