//! Interaction observables: gas phase shift, soliton and wave velocities, the kinetic
//! identities and the trajectory of the soliton peak through the modulated gas.

use crate::error::{Error, Result};
use crate::modulation::{abel_on_axis, front_speed_v2, phase_state, phi, phi_at_pole, BandParams, CutSide};
use crate::outer_model::{outer_state, q_background, q_sol_formula};
use crate::quadrature::chebyshev_angles;
use crate::scenario::{Numerics, Scenario, Side};
use crate::specfun::complete_pi;
use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

/// Relative half-width of the excluded window around the entry time `t₁`.
pub const ENTRY_EPS: f64 = 0.02;

/// `v̄_sol = 4κ₀² K(m)/Π(η₁²/κ₀², m) + 2(η₁²+α²)`.
pub fn v_bar_sol(kappa0: f64, band: &BandParams) -> Result<f64> {
    if !(kappa0 > band.alpha) {
        return Err(Error::Domain(format!("kappa0 = {kappa0} must exceed alpha = {}", band.alpha)));
    }
    let pi = complete_pi(band.eta1 * band.eta1 / (kappa0 * kappa0), band.m)?;
    Ok(4.0 * kappa0 * kappa0 * band.k / pi + band.v_bg())
}

/// `−φ₂(iκ₀)/φ₀(iκ₀)` with both coefficients from path quadrature of the phase.
pub fn v_bar_from_phase(kappa0: f64, band: &BandParams) -> Result<f64> {
    let k = Complex64::new(0.0, kappa0);
    let p0 = phi(k, 1.0, 0.0, band, CutSide::Off)?;
    let p2 = phi(k, 0.0, 1.0, band, CutSide::Off)?;
    Ok((-p2 / p0).re)
}

/// `v_group(iu) = −12(u⁴ − ½(η₁²+α²)u² + c₂)/(c₀ − u²)`.
pub fn v_group(u: f64, band: &BandParams) -> Result<f64> {
    let den = band.c0 - u * u;
    if den.abs() < 1e-14 * band.alpha * band.alpha {
        return Err(Error::ModelPole(format!("group velocity has a pole at u = {u}")));
    }
    Ok(-12.0 * group_numerator(u, band) / den)
}

fn group_numerator(u: f64, b: &BandParams) -> f64 {
    let u2 = u * u;
    u2 * u2 - 0.5 * (b.eta1 * b.eta1 + b.alpha * b.alpha) * u2 + b.c2
}

/// `v_phase(k) = −φ_t/φ_x`. The phase is linear in `(x, t)` at a fixed band, so this is
/// `−φ₂(k)/φ₀(k)`.
pub fn v_phase(k: Complex64, band: &BandParams, side: CutSide) -> Result<f64> {
    let p0 = phi(k, 1.0, 0.0, band, side)?;
    let p2 = phi(k, 0.0, 1.0, band, side)?;
    if p0.norm() == 0.0 {
        return Err(Error::Domain(format!("phase is stationary in x at k = {k}")));
    }
    Ok((-p2 / p0).re)
}

/// Absolute relative residuals of the two kinetic identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KineticReport {
    pub v_bar: f64,
    pub residual_soliton_eq: f64,
    pub residual_group_eq: f64,
}

/// Band nodes `s = c + d cos ψ` and the smooth factor `1/(π√((α+s)(s+η₁)))` of `∂ₓρ(is) ds`.
fn kinetic_nodes(b: &BandParams, n: usize) -> Vec<(f64, f64, f64)> {
    let (c, d) = (0.5 * (b.alpha + b.eta1), 0.5 * (b.alpha - b.eta1));
    chebyshev_angles(n)
        .into_iter()
        .map(|p| {
            let s = c + d * p.cos();
            (p, s, 1.0 / (PI * ((b.alpha + s) * (s + b.eta1)).sqrt()))
        })
        .collect()
}

/// `(v(s) − v) · (s² − c₀)` with the pole of `v_group` cancelled analytically.
fn weighted_velocity(s: f64, v: f64, b: &BandParams) -> f64 {
    12.0 * group_numerator(s, b) - v * (s * s - b.c0)
}

/// Relative residual of `v̄ = 4κ₀² + (1/κ₀)∫ log|(κ₀−s)/(κ₀+s)| (v_group(s) − v̄) ∂ₓρ(is) ds`.
pub fn soliton_kinetic_residual(kappa0: f64, band: &BandParams, n: usize) -> Result<(f64, f64)> {
    let v = v_bar_sol(kappa0, band)?;
    let w = PI / n as f64;
    let integral: f64 = kinetic_nodes(band, n)
        .into_iter()
        .map(|(_, s, g)| w * ((kappa0 - s) / (kappa0 + s)).ln() * weighted_velocity(s, v, band) * g)
        .sum();
    let rhs = 4.0 * kappa0 * kappa0 + integral / kappa0;
    Ok((v, (v - rhs).abs() / v.abs()))
}

/// Relative residual of the group-velocity identity at `k = iu`,
/// `v_group(u) = 4u² + (1/u)∫ log|(u−s)/(u+s)| (v_group(s) − v_group(u)) ∂ₓρ(is) ds`.
///
/// The logarithmic singularity at `s = u` is integrated exactly against the cosine
/// expansion of the smooth factor.
pub fn group_kinetic_residual(u: f64, band: &BandParams, n: usize) -> Result<f64> {
    if !(u > band.eta1 && u < band.alpha) {
        return Err(Error::Domain(format!("u = {u} must lie inside the band")));
    }
    let vu = v_group(u, band)?;
    let (c, d) = (0.5 * (band.alpha + band.eta1), 0.5 * (band.alpha - band.eta1));
    let psi0 = ((u - c) / d).acos();
    let nodes = kinetic_nodes(band, n);
    let g: Vec<f64> = nodes.iter().map(|&(_, s, f)| weighted_velocity(s, vu, band) * f).collect();
    let nf = n as f64;
    let mean = g.iter().sum::<f64>() / nf;
    let mut singular = -PI * LN_2 * mean;
    for k in 1..n {
        let a: f64 = nodes.iter().zip(&g).map(|(&(p, _, _), gj)| gj * (k as f64 * p).cos()).sum::<f64>() * 2.0 / nf;
        singular -= PI * a * (k as f64 * psi0).cos() / k as f64;
    }
    let smooth: f64 = nodes
        .iter()
        .zip(&g)
        .map(|(&(_, s, _), gj)| (PI / nf) * gj * (d.ln() - (u + s).ln()))
        .sum();
    let rhs = 4.0 * u * u + (singular + smooth) / u;
    Ok((vu - rhs).abs() / vu.abs())
}

/// Both kinetic residuals; the group identity is sampled at interior points away from
/// the pole of `v_group`.
pub fn kinetic_residuals(kappa0: f64, band: &BandParams, n: usize) -> Result<KineticReport> {
    let (v_bar, residual_soliton_eq) = soliton_kinetic_residual(kappa0, band, n)?;
    let pole = band.c0.sqrt();
    let width = band.alpha - band.eta1;
    let mut residual_group_eq: f64 = 0.0;
    for f in [0.15, 0.35, 0.55, 0.75, 0.9] {
        let u = band.eta1 + f * width;
        if (u - pole).abs() < 0.05 * width {
            continue;
        }
        residual_group_eq = residual_group_eq.max(group_kinetic_residual(u, band, n)?);
    }
    Ok(KineticReport { v_bar, residual_soliton_eq, residual_group_eq })
}

/// `x^(−) − x^(+)` from the Abel map, `−(2K/α)(1 + 4A(iκ₀))`, and from the difference
/// of the two `Δ` values, `(K/απ)(Δ^(+) − Δ^(−))`.
pub fn phase_shift(kappa0: f64, band: &BandParams, n: usize) -> Result<(f64, f64)> {
    if !(kappa0 > band.alpha) {
        return Err(Error::Domain(format!("kappa0 = {kappa0} must exceed alpha = {}", band.alpha)));
    }
    let closed = -(2.0 * band.k / band.alpha) * (1.0 + 4.0 * abel_on_axis(kappa0, band)?);
    // Δ^(+) − Δ^(−) = (α/K)∫ 2 log((κ₀−u)/(κ₀+u)) du/√(…); the reflection cancels
    let jump = band.alpha / band.k * band.band_integral(|u| 2.0 * ((kappa0 - u) / (kappa0 + u)).ln(), n);
    let via_delta = band.k / (band.alpha * PI) * jump;
    Ok((closed, via_delta))
}

/// `κ_crit = α(1 + m + √((1+m)² + 4√m(1+√m)²))/(2(1+√m))`, below which `Q^(−) = −1` is reached.
pub fn kappa_crit(band: &BandParams) -> f64 {
    let m = band.m;
    let r = m.sqrt();
    band.alpha * (1.0 + m + ((1.0 + m).powi(2) + 4.0 * r * (1.0 + r).powi(2)).sqrt()) / (2.0 * (1.0 + r))
}

/// Slow coordinates `s = Ω + Δ`, `τ = t`, with `∂s/∂x` by central differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicFrame {
    pub s: f64,
    pub tau: f64,
    pub ds_dx: f64,
}

pub fn characteristic_frame(x: f64, t: f64, scn: &Scenario, num: &Numerics) -> Result<CharacteristicFrame> {
    let s_at = |x: f64| -> Result<f64> {
        let ps = phase_state(scn, x, t, num)?;
        Ok(ps.omega + ps.delta_minus)
    };
    let h = 1e-4;
    let ds_dx = (s_at(x + h)? - s_at(x - h)?) / (2.0 * h);
    Ok(CharacteristicFrame { s: s_at(x)?, tau: t, ds_dx })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Quiescent,
    Modulated,
    FixedBand,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakSample {
    pub t: f64,
    pub x_peak: f64,
    pub amplitude: f64,
    pub side: Side,
    pub branch: Branch,
}

/// `t₁ = −x₀/(4(κ₀² − η₁²))`, the time the free soliton reaches `x = 4η₁²t`.
pub fn entry_time(scn: &Scenario) -> Result<f64> {
    let sol = scn.soliton.ok_or_else(|| Error::Invalid("peak tracking needs a trial soliton".into()))?;
    let e1 = scn.gas()?.eta1;
    let x0 = sol.position();
    if !(x0 < 0.0) {
        return Err(Error::Domain(format!("soliton must start behind the gas, x0 = {x0}")));
    }
    Ok(-x0 / (4.0 * (sol.kappa0 * sol.kappa0 - e1 * e1)))
}

/// The extremum condition `X^(−) = X_ℓ` in logarithmic form, increasing in `x`:
/// `log|χ f² w₂₂² e^{2 Im φ}| + log(σ(X_ℓ − Q_κ))`, with `ℓ = 1` for a soliton and `ℓ = 2`
/// for an anti-soliton. Returns `−∞` where `σ(X_ℓ − Q_κ) ≤ 0`.
pub fn peak_function(x: f64, t: f64, scn: &Scenario, num: &Numerics) -> Result<f64> {
    let sigma = scn.soliton.ok_or_else(|| Error::Invalid("needs a trial soliton".into()))?.sigma;
    let ps = phase_state(scn, x, t, num)?;
    let st = outer_state(scn, &ps, Side::Minus, num)?;
    let y = sigma * (critical_x(st.q, st.big_y, sigma) - st.q_kappa);
    Ok(if y > 0.0 { y.ln() - st.log_term } else { f64::NEG_INFINITY })
}

fn critical_x(q: f64, y: f64, sigma: f64) -> f64 {
    if sigma > 0.0 {
        (1.0 - q) / (1.0 + q) * y
    } else {
        -(1.0 + q) / (1.0 - q) * y
    }
}

/// Scan and refine the unique root of [`peak_function`] at time `t`.
fn peak_root(t: f64, scn: &Scenario, num: &Numerics) -> Result<f64> {
    let sol = scn.soliton.ok_or_else(|| Error::Invalid("needs a trial soliton".into()))?;
    let gas = scn.gas()?;
    let k0 = sol.kappa0;
    let x_min = 4.0 * gas.eta1 * gas.eta1 * t * (1.0 + 1e-6);
    // The χ-exponent alone is increasing in x; its zero locates the peak up to O(1/κ₀).
    let crit = |x: f64| -> Result<f64> {
        let band = BandParams::at(gas, x / t)?;
        Ok(sol.log_abs_chi - (2.0 * k0).ln() + 2.0 * phi_at_pole(k0, x, t, &band)?.im)
    };
    let mut lo = x_min;
    if crit(lo)? > 0.0 {
        return Err(Error::NotFound(format!("soliton has not entered the gas at t = {t}")));
    }
    let mut hi = (sol.position() + 4.0 * k0 * k0 * t).max(lo + 1.0);
    while crit(hi)? < 0.0 {
        hi = lo + 2.0 * (hi - lo);
    }
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if crit(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let xc = 0.5 * (lo + hi);
    let band = BandParams::at(gas, xc / t)?;
    let slope = 2.0 * ((k0 * k0 - band.eta1 * band.eta1) * (k0 * k0 - band.alpha * band.alpha)).sqrt()
        * complete_pi(band.eta1 * band.eta1 / (k0 * k0), band.m)?
        / (k0 * band.k);
    let period = 2.0 * band.k1 / (band.alpha + band.eta1);
    let half = 1.5 * period + 20.0 / slope;
    let steps = 96;
    let a = (xc - half).max(x_min);
    let b = xc + half;
    let h = (b - a) / steps as f64;
    let eval = |x: f64| peak_function(x, t, scn, num);
    let mut prev = (a, eval(a)?);
    let mut brackets = Vec::new();
    for j in 1..=steps {
        let x = a + h * j as f64;
        let v = eval(x)?;
        if prev.1 < 0.0 && v >= 0.0 {
            brackets.push((prev, (x, v)));
        }
        if prev.1 >= 0.0 && v < 0.0 {
            return Err(Error::PeakJump(format!("extremum condition decreases near x = {x} at t = {t}")));
        }
        prev = (x, v);
    }
    match brackets.len() {
        1 => refine(brackets[0].0, brackets[0].1, eval),
        0 => Err(Error::NotFound(format!("no peak in [{a}, {b}] at t = {t}"))),
        n => Err(Error::PeakJump(format!("{n} candidate peaks at t = {t}"))),
    }
}

/// Illinois false position on a bracket, to `|Δx| ≤ 10⁻¹⁰`.
fn refine<F: Fn(f64) -> Result<f64>>(mut a: (f64, f64), mut b: (f64, f64), f: F) -> Result<f64> {
    if !a.1.is_finite() {
        // bisect until the lower end leaves the region where the condition is unattainable
        while !a.1.is_finite() && b.0 - a.0 > 1e-10 {
            let m = 0.5 * (a.0 + b.0);
            let v = f(m)?;
            if v < 0.0 {
                a = (m, v);
            } else {
                b = (m, v);
            }
        }
    }
    let mut side = 0;
    for _ in 0..200 {
        if (b.0 - a.0).abs() <= 1e-10 {
            break;
        }
        let x = if a.1.is_finite() { (a.0 * b.1 - b.0 * a.1) / (b.1 - a.1) } else { 0.5 * (a.0 + b.0) };
        let x = if x > a.0 && x < b.0 { x } else { 0.5 * (a.0 + b.0) };
        let v = f(x)?;
        if v == 0.0 {
            return Ok(x);
        }
        if v < 0.0 {
            a = (x, v);
            if side == -1 {
                b.1 *= 0.5;
            }
            side = -1;
        } else {
            b = (x, v);
            if side == 1 {
                a.1 *= 0.5;
            }
            side = 1;
        }
        let w = b.0 - a.0;
        if w <= 1e-10 {
            break;
        }
    }
    Ok(0.5 * (a.0 + b.0))
}

/// Peak (or, for an anti-soliton, trough) of the trial soliton at time `t`.
pub fn solve_peak(t: f64, scn: &Scenario, num: &Numerics) -> Result<PeakSample> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("t = {t} must be positive")));
    }
    let sol = scn.soliton.ok_or_else(|| Error::Invalid("peak tracking needs a trial soliton".into()))?;
    let t1 = entry_time(scn)?;
    if t < t1 * (1.0 - ENTRY_EPS) {
        return Ok(PeakSample {
            t,
            x_peak: sol.position() + 4.0 * sol.kappa0 * sol.kappa0 * t,
            amplitude: 2.0 * sol.sigma * sol.kappa0,
            side: Side::None,
            branch: Branch::Quiescent,
        });
    }
    if t <= t1 * (1.0 + ENTRY_EPS) {
        return Err(Error::Transition(format!("t = {t} is within 2% of the entry time {t1}")));
    }
    let x = peak_root(t, scn, num)?;
    let ps = phase_state(scn, x, t, num)?;
    let st = outer_state(scn, &ps, Side::Minus, num)?;
    let q_sol = if sol.sigma > 0.0 {
        2.0 * sol.kappa0 * (1.0 + 2.0 * st.q / (1.0 + st.q * st.q))
    } else {
        q_sol_formula(st.q, critical_x(st.q, st.big_y, -1.0), st.big_y)
    };
    let v2 = front_speed_v2(scn.gas()?)?;
    Ok(PeakSample {
        t,
        x_peak: x,
        amplitude: q_background(&ps, Side::Minus)? + q_sol,
        side: Side::Minus,
        branch: if x / t < v2 { Branch::Modulated } else { Branch::FixedBand },
    })
}

/// Instantaneous peak velocity `−∂ₜP/∂ₓP` of the extremum condition at the peak, by
/// central differences with steps `10⁻⁴`.
pub fn peak_velocity(t: f64, scn: &Scenario, num: &Numerics) -> Result<f64> {
    let p = solve_peak(t, scn, num)?;
    if p.branch == Branch::Quiescent {
        let k0 = scn.soliton.map(|s| s.kappa0).unwrap_or_default();
        return Ok(4.0 * k0 * k0);
    }
    let h = 1e-4;
    let f = |x: f64, t: f64| peak_function(x, t, scn, num);
    let px = (f(p.x_peak + h, t)? - f(p.x_peak - h, t)?) / (2.0 * h);
    let pt = (f(p.x_peak, t + h)? - f(p.x_peak, t - h)?) / (2.0 * h);
    Ok(-pt / px)
}

/// Time for the peak to cross one background period: `T = 2K(m₁)/((α+η₁)|v̄_sol − v_bg|)`.
pub fn background_period_time(kappa0: f64, band: &BandParams) -> Result<f64> {
    let v = v_bar_sol(kappa0, band)?;
    Ok(2.0 * band.k1 / ((band.alpha + band.eta1) * (v - band.v_bg()).abs()))
}

/// `(x_peak(t+T) − x_peak(t))/T` and the `T` used.
pub fn average_peak_velocity(t: f64, scn: &Scenario, num: &Numerics) -> Result<(f64, f64)> {
    let sol = scn.soliton.ok_or_else(|| Error::Invalid("needs a trial soliton".into()))?;
    let a = solve_peak(t, scn, num)?;
    if a.branch == Branch::Quiescent {
        return Ok((4.0 * sol.kappa0 * sol.kappa0, 0.0));
    }
    let band = BandParams::at(scn.gas()?, a.x_peak / t)?;
    let period = background_period_time(sol.kappa0, &band)?;
    let b = solve_peak(t + period, scn, num)?;
    Ok(((b.x_peak - a.x_peak) / period, period))
}

/// `(t₁, t₂)`: entry into the gas and the first time the peak reaches `x/t = v₂`,
/// searched up to `horizon`.
pub fn entry_exit_times(scn: &Scenario, num: &Numerics, horizon: f64) -> Result<(f64, f64)> {
    let t1 = entry_time(scn)?;
    let v2 = front_speed_v2(scn.gas()?)?;
    let g = |t: f64| -> Result<f64> { Ok(solve_peak(t, scn, num)?.x_peak / t - v2) };
    let mut lo = t1 * (1.0 + 1.5 * ENTRY_EPS);
    if g(lo)? >= 0.0 {
        return Ok((t1, lo));
    }
    let mut hi = lo;
    loop {
        hi = (2.0 * hi).min(horizon);
        if g(hi)? >= 0.0 {
            break;
        }
        if hi >= horizon {
            return Err(Error::NotFound(format!("peak does not reach x/t = v2 before t = {horizon}")));
        }
        lo = hi;
    }
    while hi - lo > 1e-6 * hi {
        let mid = 0.5 * (lo + hi);
        if g(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((t1, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{ChiConvention, GasSpec, TrialSolitonSpec};

    fn scenario(k0: f64, x0: f64, sigma: f64) -> Scenario {
        let g = GasSpec::uniform(0.25, 1.0).unwrap();
        let s = TrialSolitonSpec::from_x0(k0, x0, sigma, ChiConvention::AsWritten).unwrap();
        Scenario::new(Some(g), Some(s), ChiConvention::AsWritten).unwrap()
    }

    #[test]
    fn v_bar_two_routes() {
        for (a, k0) in [(1.0, 2.0), (0.5, 1.5), (0.8, 3.0)] {
            let b = BandParams::new(0.25, a).unwrap();
            let c = v_bar_sol(k0, &b).unwrap();
            let q = v_bar_from_phase(k0, &b).unwrap();
            assert!((c - q).abs() < 1e-8 * c, "{c} {q}");
        }
        let b = BandParams::new(0.25, 1.0).unwrap();
        assert!(v_bar_sol(0.9, &b).is_err());
    }

    #[test]
    fn v_bar_large_kappa() {
        let b = BandParams::new(0.25, 0.8).unwrap();
        let k0 = 1e3;
        let ratio = (v_bar_sol(k0, &b).unwrap() - b.v_bg()) / (4.0 * k0 * k0);
        assert!((ratio - 1.0).abs() < 1e-4);
        let near = BandParams::new(0.25, 0.25 * (1.0 + 1e-9)).unwrap();
        assert!(v_bar_sol(2.0, &near).unwrap().is_finite());
    }

    #[test]
    fn phase_velocity_at_band_edge_is_background_velocity() {
        let b = BandParams::new(0.25, 0.8).unwrap();
        let k = Complex64::new(0.0, b.eta1);
        let v = v_phase(k, &b, CutSide::Plus).unwrap();
        assert!((v - b.v_bg()).abs() < 1e-9, "{v} {}", b.v_bg());
    }

    #[test]
    fn group_velocity_matches_density_ratio() {
        let b = BandParams::new(0.25, 0.8).unwrap();
        for u in [0.3, 0.45, 0.7] {
            let (_, rx, rt) = crate::modulation::rho_derivatives(u, 1.0, 1.0, &b).unwrap();
            let v = (-rt / rx).re;
            assert!((v - v_group(u, &b).unwrap()).abs() < 1e-9 * v.abs().max(1.0));
        }
    }

    #[test]
    fn kinetic_identities_hold() {
        for a in [0.5, 0.8, 1.0] {
            let b = BandParams::new(0.25, a).unwrap();
            for k0 in [1.5, 2.0, 3.0] {
                let r = kinetic_residuals(k0, &b, 64).unwrap();
                assert!(r.residual_soliton_eq < 1e-10, "{a} {k0} {r:?}");
                assert!(r.residual_group_eq < 1e-10, "{a} {k0} {r:?}");
                let coarse = kinetic_residuals(k0, &b, 4).unwrap();
                assert!(coarse.residual_soliton_eq > r.residual_soliton_eq);
            }
        }
    }

    #[test]
    fn phase_shift_routes_agree() {
        for a in [0.4, 0.7, 1.0] {
            let b = BandParams::new(0.25, a).unwrap();
            for k0 in [1.1, 2.0, 5.0] {
                let (c, d) = phase_shift(k0, &b, 256).unwrap();
                assert!((c - d).abs() < 1e-8, "{c} {d}");
                assert!(c < 0.0 && c > -2.0 * b.k1 / (b.alpha + b.eta1));
            }
        }
        let b = BandParams::new(0.25, 1.0).unwrap();
        assert!(phase_shift(1e6, &b, 256).unwrap().0.abs() < 1e-5);
    }

    #[test]
    fn kappa_crit_limits() {
        let small = BandParams::new(1e-8, 1.0).unwrap();
        assert!((kappa_crit(&small) - 1.0).abs() < 1e-3);
        let near = BandParams::new(1.0 - 1e-12, 1.0).unwrap();
        assert!((kappa_crit(&near) - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-5);
        for j in 1..50 {
            let b = BandParams::new(0.02 * j as f64, 1.0).unwrap();
            assert!(kappa_crit(&b) > b.alpha);
        }
    }

    #[test]
    fn entry_time_example() {
        let scn = scenario(2.0, -200.0, 1.0);
        assert!((entry_time(&scn).unwrap() - 200.0 / 15.75).abs() < 1e-12);
    }

    #[test]
    fn quiescent_peak_is_free_motion() {
        let scn = scenario(2.0, -200.0, 1.0);
        let num = Numerics::default();
        let t1 = entry_time(&scn).unwrap();
        let p = solve_peak(0.5 * t1, &scn, &num).unwrap();
        assert_eq!(p.branch, Branch::Quiescent);
        assert_eq!(p.x_peak, -200.0 + 16.0 * 0.5 * t1);
        assert!(matches!(solve_peak(t1, &scn, &num), Err(Error::Transition(_))));
        assert_eq!(peak_velocity(0.5 * t1, &scn, &num).unwrap(), 16.0);
    }

    #[test]
    fn modulated_peak_is_a_maximum_of_the_model() {
        let scn = scenario(2.0, -200.0, 1.0);
        let num = Numerics::default();
        let p = solve_peak(15.0, &scn, &num).unwrap();
        assert_eq!(p.branch, Branch::Modulated);
        let ps = phase_state(&scn, p.x_peak, 15.0, &num).unwrap();
        let qbg = q_background(&ps, Side::Minus).unwrap();
        assert!(p.amplitude >= qbg && p.amplitude <= qbg + 8.0);
        let q = |x: f64| crate::outer_model::q_asymptotic(x, 15.0, &scn, &num).unwrap();
        let best = (-200..=200).map(|j| p.x_peak + 0.01 * j as f64).map(q).fold(f64::MIN, f64::max);
        assert!(best - q(p.x_peak) < 0.05, "{best} {}", q(p.x_peak));
    }

    #[test]
    fn frame_is_increasing_in_x() {
        let scn = scenario(2.0, -200.0, 1.0);
        let num = Numerics::default();
        for x in [50.0, 70.0, 90.0] {
            assert!(characteristic_frame(x, 20.0, &scn, &num).unwrap().ds_dx > 0.0);
        }
    }
}
