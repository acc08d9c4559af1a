//! Whitham modulation and the genus-one data built on it: the band edge `α(x/t)`,
//! the radical `R`, the Abel map, the phase `φ`, the scalar function `f`, the
//! background phase shift `Δ` and the density `ρ`.
//!
//! Conventions on the cut `Σ₁,α = (iη₁, iα)` (oriented upwards): the `Plus` side is
//! the left side `Re k < 0`, and `R₊(iu) = −i√((α²−u²)(u²−η₁²))`.

use crate::error::{Error, Result};
use crate::quadrature::{chebyshev_angles, integrate_adaptive, integrate_adaptive_real};
use crate::scenario::{GasSpec, Numerics, Scenario};
use crate::specfun::{complete_elliptic, complete_pi, ellip_k};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `W(m) = 4(1−m)K(m)/E(m) + 2(1+m)`, continuous on `[0, 1]`.
pub fn whitham_w(m: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::Domain(format!("W(m) needs m in [0, 1], got {m}")));
    }
    if m == 1.0 {
        return Ok(4.0);
    }
    let (k, e) = complete_elliptic(m)?;
    Ok(4.0 * (1.0 - m) * k / e + 2.0 * (1.0 + m))
}

/// Leading-front speed `v₂ = η₂² W(η₁²/η₂²)`.
pub fn front_speed_v2(gas: &GasSpec) -> Result<f64> {
    Ok(gas.eta2 * gas.eta2 * whitham_w(gas.eta1 * gas.eta1 / (gas.eta2 * gas.eta2))?)
}

/// Band edge `α(v)` solving `v = α² W(η₁²/α²)`, by bisection; `η₂` for `v ≥ v₂`.
pub fn solve_alpha(v: f64, gas: &GasSpec) -> Result<f64> {
    solve_alpha_tol(v, gas, 1e-12)
}

pub fn solve_alpha_tol(v: f64, gas: &GasSpec, tol: f64) -> Result<f64> {
    let e1 = gas.eta1;
    if !(v > 4.0 * e1 * e1) {
        return Err(Error::Domain(format!("x/t = {v} is in the quiescent region (needs > 4 eta1^2)")));
    }
    if v >= front_speed_v2(gas)? {
        return Ok(gas.eta2);
    }
    let resid = |a: f64| -> Result<f64> { Ok(a * a * whitham_w(e1 * e1 / (a * a))? - v) };
    let (mut lo, mut hi) = (e1, gas.eta2);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if resid(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Modulation state at a fixed value of `x/t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandParams {
    pub eta1: f64,
    pub alpha: f64,
    /// `m = η₁²/α²`
    pub m: f64,
    /// `m₁ = 4αη₁/(α+η₁)²`
    pub m1: f64,
    pub k: f64,
    pub e: f64,
    /// `K(1−m)`
    pub kp: f64,
    /// `K(m₁)`
    pub k1: f64,
    /// `Im τ` with `τ = iK(1−m)/(2K(m))`
    pub tau_im: f64,
    pub c0: f64,
    pub c2: f64,
}

impl BandParams {
    pub fn new(eta1: f64, alpha: f64) -> Result<Self> {
        if !(alpha > eta1 && eta1 > 0.0) {
            return Err(Error::Domain(format!("band needs 0 < eta1 < alpha, got ({eta1}, {alpha})")));
        }
        let m = eta1 * eta1 / (alpha * alpha);
        let (k, e) = complete_elliptic(m)?;
        let kp = ellip_k(1.0 - m)?;
        let m1 = 4.0 * alpha * eta1 / ((alpha + eta1) * (alpha + eta1));
        // Landen: K(m₁) = (1+√m)K(m), exact even where m₁ rounds to 1
        let k1 = (1.0 + m.sqrt()) * k;
        let c0 = alpha * alpha * (1.0 - e / k);
        let a4 = alpha.powi(4);
        let c2 = a4 / 6.0 * ((1.0 + m) * e / k - (1.0 - m));
        Ok(BandParams { eta1, alpha, m, m1, k, e, kp, k1, tau_im: kp / (2.0 * k), c0, c2 })
    }

    /// Band parameters at `v = x/t` for the given gas.
    pub fn at(gas: &GasSpec, v: f64) -> Result<Self> {
        Self::certified(gas.eta1, solve_alpha(v, gas)?)
    }

    /// Builds the band and certifies the branch choices against `A(∞) = −¼` and `A₊(iη₁) = −τ/2`.
    pub fn certified(eta1: f64, alpha: f64) -> Result<Self> {
        let b = Self::new(eta1, alpha)?;
        let far = abel_on_axis(1e8, &b)?;
        let low = abel_band(eta1, &b, CutSide::Plus)?;
        if (far + 0.25).abs() > 1e-6 || (low - Complex64::new(0.0, -0.5 * b.tau_im)).norm() > 1e-8 {
            return Err(Error::Domain(format!(
                "branch certification failed: A(inf) = {far}, A+(i eta1) = {low}"
            )));
        }
        Ok(b)
    }

    pub fn tau(&self) -> Complex64 {
        Complex64::new(0.0, self.tau_im)
    }

    /// Background velocity `2(η₁² + α²)`.
    pub fn v_bg(&self) -> f64 {
        2.0 * (self.eta1 * self.eta1 + self.alpha * self.alpha)
    }

    /// `Ω = (πα/K)(x − 2(η₁²+α²)t)`.
    pub fn omega(&self, x: f64, t: f64) -> f64 {
        PI * self.alpha / self.k * (x - self.v_bg() * t)
    }

    /// `∫_{η₁}^{α} h(u) du / √((α²−u²)(u²−η₁²))` by `n`-point Gauss–Chebyshev in `u = η₁ + (α−η₁)(1+cos ψ)/2`.
    pub fn band_integral<F: Fn(f64) -> f64>(&self, h: F, n: usize) -> f64 {
        let (e1, a) = (self.eta1, self.alpha);
        let s: f64 = chebyshev_angles(n)
            .iter()
            .map(|&p| {
                let u = band_node(e1, a, p);
                h(u) / ((a + u) * (u + e1)).sqrt()
            })
            .sum();
        PI / n as f64 * s
    }

    fn sqrt_band(&self, u: f64) -> f64 {
        ((self.alpha * self.alpha - u * u) * (u * u - self.eta1 * self.eta1)).sqrt()
    }
}

fn band_node(e1: f64, a: f64, psi: f64) -> f64 {
    e1 + 0.5 * (a - e1) * (1.0 + psi.cos())
}

/// Which boundary value to take on a cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutSide {
    Off,
    /// Left side of the upward-oriented cut, `Re k < 0`.
    Plus,
    /// Right side, `Re k > 0`.
    Minus,
}

fn on_band(k: Complex64, b: &BandParams) -> bool {
    k.re == 0.0 && k.im.abs() >= b.eta1 && k.im.abs() <= b.alpha
}

/// `R(k) = √((k²+η₁²)(k²+α²))`, with `R(k) = k² + O(1)` at infinity and cuts on the bands.
pub fn r_eval(k: Complex64, b: &BandParams, side: CutSide) -> Result<Complex64> {
    let i = Complex64::i();
    match side {
        CutSide::Off => {
            if on_band(k, b) {
                return Err(Error::Domain(format!("R evaluated on the cut at k = {k} without a side")));
            }
            let (e1, a) = (b.eta1, b.alpha);
            let f1 = (k - i * e1) * ((k - i * a) / (k - i * e1)).sqrt();
            let f2 = (k + i * e1) * ((k + i * a) / (k + i * e1)).sqrt();
            Ok(f1 * f2)
        }
        CutSide::Plus | CutSide::Minus => {
            let u = k.im;
            if k.re != 0.0 || !(u.abs() > b.eta1 && u.abs() < b.alpha) {
                return Err(Error::Domain(format!("boundary value of R requested off the open band at k = {k}")));
            }
            let mag = b.sqrt_band(u.abs());
            let sgn = if u > 0.0 { -1.0 } else { 1.0 };
            let plus = i * (sgn * mag);
            Ok(if side == CutSide::Plus { plus } else { -plus })
        }
    }
}

/// `∫_α^κ dw/√((w²−η₁²)(w²−α²))` through `w = α cosh θ`.
fn axis_integral<F: Fn(f64) -> f64>(kappa: f64, b: &BandParams, weight: F) -> Result<f64> {
    let (e1, a) = (b.eta1, b.alpha);
    if !(kappa > a) {
        return Ok(0.0);
    }
    let top = (kappa / a).acosh();
    integrate_adaptive_real(
        |th| {
            let w = a * th.cosh();
            weight(w) / (w * w - e1 * e1).sqrt()
        },
        0.0,
        top,
        1e-13,
    )
}

/// `∫_u^α F(w) dw/√((α²−w²)(w²−η₁²))` for `u ∈ [η₁, α]`, through `w = η₁ + (α−η₁)(1+cos ψ)/2`.
fn band_partial<F: Fn(f64) -> f64>(u: f64, b: &BandParams, weight: F) -> Result<f64> {
    let (e1, a) = (b.eta1, b.alpha);
    let c = (2.0 * (u - e1) / (a - e1) - 1.0).clamp(-1.0, 1.0);
    let top = c.acos();
    integrate_adaptive_real(
        |p| {
            let w = band_node(e1, a, p);
            weight(w) / ((a + w) * (w + e1)).sqrt()
        },
        0.0,
        top,
        1e-13,
    )
}

/// Abel map on the imaginary axis above the band: `A(iκ) = −(α/4K) ∫_α^κ dw/√((w²−η₁²)(w²−α²))`.
pub fn abel_on_axis(kappa: f64, b: &BandParams) -> Result<f64> {
    if !(kappa >= b.alpha) {
        return Err(Error::Domain(format!("abel_on_axis needs kappa >= alpha, got {kappa}")));
    }
    Ok(-(b.alpha / (4.0 * b.k)) * axis_integral(kappa, b, |_| 1.0)?)
}

/// Boundary values of the Abel map on `Σ₁,α`: `A₊(iu) = −i(α/4K) ∫_u^α dw/√(…)`, `A₋ = −A₊`.
pub fn abel_band(u: f64, b: &BandParams, side: CutSide) -> Result<Complex64> {
    if !(u >= b.eta1 && u <= b.alpha) || side == CutSide::Off {
        return Err(Error::Domain(format!("abel_band needs u in [eta1, alpha] and a side, got u = {u}")));
    }
    let v = Complex64::new(0.0, -(b.alpha / (4.0 * b.k)) * band_partial(u, b, |_| 1.0)?);
    Ok(if side == CutSide::Plus { v } else { -v })
}

/// Integrates `g(ζ) dζ` from `i(α+δ)` to `k` along a path that stays off `[−iα, iα]`.
fn path_integral<G: Fn(Complex64) -> Complex64>(k: Complex64, b: &BandParams, g: G, tol: f64) -> Result<(Complex64, f64)> {
    let a = b.alpha;
    let start = Complex64::new(0.0, 2.0 * a);
    let dir = if k.re < 0.0 { -1.0 } else { 1.0 };
    let rho = dir * k.re.abs().max(a);
    let pts = [start, Complex64::new(rho, 2.0 * a), Complex64::new(rho, k.im), k];
    let mut total = Complex64::new(0.0, 0.0);
    for w in pts.windows(2) {
        let (z0, z1) = (w[0], w[1]);
        let d = z1 - z0;
        if d.norm() == 0.0 {
            continue;
        }
        total += integrate_adaptive(|s| g(z0 + d * s) * d, 0.0, 1.0, tol)?;
    }
    Ok((total, 2.0 * a))
}

/// Abel map `A(k) = ∫_{iα}^k ω`, `ω = (α/(4iK)) dk/R(k)`, for `k` off `[−iα, iα]`.
pub fn abel_a(k: Complex64, b: &BandParams) -> Result<Complex64> {
    if k.re == 0.0 && k.im.abs() <= b.alpha {
        return Err(Error::Domain(format!("abel_a at k = {k} on [-i alpha, i alpha]; use abel_band")));
    }
    if k.re == 0.0 && k.im > b.alpha {
        return Ok(Complex64::new(abel_on_axis(k.im, b)?, 0.0));
    }
    let pref = Complex64::new(0.0, -b.alpha / (4.0 * b.k));
    let (seg, top) = path_integral(
        k,
        b,
        |z| match r_eval(z, b, CutSide::Off) {
            Ok(r) => pref / r,
            Err(_) => Complex64::new(f64::NAN, 0.0),
        },
        1e-13,
    )?;
    if !seg.re.is_finite() || !seg.im.is_finite() {
        return Err(Error::Accuracy(format!("Abel map path integral failed at k = {k}")));
    }
    Ok(abel_on_axis(top, b)? + seg)
}

/// Integrand numerator of the phase: `12t(ζ⁴ + ½(η₁²+α²)ζ² + c₂) + x(ζ² + c₀)`.
fn phase_numerator(z: Complex64, x: f64, t: f64, b: &BandParams) -> Complex64 {
    let z2 = z * z;
    let s = 0.5 * (b.eta1 * b.eta1 + b.alpha * b.alpha);
    12.0 * t * (z2 * z2 + s * z2 + b.c2) + x * (z2 + b.c0)
}

/// The wave phase `φ(k; x, t) = ∫_{iα}^k (12t(ζ⁴+½(η₁²+α²)ζ²+c₂) + x(ζ²+c₀)) dζ / R(ζ)`.
///
/// `side` selects a boundary value when `k` lies on the band `Σ₁,α` or on the gap
/// `(−iη₁, iη₁)`; elsewhere it must be `Off`.
pub fn phi(k: Complex64, x: f64, t: f64, b: &BandParams, side: CutSide) -> Result<Complex64> {
    let i = Complex64::i();
    let real_num = |w: f64| phase_numerator(i * w, x, t, b).re;
    let on_axis_inside = k.re == 0.0 && k.im.abs() <= b.alpha;
    if on_axis_inside {
        let u = k.im;
        if side == CutSide::Off {
            return Err(Error::Domain(format!("phi at k = {k} needs a side")));
        }
        let sgn = if side == CutSide::Plus { 1.0 } else { -1.0 };
        if u >= b.eta1 {
            return Ok(Complex64::new(sgn * band_partial(u, b, real_num)?, 0.0));
        }
        if u > -b.eta1 {
            // down the band to iη₁, then across the gap where R(iv) = √((η₁²−v²)(α²−v²))
            let top = sgn * band_partial(b.eta1, b, real_num)?;
            let e1 = b.eta1;
            let th = (u / e1).clamp(-1.0, 1.0).acos();
            let gap = integrate_adaptive_real(
                |p| {
                    let v = e1 * p.cos();
                    real_num(v) / (b.alpha * b.alpha - v * v).sqrt()
                },
                0.0,
                th,
                1e-13,
            )?;
            return Ok(Complex64::new(top, -gap));
        }
        return Err(Error::Domain("phi on the lower band is not supported".into()));
    }
    if k.re == 0.0 && k.im > b.alpha {
        let v = axis_integral(k.im, b, real_num)?;
        return Ok(Complex64::new(0.0, -v));
    }
    let (seg, top) = path_integral(
        k,
        b,
        |z| match r_eval(z, b, CutSide::Off) {
            Ok(r) => phase_numerator(z, x, t, b) / r,
            Err(_) => Complex64::new(f64::NAN, 0.0),
        },
        1e-13,
    )?;
    let base = Complex64::new(0.0, -axis_integral(top, b, real_num)?);
    let v = base + seg;
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::Accuracy(format!("phi path integral failed at k = {k}")));
    }
    Ok(v)
}

/// Closed form of the phase at the pole:
/// `φ(iκ) = R(iκ)[4itκ + Π(η₁²/κ², m)/(iκK(m)) (x − 2(η₁²+α²)t)]`, purely imaginary.
pub fn phi_at_pole(kappa: f64, x: f64, t: f64, b: &BandParams) -> Result<Complex64> {
    if !(kappa > b.alpha) {
        return Err(Error::Domain(format!("phi_at_pole needs kappa > alpha, got {kappa}")));
    }
    let e1 = b.eta1;
    let rk = -((kappa * kappa - e1 * e1) * (kappa * kappa - b.alpha * b.alpha)).sqrt();
    let pi = complete_pi(e1 * e1 / (kappa * kappa), b.m)?;
    let im = rk * (4.0 * t * kappa - pi / (kappa * b.k) * (x - b.v_bg() * t));
    Ok(Complex64::new(0.0, im))
}

/// `φ₀(iκ)` and `φ₂(iκ)`: the `x`- and `t`-coefficients of [`phi_at_pole`].
pub fn phi_pole_coefficients(kappa: f64, b: &BandParams) -> Result<(Complex64, Complex64)> {
    let p1 = phi_at_pole(kappa, 1.0, 0.0, b)?;
    let p2 = phi_at_pole(kappa, 0.0, 1.0, b)?;
    Ok((p1, p2))
}

fn log_ratio(kappa0: f64, u: f64) -> f64 {
    ((kappa0 - u) / (kappa0 + u)).ln()
}

/// `Δ` for the behind (`kappa0 = None`) or ahead (`Some(κ₀)`) representation:
/// `Δ = (α/K) ∫_{η₁}^{α} h(u) du/√((α²−u²)(u²−η₁²))`, `h = log r (+ 2 log((κ₀−u)/(κ₀+u)))`.
pub fn delta(b: &BandParams, gas: &GasSpec, kappa0: Option<f64>, num: &Numerics) -> Result<f64> {
    let h = |u: f64| gas.r.log_r(u) + kappa0.map_or(0.0, |k0| 2.0 * log_ratio(k0, u));
    let n = num.band_nodes;
    let v1 = b.alpha / b.k * b.band_integral(h, n);
    let v2 = b.alpha / b.k * b.band_integral(h, 2 * n);
    if (v1 - v2).abs() > num.tol_quad * v2.abs().max(1.0) {
        return Err(Error::Accuracy(format!("Delta changed by {} on node doubling", (v1 - v2).abs())));
    }
    Ok(v2)
}

/// Modulation state at `(x, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseState {
    pub band: BandParams,
    pub x: f64,
    pub t: f64,
    pub omega: f64,
    pub delta_minus: f64,
    /// Only defined with a trial soliton.
    pub delta_plus: Option<f64>,
}

impl PhaseState {
    pub fn delta(&self, plus: bool) -> Result<f64> {
        if plus {
            self.delta_plus.ok_or_else(|| Error::Invalid("Delta(+) needs a trial soliton".into()))
        } else {
            Ok(self.delta_minus)
        }
    }
}

pub fn phase_state(scn: &Scenario, x: f64, t: f64, num: &Numerics) -> Result<PhaseState> {
    let gas = scn.gas()?;
    if !(t > 0.0) {
        return Err(Error::Domain(format!("t = {t} must be positive")));
    }
    let band = BandParams::at(gas, x / t)?;
    phase_state_with_band(scn, band, x, t, num)
}

pub fn phase_state_with_band(scn: &Scenario, band: BandParams, x: f64, t: f64, num: &Numerics) -> Result<PhaseState> {
    let gas = scn.gas()?;
    let delta_minus = delta(&band, gas, None, num)?;
    let delta_plus = match scn.soliton {
        Some(s) => Some(delta(&band, gas, Some(s.kappa0), num)?),
        None => None,
    };
    Ok(PhaseState { band, x, t, omega: band.omega(x, t), delta_minus, delta_plus })
}

/// Which representation of `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FVariant {
    Minus,
    Plus,
}

/// Exponent `E(k)` of `f = exp(E)` (the Blaschke factor of the plus variant excluded).
///
/// On the band (`side` Plus/Minus) the boundary value is assembled from the principal
/// value integral and the Plemelj jump.
pub fn f_exponent(
    k: Complex64,
    b: &BandParams,
    gas: &GasSpec,
    delta_value: f64,
    kappa0: Option<f64>,
    n: usize,
    side: CutSide,
) -> Result<Complex64> {
    let i = Complex64::i();
    let (e1, a) = (b.eta1, b.alpha);
    let h = |u: f64| gas.r.log_r(u) + kappa0.map_or(0.0, |k0| 2.0 * log_ratio(k0, u));
    let angles = chebyshev_angles(n);
    let w = PI / n as f64;
    let boundary = side != CutSide::Off;
    if boundary && !(k.re == 0.0 && k.im > e1 && k.im < a) {
        return Err(Error::Domain(format!("boundary value of f requested off the upper band at k = {k}")));
    }
    if !boundary && on_band(k, b) {
        return Err(Error::Domain(format!("f evaluated on the cut at k = {k} without a side")));
    }
    let mut i1 = Complex64::new(0.0, 0.0);
    let mut i2 = Complex64::new(0.0, 0.0);
    let v = k.im;
    let g_big = |u: f64| h(u) / ((a + u) * (u + e1)).sqrt();
    let gv = if boundary { g_big(v) } else { 0.0 };
    for &p in &angles {
        let u = band_node(e1, a, p);
        let gu = g_big(u);
        if boundary {
            let du = u - v;
            if du.abs() > 1e-14 {
                i1 += Complex64::new(0.0, -w * (gu - gv) / du);
            }
        } else {
            i1 += w * gu / (i * u - k);
        }
        i2 += w * gu / (-i * u - k);
    }
    let mut i3 = Complex64::new(0.0, 0.0);
    for &p in &angles {
        let vv = e1 * p.cos();
        i3 += -delta_value * w / ((a * a - vv * vv).sqrt() * (i * vv - k));
    }
    let (rk, jump) = if boundary {
        let gvv = gv / ((a - v) * (v - e1)).sqrt();
        let sgn = if side == CutSide::Plus { 1.0 } else { -1.0 };
        (r_eval(k, b, side)?, sgn * PI * gvv)
    } else {
        (r_eval(k, b, CutSide::Off)?, 0.0)
    };
    Ok(rk / (2.0 * PI * i) * (i1 + jump + i2 + i3))
}

/// The scalar function `f^{(∓)}(k)` and, for the plus variant, `f′(iκ₀) = e^{E(iκ₀)}/(2iκ₀)`.
pub fn scalar_f(
    k: Complex64,
    ps: &PhaseState,
    variant: FVariant,
    scn: &Scenario,
    num: &Numerics,
    side: CutSide,
) -> Result<(Complex64, Option<Complex64>)> {
    let gas = scn.gas()?;
    let i = Complex64::i();
    match variant {
        FVariant::Minus => {
            let e = f_exponent(k, &ps.band, gas, ps.delta_minus, None, num.band_nodes, side)?;
            Ok((e.exp(), None))
        }
        FVariant::Plus => {
            let k0 = scn
                .soliton
                .ok_or_else(|| Error::Invalid("plus variant of f needs a trial soliton".into()))?
                .kappa0;
            let dp = ps.delta(true)?;
            let e = f_exponent(k, &ps.band, gas, dp, Some(k0), num.band_nodes, side)?;
            let blaschke = (k - i * k0) / (k + i * k0);
            let epole = f_exponent(i * k0, &ps.band, gas, dp, Some(k0), num.band_nodes, CutSide::Off)?;
            Ok((blaschke * e.exp(), Some(epole.exp() / (2.0 * i * k0))))
        }
    }
}

/// `(ρ, ∂ₓρ, ∂ₜρ)` at `s = iu` on the plus side of `Σ₁,α`, with
/// `ρ = −(1/πi){12t(s⁴+½(η₁²+α²)s²+c₂) + x(s²+c₀)}/R₊(s)`.
pub fn rho_derivatives(u: f64, x: f64, t: f64, b: &BandParams) -> Result<(Complex64, Complex64, Complex64)> {
    if !(u > b.eta1 && u < b.alpha) {
        return Err(Error::Domain(format!("rho needs u strictly inside (eta1, alpha), got {u}")));
    }
    let i = Complex64::i();
    let s = i * u;
    let rp = r_eval(s, b, CutSide::Plus)?;
    let pref = -1.0 / (PI * i);
    let s2 = s * s;
    let half = 0.5 * (b.eta1 * b.eta1 + b.alpha * b.alpha);
    let rx = pref * (s2 + b.c0) / rp;
    let rt = pref * 12.0 * (s2 * s2 + half * s2 + b.c2) / rp;
    Ok((rx * x + rt * t, rx, rt))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gas() -> GasSpec {
        GasSpec::uniform(0.25, 1.0).unwrap()
    }

    #[test]
    fn whitham_limits() {
        assert_eq!(whitham_w(0.0).unwrap(), 6.0);
        assert_eq!(whitham_w(1.0).unwrap(), 4.0);
        assert!((whitham_w(1.0 - 1e-12).unwrap() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn front_speed() {
        let v2 = front_speed_v2(&gas()).unwrap();
        assert!((v2 - 5.996_975_314_552_831).abs() < 1e-12);
    }

    #[test]
    fn alpha_residual() {
        let g = gas();
        let a = solve_alpha(3.0, &g).unwrap();
        assert!(a > g.eta1 && a < g.eta2);
        let r = a * a * whitham_w(g.eta1 * g.eta1 / (a * a)).unwrap() - 3.0;
        assert!(r.abs() < 1e-10);
        assert_eq!(solve_alpha(front_speed_v2(&g).unwrap(), &g).unwrap(), g.eta2);
        assert!(solve_alpha(0.2, &g).is_err());
    }

    #[test]
    fn r_branch() {
        let b = BandParams::new(0.25, 0.7).unwrap();
        let r0 = r_eval(Complex64::new(0.0, 0.0), &b, CutSide::Off).unwrap();
        assert!((r0.re - 0.25 * 0.7).abs() < 1e-15 && r0.im.abs() < 1e-15);
        let l = 1e4;
        let rl = r_eval(Complex64::new(0.0, l), &b, CutSide::Off).unwrap();
        assert!(((rl.re + l * l) / (l * l)).abs() < 1e-6);
        assert!(r_eval(Complex64::new(0.0, 0.5), &b, CutSide::Off).is_err());
    }

    #[test]
    fn branches_certify() {
        for a in [0.3, 0.6, 1.0] {
            BandParams::certified(0.25, a).unwrap();
        }
    }

    #[test]
    fn a_cycle_normalized() {
        let b = BandParams::new(0.25, 0.8).unwrap();
        // 4 (α/(4iK)) ∫_0^{iη₁} dk/R with k = i η₁ sin θ
        let e1 = b.eta1;
        let v = integrate_adaptive_real(
            |th| 1.0 / (b.alpha * b.alpha - (e1 * th.sin()).powi(2)).sqrt(),
            0.0,
            0.5 * PI,
            1e-14,
        )
        .unwrap();
        let total = 4.0 * b.alpha / (4.0 * b.k) * v;
        assert!((total - 1.0).abs() < 1e-12, "{total}");
    }

    #[test]
    fn abel_path_matches_band_values() {
        let b = BandParams::new(0.25, 0.8).unwrap();
        let u = 0.5;
        let eps = 1e-12;
        let left = abel_a(Complex64::new(-eps, u), &b).unwrap();
        let right = abel_a(Complex64::new(eps, u), &b).unwrap();
        let p = abel_band(u, &b, CutSide::Plus).unwrap();
        let m = abel_band(u, &b, CutSide::Minus).unwrap();
        assert!((left - p).norm() < 1e-8, "{left} {p}");
        assert!((right - m).norm() < 1e-8, "{right} {m}");
        let far = abel_a(Complex64::new(3e3, 2e3), &b).unwrap();
        assert!((far + 0.25).norm() < 1e-3, "{far}");
    }

    #[test]
    fn phi_sides_and_gap_jump() {
        let g = gas();
        let (x, t) = (60.0, 20.0);
        let b = BandParams::at(&g, x / t).unwrap();
        let eps = 1e-12;
        for u in [0.4, 0.6] {
            let p = phi(Complex64::new(0.0, u), x, t, &b, CutSide::Plus).unwrap();
            let m = phi(Complex64::new(0.0, u), x, t, &b, CutSide::Minus).unwrap();
            let pl = phi(Complex64::new(-eps, u), x, t, &b, CutSide::Off).unwrap();
            let pr = phi(Complex64::new(eps, u), x, t, &b, CutSide::Off).unwrap();
            assert!((p - pl).norm() < 1e-7 * p.norm().max(1.0), "{p} {pl}");
            assert!((m - pr).norm() < 1e-7 * m.norm().max(1.0), "{m} {pr}");
            assert!((pl + pr).norm() < 1e-7 * p.norm().max(1.0));
        }
        for v in [-0.1, 0.0, 0.2] {
            let pl = phi(Complex64::new(-eps, v), x, t, &b, CutSide::Off).unwrap();
            let pr = phi(Complex64::new(eps, v), x, t, &b, CutSide::Off).unwrap();
            let om = b.omega(x, t);
            assert!((pl - pr + om).norm() < 1e-7 * om.abs().max(1.0), "{} vs {}", pl - pr, -om);
            let ax = phi(Complex64::new(0.0, v), x, t, &b, CutSide::Plus).unwrap();
            assert!((ax - pl).norm() < 1e-7 * om.abs().max(1.0), "{ax} {pl}");
        }
    }

    #[test]
    fn phi_pole_closed_form_matches_quadrature() {
        let g = gas();
        let (x, t) = (60.0, 20.0);
        let b = BandParams::at(&g, x / t).unwrap();
        for k0 in [1.2, 2.0] {
            let c = phi_at_pole(k0, x, t, &b).unwrap();
            let q = phi(Complex64::new(0.0, k0), x, t, &b, CutSide::Off).unwrap();
            assert!((c - q).norm() < 1e-9 * c.norm(), "{c} {q}");
        }
    }

    #[test]
    fn f_jump_on_band() {
        let g = GasSpec::new(0.25, 1.0, crate::scenario::Reflection::Constant(0.7)).unwrap();
        let sol = crate::scenario::TrialSolitonSpec::from_log_chi(2.0, 1.0, 0.0).unwrap();
        let scn = Scenario::new(Some(g), Some(sol), Default::default()).unwrap();
        let num = Numerics::default();
        let ps = phase_state(&scn, 60.0, 20.0, &num).unwrap();
        for var in [FVariant::Minus, FVariant::Plus] {
            for u in [0.35, 0.5, 0.65] {
                if u >= ps.band.alpha {
                    continue;
                }
                let k = Complex64::new(0.0, u);
                let (fp, _) = scalar_f(k, &ps, var, &scn, &num, CutSide::Plus).unwrap();
                let (fm, _) = scalar_f(k, &ps, var, &scn, &num, CutSide::Minus).unwrap();
                let prod = fp * fm;
                assert!((prod - 1.0 / 0.7).norm() < 1e-8, "{var:?} u={u} {prod}");
            }
            let k = Complex64::new(0.3, 0.7);
            let (a, _) = scalar_f(k, &ps, var, &scn, &num, CutSide::Off).unwrap();
            let (bm, _) = scalar_f(-k, &ps, var, &scn, &num, CutSide::Off).unwrap();
            assert!((a * bm - 1.0).norm() < 1e-10, "{}", a * bm);
        }
    }

    #[test]
    fn rho_gap_normalization_and_g_consistency() {
        let b = BandParams::new(0.25, 0.8).unwrap();
        let (x, t) = (3.0, 1.0);
        let i = Complex64::i();
        let n = 400;
        let w = PI / n as f64;
        let e1 = b.eta1;
        let gap: f64 = chebyshev_angles(n)
            .iter()
            .map(|&p| {
                let v = e1 * p.cos();
                w * phase_numerator(i * v, x, t, &b).re / (b.alpha * b.alpha - v * v).sqrt()
            })
            .sum();
        assert!(gap.abs() < 1e-9, "{gap}");

        let k = Complex64::new(0.7, 0.3);
        let mut g = Complex64::new(0.0, 0.0);
        for &p in &chebyshev_angles(n) {
            let u = band_node(e1, b.alpha, p);
            let sq = ((b.alpha * b.alpha - u * u) * (u * u - e1 * e1)).sqrt();
            let wt = w / ((b.alpha + u) * (u + e1)).sqrt() * sq;
            let (rho, _, _) = rho_derivatives(u, x, t, &b).unwrap();
            g += wt * ((k - i * u).ln() - (k + i * u).ln()) * rho * i;
        }
        let target = phi(k, x, t, &b, CutSide::Off).unwrap() - x * k - 4.0 * t * k * k * k;
        assert!((g - target).norm() < 1e-6, "{g} {target}");
    }

    #[test]
    fn rho_x_is_real_on_band() {
        let b = BandParams::new(0.25, 0.8).unwrap();
        for u in [0.3, 0.5, 0.7] {
            let (_, rx, _) = rho_derivatives(u, 1.0, 1.0, &b).unwrap();
            assert!(rx.im.abs() < 1e-15 * rx.re.abs().max(1.0));
            let expect = (u * u - b.c0) / (PI * b.sqrt_band(u));
            assert!((rx.re - expect).abs() < 1e-12, "{} {}", rx.re, expect);
        }
        assert!(rho_derivatives(0.8, 1.0, 1.0, &b).is_err());
    }

    #[test]
    fn alpha_monotone_and_omega_positive() {
        let g = gas();
        let v2 = front_speed_v2(&g).unwrap();
        let lo = 4.0 * g.eta1 * g.eta1;
        let mut prev = g.eta1;
        for j in 1..100 {
            let v = lo + (v2 - lo) * j as f64 / 100.0;
            let a = solve_alpha(v, &g).unwrap();
            assert!(a > prev);
            prev = a;
            let b = BandParams::new(g.eta1, a).unwrap();
            assert!(b.omega(v, 1.0) > 0.0);
            assert!(b.tau_im > 0.0);
        }
        let near = solve_alpha(lo + 1e-9, &g).unwrap();
        assert!((near - g.eta1).abs() < 1e-3);
    }

    #[test]
    fn phi_stationary_in_alpha_at_whitham() {
        let g = gas();
        let (x, t) = (60.0, 20.0);
        let a = solve_alpha(x / t, &g).unwrap();
        let k = Complex64::new(0.4, 1.3);
        let h = 1e-5;
        let pp = phi(k, x, t, &BandParams::new(g.eta1, a + h).unwrap(), CutSide::Off).unwrap();
        let pm = phi(k, x, t, &BandParams::new(g.eta1, a - h).unwrap(), CutSide::Off).unwrap();
        let d = (pp - pm) / (2.0 * h);
        assert!(d.norm() < 1e-6 * x.abs(), "{d}");
    }

    #[test]
    fn trivial_values() {
        let b = BandParams::new(0.25, 0.8).unwrap();
        assert_eq!(abel_on_axis(0.8, &b).unwrap(), 0.0);
        assert_eq!(phi(Complex64::new(0.0, 0.8), 1.0, 1.0, &b, CutSide::Plus).unwrap().norm(), 0.0);
        assert_eq!(b.omega(b.v_bg(), 1.0), 0.0);
        let num = Numerics::default();
        assert_eq!(delta(&b, &gas(), None, &num).unwrap(), 0.0);
        let scn = Scenario::gas_only(gas());
        let ps = phase_state(&scn, 60.0, 20.0, &num).unwrap();
        let (f, _) = scalar_f(Complex64::new(0.2, 0.4), &ps, FVariant::Minus, &scn, &num, CutSide::Off).unwrap();
        assert!((f - 1.0).norm() < 1e-15);
        let r0 = r_eval(Complex64::new(0.0, 1.5), &b, CutSide::Off).unwrap();
        assert!((r0 * r0 - (1.5f64.powi(2) - 0.64) * (1.5f64.powi(2) - 0.0625)).norm() < 1e-12);
    }
}
