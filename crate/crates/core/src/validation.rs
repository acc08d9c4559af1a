//! The cross-validation suite: closed-form oracles, cross-solver agreement and
//! identity residuals, one check per numbered criterion.

use crate::dynamics::{
    average_peak_velocity, entry_time, group_kinetic_residual, kinetic_residuals, peak_velocity, phase_shift,
    soliton_kinetic_residual, solve_peak, v_bar_sol, Branch, ENTRY_EPS,
};
use crate::error::{Error, Result};
use crate::fredholm::{discretize_operator, log_det_pair, q_gas, q_kdv};
use crate::modulation::{abel_a, abel_band, front_speed_v2, phase_state, solve_alpha, BandParams, CutSide};
use crate::nsoliton::{one_soliton, q_exact, sample_gas_solitons, Method, SolitonSet};
use crate::outer_model::{
    asymptotic_parts, outer_matrix, outer_state, q_asymptotic, q_background, q_background_theta, q_minus_closed_form,
    residue_residual,
};
use crate::scenario::{classify_region, ChiConvention, GasSpec, Numerics, Scenario, Side, TrialSolitonSpec};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::time::Instant;

/// Criteria that cannot be met as stated. They are still evaluated with their full
/// tolerances and reported as failures.
///
/// 14: the remainder of the large-`κ₀` expansion of `q_sol` is `O(1)`, not `O(1/κ₀)`;
/// at `κ₀ = 50` the model soliton peaks at `≈ 99.04` instead of `100` and sits
/// `≈ 1.5·10⁻³` off the free trajectory, which on a flank of slope `≈ 4κ₀²` costs
/// `≈ 7.8` against a bound of `0.1`.
pub const KNOWN_RED: &[u32] = &[14];

pub const CRITERIA: [(u32, &str); 14] = [
    (1, "one-soliton oracle"),
    (2, "two-soliton phase shift"),
    (3, "determinant-formula equivalence"),
    (4, "Fredholm self-consistency"),
    (5, "PDE residual"),
    (6, "continuum limit"),
    (7, "Whitham layer"),
    (8, "branch/Abel certification"),
    (9, "outer-model identities"),
    (10, "asymptotic vs Fredholm"),
    (11, "phase shift routes"),
    (12, "kinetic equations"),
    (13, "peak dynamics"),
    (14, "large-kappa0 limit"),
];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn known_red(&self) -> bool {
        KNOWN_RED.contains(&self.id)
    }

    /// `PASS  3 name: detail`
    pub fn line(&self) -> String {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        let note = if !self.pass && self.known_red() { " [known red]" } else { "" };
        format!("{tag} {:>2} {}: {}{note}", self.id, self.name, self.detail)
    }
}

/// Runs one criterion; solver errors become failures carrying the message.
pub fn run(id: u32) -> Result<Check> {
    let name = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map(|c| c.1)
        .ok_or_else(|| Error::Invalid(format!("no criterion {id}; valid ids are 1 to 14")))?;
    let result = match id {
        1 => c1_one_soliton(),
        2 => c2_two_soliton_shift(),
        3 => c3_determinant_forms(),
        4 => c4_fredholm_consistency(),
        5 => c5_pde_residual(),
        6 => c6_continuum_limit(),
        7 => c7_whitham(),
        8 => c8_abel(),
        9 => c9_outer_identities(),
        10 => c10_asymptotic_vs_fredholm(),
        11 => c11_phase_shift(),
        12 => c12_kinetic(),
        13 => c13_peak_dynamics(),
        _ => c14_large_kappa(),
    };
    let (pass, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    Ok(Check { id, name, pass, detail })
}

type Outcome = Result<(bool, String)>;

fn gas() -> GasSpec {
    GasSpec::uniform(0.25, 1.0).expect("valid band")
}

fn with_soliton(kappa0: f64, x0: f64) -> Result<Scenario> {
    let s = TrialSolitonSpec::from_x0(kappa0, x0, 1.0, ChiConvention::AsWritten)?;
    Scenario::new(Some(gas()), Some(s), ChiConvention::AsWritten)
}

fn c1_one_soliton() -> Outcome {
    let start = Instant::now();
    let (k0, x0, t) = (1.3, 0.4, 0.15);
    let s = TrialSolitonSpec::from_x0(k0, x0, 1.0, ChiConvention::AsWritten)?;
    let scn = Scenario::new(None, Some(s), ChiConvention::AsWritten)?;
    let set = SolitonSet::from_log(vec![k0], vec![1.0], vec![s.log_abs_chi])?;
    let mut worst: f64 = 0.0;
    for j in 0..400 {
        let x = -4.0 + 10.0 * j as f64 / 399.0;
        let e = one_soliton(k0, x0, 1.0, x, t);
        let g = q_gas(&scn, x, t, 0, 250.0)?;
        let a = q_exact(&set, x, t, Method::Sum)?;
        let b = q_exact(&set, x, t, Method::LogDet)?;
        worst = worst.max((g - e).abs()).max((a - e).abs()).max((b - e).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    Ok((worst <= 1e-9 && secs < 1.0, format!("max err {worst:.2e} (tol 1e-9), {secs:.2} s (limit 1 s)")))
}

/// Local maximum of `f` in `[a, b]` by golden-section search.
fn argmax(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-9 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Peaks of `f` on `[a, b]` above `floor`, each refined by golden-section search.
fn peaks(f: impl Fn(f64) -> f64, a: f64, b: f64, floor: f64) -> Vec<f64> {
    let h = 0.05;
    let n = ((b - a) / h) as usize;
    let v: Vec<f64> = (0..=n).map(|j| f(a + h * j as f64)).collect();
    (1..n)
        .filter(|&j| v[j] > floor && v[j] >= v[j - 1] && v[j] > v[j + 1])
        .map(|j| {
            let x = a + h * j as f64;
            argmax(&f, x - h, x + h)
        })
        .collect()
}

fn c2_two_soliton_shift() -> Outcome {
    let start = Instant::now();
    let (k1, k2) = (0.25, 1.0);
    let chi1 = 25.0 / (2f64.powf(0.25) * 9.0 * 5f64.exp());
    let set = SolitonSet::new(vec![k1, k2], vec![chi1, 2.0])?;
    // centre minus free motion, before and after the collision
    let t_post = 7.073;
    let t_pre = -t_post;
    let centres = |t: f64| -> Result<Vec<f64>> {
        q_exact(&set, 0.0, t, Method::Sum)?;
        let q = |x: f64| q_exact(&set, x, t, Method::Sum).unwrap_or(f64::NAN);
        let mut p = peaks(q, -60.0, 60.0, 0.1);
        // slow soliton first
        p.sort_by(|a, b| q(*a).total_cmp(&q(*b)));
        Ok(p)
    };
    let (pre, post) = (centres(t_pre)?, centres(t_post)?);
    if pre.len() != 2 || post.len() != 2 {
        return Ok((false, format!("expected two separated peaks, found {} and {}", pre.len(), post.len())));
    }
    let shift = ((k2 + k1) / (k2 - k1)).ln();
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for (j, (k, expected)) in [(k1, -shift / k1), (k2, shift / k2)].into_iter().enumerate() {
        let v = 4.0 * k * k;
        let off = (post[j] - v * t_post) - (pre[j] - v * t_pre);
        worst = worst.max((off - expected).abs());
        parts.push(format!("{off:.5} vs {expected:.5}"));
    }
    let secs = start.elapsed().as_secs_f64();
    Ok((
        worst <= 1e-2 && secs < 5.0,
        format!("offsets {}; max dev {worst:.2e} (tol 1e-2), {secs:.2} s (limit 5 s)", parts.join(", ")),
    ))
}

/// Largest `log A_jj` admitted in the random determinant comparison; the dense
/// residue system behind [`Method::Sum`] loses accuracy beyond it.
const MAX_LOG_ENTRY: f64 = 8.0;

fn c3_determinant_forms() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let (mut e_q, mut e_q2) = (0.0f64, 0.0f64);
    let mut points = 0;
    while points < 1000 {
        let n = rng.random_range(1..=16);
        let mut kappas: Vec<f64> = Vec::with_capacity(n);
        while kappas.len() < n {
            let k = rng.random_range(0.3..1.8);
            if kappas.iter().all(|&c: &f64| (c - k).abs() > 0.04) {
                kappas.push(k);
            }
        }
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let logs = (0..n).map(|_| rng.random_range(-1.5..1.5)).collect();
        let set = SolitonSet::from_log(kappas, vec![sign; n], logs)?;
        let mut drawn = 0;
        while drawn < 10 {
            let x = rng.random_range(-4.0..4.0);
            let t = rng.random_range(-0.3..0.3);
            let la = set.log_amplitudes(x, t);
            if la.iter().zip(&set.kappas).any(|(l, k)| 2.0 * l - (2.0 * k).ln() > MAX_LOG_ENTRY) {
                continue;
            }
            drawn += 1;
            let s = q_exact(&set, x, t, Method::Sum)?;
            let l = q_exact(&set, x, t, Method::LogDet)?;
            let sq = q_exact(&set, x, t, Method::Squared)?;
            e_q = e_q.max((s - l).abs() / s.abs().max(1.0));
            e_q2 = e_q2.max((sq - s * s).abs() / (s * s).max(1.0));
            points += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok((
        e_q <= 1e-10 && e_q2 <= 1e-9 && secs < 10.0,
        format!("sum/logdet {e_q:.2e} (tol 1e-10), squared/square {e_q2:.2e} (tol 1e-9), {points} points, {secs:.2} s (limit 10 s)"),
    ))
}

fn c4_fredholm_consistency() -> Outcome {
    let scn = Scenario::gas_only(gas());
    let (mut det_res, mut doubling) = (0.0f64, 0.0f64);
    for t in [0.25, 1.0, 2.0] {
        for j in 0..13 {
            let x = -6.0 + j as f64;
            let op = discretize_operator(&scn, x, t, 150, 250.0)?;
            let (lp, lm, sq) = log_det_pair(&op)?;
            det_res = det_res.max(((lp + lm - sq).exp() - 1.0).norm());
            let a = q_gas(&scn, x, t, 150, 250.0)?;
            let b = q_gas(&scn, x, t, 300, 250.0)?;
            doubling = doubling.max((a - b).abs());
        }
    }
    Ok((
        det_res <= 1e-10 && doubling <= 1e-8,
        format!("det identity {det_res:.2e} (tol 1e-10), n 150->300 {doubling:.2e} (tol 1e-8)"),
    ))
}

/// `max |residual| / max |q|` over an interior grid at `t = 1`, steps `h = 10⁻³`.
fn pde_residual(q: impl Fn(f64, f64) -> Result<f64>, kdv: bool) -> Result<f64> {
    let (t, h) = (1.0, 1e-3);
    let (mut res, mut qmax) = (0.0f64, 0.0f64);
    for j in 0..31 {
        let x = -3.0 + 0.4 * j as f64;
        let v = q(x, t)?;
        let qt = (q(x, t + h)? - q(x, t - h)?) / (2.0 * h);
        let (p1, m1, p2, m2) = (q(x + h, t)?, q(x - h, t)?, q(x + 2.0 * h, t)?, q(x - 2.0 * h, t)?);
        let qx = (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h);
        let qxxx = (p2 - 2.0 * p1 + 2.0 * m1 - m2) / (2.0 * h * h * h);
        let r = if kdv { qt + 6.0 * v * qx - qxxx } else { qt + 6.0 * v * v * qx + qxxx };
        res = res.max(r.abs());
        qmax = qmax.max(v.abs());
    }
    Ok(res / qmax)
}

fn c5_pde_residual() -> Outcome {
    let scn = Scenario::gas_only(gas());
    let m = pde_residual(|x, t| q_gas(&scn, x, t, 150, 250.0), false)?;
    let k = pde_residual(|x, t| q_kdv(&scn, x, t, 150, 250.0), true)?;
    Ok((m <= 1e-3 && k <= 1e-3, format!("mKdV {m:.2e}, KdV {k:.2e} relative (tol 1e-3)")))
}

fn c6_continuum_limit() -> Outcome {
    let g = gas();
    let scn = Scenario::gas_only(g.clone());
    let (x, t) = (0.5, 0.1);
    let reference = q_gas(&scn, x, t, 200, 250.0)?;
    let mut errs = Vec::new();
    for n in [64, 128, 256, 512] {
        let set = sample_gas_solitons(n, &g)?;
        errs.push((q_exact(&set, x, t, Method::LogDet)? - reference).abs());
    }
    let monotone = errs.windows(2).all(|w| w[1] < w[0]);
    let last = errs[3];
    let listed: Vec<String> = errs.iter().map(|e| format!("{e:.2e}")).collect();
    Ok((
        monotone && last <= 1e-4,
        format!("errors N=64..512 {} (monotone {monotone}), N=512 {last:.2e} (tol 1e-4)", listed.join(" ")),
    ))
}

fn c7_whitham() -> Outcome {
    let g = gas();
    let v2 = front_speed_v2(&g)?;
    let at_v2 = solve_alpha(v2, &g)?;
    let v1 = 4.0 * g.eta1 * g.eta1;
    let near = solve_alpha(v1 + 1e-9, &g)?;
    let mut alphas = Vec::with_capacity(100);
    for j in 1..=100 {
        alphas.push(solve_alpha(v1 + (v2 - v1) * j as f64 / 101.0, &g)?);
    }
    let monotone = alphas.windows(2).all(|w| w[1] > w[0]);
    let pass = at_v2 == g.eta2 && (near - g.eta1).abs() <= 1e-3 && (v2 - 5.9970).abs() <= 1e-3 && monotone;
    Ok((
        pass,
        format!(
            "alpha(v2) = {at_v2}, alpha(4eta1^2+1e-9) - eta1 = {:.2e}, v2 = {v2:.6}, monotone {monotone}",
            near - g.eta1
        ),
    ))
}

fn c8_abel() -> Outcome {
    let (mut far, mut low) = (0.0f64, 0.0f64);
    for alpha in [0.3, 0.5, 0.8, 1.0] {
        let b = BandParams::new(0.25, alpha)?;
        let a = abel_a(Complex64::new(0.0, 1e6), &b)?;
        far = far.max((a + 0.25).norm());
        let p = abel_band(0.25, &b, CutSide::Plus)?;
        low = low.max((p + 0.5 * b.tau()).norm());
    }
    Ok((
        far <= 1e-6 && low <= 1e-8,
        format!("|A(i 1e6) + 1/4| {far:.2e} (tol 1e-6), |A+(i eta1) + tau/2| {low:.2e} (tol 1e-8)"),
    ))
}

fn c9_outer_identities() -> Outcome {
    let num = Numerics::default();
    let t = 20.0;
    let scn = with_soliton(2.0, -260.0)?;
    let (mut det, mut bg, mut qm, mut res) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let ks = [Complex64::new(0.3, 0.4), Complex64::new(-1.1, -0.2), Complex64::new(0.0, 1.7), Complex64::new(0.05, 0.1)];
    for x in [45.0, 52.0, 55.0, 58.0, 60.0, 61.0, 62.0, 66.0, 71.0] {
        let ps = phase_state(&scn, x, t, &num)?;
        for side in [Side::Minus, Side::Plus] {
            for k in ks {
                let w = outer_matrix(k, &ps, side, CutSide::Off)?;
                det = det.max((w.determinant() - 1.0).norm());
            }
            bg = bg.max((q_background(&ps, side)? - q_background_theta(&ps, side)?).abs());
        }
        let st = outer_state(&scn, &ps, Side::Minus, &num)?;
        qm = qm.max((st.q - q_minus_closed_form(2.0, &ps)?).abs());
        let side = classify_region(&scn, x, t)?.side;
        res = res.max(residue_residual(&scn, &ps, side, &num)?);
    }
    let pass = det <= 1e-8 && bg <= 1e-10 && qm <= 1e-9 && res <= 1e-7;
    Ok((
        pass,
        format!("det-1 {det:.2e}, theta/dn {bg:.2e}, Q- {qm:.2e}, residue {res:.2e} (tols 1e-8, 1e-10, 1e-9, 1e-7)"),
    ))
}

fn c10_asymptotic_vs_fredholm() -> Outcome {
    let start = Instant::now();
    let num = Numerics::default();
    let n = num.fredholm_nodes;
    let scn = Scenario::gas_only(gas());
    let b = BandParams::at(scn.gas()?, 3.0)?;
    let period = 2.0 * b.k1 / (b.alpha + b.eta1);
    // sup over one background period centred on x = 3t
    let sup_err = |t: f64| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for j in 0..32 {
            let x = 3.0 * t + period * (j as f64 / 31.0 - 0.5);
            worst = worst.max((q_gas(&scn, x, t, n, num.max_exponent)? - q_asymptotic(x, t, &scn, &num)?).abs());
        }
        Ok(worst)
    };
    let errs = [sup_err(5.0)?, sup_err(10.0)?, sup_err(20.0)?];
    let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
    let ratio = errs[2] / errs[1];

    let scn = with_soliton(2.0, -260.0)?;
    let t = 20.0;
    let xp = solve_peak(t, &scn, &num)?.x_peak;
    let (mut worst, mut solved, mut guarded) = (0.0f64, 0, 0);
    for j in 0..=80 {
        let x = xp - 10.0 + 0.25 * j as f64;
        match q_gas(&scn, x, t, n, num.max_exponent) {
            Ok(g) => {
                worst = worst.max((g - asymptotic_parts(x, t, &scn, &num)?.total()).abs());
                solved += 1;
            }
            Err(Error::Range(_)) => guarded += 1,
            Err(e) => return Err(e),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = decreasing && (0.3..=0.7).contains(&ratio) && worst <= 0.05 && solved > 0 && secs < 60.0;
    Ok((
        pass,
        format!(
            "gas-only sup err t=5,10,20: {:.2e} {:.2e} {:.2e}, ratio {ratio:.3} (in [0.3, 0.7]); soliton window [{:.2}, {:.2}] max {worst:.4} (tol 0.05, {solved} solved, {guarded} guarded), {secs:.1} s (limit 60 s)",
            errs[0],
            errs[1],
            errs[2],
            xp - 10.0,
            xp + 10.0
        ),
    ))
}

fn c11_phase_shift() -> Outcome {
    let (mut worst, mut inside) = (0.0f64, true);
    for alpha in [0.3, 0.5, 0.7, 0.9, 1.0] {
        let b = BandParams::certified(0.25, alpha)?;
        for k0 in [1.05, 1.5, 2.0, 3.0, 5.0, 10.0] {
            let (closed, via) = phase_shift(k0, &b, 256)?;
            worst = worst.max((closed - via).abs());
            inside &= closed < 0.0 && closed > -2.0 * b.k1 / (alpha + b.eta1);
        }
    }
    Ok((worst <= 1e-8 && inside, format!("max route difference {worst:.2e} (tol 1e-8), inside interval {inside}")))
}

fn c12_kinetic() -> Outcome {
    let (mut sol, mut grp, mut shrinks) = (0.0f64, 0.0f64, true);
    for k0 in [1.5, 2.0, 3.0] {
        for alpha in [0.5, 0.8, 1.0] {
            let b = BandParams::certified(0.25, alpha)?;
            let r = kinetic_residuals(k0, &b, 64)?;
            sol = sol.max(r.residual_soliton_eq);
            grp = grp.max(r.residual_group_eq);
            let coarse = soliton_kinetic_residual(k0, &b, 4)?.1;
            let finer = soliton_kinetic_residual(k0, &b, 8)?.1;
            let u = 0.25 + 0.15 * (alpha - 0.25);
            let g4 = group_kinetic_residual(u, &b, 4)?;
            let g8 = group_kinetic_residual(u, &b, 8)?;
            shrinks &= finer < coarse && g8 < g4;
        }
    }
    Ok((
        sol <= 1e-6 && grp <= 1e-6 && shrinks,
        format!("soliton eq {sol:.2e}, group identity {grp:.2e} (tol 1e-6), shrinks 4->8 nodes {shrinks}"),
    ))
}

fn c13_peak_dynamics() -> Outcome {
    let num = Numerics::default();
    let scn = with_soliton(2.0, -200.0)?;
    let sol = scn.soliton.expect("trial soliton present");
    let t1 = entry_time(&scn)?;

    let mut quiet = true;
    for j in 1..=10 {
        let t = t1 * 0.95 * j as f64 / 10.0;
        let p = solve_peak(t, &scn, &num)?;
        quiet &= p.branch == Branch::Quiescent && p.x_peak == sol.position() + 16.0 * t;
    }

    let v_bar_at = |t: f64| -> Result<f64> {
        let x = solve_peak(t, &scn, &num)?.x_peak;
        v_bar_sol(2.0, &BandParams::at(scn.gas()?, x / t)?)
    };
    let (avg50, _) = average_peak_velocity(50.0, &scn, &num)?;
    let (avg100, p100) = average_peak_velocity(100.0, &scn, &num)?;
    let e50 = (avg50 - v_bar_at(50.0)?).abs() * 50.0;
    let e100 = (avg100 - v_bar_at(100.0)?).abs() * 100.0;
    // two peak roots, each located to 1e-10, over one period
    let floor = 2.0 * 1e-10 / p100 * 100.0;
    let bound = (2.0 * e50).max(floor);
    let bounded = e100 <= bound;

    let mut oscillates = true;
    for t in [50.0, 100.0] {
        let vbar = v_bar_at(t)?;
        let period = average_peak_velocity(t, &scn, &num)?.1;
        let (mut above, mut below) = (false, false);
        for j in 0..24 {
            let v = peak_velocity(t + period * j as f64 / 24.0, &scn, &num)?;
            above |= v > vbar;
            below |= v < vbar;
        }
        oscillates &= above && below;
    }

    let mut prev = f64::NEG_INFINITY;
    let mut increasing = true;
    let mut samples = 0;
    for j in 1..=200 {
        let t = 0.5 * j as f64;
        if (t - t1).abs() <= ENTRY_EPS * t1 {
            continue;
        }
        let x = solve_peak(t, &scn, &num)?.x_peak;
        increasing &= x > prev;
        prev = x;
        samples += 1;
    }
    Ok((
        quiet && bounded && oscillates && increasing,
        format!(
            "quiescent exact {quiet}; |avg-vbar|*t t=50 {e50:.2e}, t=100 {e100:.2e} (bound {bound:.2e}); oscillates {oscillates}; increasing over {samples} samples {increasing}"
        ),
    ))
}

fn c14_large_kappa() -> Outcome {
    let num = Numerics::default();
    let (k0, t) = (50.0, 10.0);
    let x0 = 30.0 - 4.0 * k0 * k0 * t;
    let scn = with_soliton(k0, x0)?;
    let mut worst: f64 = 0.0;
    for j in -2000..=2000 {
        let x = 30.0 + 0.0005 * j as f64;
        let p = asymptotic_parts(x, t, &scn, &num)?;
        worst = worst.max((p.q_sol - one_soliton(k0, x0, 1.0, x, t)).abs());
    }
    let tol = 5.0 / k0;
    Ok((worst <= tol, format!("max |q_sol - free soliton| {worst:.3} (tol {tol})")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_criterion_is_rejected() {
        assert!(run(0).is_err());
        assert!(run(15).is_err());
    }

    #[test]
    fn fast_checks_pass() {
        for id in [1, 7, 8, 11] {
            let c = run(id).unwrap();
            assert!(c.pass, "{}", c.line());
            assert!(c.line().starts_with("PASS"));
        }
    }
}
