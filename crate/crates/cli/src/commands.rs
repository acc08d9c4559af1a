//! The subcommands: grid sweeps, peak series, phase shifts, validation and figure presets.

use crate::config::{self, RunConfig, Solver};
use crate::output::{self, fmt_f64, Failure, Sink, Table};
use anyhow::{bail, Result};
use solgas::dynamics::{peak_velocity, phase_shift, solve_peak, v_bar_sol, Branch};
use solgas::nsoliton::{q_exact_guarded, SolitonSet};
use solgas::validation::{self, Check};
use solgas::{fredholm, outer_model, BandParams};
use std::path::PathBuf;

/// Shared run state.
pub struct Ctx {
    pub cfg: RunConfig,
    pub sink: Sink,
    pub workers: usize,
}

/// What a command produced.
#[derive(Debug, Default)]
pub struct Report {
    pub files: Vec<PathBuf>,
    pub failures: Vec<Failure>,
    pub manifest: Option<PathBuf>,
    /// Set when a check failed outright, independent of point failures.
    pub failed: bool,
}

impl Report {
    pub fn success(&self) -> bool {
        !self.failed && self.failures.iter().all(|f| f.expected)
    }
}

/// Evaluates `q` and any extra columns at one point.
struct Evaluator<'a> {
    cfg: &'a RunConfig,
    solver: Solver,
    set: Option<SolitonSet>,
}

impl<'a> Evaluator<'a> {
    fn new(cfg: &'a RunConfig, solver: Solver) -> Result<Self> {
        let set = if solver == Solver::Exact { Some(cfg.soliton_set()?) } else { None };
        Ok(Evaluator { cfg, solver, set })
    }

    fn extras(&self) -> &'static [&'static str] {
        match self.solver {
            Solver::Asymptotic => &["q_bg", "q_sol"],
            _ => &[],
        }
    }

    fn eval(&self, x: f64, t: f64) -> solgas::Result<Vec<f64>> {
        let c = self.cfg;
        let num = &c.numerics;
        match self.solver {
            Solver::Exact => {
                let set = self.set.as_ref().expect("soliton set built for the exact solver");
                Ok(vec![q_exact_guarded(set, x, t, c.exact.method, num.max_exponent)?])
            }
            Solver::Gas => Ok(vec![fredholm::q_gas(&c.scenario, x, t, num.fredholm_nodes, num.max_exponent)?]),
            Solver::Kdv => Ok(vec![fredholm::q_kdv(&c.scenario, x, t, num.fredholm_nodes, num.max_exponent)?]),
            Solver::Asymptotic => {
                let p = outer_model::asymptotic_parts(x, t, &c.scenario, num)?;
                Ok(vec![p.total(), p.q_bg, p.q_sol])
            }
        }
    }
}

/// Sweeps `q` over the configured `(x, t)` grid and writes one file per time slice
/// (or a single long-format file).
pub fn grid(ctx: &Ctx, solver: Solver, stem: &str) -> Result<Report> {
    let ev = Evaluator::new(&ctx.cfg, solver)?;
    let xs = ctx.cfg.grid.xs();
    let points: Vec<(f64, f64)> = ctx.cfg.grid.t_list.iter().flat_map(|&t| xs.iter().map(move |&x| (x, t))).collect();
    let values = output::sweep(&points, ctx.workers, |&(x, t)| ev.eval(x, t))?;

    let mut header = vec!["x", "t", "q"];
    header.extend_from_slice(ev.extras());
    let mut report = Report::default();
    let mut tables: Vec<(f64, Table)> = Vec::new();
    for (&(x, t), value) in points.iter().zip(values) {
        if tables.last().is_none_or(|(tt, _)| *tt != t) {
            tables.push((t, Table::new(&header)));
        }
        let table = &mut tables.last_mut().expect("table for this slice").1;
        match value {
            Ok(v) => {
                let mut row = vec![x, t];
                row.extend(v);
                if let Err(msg) = table.push(row) {
                    report.failures.push(Failure::non_finite(x, t, msg));
                }
            }
            Err(e) => report.failures.push(Failure::new(x, t, &e)),
        }
    }
    if ctx.sink.long_format {
        let mut all = Table::new(&header);
        for (_, t) in tables {
            all.rows.extend(t.rows);
        }
        let path = ctx.sink.path(stem);
        all.write(&path)?;
        report.files.push(path);
    } else {
        for (t, table) in tables {
            let path = ctx.sink.path(&Sink::slice_stem(stem, t));
            table.write(&path)?;
            report.files.push(path);
        }
    }
    finish(ctx, stem, report)
}

fn finish(ctx: &Ctx, stem: &str, mut report: Report) -> Result<Report> {
    let manifest = ctx.sink.path(&format!("{stem}_failures"));
    if report.failures.is_empty() {
        if manifest.exists() {
            std::fs::remove_file(&manifest)?;
        }
    } else {
        output::write_failures(&manifest, &report.failures)?;
        report.manifest = Some(manifest);
    }
    Ok(report)
}

struct PeakRow {
    x_peak: f64,
    amplitude: f64,
    velocity: f64,
    v_bar: f64,
}

fn peak_row(cfg: &RunConfig, t: f64) -> solgas::Result<PeakRow> {
    let (scn, num) = (&cfg.scenario, &cfg.numerics);
    let p = solve_peak(t, scn, num)?;
    let k0 = scn.soliton.map(|s| s.kappa0).unwrap_or_default();
    let v_bar = if p.branch == Branch::Quiescent {
        4.0 * k0 * k0
    } else {
        v_bar_sol(k0, &BandParams::at(scn.gas()?, p.x_peak / t)?)?
    };
    Ok(PeakRow { x_peak: p.x_peak, amplitude: p.amplitude, velocity: peak_velocity(t, scn, num)?, v_bar })
}

/// Which peak series to write.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Series {
    /// `t, x_peak, amplitude, velocity, x_free`
    Peak,
    /// `t, xdot_peak, v_bar_sol`
    Velocities,
}

/// Tracks the trial soliton's peak over the configured series times.
pub fn series(ctx: &Ctx, kind: Series, stem: &str) -> Result<Report> {
    let Some(sol) = ctx.cfg.scenario.soliton else {
        bail!("peak tracking needs a trial soliton: set kappa0 and one of x0, chi, log_abs_chi");
    };
    let ts = &ctx.cfg.series;
    let rows = output::sweep(ts, ctx.workers, |&t| peak_row(&ctx.cfg, t))?;
    let mut table = match kind {
        Series::Peak => Table::new(&["t", "x_peak", "amplitude", "velocity", "x_free"]),
        Series::Velocities => Table::new(&["t", "xdot_peak", "v_bar_sol"]),
    };
    let mut report = Report::default();
    for (&t, row) in ts.iter().zip(rows) {
        let x_free = sol.position() + 4.0 * sol.kappa0 * sol.kappa0 * t;
        match row {
            Ok(r) => {
                let values = match kind {
                    Series::Peak => vec![t, r.x_peak, r.amplitude, r.velocity, x_free],
                    Series::Velocities => vec![t, r.velocity, r.v_bar],
                };
                if let Err(msg) = table.push(values) {
                    report.failures.push(Failure::non_finite(r.x_peak, t, msg));
                }
            }
            Err(e) => report.failures.push(Failure::new(x_free, t, &e)),
        }
    }
    let path = ctx.sink.path(stem);
    table.write(&path)?;
    report.files.push(path);
    finish(ctx, stem, report)
}

/// Soliton-induced background shift for each `α`, by the closed form and through `Δ`.
pub fn phaseshift(ctx: &Ctx, alphas: &[f64]) -> Result<Report> {
    let Some(sol) = ctx.cfg.scenario.soliton else {
        bail!("phaseshift needs a trial soliton: set kappa0");
    };
    let gas = ctx.cfg.scenario.gas()?;
    let alphas = if alphas.is_empty() { vec![gas.eta2] } else { alphas.to_vec() };
    let mut table = Table::new(&["alpha", "kappa0", "closed", "via_delta"]);
    for &a in &alphas {
        if !(a > gas.eta1 && a <= gas.eta2) {
            bail!("--alpha must lie in (eta1, eta2] = ({}, {}], got {a}", gas.eta1, gas.eta2);
        }
        let band = BandParams::certified(gas.eta1, a)?;
        let (closed, via) = phase_shift(sol.kappa0, &band, ctx.cfg.numerics.band_nodes)?;
        println!("alpha = {a}: closed {} via delta {}", fmt_f64(closed), fmt_f64(via));
        if let Err(msg) = table.push(vec![a, sol.kappa0, closed, via]) {
            bail!("phase shift at alpha = {a}: {msg}");
        }
    }
    let path = ctx.sink.path("phaseshift");
    table.write(&path)?;
    Ok(Report { files: vec![path], ..Report::default() })
}

/// Runs the cross-checks (all, or the listed ids) and prints one line per check.
pub fn validate(ctx: &Ctx, only: &[u32]) -> Result<Report> {
    let ids: Vec<u32> = if only.is_empty() {
        validation::CRITERIA.iter().map(|c| c.0).collect()
    } else {
        only.to_vec()
    };
    for id in &ids {
        if !validation::CRITERIA.iter().any(|c| c.0 == *id) {
            bail!("--only: no check with id {id} (valid ids are 1..={})", validation::CRITERIA.len());
        }
    }
    let checks: Vec<Check> =
        output::sweep(&ids, ctx.workers, |&id| validation::run(id))?.into_iter().collect::<solgas::Result<_>>()?;
    let mut failed = false;
    for c in &checks {
        println!("{}", c.line());
        failed |= !c.pass;
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    println!("{passed}/{} checks passed", checks.len());
    Ok(Report { failed, ..Report::default() })
}

/// Loads the canonical parameter set of figure `n` and writes its data.
pub fn figure(ctx: &Ctx, n: u32, solver_override: Option<Solver>) -> Result<Report> {
    let mut cfg = config::default_config()?;
    cfg.numerics = ctx.cfg.numerics;
    let stem = format!("figure{n}");
    let mut sink = ctx.sink.clone();
    let run = |cfg: RunConfig, sink: Sink, f: &dyn Fn(&Ctx) -> Result<Report>| {
        f(&Ctx { cfg, sink, workers: ctx.workers })
    };
    match n {
        1 => {
            let chi1 = 25.0 / (2f64.powf(0.25) * 9.0 * 5f64.exp());
            cfg.exact.solitons = Some(SolitonSet::new(vec![0.25, 1.0], vec![chi1, 2.0])?);
            cfg.grid = config::Grid { x_min: -15.0, x_max: 45.0, nx: 1201, t_list: vec![2.358, 7.073] };
            run(cfg, sink, &|c| grid(c, Solver::Exact, &stem))
        }
        2 => {
            cfg.grid = config::Grid { x_min: -80.0, x_max: 360.0, nx: 881, t_list: vec![10.0, 15.0, 20.0, 30.0] };
            let solver = solver_override.unwrap_or(Solver::Asymptotic);
            run(cfg, sink, &|c| grid(c, solver, &stem))
        }
        3 => {
            cfg.series = (1..=240).map(|j| 0.25 * j as f64).collect();
            run(cfg, sink, &|c| series(c, Series::Peak, &stem))
        }
        4 => {
            cfg.grid = config::Grid {
                x_min: -50.0,
                x_max: 450.0,
                nx: 501,
                t_list: (1..=80).map(|j| 0.5 * j as f64).collect(),
            };
            sink.long_format = true;
            let solver = solver_override.unwrap_or(Solver::Asymptotic);
            run(cfg, sink, &|c| grid(c, solver, &stem))
        }
        5 => {
            cfg.series = (1..=240).map(|j| 0.25 * j as f64).collect();
            run(cfg, sink, &|c| series(c, Series::Velocities, &stem))
        }
        _ => bail!("figure must be 1..=5, got {n}"),
    }
}
