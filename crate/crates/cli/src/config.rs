//! Run configuration: a TOML document with defaults applied and every value checked.

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use solgas::nsoliton::{Method, SolitonSet};
use solgas::{ChiConvention, GasSpec, Numerics, Reflection, Scenario, TrialSolitonSpec};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    Exact,
    Gas,
    Asymptotic,
    Kdv,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    eta1: f64,
    eta2: f64,
    r: Option<RawReflection>,
    kappa0: Option<f64>,
    x0: Option<f64>,
    sigma: Option<f64>,
    chi: Option<f64>,
    /// `log|χ|`, for norming constants outside the double range.
    log_abs_chi: Option<f64>,
    chi_sign_convention: Option<RawConvention>,
    grid: RawGrid,
    solver: Option<Solver>,
    quad: Option<RawQuad>,
    tol: Option<RawTol>,
    max_exponent: Option<f64>,
    output_path: Option<PathBuf>,
    exact: Option<RawExact>,
    series: Option<RawSeries>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum RawConvention {
    AsWritten,
    NegatedX0,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReflection {
    kind: String,
    value: Option<f64>,
    table_path: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    x_min: f64,
    x_max: f64,
    nx: usize,
    t_list: Vec<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuad {
    band_nodes: Option<usize>,
    fredholm_nodes: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTol {
    quad: Option<f64>,
    root: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExact {
    n: Option<usize>,
    method: Option<String>,
    solitons: Option<Vec<RawSoliton>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSoliton {
    kappa: f64,
    chi: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeries {
    t_start: f64,
    t_end: f64,
    nt: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub t_list: Vec<f64>,
}

impl Grid {
    pub fn xs(&self) -> Vec<f64> {
        let h = (self.x_max - self.x_min) / (self.nx - 1) as f64;
        (0..self.nx).map(|j| self.x_min + h * j as f64).collect()
    }
}

/// Settings for the finite-N solver.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSettings {
    /// Number of solitons sampled from the gas density.
    pub n: usize,
    pub method: Method,
    /// Explicit soliton list; replaces the sampled gas and trial soliton when present.
    pub solitons: Option<SolitonSet>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub grid: Grid,
    pub solver: Solver,
    pub numerics: Numerics,
    pub output_path: PathBuf,
    pub exact: ExactSettings,
    /// Times for the peak and velocity series.
    pub series: Vec<f64>,
}

impl RunConfig {
    /// The finite-N soliton set for the `exact` solver.
    pub fn soliton_set(&self) -> Result<SolitonSet> {
        if let Some(s) = &self.exact.solitons {
            return Ok(s.clone());
        }
        let gas = self.scenario.gas()?;
        let mut set = solgas::nsoliton::sample_gas_solitons(self.exact.n, gas)?;
        if let Some(s) = self.scenario.soliton {
            set.kappas.push(s.kappa0);
            set.signs.push(s.sigma);
            set.log_abs_chis.push(s.log_abs_chi);
        }
        Ok(set)
    }
}

/// The built-in scenario: unit reflection on `[0.25, 1]` with a trial soliton
/// `κ₀ = 2` starting at `x = −200`.
pub const DEFAULT_CONFIG: &str = r#"
eta1 = 0.25
eta2 = 1.0
kappa0 = 2.0
x0 = -200.0

[grid]
x_min = -20.0
x_max = 180.0
nx = 401
t_list = [10.0, 15.0, 20.0]

[series]
t_start = 0.5
t_end = 60.0
nt = 120
"#;

pub fn default_config() -> Result<RunConfig> {
    parse(DEFAULT_CONFIG, Path::new("."))
}

pub fn load(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse(&text, base).with_context(|| format!("in config {}", path.display()))
}

/// Parses and validates a configuration document; relative table paths resolve
/// against `base`.
pub fn parse(text: &str, base: &Path) -> Result<RunConfig> {
    let raw: RawConfig = toml::from_str(text)?;
    let r = match &raw.r {
        None => Reflection::constant(1.0)?,
        Some(r) => reflection(r, base)?,
    };
    let gas = GasSpec::new(raw.eta1, raw.eta2, r).context("keys eta1, eta2")?;
    let conv = match raw.chi_sign_convention {
        None | Some(RawConvention::AsWritten) => ChiConvention::AsWritten,
        Some(RawConvention::NegatedX0) => ChiConvention::NegatedX0,
    };
    let soliton = trial_soliton(&raw, conv)?;
    let scenario = Scenario::new(Some(gas), soliton, conv).context("key kappa0")?;

    let g = &raw.grid;
    if g.nx < 2 {
        bail!("grid.nx must be at least 2, got {}", g.nx);
    }
    if !(g.x_max > g.x_min) {
        bail!("grid.x_max must exceed grid.x_min");
    }
    if g.t_list.is_empty() {
        bail!("grid.t_list must not be empty");
    }
    if let Some(t) = g.t_list.iter().find(|t| !(**t > 0.0) || !t.is_finite()) {
        bail!("grid.t_list entries must be positive, got {t}");
    }
    let grid = Grid { x_min: g.x_min, x_max: g.x_max, nx: g.nx, t_list: g.t_list.clone() };

    let numerics = numerics(&raw)?;
    let exact = exact_settings(raw.exact.as_ref())?;
    let series = match &raw.series {
        None => grid.t_list.clone(),
        Some(s) => {
            if s.nt < 2 || !(s.t_end > s.t_start) || !(s.t_start > 0.0) {
                bail!("series needs 0 < t_start < t_end and nt >= 2");
            }
            let h = (s.t_end - s.t_start) / (s.nt - 1) as f64;
            (0..s.nt).map(|j| s.t_start + h * j as f64).collect()
        }
    };
    Ok(RunConfig {
        scenario,
        grid,
        solver: raw.solver.unwrap_or(Solver::Gas),
        numerics,
        output_path: raw.output_path.clone().unwrap_or_else(|| PathBuf::from("out")),
        exact,
        series,
    })
}

fn reflection(r: &RawReflection, base: &Path) -> Result<Reflection> {
    match r.kind.as_str() {
        "constant" => {
            let v = r.value.context("r.kind = \"constant\" needs r.value")?;
            Ok(Reflection::constant(v).context("key r.value")?)
        }
        "table" => {
            let p = r.table_path.as_ref().context("r.kind = \"table\" needs r.table_path")?;
            let p = base.join(p);
            let mut rd = csv::ReaderBuilder::new()
                .has_headers(true)
                .from_path(&p)
                .with_context(|| format!("r.table_path {}", p.display()))?;
            let (mut u, mut v) = (Vec::new(), Vec::new());
            for rec in rd.records() {
                let rec = rec?;
                let field = |i: usize| -> Result<f64> {
                    rec.get(i).context("r table rows need two columns u,r")?.trim().parse().context("r table value")
                };
                u.push(field(0)?);
                v.push(field(1)?);
            }
            Ok(Reflection::table(u, v).context("r.table_path")?)
        }
        other => bail!("r.kind must be \"constant\" or \"table\", got \"{other}\""),
    }
}

fn trial_soliton(raw: &RawConfig, conv: ChiConvention) -> Result<Option<TrialSolitonSpec>> {
    let Some(kappa0) = raw.kappa0 else {
        if raw.x0.is_some() || raw.chi.is_some() || raw.log_abs_chi.is_some() || raw.sigma.is_some() {
            bail!("x0, sigma, chi and log_abs_chi need kappa0");
        }
        return Ok(None);
    };
    let sigma = raw.sigma.unwrap_or(1.0);
    if sigma != 1.0 && sigma != -1.0 {
        bail!("sigma must be 1 or -1, got {sigma}");
    }
    let given = [raw.x0.is_some(), raw.chi.is_some(), raw.log_abs_chi.is_some()].iter().filter(|b| **b).count();
    if given != 1 {
        bail!("a trial soliton needs exactly one of x0, chi, log_abs_chi");
    }
    let s = if let Some(x0) = raw.x0 {
        TrialSolitonSpec::from_x0(kappa0, x0, sigma, conv).context("keys kappa0, x0")?
    } else if let Some(chi) = raw.chi {
        if raw.sigma.is_some() && chi.signum() != sigma {
            bail!("sign of chi disagrees with sigma");
        }
        TrialSolitonSpec::from_chi(kappa0, chi).context("key chi")?
    } else {
        TrialSolitonSpec::from_log_chi(kappa0, sigma, raw.log_abs_chi.unwrap_or_default()).context("key log_abs_chi")?
    };
    Ok(Some(s))
}

fn numerics(raw: &RawConfig) -> Result<Numerics> {
    let mut n = Numerics::default();
    let quad = raw.quad.as_ref();
    if let Some(v) = quad.and_then(|q| q.band_nodes) {
        if v < 8 {
            bail!("quad.band_nodes must be at least 8, got {v}");
        }
        n.band_nodes = v;
    }
    if let Some(v) = quad.and_then(|q| q.fredholm_nodes) {
        if v < 8 {
            bail!("quad.fredholm_nodes must be at least 8, got {v}");
        }
        n.fredholm_nodes = v;
    }
    let tol = raw.tol.as_ref();
    if let Some(v) = tol.and_then(|t| t.quad) {
        if !(v > 0.0) {
            bail!("tol.quad must be positive, got {v}");
        }
        n.tol_quad = v;
    }
    if let Some(v) = tol.and_then(|t| t.root) {
        if !(v > 0.0) {
            bail!("tol.root must be positive, got {v}");
        }
        n.tol_root = v;
    }
    if let Some(v) = raw.max_exponent {
        if !(v > 0.0) || v > 700.0 {
            bail!("max_exponent must lie in (0, 700], got {v}");
        }
        n.max_exponent = v;
    }
    Ok(n)
}

fn exact_settings(raw: Option<&RawExact>) -> Result<ExactSettings> {
    let n = raw.and_then(|e| e.n).unwrap_or(128);
    if n == 0 {
        bail!("exact.n must be positive");
    }
    let method = match raw.and_then(|e| e.method.as_deref()).unwrap_or("logdet") {
        "sum" => Method::Sum,
        "logdet" => Method::LogDet,
        other => bail!("exact.method must be \"sum\" or \"logdet\", got \"{other}\""),
    };
    let solitons = match raw.and_then(|e| e.solitons.as_ref()) {
        None => None,
        Some(list) => Some(
            SolitonSet::new(list.iter().map(|s| s.kappa).collect(), list.iter().map(|s| s.chi).collect())
                .context("exact.solitons")?,
        ),
    };
    Ok(ExactSettings { n, method, solitons })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "eta1 = 0.25\neta2 = 1.0\n[grid]\nx_min = 0.0\nx_max = 10.0\nnx = 11\nt_list = [1.0]\n";

    fn parse_str(text: &str) -> Result<RunConfig> {
        parse(text, Path::new("."))
    }

    #[test]
    fn built_in_default_is_valid() {
        let c = default_config().unwrap();
        assert_eq!(c.scenario.soliton.unwrap().position(), -200.0);
        assert_eq!(c.series.len(), 120);
    }

    #[test]
    fn minimal_document_gets_defaults() {
        let c = parse_str(MINIMAL).unwrap();
        assert_eq!(c.scenario.gas.as_ref().unwrap().r, Reflection::Constant(1.0));
        assert!(c.scenario.soliton.is_none());
        assert_eq!(c.numerics, Numerics::default());
        assert_eq!(c.numerics.band_nodes, 256);
        assert_eq!(c.numerics.fredholm_nodes, 200);
        assert_eq!(c.numerics.max_exponent, 250.0);
        assert_eq!(c.numerics.tol_quad, 1e-10);
        assert_eq!(c.numerics.tol_root, 1e-12);
        assert_eq!(c.solver, Solver::Gas);
        assert_eq!(c.grid.xs().len(), 11);
    }

    #[test]
    fn slow_trial_soliton_is_rejected() {
        let e = parse_str(&format!("kappa0 = 0.9\nx0 = -10.0\n{MINIMAL}")).unwrap_err();
        assert!(format!("{e:#}").contains("kappa0"), "{e:#}");
    }

    #[test]
    fn duplicate_key_is_rejected_with_location() {
        let e = parse_str(&format!("eta1 = 0.3\n{MINIMAL}")).unwrap_err();
        let msg = format!("{e:#}");
        assert!(msg.contains("duplicate") && msg.contains("line"), "{msg}");
    }

    #[test]
    fn missing_and_unknown_keys_are_named() {
        let e = parse_str("eta1 = 0.25\n[grid]\nx_min = 0.0\nx_max = 1.0\nnx = 3\nt_list = [1.0]\n").unwrap_err();
        assert!(format!("{e:#}").contains("eta2"));
        let e = parse_str(&format!("eta3 = 1.0\n{MINIMAL}")).unwrap_err();
        assert!(format!("{e:#}").contains("eta3"));
    }

    #[test]
    fn range_checks_name_the_key() {
        let bad = MINIMAL.replace("nx = 11", "nx = 1");
        assert!(format!("{:#}", parse_str(&bad).unwrap_err()).contains("grid.nx"));
        let bad = MINIMAL.replace("[1.0]", "[1.0, -2.0]");
        assert!(format!("{:#}", parse_str(&bad).unwrap_err()).contains("grid.t_list"));
        let bad = format!("{MINIMAL}[tol]\nquad = 0.0\n");
        assert!(format!("{:#}", parse_str(&bad).unwrap_err()).contains("tol.quad"));
    }

    #[test]
    fn trial_soliton_variants() {
        let c = parse_str(&format!("kappa0 = 2.0\nx0 = -200.0\n{MINIMAL}")).unwrap();
        let s = c.scenario.soliton.unwrap();
        assert_eq!(s.position(), -200.0);
        let c = parse_str(&format!("kappa0 = 2.0\nx0 = -200.0\nchi_sign_convention = \"negated-x0\"\n{MINIMAL}")).unwrap();
        assert!((c.scenario.soliton.unwrap().position() - 200.0).abs() < 1e-12);
        let c = parse_str(&format!("kappa0 = 2.0\nlog_abs_chi = 801.3862943611199\n{MINIMAL}")).unwrap();
        assert!((c.scenario.soliton.unwrap().position() + 200.0).abs() < 1e-9);
        assert!(parse_str(&format!("kappa0 = 2.0\nx0 = 1.0\nchi = 3.0\n{MINIMAL}")).is_err());
        assert!(parse_str(&format!("kappa0 = 2.0\nchi = -3.0\nsigma = 1\n{MINIMAL}")).is_err());
    }

    #[test]
    fn table_reflection_from_file() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("r.csv"), "u,r\n0.25,1.0\n0.5,2.0\n1.0,2.5\n").unwrap();
        let text = format!("{MINIMAL}[r]\nkind = \"table\"\ntable_path = \"r.csv\"\n");
        let c = parse(&text, dir.path()).unwrap();
        assert_eq!(c.scenario.gas.unwrap().r.eval(0.5), 2.0);
    }
}
