//! Fixtures shared by the benchmarks.

use solgas::{ChiConvention, GasSpec, Scenario, TrialSolitonSpec};

/// Unit reflection on `[0.25, 1]`.
pub fn gas() -> GasSpec {
    GasSpec::uniform(0.25, 1.0).expect("valid band")
}

/// The gas with a `κ₀ = 2` trial soliton starting at `x = −200`.
pub fn trial_scenario() -> Scenario {
    let s = TrialSolitonSpec::from_x0(2.0, -200.0, 1.0, ChiConvention::AsWritten).expect("valid soliton");
    Scenario::new(Some(gas()), Some(s), ChiConvention::AsWritten).expect("kappa0 above the band")
}
