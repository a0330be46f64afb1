//! Scenario-driven batch verification on top of `braidbox_core`.
//!
//! A scenario names groups, bicharacters, coactions and braided bialgebras,
//! then lists checks against them. Running it yields a [`Certificate`].

pub mod certificate;
pub mod checks;
pub mod registry;
pub mod scenario;

use braidbox_core::Tolerance;

pub use certificate::{CheckRecord, Certificate};
pub use scenario::{parse_scenario, read_scenario, LoadError, Scenario};

use crate::checks::{plan, PlannedCheck};
use crate::registry::Registry;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const TOLERANCE_ENV: &str = "BRAIDBOX_TOLERANCE";

/// Built-in scenarios for `demo`.
pub const DEMOS: &[(&str, &str)] = &[
    ("z2_koszul", include_str!("../scenarios/z2_koszul.json")),
    ("z4_nonsymmetric", include_str!("../scenarios/z4_nonsymmetric.json")),
    ("heisenberg_double", include_str!("../scenarios/heisenberg_double.json")),
    ("partial_dual_s3", include_str!("../scenarios/partial_dual_s3.json")),
    ("semidirect_trivial", include_str!("../scenarios/semidirect_trivial.json")),
];

pub fn demo(name: &str) -> Option<&'static str> {
    DEMOS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Base tolerance with its source: command line, then scenario, then
/// environment, then the default.
pub fn resolve_tolerance(
    flag: Option<f64>,
    scenario: &Scenario,
    env: Option<&str>,
) -> Result<(f64, &'static str), LoadError> {
    if let Some(t) = flag {
        return scenario::check_tolerance(t).map(|t| (t, "command line")).map_err(LoadError::Invalid);
    }
    if let Some(t) = scenario.tolerance {
        return Ok((t, "scenario"));
    }
    if let Some(s) = env {
        let t: f64 = s
            .trim()
            .parse()
            .map_err(|_| LoadError::Invalid(format!("{TOLERANCE_ENV}={s:?} is not a number")))?;
        return scenario::check_tolerance(t).map(|t| (t, "environment")).map_err(LoadError::Invalid);
    }
    Ok((DEFAULT_TOLERANCE, "default"))
}

/// A scenario with its objects built and checks resolved.
pub struct Prepared {
    pub name: String,
    pub tolerance: Tolerance,
    pub tolerance_source: &'static str,
    pub registry: Registry,
    pub checks: Vec<PlannedCheck>,
}

pub fn prepare(scenario: &Scenario, base: f64, source: &'static str) -> Result<Prepared, LoadError> {
    let tolerance = Tolerance::with_base(base);
    let registry = Registry::build(scenario, &tolerance)?;
    let checks = scenario
        .checks
        .iter()
        .map(|c| plan(c, &registry, &tolerance))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Prepared {
        name: scenario.name.clone(),
        tolerance,
        tolerance_source: source,
        registry,
        checks,
    })
}

impl Prepared {
    pub fn run(&self, timings: bool) -> Certificate {
        certificate::run_checks(&self.name, &self.checks, &self.tolerance, self.tolerance_source, timings)
    }
}

/// Parse, build and run with the given tolerance override.
pub fn verify_text(text: &str, flag: Option<f64>, env: Option<&str>) -> Result<Certificate, LoadError> {
    let s = parse_scenario(text)?;
    let (base, source) = resolve_tolerance(flag, &s, env)?;
    Ok(prepare(&s, base, source)?.run(false))
}
