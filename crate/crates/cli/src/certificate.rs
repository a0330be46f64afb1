//! Certificates: the JSON record of a scenario run.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use braidbox_core::Tolerance;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::checks::PlannedCheck;

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub anchor: String,
    pub subject: String,
    /// `null` when the check raised an error or the residual is not finite
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// only present when timings were requested
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Environment {
    pub scalar: String,
    pub tolerance_policy: String,
    pub base_tolerance: f64,
    pub rank_threshold: f64,
    pub tolerance_source: String,
    pub version: String,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub scenario: String,
    pub pass: bool,
    pub checks: Vec<CheckRecord>,
    pub environment: Environment,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificates serialize");
        s.push('\n');
        s
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

pub fn environment(tol: &Tolerance, source: &str) -> Environment {
    Environment {
        scalar: "complex f64 (IEEE 754 binary64 real and imaginary parts)".into(),
        tolerance_policy: "residual <= base * dim, dim = ambient Hilbert-space dimension of the compared operators"
            .into(),
        base_tolerance: tol.base,
        rank_threshold: tol.rank,
        tolerance_source: source.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        notes: vec![
            "universal lift of bicharacters: trivialized, every bicharacter is used on the finite level directly".into(),
        ],
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "check panicked".into()
    }
}

fn run_one(p: &PlannedCheck, tol: &Tolerance, timings: bool) -> CheckRecord {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| p.run(tol)));
    let wall_time_ms = timings.then(|| start.elapsed().as_secs_f64() * 1e3);
    let mut rec = CheckRecord {
        check: p.info.id.into(),
        anchor: p.info.anchor.into(),
        subject: p.subject.clone(),
        residual: None,
        tolerance: None,
        pass: false,
        details: BTreeMap::new(),
        error: None,
        wall_time_ms,
    };
    match result {
        Ok(Ok(o)) => {
            rec.residual = finite(o.residual);
            rec.tolerance = Some(o.tolerance);
            rec.pass = o.pass;
            rec.details = o.details;
        }
        Ok(Err(e)) => rec.error = Some(e.to_string()),
        Err(p) => rec.error = Some(format!("internal error: {}", panic_message(p))),
    }
    rec
}

/// Runs the checks in parallel and assembles the records in declaration order.
pub fn run_checks(
    scenario: &str,
    planned: &[PlannedCheck],
    tol: &Tolerance,
    source: &str,
    timings: bool,
) -> Certificate {
    let checks: Vec<CheckRecord> = planned.par_iter().map(|p| run_one(p, tol, timings)).collect();
    Certificate {
        scenario: scenario.into(),
        pass: checks.iter().all(|c| c.pass),
        checks,
        environment: environment(tol, source),
    }
}
