//! Batch self-verification: every theorem the library relies on, replayed
//! as an executable check on concrete inputs.
//!
//! A [`verify_case`] run plays the independent computation routes against
//! each other on one polytope: lattice counting versus fixed-point series
//! for the global character, slice histograms versus that character for
//! localization and reduction, support conditions for vanishing, and the
//! recentering identity for the shifting trick. None of the checks assumes
//! another's conclusion; a bug in either route surfaces as a named failing
//! check rather than a silently consistent wrong answer.

use serde::Serialize;

use crate::error::Result;
use crate::index;
use crate::local_index;
use crate::polytope::{CircleData, DelzantPolytope};
use crate::random::{self, SampleCase};
use crate::reduction;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Outcome of one named check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Human-oriented context (expected/actual or a short explanation).
    pub detail: String,
}

impl CheckOutcome {
    fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        CheckOutcome { name, passed: true, detail: detail.into() }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        CheckOutcome { name, passed: false, detail: detail.into() }
    }
}

/// All check outcomes for one case.
#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub family: String,
    pub dim: usize,
    pub lattice_points: usize,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

/// Aggregate over a batch of cases.
#[derive(Debug, Clone, Serialize)]
pub struct BatchSummary {
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    /// Reports of the failing cases only (passing cases stay summarized).
    pub failures: Vec<CaseReport>,
}

/// Run the full check battery on one polytope with its circle data.
pub fn verify_case(p: &DelzantPolytope, circle: &CircleData, family: &str) -> CaseReport {
    let mut checks = Vec::with_capacity(5);
    checks.push(routes_agree(p, circle));
    match local_index::localization_report(p, circle) {
        Ok(report) => {
            checks.push(if report.localization_ok {
                CheckOutcome::pass("localization", "component characters sum to the global one")
            } else {
                CheckOutcome::fail("localization", "component sum differs from the global character")
            });
            checks.push(if report.vanishing_ok {
                CheckOutcome::pass("vanishing", "all components supported on their own level")
            } else {
                CheckOutcome::fail("vanishing", "a component leaks weight off its level")
            });
        }
        Err(e) => {
            checks.push(CheckOutcome::fail("localization", e.to_string()));
            checks.push(CheckOutcome::fail("vanishing", e.to_string()));
        }
    }
    checks.push(qr_agrees(p, circle));
    checks.push(shifting_trick(p, circle));
    let passed = checks.iter().all(|c| c.passed);
    CaseReport {
        family: family.to_string(),
        dim: p.dim(),
        lattice_points: p.lattice_points().len(),
        checks,
        passed,
    }
}

fn routes_agree(p: &DelzantPolytope, circle: &CircleData) -> CheckOutcome {
    let name = "index-routes-agree";
    let computed = (|| -> Result<(crate::Character, crate::Character)> {
        Ok((
            index::global_circle_character(p, circle)?,
            index::atiyah_bott_character(p, circle)?,
        ))
    })();
    match computed {
        Ok((lattice, fixed)) if lattice == fixed => {
            CheckOutcome::pass(name, format!("both routes give {lattice}"))
        }
        Ok((lattice, fixed)) => CheckOutcome::fail(
            name,
            format!("lattice route {lattice} vs fixed-point route {fixed}"),
        ),
        Err(e) => CheckOutcome::fail(name, e.to_string()),
    }
}

fn qr_agrees(p: &DelzantPolytope, circle: &CircleData) -> CheckOutcome {
    let name = "quantization-reduction";
    match reduction::qr_report(p, circle) {
        Ok(report) => {
            let regular = report.rows.iter().filter(|r| r.regular).count();
            if report.all_agree {
                CheckOutcome::pass(
                    name,
                    format!("slice counts match multiplicities at {regular} regular levels"),
                )
            } else {
                let bad: Vec<i64> = report
                    .rows
                    .iter()
                    .filter(|r| !r.agree)
                    .map(|r| r.level)
                    .collect();
                CheckOutcome::fail(name, format!("disagreement at levels {bad:?}"))
            }
        }
        Err(e) => CheckOutcome::fail(name, e.to_string()),
    }
}

fn shifting_trick(p: &DelzantPolytope, circle: &CircleData) -> CheckOutcome {
    let name = "shifting-trick";
    let run = || -> Result<Option<i64>> {
        let range = p.moment_range(circle)?;
        for gamma in range.min..=range.max {
            if !reduction::is_regular_level(p, circle, gamma)? {
                continue;
            }
            let (direct, recentered) = reduction::shifted_reduction_pair(p, circle, gamma)?;
            if direct != recentered {
                return Ok(Some(gamma));
            }
        }
        Ok(None)
    };
    match run() {
        Ok(None) => CheckOutcome::pass(name, "recentering preserves every regular reduction"),
        Ok(Some(gamma)) => {
            CheckOutcome::fail(name, format!("recentering changes the count at level {gamma}"))
        }
        Err(e) => CheckOutcome::fail(name, e.to_string()),
    }
}

/// Compare the spectral route against the exact local index at every
/// integer level of the segment `[0, k]` with shift `m`.
///
/// Uses a lighter (but still admissible) grid than the library defaults so
/// the battery stays cheap; the acceptance tests pin the full operating
/// point separately.
pub fn verify_cp1_spectral(k: i64, m: i64) -> CheckOutcome {
    let name = "spectral-local-index";
    let params = crate::spectral::SpectralParams {
        half_width: 4.0,
        grid: 1001,
        window: 3,
        ..Default::default()
    };
    let run = || -> Result<Option<String>> {
        let (p, c) = crate::presets::cp1(k, m)?;
        for gamma in -m..=(k - m) {
            let level = crate::Rational64::from_integer(gamma);
            let exact = crate::local_index::local_index_at(&p, &c, level)?;
            let report = crate::spectral::cp1_spectral_index(k, m, level, &params)?;
            if report.character != exact {
                return Ok(Some(format!(
                    "level {gamma}: spectral {} vs exact {}",
                    report.character, exact
                )));
            }
        }
        Ok(None)
    };
    match run() {
        Ok(None) => CheckOutcome::pass(
            name,
            format!("spectral kernels match the exact local index at all {} levels", k + 1),
        ),
        Ok(Some(detail)) => CheckOutcome::fail(name, detail),
        Err(e) => CheckOutcome::fail(name, e.to_string()),
    }
}

/// The named example spaces exercised by default.
pub fn preset_suite() -> Vec<(String, DelzantPolytope, CircleData)> {
    let mut out = Vec::new();
    let mut push = |name: &str, pair: Result<(DelzantPolytope, CircleData)>| {
        let (p, c) = pair.expect("preset construction");
        out.push((name.to_string(), p, c));
    };
    push("cp1(1,0)", crate::presets::cp1(1, 0));
    push("cp1(3,1)", crate::presets::cp1(3, 1));
    push("cp1(5,-2)", crate::presets::cp1(5, -2));
    push("cp2(2)", crate::presets::cp2(2));
    push("cp2(3)", crate::presets::cp2(3));
    push("cp1xcp1(1,1)", crate::presets::cp1xcp1(1, 1));
    push("cp1xcp1(3,2)", crate::presets::cp1xcp1(3, 2));
    push("hirzebruch(1,1,2)", crate::presets::hirzebruch(1, 1, 2));
    // The simplex presets again with a nonzero linearization shift.
    let (p, c) = crate::presets::cp2(2).expect("preset construction");
    let shifted = CircleData::new(c.xi.clone(), 1).expect("primitive direction");
    out.push(("cp2(2) shift 1".to_string(), p, shifted));
    let (p, c) = crate::presets::cp2(3).expect("preset construction");
    let shifted = CircleData::new(c.xi.clone(), 1).expect("primitive direction");
    out.push(("cp2(3) shift 1".to_string(), p, shifted));
    out
}

/// Verify every preset.
pub fn verify_presets() -> Vec<CaseReport> {
    preset_suite()
        .iter()
        .map(|(name, p, c)| verify_case(p, c, name))
        .collect()
}

/// Verify a seeded random batch, in parallel when enabled. Only failing
/// cases keep their full reports; the summary counts the rest.
pub fn verify_random_batch(seed: u64, count: usize) -> BatchSummary {
    let cases = random::sample_suite(seed, count);
    let reports = run_cases(&cases);
    let failures: Vec<CaseReport> = reports.iter().filter(|r| !r.passed).cloned().collect();
    BatchSummary {
        cases: reports.len(),
        passed: reports.iter().filter(|r| r.passed).count(),
        failed: failures.len(),
        failures,
    }
}

fn run_cases(cases: &[SampleCase]) -> Vec<CaseReport> {
    #[cfg(feature = "parallel")]
    {
        cases
            .par_iter()
            .map(|case| verify_case(&case.polytope, &case.circle, &case.family))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        cases
            .iter()
            .map(|case| verify_case(&case.polytope, &case.circle, &case.family))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_all_pass() {
        for report in verify_presets() {
            assert!(report.passed, "{}: {:?}", report.family, report.checks);
            assert_eq!(report.checks.len(), 5);
        }
    }

    #[test]
    fn spectral_check_passes_on_a_short_segment() {
        let outcome = verify_cp1_spectral(1, 0);
        assert!(outcome.passed, "{}", outcome.detail);
        assert_eq!(outcome.name, "spectral-local-index");
    }

    #[test]
    fn small_random_batch_passes() {
        let summary = verify_random_batch(99, 12);
        assert_eq!(summary.cases, 12);
        assert_eq!(summary.failed, 0, "failures: {:?}", summary.failures);
        assert_eq!(summary.passed, 12);
    }

    #[test]
    fn check_names_are_stable() {
        let (p, c) = crate::presets::cp1(2, 0).unwrap();
        let report = verify_case(&p, &c, "cp1(2,0)");
        let names: Vec<&str> = report.checks.iter().map(|c| c.name).collect();
        assert_eq!(
            names,
            vec![
                "index-routes-agree",
                "localization",
                "vanishing",
                "quantization-reduction",
                "shifting-trick"
            ]
        );
    }
}
