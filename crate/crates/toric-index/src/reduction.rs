//! Symplectic reduction at integer levels and the quantization ledger.
//!
//! At a regular integer level the reduced space is again a compact toric
//! space, with moment polytope the slice of the original polytope at that
//! level; its Riemann-Roch number is the slice's lattice point count, taken
//! in the lattice the slice hyperplane inherits. Because the circle
//! direction is primitive, those slice lattice points are exactly the
//! ambient lattice points sitting at the level, so the count is computed
//! directly and independently of any character machinery.
//!
//! [`qr_report`] compares that count against the weight multiplicity in the
//! global character computed by the fixed-point route. The two agreeing at
//! every regular level is the statement that quantization commutes with
//! reduction, and here it is a check, not a definition.
//!
//! At a critical level (the level of a vertex) the reduced space degenerates
//! and no count is offered; asking for one is an error.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index;
use crate::polytope::{CircleData, DelzantPolytope};

/// Is the level a regular value of the normalized moment map? Levels outside
/// the moment image are vacuously regular (their level set is empty).
pub fn is_regular_level(p: &DelzantPolytope, circle: &CircleData, level: i64) -> Result<bool> {
    Ok(!p.moment_range(circle)?.is_critical(level))
}

/// Lattice point count of the reduced space at a regular integer level.
///
/// Counts ambient lattice points on the slice; errors with
/// [`Error::CriticalValue`] at vertex levels, where the reduced space is
/// singular. Levels outside the moment image reduce to the empty space and
/// count zero.
pub fn reduced_lattice_count(
    p: &DelzantPolytope,
    circle: &CircleData,
    level: i64,
) -> Result<u64> {
    if !is_regular_level(p, circle, level)? {
        return Err(Error::CriticalValue { level });
    }
    Ok(p.lattice_points()
        .iter()
        .filter(|q| circle.level_of(q) == level)
        .count() as u64)
}

/// One row of the quantization-vs-reduction comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QrRow {
    pub level: i64,
    pub regular: bool,
    /// Slice count at regular levels; absent where reduction is singular.
    pub reduced_index: Option<u64>,
    /// Weight multiplicity in the fixed-point character.
    #[serde(serialize_with = "crate::character::serialize_mult")]
    pub multiplicity: BigInt,
    /// Vacuously true at critical levels.
    pub agree: bool,
}

/// Comparison table over every integer level of the moment image.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QrReport {
    pub rows: Vec<QrRow>,
    /// True when every regular row agrees.
    pub all_agree: bool,
}

/// Build the full comparison: slice counts against character multiplicities.
pub fn qr_report(p: &DelzantPolytope, circle: &CircleData) -> Result<QrReport> {
    let range = p.moment_range(circle)?;
    let global = index::atiyah_bott_character(p, circle)?;
    let mut rows = Vec::with_capacity((range.max - range.min + 1) as usize);
    for level in range.min..=range.max {
        let multiplicity = global.circle_multiplicity(level)?;
        let (reduced_index, agree) = if range.is_critical(level) {
            (None, true)
        } else {
            let count = reduced_lattice_count(p, circle, level)?;
            let agree = BigInt::from(count) == multiplicity;
            (Some(count), agree)
        };
        rows.push(QrRow {
            level,
            regular: reduced_index.is_some(),
            reduced_index,
            multiplicity,
            agree,
        });
    }
    let all_agree = rows.iter().all(|r| r.agree);
    Ok(QrReport { rows, all_agree })
}

/// Does quantization commute with reduction at every regular level?
pub fn qr_check(p: &DelzantPolytope, circle: &CircleData) -> Result<bool> {
    Ok(qr_report(p, circle)?.all_agree)
}

/// Shifting-trick comparison at one level: reducing at level `gamma` with
/// shift `s` must match reducing at level zero with shift `s + gamma`.
/// Returns the two counts for the caller to compare or report.
pub fn shifted_reduction_pair(
    p: &DelzantPolytope,
    circle: &CircleData,
    gamma: i64,
) -> Result<(u64, u64)> {
    let direct = reduced_lattice_count(p, circle, gamma)?;
    let recentered = CircleData::new(circle.xi.clone(), circle.shift + gamma)?;
    let at_zero = reduced_lattice_count(p, &recentered, 0)?;
    Ok((direct, at_zero))
}
