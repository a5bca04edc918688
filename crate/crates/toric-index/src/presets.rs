//! Named example spaces used throughout the tests, benches, and CLI.
//!
//! Each constructor returns the moment polytope together with default circle
//! data whose direction is generic for that polytope, so every preset is
//! ready for the full classification/localization pipeline out of the box.

use crate::error::{Error, Result};
use crate::polytope::{CircleData, DelzantPolytope, Facet};

/// Projective line with symplectic area `k` and linearization shift `m`:
/// the interval `[0, k]` with the identity circle and level map `x - m`.
pub fn cp1(k: i64, m: i64) -> Result<(DelzantPolytope, CircleData)> {
    if k < 1 {
        return Err(Error::BadInput("cp1 needs k >= 1".into()));
    }
    let p = DelzantPolytope::from_facets(
        1,
        vec![Facet::new(vec![1], 0), Facet::new(vec![-1], -k)],
    )?;
    Ok((p, CircleData::new(vec![1], m)?))
}

/// Projective plane at level `k`: the dilated standard simplex `k·conv{0,e1,e2}`
/// with the generic circle direction `(1, 2)`.
pub fn cp2(k: i64) -> Result<(DelzantPolytope, CircleData)> {
    if k < 1 {
        return Err(Error::BadInput("cp2 needs k >= 1".into()));
    }
    let p = DelzantPolytope::from_facets(
        2,
        vec![
            Facet::new(vec![1, 0], 0),
            Facet::new(vec![0, 1], 0),
            Facet::new(vec![-1, -1], -k),
        ],
    )?;
    Ok((p, CircleData::new(vec![1, 2], 0)?))
}

/// Product of two projective lines: the box `[0, k1] x [0, k2]`.
///
/// The default circle direction `(1, k2 + 1)` separates the vertex levels
/// whenever `k1 != k2 * (k2 + 1)`; for such a collision pick another
/// direction by hand.
pub fn cp1xcp1(k1: i64, k2: i64) -> Result<(DelzantPolytope, CircleData)> {
    if k1 < 1 || k2 < 1 {
        return Err(Error::BadInput("cp1xcp1 needs k1, k2 >= 1".into()));
    }
    let p = DelzantPolytope::from_facets(
        2,
        vec![
            Facet::new(vec![1, 0], 0),
            Facet::new(vec![0, 1], 0),
            Facet::new(vec![-1, 0], -k1),
            Facet::new(vec![0, -1], -k2),
        ],
    )?;
    let circle = CircleData::new(vec![1, k2 + 1], 0)?;
    if !circle.is_generic_for(&p) {
        return Err(Error::BadInput(format!(
            "default circle direction (1, {}) is not generic for the {k1} x {k2} box; \
             choose xi explicitly",
            k2 + 1
        )));
    }
    Ok((p, circle))
}

/// Hirzebruch-type trapezoid: `{ x >= 0, 0 <= y <= b, x + a y <= c }` with
/// `c > a b` so all four vertices survive. Default circle direction `(1, a b + b + 1)`
/// is generic for every admissible parameter choice.
pub fn hirzebruch(a: i64, b: i64, c: i64) -> Result<(DelzantPolytope, CircleData)> {
    if a < 1 || b < 1 || c <= a * b {
        return Err(Error::BadInput("hirzebruch needs a, b >= 1 and c > a*b".into()));
    }
    let p = DelzantPolytope::from_facets(
        2,
        vec![
            Facet::new(vec![1, 0], 0),
            Facet::new(vec![0, 1], 0),
            Facet::new(vec![0, -1], -b),
            Facet::new(vec![-1, -a], -c),
        ],
    )?;
    // Vertex pairings with (1, s): 0, s*b, c, c - a*b + s*b. Distinctness
    // needs s*b notin {0, c, c - a*b} and c != c - a*b + s*b, all of which
    // hold for s large enough; s = a*b + b + 1 > both c/b bounds is overkill
    // but uniform. Verify anyway.
    let mut s = a * b + b + 1;
    let circle = loop {
        let c_try = CircleData::new(vec![1, s], 0)?;
        if c_try.is_generic_for(&p) {
            break c_try;
        }
        s += 1;
    };
    Ok((p, circle))
}
