//! Global index characters by two independent routes.
//!
//! Route one ([`danilov_character`]) counts lattice points: the torus
//! character of the index is the sum of `t^q` over lattice points `q` of the
//! moment polytope, each with multiplicity one. Restricting to a generic
//! circle and normalizing gives [`global_circle_character`].
//!
//! Route two ([`atiyah_bott_character`]) never enumerates lattice points: it
//! sums rational fixed-point contributions over the vertices,
//!
//! ```text
//!   sum_v  t^(level(v)) / prod_e (1 - t^(w_e)),
//! ```
//!
//! expanding each factor as a geometric series in the direction that makes
//! the sign of `w_e` positive, and cancelling the infinite tails across
//! vertices. The two routes agreeing on a polytope is a nontrivial check of
//! both, and the test suites compare them relentlessly.

use num_bigint::BigInt;

use crate::character::Character;
use crate::error::Result;
use crate::polytope::{CircleData, DelzantPolytope};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Circle-equivariant data at one fixed point (vertex) of the action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointDatum {
    pub vertex: Vec<i64>,
    /// Pairings of the circle direction with the edge basis at the vertex;
    /// all nonzero when the circle is generic.
    pub tangent_weights: Vec<i64>,
    /// Weight of the circle action on the line over the fixed point, in the
    /// normalized convention: `<vertex, xi> - shift`.
    pub fiber_weight: i64,
}

/// Tangent and fiber weights at every vertex, requiring a generic circle.
pub fn fixed_point_data(
    p: &DelzantPolytope,
    circle: &CircleData,
) -> Result<Vec<FixedPointDatum>> {
    // Distinct vertex levels imply nonzero edge pairings, since an edge
    // connects two vertices whose levels differ by a multiple of its weight.
    p.moment_range(circle)?;
    Ok(p.vertices()
        .iter()
        .zip(p.vertex_edges())
        .map(|(v, edges)| FixedPointDatum {
            vertex: v.clone(),
            tangent_weights: edges
                .iter()
                .map(|e| crate::linalg::dot_i64(e, &circle.xi))
                .collect(),
            fiber_weight: circle.level_of(v),
        })
        .collect())
}

/// Full torus character of the index: one term `t^q` per lattice point.
pub fn danilov_character(p: &DelzantPolytope) -> Character {
    Character::from_terms(
        p.dim(),
        p.lattice_points().into_iter().map(|q| (q, BigInt::from(1))),
    )
    .expect("lattice points have the ambient dimension")
}

/// Normalized circle character via the lattice route: restrict the torus
/// character along `xi`, then shift every weight down by `circle.shift`.
pub fn global_circle_character(
    p: &DelzantPolytope,
    circle: &CircleData,
) -> Result<Character> {
    danilov_character(p)
        .restrict_to_circle(&circle.xi)?
        .tensor_shift(&[-circle.shift])
}

/// Normalized circle character via the fixed-point route.
///
/// Independent of [`danilov_character`]: only vertex and edge data enter.
/// The geometric series are accumulated on a window one guard stride wider
/// than the vertex levels; the guard band must cancel to zero exactly, and a
/// nonzero remainder aborts (it would mean the series bookkeeping is wrong,
/// not that the input is bad).
pub fn atiyah_bott_character(p: &DelzantPolytope, circle: &CircleData) -> Result<Character> {
    let data = fixed_point_data(p, circle)?;
    let window = SeriesWindow::for_data(&data);
    #[cfg(feature = "parallel")]
    let acc = data
        .par_iter()
        .map(|d| window.vertex_series(d))
        .reduce(|| vec![0i128; window.len], add_coeffs);
    #[cfg(not(feature = "parallel"))]
    let acc = data
        .iter()
        .map(|d| window.vertex_series(d))
        .fold(vec![0i128; window.len], add_coeffs);
    window.finish(acc)
}

/// Sequential variant of [`atiyah_bott_character`], always compiled; the
/// parallel path must produce identical output.
pub fn atiyah_bott_character_seq(
    p: &DelzantPolytope,
    circle: &CircleData,
) -> Result<Character> {
    let data = fixed_point_data(p, circle)?;
    let window = SeriesWindow::for_data(&data);
    let acc = data
        .iter()
        .map(|d| window.vertex_series(d))
        .fold(vec![0i128; window.len], add_coeffs);
    window.finish(acc)
}

/// Coefficient window for the fixed-point series: normalized levels
/// `level_min ..= level_min + len - 1`, covering every vertex contribution's
/// starting exponent plus a guard stride past `level_max`.
struct SeriesWindow {
    level_min: i64,
    level_max: i64,
    len: usize,
}

impl SeriesWindow {
    fn for_data(data: &[FixedPointDatum]) -> SeriesWindow {
        let level_min = data.iter().map(|d| d.fiber_weight).min().expect("no vertices");
        let level_max = data.iter().map(|d| d.fiber_weight).max().expect("no vertices");
        let guard = data
            .iter()
            .flat_map(|d| d.tangent_weights.iter().map(|w| w.unsigned_abs()))
            .max()
            .unwrap_or(1)
            .max(1);
        // A vertex whose negative-weight edges are folded into the base can
        // start past level_max; the window covers every base.
        let base_max = data
            .iter()
            .map(|d| {
                d.fiber_weight
                    + d.tangent_weights
                        .iter()
                        .filter(|&&w| w < 0)
                        .map(|w| w.unsigned_abs() as i64)
                        .sum::<i64>()
            })
            .max()
            .expect("no vertices");
        let top = base_max.max(level_max + guard as i64);
        let len = usize::try_from(top - level_min + 1).expect("window too large");
        SeriesWindow { level_min, level_max, len }
    }

    /// One vertex's truncated series, signed: coefficients of
    /// `(-1)^(#neg) t^base prod_e sum_j t^(j |w_e|)` on the window.
    fn vertex_series(&self, d: &FixedPointDatum) -> Vec<i128> {
        let mut coeffs = vec![0i128; self.len];
        let negatives = d.tangent_weights.iter().filter(|&&w| w < 0).count();
        let base = d.fiber_weight
            + d.tangent_weights
                .iter()
                .filter(|&&w| w < 0)
                .map(|w| w.unsigned_abs() as i64)
                .sum::<i64>();
        let start = usize::try_from(base - self.level_min).expect("base below window");
        coeffs[start] = if negatives % 2 == 0 { 1 } else { -1 };
        for &w in &d.tangent_weights {
            let stride = w.unsigned_abs() as usize;
            // Multiply by the geometric series of the stride: a running sum.
            for j in start + stride..self.len {
                coeffs[j] += coeffs[j - stride];
            }
        }
        coeffs
    }

    /// Sum the window into a character, enforcing tail cancellation.
    fn finish(&self, acc: Vec<i128>) -> Result<Character> {
        let keep = usize::try_from(self.level_max - self.level_min + 1).expect("window order");
        for (offset, &c) in acc.iter().enumerate().skip(keep) {
            assert_eq!(
                c,
                0,
                "fixed-point series failed to cancel at level {}",
                self.level_min + offset as i64
            );
        }
        Character::from_terms(
            1,
            acc[..keep].iter().enumerate().filter(|(_, &c)| c != 0).map(|(offset, &c)| {
                (vec![self.level_min + offset as i64], BigInt::from(c))
            }),
        )
    }
}

fn add_coeffs(mut a: Vec<i128>, b: Vec<i128>) -> Vec<i128> {
    debug_assert_eq!(a.len(), b.len());
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn circle_char_pairs(ch: &Character) -> Vec<(i64, i64)> {
        ch.terms()
            .map(|(w, m)| (w[0], i64::try_from(m).unwrap()))
            .collect()
    }

    #[test]
    fn segment_both_routes() {
        let (p, c) = presets::cp1(3, 0).unwrap();
        let expect = vec![(0, 1), (1, 1), (2, 1), (3, 1)];
        assert_eq!(circle_char_pairs(&global_circle_character(&p, &c).unwrap()), expect);
        assert_eq!(circle_char_pairs(&atiyah_bott_character(&p, &c).unwrap()), expect);
    }

    #[test]
    fn shifted_segment_both_routes() {
        let (p, c) = presets::cp1(3, 1).unwrap();
        let expect = vec![(-1, 1), (0, 1), (1, 1), (2, 1)];
        assert_eq!(circle_char_pairs(&global_circle_character(&p, &c).unwrap()), expect);
        assert_eq!(circle_char_pairs(&atiyah_bott_character(&p, &c).unwrap()), expect);
    }

    #[test]
    fn dilated_simplex_fixed_points_cancel() {
        let (p, c) = presets::cp2(2).unwrap();
        let expect = vec![(0, 1), (1, 1), (2, 2), (3, 1), (4, 1)];
        assert_eq!(circle_char_pairs(&atiyah_bott_character(&p, &c).unwrap()), expect);
        assert_eq!(circle_char_pairs(&global_circle_character(&p, &c).unwrap()), expect);
    }

    #[test]
    fn trapezoid_both_routes() {
        let (p, c) = presets::hirzebruch(1, 1, 2).unwrap();
        let expect: Vec<(i64, i64)> = (0..=4).map(|l| (l, 1)).collect();
        assert_eq!(circle_char_pairs(&atiyah_bott_character(&p, &c).unwrap()), expect);
        assert_eq!(circle_char_pairs(&global_circle_character(&p, &c).unwrap()), expect);
    }

    #[test]
    fn point_polytope_character_is_single_weight() {
        use crate::polytope::{CircleData, DelzantPolytope, Facet};
        let p = DelzantPolytope::from_facets(
            1,
            vec![Facet::new(vec![1], 2), Facet::new(vec![-1], -2)],
        )
        .unwrap();
        let c = CircleData::new(vec![1], 5).unwrap();
        assert_eq!(circle_char_pairs(&atiyah_bott_character(&p, &c).unwrap()), vec![(-3, 1)]);
        assert_eq!(
            circle_char_pairs(&global_circle_character(&p, &c).unwrap()),
            vec![(-3, 1)]
        );
    }

    #[test]
    fn fixed_point_data_on_segment() {
        let (p, c) = presets::cp1(3, 1).unwrap();
        let data = fixed_point_data(&p, &c).unwrap();
        assert_eq!(data.len(), 2);
        assert_eq!(data[0].vertex, vec![0]);
        assert_eq!(data[0].tangent_weights, vec![1]);
        assert_eq!(data[0].fiber_weight, -1);
        assert_eq!(data[1].vertex, vec![3]);
        assert_eq!(data[1].tangent_weights, vec![-1]);
        assert_eq!(data[1].fiber_weight, 2);
    }

    #[test]
    fn danilov_total_multiplicity_counts_lattice_points() {
        let (p, _) = presets::cp2(3).unwrap();
        let ch = danilov_character(&p);
        assert_eq!(ch.total_multiplicity(), BigInt::from(p.lattice_points().len()));
    }

    #[test]
    fn parallel_and_sequential_routes_agree() {
        for (p, c) in [
            presets::cp2(4).unwrap(),
            presets::cp1xcp1(3, 2).unwrap(),
            presets::hirzebruch(2, 3, 7).unwrap(),
        ] {
            assert_eq!(
                atiyah_bott_character(&p, &c).unwrap(),
                atiyah_bott_character_seq(&p, &c).unwrap()
            );
        }
    }

    #[test]
    fn routes_agree_on_boxes_with_skew_directions() {
        use crate::polytope::CircleData;
        for (k1, k2, q) in [(1i64, 1i64, 3i64), (4, 2, 5), (5, 3, 7)] {
            let (p, _) = presets::cp1xcp1(k1, k2).unwrap();
            let c = CircleData::new(vec![1, q], 2).unwrap();
            if !c.is_generic_for(&p) {
                continue;
            }
            assert_eq!(
                atiyah_bott_character(&p, &c).unwrap(),
                global_circle_character(&p, &c).unwrap()
            );
        }
    }
}
