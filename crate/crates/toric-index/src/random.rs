//! Seeded random Delzant polytopes with generic circle data.
//!
//! Sampling never searches for valid half-space systems: each draw starts
//! from a catalog family that is Delzant by construction (segments,
//! simplices, boxes, trapezoids, prisms) and applies a random
//! affine-unimodular change of coordinates, which preserves the Delzant
//! package and the lattice point count while thoroughly scrambling the
//! facet presentation. Sizes are capped so every sample has at most 500
//! lattice points and a bounding box small enough to enumerate quickly.
//!
//! Everything is driven by a seeded ChaCha stream, so a suite is a pure
//! function of `(seed, count)` and failures replay exactly.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::polytope::{CircleData, DelzantPolytope, Facet};

/// One random verification case.
#[derive(Debug, Clone)]
pub struct SampleCase {
    /// Catalog family plus parameters (for replaying failures by eye).
    pub family: String,
    pub polytope: DelzantPolytope,
    pub circle: CircleData,
}

/// Largest admissible bounding-box volume (scan cost cap).
const MAX_BOX_VOLUME: i64 = 200_000;

fn simplex_facets(dim: usize, k: i64) -> Vec<Facet> {
    let mut facets: Vec<Facet> = (0..dim)
        .map(|i| {
            let mut n = vec![0i64; dim];
            n[i] = 1;
            Facet::new(n, 0)
        })
        .collect();
    facets.push(Facet::new(vec![-1; dim], -k));
    facets
}

fn box_facets(sides: &[i64]) -> Vec<Facet> {
    let dim = sides.len();
    let mut facets = Vec::with_capacity(2 * dim);
    for i in 0..dim {
        let mut lo = vec![0i64; dim];
        lo[i] = 1;
        facets.push(Facet::new(lo, 0));
        let mut hi = vec![0i64; dim];
        hi[i] = -1;
        facets.push(Facet::new(hi, -sides[i]));
    }
    facets
}

/// A catalog polytope of the given dimension, Delzant by construction.
pub fn sample_delzant(rng: &mut ChaCha8Rng, dim: usize) -> (String, DelzantPolytope) {
    let (family, facets) = match dim {
        1 => {
            let k = rng.gen_range(1..=40);
            (format!("segment(k={k})"), box_facets(&[k]))
        }
        2 => match rng.gen_range(0..3) {
            0 => {
                let k = rng.gen_range(1..=20);
                (format!("simplex2(k={k})"), simplex_facets(2, k))
            }
            1 => {
                let k1 = rng.gen_range(1..=15);
                let k2 = rng.gen_range(1..=15);
                (format!("box2(k1={k1},k2={k2})"), box_facets(&[k1, k2]))
            }
            _ => {
                let a = rng.gen_range(1..=3);
                let b = rng.gen_range(1..=5);
                let c = a * b + rng.gen_range(1..=10);
                let facets = vec![
                    Facet::new(vec![1, 0], 0),
                    Facet::new(vec![0, 1], 0),
                    Facet::new(vec![0, -1], -b),
                    Facet::new(vec![-1, -a], -c),
                ];
                (format!("trapezoid(a={a},b={b},c={c})"), facets)
            }
        },
        3 => match rng.gen_range(0..3) {
            0 => {
                let k = rng.gen_range(1..=10);
                (format!("simplex3(k={k})"), simplex_facets(3, k))
            }
            1 => {
                let sides: Vec<i64> = (0..3).map(|_| rng.gen_range(1..=6)).collect();
                (format!("box3({sides:?})"), box_facets(&sides))
            }
            _ => {
                let k = rng.gen_range(1..=7);
                let k3 = rng.gen_range(1..=7);
                let facets = vec![
                    Facet::new(vec![1, 0, 0], 0),
                    Facet::new(vec![0, 1, 0], 0),
                    Facet::new(vec![-1, -1, 0], -k),
                    Facet::new(vec![0, 0, 1], 0),
                    Facet::new(vec![0, 0, -1], -k3),
                ];
                (format!("prism(k={k},k3={k3})"), facets)
            }
        },
        other => panic!("no catalog for dimension {other}"),
    };
    let p = DelzantPolytope::from_facets(dim, facets)
        .expect("catalog polytopes are Delzant by construction");
    (family, p)
}

/// Random element of GL(n, Z): a short product of elementary shears and
/// sign flips. `strength` bounds the shear entries; higher dimensions get
/// gentler shears to keep bounding boxes enumerable.
pub fn random_unimodular(rng: &mut ChaCha8Rng, dim: usize, strength: i64) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i64>> =
        (0..dim).map(|i| (0..dim).map(|j| i64::from(i == j)).collect()).collect();
    if dim == 1 {
        if rng.gen_bool(0.5) {
            a[0][0] = -1;
        }
        return a;
    }
    let rounds = rng.gen_range(1..=3);
    for _ in 0..rounds {
        let i = rng.gen_range(0..dim);
        let mut j = rng.gen_range(0..dim - 1);
        if j >= i {
            j += 1;
        }
        let e = *[-strength, -1, 1, strength]
            .get(rng.gen_range(0..4))
            .expect("shear entry choices are nonempty");
        let source = a[j].clone();
        for (entry, s) in a[i].iter_mut().zip(&source) {
            *entry += e * s;
        }
    }
    if rng.gen_bool(0.3) {
        let i = rng.gen_range(0..dim);
        for entry in a[i].iter_mut() {
            *entry = -*entry;
        }
    }
    a
}

fn bounding_box_volume(p: &DelzantPolytope) -> i64 {
    let (lo, hi) = p.bounding_box();
    lo.iter().zip(&hi).map(|(&l, &h)| h - l + 1).product()
}

/// Random affine-unimodular image of a catalog polytope, with the bounding
/// box kept enumerable (oversheared draws are retried, falling back to the
/// untransformed polytope if the stream is persistently unlucky).
fn scrambled(rng: &mut ChaCha8Rng, dim: usize) -> (String, DelzantPolytope) {
    let (family, base) = sample_delzant(rng, dim);
    let strength = if dim >= 3 { 1 } else { 2 };
    for _ in 0..40 {
        let a = random_unimodular(rng, dim, strength);
        let b: Vec<i64> = (0..dim).map(|_| rng.gen_range(-5..=5)).collect();
        let image = base
            .unimodular_image(&a, &b)
            .expect("unimodular image of a Delzant polytope is Delzant");
        if bounding_box_volume(&image) <= MAX_BOX_VOLUME {
            return (family, image);
        }
    }
    (family, base)
}

/// Random primitive generic circle direction and shift for the polytope.
/// Entries start in [-4, 4] and the range widens if the polytope keeps
/// rejecting directions (ties in the vertex pairings).
pub fn sample_circle(rng: &mut ChaCha8Rng, p: &DelzantPolytope) -> CircleData {
    let dim = p.dim();
    for attempt in 0u32.. {
        let bound = 4 + (attempt / 50) as i64;
        let xi: Vec<i64> = (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect();
        let shift = rng.gen_range(-4..=4);
        let Ok(circle) = CircleData::new(xi, shift) else {
            continue;
        };
        if circle.is_generic_for(p) {
            return circle;
        }
    }
    unreachable!("the direction search space is unbounded");
}

/// One random case of the given dimension.
pub fn sample_case(rng: &mut ChaCha8Rng, dim: usize) -> SampleCase {
    let (family, polytope) = scrambled(rng, dim);
    let circle = sample_circle(rng, &polytope);
    SampleCase { family, polytope, circle }
}

/// Deterministic suite of `count` cases cycling through dimensions 1, 2, 3.
pub fn sample_suite(seed: u64, count: usize) -> Vec<SampleCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|i| sample_case(&mut rng, 1 + i % 3)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_are_deterministic() {
        let a = sample_suite(20260819, 9);
        let b = sample_suite(20260819, 9);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.family, y.family);
            assert_eq!(x.polytope, y.polytope);
            assert_eq!(x.circle, y.circle);
        }
        let c = sample_suite(1, 9);
        assert!(a.iter().zip(&c).any(|(x, y)| x.polytope != y.polytope));
    }

    #[test]
    fn dimensions_cycle_and_sizes_stay_capped() {
        let suite = sample_suite(42, 30);
        for (i, case) in suite.iter().enumerate() {
            assert_eq!(case.polytope.dim(), 1 + i % 3);
            let points = case.polytope.lattice_points().len();
            assert!((1..=500).contains(&points), "{}: {points} points", case.family);
            assert!(bounding_box_volume(&case.polytope) <= MAX_BOX_VOLUME);
        }
    }

    #[test]
    fn circles_are_generic_by_construction() {
        for case in sample_suite(7, 24) {
            assert!(case.circle.is_generic_for(&case.polytope), "{}", case.family);
        }
    }

    #[test]
    fn unimodular_samples_have_unit_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for dim in 1..=3 {
            for _ in 0..20 {
                let a = random_unimodular(&mut rng, dim, 2);
                let det = crate::linalg::det_i64(&a);
                assert!(det == 1 || det == -1, "det {det}");
            }
        }
    }
}
