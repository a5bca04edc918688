//! Structural invariants, exercised on randomized inputs: the two index
//! routes agree, every quantity is invariant under lattice changes of
//! coordinates, parallel and sequential code paths produce identical
//! results, and enumeration agrees with brute force.

use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_index::local_index::localization_report;
use toric_index::random::{random_unimodular, sample_case, SampleCase};
use toric_index::reduction::{is_regular_level, shifted_reduction_pair};
use toric_index::spectral::SpectralParams;
use toric_index::{index, linalg, presets, seq, spectral};

fn case_from(seed: u64, dim: usize) -> SampleCase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_case(&mut rng, dim)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn index_routes_agree(seed in any::<u64>(), dim in 1usize..=3) {
        let case = case_from(seed, dim);
        let lattice =
            index::global_circle_character(&case.polytope, &case.circle).unwrap();
        let fixed_point =
            index::atiyah_bott_character(&case.polytope, &case.circle).unwrap();
        prop_assert_eq!(lattice, fixed_point);
    }

    #[test]
    fn characters_survive_lattice_coordinate_changes(
        seed in any::<u64>(),
        dim in 1usize..=3,
        b0 in -3i64..=3,
        b1 in -3i64..=3,
        b2 in -3i64..=3,
    ) {
        let case = case_from(seed, dim);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
        let a = random_unimodular(&mut rng, dim, 2);
        let b = [b0, b1, b2][..dim].to_vec();
        let moved = case.polytope.unimodular_image(&a, &b).unwrap();
        let moved_circle = case.circle.transform(&a, &b).unwrap();

        let before =
            index::global_circle_character(&case.polytope, &case.circle).unwrap();
        let after = index::global_circle_character(&moved, &moved_circle).unwrap();
        prop_assert_eq!(&before, &after);

        let report_before = localization_report(&case.polytope, &case.circle).unwrap();
        let report_after = localization_report(&moved, &moved_circle).unwrap();
        prop_assert!(report_before.localization_ok && report_after.localization_ok);
        prop_assert_eq!(report_before.components.len(), report_after.components.len());
        for (x, y) in report_before.components.iter().zip(&report_after.components) {
            prop_assert_eq!(x.level, y.level);
            prop_assert_eq!(&x.character, &y.character);
        }
    }

    #[test]
    fn enumeration_matches_brute_force_box_filter(seed in any::<u64>(), dim in 1usize..=2) {
        let case = case_from(seed, dim);
        let p = &case.polytope;
        let (lo, hi) = p.bounding_box();
        let mut brute = Vec::new();
        let mut point = lo.clone();
        'scan: loop {
            if p.contains_lattice(&point) {
                brute.push(point.clone());
            }
            for axis in (0..dim).rev() {
                if point[axis] < hi[axis] {
                    point[axis] += 1;
                    point[axis + 1..dim].copy_from_slice(&lo[axis + 1..dim]);
                    continue 'scan;
                }
            }
            break;
        }
        brute.sort();
        let mut enumerated = p.lattice_points();
        enumerated.sort();
        prop_assert_eq!(enumerated, brute);
    }

    #[test]
    fn recentering_preserves_regular_reductions(seed in any::<u64>(), dim in 1usize..=3) {
        let case = case_from(seed, dim);
        let range = case.polytope.moment_range(&case.circle).unwrap();
        for gamma in range.min..=range.max {
            if !is_regular_level(&case.polytope, &case.circle, gamma).unwrap() {
                continue;
            }
            let (direct, recentered) =
                shifted_reduction_pair(&case.polytope, &case.circle, gamma).unwrap();
            prop_assert_eq!(direct, recentered, "level {}", gamma);
        }
    }

    #[test]
    fn unimodular_samples_have_unit_determinant(
        seed in any::<u64>(),
        dim in 1usize..=3,
        strength in 1i64..=3,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_unimodular(&mut rng, dim, strength);
        let det = linalg::det_i64(&a);
        prop_assert!(det == 1 || det == -1, "det {}", det);
    }
}

#[test]
fn parallel_and_sequential_lattice_enumeration_agree() {
    for seed in 0..12u64 {
        for dim in 1..=3usize {
            let case = case_from(seed, dim);
            assert_eq!(
                case.polytope.lattice_points(),
                seq::lattice_points(&case.polytope),
                "{}",
                case.family
            );
        }
    }
}

#[test]
fn parallel_and_sequential_fixed_point_sums_agree() {
    for seed in 100..112u64 {
        for dim in 1..=3usize {
            let case = case_from(seed, dim);
            assert_eq!(
                index::atiyah_bott_character(&case.polytope, &case.circle).unwrap(),
                seq::atiyah_bott_character(&case.polytope, &case.circle).unwrap(),
                "{}",
                case.family
            );
        }
    }
}

#[test]
fn parallel_and_sequential_mode_sweeps_agree_bitwise() {
    let params = SpectralParams { half_width: 4.0, grid: 1001, window: 2, ..Default::default() };
    let par = spectral::cylinder_mode_kernels(&params, 0).unwrap();
    let seq = seq::cylinder_mode_kernels(&params, 0).unwrap();
    assert_eq!(par.len(), seq.len());
    for (a, b) in par.iter().zip(&seq) {
        assert_eq!(a.mode, b.mode);
        assert_eq!((a.dim0, a.dim1), (b.dim0, b.dim1));
        // Same arithmetic in a different execution order must still give
        // bit-identical singular values: each mode is solved independently.
        assert_eq!(a.sigma0.to_bits(), b.sigma0.to_bits(), "mode {}", a.mode);
        assert_eq!(a.sigma1.to_bits(), b.sigma1.to_bits(), "mode {}", a.mode);
    }
}

#[test]
fn disjoint_union_of_index_problems_is_additive() {
    // Two copies of the same segment placed far apart on the level axis:
    // the union's report is the concatenation and the characters add.
    let (p1, c1) = presets::cp1(2, 0).unwrap();
    let (p2, c2) = presets::cp1(3, -10).unwrap();
    let r1 = localization_report(&p1, &c1).unwrap();
    let r2 = localization_report(&p2, &c2).unwrap();
    let combined = r1.global.add(&r2.global).unwrap();
    let mut total = toric_index::Character::new(1);
    for comp in r1.components.iter().chain(&r2.components) {
        total = total.add(&comp.character).unwrap();
    }
    assert_eq!(total, combined);
}
