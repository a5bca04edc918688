//! Exact equivariant index computations for circle actions on toric spaces.
//!
//! A compact symplectic toric manifold is encoded by its moment polytope: a
//! lattice polytope cut out by primitive facet normals whose vertex cones are
//! all unimodular. Fixing a generic circle subgroup of the torus and an
//! integer character shift, this crate computes the equivariant Riemann-Roch
//! character of the prequantized space by two independent routes and offers
//! the machinery to compare them:
//!
//! * **Lattice route**: enumerate the lattice points of the polytope and
//!   restrict the resulting torus character to the circle
//!   ([`index::global_circle_character`]).
//! * **Fixed-point route**: expand the rational fixed-point series vertex by
//!   vertex and assert the cancellation of its unbounded tails
//!   ([`index::atiyah_bott_character`]).
//!
//! On top of the global character sit the orbit-level tools: classification
//! of the circle-action level sets ([`orbits`]), additive local indices
//! attached to them ([`local_index`]), reduced-space point counts and the
//! quantization-commutes-with-reduction comparison ([`reduction`]), and a
//! batch verifier that replays every identity on random polytopes
//! ([`verify`]). A separate numerical module ([`spectral`]) reproduces the
//! local index of the two-sphere by discretizing a deformed Dolbeault
//! operator Fourier mode by Fourier mode and counting its kernel exactly
//! where the exact computation says it should be.
//!
//! All polytope arithmetic is exact (integers and rationals); floating point
//! appears only in the spectral module, where kernel detection is guarded by
//! explicit thresholds and refuses to answer from ambiguous data.
//!
//! # Example
//!
//! ```
//! use toric_index::{index, presets};
//!
//! // The projective plane scaled by 2, with a generic circle inside its torus.
//! let (polytope, circle) = presets::cp2(2).unwrap();
//! let by_counting = index::global_circle_character(&polytope, &circle).unwrap();
//! let by_fixed_points = index::atiyah_bott_character(&polytope, &circle).unwrap();
//! assert_eq!(by_counting, by_fixed_points);
//! assert_eq!(by_counting.total_multiplicity(), 6u32.into());
//! ```
//!
//! # Parallelism
//!
//! The `parallel` feature (on by default) parallelizes lattice enumeration,
//! the fixed-point sweep, batch verification, and the spectral mode sweep
//! with rayon. Disabling it leaves the same algorithms running sequentially;
//! the [`seq`] module exposes the sequential entry points under both
//! configurations so the two can be compared directly.

pub mod character;
pub mod error;
pub mod index;
pub mod linalg;
pub mod local_index;
pub mod orbits;
pub mod polytope;
pub mod presets;
pub mod random;
pub mod reduction;
pub mod spectral;
pub mod tridiag;
pub mod verify;

pub use character::Character;
pub use error::{Error, ErrorKind, Result};
pub use polytope::{CircleData, CriticalLevel, DelzantPolytope, Facet, MomentRange};

/// Re-exported so callers can name exact level values without adding a
/// direct dependency on the rational arithmetic crate.
pub use num_rational::Rational64;

/// Sequential entry points, available regardless of the `parallel` feature.
///
/// These run the same algorithms as their parallel counterparts on a single
/// thread. They exist so tests and benchmarks can compare the two paths on
/// identical inputs.
pub mod seq {
    use crate::character::Character;
    use crate::error::Result;
    use crate::polytope::{CircleData, DelzantPolytope};
    use crate::spectral::{ModeKernel, SpectralParams};

    /// Sequential lattice-point enumeration.
    pub fn lattice_points(p: &DelzantPolytope) -> Vec<Vec<i64>> {
        crate::polytope::lattice_points_seq(p)
    }

    /// Sequential fixed-point character expansion.
    pub fn atiyah_bott_character(p: &DelzantPolytope, circle: &CircleData) -> Result<Character> {
        crate::index::atiyah_bott_character_seq(p, circle)
    }

    /// Sequential spectral mode sweep on the cylinder model.
    pub fn cylinder_mode_kernels(
        params: &SpectralParams,
        center: i64,
    ) -> Result<Vec<ModeKernel>> {
        crate::spectral::cylinder_mode_kernels_seq(params, center)
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn seq_facade_matches_default_paths() {
        let (p, c) = crate::presets::cp2(2).unwrap();
        assert_eq!(crate::seq::lattice_points(&p), p.lattice_points());
        assert_eq!(
            crate::seq::atiyah_bott_character(&p, &c).unwrap(),
            crate::index::atiyah_bott_character(&p, &c).unwrap()
        );
    }
}
