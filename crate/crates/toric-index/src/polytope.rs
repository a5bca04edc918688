//! Delzant polytopes in half-space form, with exact validation.
//!
//! A compact toric symplectic manifold is encoded by its moment polytope
//! P = { x in ℝⁿ : <x, u_i> >= c_i } where each `u_i` is a primitive inward
//! integer normal. [`DelzantPolytope::from_facets`] certifies the Delzant
//! package: bounded, full-dimensional, simple, integral vertices (the
//! prequantization condition), and a unimodular edge basis at every vertex
//! (the smoothness condition). All arithmetic is exact; floating point never
//! enters the geometry.
//!
//! Vertices are found by solving every n-subset of facet equalities over the
//! rationals and keeping the feasible solutions. Boundedness is decided by
//! searching the recession cone { d : <d, u_i> >= 0 } for an extreme ray.
//! Lattice points are enumerated by scanning the vertex bounding box in
//! lexicographic order, a deliberately unsophisticated strategy that doubles
//! as the verification oracle for every character computation downstream.

use serde::de::Deserializer;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Rat};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// One half-space `<x, normal> >= offset` with a primitive inward normal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn new(normal: Vec<i64>, offset: i64) -> Self {
        Facet { normal, offset }
    }

    fn holds_at(&self, point: &[i64]) -> bool {
        linalg::dot(&self.normal, point) >= self.offset as i128
    }

    fn tight_at(&self, point: &[i64]) -> bool {
        linalg::dot(&self.normal, point) == self.offset as i128
    }
}

/// A validated Delzant polytope.
///
/// Construction via [`DelzantPolytope::from_facets`] is the only way to get
/// one, so a value of this type always satisfies the full Delzant package.
/// Vertices are stored in lexicographic order; `vertex_edges[i]` holds the
/// primitive edge directions of the tangent cone at `vertices[i]`, ordered by
/// the facet they leave, forming a ℤⁿ-basis (or empty for the degenerate
/// single-point polytope).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelzantPolytope {
    dim: usize,
    facets: Vec<Facet>,
    vertices: Vec<Vec<i64>>,
    vertex_edges: Vec<Vec<Vec<i64>>>,
}

impl DelzantPolytope {
    /// Validate a half-space description and assemble the vertex data.
    ///
    /// Errors distinguish every way the input can fail to be a prequantized
    /// toric manifold: unbounded or empty systems, lower-dimensional or
    /// non-simple polytopes, non-integral vertices, and non-unimodular
    /// (orbifold) vertex cones. Redundant half-spaces are rejected so the
    /// facet list is in bijection with the facets of the polytope.
    pub fn from_facets(dim: usize, facets: Vec<Facet>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadInput("ambient dimension must be positive".into()));
        }
        if facets.len() < dim + 1 {
            return Err(Error::TooFewFacets { need: dim + 1, got: facets.len() });
        }
        for (index, f) in facets.iter().enumerate() {
            if f.normal.len() != dim {
                return Err(Error::FacetDimension { index, dim, got: f.normal.len() });
            }
            if !linalg::is_primitive(&f.normal) {
                return Err(Error::NotPrimitive(f.normal.clone()));
            }
        }

        let normals: Vec<Vec<i64>> = facets.iter().map(|f| f.normal.clone()).collect();
        if linalg::rank(&normals) < dim {
            // The recession cone contains the kernel of the normal matrix.
            let deficient: Vec<Vec<i64>> = normals.clone();
            let dir = kernel_direction(&deficient, dim)
                .unwrap_or_else(|| vec![0; dim]);
            return Err(Error::Unbounded { direction: dir });
        }
        if let Some(ray) = extreme_recession_ray(&normals, dim) {
            return Err(Error::Unbounded { direction: ray });
        }

        // Candidate vertices: feasible solutions of n facet equalities.
        let mut candidates: Vec<Vec<Rat>> = Vec::new();
        for subset in combinations(facets.len(), dim) {
            let a: Vec<Vec<i64>> = subset.iter().map(|&i| facets[i].normal.clone()).collect();
            let b: Vec<i64> = subset.iter().map(|&i| facets[i].offset).collect();
            let Some(point) = linalg::solve_square(&a, &b) else {
                continue;
            };
            let feasible = facets.iter().all(|f| {
                let lhs: Rat = f
                    .normal
                    .iter()
                    .zip(&point)
                    .map(|(&u, x)| Rat::from_integer(u as i128) * x)
                    .sum();
                lhs >= Rat::from_integer(f.offset as i128)
            });
            if feasible && !candidates.contains(&point) {
                candidates.push(point);
            }
        }
        if candidates.is_empty() {
            return Err(Error::EmptyPolytope);
        }

        // Prequantization: vertices must be lattice points.
        let mut vertices: Vec<Vec<i64>> = Vec::with_capacity(candidates.len());
        for cand in &candidates {
            let mut v = Vec::with_capacity(dim);
            for x in cand {
                if !x.is_integer() {
                    return Err(Error::NonIntegralVertex {
                        vertex: cand.iter().map(Rat::to_string).collect(),
                    });
                }
                v.push(i64::try_from(x.to_integer()).expect("vertex coordinate overflows i64"));
            }
            vertices.push(v);
        }
        vertices.sort();

        if vertices.len() == 1 {
            // Degenerate but admissible: the one-point polytope, the moment
            // image of a point with a trivial torus action. It has no edges
            // and every downstream formula degenerates consistently.
            let vertex_edges = vec![Vec::new()];
            return Ok(DelzantPolytope { dim, facets, vertices, vertex_edges });
        }

        let hull_rank = linalg::affine_rank(&vertices);
        if hull_rank < dim {
            return Err(Error::NotFullDimensional { dim, rank: hull_rank });
        }

        // Simplicity, edge bases, smoothness.
        let mut vertex_edges = Vec::with_capacity(vertices.len());
        for v in &vertices {
            let active: Vec<usize> = facets
                .iter()
                .enumerate()
                .filter(|(_, f)| f.tight_at(v))
                .map(|(i, _)| i)
                .collect();
            if active.len() != dim {
                return Err(Error::NonSimpleVertex {
                    vertex: v.clone(),
                    active: active.len(),
                    dim,
                });
            }
            let mut edges = Vec::with_capacity(dim);
            for &dropped in &active {
                let kept: Vec<Vec<i64>> = active
                    .iter()
                    .filter(|&&i| i != dropped)
                    .map(|&i| facets[i].normal.clone())
                    .collect();
                let dir = linalg::cross_kernel(&kept).ok_or_else(|| Error::NonSimpleVertex {
                    vertex: v.clone(),
                    active: active.len(),
                    dim,
                })?;
                let orientation = linalg::dot(&facets[dropped].normal, &dir);
                debug_assert_ne!(orientation, 0, "edge direction degenerate at a simple vertex");
                let dir = if orientation > 0 {
                    dir
                } else {
                    dir.iter().map(|&x| -x).collect()
                };
                edges.push(dir);
            }
            let det = linalg::det_i64(&edges);
            if det != 1 && det != -1 {
                return Err(Error::NonUnimodularCone {
                    vertex: v.clone(),
                    det: i64::try_from(det).unwrap_or(i64::MAX),
                });
            }
            vertex_edges.push(edges);
        }

        for (index, f) in facets.iter().enumerate() {
            if !vertices.iter().any(|v| f.tight_at(v)) {
                return Err(Error::RedundantFacet { index });
            }
        }

        Ok(DelzantPolytope { dim, facets, vertices, vertex_edges })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// Primitive edge directions at each vertex, parallel to [`Self::vertices`].
    pub fn vertex_edges(&self) -> &[Vec<Vec<i64>>] {
        &self.vertex_edges
    }

    /// Membership test for a lattice point.
    pub fn contains_lattice(&self, point: &[i64]) -> bool {
        point.len() == self.dim && self.facets.iter().all(|f| f.holds_at(point))
    }

    /// Componentwise vertex bounding box `(lo, hi)`.
    pub fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices[1..] {
            for j in 0..self.dim {
                lo[j] = lo[j].min(v[j]);
                hi[j] = hi[j].max(v[j]);
            }
        }
        (lo, hi)
    }

    /// All lattice points of the polytope, in lexicographic order.
    ///
    /// Scans the vertex bounding box and filters by the facet inequalities.
    /// With the `parallel` feature the scan is split over first-coordinate
    /// slabs; the slab results are concatenated in order, so the output is
    /// identical to the sequential scan.
    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        #[cfg(feature = "parallel")]
        {
            let (lo, hi) = self.bounding_box();
            if hi[0] - lo[0] >= 8 {
                return (lo[0]..=hi[0])
                    .into_par_iter()
                    .map(|x0| self.slab_points(x0, &lo, &hi))
                    .collect::<Vec<_>>()
                    .into_iter()
                    .flatten()
                    .collect();
            }
        }
        lattice_points_seq(self)
    }

    #[cfg_attr(not(feature = "parallel"), allow(dead_code))]
    fn slab_points(&self, x0: i64, lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut point = vec![0i64; self.dim];
        point[0] = x0;
        self.scan_from(1, lo, hi, &mut point, &mut out);
        out
    }

    fn scan_from(
        &self,
        coord: usize,
        lo: &[i64],
        hi: &[i64],
        point: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if coord == self.dim {
            if self.facets.iter().all(|f| f.holds_at(point)) {
                out.push(point.clone());
            }
            return;
        }
        for x in lo[coord]..=hi[coord] {
            point[coord] = x;
            self.scan_from(coord + 1, lo, hi, point, out);
        }
    }

    /// Normalized moment range and critical levels along a circle direction.
    ///
    /// Requires `circle.xi` to be generic for this polytope: the pairings
    /// `<v, xi>` must be pairwise distinct over vertices. Returned levels are
    /// Kostant-normalized, i.e. shifted by `-circle.shift`.
    pub fn moment_range(&self, circle: &CircleData) -> Result<MomentRange> {
        circle.check_dim(self.dim)?;
        let mut levels: Vec<CriticalLevel> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(vertex, v)| CriticalLevel {
                level: linalg::dot_i64(v, &circle.xi) - circle.shift,
                vertex,
            })
            .collect();
        levels.sort_by_key(|c| c.level);
        for pair in levels.windows(2) {
            if pair[0].level == pair[1].level {
                return Err(Error::NonGenericCircle {
                    xi: circle.xi.clone(),
                    first: self.vertices[pair[0].vertex].clone(),
                    second: self.vertices[pair[1].vertex].clone(),
                    value: pair[0].level + circle.shift,
                });
            }
        }
        Ok(MomentRange {
            min: levels.first().expect("validated polytope has vertices").level,
            max: levels.last().expect("validated polytope has vertices").level,
            critical: levels,
        })
    }

    /// Image under the affine-unimodular change of coordinates `x -> Ax + b`.
    ///
    /// `a` must be in GL(n, ℤ). Facets transform by the inverse transpose,
    /// so the result is again Delzant with the same lattice combinatorics.
    /// Pair with [`CircleData::transform`] to move circle data along.
    pub fn unimodular_image(&self, a: &[Vec<i64>], b: &[i64]) -> Result<Self> {
        if a.len() != self.dim || b.len() != self.dim {
            return Err(Error::BadInput("transform shape does not match dimension".into()));
        }
        let a_inv = linalg::inverse_unimodular(a)
            .ok_or_else(|| Error::BadInput("matrix is not unimodular".into()))?;
        let a_inv_t = linalg::transpose(&a_inv);
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let normal = linalg::mat_vec(&a_inv_t, &f.normal);
                let offset = f.offset + linalg::dot_i64(b, &normal);
                Facet { normal, offset }
            })
            .collect();
        DelzantPolytope::from_facets(self.dim, facets)
    }
}

/// Sequential lattice-point scan; the `parallel` code path must agree with
/// this exactly, and the benchmark suite compares the two.
pub(crate) fn lattice_points_seq(p: &DelzantPolytope) -> Vec<Vec<i64>> {
    let (lo, hi) = p.bounding_box();
    let mut out = Vec::new();
    let mut point = vec![0i64; p.dim];
    for x0 in lo[0]..=hi[0] {
        point[0] = x0;
        p.scan_from(1, &lo, &hi, &mut point, &mut out);
    }
    out
}

/// A circle subgroup of the torus plus the lift of its action to the
/// prequantum line: the primitive direction `xi` and the integer `shift`
/// normalizing moment levels to `<mu, xi> - shift`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CircleData {
    pub xi: Vec<i64>,
    pub shift: i64,
}

impl CircleData {
    pub fn new(xi: Vec<i64>, shift: i64) -> Result<Self> {
        if !linalg::is_primitive(&xi) {
            return Err(Error::NotPrimitive(xi));
        }
        Ok(CircleData { xi, shift })
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.xi.len() != dim {
            return Err(Error::WeightLength { expected: dim, got: self.xi.len() });
        }
        Ok(())
    }

    /// Normalized level of a lattice point: `<point, xi> - shift`.
    pub fn level_of(&self, point: &[i64]) -> i64 {
        linalg::dot_i64(point, &self.xi) - self.shift
    }

    /// True when vertex moment values are pairwise distinct.
    pub fn is_generic_for(&self, p: &DelzantPolytope) -> bool {
        p.moment_range(self).is_ok()
    }

    /// Companion to [`DelzantPolytope::unimodular_image`]: circle data in the
    /// new coordinates, chosen so every normalized level is preserved.
    pub fn transform(&self, a: &[Vec<i64>], b: &[i64]) -> Result<Self> {
        let a_inv = linalg::inverse_unimodular(a)
            .ok_or_else(|| Error::BadInput("matrix is not unimodular".into()))?;
        let xi = linalg::mat_vec(&linalg::transpose(&a_inv), &self.xi);
        let shift = self.shift + linalg::dot_i64(b, &xi);
        CircleData::new(xi, shift)
    }
}

impl<'de> Deserialize<'de> for CircleData {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            xi: Vec<i64>,
            #[serde(default)]
            shift: i64,
        }
        let repr = Repr::deserialize(deserializer)?;
        CircleData::new(repr.xi, repr.shift).map_err(serde::de::Error::custom)
    }
}

/// Normalized moment image of a generic circle: extremes and the sorted
/// critical levels, each tagged with the vertex that attains it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MomentRange {
    pub min: i64,
    pub max: i64,
    pub critical: Vec<CriticalLevel>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CriticalLevel {
    pub level: i64,
    /// Index into [`DelzantPolytope::vertices`].
    pub vertex: usize,
}

impl MomentRange {
    pub fn is_critical(&self, level: i64) -> bool {
        self.critical.iter().any(|c| c.level == level)
    }

    pub fn critical_vertex(&self, level: i64) -> Option<usize> {
        self.critical.iter().find(|c| c.level == level).map(|c| c.vertex)
    }
}

// Serialize only the defining data; derived fields are recomputed on load.
impl Serialize for DelzantPolytope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("DelzantPolytope", 2)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("facets", &self.facets)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for DelzantPolytope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            dim: usize,
            facets: Vec<Facet>,
        }
        let repr = Repr::deserialize(deserializer)?;
        DelzantPolytope::from_facets(repr.dim, repr.facets).map_err(serde::de::Error::custom)
    }
}

/// Direction in the kernel of the normal matrix, if rank-deficient.
fn kernel_direction(normals: &[Vec<i64>], dim: usize) -> Option<Vec<i64>> {
    if dim == 1 {
        return Some(vec![1]);
    }
    // Any (dim-1)-subset of rank dim-1 whose cross product annihilates all
    // normals exhibits the kernel direction.
    for subset in combinations(normals.len(), dim - 1) {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&i| normals[i].clone()).collect();
        if let Some(d) = linalg::cross_kernel(&rows) {
            if normals.iter().all(|u| linalg::dot(u, &d) == 0) {
                return Some(d);
            }
        }
    }
    None
}

/// Search the recession cone { d : <d, u_i> >= 0 for all i } for an extreme
/// ray. With full-rank normals the cone is pointed, so it is nontrivial iff
/// an extreme ray exists, and extreme rays lie in the kernel of some dim-1
/// normals.
fn extreme_recession_ray(normals: &[Vec<i64>], dim: usize) -> Option<Vec<i64>> {
    for subset in combinations(normals.len(), dim - 1) {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let Some(d) = linalg::cross_kernel(&rows) else {
            continue;
        };
        for candidate in [d.clone(), d.iter().map(|&x| -x).collect::<Vec<i64>>()] {
            if normals.iter().all(|u| linalg::dot(u, &candidate) >= 0) {
                return Some(candidate);
            }
        }
    }
    None
}

/// All k-subsets of 0..n in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn segment(k: i64) -> DelzantPolytope {
        DelzantPolytope::from_facets(
            1,
            vec![Facet::new(vec![1], 0), Facet::new(vec![-1], -k)],
        )
        .unwrap()
    }

    fn simplex2(k: i64) -> DelzantPolytope {
        DelzantPolytope::from_facets(
            2,
            vec![
                Facet::new(vec![1, 0], 0),
                Facet::new(vec![0, 1], 0),
                Facet::new(vec![-1, -1], -k),
            ],
        )
        .unwrap()
    }

    #[test]
    fn segment_vertices_and_edges() {
        let p = segment(3);
        assert_eq!(p.vertices(), &[vec![0], vec![3]]);
        assert_eq!(p.vertex_edges(), &[vec![vec![1]], vec![vec![-1]]]);
    }

    #[test]
    fn simplex_vertices() {
        let p = simplex2(2);
        assert_eq!(p.vertices(), &[vec![0, 0], vec![0, 2], vec![2, 0]]);
        // Edge directions at the origin point along the axes: dropping the
        // x >= 0 facet frees the x direction, then likewise for y.
        assert_eq!(p.vertex_edges()[0], vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn edges_reach_adjacent_vertices() {
        let p = simplex2(3);
        for (v, edges) in p.vertices().iter().zip(p.vertex_edges()) {
            for e in edges {
                let reaches = p.vertices().iter().any(|w| {
                    if w == v {
                        return false;
                    }
                    let diff: Vec<i64> = w.iter().zip(v).map(|(&a, &b)| a - b).collect();
                    // diff must be a positive multiple of e
                    let Some(t) = diff
                        .iter()
                        .zip(e)
                        .find(|&(_, &ei)| ei != 0)
                        .map(|(&di, &ei)| di / ei)
                    else {
                        return false;
                    };
                    t > 0 && diff.iter().zip(e).all(|(&di, &ei)| di == t * ei)
                });
                assert!(reaches, "edge {e:?} at {v:?} does not reach a vertex");
            }
        }
    }

    #[test]
    fn unbounded_is_detected() {
        let err = DelzantPolytope::from_facets(
            2,
            vec![
                Facet::new(vec![1, 0], 0),
                Facet::new(vec![0, 1], 0),
                Facet::new(vec![1, 1], 0),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Unbounded { .. }));
    }

    #[test]
    fn empty_is_detected() {
        let err = DelzantPolytope::from_facets(
            1,
            vec![Facet::new(vec![1], 1), Facet::new(vec![-1], 0)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::EmptyPolytope));
    }

    #[test]
    fn non_integral_vertex_is_detected() {
        // x+y >= 0, x-y >= -1, -x >= -1 has the vertex (-1/2, 1/2).
        let err = DelzantPolytope::from_facets(
            2,
            vec![
                Facet::new(vec![1, 1], 0),
                Facet::new(vec![1, -1], -1),
                Facet::new(vec![-1, 0], -1),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonIntegralVertex { .. }));
    }

    #[test]
    fn orbifold_cone_is_detected() {
        // Normals (1,0), (0,1), (-1,-2): determinant 2 at (0,1).
        let err = DelzantPolytope::from_facets(
            2,
            vec![
                Facet::new(vec![1, 0], 0),
                Facet::new(vec![0, 1], 0),
                Facet::new(vec![-1, -2], -2),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonUnimodularCone { det: 2 | -2, .. }));
    }

    #[test]
    fn redundant_facet_is_detected() {
        let err = DelzantPolytope::from_facets(
            1,
            vec![
                Facet::new(vec![1], 0),
                Facet::new(vec![-1], -2),
                Facet::new(vec![1], -10),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::RedundantFacet { index: 2 }));
    }

    #[test]
    fn non_primitive_normal_is_rejected() {
        let err = DelzantPolytope::from_facets(
            1,
            vec![Facet::new(vec![2], 0), Facet::new(vec![-1], -3)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotPrimitive(_)));
    }

    #[test]
    fn lower_dimensional_is_rejected() {
        // The segment {0} x [0,1] inside the plane.
        let err = DelzantPolytope::from_facets(
            2,
            vec![
                Facet::new(vec![1, 0], 0),
                Facet::new(vec![-1, 0], 0),
                Facet::new(vec![0, 1], 0),
                Facet::new(vec![0, -1], -1),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotFullDimensional { .. }));
    }

    #[test]
    fn point_polytope_is_admissible() {
        let p = DelzantPolytope::from_facets(
            1,
            vec![Facet::new(vec![1], 0), Facet::new(vec![-1], 0)],
        )
        .unwrap();
        assert_eq!(p.vertices(), &[vec![0]]);
        assert_eq!(p.vertex_edges(), &[Vec::<Vec<i64>>::new()]);
        assert_eq!(p.lattice_points(), vec![vec![0]]);
    }

    #[test]
    fn lattice_points_of_dilated_simplex() {
        let p = simplex2(2);
        assert_eq!(
            p.lattice_points(),
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1],
                vec![2, 0],
            ]
        );
    }

    #[test]
    fn lattice_scan_matches_exhaustive_box_filter() {
        let p = simplex2(3);
        let (lo, hi) = p.bounding_box();
        let mut expected = Vec::new();
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                let q = vec![x, y];
                if p.contains_lattice(&q) {
                    expected.push(q);
                }
            }
        }
        assert_eq!(p.lattice_points(), expected);
        assert_eq!(lattice_points_seq(&p), expected);
    }

    #[test]
    fn moment_range_on_segment() {
        let p = segment(3);
        let c = CircleData::new(vec![1], 1).unwrap();
        let r = p.moment_range(&c).unwrap();
        assert_eq!((r.min, r.max), (-1, 2));
        assert_eq!(
            r.critical.iter().map(|c| c.level).collect::<Vec<_>>(),
            vec![-1, 2]
        );
    }

    #[test]
    fn moment_range_on_square() {
        let p = DelzantPolytope::from_facets(
            2,
            vec![
                Facet::new(vec![1, 0], 0),
                Facet::new(vec![0, 1], 0),
                Facet::new(vec![-1, 0], -1),
                Facet::new(vec![0, -1], -1),
            ],
        )
        .unwrap();
        let c = CircleData::new(vec![1, 2], 0).unwrap();
        let r = p.moment_range(&c).unwrap();
        assert_eq!(
            r.critical.iter().map(|c| c.level).collect::<Vec<_>>(),
            vec![0, 1, 2, 3]
        );
        // (1,1) and (1,1) pairings collide along the diagonal direction.
        let bad = CircleData::new(vec![1, 1], 0).unwrap();
        assert!(matches!(
            p.moment_range(&bad),
            Err(Error::NonGenericCircle { value: 1, .. })
        ));
    }

    #[test]
    fn unimodular_image_preserves_lattice_count() {
        let p = simplex2(2);
        let a = vec![vec![1, 1], vec![0, 1]];
        let b = vec![3, -1];
        let q = p.unimodular_image(&a, &b).unwrap();
        assert_eq!(q.lattice_points().len(), p.lattice_points().len());

        let c = CircleData::new(vec![1, 2], 1).unwrap();
        let c2 = c.transform(&a, &b).unwrap();
        // Normalized levels are preserved pointwise.
        for (orig, img) in p.lattice_points().iter().zip(q.lattice_points().iter()) {
            let _ = img;
            let moved = linalg::mat_vec(&a, orig)
                .iter()
                .zip(&b)
                .map(|(&x, &t)| x + t)
                .collect::<Vec<i64>>();
            assert_eq!(c.level_of(orig), c2.level_of(&moved));
        }
    }

    #[test]
    fn polytope_json_round_trip() {
        let p = simplex2(2);
        let json = serde_json::to_string(&p).unwrap();
        let back: DelzantPolytope = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<DelzantPolytope>("{\"dim\":2,\"facets\":[]}").is_err());
    }
}
