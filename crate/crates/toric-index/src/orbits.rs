//! Classification of circle-orbit components inside moment levels.
//!
//! For a generic circle action the level sets of the (normalized) moment map
//! are connected, so each level carries at most one component worth naming.
//! Components at integer levels come in exactly two flavors: the level of a
//! vertex contains that fixed point, and every other integer level is a
//! Bohr-Sommerfeld torus, an orbit family whose holonomy around the circle
//! direction is trivial precisely at its own level.
//!
//! Acyclicity is the property that makes a component invisible to the index:
//! a component is acyclic for a weight when no covariantly constant data can
//! live on it at that weight. Non-integer levels are acyclic outright, a
//! Bohr-Sommerfeld component is acyclic for every weight except its own
//! level, and a fixed vertex is never acyclic (it always carries weights).

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::{CircleData, DelzantPolytope};

/// What a component at an integer level is.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ComponentClass {
    /// The level of a vertex: contains the fixed point of the circle action.
    Fixed { vertex: Vec<i64> },
    /// A regular integer level: a Bohr-Sommerfeld orbit family.
    BohrSommerfeld,
}

/// One component of an integer moment level, in normalized levels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelComponent {
    pub level: i64,
    pub class: ComponentClass,
}

impl LevelComponent {
    pub fn is_fixed(&self) -> bool {
        matches!(self.class, ComponentClass::Fixed { .. })
    }
}

/// All integer-level components, in increasing level order.
///
/// The first and last entries are always fixed (extreme levels are attained
/// at vertices); interior integer levels alternate between fixed vertices
/// and Bohr-Sommerfeld tori depending on whether a vertex sits there.
pub fn enumerate_components(
    p: &DelzantPolytope,
    circle: &CircleData,
) -> Result<Vec<LevelComponent>> {
    let range = p.moment_range(circle)?;
    Ok((range.min..=range.max)
        .map(|level| {
            let class = match range.critical_vertex(level) {
                Some(v) => ComponentClass::Fixed { vertex: p.vertices()[v].clone() },
                None => ComponentClass::BohrSommerfeld,
            };
            LevelComponent { level, class }
        })
        .collect())
}

/// Is the level set at a (possibly fractional) normalized level acyclic?
///
/// Non-integer levels and levels outside the moment image are acyclic.
/// Integer Bohr-Sommerfeld levels are not: they carry their own weight.
/// At the level of a vertex the question has no single answer (the fixed
/// point carries infinitely many weights), so it is rejected as a query.
pub fn is_level_acyclic(
    p: &DelzantPolytope,
    circle: &CircleData,
    level: Rational64,
) -> Result<bool> {
    let range = p.moment_range(circle)?;
    if !level.is_integer() {
        return Ok(true);
    }
    let l = level.to_integer();
    if l < range.min || l > range.max {
        return Ok(true);
    }
    if let Some(v) = range.critical_vertex(l) {
        return Err(Error::FixedLevelQuery { level: l, vertex: p.vertices()[v].clone() });
    }
    Ok(false)
}

/// Acyclicity of a component relative to a probing weight.
///
/// Fixed components are never acyclic; a Bohr-Sommerfeld component is
/// acyclic for every weight other than its own level.
pub fn is_component_weight_acyclic(component: &LevelComponent, weight: i64) -> bool {
    match component.class {
        ComponentClass::Fixed { .. } => false,
        ComponentClass::BohrSommerfeld => component.level != weight,
    }
}

/// Census of components that are not acyclic for the given weight: every
/// fixed point plus the Bohr-Sommerfeld component at the weight itself, if
/// there is one.
pub fn non_weight_acyclic_count(
    p: &DelzantPolytope,
    circle: &CircleData,
    weight: i64,
) -> Result<usize> {
    Ok(enumerate_components(p, circle)?
        .iter()
        .filter(|comp| !is_component_weight_acyclic(comp, weight))
        .count())
}
