//! Local indices of level components and the localization ledger.
//!
//! Every component at an integer level is assigned a circle character, its
//! local index: the count of lattice points in that moment slice, placed at
//! the component's own (normalized) level. Acyclic data carries nothing, so
//! non-integer levels contribute no component at all and a Bohr-Sommerfeld
//! component supports weights only at its own level.
//!
//! [`localization_report`] then plays the two halves against each other: the
//! per-component characters come from slicing the lattice point set, while
//! the global character is recomputed by the fixed-point route, which never
//! sees individual lattice points. Their agreement (`localization_ok`) and
//! the support condition on each component (`vanishing_ok`) are recorded as
//! data, not assumed.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::Serialize;

use crate::character::Character;
use crate::error::Result;
use crate::index;
use crate::orbits::{self, ComponentClass, LevelComponent};
use crate::polytope::{CircleData, DelzantPolytope};

/// A level component together with its local index character.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentIndex {
    pub level: i64,
    pub class: ComponentClass,
    pub character: Character,
}

/// Localization data for one polytope and circle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalIndexReport {
    pub components: Vec<ComponentIndex>,
    /// Global character by the independent fixed-point route.
    pub global: Character,
    /// Do the component characters sum to the global character?
    pub localization_ok: bool,
    /// Is every component character supported only on its own level?
    pub vanishing_ok: bool,
}

/// Lattice points of the polytope bucketed by normalized level, one pass.
fn level_histogram(p: &DelzantPolytope, circle: &CircleData) -> BTreeMap<i64, u64> {
    let mut hist: BTreeMap<i64, u64> = BTreeMap::new();
    for q in p.lattice_points() {
        *hist.entry(circle.level_of(&q)).or_insert(0) += 1;
    }
    hist
}

/// Local index character of the component at one integer level: the slice
/// count at that level, or the zero character for an empty slice.
pub fn component_character(
    p: &DelzantPolytope,
    circle: &CircleData,
    level: i64,
) -> Result<Character> {
    p.moment_range(circle)?;
    let count = p
        .lattice_points()
        .iter()
        .filter(|q| circle.level_of(q) == level)
        .count();
    if count == 0 {
        return Ok(Character::new(1));
    }
    Ok(Character::circle([(level, count as i64)]))
}

/// Local index at an arbitrary rational level.
///
/// Acyclic levels (non-integer, or outside the moment image) have the zero
/// character; integer levels inside delegate to [`component_character`].
/// Unlike the acyclicity *question*, the local index is well-defined at a
/// vertex level: it is the slice count there.
pub fn local_index_at(
    p: &DelzantPolytope,
    circle: &CircleData,
    level: Rational64,
) -> Result<Character> {
    p.moment_range(circle)?;
    if !level.is_integer() {
        return Ok(Character::new(1));
    }
    component_character(p, circle, level.to_integer())
}

/// Assemble the full localization ledger.
pub fn localization_report(
    p: &DelzantPolytope,
    circle: &CircleData,
) -> Result<LocalIndexReport> {
    let hist = level_histogram(p, circle);
    let components: Vec<ComponentIndex> = orbits::enumerate_components(p, circle)?
        .into_iter()
        .map(|LevelComponent { level, class }| {
            let character = match hist.get(&level) {
                Some(&count) => Character::circle([(level, count as i64)]),
                None => Character::new(1),
            };
            ComponentIndex { level, class, character }
        })
        .collect();
    let global = index::atiyah_bott_character(p, circle)?;
    let localization_ok = sum_components(&components)
        .map(|sum| sum == global)
        .unwrap_or(false);
    let vanishing_ok = vanishing_holds(&components);
    Ok(LocalIndexReport { components, global, localization_ok, vanishing_ok })
}

/// Sum of the component characters (None on rank disagreement).
pub fn sum_components(components: &[ComponentIndex]) -> Option<Character> {
    let mut total = Character::new(1);
    for c in components {
        total = total.add(&c.character).ok()?;
    }
    Some(total)
}

/// The vanishing property as a pure function of component data: every
/// component's character must be supported on its own level alone, so
/// weights for which the component is acyclic have multiplicity zero.
/// Feeding this corrupted data (a weight smeared off its level) returns
/// false; it never repairs its input.
pub fn vanishing_holds(components: &[ComponentIndex]) -> bool {
    components.iter().all(|comp| {
        comp.character
            .terms()
            .all(|(weight, _)| weight == [comp.level])
    })
}
