//! Exact character arithmetic for circle and torus representations.
//!
//! A [`Character`] is a finitely supported map from the weight lattice ℤⁿ to
//! integer multiplicities: the class of a virtual representation of Tⁿ in its
//! representation ring, written as a formal Laurent polynomial
//! Σ_a m_a · t^a. Multiplicities are arbitrary-precision integers so that
//! dilated polytopes and intermediate localization series never overflow,
//! and terms are kept in canonical form (lexicographically sorted weights,
//! no zero multiplicities), so `==` is representation equality.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// A virtual character of the n-torus with big-integer multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    rank: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl Character {
    /// The zero character of the given rank (rank = number of circle factors).
    pub fn new(rank: usize) -> Self {
        assert!(rank >= 1, "character rank must be positive");
        Character { rank, terms: BTreeMap::new() }
    }

    /// Build from `(weight, multiplicity)` pairs. Duplicate weights are
    /// summed; zero multiplicities are dropped.
    pub fn from_terms<W, M, I>(rank: usize, terms: I) -> Result<Self>
    where
        W: Into<Vec<i64>>,
        M: Into<BigInt>,
        I: IntoIterator<Item = (W, M)>,
    {
        let mut out = Character::new(rank);
        for (w, m) in terms {
            let w = w.into();
            if w.len() != rank {
                return Err(Error::WeightLength { expected: rank, got: w.len() });
            }
            out.accumulate(w, m.into());
        }
        Ok(out)
    }

    /// Rank-1 convenience constructor from `(weight, multiplicity)` pairs.
    pub fn circle<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut out = Character::new(1);
        for (w, m) in terms {
            out.accumulate(vec![w], BigInt::from(m));
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct weights in the support.
    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().map(|(w, m)| (w.as_slice(), m))
    }

    /// Sum of all multiplicities: the virtual dimension of the underlying
    /// representation, forgetting the torus action.
    pub fn total_multiplicity(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Multiplicity of a single weight (zero off the support).
    pub fn multiplicity(&self, weight: &[i64]) -> Result<BigInt> {
        if weight.len() != self.rank {
            return Err(Error::WeightLength { expected: self.rank, got: weight.len() });
        }
        Ok(self.terms.get(weight).cloned().unwrap_or_else(BigInt::zero))
    }

    /// Rank-1 shortcut for [`Character::multiplicity`].
    pub fn circle_multiplicity(&self, weight: i64) -> Result<BigInt> {
        self.multiplicity(&[weight])
    }

    /// Pointwise sum: the character of a direct sum.
    pub fn add(&self, other: &Character) -> Result<Character> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: other.rank });
        }
        let mut out = self.clone();
        for (w, m) in &other.terms {
            out.accumulate(w.clone(), m.clone());
        }
        Ok(out)
    }

    /// Tensor with the one-dimensional representation of weight `shift`:
    /// every weight translates by `shift`, multiplicities unchanged.
    pub fn tensor_shift(&self, shift: &[i64]) -> Result<Character> {
        if shift.len() != self.rank {
            return Err(Error::WeightLength { expected: self.rank, got: shift.len() });
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, m)| {
                let shifted: Vec<i64> = w.iter().zip(shift).map(|(&a, &s)| a + s).collect();
                (shifted, m.clone())
            })
            .collect();
        Ok(Character { rank: self.rank, terms })
    }

    /// Restrict along the circle subgroup generated by the primitive vector
    /// `xi`: weight `a` maps to the integer `<a, xi>`, and multiplicities of
    /// colliding weights are summed.
    pub fn restrict_to_circle(&self, xi: &[i64]) -> Result<Character> {
        if xi.len() != self.rank {
            return Err(Error::WeightLength { expected: self.rank, got: xi.len() });
        }
        if !linalg::is_primitive(xi) {
            return Err(Error::NotPrimitive(xi.to_vec()));
        }
        let mut out = Character::new(1);
        for (w, m) in &self.terms {
            out.accumulate(vec![linalg::dot_i64(w, xi)], m.clone());
        }
        Ok(out)
    }

    fn accumulate(&mut self, weight: Vec<i64>, mult: BigInt) {
        use std::collections::btree_map::Entry;
        if mult.is_zero() {
            return;
        }
        match self.terms.entry(weight) {
            Entry::Vacant(e) => {
                e.insert(mult);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += mult;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

impl fmt::Display for Character {
    /// Compact canonical text form: `{weight: mult, ...}` in weight order.
    /// Rank-1 weights print as scalars.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (w, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if self.rank == 1 {
                write!(f, "{}: {}", w[0], m)?;
            } else {
                let joined: Vec<String> = w.iter().map(i64::to_string).collect();
                write!(f, "({}): {}", joined.join(","), m)?;
            }
        }
        write!(f, "}}")
    }
}

// JSON form: {"rank": n, "terms": [{"weight": [..], "mult": m}, ..]} with
// terms in canonical order. Multiplicities serialize as JSON numbers while
// they fit in i64 and as decimal strings beyond that; both forms parse.

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Terms<'a>(&'a BTreeMap<Vec<i64>, BigInt>);
        struct Term<'a>(&'a [i64], &'a BigInt);

        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for (w, m) in self.0 {
                    seq.serialize_element(&Term(w, m))?;
                }
                seq.end()
            }
        }

        impl Serialize for Term<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut st = serializer.serialize_struct("Term", 2)?;
                st.serialize_field("weight", self.0)?;
                match self.1.to_i64() {
                    Some(small) => st.serialize_field("mult", &small)?,
                    None => st.serialize_field("mult", &self.1.to_string())?,
                }
                st.end()
            }
        }

        let mut st = serializer.serialize_struct("Character", 2)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("terms", &Terms(&self.terms))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Character {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            rank: usize,
            terms: Vec<TermRepr>,
        }
        #[derive(Deserialize)]
        struct TermRepr {
            weight: Vec<i64>,
            mult: MultRepr,
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum MultRepr {
            Small(i64),
            Big(String),
        }

        let repr = Repr::deserialize(deserializer)?;
        if repr.rank == 0 {
            return Err(de::Error::custom("character rank must be positive"));
        }
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let mult = match t.mult {
                MultRepr::Small(v) => BigInt::from(v),
                MultRepr::Big(s) => BigInt::from_str(&s)
                    .map_err(|_| de::Error::custom(format!("unparsable multiplicity {s:?}")))?,
            };
            terms.push((t.weight, mult));
        }
        Character::from_terms(repr.rank, terms).map_err(de::Error::custom)
    }
}

/// Serialize a standalone multiplicity with the same convention as character
/// terms: a JSON number while it fits in i64, a decimal string beyond.
pub(crate) fn serialize_mult<S: Serializer>(
    m: &BigInt,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    match m.to_i64() {
        Some(small) => serializer.serialize_i64(small),
        None => serializer.serialize_str(&m.to_string()),
    }
}
