//! Graded generators, suspended tensor words and sparse formal sums.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::de::Error as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{LocalRational, Ring};

/// A graded generator of the ambient module V.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    name: Arc<str>,
    degree: u32,
}

impl Generator {
    pub fn new(name: &str, degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(Generator {
            name: name.into(),
            degree,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (&*self.name, self.degree).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (name, degree) = <(String, u32)>::deserialize(d)?;
        Generator::new(&name, degree).map_err(D::Error::custom)
    }
}

/// A suspended tensor word: an optional S^1 coordinate, an extra suspension
/// shift and an ordered sequence of generator letters.
///
/// Term order is lexicographic on (suspended, shift, letter names), which the
/// derived `Ord` provides; this is the canonical serialization order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorTerm {
    suspended: bool,
    shift: u32,
    letters: Vec<Generator>,
}

impl TensorTerm {
    pub fn new(suspended: bool, shift: u32, letters: Vec<Generator>) -> Self {
        TensorTerm {
            suspended,
            shift,
            letters,
        }
    }

    /// The word x_1 ⊗ … ⊗ x_n with no suspension coordinate.
    pub fn word(letters: Vec<Generator>) -> Self {
        Self::new(false, 0, letters)
    }

    /// ι_1 ⊗ x_1 ⊗ … ⊗ x_n.
    pub fn suspended_word(letters: Vec<Generator>) -> Self {
        Self::new(true, 0, letters)
    }

    pub fn suspended(&self) -> bool {
        self.suspended
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn degree(&self) -> u32 {
        u32::from(self.suspended) + self.shift + self.letters.iter().map(|g| g.degree()).sum::<u32>()
    }

    pub fn with_shift(&self, shift: u32) -> Self {
        TensorTerm {
            suspended: self.suspended,
            shift,
            letters: self.letters.clone(),
        }
    }

    /// Juxtaposition of two words.  At most one operand may carry the
    /// suspension coordinate; shifts combine additively.
    pub fn concat(&self, other: &TensorTerm) -> Result<TensorTerm> {
        if self.suspended && other.suspended {
            return Err(Error::DoubleSuspension);
        }
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(TensorTerm {
            suspended: self.suspended || other.suspended,
            shift: self.shift + other.shift,
            letters,
        })
    }
}

impl fmt::Display for TensorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.suspended {
            parts.push("i1".into());
        }
        if self.shift > 0 {
            parts.push(format!("s{}", self.shift));
        }
        for g in &self.letters {
            parts.push(g.name().to_string());
        }
        if parts.is_empty() {
            write!(f, "()")
        } else {
            write!(f, "{}", parts.join("."))
        }
    }
}

/// A sparse formal sum of tensor words over Z_(2) or F_2.
///
/// No zero coefficient is ever stored; over F_2 every stored coefficient
/// is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeVector {
    ring: Ring,
    terms: BTreeMap<TensorTerm, LocalRational>,
}

impl FreeVector {
    pub fn zero(ring: Ring) -> Self {
        FreeVector {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(ring: Ring, term: TensorTerm, coeff: LocalRational) -> Self {
        let mut v = Self::zero(ring);
        v.accumulate(term, coeff);
        v
    }

    pub fn single(ring: Ring, term: TensorTerm) -> Self {
        Self::term(ring, term, LocalRational::one())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TensorTerm, &LocalRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, term: &TensorTerm) -> LocalRational {
        self.terms.get(term).copied().unwrap_or_else(LocalRational::zero)
    }

    /// Add `coeff * term` in place, normalizing per ring and dropping zeros.
    pub fn accumulate(&mut self, term: TensorTerm, coeff: LocalRational) {
        let coeff = match self.ring {
            Ring::Z2Local => coeff,
            Ring::F2 => {
                if coeff.mod2() {
                    LocalRational::one()
                } else {
                    return;
                }
            }
        };
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(term) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = match self.ring {
                    Ring::Z2Local => *e.get() + coeff,
                    Ring::F2 => {
                        // 1 + 1 = 0
                        LocalRational::zero()
                    }
                };
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &FreeVector) -> Result<FreeVector> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.accumulate(t.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FreeVector) -> Result<FreeVector> {
        self.add(&other.scale(-LocalRational::one()))
    }

    pub fn scale(&self, c: LocalRational) -> FreeVector {
        let mut out = FreeVector::zero(self.ring);
        for (t, a) in &self.terms {
            out.accumulate(t.clone(), *a * c);
        }
        out
    }

    /// Bilinear extension of term juxtaposition.
    pub fn concat(&self, other: &FreeVector) -> Result<FreeVector> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        let mut out = FreeVector::zero(self.ring);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                out.accumulate(s.concat(t)?, *a * *b);
            }
        }
        Ok(out)
    }

    /// Pass from Z_(2) coefficients to F_2.
    pub fn reduce_mod2(&self) -> FreeVector {
        let mut out = FreeVector::zero(Ring::F2);
        for (t, c) in &self.terms {
            out.accumulate(t.clone(), *c);
        }
        out
    }

    /// Attach the S^1 coordinate to every term.
    pub fn suspend(&self) -> Result<FreeVector> {
        let mut out = FreeVector::zero(self.ring);
        for (t, c) in &self.terms {
            if t.suspended() {
                return Err(Error::DoubleSuspension);
            }
            out.accumulate(
                TensorTerm::new(true, t.shift(), t.letters().to_vec()),
                *c,
            );
        }
        Ok(out)
    }

    /// The common degree of all terms, if the vector is homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|t| t.degree());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }
}

impl fmt::Display for FreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| {
                if *c == LocalRational::one() {
                    t.to_string()
                } else {
                    format!("{c}*{t}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    susp: bool,
    shift: u32,
    letters: Vec<(String, u32)>,
    coeff: LocalRational,
}

#[derive(Serialize, Deserialize)]
struct VectorRepr {
    ring: Ring,
    terms: Vec<TermRepr>,
}

impl Serialize for FreeVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = VectorRepr {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| TermRepr {
                    susp: t.suspended(),
                    shift: t.shift(),
                    letters: t
                        .letters()
                        .iter()
                        .map(|g| (g.name().to_string(), g.degree()))
                        .collect(),
                    coeff: *c,
                })
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FreeVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = VectorRepr::deserialize(d)?;
        let mut v = FreeVector::zero(repr.ring);
        for t in repr.terms {
            let letters = t
                .letters
                .iter()
                .map(|(n, deg)| Generator::new(n, *deg))
                .collect::<Result<Vec<_>>>()
                .map_err(D::Error::custom)?;
            v.accumulate(TensorTerm::new(t.susp, t.shift, letters), t.coeff);
        }
        Ok(v)
    }
}
