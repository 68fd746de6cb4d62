//! Symmetric-group elements, the group ring Z_(2)(S_n) and the place
//! permutation action on suspended tensor words.
//!
//! Conventions, pinned by the bracket property of the Dynkin elements:
//! `compose(p, q)` applies `q` first and then `p`, and `act(p, w)` moves
//! the letter at position `i` to position `p(i)`.  In a debug build either
//! convention can be flipped through the environment variables
//! `BETACALC_FLIP_COMPOSE` / `BETACALC_FLIP_ACTION`; this is the negative
//! control that makes the quasi-idempotency suite fail.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{LocalRational, Ring};
use crate::tensor::{FreeVector, TensorTerm};

#[cfg(debug_assertions)]
fn env_flag(name: &str) -> bool {
    use std::collections::HashMap;
    use std::sync::OnceLock;
    static FLAGS: OnceLock<HashMap<&'static str, bool>> = OnceLock::new();
    let flags = FLAGS.get_or_init(|| {
        let mut m = HashMap::new();
        for k in ["BETACALC_FLIP_COMPOSE", "BETACALC_FLIP_ACTION"] {
            m.insert(k, std::env::var_os(k).is_some_and(|v| !v.is_empty() && v != "0"));
        }
        m
    });
    flags.get(name).copied().unwrap_or(false)
}

pub fn flip_compose() -> bool {
    #[cfg(debug_assertions)]
    {
        env_flag("BETACALC_FLIP_COMPOSE")
    }
    #[cfg(not(debug_assertions))]
    {
        false
    }
}

pub fn flip_action() -> bool {
    #[cfg(debug_assertions)]
    {
        env_flag("BETACALC_FLIP_ACTION")
    }
    #[cfg(not(debug_assertions))]
    {
        false
    }
}

/// An element of S_n, stored as the image sequence p(1), ..., p(n).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::NotBijective(n));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// The cyclic permutation entries[0] -> entries[1] -> ... -> entries[0],
    /// fixing everything else.
    pub fn cycle(n: usize, entries: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut seen = vec![false; n];
        for &e in entries {
            if e == 0 || e > n {
                return Err(Error::CycleOutOfRange { entry: e, n });
            }
            if seen[e - 1] {
                return Err(Error::RepeatedCycleEntry(e));
            }
            seen[e - 1] = true;
        }
        for w in 0..entries.len() {
            let from = entries[w];
            let to = entries[(w + 1) % entries.len()];
            images[from - 1] = to;
        }
        Permutation::from_images(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply_position(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j - 1] = i + 1;
        }
        Permutation { images }
    }

    /// q first, then self.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.n() != q.n() {
            return Err(Error::SizeMismatch(self.n(), q.n()));
        }
        let (p, q) = if flip_compose() { (q, self) } else { (self, q) };
        let images = (1..=p.n())
            .map(|i| p.apply_position(q.apply_position(i)))
            .collect();
        Ok(Permutation { images })
    }

    /// Inclusion S_{n} -> S_{n+1} fixing the new last letter.
    pub fn embed(&self) -> Permutation {
        let mut images = self.images.clone();
        images.push(images.len() + 1);
        Permutation { images }
    }

    /// Place permutation: the letter at position i moves to position p(i).
    /// The suspension coordinate and shift are untouched.
    pub fn act(&self, w: &TensorTerm) -> Result<TensorTerm> {
        let n = self.n();
        if w.len() != n {
            return Err(Error::ArityMismatch {
                perm: n,
                word: w.len(),
            });
        }
        let letters = w.letters();
        let mut out = vec![letters[0].clone(); n];
        if flip_action() {
            for i in 0..n {
                out[i] = letters[self.images[i] - 1].clone();
            }
        } else {
            for i in 0..n {
                out[self.images[i] - 1] = letters[i].clone();
            }
        }
        Ok(TensorTerm::new(w.suspended(), w.shift(), out))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad image {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// A sparse Z_(2)-linear combination of permutations in S_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    n: usize,
    terms: BTreeMap<Permutation, LocalRational>,
}

impl GroupRingElement {
    pub fn zero(n: usize) -> Self {
        GroupRingElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_permutation(Permutation::identity(n))
    }

    pub fn from_permutation(p: Permutation) -> Self {
        let n = p.n();
        let mut terms = BTreeMap::new();
        terms.insert(p, LocalRational::one());
        GroupRingElement { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &LocalRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Permutation) -> LocalRational {
        self.terms.get(p).copied().unwrap_or_else(LocalRational::zero)
    }

    pub fn accumulate(&mut self, p: Permutation, c: LocalRational) {
        debug_assert_eq!(p.n(), self.n);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = *e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.accumulate(p.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        self.add(&other.scale(-LocalRational::one()))
    }

    pub fn scale(&self, c: LocalRational) -> GroupRingElement {
        let mut out = GroupRingElement::zero(self.n);
        for (p, a) in &self.terms {
            out.accumulate(p.clone(), *a * c);
        }
        out
    }

    /// Inclusion Z_(2)(S_n) -> Z_(2)(S_{n+1}) induced by fixing the last letter.
    pub fn embed(&self) -> GroupRingElement {
        let mut out = GroupRingElement::zero(self.n + 1);
        for (p, c) in &self.terms {
            out.accumulate(p.embed(), *c);
        }
        out
    }

    /// Convolution product, the bilinear extension of composition.
    pub fn convolve(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        let mut out = GroupRingElement::zero(self.n);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.accumulate(p.compose(q)?, *a * *b);
            }
        }
        Ok(out)
    }

    /// Linear extension of the place permutation action, weighted by the
    /// group-ring coefficients.  Over an F_2 vector every coefficient acts
    /// through its mod-2 residue.
    pub fn apply(&self, v: &FreeVector) -> Result<FreeVector> {
        #[cfg(feature = "parallel")]
        {
            self.apply_par(v)
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.apply_seq(v)
        }
    }

    /// Sequential reference implementation of `apply`.
    pub fn apply_seq(&self, v: &FreeVector) -> Result<FreeVector> {
        let mut out = FreeVector::zero(v.ring());
        for (p, c) in &self.terms {
            let c = self.effective_coeff(*c, v.ring());
            if c.is_zero() {
                continue;
            }
            for (t, tc) in v.iter() {
                out.accumulate(p.act(t)?, c * *tc);
            }
        }
        Ok(out)
    }

    #[cfg(feature = "parallel")]
    pub fn apply_par(&self, v: &FreeVector) -> Result<FreeVector> {
        use rayon::prelude::*;
        let pairs: Vec<(&Permutation, LocalRational)> = self
            .terms
            .iter()
            .map(|(p, c)| (p, self.effective_coeff(*c, v.ring())))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let partials: Result<Vec<FreeVector>> = pairs
            .par_iter()
            .map(|(p, c)| {
                let mut acc = FreeVector::zero(v.ring());
                for (t, tc) in v.iter() {
                    acc.accumulate(p.act(t)?, *c * *tc);
                }
                Ok(acc)
            })
            .collect();
        let mut out = FreeVector::zero(v.ring());
        for part in partials? {
            out = out.add(&part)?;
        }
        Ok(out)
    }

    fn effective_coeff(&self, c: LocalRational, ring: Ring) -> LocalRational {
        match ring {
            Ring::Z2Local => c,
            Ring::F2 => {
                if c.mod2() {
                    LocalRational::one()
                } else {
                    LocalRational::zero()
                }
            }
        }
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| format!("{c}*({p})"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct GroupRingTermRepr {
    perm: Permutation,
    coeff: LocalRational,
}

impl Serialize for GroupRingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // BTreeMap iteration gives lexicographic permutation order
        let terms: Vec<GroupRingTermRepr> = self
            .terms
            .iter()
            .map(|(p, c)| GroupRingTermRepr {
                perm: p.clone(),
                coeff: *c,
            })
            .collect();
        terms.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Generator;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn compose_hand_oracle() {
        // apply (1,2) first, then (1,2,3): 1 -> 2 -> 3, 2 -> 1 -> 2, 3 -> 3 -> 1
        let c3 = Permutation::cycle(3, &[1, 2, 3]).unwrap();
        let t12 = Permutation::cycle(3, &[1, 2]).unwrap();
        let composed = c3.compose(&t12).unwrap();
        assert_eq!(composed, Permutation::cycle(3, &[1, 3]).unwrap());
    }

    #[test]
    fn compose_identity_and_inverse() {
        let p = perm(&[3, 1, 4, 2]);
        let id = Permutation::identity(4);
        assert_eq!(id.compose(&p).unwrap(), p);
        assert_eq!(p.compose(&p.inverse()).unwrap(), id);
    }

    #[test]
    fn compose_size_mismatch() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert!(p.compose(&q).is_err());
    }

    #[test]
    fn cycle_constructors() {
        assert_eq!(
            Permutation::cycle(3, &[1, 2]).unwrap(),
            perm(&[2, 1, 3])
        );
        assert_eq!(
            Permutation::cycle(3, &[1, 2, 3]).unwrap(),
            perm(&[2, 3, 1])
        );
        assert!(Permutation::cycle(2, &[1, 3]).is_err());
        assert!(Permutation::cycle(4, &[1, 2, 1]).is_err());
    }

    #[test]
    fn embed_fixes_last() {
        assert_eq!(Permutation::identity(2).embed(), Permutation::identity(3));
        assert_eq!(
            Permutation::cycle(2, &[1, 2]).unwrap().embed(),
            perm(&[2, 1, 3])
        );
        assert_eq!(
            Permutation::cycle(3, &[1, 2, 3]).unwrap().embed(),
            perm(&[2, 3, 1, 4])
        );
    }

    fn letters(names: &[&str]) -> Vec<Generator> {
        names
            .iter()
            .enumerate()
            .map(|(i, n)| Generator::new(n, 1 + i as u32).unwrap())
            .collect()
    }

    #[test]
    fn act_swaps_factors() {
        let ls = letters(&["u", "v"]);
        let w = TensorTerm::suspended_word(ls.clone());
        let swapped = Permutation::cycle(2, &[1, 2]).unwrap().act(&w).unwrap();
        assert_eq!(swapped, TensorTerm::suspended_word(vec![ls[1].clone(), ls[0].clone()]));
    }

    #[test]
    fn act_full_cycle() {
        // letter at position i moves to position p(i): xyz -> zxy under (1,2,3)
        let ls = letters(&["x", "y", "z"]);
        let w = TensorTerm::word(ls.clone());
        let out = Permutation::cycle(3, &[1, 2, 3]).unwrap().act(&w).unwrap();
        assert_eq!(
            out,
            TensorTerm::word(vec![ls[2].clone(), ls[0].clone(), ls[1].clone()])
        );
    }

    #[test]
    fn act_arity_mismatch() {
        let ls = letters(&["x", "y", "z"]);
        let w = TensorTerm::word(ls);
        assert!(Permutation::identity(2).act(&w).is_err());
    }

    #[test]
    fn convolve_hand_expansion() {
        // (1 - t)^2 = 2 - 2t for the transposition t
        let t = GroupRingElement::from_permutation(Permutation::cycle(2, &[1, 2]).unwrap());
        let e = GroupRingElement::identity(2);
        let beta2 = e.sub(&t).unwrap();
        let square = beta2.convolve(&beta2).unwrap();
        assert_eq!(square, beta2.scale(LocalRational::integer(2)));
        assert_eq!(e.convolve(&beta2).unwrap(), beta2);
    }

    #[test]
    fn apply_beta2_both_rings() {
        let ls = letters(&["x", "y"]);
        let t = GroupRingElement::from_permutation(Permutation::cycle(2, &[1, 2]).unwrap());
        let beta2 = GroupRingElement::identity(2).sub(&t).unwrap();

        let xy = TensorTerm::word(ls.clone());
        let yx = TensorTerm::word(vec![ls[1].clone(), ls[0].clone()]);

        let v = FreeVector::single(Ring::Z2Local, xy.clone());
        let out = beta2.apply(&v).unwrap();
        assert_eq!(out.coeff(&xy), LocalRational::one());
        assert_eq!(out.coeff(&yx), -LocalRational::one());

        let v2 = FreeVector::single(Ring::F2, xy.clone());
        let out2 = beta2.apply(&v2).unwrap();
        assert_eq!(out2.coeff(&xy), LocalRational::one());
        assert_eq!(out2.coeff(&yx), LocalRational::one());

        assert!(GroupRingElement::zero(2).apply(&v).unwrap().is_zero());
    }

    #[test]
    fn apply_seq_matches_apply() {
        let ls = letters(&["x", "y", "z"]);
        let c = GroupRingElement::from_permutation(Permutation::cycle(3, &[1, 2, 3]).unwrap());
        let t = GroupRingElement::from_permutation(Permutation::cycle(3, &[1, 3]).unwrap());
        let a = c.scale(LocalRational::new(1, 3).unwrap()).add(&t).unwrap();
        let v = FreeVector::single(Ring::Z2Local, TensorTerm::suspended_word(ls));
        assert_eq!(a.apply(&v).unwrap(), a.apply_seq(&v).unwrap());
    }
}
