//! Lie bracket trees, left-normed commutators, ad-powers, tensor expansion
//! and the Lyndon word machinery used as the rank oracle.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Ring;
use crate::tensor::{FreeVector, Generator, TensorTerm};

/// A binary Lie bracketing of generator leaves: a leaf or [left, right].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BracketTree {
    Leaf(Generator),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn leaf(g: Generator) -> Self {
        BracketTree::Leaf(g)
    }

    pub fn bracket(left: BracketTree, right: BracketTree) -> Self {
        BracketTree::Node(Box::new(left), Box::new(right))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            BracketTree::Leaf(_) => 1,
            BracketTree::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn leaves(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Generator>) {
        match self {
            BracketTree::Leaf(g) => out.push(g.clone()),
            BracketTree::Node(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    /// Expansion into the tensor algebra: a leaf becomes its one-letter word
    /// and [a, b] becomes ab - ba (signs collapse over F_2).  The result is
    /// unsuspended; callers attach the S^1 coordinate where needed.
    pub fn expand(&self, ring: Ring) -> FreeVector {
        match self {
            BracketTree::Leaf(g) => {
                FreeVector::single(ring, TensorTerm::word(vec![g.clone()]))
            }
            BracketTree::Node(l, r) => {
                let a = l.expand(ring);
                let b = r.expand(ring);
                let ab = a.concat(&b).expect("unsuspended expansion");
                let ba = b.concat(&a).expect("unsuspended expansion");
                ab.sub(&ba).expect("same ring")
            }
        }
    }

    /// Parse the printed notation, e.g. `[[u,v],u]`, resolving leaf names
    /// against the supplied generator table.
    pub fn parse(input: &str, gens: &[Generator]) -> Result<Self> {
        let mut parser = Parser {
            chars: input.trim().char_indices().peekable(),
            input,
            gens,
        };
        let tree = parser.parse_tree()?;
        parser.skip_ws();
        if let Some((i, c)) = parser.chars.peek() {
            return Err(Error::Parse(format!("trailing input {c:?} at byte {i}")));
        }
        Ok(tree)
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    input: &'a str,
    gens: &'a [Generator],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn parse_tree(&mut self) -> Result<BracketTree> {
        self.skip_ws();
        match self.chars.peek().copied() {
            Some((_, '[')) => {
                self.chars.next();
                let left = self.parse_tree()?;
                self.expect(',')?;
                let right = self.parse_tree()?;
                self.expect(']')?;
                Ok(BracketTree::bracket(left, right))
            }
            Some((start, c)) if c.is_alphanumeric() || c == '_' => {
                let mut end = start + c.len_utf8();
                self.chars.next();
                while let Some(&(i, c)) = self.chars.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        end = i + c.len_utf8();
                        self.chars.next();
                    } else {
                        break;
                    }
                }
                let name = &self.input[start..end];
                self.gens
                    .iter()
                    .find(|g| g.name() == name)
                    .cloned()
                    .map(BracketTree::Leaf)
                    .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))
            }
            other => Err(Error::Parse(format!("unexpected input: {other:?}"))),
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.chars.next() {
            Some((_, c)) if c == want => Ok(()),
            other => Err(Error::Parse(format!("expected {want:?}, found {other:?}"))),
        }
    }
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTree::Leaf(g) => write!(f, "{}", g.name()),
            BracketTree::Node(l, r) => write!(f, "[{l},{r}]"),
        }
    }
}

/// [[…[[x_1,x_2],x_3]…],x_n]; a single letter is a leaf.
pub fn left_normed(letters: &[Generator]) -> Result<BracketTree> {
    let mut iter = letters.iter();
    let first = iter.next().ok_or(Error::EmptyBracket)?;
    let mut tree = BracketTree::leaf(first.clone());
    for g in iter {
        tree = BracketTree::bracket(tree, BracketTree::leaf(g.clone()));
    }
    Ok(tree)
}

/// ad(x)(y) = [y, x] and ad^{i+1}(x)(y) = [ad^i(x)(y), x].
pub fn ad_power(x: &BracketTree, y: &BracketTree, k: i64) -> Result<BracketTree> {
    if k <= 0 {
        return Err(Error::BadAdPower(k));
    }
    let mut tree = BracketTree::bracket(y.clone(), x.clone());
    for _ in 1..k {
        tree = BracketTree::bracket(tree, x.clone());
    }
    Ok(tree)
}

/// True iff [[a,b],c] + [[b,c],a] + [[c,a],b] expands to zero in the ring.
pub fn jacobi_check(a: &BracketTree, b: &BracketTree, c: &BracketTree, ring: Ring) -> bool {
    let terms = [
        BracketTree::bracket(BracketTree::bracket(a.clone(), b.clone()), c.clone()),
        BracketTree::bracket(BracketTree::bracket(b.clone(), c.clone()), a.clone()),
        BracketTree::bracket(BracketTree::bracket(c.clone(), a.clone()), b.clone()),
    ];
    let mut sum = FreeVector::zero(ring);
    for t in &terms {
        sum = sum.add(&t.expand(ring)).expect("same ring");
    }
    sum.is_zero()
}

/// All Lyndon words of the given length over `0..alphabet`, in lexicographic
/// order (Duval's generation).
pub fn lyndon_words(alphabet: usize, length: usize) -> Vec<Vec<usize>> {
    assert!(alphabet >= 1 && length >= 1);
    let mut out = Vec::new();
    let mut w = vec![0usize];
    if length == 1 {
        out.push(w.clone());
    }
    loop {
        // extend periodically to the target length
        let period = w.len();
        while w.len() < length {
            w.push(w[w.len() - period]);
        }
        // drop trailing maximal letters, then bump the last one
        while matches!(w.last(), Some(&last) if last == alphabet - 1) {
            w.pop();
        }
        match w.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
        if w.len() == length {
            out.push(w.clone());
        }
    }
    out
}

pub fn is_lyndon(w: &[usize]) -> bool {
    // strictly smaller than every proper rotation
    let n = w.len();
    for r in 1..n {
        let rotation = w[r..].iter().chain(w[..r].iter());
        if !(w.iter().lt(rotation)) {
            return false;
        }
    }
    true
}

/// The Witt / necklace number (1/n) Σ_{d|n} μ(d) q^{n/d}.
pub fn witt_count(q: u64, n: u64) -> u64 {
    assert!(n >= 1);
    let mut total: i128 = 0;
    for d in 1..=n {
        if n % d == 0 {
            if let Some(mu) = moebius(d) {
                total += i128::from(mu) * (q as i128).pow((n / d) as u32);
            }
        }
    }
    (total / i128::from(n)) as u64
}

fn moebius(n: u64) -> Option<i32> {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return None;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Some(sign)
}

/// Standard-factorization bracketing of a Lyndon word: w = u·v with v the
/// longest proper Lyndon suffix, bracketed as [b(u), b(v)].
pub fn lyndon_bracketing(word: &[usize], gens: &[Generator]) -> Result<BracketTree> {
    if word.is_empty() {
        return Err(Error::EmptyBracket);
    }
    if word.len() == 1 {
        return Ok(BracketTree::leaf(gens[word[0]].clone()));
    }
    // split before the lexicographically smallest proper suffix, which is
    // the longest proper Lyndon suffix
    let split = (1..word.len())
        .min_by(|&a, &b| word[a..].cmp(&word[b..]))
        .expect("word has length >= 2");
    Ok(BracketTree::bracket(
        lyndon_bracketing(&word[..split], gens)?,
        lyndon_bracketing(&word[split..], gens)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::LocalRational;

    fn uv() -> (Generator, Generator) {
        (
            Generator::new("u", 1).unwrap(),
            Generator::new("v", 2).unwrap(),
        )
    }

    #[test]
    fn left_normed_shapes() {
        let (u, v) = uv();
        assert_eq!(
            left_normed(std::slice::from_ref(&u)).unwrap(),
            BracketTree::leaf(u.clone())
        );
        assert_eq!(
            left_normed(&[u.clone(), v.clone()]).unwrap().to_string(),
            "[u,v]"
        );
        assert_eq!(
            left_normed(&[u.clone(), v.clone(), u.clone()])
                .unwrap()
                .to_string(),
            "[[u,v],u]"
        );
        assert!(left_normed(&[]).is_err());
    }

    #[test]
    fn ad_power_shapes() {
        let (u, v) = uv();
        let x = left_normed(&[u.clone(), v.clone()]).unwrap();
        let y = BracketTree::leaf(u.clone());
        assert_eq!(ad_power(&x, &y, 1).unwrap().to_string(), "[u,[u,v]]");
        assert_eq!(
            ad_power(&BracketTree::leaf(u.clone()), &BracketTree::leaf(v.clone()), 2)
                .unwrap()
                .to_string(),
            "[[v,u],u]"
        );
        assert!(ad_power(&x, &y, 0).is_err());
    }

    #[test]
    fn ad1_matches_left_normed_mod2() {
        let (u, v) = uv();
        let x = left_normed(&[u.clone(), v.clone()]).unwrap();
        let ad1 = ad_power(&x, &BracketTree::leaf(u.clone()), 1).unwrap();
        let ln = left_normed(&[u.clone(), v.clone(), u.clone()]).unwrap();
        assert_eq!(ad1.expand(Ring::F2), ln.expand(Ring::F2));
    }

    #[test]
    fn expand_examples() {
        let (u, v) = uv();
        let xy = left_normed(&[u.clone(), v.clone()]).unwrap();
        let integral = xy.expand(Ring::Z2Local);
        let uvw = TensorTerm::word(vec![u.clone(), v.clone()]);
        let vuw = TensorTerm::word(vec![v.clone(), u.clone()]);
        assert_eq!(integral.coeff(&uvw), LocalRational::one());
        assert_eq!(integral.coeff(&vuw), -LocalRational::one());

        // [[u,v],u] mod 2 = uuv + vuu (the middle term 2*uvu vanishes)
        let t = left_normed(&[u.clone(), v.clone(), u.clone()]).unwrap();
        let e = t.expand(Ring::F2);
        assert_eq!(e.len(), 2);
        assert!(e
            .coeff(&TensorTerm::word(vec![u.clone(), u.clone(), v.clone()]))
            .mod2());
        assert!(e
            .coeff(&TensorTerm::word(vec![v.clone(), u.clone(), u.clone()]))
            .mod2());

        let xx = BracketTree::bracket(BracketTree::leaf(u.clone()), BracketTree::leaf(u.clone()));
        assert!(xx.expand(Ring::Z2Local).is_zero());
        assert!(xx.expand(Ring::F2).is_zero());
    }

    #[test]
    fn jacobi_on_leaves_and_trees() {
        let (u, v) = uv();
        let w = Generator::new("w", 3).unwrap();
        let a = BracketTree::leaf(u.clone());
        let b = BracketTree::leaf(v.clone());
        let c = BracketTree::leaf(w.clone());
        assert!(jacobi_check(&a, &b, &c, Ring::Z2Local));
        assert!(jacobi_check(&a, &b, &c, Ring::F2));
        let ab = BracketTree::bracket(a.clone(), b.clone());
        assert!(jacobi_check(&ab, &a, &b, Ring::Z2Local));
    }

    #[test]
    fn lyndon_word_counts() {
        assert_eq!(lyndon_words(2, 1), vec![vec![0], vec![1]]);
        assert_eq!(lyndon_words(2, 3), vec![vec![0, 0, 1], vec![0, 1, 1]]);
        assert_eq!(lyndon_words(2, 5).len(), 6);
        for n in 1..=9u64 {
            assert_eq!(
                lyndon_words(2, n as usize).len() as u64,
                witt_count(2, n),
                "length {n}"
            );
        }
    }

    #[test]
    fn lyndon_words_are_sorted_and_lyndon() {
        let ws = lyndon_words(3, 4);
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
        assert!(ws.iter().all(|w| is_lyndon(w)));
        assert_eq!(ws.len() as u64, witt_count(3, 4));
    }

    #[test]
    fn bracketing_of_small_lyndon_words() {
        let (u, v) = uv();
        let gens = [u.clone(), v.clone()];
        let b = lyndon_bracketing(&[0, 0, 1], &gens).unwrap();
        assert_eq!(b.to_string(), "[u,[u,v]]");
        let b2 = lyndon_bracketing(&[0, 1, 1], &gens).unwrap();
        assert_eq!(b2.to_string(), "[[u,v],v]");
    }

    #[test]
    fn parse_roundtrip() {
        let (u, v) = uv();
        let gens = [u.clone(), v.clone()];
        for s in ["u", "[u,v]", "[[u,v],u]", "[u,[u,v]]"] {
            let t = BracketTree::parse(s, &gens).unwrap();
            assert_eq!(t.to_string(), s);
        }
        assert!(BracketTree::parse("[u,w]", &gens).is_err());
        assert!(BracketTree::parse("[u,v]x", &gens).is_err());
    }
}
