//! Tensor algebra elements and the free Lie algebra in the Lyndon basis.
//!
//! A Lie element is stored by its coordinates on the standard bracketings
//! `P_w` of Lyndon words `w`. Since `P_w = w + (lexicographically larger
//! words)`, the smallest word in the support of any Lie polynomial is Lyndon;
//! subtracting the matching multiple of `P_w` and repeating gives the unique
//! coordinates.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};
use crate::necklace::{Letter, Word};

/// A noncommutative polynomial in the letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorElement {
    terms: BTreeMap<Word, Rational>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: &[Letter]) -> Self {
        let mut t = Self::zero();
        t.push(w.to_vec(), Rational::one());
        t
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(&[l])
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &TensorElement) {
        for (w, c) in &other.terms {
            self.push(w.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> TensorElement {
        if c.is_zero() {
            return Self::zero();
        }
        TensorElement { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// Concatenation product.
    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.push([u.as_slice(), v].concat(), a * b);
            }
        }
        out
    }

    pub fn commutator(&self, other: &TensorElement) -> TensorElement {
        self.mul(other).sub(&other.mul(self))
    }

    /// The common word length, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Vec::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.terms.keys().all(|w| w.len() == k)
    }
}

/// A bracket expression in the letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketTree {
    Leaf(Letter),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn expand(&self) -> TensorElement {
        match self {
            BracketTree::Leaf(l) => TensorElement::letter(*l),
            BracketTree::Node(x, y) => x.expand().commutator(&y.expand()),
        }
    }
}

/// A Lyndon word is strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[Letter]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Lyndon words of length exactly `k` over `0..alphabet`, in increasing
/// order (Duval's generation algorithm).
pub fn lyndon_words(alphabet: usize, k: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if alphabet == 0 || k == 0 {
        return out;
    }
    let top = (alphabet - 1) as Letter;
    let mut w: Vec<Letter> = vec![0];
    loop {
        if w.len() == k {
            out.push(w.clone());
        }
        // Extend periodically to length k, then step to the successor.
        let m = w.len();
        while w.len() < k {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
    }
    out
}

/// `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[Letter]) -> (Word, Word) {
    debug_assert!(w.len() >= 2 && is_lyndon(w));
    let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("last letter is Lyndon");
    (w[..split].to_vec(), w[split..].to_vec())
}

pub fn standard_bracketing(w: &[Letter]) -> BracketTree {
    if w.len() == 1 {
        return BracketTree::Leaf(w[0]);
    }
    let (u, v) = standard_factorization(w);
    BracketTree::Node(Box::new(standard_bracketing(&u)), Box::new(standard_bracketing(&v)))
}

/// Witt's formula for the dimension of the degree-`k` part of the free Lie
/// algebra on `n` generators.
pub fn witt_dimension(n: usize, k: usize) -> usize {
    fn mobius(mut m: usize) -> i64 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= m {
            if m.is_multiple_of(p) {
                m /= p;
                if m.is_multiple_of(p) {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if m > 1 {
            sign = -sign;
        }
        sign
    }
    let total: i64 = (1..=k).filter(|d| k.is_multiple_of(*d)).map(|d| mobius(d) * (n as i64).pow((k / d) as u32)).sum();
    (total / k as i64) as usize
}

/// An element of the free Lie algebra, in Lyndon coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieElement {
    terms: BTreeMap<Word, Rational>,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(l: Letter) -> Self {
        Self::lyndon(vec![l])
    }

    /// The basis element `P_w`; `w` must be Lyndon.
    pub fn lyndon(w: Word) -> Self {
        debug_assert!(is_lyndon(&w));
        LieElement { terms: BTreeMap::from([(w, Rational::one())]) }
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_tensor(&self) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w, c) in &self.terms {
            out.add_assign(&standard_bracketing(w).expand().scale(c));
        }
        out
    }

    /// Lyndon coordinates of a Lie polynomial; fails if `t` is not one.
    pub fn from_tensor(t: &TensorElement) -> Result<Self> {
        let mut rest = t.clone();
        let mut terms = BTreeMap::new();
        while let Some((w, c)) = rest.terms.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
            if !is_lyndon(&w) {
                return Err(Error::Degree(format!("not a Lie element: leading word {w:?} is not Lyndon")));
            }
            rest = rest.sub(&standard_bracketing(&w).expand().scale(&c));
            terms.insert(w, c);
        }
        Ok(LieElement { terms })
    }

    pub fn from_tree(tree: &BracketTree) -> Self {
        Self::from_tensor(&tree.expand()).expect("bracket expressions are Lie")
    }

    pub fn bracket(&self, other: &LieElement) -> LieElement {
        Self::from_tensor(&self.to_tensor().commutator(&other.to_tensor())).expect("Lie algebra is closed")
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut t = TensorElement { terms: self.terms.clone() };
        t.add_assign(&TensorElement { terms: other.terms.clone() });
        LieElement { terms: t.terms }
    }

    pub fn scale(&self, c: &Rational) -> LieElement {
        LieElement { terms: TensorElement { terms: self.terms.clone() }.scale(c).terms }
    }
}

/// The Lyndon basis of the degree-`k` part of the free Lie algebra on `2g`
/// generators.
pub fn lyndon_basis(g: usize, k: usize) -> Vec<LieElement> {
    lyndon_words(2 * g, k).into_iter().map(LieElement::lyndon).collect()
}
