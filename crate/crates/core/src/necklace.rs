//! Cyclic words over a symplectic basis and the necklace Lie bialgebra.
//!
//! Letters are small integers: `2i` is `a_{i+1}` and `2i + 1` is `b_{i+1}`,
//! so the alphabet order is `a1 < b1 < a2 < b2 < ...`. The only nonzero
//! pairings are `<a_i, b_i> = 1` and `<b_i, a_i> = -1`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};

pub type Letter = u8;
pub type Word = Vec<Letter>;

/// Largest supported genus; letters must fit in a `u8`.
pub const MAX_GENUS: usize = 64;

/// The symbols `a1..ag, b1..bg` of a genus-`g` symplectic space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticBasis {
    pub genus: usize,
}

impl SymplecticBasis {
    pub fn new(genus: usize) -> Result<Self> {
        if genus == 0 || genus > MAX_GENUS {
            return Err(Error::InvalidSelector(format!("genus {genus} out of range 1..={MAX_GENUS}")));
        }
        Ok(SymplecticBasis { genus })
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.dim() as Letter
    }

    pub fn parse(&self, symbol: &str) -> Result<Letter> {
        let unknown = || Error::UnknownSymbol(symbol.to_string());
        let (kind, index) = symbol.split_at_checked(1).ok_or_else(unknown)?;
        let i: usize = index.parse().map_err(|_| unknown())?;
        if i == 0 || i > self.genus || index.starts_with('0') {
            return Err(unknown());
        }
        match kind {
            "a" => Ok((2 * (i - 1)) as Letter),
            "b" => Ok((2 * (i - 1) + 1) as Letter),
            _ => Err(unknown()),
        }
    }

    pub fn pairing_checked(&self, x: &str, y: &str) -> Result<i64> {
        Ok(pairing(self.parse(x)?, self.parse(y)?))
    }
}

pub fn symbol(l: Letter) -> String {
    let kind = if l.is_multiple_of(2) { 'a' } else { 'b' };
    format!("{kind}{}", l / 2 + 1)
}

/// The symplectic pairing on letters.
#[inline]
pub fn pairing(x: Letter, y: Letter) -> i64 {
    if x / 2 != y / 2 || x == y {
        0
    } else if x.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Smallest rotation of `w`.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let n = w.len();
    let mut best = 0;
    for s in 1..n {
        for k in 0..n {
            let (x, y) = (w[(s + k) % n], w[(best + k) % n]);
            if x != y {
                if x < y {
                    best = s;
                }
                break;
            }
        }
    }
    (0..n).map(|k| w[(best + k) % n]).collect()
}

fn check_genus(g: usize, h: usize) -> Result<()> {
    if g == h {
        Ok(())
    } else {
        Err(Error::BasisMismatch(g, h))
    }
}

fn add_to<K: Ord>(terms: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
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

/// A linear combination of cyclic words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Necklace {
    genus: usize,
    terms: BTreeMap<Word, Rational>,
}

impl Necklace {
    pub fn zero(genus: usize) -> Self {
        Necklace { genus, terms: BTreeMap::new() }
    }

    /// The empty cyclic word.
    pub fn unit(genus: usize) -> Self {
        Self::word(genus, &[]).expect("empty word is valid")
    }

    pub fn word(genus: usize, letters: &[Letter]) -> Result<Self> {
        let mut n = Self::zero(genus);
        n.add_word(letters, Rational::one())?;
        Ok(n)
    }

    /// Parses symbols like `["a1", "b2"]`.
    pub fn from_symbols(genus: usize, symbols: &[&str]) -> Result<Self> {
        let basis = SymplecticBasis::new(genus)?;
        let letters = symbols.iter().map(|s| basis.parse(s)).collect::<Result<Word>>()?;
        Self::word(genus, &letters)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Letter]) -> Rational {
        self.terms.get(&cyclic_reduce(w)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_word(&mut self, letters: &[Letter], c: Rational) -> Result<()> {
        if let Some(&l) = letters.iter().find(|&&l| l as usize >= 2 * self.genus) {
            return Err(Error::UnknownSymbol(symbol(l)));
        }
        add_to(&mut self.terms, cyclic_reduce(letters), c);
        Ok(())
    }

    /// Adds a word known to use letters of this basis.
    pub(crate) fn push(&mut self, letters: &[Letter], c: Rational) {
        add_to(&mut self.terms, cyclic_reduce(letters), c);
    }

    pub fn add(&self, other: &Necklace) -> Result<Necklace> {
        check_genus(self.genus, other.genus)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_to(&mut out.terms, w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Necklace) -> Result<Necklace> {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Necklace {
        let mut out = Necklace::zero(self.genus);
        for (w, x) in &self.terms {
            add_to(&mut out.terms, w.clone(), x * c);
        }
        out
    }

    /// Word lengths occurring with nonzero coefficient.
    pub fn lengths(&self) -> Vec<usize> {
        self.terms.keys().map(Vec::len).collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Counit: the coefficient of the empty word.
    pub fn counit(&self) -> Rational {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})|{}|", w.iter().map(|&l| symbol(l)).collect::<Vec<_>>().join(" "))?;
        }
        Ok(())
    }
}

/// A linear combination of ordered tuples of cyclic words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NecklaceTensor {
    genus: usize,
    arity: usize,
    terms: BTreeMap<Vec<Word>, Rational>,
}

impl NecklaceTensor {
    pub fn zero(genus: usize, arity: usize) -> Self {
        NecklaceTensor { genus, arity, terms: BTreeMap::new() }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Word>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c` times the tensor of the cyclic classes of `words`.
    pub fn push(&mut self, words: &[&[Letter]], c: Rational) {
        debug_assert_eq!(words.len(), self.arity);
        add_to(&mut self.terms, words.iter().map(|w| cyclic_reduce(w)).collect(), c);
    }

    pub fn add(&self, other: &NecklaceTensor) -> Result<NecklaceTensor> {
        check_genus(self.genus, other.genus)?;
        if self.arity != other.arity {
            return Err(Error::Arity { expected: self.arity, got: other.arity });
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_to(&mut out.terms, k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> NecklaceTensor {
        let mut out = NecklaceTensor::zero(self.genus, self.arity);
        for (k, x) in &self.terms {
            add_to(&mut out.terms, k.clone(), x * c);
        }
        out
    }

    /// Reorders tensor factors: factor `i` of the result is factor `order[i]`.
    pub fn permute(&self, order: &[usize]) -> NecklaceTensor {
        let mut out = NecklaceTensor::zero(self.genus, self.arity);
        for (k, c) in &self.terms {
            add_to(&mut out.terms, order.iter().map(|&i| k[i].clone()).collect(), c.clone());
        }
        out
    }

    /// Applies a linear map to factor `slot`, which may return a tensor of
    /// any arity; the result is spliced in place.
    pub fn map_factor(&self, slot: usize, f: impl Fn(&Necklace) -> NecklaceTensor) -> NecklaceTensor {
        let mut out: Option<NecklaceTensor> = None;
        for (k, c) in &self.terms {
            let mut single = Necklace::zero(self.genus);
            single.push(&k[slot], Rational::one());
            let image = f(&single);
            let acc = out.get_or_insert_with(|| NecklaceTensor::zero(self.genus, self.arity - 1 + image.arity));
            for (parts, x) in &image.terms {
                let mut key: Vec<Word> = k[..slot].to_vec();
                key.extend(parts.iter().cloned());
                key.extend(k[slot + 1..].iter().cloned());
                add_to(&mut acc.terms, key, c * x);
            }
        }
        out.unwrap_or_else(|| NecklaceTensor::zero(self.genus, self.arity))
    }

    /// Applies the counit to the last factor.
    pub fn counit_last(&self) -> Necklace {
        let mut out = Necklace::zero(self.genus);
        for (k, c) in &self.terms {
            if k.len() == 2 && k[1].is_empty() {
                out.push(&k[0], c.clone());
            }
        }
        out
    }
}

impl From<Necklace> for NecklaceTensor {
    fn from(n: Necklace) -> Self {
        let terms = n.terms.into_iter().map(|(w, c)| (vec![w], c)).collect();
        NecklaceTensor { genus: n.genus, arity: 1, terms }
    }
}

/// Rotation of `w` starting just after position `i`, without `w[i]`.
fn after(w: &[Letter], i: usize) -> impl Iterator<Item = Letter> + '_ {
    let n = w.len();
    (1..n).map(move |k| w[(i + k) % n])
}

/// Letters strictly between positions `i` and `j`, going forward from `i`.
pub(crate) fn between(w: &[Letter], i: usize, j: usize) -> Word {
    let n = w.len();
    let len = (j + n - i - 1) % n;
    (1..=len).map(|k| w[(i + k) % n]).collect()
}

fn bracket_words(w: &[Letter], v: &[Letter], c: &Rational, out: &mut Necklace) {
    let mut buf = Vec::with_capacity(w.len() + v.len());
    for (i, &x) in w.iter().enumerate() {
        for (j, &y) in v.iter().enumerate() {
            let p = pairing(x, y);
            if p == 0 {
                continue;
            }
            buf.clear();
            buf.extend(after(w, i));
            buf.extend(after(v, j));
            out.push(&buf, c * rat(p));
        }
    }
}

/// The necklace bracket: contract one letter of each word with the pairing
/// and splice the remainders.
pub fn goldman_bracket(u: &Necklace, v: &Necklace) -> Result<Necklace> {
    check_genus(u.genus, v.genus)?;
    let mut out = Necklace::zero(u.genus);
    for (w, a) in &u.terms {
        for (x, b) in &v.terms {
            bracket_words(w, x, &(a * b), &mut out);
        }
    }
    Ok(out)
}

/// The necklace cobracket: contract two letters of one word and cut it into
/// the two arcs between them. The pair `(i, j)` contributes
/// `<x_i, x_j> (arc from j to i) ⊗ (arc from i to j)`.
pub fn turaev_cobracket(u: &Necklace) -> NecklaceTensor {
    let mut out = NecklaceTensor::zero(u.genus, 2);
    for (w, c) in &u.terms {
        let n = w.len();
        for i in 0..n {
            for j in 0..n {
                let p = if i == j { 0 } else { pairing(w[i], w[j]) };
                if p != 0 {
                    out.push(&[&between(w, j, i), &between(w, i, j)], c * rat(p));
                }
            }
        }
    }
    out
}

/// `u` acting on every factor of `t` through the bracket.
pub fn bracket_action(u: &Necklace, t: &NecklaceTensor) -> Result<NecklaceTensor> {
    check_genus(u.genus, t.genus)?;
    let mut out = NecklaceTensor::zero(t.genus, t.arity);
    for slot in 0..t.arity {
        let part = t.map_factor(slot, |x| goldman_bracket(u, x).expect("same genus").into());
        out = out.add(&part)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(g: usize, s: &[&str]) -> Necklace {
        Necklace::from_symbols(g, s).unwrap()
    }

    #[test]
    fn pairing_table() {
        let b = SymplecticBasis::new(2).unwrap();
        assert_eq!(b.pairing_checked("a1", "b1").unwrap(), 1);
        assert_eq!(b.pairing_checked("b1", "a1").unwrap(), -1);
        assert_eq!(b.pairing_checked("a1", "a1").unwrap(), 0);
        assert_eq!(b.pairing_checked("a1", "b2").unwrap(), 0);
        assert!(matches!(b.parse("c1"), Err(Error::UnknownSymbol(_))));
        assert!(b.parse("a3").is_err());
        assert!(b.parse("a").is_err());
        for x in b.letters() {
            for y in b.letters() {
                assert_eq!(pairing(x, y), -pairing(y, x));
            }
        }
    }

    #[test]
    fn symbols_round_trip() {
        let b = SymplecticBasis::new(3).unwrap();
        for l in b.letters() {
            assert_eq!(b.parse(&symbol(l)).unwrap(), l);
        }
    }

    #[test]
    fn rotations_collapse() {
        assert_eq!(n(1, &["a1", "b1"]), n(1, &["b1", "a1"]));
        assert_eq!(cyclic_reduce(&[3, 1, 2, 1]), vec![1, 2, 1, 3]);
        let w = cyclic_reduce(&[2, 0, 1, 0, 0]);
        assert_eq!(cyclic_reduce(&w), w);
        assert_eq!(Necklace::unit(1).counit(), rat(1));
    }

    #[test]
    fn bracket_examples() {
        let a = n(1, &["a1"]);
        assert!(goldman_bracket(&a, &a).unwrap().is_zero());
        assert!(goldman_bracket(&n(1, &["a1", "b1"]), &Necklace::unit(1)).unwrap().is_zero());
        let ab = n(1, &["a1", "b1"]);
        assert_eq!(goldman_bracket(&ab, &a).unwrap(), a.scale(&rat(-1)));
    }

    #[test]
    fn cobracket_examples() {
        assert!(turaev_cobracket(&n(1, &["a1"])).is_zero());
        assert!(turaev_cobracket(&n(1, &["a1", "b1"])).is_zero());
        assert!(turaev_cobracket(&n(1, &["a1", "a1", "b1"])).is_zero());
        let d = turaev_cobracket(&n(2, &["a1", "a2", "b1", "b2"]));
        let mut expected = NecklaceTensor::zero(2, 2);
        expected.push(&[&[0], &[1]], rat(1));
        expected.push(&[&[1], &[0]], rat(-1));
        expected.push(&[&[2], &[3]], rat(-1));
        expected.push(&[&[3], &[2]], rat(1));
        assert_eq!(d, expected);
        assert!(d.add(&d.permute(&[1, 0])).unwrap().is_zero());
    }

    #[test]
    fn mismatched_genus_rejected() {
        let err = goldman_bracket(&n(1, &["a1"]), &n(2, &["a2"])).unwrap_err();
        assert_eq!(err, Error::BasisMismatch(1, 2));
        assert!(Necklace::word(1, &[2]).is_err());
    }
}
