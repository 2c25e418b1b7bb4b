//! Derivations of the tensor algebra and of the free Lie algebra, the trace
//! to cyclic words, and symplectic annihilator computations.
//!
//! A derivation of degree `k` is given by the images of the `2g` generators,
//! each homogeneous of length `k + 1`. Lie-flavoured derivations have Lie
//! images and extend to the tensor algebra by the same formula.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{lyndon_words, standard_bracketing, LieElement, TensorElement};
use crate::linalg::{nullspace, rank, rat, Rational, SparseMatrix};
use crate::necklace::{cyclic_reduce, pairing, Letter, Necklace, SymplecticBasis, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Lie,
    Tensor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    genus: usize,
    degree: usize,
    flavor: Flavor,
    /// Image of letter `l` at index `l`.
    images: Vec<TensorElement>,
}

impl Derivation {
    /// Checks sizes, homogeneity and (for the Lie flavour) that every image
    /// is a Lie element.
    pub fn new(genus: usize, degree: usize, flavor: Flavor, images: Vec<TensorElement>) -> Result<Self> {
        let basis = SymplecticBasis::new(genus)?;
        if images.len() != basis.dim() {
            return Err(Error::Arity { expected: basis.dim(), got: images.len() });
        }
        for (l, t) in images.iter().enumerate() {
            if !t.is_homogeneous_of(degree + 1) {
                return Err(Error::Degree(format!(
                    "image of generator {l} is not homogeneous of length {}",
                    degree + 1
                )));
            }
            if let Some(w) = t.terms().keys().find(|w| w.iter().any(|&x| x as usize >= basis.dim())) {
                return Err(Error::UnknownSymbol(format!("{w:?}")));
            }
            if flavor == Flavor::Lie {
                LieElement::from_tensor(t)?;
            }
        }
        Ok(Derivation { genus, degree, flavor, images })
    }

    pub fn zero(genus: usize, degree: usize, flavor: Flavor) -> Self {
        Derivation { genus, degree, flavor, images: vec![TensorElement::zero(); 2 * genus] }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn image(&self, l: Letter) -> &TensorElement {
        &self.images[l as usize]
    }

    pub fn images(&self) -> &[TensorElement] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(TensorElement::is_zero)
    }

    /// Forgets that the images are Lie elements.
    pub fn to_tensor_flavor(&self) -> Derivation {
        Derivation { flavor: Flavor::Tensor, ..self.clone() }
    }

    fn check_compatible(&self, other: &Derivation) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::BasisMismatch(self.genus, other.genus));
        }
        Ok(())
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::Degree(format!("cannot add degrees {} and {}", self.degree, other.degree)));
        }
        let images = self.images.iter().zip(&other.images).map(|(x, y)| x.add(y)).collect();
        let flavor = if self.flavor == other.flavor { self.flavor } else { Flavor::Tensor };
        Ok(Derivation { images, flavor, ..self.clone() })
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation { images: self.images.iter().map(|t| t.scale(c)).collect(), ..self.clone() }
    }

    /// Leibniz extension to words.
    pub fn apply(&self, x: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w, c) in x.terms() {
            for (i, &l) in w.iter().enumerate() {
                for (v, d) in self.images[l as usize].terms() {
                    let word: Word = w[..i].iter().chain(v).chain(&w[i + 1..]).copied().collect();
                    out.push(word, c * d);
                }
            }
        }
        out
    }

    pub fn apply_lie(&self, x: &LieElement) -> Result<LieElement> {
        LieElement::from_tensor(&self.apply(&x.to_tensor()))
    }

    /// Whether the derivation kills `ω = Σ [a_i, b_i]`.
    pub fn is_symplectic(&self) -> bool {
        self.apply(&omega(self.genus)).is_zero()
    }

    /// The commutator `[D, E] = D∘E − E∘D`.
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation> {
        self.check_compatible(other)?;
        let images =
            (0..2 * self.genus).map(|l| self.apply(&other.images[l]).sub(&other.apply(&self.images[l]))).collect();
        let flavor =
            if self.flavor == Flavor::Lie && other.flavor == Flavor::Lie { Flavor::Lie } else { Flavor::Tensor };
        Ok(Derivation { genus: self.genus, degree: self.degree + other.degree, flavor, images })
    }

    /// Action on cyclic words: Leibniz over the letters of each word.
    pub fn act_on_necklace(&self, u: &Necklace) -> Result<Necklace> {
        if u.genus() != self.genus {
            return Err(Error::BasisMismatch(self.genus, u.genus()));
        }
        let mut out = Necklace::zero(self.genus);
        for (w, c) in u.terms() {
            for (i, &l) in w.iter().enumerate() {
                for (v, d) in self.images[l as usize].terms() {
                    let word: Word = w[..i].iter().chain(v).chain(&w[i + 1..]).copied().collect();
                    out.push(&word, c * d);
                }
            }
        }
        Ok(out)
    }

    /// Coordinates on `(generator, word)` pairs.
    pub fn coordinates(&self) -> impl Iterator<Item = ((Letter, &Word), &Rational)> {
        self.images.iter().enumerate().flat_map(|(l, t)| t.terms().iter().map(move |(w, c)| ((l as Letter, w), c)))
    }
}

/// `ω = Σ_i (a_i b_i − b_i a_i)`.
pub fn omega(g: usize) -> TensorElement {
    let mut t = TensorElement::zero();
    for i in 0..g as Letter {
        let (a, b) = (2 * i, 2 * i + 1);
        t.push(vec![a, b], Rational::one());
        t.push(vec![b, a], rat(-1));
    }
    t
}

fn lie_bracket(x: Letter, y: Letter) -> TensorElement {
    TensorElement::letter(x).commutator(&TensorElement::letter(y))
}

/// The degree-1 symplectic derivation attached to `x ∧ y ∧ z`:
/// `h ↦ <x,h>[y,z] + <y,h>[z,x] + <z,h>[x,y]`.
pub fn johnson_generator(g: usize, x: Letter, y: Letter, z: Letter) -> Result<Derivation> {
    let basis = SymplecticBasis::new(g)?;
    if let Some(&bad) = [x, y, z].iter().find(|&&l| l as usize >= basis.dim()) {
        return Err(Error::UnknownSymbol(crate::necklace::symbol(bad)));
    }
    let images = basis
        .letters()
        .map(|h| {
            let mut t = TensorElement::zero();
            for (p, q, r) in [(x, y, z), (y, z, x), (z, x, y)] {
                t.add_assign(&lie_bracket(q, r).scale(&rat(pairing(p, h))));
            }
            t
        })
        .collect();
    Ok(Derivation { genus: g, degree: 1, flavor: Flavor::Lie, images })
}

/// Generators for all triples `x < y < z`.
pub fn johnson_generators(g: usize) -> Vec<Derivation> {
    let n = 2 * g as Letter;
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                out.push(johnson_generator(g, x, y, z).expect("letters in range"));
            }
        }
    }
    out
}

/// Trace to cyclic words: for each generator `h`, pair the coordinate dual
/// `h*` with the first letter of every word of `D(h)` and keep the cyclic
/// class of the remainder.
pub fn es_trace(d: &Derivation) -> Result<Necklace> {
    if d.degree == 0 {
        return Err(Error::Degree("the trace is defined in positive degree only".into()));
    }
    let mut out = Necklace::zero(d.genus);
    for (h, t) in d.images.iter().enumerate() {
        for (w, c) in t.terms() {
            if w[0] as usize == h {
                out.push(&w[1..], c.clone());
            }
        }
    }
    Ok(out)
}

/// The Hamiltonian derivation of a homogeneous necklace of length at least
/// three: `h ↦ Σ_i <x_i, h> x_{i+1} ... x_{i-1}`.
pub fn necklace_to_derivation(u: &Necklace) -> Result<Derivation> {
    let lengths = u.lengths();
    let len = match lengths.as_slice() {
        [l] if *l >= 3 => *l,
        [] => return Err(Error::Degree("zero necklace has no degree".into())),
        _ => return Err(Error::Degree(format!("need a homogeneous necklace of length >= 3, got lengths {lengths:?}"))),
    };
    let g = u.genus();
    let mut images = vec![TensorElement::zero(); 2 * g];
    for (w, c) in u.terms() {
        for i in 0..len {
            for h in 0..2 * g as Letter {
                let p = pairing(w[i], h);
                if p != 0 {
                    let rest: Word = (1..len).map(|k| w[(i + k) % len]).collect();
                    images[h as usize].push(rest, c * rat(p));
                }
            }
        }
    }
    Ok(Derivation { genus: g, degree: len - 2, flavor: Flavor::Tensor, images })
}

/// The trace identity `Tr[D, E] = D·Tr(E) − E·Tr(D)` evaluated with `trace`.
pub fn cocycle_check_with(
    d: &Derivation,
    e: &Derivation,
    trace: impl Fn(&Derivation) -> Result<Necklace>,
) -> Result<bool> {
    let lhs = trace(&d.bracket(e)?)?;
    let rhs = d.act_on_necklace(&trace(e)?)?.sub(&e.act_on_necklace(&trace(d)?)?)?;
    Ok(lhs == rhs)
}

pub fn cocycle_check(d: &Derivation, e: &Derivation) -> Result<bool> {
    cocycle_check_with(d, e, es_trace)
}

/// Indexes words (or any keys) into matrix rows in first-seen order.
struct RowIndex<K> {
    index: HashMap<K, usize>,
}

impl<K: std::hash::Hash + Eq + Clone> RowIndex<K> {
    fn new() -> Self {
        RowIndex { index: HashMap::new() }
    }

    fn get(&mut self, k: &K) -> usize {
        let n = self.index.len();
        *self.index.entry(k.clone()).or_insert(n)
    }

    fn len(&self) -> usize {
        self.index.len()
    }
}

/// Coordinates of derivations of degree `k` on the basis
/// `(generator h, Lyndon word w)` with `D(h) = P_w`.
fn lie_columns(g: usize, k: usize) -> Vec<(Letter, Word, TensorElement)> {
    let words = lyndon_words(2 * g, k + 1);
    let expansions: Vec<TensorElement> = words.par_iter().map(|w| standard_bracketing(w).expand()).collect();
    (0..2 * g as Letter)
        .flat_map(|h| words.iter().zip(&expansions).map(move |(w, t)| (h, w.clone(), t.clone())))
        .collect()
}

/// `D(ω)` for the derivation sending `h` to `t` and every other generator to 0.
fn omega_image(h: Letter, t: &TensorElement) -> TensorElement {
    let partner = TensorElement::letter(h ^ 1);
    if h.is_multiple_of(2) {
        t.commutator(&partner)
    } else {
        partner.commutator(t)
    }
}

/// Matrices of `D ↦ D(ω)` and of `D ↦ Tr(D)` on the Lie coordinates in
/// degree `k`.
fn omega_and_trace(g: usize, k: usize) -> (Vec<(Letter, Word, TensorElement)>, SparseMatrix, SparseMatrix) {
    let cols = lie_columns(g, k);
    let images: Vec<TensorElement> = cols.par_iter().map(|(h, _, t)| omega_image(*h, t)).collect();
    let mut rows = RowIndex::new();
    let mut entries = Vec::new();
    for (j, img) in images.iter().enumerate() {
        for (w, c) in img.terms() {
            entries.push((rows.get(w), j, c.clone()));
        }
    }
    let omega = SparseMatrix::new(rows.len(), cols.len(), entries).expect("indices in range");
    let mut trows = RowIndex::new();
    let mut tentries = Vec::new();
    for (j, (h, _, t)) in cols.iter().enumerate() {
        for (w, c) in t.terms() {
            if w[0] == *h {
                tentries.push((trows.get(&cyclic_reduce(&w[1..])), j, c.clone()));
            }
        }
    }
    let trace = SparseMatrix::new(trows.len(), cols.len(), tentries).expect("indices in range");
    (cols, omega, trace)
}

fn stack(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    let (ra, ca) = a.shape();
    let (rb, _) = b.shape();
    let entries = a.entries().iter().cloned().chain(b.entries().iter().map(|(r, c, x)| (r + ra, *c, x.clone())));
    SparseMatrix::new(ra + rb, ca, entries).expect("same column count")
}

/// Dimension of the degree-`k` symplectic derivations of the free Lie algebra.
pub fn der_omega_dim(g: usize, k: usize) -> usize {
    let (cols, omega, _) = omega_and_trace(g, k);
    cols.len() - rank(&omega)
}

/// A basis of the degree-`k` symplectic derivations of the free Lie algebra.
pub fn der_omega_basis(g: usize, k: usize) -> Vec<Derivation> {
    let (cols, omega, _) = omega_and_trace(g, k);
    nullspace(&omega)
        .into_par_iter()
        .map(|v| {
            let mut images = vec![TensorElement::zero(); 2 * g];
            for (j, c) in v {
                let (h, _, t) = &cols[j];
                images[*h as usize].add_assign(&t.scale(&c));
            }
            Derivation { genus: g, degree: k, flavor: Flavor::Lie, images }
        })
        .collect()
}

/// Rank of a family of derivations as vectors of coordinates.
pub fn span_dim(ds: &[Derivation]) -> usize {
    let mut rows = RowIndex::new();
    let mut entries = Vec::new();
    for (j, d) in ds.iter().enumerate() {
        for ((h, w), c) in d.coordinates() {
            entries.push((rows.get(&(h, w.clone())), j, c.clone()));
        }
    }
    rank(&SparseMatrix::new(rows.len(), ds.len(), entries).expect("indices in range"))
}

/// A maximal linearly independent subfamily, chosen greedily in order.
pub fn independent_subset(ds: Vec<Derivation>) -> Vec<Derivation> {
    let mut rows = RowIndex::new();
    let mut kept: Vec<Derivation> = Vec::new();
    let mut entries = Vec::new();
    let mut current = 0;
    for d in ds {
        let mut trial = entries.clone();
        for ((h, w), c) in d.coordinates() {
            trial.push((rows.get(&(h, w.clone())), kept.len(), c.clone()));
        }
        let r = rank(&SparseMatrix::new(rows.len(), kept.len() + 1, trial.clone()).expect("indices in range"));
        if r > current {
            current = r;
            entries = trial;
            kept.push(d);
        }
    }
    kept
}

/// The degree-`k` piece of the Lie algebra generated by the degree-1
/// generators, as a spanning family: brackets `[X, J]` with `X` running over
/// the previous piece.
pub fn johnson_pieces(g: usize, max_k: usize) -> Vec<Vec<Derivation>> {
    let gens = johnson_generators(g);
    let mut pieces = vec![gens.clone()];
    while pieces.len() < max_k {
        let prev = independent_subset(pieces.last().expect("nonempty").clone());
        let next: Vec<Derivation> = prev
            .par_iter()
            .flat_map_iter(|x| gens.iter().map(move |j| x.bracket(j).expect("same genus")))
            .filter(|d| !d.is_zero())
            .collect();
        pieces.push(next);
    }
    pieces
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnihilatorReport {
    pub genus: usize,
    pub degree: usize,
    /// Dimension of the degree-`k` symplectic derivations.
    pub der_omega_dim: usize,
    /// Dimension of the kernel of the trace on them.
    pub kernel_dim: usize,
    /// Dimension of the degree-`k` piece generated by degree-1 elements.
    pub johnson_dim: usize,
    /// Whether every spanning element of that piece has zero trace.
    pub johnson_in_kernel: bool,
}

/// Kernel of the trace on degree-`k` symplectic derivations, compared with
/// the piece generated in degree 1.
pub fn annihilator(g: usize, k: usize) -> Result<AnnihilatorReport> {
    if k == 0 {
        return Err(Error::Degree("degree must be positive".into()));
    }
    SymplecticBasis::new(g)?;
    let (cols, omega, trace) = omega_and_trace(g, k);
    let r_omega = rank(&omega);
    let r_both = rank(&stack(&omega, &trace));
    let piece = johnson_pieces(g, k).pop().expect("k >= 1");
    let johnson_in_kernel = piece.par_iter().map(es_trace).collect::<Result<Vec<_>>>()?.iter().all(Necklace::is_zero);
    Ok(AnnihilatorReport {
        genus: g,
        degree: k,
        der_omega_dim: cols.len() - r_omega,
        kernel_dim: cols.len() - r_both,
        johnson_dim: span_dim(&piece),
        johnson_in_kernel,
    })
}

/// The smallest degree in `from..=to` where the trace is nonzero on
/// symplectic derivations, with an explicit derivation of nonzero trace.
pub fn trace_witness(g: usize, from: usize, to: usize) -> Option<(usize, Derivation, Necklace)> {
    for k in from.max(1)..=to {
        let (_, omega, trace) = omega_and_trace(g, k);
        if rank(&stack(&omega, &trace)) == rank(&omega) {
            continue;
        }
        let witness = der_omega_basis(g, k)
            .into_iter()
            .map(|d| {
                let t = es_trace(&d).expect("positive degree");
                (d, t)
            })
            .find(|(_, t)| !t.is_zero())
            .expect("ranks differ, so some basis element has nonzero trace");
        return Some((k, witness.0, witness.1));
    }
    None
}

/// Reads derivation images keyed by generator symbol.
pub fn from_symbol_images(
    g: usize,
    degree: usize,
    flavor: Flavor,
    images: BTreeMap<Letter, TensorElement>,
) -> Result<Derivation> {
    let all = (0..2 * g as Letter).map(|l| images.get(&l).cloned().unwrap_or_default()).collect();
    Derivation::new(g, degree, flavor, all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const A1: Letter = 0;
    const B1: Letter = 1;
    const A2: Letter = 2;
    const B2: Letter = 3;

    fn w(letters: &[Letter]) -> TensorElement {
        TensorElement::word(letters)
    }

    fn single(g: usize, h: Letter, t: TensorElement) -> Derivation {
        let degree = t.degree().unwrap() - 1;
        let mut images = BTreeMap::new();
        images.insert(h, t);
        from_symbol_images(g, degree, Flavor::Tensor, images).unwrap()
    }

    /// Dimension of symplectic derivations by brute force: kernel of
    /// `D ↦ D(ω)` on all maps from generators to degree-`(k+1)` Lie elements,
    /// computed with dense rational elimination over the tensor coordinates.
    #[allow(clippy::needless_range_loop)]
    fn brute_der_omega_dim(g: usize, k: usize) -> usize {
        let basis: Vec<TensorElement> = crate::lie::lyndon_basis(g, k + 1).iter().map(LieElement::to_tensor).collect();
        let mut columns: Vec<BTreeMap<Word, Rational>> = Vec::new();
        for h in 0..2 * g as Letter {
            for t in &basis {
                let d = single(g, h, t.clone());
                columns.push(d.apply(&omega(g)).terms().clone());
            }
        }
        let rows: Vec<Word> = columns
            .iter()
            .flat_map(|c| c.keys().cloned())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut m: Vec<Vec<Rational>> =
            rows.iter().map(|r| columns.iter().map(|c| c.get(r).cloned().unwrap_or_default()).collect()).collect();
        let ncols = columns.len();
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && !m[r][c].is_zero() {
                    let f = &m[r][c] / &m[rank][c];
                    for j in 0..ncols {
                        let x = &m[rank][j] * &f;
                        m[r][j] -= x;
                    }
                }
            }
            rank += 1;
        }
        ncols - rank
    }

    #[test]
    fn symplectic_dimensions_small() {
        assert_eq!(der_omega_dim(1, 1), 0);
        assert_eq!(der_omega_dim(2, 1), 4);
        for (g, k) in [(1, 1), (1, 2), (2, 1), (1, 3)] {
            assert_eq!(der_omega_dim(g, k), brute_der_omega_dim(g, k), "g={g} k={k}");
        }
    }

    #[test]
    fn johnson_example() {
        let d = johnson_generator(2, A1, A2, B2).unwrap();
        assert!(d.image(A1).is_zero());
        assert_eq!(d.image(B1), &lie_bracket(A2, B2));
        assert_eq!(d.image(A2), &lie_bracket(A1, A2).scale(&rat(-1)));
        assert_eq!(d.image(B2), &lie_bracket(B2, A1));
        assert!(d.is_symplectic());
        assert_eq!(es_trace(&d).unwrap(), Necklace::word(2, &[A1]).unwrap().scale(&rat(2)));
    }

    #[test]
    fn johnson_generators_alternate_and_are_symplectic() {
        for d in johnson_generators(2) {
            assert!(d.is_symplectic());
            assert_eq!(d.degree(), 1);
        }
        let d = johnson_generator(2, A1, A2, B2).unwrap();
        let swapped = johnson_generator(2, A2, A1, B2).unwrap();
        assert_eq!(swapped, d.scale(&rat(-1)));
        assert!(johnson_generators(1).is_empty());
        assert!(johnson_generator(1, A1, B1, A1).unwrap().is_zero());
    }

    #[test]
    fn non_symplectic_example() {
        let d = single(1, B1, lie_bracket(A1, B1));
        assert!(!d.is_symplectic());
        assert!(Derivation::zero(1, 1, Flavor::Lie).is_symplectic());
    }

    #[test]
    fn trace_examples() {
        let d = single(1, A1, w(&[A1, B1, A1]));
        assert_eq!(es_trace(&d).unwrap(), Necklace::word(1, &[A1, B1]).unwrap());
        let d = single(1, A1, w(&[B1, A1, B1]));
        assert!(es_trace(&d).unwrap().is_zero());
        let d0 = single(1, A1, w(&[B1]));
        assert!(matches!(es_trace(&d0), Err(Error::Degree(_))));
    }

    #[test]
    fn leibniz_on_brackets() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let d = random_symplectic(&mut rng, 2, 1);
            let (x, y) = (w(&[rng.gen_range(0..4)]), w(&[rng.gen_range(0..4), rng.gen_range(0..4)]));
            let lhs = d.apply(&x.commutator(&y));
            let rhs = d.apply(&x).commutator(&y).add(&x.commutator(&d.apply(&y)));
            assert_eq!(lhs, rhs);
        }
        assert!(Derivation::zero(2, 2, Flavor::Tensor).apply(&w(&[A1, B2])).is_zero());
    }

    #[test]
    fn hamiltonian_derivations_are_symplectic() {
        let u = Necklace::word(1, &[A1, A1, B1]).unwrap();
        let d = necklace_to_derivation(&u).unwrap();
        assert_eq!(d.degree(), 1);
        assert!(d.is_symplectic());
        assert!(d.images().iter().all(|t| t.is_homogeneous_of(2)));
        assert!(necklace_to_derivation(&Necklace::word(1, &[A1, B1]).unwrap()).is_err());
    }

    #[test]
    fn hamiltonian_map_intertwines_brackets() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let u = random_word(&mut rng, 2, 3, 4);
            let v = random_word(&mut rng, 2, 3, 4);
            let lhs = necklace_to_derivation(&crate::necklace::goldman_bracket(&u, &v).unwrap());
            let rhs = necklace_to_derivation(&u).unwrap().bracket(&necklace_to_derivation(&v).unwrap()).unwrap();
            match lhs {
                Ok(l) => assert_eq!(l, rhs, "u={u} v={v}"),
                Err(_) => assert!(rhs.is_zero()),
            }
        }
    }

    #[test]
    fn trace_of_hamiltonian_is_the_reduced_cobracket() {
        for len in 3..=5usize {
            for code in 0..4usize.pow(len as u32) {
                let w: Word = (0..len).map(|i| ((code >> (2 * i)) & 3) as Letter).collect();
                let u = Necklace::word(2, &w).unwrap();
                let lhs = es_trace(&necklace_to_derivation(&u).unwrap()).unwrap();
                assert_eq!(lhs, crate::necklace::turaev_cobracket(&u).counit_last());
            }
        }
    }

    #[test]
    fn cocycle_and_mutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let (k, l) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            let d = random_symplectic(&mut rng, 2, k);
            let e = random_symplectic(&mut rng, 2, l);
            assert!(cocycle_check(&d, &e).unwrap());
        }
        // Dropping one term of every trace breaks the identity once a
        // degree-3 trace (nonzero in genus 2) enters.
        let corrupted = |x: &Derivation| -> Result<Necklace> {
            let t = es_trace(x)?;
            let mut out = Necklace::zero(t.genus());
            for (w, c) in t.terms().iter().skip(1) {
                out.push(w, c.clone());
            }
            Ok(out)
        };
        let caught = (0..20).any(|_| {
            let d = random_symplectic(&mut rng, 2, 1);
            let e = random_symplectic(&mut rng, 2, 3);
            !cocycle_check_with(&d, &e, corrupted).unwrap()
        });
        assert!(caught);
        let d = random_symplectic(&mut rng, 2, 1);
        assert!(cocycle_check(&d, &Derivation::zero(2, 1, Flavor::Lie)).unwrap());
    }

    fn random_word(rng: &mut ChaCha8Rng, g: usize, lo: usize, hi: usize) -> Necklace {
        let len = rng.gen_range(lo..=hi);
        let w: Word = (0..len).map(|_| rng.gen_range(0..2 * g as Letter)).collect();
        Necklace::word(g, &w).unwrap()
    }

    fn random_symplectic(rng: &mut ChaCha8Rng, g: usize, k: usize) -> Derivation {
        let basis = der_omega_basis(g, k);
        let mut d = Derivation::zero(g, k, Flavor::Lie);
        for b in &basis {
            d = d.add(&b.scale(&rat(rng.gen_range(-2..=2)))).unwrap();
        }
        d
    }
}
