//! Exact sparse linear algebra over the rationals.
//!
//! Rank is computed modulo three primes above 2^31. Small matrices, and any
//! matrix on which the primes disagree, are settled by fraction-free
//! elimination over the integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub const RANK_PRIMES: [u64; 3] = [2_147_483_659, 2_147_483_693, 2_147_483_713];

/// Matrices with fewer stored entries than this are ranked exactly.
pub const EXACT_NNZ_THRESHOLD: usize = 5000;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    pub row_basis: String,
    pub col_basis: String,
    /// Sorted by `(row, col)`, no zeros, no duplicates.
    entries: Vec<(usize, usize, Rational)>,
}

impl SparseMatrix {
    /// Builds a matrix, summing duplicate positions and dropping zeros.
    pub fn new(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Rational)>) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::Corrupted(format!("entry ({r}, {c}) outside {rows}x{cols}")));
            }
            *acc.entry((r, c)).or_insert_with(Rational::zero) += v;
        }
        let entries = acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((r, c), v)| (r, c, v)).collect();
        Ok(SparseMatrix { rows, cols, row_basis: String::new(), col_basis: String::new(), entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, row_basis: String::new(), col_basis: String::new(), entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, n, (0..n).map(|i| (i, i, Rational::one()))).unwrap()
    }

    pub fn with_bases(mut self, row_basis: impl Into<String>, col_basis: impl Into<String>) -> Self {
        self.row_basis = row_basis.into();
        self.col_basis = col_basis.into();
        self
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, Rational)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::new(self.cols, self.rows, self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())))
            .unwrap()
            .with_bases(self.col_basis.clone(), self.row_basis.clone())
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::SelectorMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut other_rows: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); other.rows];
        for (r, c, v) in &other.entries {
            other_rows[*r].push((*c, v));
        }
        let mut out = Vec::new();
        for (r, k, a) in &self.entries {
            for (c, b) in &other_rows[*k] {
                out.push((*r, *c, a * *b));
            }
        }
        Ok(SparseMatrix::new(self.rows, other.cols, out)?.with_bases(self.row_basis.clone(), other.col_basis.clone()))
    }

    /// Column vectors as sorted `(row, value)` lists.
    pub fn columns(&self) -> Vec<Vec<(usize, Rational)>> {
        let mut cols = vec![Vec::new(); self.cols];
        for (r, c, v) in &self.entries {
            cols[*c].push((*r, v.clone()));
        }
        cols
    }

    pub fn rows_vec(&self) -> Vec<Vec<(usize, Rational)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            rows[*r].push((*c, v.clone()));
        }
        rows
    }

    /// The vectors along the shorter side, which is what elimination iterates.
    fn elimination_vectors(&self) -> (Vec<Vec<(usize, Rational)>>, usize) {
        if self.cols <= self.rows {
            (self.columns(), self.rows)
        } else {
            (self.rows_vec(), self.cols)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub modular: Vec<Option<usize>>,
    pub exact: bool,
}

/// Exact rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    rank_certified(m).rank
}

/// Rank with a record of how it was obtained.
pub fn rank_certified(m: &SparseMatrix) -> RankCertificate {
    if m.nnz() < EXACT_NNZ_THRESHOLD {
        return RankCertificate { rank: rank_exact(m), modular: Vec::new(), exact: true };
    }
    let modular: Vec<Option<usize>> = RANK_PRIMES.par_iter().map(|&p| rank_mod_p(m, p)).collect();
    let known: Vec<usize> = modular.iter().flatten().copied().collect();
    if !known.is_empty() && known.iter().all(|&r| r == known[0]) && known.len() == modular.len() {
        RankCertificate { rank: known[0], modular, exact: false }
    } else {
        RankCertificate { rank: rank_exact(m), modular, exact: true }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("reduced residue fits")
}

/// Reduction of a rational modulo `p`; `None` when `p` divides the denominator.
pub fn rational_mod(x: &Rational, p: u64) -> Option<u64> {
    let den = bigint_mod(x.denom(), p);
    if den == 0 {
        return None;
    }
    Some(mul_mod(bigint_mod(x.numer(), p), inv_mod(den, p), p))
}

type ModVec = Vec<(u32, u64)>;

/// Rank modulo `p`; `None` if some entry has a denominator divisible by `p`.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> Option<usize> {
    let (vectors, width) = m.elimination_vectors();
    let mut reduced: Vec<ModVec> = Vec::with_capacity(vectors.len());
    for v in &vectors {
        let mut out = ModVec::with_capacity(v.len());
        for (i, x) in v {
            let r = rational_mod(x, p)?;
            if r != 0 {
                out.push((*i as u32, r));
            }
        }
        reduced.push(out);
    }
    reduced.sort_by_key(|v| v.len());
    let mut pivots: Vec<Option<ModVec>> = vec![None; width];
    let mut rank = 0;
    for v in reduced {
        if let Some(v) = reduce_mod(v, &pivots, p) {
            let lead = v[0].0 as usize;
            pivots[lead] = Some(v);
            rank += 1;
        }
    }
    Some(rank)
}

/// Reduces `v` against the pivots; returns the normalized remainder if nonzero.
fn reduce_mod(mut v: ModVec, pivots: &[Option<ModVec>], p: u64) -> Option<ModVec> {
    loop {
        let &(lead, val) = v.first()?;
        match &pivots[lead as usize] {
            None => {
                let inv = inv_mod(val, p);
                for e in v.iter_mut() {
                    e.1 = mul_mod(e.1, inv, p);
                }
                return Some(v);
            }
            Some(piv) => {
                // v -= val * piv, with piv[0] = (lead, 1)
                let neg = p - val;
                let mut out = ModVec::with_capacity(v.len() + piv.len());
                let (mut i, mut j) = (0, 0);
                while i < v.len() || j < piv.len() {
                    let take_v = j >= piv.len() || (i < v.len() && v[i].0 < piv[j].0);
                    let take_p = i >= v.len() || (j < piv.len() && piv[j].0 < v[i].0);
                    if take_v {
                        out.push(v[i]);
                        i += 1;
                    } else if take_p {
                        out.push((piv[j].0, mul_mod(piv[j].1, neg, p)));
                        j += 1;
                    } else {
                        let x = (v[i].1 + mul_mod(piv[j].1, neg, p)) % p;
                        if x != 0 {
                            out.push((v[i].0, x));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                v = out;
            }
        }
    }
}

type IntVec = Vec<(u32, BigInt)>;

fn to_primitive_integer(v: &[(usize, Rational)]) -> IntVec {
    let lcm = v.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let mut out: IntVec =
        v.iter().map(|(i, x)| (*i as u32, (x * Rational::from_integer(lcm.clone())).to_integer())).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(v: &mut IntVec) {
    let g = v.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for e in v.iter_mut() {
            e.1 = &e.1 / &g;
        }
    }
}

/// Exact rank by fraction-free elimination.
pub fn rank_exact(m: &SparseMatrix) -> usize {
    let (vectors, width) = m.elimination_vectors();
    let mut ints: Vec<IntVec> = vectors.iter().filter(|v| !v.is_empty()).map(|v| to_primitive_integer(v)).collect();
    ints.sort_by_key(|v| v.len());
    let mut pivots: Vec<Option<IntVec>> = vec![None; width];
    let mut rank = 0;
    for v in ints {
        if let Some(v) = reduce_int(v, &pivots) {
            let lead = v[0].0 as usize;
            pivots[lead] = Some(v);
            rank += 1;
        }
    }
    rank
}

fn reduce_int(mut v: IntVec, pivots: &[Option<IntVec>]) -> Option<IntVec> {
    loop {
        let lead = v.first()?.0;
        match &pivots[lead as usize] {
            None => return Some(v),
            Some(piv) => {
                let a = &piv[0].1;
                let b = &v[0].1;
                let g = a.gcd(b);
                let (ca, cb) = (a / &g, b / &g);
                // v <- ca * v - cb * piv
                let mut out = IntVec::with_capacity(v.len() + piv.len());
                let (mut i, mut j) = (0, 0);
                while i < v.len() || j < piv.len() {
                    let take_v = j >= piv.len() || (i < v.len() && v[i].0 < piv[j].0);
                    let take_p = i >= v.len() || (j < piv.len() && piv[j].0 < v[i].0);
                    if take_v {
                        out.push((v[i].0, &ca * &v[i].1));
                        i += 1;
                    } else if take_p {
                        out.push((piv[j].0, -(&cb * &piv[j].1)));
                        j += 1;
                    } else {
                        let x = &ca * &v[i].1 - &cb * &piv[j].1;
                        if !x.is_zero() {
                            out.push((v[i].0, x));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                make_primitive(&mut out);
                v = out;
            }
        }
    }
}

/// Basis of the right kernel `{x : M x = 0}`, each vector as sorted
/// `(column, value)` pairs. Exact reduced row echelon form.
pub fn nullspace(m: &SparseMatrix) -> Vec<Vec<(usize, Rational)>> {
    let rows = m.rows_vec();
    // Echelon rows keyed by pivot column, kept fully reduced.
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
    for row in rows {
        let mut v: BTreeMap<usize, Rational> = row.into_iter().collect();
        // reduce against existing pivots
        for (pc, prow) in &pivots {
            if let Some(c) = v.get(pc).cloned() {
                for (k, x) in prow {
                    let e = v.entry(*k).or_insert_with(Rational::zero);
                    *e -= &c * x;
                    if e.is_zero() {
                        v.remove(k);
                    }
                }
            }
        }
        let Some((&lead, lv)) = v.iter().next() else { continue };
        let inv = lv.recip();
        for x in v.values_mut() {
            *x *= &inv;
        }
        // back-substitute into existing pivots
        for prow in pivots.values_mut() {
            if let Some(c) = prow.get(&lead).cloned() {
                for (k, x) in &v {
                    let e = prow.entry(*k).or_insert_with(Rational::zero);
                    *e -= &c * x;
                    if e.is_zero() {
                        prow.remove(k);
                    }
                }
            }
        }
        pivots.insert(lead, v);
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivots.contains_key(c)) {
        let mut vec = vec![(free, Rational::one())];
        for (pc, prow) in &pivots {
            if let Some(x) = prow.get(&free) {
                vec.push((*pc, -x.clone()));
            }
        }
        vec.sort_by_key(|e| e.0);
        basis.push(vec);
    }
    basis
}

/// Applies `m` to a sparse vector.
pub fn apply(m: &SparseMatrix, x: &[(usize, Rational)]) -> Vec<(usize, Rational)> {
    let xs: BTreeMap<usize, &Rational> = x.iter().map(|(i, v)| (*i, v)).collect();
    let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
    for (r, c, v) in &m.entries {
        if let Some(xv) = xs.get(c) {
            *out.entry(*r).or_insert_with(Rational::zero) += v * *xv;
        }
    }
    out.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Dense Gaussian elimination over the rationals: the test oracle.
    #[allow(clippy::needless_range_loop)]
    fn dense_rank(rows: usize, cols: usize, entries: &[(usize, usize, Rational)]) -> usize {
        let mut a = vec![vec![Rational::zero(); cols]; rows];
        for (r, c, v) in entries {
            a[*r][*c] += v;
        }
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            for r in 0..rows {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] / &a[rank][c];
                    for k in 0..cols {
                        let t = &f * &a[rank][k];
                        a[r][k] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn random_sparse(rng: &mut ChaCha8Rng, n: usize, m: usize, density: f64) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for r in 0..n {
            for c in 0..m {
                if rng.gen_bool(density) {
                    let num: i64 = rng.gen_range(-3..=3);
                    let den: i64 = rng.gen_range(1..=3);
                    out.push((r, c, Rational::new(num.into(), den.into())));
                }
            }
        }
        out
    }

    #[test]
    fn trivial_ranks() {
        assert_eq!(rank(&SparseMatrix::zeros(4, 7)), 0);
        assert_eq!(rank(&SparseMatrix::identity(9)), 9);
        assert_eq!(rank_mod_p(&SparseMatrix::identity(9), RANK_PRIMES[0]), Some(9));
    }

    #[test]
    fn random_matrices_match_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for t in 0..50 {
            // sparse enough that rank deficiency actually occurs
            let density = [0.05, 0.1, 0.2][t % 3];
            let entries = random_sparse(&mut rng, 20, 20, density);
            let expected = dense_rank(20, 20, &entries);
            let m = SparseMatrix::new(20, 20, entries).unwrap();
            assert_eq!(rank_exact(&m), expected);
            assert_eq!(rank(&m), expected);
            for p in RANK_PRIMES {
                assert_eq!(rank_mod_p(&m, p), Some(expected));
            }
        }
    }

    #[test]
    fn dependent_rows_lower_rank() {
        let e = vec![(0, 0, rat(1)), (0, 1, rat(2)), (1, 0, rat(2)), (1, 1, rat(4)), (2, 2, rat(5))];
        let m = SparseMatrix::new(3, 3, e).unwrap();
        assert_eq!(rank(&m), 2);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        assert!(apply(&m, &ns[0]).is_empty());
    }

    #[test]
    fn nullspace_dimension_is_corank() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let entries = random_sparse(&mut rng, 8, 12, 0.2);
            let m = SparseMatrix::new(8, 12, entries.clone()).unwrap();
            let ns = nullspace(&m);
            assert_eq!(ns.len(), 12 - dense_rank(8, 12, &entries));
            for v in &ns {
                assert!(apply(&m, v).is_empty());
            }
        }
    }

    #[test]
    fn duplicates_are_summed_and_zeros_dropped() {
        let m = SparseMatrix::new(2, 2, vec![(0, 0, rat(1)), (0, 0, rat(-1)), (1, 1, rat(3))]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert!(SparseMatrix::new(1, 1, vec![(1, 0, rat(1))]).is_err());
    }

    #[test]
    fn product_shapes() {
        let a = SparseMatrix::identity(3);
        let b = SparseMatrix::new(3, 2, vec![(0, 1, rat(2))]).unwrap();
        assert_eq!(a.mul(&b).unwrap(), b);
        assert!(b.mul(&b).is_err());
    }
}
