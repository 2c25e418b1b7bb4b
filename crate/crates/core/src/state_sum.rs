//! Evaluation of a ribbon graph as an operation on cyclic words.
//!
//! Each vertex receives one input word. A state assigns to the half-edges at
//! a vertex distinct letters of its word, respecting the cyclic order; the
//! unassigned letters stay in the corners between consecutive half-edges.
//! A state is weighted by the pairing of the two letters on every edge
//! (tail first, edges directed away from their smaller half-edge), and every
//! boundary cycle reads its corners in order to produce one output word.
//! Vertices take inputs in the order of their smallest half-edge, outputs
//! follow the boundaries in the same way.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};
use crate::necklace::{between, pairing, Letter, Necklace, NecklaceTensor, Word};
use crate::perm;
use crate::ribbon::RibbonGraph;

/// One way of placing a vertex's half-edges on a word.
struct Placement {
    letters: Vec<Letter>,
    /// Corner after each half-edge of the vertex, in cyclic order.
    corners: Vec<Word>,
}

/// All cyclic-order-preserving injective placements of `k` half-edges on `w`.
fn placements(w: &[Letter], k: usize) -> Vec<Placement> {
    let n = w.len();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut offsets = Vec::with_capacity(k);
    for start in 0..n {
        offsets.clear();
        offsets.push(0);
        choose(n, k, &mut offsets, &mut |offs| {
            let pos: Vec<usize> = offs.iter().map(|&o| (start + o) % n).collect();
            let corners = (0..k).map(|t| between(w, pos[t], pos[(t + 1) % k])).collect();
            out.push(Placement { letters: pos.iter().map(|&p| w[p]).collect(), corners });
        });
    }
    out
}

/// Extends `offs` with increasing offsets in `1..n` until it has `k` entries.
fn choose(n: usize, k: usize, offs: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if offs.len() == k {
        f(offs);
        return;
    }
    let from = offs.last().map_or(0, |&o| o + 1);
    for o in from..n {
        offs.push(o);
        choose(n, k, offs, f);
        offs.pop();
    }
}

/// The operation `|T(H)|^{⊗V} → |T(H)|^{⊗B}` defined by `g`.
pub fn rho_eval(g: &RibbonGraph, inputs: &[Necklace]) -> Result<NecklaceTensor> {
    let vertices = g.vertices();
    if inputs.len() != vertices.len() {
        return Err(Error::Arity { expected: vertices.len(), got: inputs.len() });
    }
    let genus = inputs[0].genus();
    if let Some(bad) = inputs.iter().find(|u| u.genus() != genus) {
        return Err(Error::BasisMismatch(genus, bad.genus()));
    }
    let n = g.num_half_edges();
    let boundaries = g.boundary_cycles();
    let sigma_inv = perm::inverse(g.sigma());
    let mut out = NecklaceTensor::zero(genus, boundaries.len());
    let mut letter = vec![0 as Letter; n];
    let mut corner_after: Vec<Word> = vec![Vec::new(); n];

    // Depth-first over vertices; each level fixes one input term and one
    // placement.
    struct Ctx<'a> {
        g: &'a RibbonGraph,
        vertices: &'a [Vec<u8>],
        inputs: &'a [Necklace],
        boundaries: &'a [Vec<u8>],
        sigma_inv: &'a [u8],
    }
    fn walk(
        ctx: &Ctx<'_>,
        v: usize,
        coeff: &Rational,
        letter: &mut [Letter],
        corner_after: &mut [Word],
        out: &mut NecklaceTensor,
    ) {
        if v == ctx.vertices.len() {
            let iota = ctx.g.iota();
            let weight: i64 = (0..letter.len())
                .filter(|&h| (iota[h] as usize) > h)
                .map(|h| pairing(letter[h], letter[iota[h] as usize]))
                .product();
            if weight == 0 {
                return;
            }
            let words: Vec<Word> = ctx
                .boundaries
                .iter()
                .map(|b| {
                    b.iter().flat_map(|&c| corner_after[ctx.sigma_inv[c as usize] as usize].iter().copied()).collect()
                })
                .collect();
            let refs: Vec<&[Letter]> = words.iter().map(Vec::as_slice).collect();
            out.push(&refs, coeff * rat(weight));
            return;
        }
        let cycle = &ctx.vertices[v];
        for (w, c) in ctx.inputs[v].terms() {
            let next = coeff * c;
            for p in placements(w, cycle.len()) {
                // Prune as soon as an edge with both ends placed pairs to zero.
                let mut dead = false;
                for (t, &h) in cycle.iter().enumerate() {
                    letter[h as usize] = p.letters[t];
                }
                for (t, &h) in cycle.iter().enumerate() {
                    let o = ctx.g.iota()[h as usize];
                    if ctx.vertices[..=v].iter().any(|c| c.contains(&o))
                        && pairing(p.letters[t], letter[o as usize]) == 0
                    {
                        dead = true;
                        break;
                    }
                    corner_after[h as usize] = p.corners[t].clone();
                }
                if !dead && !next.is_zero() {
                    walk(ctx, v + 1, &next, letter, corner_after, out);
                }
            }
        }
    }

    let ctx = Ctx { g, vertices: &vertices, inputs, boundaries: &boundaries, sigma_inv: &sigma_inv };
    walk(&ctx, 0, &rat(1), &mut letter, &mut corner_after, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::necklace::{goldman_bracket, turaev_cobracket};

    fn all_words(g: usize, max_len: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w: &Word| (0..2 * g as u8).map(move |l| [w.as_slice(), &[l]].concat()))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    #[test]
    fn placements_count() {
        // n * C(n-1, k-1) placements.
        assert_eq!(placements(&[0, 1, 2, 3], 2).len(), 4 * 3);
        assert_eq!(placements(&[0, 1, 2, 3], 1).len(), 4);
        assert_eq!(placements(&[0, 1], 3).len(), 0);
    }

    #[test]
    fn bar_graph_is_the_bracket() {
        let bar = RibbonGraph::bar();
        for g in 1..=2 {
            let words = all_words(g, 3);
            for u in &words {
                for v in &words {
                    let (u, v) = (Necklace::word(g, u).unwrap(), Necklace::word(g, v).unwrap());
                    let direct = goldman_bracket(&u, &v).unwrap();
                    assert_eq!(rho_eval(&bar, &[u, v]).unwrap(), direct.into());
                }
            }
        }
    }

    #[test]
    fn tadpole_is_the_cobracket() {
        let t = RibbonGraph::tadpole();
        for g in 1..=2 {
            for w in all_words(g, 4) {
                let u = Necklace::word(g, &w).unwrap();
                assert_eq!(rho_eval(&t, std::slice::from_ref(&u)).unwrap(), turaev_cobracket(&u));
            }
        }
    }

    #[test]
    fn arity_checked() {
        let u = Necklace::from_symbols(1, &["a1"]).unwrap();
        let err = rho_eval(&RibbonGraph::tadpole(), &[u.clone(), u]).unwrap_err();
        assert_eq!(err, Error::Arity { expected: 1, got: 2 });
    }
}
