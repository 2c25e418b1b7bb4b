//! The vertex-expansion differential and cohomology of ribbon graph complexes.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache;
use crate::canon::{canonicalize, standard_orientation, OrientedClass, StandardIds};
use crate::enumerate::{SectorBasis, Selector};
use crate::error::{Error, Result};
use crate::linalg::{rank, rat, SparseMatrix};
use crate::ribbon::RibbonGraph;

/// Formal sum of canonical representatives with integer coefficients.
pub type Chain = BTreeMap<RibbonGraph, i64>;

/// Which splittings of a vertex the differential sums over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Splitting {
    /// Both new vertices keep at least one old half-edge.
    #[default]
    Proper,
    /// Also the splittings that leave one new vertex univalent.
    WithEmptyArcs,
}

/// Splits vertex `v` at the corners after `sigma`-positions `a` and `b`
/// (`a == b` puts every old half-edge on one side). New half-edges are
/// `x = 2E` (tail, joins the arc after corner `a`) and `y = 2E + 1`.
fn split(g: &RibbonGraph, cycle: &[u8], a: usize, b: usize) -> RibbonGraph {
    let n = g.num_half_edges();
    let m = cycle.len();
    let (x, y) = (n as u8, n as u8 + 1);
    let mut sigma = g.sigma().to_vec();
    sigma.extend([0, 0]);
    let mut iota = g.iota().to_vec();
    iota.extend([y, x]);
    // arc A = cycle[a+1 ..= b], arc B = the rest, starting after b
    let take = |start: usize, len: usize| -> Vec<u8> { (1..=len).map(|k| cycle[(start + k) % m]).collect() };
    let arc_a = take(a, b - a);
    let arc_b = take(b, m - (b - a));
    for (new, arc) in [(x, &arc_a), (y, &arc_b)] {
        let mut prev = new;
        for &h in arc.iter() {
            sigma[prev as usize] = h;
            prev = h;
        }
        sigma[prev as usize] = new;
    }
    RibbonGraph::from_parts_unchecked(sigma, iota)
}

/// `δ` of `g` carrying its standard orientation, in parity `d`.
///
/// The split vertex keeps its slot in the vertex ordering for the piece that
/// contains the tail of the new edge, the other piece goes last, and the new
/// edge comes first among the edges.
pub fn expand_graph(g: &RibbonGraph, d: u8, splitting: Splitting) -> Chain {
    let d = d & 1;
    let n = g.num_half_edges() as u8;
    let (x, y) = (n, n + 1);
    let std = standard_orientation(g);
    let vertices = g.vertices();
    let mut out = Chain::new();
    for (vi, cycle) in vertices.iter().enumerate() {
        let m = cycle.len();
        let mut cuts: Vec<(usize, usize)> = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                cuts.push((a, b));
            }
            if splitting == Splitting::WithEmptyArcs {
                cuts.push((a, a));
            }
        }
        for (a, b) in cuts {
            let h = split(g, cycle, a, b);
            let mut o = std.clone();
            o.vertices[vi] = x;
            o.vertices.push(y);
            o.edges.insert(0, x);
            let s1 = StandardIds::new(&h).sign(&o, d);
            let c = canonicalize(&h).orient(&h, d);
            if c.is_zero {
                continue;
            }
            *out.entry(c.graph).or_insert(0) += i64::from(s1 * c.sign_to_canonical);
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Vertex expansion of a nonzero oriented class, combined over canonical
/// representatives.
pub fn vertex_expansion(class: &OrientedClass) -> Chain {
    vertex_expansion_with(class, Splitting::Proper)
}

pub fn vertex_expansion_with(class: &OrientedClass, splitting: Splitting) -> Chain {
    if class.is_zero {
        return Chain::new();
    }
    let mut chain = expand_graph(&class.graph, class.parity, splitting);
    if class.sign_to_canonical < 0 {
        for c in chain.values_mut() {
            *c = -*c;
        }
    }
    chain
}

/// Linear extension of `δ` to chains of canonical representatives.
pub fn apply_differential(chain: &Chain, d: u8, splitting: Splitting) -> Chain {
    let parts: Vec<Chain> = chain
        .par_iter()
        .map(|(g, c)| {
            let mut e = expand_graph(g, d, splitting);
            for v in e.values_mut() {
                *v *= c;
            }
            e
        })
        .collect();
    let mut out = Chain::new();
    for part in parts {
        for (g, c) in part {
            *out.entry(g).or_insert(0) += c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Matrix of `δ: src → dst`; column `j` is the expansion of `src[j]`.
pub fn differential_matrix(src: &SectorBasis, dst: &SectorBasis, splitting: Splitting) -> Result<SparseMatrix> {
    if src.parity != dst.parity || src.selector.next() != dst.selector {
        return Err(Error::SelectorMismatch(format!("{} does not map to {}", src.id(), dst.id())));
    }
    let columns: Vec<Chain> = src.classes().par_iter().map(|g| expand_graph(g, src.parity, splitting)).collect();
    let mut entries = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        for (g, c) in col {
            let i = dst
                .position(g)
                .ok_or_else(|| Error::Corrupted(format!("expansion term outside target basis {}", dst.id())))?;
            entries.push((i, j, rat(*c)));
        }
    }
    Ok(SparseMatrix::new(dst.len(), src.len(), entries)?.with_bases(dst.id(), src.id()))
}

/// Matrix of `δ` on `src` with rows indexed by the classes that actually
/// occur in the image (sorted). Its rank is the rank of `δ` on `src`.
pub fn image_matrix(src: &SectorBasis, splitting: Splitting) -> SparseMatrix {
    let columns: Vec<Chain> = src.classes().par_iter().map(|g| expand_graph(g, src.parity, splitting)).collect();
    let rows: BTreeSet<&RibbonGraph> = columns.iter().flat_map(|c| c.keys()).collect();
    let index: BTreeMap<&RibbonGraph, usize> = rows.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let entries = columns
        .iter()
        .enumerate()
        .flat_map(|(j, col)| col.iter().map(|(g, c)| (index[g], j, rat(*c))).collect::<Vec<_>>())
        .collect::<Vec<_>>();
    SparseMatrix::new(rows.len(), src.len(), entries)
        .expect("indices in range")
        .with_bases(format!("image({})", src.id()), src.id())
}

/// Rank of `δ` restricted to a basis.
pub fn differential_rank(src: &SectorBasis, splitting: Splitting) -> usize {
    if src.is_empty() {
        return 0;
    }
    rank(&image_matrix(src, splitting))
}

/// How the cohomological degree is read off a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Grading {
    /// Number of vertices.
    Vertex,
    /// `|G|_d = d(V + B - 2) + (1 - d)E`.
    Degree,
}

/// Which graphs a cohomology request covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sector {
    /// Fixed genus and boundary count.
    GenusBoundaries { g: usize, n: usize },
    /// All graphs with a given number of edges (vertex grading only).
    Edges { e: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRequest {
    pub d: u8,
    pub sector: Sector,
    pub grading: Grading,
    pub degree: i64,
    /// Inclusive range of edge counts the caller allows to be enumerated.
    pub edge_range: (usize, usize),
    pub allow_truncation: bool,
    pub splitting: Splitting,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub d: u8,
    pub sector: serde_json::Value,
    pub grading: Grading,
    pub degree: i64,
    pub dim: usize,
    #[serde(rename = "E_range")]
    pub e_range: [usize; 2],
    pub exact: bool,
}

/// The `(V, E)` slice holding cochains of a given degree, or `None` when no
/// graph can have that degree.
fn slice_for(req: &CohomologyRequest, degree: i64) -> Option<Selector> {
    let (v, e) = match (req.sector, req.grading) {
        (Sector::GenusBoundaries { g, n }, Grading::Degree) => {
            let (g, n) = (g as i64, n as i64);
            if req.d == 0 {
                (degree - n + 2 - 2 * g, degree)
            } else {
                let v = degree - n + 2;
                (v, v + n - 2 + 2 * g)
            }
        }
        (Sector::GenusBoundaries { g, n }, Grading::Vertex) => {
            let (g, n) = (g as i64, n as i64);
            (degree, degree + n - 2 + 2 * g)
        }
        (Sector::Edges { e }, Grading::Vertex) => {
            let shift = degree - req.degree;
            (degree, e as i64 + shift)
        }
        (Sector::Edges { .. }, Grading::Degree) => return None,
    };
    if v <= 0 || e <= 0 || v > e + 1 {
        return None;
    }
    Some(match req.sector {
        Sector::GenusBoundaries { g, n } => Selector::sector(g as i64, n as i64, e),
        Sector::Edges { .. } => Selector::shape(v, e),
    })
}

/// Cohomology in one degree: `dim ker δ_k - rank δ_{k-1}`.
///
/// The outgoing rank is computed from the images of the degree-`k` classes,
/// so only the degree-`k` and degree-`(k-1)` bases are enumerated; those
/// must lie inside `edge_range` unless truncation is acknowledged.
pub fn cohomology(req: &CohomologyRequest) -> Result<CohomologyReport> {
    if req.d > 1 {
        return Err(Error::InvalidSelector(format!("d must be 0 or 1, got {}", req.d)));
    }
    if matches!((req.sector, req.grading), (Sector::Edges { .. }, Grading::Degree)) {
        return Err(Error::InvalidSelector("degree grading needs a (g, n) sector".into()));
    }
    let (lo, hi) = req.edge_range;
    let here = slice_for(req, req.degree);
    let below = slice_for(req, req.degree - 1);
    let in_range = |s: &Option<Selector>| match s {
        None => true,
        Some(sel) => sel.vertices_edges().map(|(_, e)| (lo..=hi).contains(&e)).unwrap_or(true),
    };
    let exact = in_range(&here) && in_range(&below);
    if !exact && !req.allow_truncation {
        return Err(Error::Truncated(format!(
            "degree {} needs edge counts outside {lo}..{hi}; pass allow_truncation to accept",
            req.degree
        )));
    }
    let basis_of = |s: &Option<Selector>| -> Result<Option<SectorBasis>> {
        match s {
            Some(sel) if in_range(s) => Ok(Some(cache::basis(*sel, req.d)?)),
            _ => Ok(None),
        }
    };
    let cur = basis_of(&here)?;
    let prev = basis_of(&below)?;
    let dim_here = cur.as_ref().map_or(0, SectorBasis::len);
    let rank_out = cur.as_ref().map_or(Ok(0), |b| cache::image_rank(b, req.splitting))?;
    // A slice dropped by truncation counts as zero, so nothing maps into it.
    let rank_in = match (&prev, &cur) {
        (Some(b), Some(_)) => cache::image_rank(b, req.splitting)?,
        _ => 0,
    };
    let sector = match req.sector {
        Sector::GenusBoundaries { g, n } => serde_json::json!({ "g": g, "n": n }),
        Sector::Edges { e } => serde_json::json!({ "E": e }),
    };
    Ok(CohomologyReport {
        d: req.d,
        sector,
        grading: req.grading,
        degree: req.degree,
        dim: dim_here - rank_out - rank_in,
        e_range: [lo, hi],
        exact,
    })
}

/// Kernel dimension of `δ` on the one-vertex classes with `e` edges.
pub fn one_vertex_cocycles(d: u8, e: usize, splitting: Splitting) -> Result<usize> {
    let basis = cache::basis(Selector::shape(1, e as i64), d)?;
    Ok(basis.len() - cache::image_rank(&basis, splitting)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use crate::enumerate::enumerate;
    use crate::enumerate::enumerate_all;

    fn class(g: &RibbonGraph, d: u8) -> OrientedClass {
        canonical_form(g, d)
    }

    #[test]
    fn tadpole_is_a_cocycle() {
        for d in 0..2 {
            let c = class(&RibbonGraph::tadpole(), d);
            assert!(vertex_expansion(&c).is_empty());
        }
    }

    #[test]
    fn empty_arcs_break_the_tadpole_cocycle() {
        // Hairs at the two corners of the tadpole are exchanged by an
        // orientation-preserving automorphism, so they add up.
        for d in 0..2 {
            let c = class(&RibbonGraph::tadpole(), d);
            let e = vertex_expansion_with(&c, Splitting::WithEmptyArcs);
            assert_eq!(e.len(), 1);
            assert_eq!(e.values().next().unwrap().abs(), 2);
        }
    }

    #[test]
    fn splitting_preserves_sector() {
        for e in 1..=4 {
            for v in 1..=e {
                for g in enumerate_all(v, e).unwrap().iter() {
                    let sec = g.sector();
                    let cyc = g.vertices();
                    for c in &cyc {
                        for a in 0..c.len() {
                            for b in a..c.len() {
                                let h = split(g, c, a, b);
                                assert_eq!(h.sector(), sec);
                                assert_eq!(h.num_vertices(), v + 1);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn d_squared_vanishes_small() {
        for d in 0..2 {
            for e in 1..=3 {
                for v in 1..=e + 1 {
                    let basis = enumerate(Selector::shape(v as i64, e as i64), d).unwrap();
                    for g in basis.classes() {
                        let once = expand_graph(g, d, Splitting::Proper);
                        let twice = apply_differential(&once, d, Splitting::Proper);
                        assert!(twice.is_empty(), "d={d} {g:?} -> {twice:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn matrix_rejects_mismatched_selectors() {
        let a = enumerate(Selector::shape(1, 2), 1).unwrap();
        let b = enumerate(Selector::shape(1, 3), 1).unwrap();
        assert!(differential_matrix(&a, &b, Splitting::Proper).is_err());
    }

    #[test]
    fn tadpole_column_is_zero() {
        let src = enumerate(Selector::shape(1, 1), 1).unwrap();
        let dst = enumerate(Selector::shape(2, 2), 1).unwrap();
        let m = differential_matrix(&src, &dst, Splitting::Proper).unwrap();
        assert_eq!(m.shape(), (dst.len(), 1));
        assert!(m.is_zero());
    }

    #[test]
    fn truncated_reports_treat_missing_slices_as_zero() {
        let req = |degree, edge_range, allow_truncation| CohomologyRequest {
            d: 0,
            sector: Sector::GenusBoundaries { g: 1, n: 1 },
            grading: Grading::Degree,
            degree,
            edge_range,
            allow_truncation,
            splitting: Splitting::Proper,
        };
        assert!(matches!(cohomology(&req(4, (2, 3), false)), Err(Error::Truncated(_))));
        let r = cohomology(&req(4, (2, 3), true)).unwrap();
        assert!(!r.exact);
        assert_eq!(r.dim, 0);
        assert_eq!(cohomology(&req(3, (2, 4), false)).unwrap().dim, 1);
    }
}
