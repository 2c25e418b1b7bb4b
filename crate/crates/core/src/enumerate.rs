//! Isomorphism classes of connected ribbon graphs with a given shape.
//!
//! Every connected graph with `E >= 2` edges arises from a smaller one either
//! by inserting an edge between two corners (remove a non-bridge edge) or by
//! attaching a univalent vertex at a corner (remove a leaf of a tree). The
//! enumeration grows classes that way from the tadpole and the bar graph and
//! deduplicates by canonical representative.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonicalize;
use crate::error::{Error, Result};
use crate::ribbon::{RibbonGraph, MAX_EDGES};

/// Which slice of graphs a basis spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Selector {
    Shape { vertices: i64, edges: i64 },
    Sector { genus: i64, boundaries: i64, edges: i64 },
}

impl Selector {
    pub fn shape(vertices: i64, edges: i64) -> Self {
        Selector::Shape { vertices, edges }
    }

    pub fn sector(genus: i64, boundaries: i64, edges: i64) -> Self {
        Selector::Sector { genus, boundaries, edges }
    }

    /// `(V, E)` forced by the selector; sector selectors give
    /// `V = E - n + 2 - 2g`.
    pub fn vertices_edges(&self) -> Result<(usize, usize)> {
        let (v, e) = match *self {
            Selector::Shape { vertices, edges } => (vertices, edges),
            Selector::Sector { genus, boundaries, edges } => {
                if genus < 0 || boundaries < 1 {
                    return Err(Error::InvalidSelector(format!("(g, n) = ({genus}, {boundaries})")));
                }
                (edges - boundaries + 2 - 2 * genus, edges)
            }
        };
        if v <= 0 || e <= 0 {
            return Err(Error::InvalidSelector(format!("V = {v}, E = {e} (both must be positive)")));
        }
        if e as usize > MAX_EDGES {
            return Err(Error::InvalidSelector(format!("E = {e} too large")));
        }
        Ok((v as usize, e as usize))
    }

    /// The selector one step up the differential: one more vertex and edge.
    pub fn next(&self) -> Selector {
        match *self {
            Selector::Shape { vertices, edges } => Selector::Shape { vertices: vertices + 1, edges: edges + 1 },
            Selector::Sector { genus, boundaries, edges } => Selector::Sector { genus, boundaries, edges: edges + 1 },
        }
    }

    pub fn sector_filter(&self) -> Option<(usize, usize)> {
        match *self {
            Selector::Sector { genus, boundaries, .. } => Some((genus as usize, boundaries as usize)),
            Selector::Shape { .. } => None,
        }
    }

    pub fn matches(&self, g: &RibbonGraph) -> bool {
        let Ok((v, e)) = self.vertices_edges() else { return false };
        g.num_vertices() == v && g.num_edges() == e && self.sector_filter().is_none_or(|s| g.sector() == s)
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Shape { vertices, edges } => write!(f, "V={vertices},E={edges}"),
            Selector::Sector { genus, boundaries, edges } => write!(f, "g={genus},n={boundaries},E={edges}"),
        }
    }
}

/// Ordered basis of nonzero oriented classes for one selector and parity.
#[derive(Clone, Debug)]
pub struct SectorBasis {
    pub parity: u8,
    pub selector: Selector,
    classes: Vec<RibbonGraph>,
    index: HashMap<RibbonGraph, usize>,
}

impl SectorBasis {
    pub fn from_classes(parity: u8, selector: Selector, classes: Vec<RibbonGraph>) -> Self {
        let index = classes.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        SectorBasis { parity, selector, classes, index }
    }

    pub fn classes(&self) -> &[RibbonGraph] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn position(&self, g: &RibbonGraph) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Stable identifier used in matrix headers and cache keys.
    pub fn id(&self) -> String {
        format!("d={};{}", self.parity, self.selector)
    }
}

/// All isomorphism classes with `v` vertices and `e` edges (zero classes
/// included), as canonical representatives in lexicographic order.
pub fn enumerate_all(v: usize, e: usize) -> Result<Arc<Vec<RibbonGraph>>> {
    if v == 0 || e == 0 {
        return Err(Error::InvalidSelector(format!("V = {v}, E = {e} (both must be positive)")));
    }
    if e > MAX_EDGES {
        return Err(Error::InvalidSelector(format!("E = {e} too large")));
    }
    Ok(classes(v, e))
}

type Memo = Mutex<HashMap<(usize, usize), Arc<Vec<RibbonGraph>>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Drops all memoized enumerations (used to compare fresh runs).
pub fn clear_memo() {
    memo().lock().unwrap().clear();
}

fn classes(v: usize, e: usize) -> Arc<Vec<RibbonGraph>> {
    if let Some(hit) = memo().lock().unwrap().get(&(v, e)) {
        return hit.clone();
    }
    let result = Arc::new(grow(v, e));
    memo().lock().unwrap().insert((v, e), result.clone());
    result
}

fn grow(v: usize, e: usize) -> Vec<RibbonGraph> {
    if v == 0 || e == 0 || v > e + 1 {
        return Vec::new();
    }
    if e == 1 {
        return match v {
            1 => vec![canonicalize(&RibbonGraph::tadpole()).graph],
            2 => vec![canonicalize(&RibbonGraph::bar()).graph],
            _ => Vec::new(),
        };
    }
    let with_edge = classes(v, e - 1);
    let with_leaf = classes(v - 1, e - 1);
    let mut out: Vec<RibbonGraph> = with_edge
        .par_iter()
        .flat_map_iter(|g| insert_edge_everywhere(g).into_iter())
        .chain(with_leaf.par_iter().flat_map_iter(|g| attach_leaf_everywhere(g).into_iter()))
        .map(|g| canonicalize(&g).graph)
        .collect();
    out.par_sort_unstable();
    out.dedup();
    out
}

/// Every graph obtained by adding one edge between two corners.
pub(crate) fn insert_edge_everywhere(g: &RibbonGraph) -> Vec<RibbonGraph> {
    let n = g.num_half_edges();
    let (x, y) = (n as u8, n as u8 + 1);
    let mut iota = g.iota().to_vec();
    iota.extend([y, x]);
    let mut out = Vec::with_capacity(n * (n + 1));
    for c1 in 0..n {
        let mut s1 = g.sigma().to_vec();
        s1.push(s1[c1]);
        s1[c1] = x;
        for c2 in 0..=n {
            let mut s2 = s1.clone();
            s2.push(s2[c2]);
            s2[c2] = y;
            out.push(RibbonGraph::from_parts_unchecked(s2, iota.clone()));
        }
    }
    out
}

/// Every graph obtained by attaching a univalent vertex at a corner.
pub(crate) fn attach_leaf_everywhere(g: &RibbonGraph) -> Vec<RibbonGraph> {
    let n = g.num_half_edges();
    let (x, y) = (n as u8, n as u8 + 1);
    let mut iota = g.iota().to_vec();
    iota.extend([y, x]);
    (0..n)
        .map(|c| {
            let mut s = g.sigma().to_vec();
            s.push(s[c]);
            s[c] = x;
            s.push(y);
            RibbonGraph::from_parts_unchecked(s, iota.clone())
        })
        .collect()
}

/// Nonzero oriented classes for `selector` in parity `d`, deterministic order.
pub fn enumerate(selector: Selector, d: u8) -> Result<SectorBasis> {
    let (v, e) = selector.vertices_edges()?;
    let filter = selector.sector_filter();
    let all = classes(v, e);
    let mut kept: Vec<RibbonGraph> = all
        .par_iter()
        .filter(|g| filter.is_none_or(|s| g.sector() == s))
        .filter(|g| !canonicalize(g).orient(g, d).is_zero)
        .cloned()
        .collect();
    kept.sort_unstable();
    Ok(SectorBasis::from_classes(d & 1, selector, kept))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm;

    /// Brute force: all `sigma` with `v` cycles on `2e` points and standard
    /// `iota`, connected, up to isomorphism.
    fn brute(v: usize, e: usize) -> Vec<RibbonGraph> {
        let n = 2 * e;
        let mut out = std::collections::BTreeSet::new();
        let mut p: Vec<u8> = (0..n as u8).collect();
        permute_all(&mut p, 0, &mut |s| {
            if perm::cycle_ids(s).1 == v {
                if let Ok(g) = RibbonGraph::with_standard_iota(s.to_vec()) {
                    out.insert(canonicalize(&g).graph);
                }
            }
        });
        out.into_iter().collect()
    }

    fn permute_all(p: &mut Vec<u8>, k: usize, f: &mut dyn FnMut(&[u8])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute_all(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn growth_matches_brute_force() {
        for e in 1..=3 {
            for v in 1..=e + 1 {
                assert_eq!(*enumerate_all(v, e).unwrap(), brute(v, e), "V={v} E={e}");
            }
        }
    }

    #[test]
    fn one_vertex_two_edges_has_two_classes() {
        assert_eq!(enumerate_all(1, 2).unwrap().len(), 2);
    }

    #[test]
    fn one_vertex_one_edge_is_the_tadpole() {
        let b = enumerate(Selector::shape(1, 1), 1).unwrap();
        assert_eq!(b.classes(), &[canonicalize(&RibbonGraph::tadpole()).graph]);
    }

    #[test]
    fn rejects_empty_selectors() {
        assert!(enumerate(Selector::shape(1, 0), 1).is_err());
        assert!(enumerate(Selector::shape(0, 3), 1).is_err());
        assert!(enumerate(Selector::sector(1, 1, 1), 0).is_err());
    }

    #[test]
    fn sector_selector_forces_vertex_count() {
        assert_eq!(Selector::sector(1, 1, 4).vertices_edges().unwrap(), (3, 4));
        let b = enumerate(Selector::sector(1, 1, 3), 0).unwrap();
        assert!(b.classes().iter().all(|g| g.sector() == (1, 1) && g.num_vertices() == 2));
    }
}
