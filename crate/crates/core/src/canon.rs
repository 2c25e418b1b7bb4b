//! Canonical labelling, automorphisms and orientation signs.
//!
//! A labelled generator of the complex of parity `d` carries an ordering of
//! its vertices, edges and boundaries and a direction on every edge. Vertices
//! and boundaries have degree `d`, edges degree `1 - d`; reversing an edge
//! costs `(-1)^d`. The *standard orientation* of a graph orders vertices and
//! boundaries by their smallest half-edge, edges by their smallest half-edge,
//! and directs each edge away from its smallest half-edge.
//!
//! The canonical representative has edges `{2e, 2e+1}` and the
//! lexicographically smallest `sigma` among the relabellings produced by a
//! breadth-first walk from each possible starting half-edge. Every
//! structure-preserving relabelling of a connected map is determined by the
//! image of one half-edge, so these `2E` walks cover all of them.

use std::cmp::Ordering;

use crate::perm;
use crate::ribbon::{standard_iota, RibbonGraph};

const NONE: u8 = u8::MAX;

/// An ordering of vertices, edges and boundaries of a graph, each named by a
/// half-edge it contains. Edges are named by their tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub vertices: Vec<u8>,
    pub edges: Vec<u8>,
    pub boundaries: Vec<u8>,
}

/// Per-half-edge indices of the standard orientation.
pub(crate) struct StandardIds {
    vertex_of: Vec<u8>,
    boundary_of: Vec<u8>,
    edge_of: Vec<u8>,
    edge_min: Vec<u8>,
}

impl StandardIds {
    pub(crate) fn new(g: &RibbonGraph) -> Self {
        let n = g.num_half_edges();
        let (vertex_of, _) = perm::cycle_ids(g.sigma());
        let (boundary_of, _) = perm::cycle_ids(&g.boundary_permutation());
        let mut edge_of = vec![NONE; n];
        let mut edge_min = vec![0u8; n];
        let mut next = 0u8;
        for h in 0..n {
            if edge_of[h] == NONE {
                let t = g.iota()[h] as usize;
                edge_of[h] = next;
                edge_of[t] = next;
                edge_min[h] = h as u8;
                edge_min[t] = h as u8;
                next += 1;
            }
        }
        StandardIds { vertex_of, boundary_of, edge_of, edge_min }
    }

    /// Sign of `o` relative to the standard orientation, in parity `d`.
    pub(crate) fn sign(&self, o: &Orientation, d: u8) -> i8 {
        let vseq: Vec<u8> = o.vertices.iter().map(|&h| self.vertex_of[h as usize]).collect();
        let eseq: Vec<u8> = o.edges.iter().map(|&h| self.edge_of[h as usize]).collect();
        let bseq: Vec<u8> = o.boundaries.iter().map(|&h| self.boundary_of[h as usize]).collect();
        let flips = o.edges.iter().filter(|&&h| self.edge_min[h as usize] != h).count();
        let odd = if d & 1 == 1 {
            (perm::is_odd(&vseq) as usize + perm::is_odd(&bseq) as usize + flips) % 2 == 1
        } else {
            perm::is_odd(&eseq)
        };
        if odd {
            -1
        } else {
            1
        }
    }
}

/// The standard orientation of `g`.
pub fn standard_orientation(g: &RibbonGraph) -> Orientation {
    let firsts = |cycles: Vec<Vec<u8>>| cycles.into_iter().map(|c| c[0]).collect::<Vec<_>>();
    let edges = (0..g.num_half_edges() as u8).filter(|&h| g.iota()[h as usize] > h).collect();
    Orientation { vertices: firsts(g.vertices()), edges, boundaries: firsts(g.boundary_cycles()) }
}

/// Sign of an arbitrary orientation of `g` relative to its standard one.
pub fn orientation_sign(g: &RibbonGraph, o: &Orientation, d: u8) -> i8 {
    StandardIds::new(g).sign(o, d)
}

impl Orientation {
    pub fn transport(&self, label: &[u8]) -> Orientation {
        let map = |v: &Vec<u8>| v.iter().map(|&h| label[h as usize]).collect();
        Orientation { vertices: map(&self.vertices), edges: map(&self.edges), boundaries: map(&self.boundaries) }
    }
}

/// Result of the canonical labelling search.
#[derive(Clone, Debug)]
pub struct Canonical {
    /// Canonical representative (edges `{2e, 2e+1}`).
    pub graph: RibbonGraph,
    /// All relabellings (old → new) that produce the representative; the
    /// first is the chosen one. Their number is the automorphism count.
    pub labels: Vec<Vec<u8>>,
}

enum Walk {
    Better(Vec<u8>, Vec<u8>),
    Equal(Vec<u8>),
    Worse,
}

fn walk_from(g: &RibbonGraph, start: usize, best: Option<&[u8]>) -> Walk {
    let n = g.num_half_edges();
    let sigma = g.sigma();
    let iota = g.iota();
    let mut label = vec![NONE; n];
    let mut order: Vec<u8> = Vec::with_capacity(n);
    let mut code = vec![0u8; n];
    let assign = |h: usize, label: &mut Vec<u8>, order: &mut Vec<u8>| {
        let next = order.len() as u8;
        label[h] = next;
        order.push(h as u8);
        let t = iota[h] as usize;
        label[t] = next + 1;
        order.push(t as u8);
    };
    assign(start, &mut label, &mut order);
    let mut state = if best.is_some() { Ordering::Equal } else { Ordering::Less };
    for i in 0..n {
        let h = order[i] as usize;
        let x = sigma[h] as usize;
        if label[x] == NONE {
            assign(x, &mut label, &mut order);
        }
        let c = label[x];
        code[i] = c;
        if state == Ordering::Equal {
            match c.cmp(&best.unwrap()[i]) {
                Ordering::Less => state = Ordering::Less,
                Ordering::Greater => return Walk::Worse,
                Ordering::Equal => {}
            }
        }
    }
    match state {
        Ordering::Equal => Walk::Equal(label),
        _ => Walk::Better(code, label),
    }
}

/// Canonical labelling search over all starting half-edges, pruning walks as
/// soon as their partial code exceeds the best one found.
pub fn canonicalize(g: &RibbonGraph) -> Canonical {
    let n = g.num_half_edges();
    let mut best: Option<Vec<u8>> = None;
    let mut labels: Vec<Vec<u8>> = Vec::new();
    for start in 0..n {
        match walk_from(g, start, best.as_deref()) {
            Walk::Better(code, label) => {
                best = Some(code);
                labels.clear();
                labels.push(label);
            }
            Walk::Equal(label) => labels.push(label),
            Walk::Worse => {}
        }
    }
    let sigma = best.expect("graph has at least one half-edge");
    let graph = RibbonGraph::from_parts_unchecked(sigma, standard_iota(n));
    Canonical { graph, labels }
}

/// All automorphisms of `g` as half-edge permutations commuting with
/// `sigma` and `iota`. The identity comes first.
pub fn automorphisms(g: &RibbonGraph) -> Vec<Vec<u8>> {
    let canon = canonicalize(g);
    let inv0 = perm::inverse(&canon.labels[0]);
    let mut auts: Vec<Vec<u8>> = canon.labels.iter().map(|l| perm::compose(&inv0, l)).collect();
    auts.sort_by_key(|a| a.iter().enumerate().any(|(i, &x)| i != x as usize));
    auts
}

/// Canonical representative with orientation data for the complex of
/// parity `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedClass {
    pub graph: RibbonGraph,
    pub parity: u8,
    pub is_zero: bool,
    /// `[G, std(G)] = sign_to_canonical · [canonical, std(canonical)]`.
    /// Always `+1` for zero classes.
    pub sign_to_canonical: i8,
}

impl Canonical {
    /// Orientation data in parity `d`: the sign of the chosen relabelling and
    /// whether some automorphism reverses orientation.
    pub fn orient(&self, source: &RibbonGraph, d: u8) -> OrientedClass {
        let std = standard_orientation(source);
        let ids = StandardIds::new(&self.graph);
        let signs = self.labels.iter().map(|l| ids.sign(&std.transport(l), d));
        let mut first = 0i8;
        let mut is_zero = false;
        for (i, s) in signs.enumerate() {
            if i == 0 {
                first = s;
            } else if s != first {
                is_zero = true;
                break;
            }
        }
        OrientedClass {
            graph: self.graph.clone(),
            parity: d & 1,
            is_zero,
            sign_to_canonical: if is_zero { 1 } else { first },
        }
    }
}

pub fn canonical_form(g: &RibbonGraph, d: u8) -> OrientedClass {
    canonicalize(g).orient(g, d)
}

/// Sign of an automorphism acting on the standard orientation of `g`.
pub fn automorphism_sign(g: &RibbonGraph, aut: &[u8], d: u8) -> i8 {
    let std = standard_orientation(g);
    orientation_sign(g, &std.transport(aut), d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn commutes(g: &RibbonGraph, p: &[u8]) -> bool {
        perm::compose(p, g.sigma()) == perm::compose(g.sigma(), p)
            && perm::compose(p, g.iota()) == perm::compose(g.iota(), p)
    }

    /// All permutations of `0..n`, for brute-force checks on tiny graphs.
    fn all_perms(n: usize) -> Vec<Vec<u8>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, (n - 1) as u8);
                out.push(q);
            }
        }
        out
    }

    fn brute_automorphisms(g: &RibbonGraph) -> usize {
        all_perms(g.num_half_edges()).iter().filter(|p| commutes(g, p)).count()
    }

    fn figure_eight() -> RibbonGraph {
        RibbonGraph::from_cycles(2, &[vec![0, 1, 2, 3]], &[vec![0, 1], vec![2, 3]]).unwrap()
    }

    fn crossed() -> RibbonGraph {
        RibbonGraph::from_cycles(2, &[vec![0, 1, 2, 3]], &[vec![0, 2], vec![1, 3]]).unwrap()
    }

    #[test]
    fn automorphism_counts_match_brute_force() {
        for g in [RibbonGraph::tadpole(), RibbonGraph::bar(), figure_eight(), crossed(), RibbonGraph::bivalent_cycle(3)]
        {
            let auts = automorphisms(&g);
            assert_eq!(auts.len(), brute_automorphisms(&g), "{g:?}");
            assert!(auts.iter().all(|a| commutes(&g, a)));
            assert_eq!(auts[0], (0..g.num_half_edges() as u8).collect::<Vec<_>>());
        }
        assert_eq!(automorphisms(&RibbonGraph::tadpole()).len(), 2);
        assert_eq!(automorphisms(&RibbonGraph::bar()).len(), 2);
    }

    #[test]
    fn asymmetric_graph_has_trivial_group() {
        // A hair on the crossed graph kills its rotations.
        let g = RibbonGraph::from_cycles(3, &[vec![0, 1, 2, 3, 4], vec![5]], &[vec![0, 2], vec![1, 3], vec![4, 5]])
            .unwrap();
        assert_eq!(brute_automorphisms(&g), 1);
        assert_eq!(automorphisms(&g).len(), 1);
    }

    #[test]
    fn canonical_form_is_idempotent() {
        for g in [RibbonGraph::tadpole(), figure_eight(), crossed(), RibbonGraph::bivalent_cycle(4)] {
            let c = canonical_form(&g, 1);
            let again = canonical_form(&c.graph, 1);
            assert_eq!(again.graph, c.graph);
            if !c.is_zero {
                assert_eq!(again.sign_to_canonical, 1);
            }
        }
    }

    #[test]
    fn zero_classes() {
        assert!(canonical_form(&figure_eight(), 1).is_zero);
        assert!(canonical_form(&figure_eight(), 0).is_zero);
        for d in 0..2 {
            assert!(!canonical_form(&RibbonGraph::tadpole(), d).is_zero);
            assert!(canonical_form(&crossed(), d).is_zero);
        }
    }

    #[test]
    fn tadpole_automorphism_signs() {
        let g = RibbonGraph::tadpole();
        for d in 0..2 {
            for a in automorphisms(&g) {
                assert_eq!(automorphism_sign(&g, &a, d), 1);
            }
        }
    }

    #[test]
    fn isomorphic_inputs_share_representative() {
        let a = crossed();
        let b = a.relabel(&[2, 3, 0, 1]);
        assert_eq!(canonicalize(&a).graph, canonicalize(&b).graph);
        assert_ne!(canonicalize(&figure_eight()).graph, canonicalize(&a).graph);
    }
}
