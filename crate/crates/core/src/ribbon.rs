//! Ribbon graphs as permutation pairs on half-edges.
//!
//! Half-edges are the points `0..2E`. The vertex permutation `sigma` lists the
//! cyclic order of half-edges around each vertex; `iota` pairs the two halves
//! of every edge. Boundary components are the cycles of `sigma ∘ iota`
//! (`iota` applied first).

use crate::error::{Error, Result};
use crate::perm;

/// Largest supported number of edges (half-edges must fit in a `u8`).
pub const MAX_EDGES: usize = 120;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RibbonGraph {
    sigma: Vec<u8>,
    iota: Vec<u8>,
}

impl RibbonGraph {
    /// Validates and builds a graph. `iota` must be a fixed-point-free
    /// involution and the pair must act transitively on half-edges.
    pub fn new(sigma: Vec<u8>, iota: Vec<u8>) -> Result<Self> {
        let n = sigma.len();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::Malformed(format!("need a positive even number of half-edges, got {n}")));
        }
        if n / 2 > MAX_EDGES {
            return Err(Error::Malformed(format!("at most {MAX_EDGES} edges supported")));
        }
        if iota.len() != n {
            return Err(Error::Malformed("sigma and iota have different sizes".into()));
        }
        if !perm::is_permutation(&sigma) {
            return Err(Error::Malformed("sigma is not a permutation".into()));
        }
        if !perm::is_permutation(&iota) {
            return Err(Error::Malformed("iota is not a permutation".into()));
        }
        let fixed: Vec<usize> = (0..n).filter(|&h| iota[h] as usize == h).collect();
        if !fixed.is_empty() {
            return Err(Error::IotaFixedPoints(fixed));
        }
        if let Some(h) = (0..n).find(|&h| iota[iota[h] as usize] as usize != h) {
            return Err(Error::NotInvolution(format!("iota(iota({h})) != {h}")));
        }
        let components = count_components(&sigma, &iota);
        if components != 1 {
            return Err(Error::Disconnected(components));
        }
        Ok(RibbonGraph { sigma, iota })
    }

    /// Graph whose edges are `{2e, 2e+1}`.
    pub fn with_standard_iota(sigma: Vec<u8>) -> Result<Self> {
        let iota = standard_iota(sigma.len());
        Self::new(sigma, iota)
    }

    pub(crate) fn from_parts_unchecked(sigma: Vec<u8>, iota: Vec<u8>) -> Self {
        debug_assert!(Self::new(sigma.clone(), iota.clone()).is_ok());
        RibbonGraph { sigma, iota }
    }

    /// Builds a graph from vertex cycles and edge pairs. Points missing from
    /// `sigma_cycles` are univalent vertices.
    pub fn from_cycles(num_edges: usize, sigma_cycles: &[Vec<usize>], iota_pairs: &[Vec<usize>]) -> Result<Self> {
        let n = 2 * num_edges;
        if num_edges == 0 {
            return Err(Error::Malformed("E must be positive".into()));
        }
        let sigma = perm_from_cycles(n, sigma_cycles, "sigma")?;
        let iota = perm_from_cycles(n, iota_pairs, "iota")?;
        let fixed: Vec<usize> = (0..n).filter(|&h| iota[h] as usize == h).collect();
        if !fixed.is_empty() {
            return Err(Error::IotaFixedPoints(fixed));
        }
        if let Some(c) = iota_pairs.iter().find(|c| c.len() > 2) {
            return Err(Error::NotInvolution(format!("iota contains the cycle {c:?}")));
        }
        Self::new(sigma, iota)
    }

    /// The tadpole: one vertex, one loop.
    pub fn tadpole() -> Self {
        RibbonGraph { sigma: vec![1, 0], iota: vec![1, 0] }
    }

    /// Two univalent vertices joined by an edge.
    pub fn bar() -> Self {
        RibbonGraph { sigma: vec![0, 1], iota: vec![1, 0] }
    }

    /// The bivalent cycle with `k` vertices and `k` edges. Edge `i` runs from
    /// vertex `i` (half-edge `2i`) to vertex `i+1` (half-edge `2i+1`).
    pub fn bivalent_cycle(k: usize) -> Self {
        assert!((1..=MAX_EDGES).contains(&k));
        if k == 1 {
            return Self::tadpole();
        }
        let n = 2 * k;
        let mut sigma = vec![0u8; n];
        for i in 0..k {
            let out = 2 * i;
            let inc = (2 * (i + k - 1) + 1) % n;
            sigma[out] = inc as u8;
            sigma[inc] = out as u8;
        }
        RibbonGraph { sigma, iota: standard_iota(n) }
    }

    pub fn sigma(&self) -> &[u8] {
        &self.sigma
    }

    pub fn iota(&self) -> &[u8] {
        &self.iota
    }

    pub fn num_half_edges(&self) -> usize {
        self.sigma.len()
    }

    pub fn num_edges(&self) -> usize {
        self.sigma.len() / 2
    }

    /// Vertex cycles, each starting at its smallest half-edge.
    pub fn vertices(&self) -> Vec<Vec<u8>> {
        perm::cycles(&self.sigma)
    }

    pub fn num_vertices(&self) -> usize {
        perm::cycle_ids(&self.sigma).1
    }

    pub fn valences(&self) -> Vec<usize> {
        self.vertices().iter().map(Vec::len).collect()
    }

    /// The permutation `sigma ∘ iota`.
    pub fn boundary_permutation(&self) -> Vec<u8> {
        perm::compose(&self.sigma, &self.iota)
    }

    pub fn boundary_cycles(&self) -> Vec<Vec<u8>> {
        perm::cycles(&self.boundary_permutation())
    }

    pub fn num_boundaries(&self) -> usize {
        perm::cycle_ids(&self.boundary_permutation()).1
    }

    /// Genus of the thickened surface, from `V - E + B = 2 - 2g`.
    pub fn genus(&self) -> Result<usize> {
        let chi = self.num_vertices() as i64 - self.num_edges() as i64 + self.num_boundaries() as i64;
        let twice = 2 - chi;
        if twice < 0 || twice % 2 != 0 {
            return Err(Error::Corrupted(format!("Euler characteristic {chi} gives no genus")));
        }
        Ok((twice / 2) as usize)
    }

    /// `(genus, number of boundaries)`.
    pub fn sector(&self) -> (usize, usize) {
        (self.genus().expect("validated graph has a genus"), self.num_boundaries())
    }

    /// Degree in the complex of parity `d`: `d(V + B - 2) + (1 - d)E`.
    pub fn degree(&self, d: u8) -> i64 {
        let d = i64::from(d & 1);
        d * (self.num_vertices() as i64 + self.num_boundaries() as i64 - 2) + (1 - d) * self.num_edges() as i64
    }

    pub fn has_standard_iota(&self) -> bool {
        self.iota.iter().enumerate().all(|(h, &x)| x as usize == (h ^ 1))
    }

    /// Relabels half-edges by `label` (old → new).
    pub fn relabel(&self, label: &[u8]) -> RibbonGraph {
        let n = self.sigma.len();
        let mut sigma = vec![0u8; n];
        let mut iota = vec![0u8; n];
        for h in 0..n {
            sigma[label[h] as usize] = label[self.sigma[h] as usize];
            iota[label[h] as usize] = label[self.iota[h] as usize];
        }
        RibbonGraph { sigma, iota }
    }
}

pub(crate) fn standard_iota(n: usize) -> Vec<u8> {
    (0..n).map(|h| (h ^ 1) as u8).collect()
}

fn perm_from_cycles(n: usize, cycles: &[Vec<usize>], name: &str) -> Result<Vec<u8>> {
    let mut p: Vec<u8> = (0..n).map(|h| h as u8).collect();
    let mut seen = vec![false; n];
    for cyc in cycles {
        if cyc.is_empty() {
            return Err(Error::Malformed(format!("empty cycle in {name}")));
        }
        for (i, &h) in cyc.iter().enumerate() {
            if h >= n {
                return Err(Error::Malformed(format!("{name}: half-edge {h} out of range 0..{n}")));
            }
            if seen[h] {
                return Err(Error::Malformed(format!("{name}: half-edge {h} repeated")));
            }
            seen[h] = true;
            p[h] = cyc[(i + 1) % cyc.len()] as u8;
        }
    }
    Ok(p)
}

fn count_components(sigma: &[u8], iota: &[u8]) -> usize {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut components = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(h) = stack.pop() {
            for next in [sigma[h] as usize, iota[h] as usize] {
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;

    fn crossed() -> RibbonGraph {
        RibbonGraph::from_cycles(2, &[vec![0, 1, 2, 3]], &[vec![0, 2], vec![1, 3]]).unwrap()
    }

    #[test]
    fn tadpole_boundaries() {
        let g = RibbonGraph::tadpole();
        assert_eq!(g.boundary_cycles(), vec![vec![0], vec![1]]);
        assert_eq!(g.genus().unwrap(), 0);
    }

    #[test]
    fn bar_boundaries() {
        let g = RibbonGraph::bar();
        assert_eq!(g.boundary_cycles(), vec![vec![0, 1]]);
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.genus().unwrap(), 0);
    }

    #[test]
    fn crossed_is_genus_one() {
        let g = crossed();
        assert_eq!(g.num_boundaries(), 1);
        assert_eq!(g.genus().unwrap(), 1);
    }

    #[test]
    fn degrees() {
        let g1 = RibbonGraph::tadpole();
        assert_eq!(g1.degree(1), 1);
        assert_eq!(g1.degree(0), 1);
        assert_eq!(RibbonGraph::bivalent_cycle(5).degree(0), 5);
    }

    #[test]
    fn bivalent_cycle_shape() {
        for k in 2..=9 {
            let g = RibbonGraph::bivalent_cycle(k);
            assert!(RibbonGraph::new(g.sigma().to_vec(), g.iota().to_vec()).is_ok());
            assert_eq!(g.num_vertices(), k);
            assert_eq!(g.num_boundaries(), 2);
            assert_eq!(g.genus().unwrap(), 0);
            assert!(g.valences().iter().all(|&v| v == 2));
        }
    }

    #[test]
    fn rejects_bad_iota() {
        let err = RibbonGraph::new(vec![1, 0], vec![0, 1]).unwrap_err();
        assert!(matches!(err, Error::IotaFixedPoints(_)));
        let err = RibbonGraph::new(vec![0, 1, 2, 3], vec![1, 2, 3, 0]).unwrap_err();
        assert!(matches!(err, Error::NotInvolution(_)));
    }

    #[test]
    fn rejects_disconnected() {
        let err = RibbonGraph::from_cycles(2, &[vec![0, 1], vec![2, 3]], &[vec![0, 1], vec![2, 3]]).unwrap_err();
        assert_eq!(err, Error::Disconnected(2));
    }

    #[test]
    fn boundary_cycles_cover_all_half_edges() {
        let g = crossed();
        let total: usize = g.boundary_cycles().iter().map(Vec::len).sum();
        assert_eq!(total, g.num_half_edges());
    }
}
