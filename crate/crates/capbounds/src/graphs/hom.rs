//! Exhaustive homomorphism and isomorphism search at tiny scale.

use super::Graph;
use crate::error::{Error, Result};

/// Vertex-count cap for the exhaustive searches.
pub const HOM_SEARCH_LIMIT: usize = 8;

/// Witness of a graph homomorphism G → H: an edge-preserving vertex map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCert {
    pub map: Vec<usize>,
}

impl HomCert {
    pub fn validate(&self, g: &Graph, h: &Graph) -> Result<()> {
        if self.map.len() != g.n() {
            return Err(Error::Certificate("homomorphism map length mismatch".into()));
        }
        if self.map.iter().any(|&v| v >= h.n()) {
            return Err(Error::Certificate("homomorphism image out of range".into()));
        }
        for (u, v) in g.edges() {
            if !h.has_edge(self.map[u], self.map[v]) {
                return Err(Error::Certificate(format!(
                    "edge ({u},{v}) maps to non-edge ({},{})",
                    self.map[u], self.map[v]
                )));
            }
        }
        Ok(())
    }
}

/// Search for a homomorphism G → H by backtracking; returns the
/// lexicographically least witness, or `None` definitively.
pub fn exists_homomorphism(g: &Graph, h: &Graph) -> Result<Option<HomCert>> {
    if g.n() > HOM_SEARCH_LIMIT || h.n() > HOM_SEARCH_LIMIT {
        return Err(Error::Budget {
            what: "exists_homomorphism",
            detail: format!("{} and {} vertices exceed limit {HOM_SEARCH_LIMIT}", g.n(), h.n()),
        });
    }
    if g.n() == 0 {
        return Ok(Some(HomCert { map: Vec::new() }));
    }
    if h.n() == 0 {
        return Ok(None);
    }
    let mut map = vec![usize::MAX; g.n()];
    if assign(g, h, &mut map, 0) {
        let cert = HomCert { map };
        cert.validate(g, h)?;
        Ok(Some(cert))
    } else {
        Ok(None)
    }
}

fn assign(g: &Graph, h: &Graph, map: &mut [usize], v: usize) -> bool {
    if v == g.n() {
        return true;
    }
    'targets: for t in 0..h.n() {
        for u in g.neighbors(v).iter() {
            if u < v && !h.has_edge(map[u], t) {
                continue 'targets;
            }
        }
        map[v] = t;
        if assign(g, h, map, v + 1) {
            return true;
        }
        map[v] = usize::MAX;
    }
    false
}

/// Exhaustive-relabeling isomorphism test for graphs of at most ~10
/// vertices. Backtracks on degree-compatible assignments.
pub fn is_isomorphic_small(g: &Graph, h: &Graph) -> Result<bool> {
    const LIMIT: usize = 10;
    if g.n() > LIMIT || h.n() > LIMIT {
        return Err(Error::Budget {
            what: "is_isomorphic_small",
            detail: format!("limit {LIMIT} vertices"),
        });
    }
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let mut dg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    let mut map = vec![usize::MAX; g.n()];
    let mut used = vec![false; h.n()];
    Ok(iso_assign(g, h, &mut map, &mut used, 0))
}

fn iso_assign(g: &Graph, h: &Graph, map: &mut [usize], used: &mut [bool], v: usize) -> bool {
    if v == g.n() {
        return true;
    }
    'targets: for t in 0..h.n() {
        if used[t] || g.degree(v) != h.degree(t) {
            continue;
        }
        for u in 0..v {
            if g.has_edge(u, v) != h.has_edge(map[u], t) {
                continue 'targets;
            }
        }
        map[v] = t;
        used[t] = true;
        if iso_assign(g, h, map, used, v + 1) {
            return true;
        }
        used[t] = false;
        map[v] = usize::MAX;
    }
    false
}
