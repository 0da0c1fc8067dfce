//! Exact independence number and clique cover number.
//!
//! `alpha_exact` is a branch-and-bound over vertex subsets: branch on the
//! highest-degree remaining vertex (ties to the lowest index), bound by a
//! greedy clique partition of the remaining vertices. `clique_cover_exact`
//! computes the chromatic number of the complement by iterative-deepening
//! backtracking. Both return witnesses and never return a wrong answer: if a
//! budget is exceeded they error instead.

use super::Graph;
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Default vertex budget for the exact solvers.
pub const DEFAULT_ALPHA_BUDGET: usize = 128;

/// Maximum independent set with witness. `budget` caps the vertex count.
pub fn alpha_exact(g: &Graph, budget: usize) -> Result<(usize, Vec<usize>)> {
    if g.n() > budget {
        return Err(Error::Budget {
            what: "alpha_exact",
            detail: format!("graph has {} vertices, budget {budget}", g.n()),
        });
    }
    let n = g.n();
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let mut best = BitSet::new(n);
    let mut current = BitSet::new(n);
    let remaining = BitSet::full(n);
    branch(g, &remaining, &mut current, &mut best);
    let witness = best.to_vec();
    debug_assert!(g.is_independent(&best));
    Ok((witness.len(), witness))
}

fn branch(g: &Graph, remaining: &BitSet, current: &mut BitSet, best: &mut BitSet) {
    let cur_len = current.len();
    if remaining.is_empty() {
        if cur_len > best.len() {
            *best = current.clone();
        }
        return;
    }
    if cur_len + clique_partition_bound(g, remaining) <= best.len() {
        return;
    }
    // Highest remaining degree, lowest index on ties.
    let mut pick = usize::MAX;
    let mut pick_deg = usize::MAX;
    for v in remaining.iter() {
        let d = g.neighbors(v).intersection(remaining).len();
        if pick == usize::MAX || d > pick_deg {
            pick = v;
            pick_deg = d;
        }
    }
    // Include pick.
    let mut incl = remaining.clone();
    incl.remove(pick);
    incl.difference_with(g.neighbors(pick));
    current.insert(pick);
    branch(g, &incl, current, best);
    current.remove(pick);
    // Exclude pick.
    let mut excl = remaining.clone();
    excl.remove(pick);
    branch(g, &excl, current, best);
}

/// Greedy partition of `set` into cliques; the part count upper-bounds the
/// independence number of the induced subgraph.
fn clique_partition_bound(g: &Graph, set: &BitSet) -> usize {
    let mut cliques: Vec<BitSet> = Vec::new();
    for v in set.iter() {
        let mut placed = false;
        for c in cliques.iter_mut() {
            if c.is_subset(g.neighbors(v)) {
                c.insert(v);
                placed = true;
                break;
            }
        }
        if !placed {
            cliques.push(BitSet::from_indices(set.capacity(), &[v]));
        }
    }
    cliques.len()
}

/// Minimum clique cover with a witness partition into cliques, computed as
/// the chromatic number of the complement.
pub fn clique_cover_exact(g: &Graph, budget: usize) -> Result<(usize, Vec<Vec<usize>>)> {
    if g.n() > budget {
        return Err(Error::Budget {
            what: "clique_cover_exact",
            detail: format!("graph has {} vertices, budget {budget}", g.n()),
        });
    }
    if g.n() == 0 {
        return Ok((0, Vec::new()));
    }
    let h = g.complement();
    let n = h.n();
    // Bounds: chromatic number of h lies between its clique number (an
    // independent set of g... a clique of h) and the greedy color count.
    let lb = alpha_exact(g, budget)?.0.max(1);
    let (ub, greedy_cols) = greedy_coloring(&h);
    let mut best_cols = greedy_cols;
    let mut best = ub;
    let mut k = lb;
    while k < best {
        let mut colors = vec![usize::MAX; n];
        if color_with(&h, &mut colors, 0, k) {
            best = k;
            best_cols = colors;
            break;
        }
        k += 1;
    }
    let mut classes = vec![Vec::new(); best];
    for (v, &c) in best_cols.iter().enumerate() {
        classes[c].push(v);
    }
    classes.retain(|c| !c.is_empty());
    debug_assert!(classes
        .iter()
        .all(|c| g.is_clique(&BitSet::from_indices(n, c))));
    Ok((classes.len(), classes))
}

fn greedy_coloring(h: &Graph) -> (usize, Vec<usize>) {
    let n = h.n();
    let mut colors = vec![usize::MAX; n];
    let mut used = 0;
    for v in 0..n {
        let mut taken = vec![false; used + 1];
        for u in h.neighbors(v).iter() {
            if colors[u] != usize::MAX && colors[u] < taken.len() {
                taken[colors[u]] = true;
            }
        }
        let c = (0..).find(|&c| c >= taken.len() || !taken[c]).unwrap();
        colors[v] = c;
        used = used.max(c + 1);
    }
    (used, colors)
}

fn color_with(h: &Graph, colors: &mut [usize], v: usize, k: usize) -> bool {
    if v == h.n() {
        return true;
    }
    let mut max_used = 0;
    for c in colors[..v].iter() {
        max_used = max_used.max(c + 1);
    }
    // Symmetry break: vertex v may only open one fresh color.
    let limit = k.min(max_used + 1);
    'colors: for c in 0..limit {
        for u in h.neighbors(v).iter() {
            if u < v && colors[u] == c {
                continue 'colors;
            }
        }
        colors[v] = c;
        if color_with(h, colors, v + 1, k) {
            return true;
        }
        colors[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate, Family};

    /// Independent oracle: enumerate all independent sets recursively.
    pub(crate) fn brute_alpha(g: &Graph) -> usize {
        fn rec(g: &Graph, remaining: &BitSet, size: usize, best: &mut usize) {
            *best = (*best).max(size);
            let Some(v) = remaining.first() else { return };
            let mut incl = remaining.clone();
            incl.remove(v);
            incl.difference_with(g.neighbors(v));
            rec(g, &incl, size + 1, best);
            let mut excl = remaining.clone();
            excl.remove(v);
            rec(g, &excl, size, best);
        }
        let mut best = 0;
        rec(g, &BitSet::full(g.n()), 0, &mut best);
        best
    }

    #[test]
    fn alpha_of_complete() {
        for d in 1..6 {
            let g = generate(&Family::Complete(d)).unwrap();
            assert_eq!(alpha_exact(&g, 128).unwrap().0, 1);
        }
    }

    #[test]
    fn alpha_c5_brute_forced() {
        let g = generate(&Family::Cycle(5)).unwrap();
        assert_eq!(brute_alpha(&g), 2);
        let (a, witness) = alpha_exact(&g, 128).unwrap();
        assert_eq!(a, 2);
        assert!(g.is_independent(&BitSet::from_indices(5, &witness)));
        assert_eq!(witness.len(), 2);
    }

    #[test]
    fn alpha_c5_squared() {
        let g = generate(&Family::Cycle(5)).unwrap().strong_power(2);
        let (a, witness) = alpha_exact(&g, 128).unwrap();
        assert_eq!(a, 5);
        assert_eq!(brute_alpha(&g), 5);
        assert!(g.is_independent(&BitSet::from_indices(25, &witness)));
    }

    #[test]
    fn alpha_of_empty() {
        let g = generate(&Family::Empty(4)).unwrap();
        let (a, w) = alpha_exact(&g, 128).unwrap();
        assert_eq!(a, 4);
        assert_eq!(w.len(), 4);
    }

    #[test]
    fn alpha_budget_error() {
        let g = generate(&Family::Empty(10)).unwrap();
        assert!(matches!(alpha_exact(&g, 5), Err(Error::Budget { .. })));
    }

    #[test]
    fn alpha_additive_under_union() {
        let g = generate(&Family::Cycle(5)).unwrap();
        let h = generate(&Family::Petersen).unwrap();
        let u = g.disjoint_union(&h);
        assert_eq!(
            alpha_exact(&u, 128).unwrap().0,
            alpha_exact(&g, 128).unwrap().0 + alpha_exact(&h, 128).unwrap().0
        );
    }

    #[test]
    fn union_of_triangles() {
        let c3 = generate(&Family::Cycle(3)).unwrap();
        let u = c3.disjoint_union(&c3);
        assert_eq!(u.n(), 6);
        assert_eq!(u.edge_count(), 6);
        assert_eq!(brute_alpha(&u), 2);
        assert_eq!(alpha_exact(&u, 128).unwrap().0, 2);
    }

    #[test]
    fn cover_of_complete_and_empty() {
        let kd = generate(&Family::Complete(4)).unwrap();
        assert_eq!(clique_cover_exact(&kd, 128).unwrap().0, 1);
        let ed = generate(&Family::Empty(4)).unwrap();
        assert_eq!(clique_cover_exact(&ed, 128).unwrap().0, 4);
    }

    #[test]
    fn cover_c5_exhaustive() {
        // χ̄(C5) = χ(C̄5) = 3: no proper 2-coloring of C5's complement
        // exists (exhaustive check), and a 3-cover does.
        let g = generate(&Family::Cycle(5)).unwrap();
        let h = g.complement();
        let mut two_colorable = false;
        'outer: for mask in 0..1u32 << 5 {
            for (u, v) in h.edges() {
                if (mask >> u & 1) == (mask >> v & 1) {
                    continue 'outer;
                }
            }
            two_colorable = true;
            break;
        }
        assert!(!two_colorable);
        let (k, classes) = clique_cover_exact(&g, 128).unwrap();
        assert_eq!(k, 3);
        let covered: usize = classes.iter().map(|c| c.len()).sum();
        assert_eq!(covered, 5);
    }

    #[test]
    fn petersen_alpha() {
        let p = generate(&Family::Petersen).unwrap();
        assert_eq!(alpha_exact(&p, 128).unwrap().0, 4);
    }

    #[test]
    fn product_witness_is_independent() {
        // α(G ⊠ H) ≥ α(G)·α(H): the product of witnesses is independent.
        let g = generate(&Family::Cycle(5)).unwrap();
        let h = generate(&Family::Cycle(7)).unwrap();
        let (_, wg) = alpha_exact(&g, 128).unwrap();
        let (_, wh) = alpha_exact(&h, 128).unwrap();
        let p = g.strong_product(&h);
        let hn = h.n();
        let combined: Vec<usize> = wg
            .iter()
            .flat_map(|&a| wh.iter().map(move |&b| a * hn + b))
            .collect();
        assert!(p.is_independent(&BitSet::from_indices(p.n(), &combined)));
        assert!(alpha_exact(&p, 128).unwrap().0 >= wg.len() * wh.len());
    }
}
