//! Maximal clique enumeration, the fractional clique cover LP, and the
//! d:r-cover extraction that clears denominators of a fractional cover.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Graph;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::numkit::lp::{self, LpConstraint, LpOutcome, LpProblem, Relation};
use crate::Rat;

/// Default cap on the number of maximal cliques the LP will be built over.
pub const DEFAULT_CLIQUE_BUDGET: usize = 20_000;

/// Weighted clique cover: cliques with non-negative rational weights such
/// that every vertex is covered with total weight at least one.
#[derive(Clone, Debug)]
pub struct FractionalCover {
    pub cliques: Vec<BitSet>,
    pub weights: Vec<Rat>,
}

impl FractionalCover {
    pub fn value(&self) -> Rat {
        self.weights.iter().sum()
    }

    /// Check the cover invariants against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.cliques.len() != self.weights.len() {
            return Err(Error::Certificate("cover weight count mismatch".into()));
        }
        for (i, c) in self.cliques.iter().enumerate() {
            if c.capacity() != g.n() || !g.is_clique(c) {
                return Err(Error::Certificate(format!("cover set {i} is not a clique")));
            }
        }
        if self.weights.iter().any(|w| w.is_negative()) {
            return Err(Error::Certificate("negative cover weight".into()));
        }
        for v in 0..g.n() {
            let total: Rat = self
                .cliques
                .iter()
                .zip(&self.weights)
                .filter(|(c, _)| c.contains(v))
                .map(|(_, w)| w.clone())
                .sum();
            if total < Rat::from_integer(1.into()) {
                return Err(Error::Certificate(format!("vertex {v} covered with weight {total} < 1")));
            }
        }
        Ok(())
    }
}

/// All maximal cliques, Bron–Kerbosch with pivoting, deterministic order.
pub fn maximal_cliques(g: &Graph, budget: usize) -> Result<Vec<BitSet>> {
    let n = g.n();
    let mut out = Vec::new();
    let mut r = BitSet::new(n);
    bk(g, &mut r, BitSet::full(n), BitSet::new(n), &mut out, budget)?;
    Ok(out)
}

fn bk(
    g: &Graph,
    r: &mut BitSet,
    mut p: BitSet,
    mut x: BitSet,
    out: &mut Vec<BitSet>,
    budget: usize,
) -> Result<()> {
    if p.is_empty() && x.is_empty() {
        if out.len() >= budget {
            return Err(Error::Budget {
                what: "maximal_cliques",
                detail: format!("more than {budget} maximal cliques"),
            });
        }
        out.push(r.clone());
        return Ok(());
    }
    // Pivot maximizing |P ∩ N(u)|, lowest index on ties.
    let mut pivot = usize::MAX;
    let mut pivot_score = 0usize;
    for u in p.union(&x).iter() {
        let s = p.intersection(g.neighbors(u)).len();
        if pivot == usize::MAX || s > pivot_score {
            pivot = u;
            pivot_score = s;
        }
    }
    let candidates = p.difference(g.neighbors(pivot));
    for v in candidates.iter() {
        r.insert(v);
        bk(
            g,
            r,
            p.intersection(g.neighbors(v)),
            x.intersection(g.neighbors(v)),
            out,
            budget,
        )?;
        r.remove(v);
        p.remove(v);
        x.insert(v);
    }
    Ok(())
}

/// Fractional clique cover number: the exact rational optimum of
/// min Σ y_C subject to Σ_{C∋g} y_C ≥ 1, y ≥ 0 over maximal cliques,
/// with an optimal cover as witness.
pub fn chifrac(g: &Graph, clique_budget: usize) -> Result<(Rat, FractionalCover)> {
    if g.n() == 0 {
        return Ok((Rat::zero(), FractionalCover { cliques: vec![], weights: vec![] }));
    }
    let cliques = maximal_cliques(g, clique_budget)?;
    let m = cliques.len();
    let objective = vec![Rat::from_integer(1.into()); m];
    let mut constraints = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let coeffs: Vec<Rat> = cliques
            .iter()
            .map(|c| Rat::from_integer(i64::from(c.contains(v)).into()))
            .collect();
        constraints.push(LpConstraint { coeffs, rel: Relation::Ge, rhs: Rat::from_integer(1.into()) });
    }
    let problem = LpProblem { maximize: false, objective, constraints };
    match lp::solve(&problem)? {
        LpOutcome::Optimal { value, x } => {
            let mut kept_cliques = Vec::new();
            let mut kept_weights = Vec::new();
            for (c, w) in cliques.into_iter().zip(x) {
                if !w.is_zero() {
                    kept_cliques.push(c);
                    kept_weights.push(w);
                }
            }
            let cover = FractionalCover { cliques: kept_cliques, weights: kept_weights };
            cover.validate(g)?;
            debug_assert_eq!(cover.value(), value);
            Ok((value, cover))
        }
        // Every vertex lies in some maximal clique, so the LP is feasible
        // and bounded; other outcomes indicate a bug.
        other => Err(Error::Numeric(format!("cover LP returned {other:?}"))),
    }
}

/// d:r-cover: each vertex gets an r-subset of `[d]` color slots; vertices
/// non-adjacent in the underlying graph receive disjoint subsets.
#[derive(Clone, Debug)]
pub struct DrCover {
    pub d: usize,
    pub r: usize,
    pub assignment: Vec<BitSet>,
}

impl DrCover {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.d == 0 || self.r == 0 {
            return Err(Error::Certificate("d:r cover needs positive d and r".into()));
        }
        if self.assignment.len() != g.n() {
            return Err(Error::Certificate("d:r cover assignment length mismatch".into()));
        }
        for (v, slots) in self.assignment.iter().enumerate() {
            if slots.capacity() != self.d || slots.len() != self.r {
                return Err(Error::Certificate(format!(
                    "vertex {v} has {} slots, expected {}",
                    slots.len(),
                    self.r
                )));
            }
        }
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if !g.has_edge(u, v) && !self.assignment[u].is_disjoint(&self.assignment[v]) {
                    return Err(Error::Certificate(format!(
                        "non-adjacent vertices {u},{v} share a color slot"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Clear denominators of a feasible fractional cover into a d:r-cover with
/// d/r equal to the cover value. Over-covered vertices drop slots taken from
/// the highest-index cliques first.
pub fn dr_cover_from_fractional(g: &Graph, cover: &FractionalCover) -> Result<DrCover> {
    cover.validate(g)?;
    if g.n() == 0 {
        return Err(Error::Certificate("d:r cover undefined on the empty graph".into()));
    }
    let mut denom_lcm: num_bigint::BigInt = 1.into();
    for w in &cover.weights {
        denom_lcm = denom_lcm.lcm(w.denom());
    }
    let multiplicities: Vec<num_bigint::BigInt> = cover
        .weights
        .iter()
        .map(|w| (w * Rat::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    let r: usize = denom_lcm
        .clone()
        .try_into()
        .map_err(|_| Error::Certificate("cover denominators too large".into()))?;
    let mut offsets = Vec::with_capacity(multiplicities.len());
    let mut total = 0usize;
    for m in &multiplicities {
        offsets.push(total);
        let m: usize = m
            .try_into()
            .map_err(|_| Error::Certificate("cover multiplicity too large".into()))?;
        total += m;
    }
    let d = total;
    let mut assignment = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let mut slots = BitSet::new(d);
        let mut needed = r;
        'cliques: for (k, c) in cover.cliques.iter().enumerate() {
            if !c.contains(v) {
                continue;
            }
            let m: usize = (&multiplicities[k]).try_into().unwrap();
            for s in 0..m {
                if needed == 0 {
                    break 'cliques;
                }
                slots.insert(offsets[k] + s);
                needed -= 1;
            }
        }
        debug_assert_eq!(needed, 0, "feasible cover must supply r slots");
        assignment.push(slots);
    }
    let out = DrCover { d, r, assignment };
    out.validate(g)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate, Family};
    use crate::scalar::{rat, rat_int};

    #[test]
    fn cliques_of_c5_are_edges() {
        let g = generate(&Family::Cycle(5)).unwrap();
        let cl = maximal_cliques(&g, 1000).unwrap();
        assert_eq!(cl.len(), 5);
        assert!(cl.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn chifrac_of_empty_graph() {
        for d in 1..5 {
            let g = generate(&Family::Empty(d)).unwrap();
            let (v, cover) = chifrac(&g, 1000).unwrap();
            assert_eq!(v, rat_int(d as i64));
            assert_eq!(cover.cliques.len(), d);
        }
    }

    #[test]
    fn chifrac_odd_cycles() {
        // 5/2 for C5 and 7/2 for C7, exact.
        let c5 = generate(&Family::Cycle(5)).unwrap();
        assert_eq!(chifrac(&c5, 1000).unwrap().0, rat(5, 2));
        let c7 = generate(&Family::Cycle(7)).unwrap();
        assert_eq!(chifrac(&c7, 1000).unwrap().0, rat(7, 2));
    }

    #[test]
    fn chifrac_additive_under_union() {
        let g = generate(&Family::Cycle(5)).unwrap();
        let h = generate(&Family::Complete(3)).unwrap();
        let u = g.disjoint_union(&h);
        assert_eq!(
            chifrac(&u, 1000).unwrap().0,
            chifrac(&g, 1000).unwrap().0 + chifrac(&h, 1000).unwrap().0
        );
    }

    #[test]
    fn dr_cover_c5() {
        let g = generate(&Family::Cycle(5)).unwrap();
        let (value, cover) = chifrac(&g, 1000).unwrap();
        let dr = dr_cover_from_fractional(&g, &cover).unwrap();
        assert_eq!((dr.d, dr.r), (5, 2));
        assert_eq!(rat_int(dr.d as i64) / rat_int(dr.r as i64), value);
    }

    #[test]
    fn dr_cover_singletons_and_complete() {
        let e3 = generate(&Family::Empty(3)).unwrap();
        let (_, cover) = chifrac(&e3, 1000).unwrap();
        let dr = dr_cover_from_fractional(&e3, &cover).unwrap();
        assert_eq!((dr.d, dr.r), (3, 1));

        let k4 = generate(&Family::Complete(4)).unwrap();
        let (_, cover) = chifrac(&k4, 1000).unwrap();
        let dr = dr_cover_from_fractional(&k4, &cover).unwrap();
        assert_eq!((dr.d, dr.r), (1, 1));
    }

    #[test]
    fn dr_cover_rejects_infeasible() {
        let g = generate(&Family::Cycle(5)).unwrap();
        let bad = FractionalCover {
            cliques: vec![BitSet::from_indices(5, &[0, 1])],
            weights: vec![rat(1, 2)],
        };
        assert!(dr_cover_from_fractional(&g, &bad).is_err());
    }

    #[test]
    fn dr_cover_truncates_overcoverage() {
        // Triangle covered by all three edges at weight 1: coverage 2 per
        // vertex; slots must be truncated to r per vertex, kept valid.
        let g = generate(&Family::Cycle(3)).unwrap();
        let cover = FractionalCover {
            cliques: vec![
                BitSet::from_indices(3, &[0, 1]),
                BitSet::from_indices(3, &[1, 2]),
                BitSet::from_indices(3, &[0, 2]),
            ],
            weights: vec![rat_int(1); 3],
        };
        let dr = dr_cover_from_fractional(&g, &cover).unwrap();
        assert_eq!((dr.d, dr.r), (3, 1));
        dr.validate(&g).unwrap();
    }
}

#[cfg(test)]
mod k0_tests {
    use super::*;
    use crate::graphs::alpha_exact;
    use num_traits::Zero;

    #[test]
    fn empty_vertex_set_conventions() {
        let k0 = Graph::new(0);
        let (value, cover) = chifrac(&k0, 10).unwrap();
        assert!(value.is_zero());
        assert!(cover.cliques.is_empty());
        assert_eq!(alpha_exact(&k0, 10).unwrap().0, 0);
    }
}
