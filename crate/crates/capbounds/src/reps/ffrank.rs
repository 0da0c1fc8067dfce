//! Minimum rank of a fitting matrix over a prime field.
//!
//! A fitting matrix for G has nonzero diagonal and zeros at non-adjacent
//! pairs; the minimum rank over GF(p) upper-bounds the independence number.
//! The search factors M = L·R and enumerates only the row matrix L: a rank-r
//! fitting matrix exists iff rows L_g ∈ GF(p)^r can be chosen with
//! L_g ∉ span{L_{g'} : g' non-adjacent to g}. Rows are enumerated in reduced
//! column echelon normal form (one representative per GL(r) orbit), DFS in
//! lexicographic order with incremental span pruning, so results and
//! witnesses are deterministic.

use num_traits::Zero;

use super::{verify_fitting, FittingMatrix, Verdict};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::mat::Mat;
use crate::scalar::Gf;

/// Exhaustive-search limits; beyond them the DFS runs under a node budget
/// and the result is flagged non-optimal if any level was truncated.
pub const FF_EXHAUSTIVE_N: usize = 8;
pub const FF_EXHAUSTIVE_P: u64 = 3;

#[derive(Clone, Debug)]
pub struct FfRankOptions {
    /// DFS node budget per target rank when outside the exhaustive regime.
    pub node_budget: u64,
}

impl Default for FfRankOptions {
    fn default() -> Self {
        FfRankOptions { node_budget: 2_000_000 }
    }
}

#[derive(Clone, Debug)]
pub struct FfRankResult<const P: u64> {
    pub rank: usize,
    pub witness: FittingMatrix<Gf<P>>,
    /// False when some smaller target rank was abandoned on budget, so the
    /// reported rank is only an upper bound.
    pub optimal: bool,
}

pub fn ff_min_rank<const P: u64>(g: &Graph, opts: &FfRankOptions) -> Result<FfRankResult<P>> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Param("minimum rank undefined on the empty graph".into()));
    }
    let exhaustive = n <= FF_EXHAUSTIVE_N && P <= FF_EXHAUSTIVE_P;
    let budget = if exhaustive { u64::MAX } else { opts.node_budget };
    let non_neighbors: Vec<Vec<usize>> = (0..n).map(|v| g.non_neighbors(v).to_vec()).collect();
    let mut truncated = false;
    for r in 1..=n {
        let mut search = Search::<P> {
            non_neighbors: &non_neighbors,
            r,
            rows: Vec::with_capacity(n),
            pivots: 0,
            nodes: 0,
            budget,
        };
        match search.dfs() {
            Step::Found(rows) => {
                let witness = build_witness::<P>(g, &rows, r, &non_neighbors)?;
                let rank = match verify_fitting(g, &witness)? {
                    Verdict::Accept(rank) => rank,
                    Verdict::Reject { reason } => {
                        return Err(Error::Numeric(format!(
                            "internal: constructed fitting matrix rejected: {reason}"
                        )));
                    }
                };
                debug_assert_eq!(rank, r);
                return Ok(FfRankResult { rank, witness, optimal: !truncated });
            }
            Step::Exhausted => {}
            Step::Budget => truncated = true,
        }
    }
    // r = n is always feasible (identity), so reaching here is a bug.
    Err(Error::Numeric("internal: fitting-matrix search failed at full rank".into()))
}

struct Search<'a, const P: u64> {
    non_neighbors: &'a [Vec<usize>],
    r: usize,
    rows: Vec<Vec<Gf<P>>>,
    pivots: usize,
    nodes: u64,
    budget: u64,
}

enum Step<const P: u64> {
    Found(Vec<Vec<Gf<P>>>),
    Exhausted,
    Budget,
}

impl<const P: u64> Search<'_, P> {
    fn dfs(&mut self) -> Step<P> {
        let v = self.rows.len();
        if v == self.non_neighbors.len() {
            return Step::Found(self.rows.clone());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::Budget;
        }
        let mut budget_hit = false;
        // Candidates in canonical order: vectors supported on the pivot
        // prefix (lexicographic), then the fresh pivot e_{pivots}.
        let span_count = pow_u64(P, self.pivots as u32);
        for code in 0..span_count {
            let cand = decode::<P>(code, self.pivots, self.r);
            match self.try_candidate(cand, false) {
                Step::Found(rows) => return Step::Found(rows),
                Step::Budget => budget_hit = true,
                Step::Exhausted => {}
            }
        }
        if self.pivots < self.r {
            let mut cand = vec![Gf::<P>::zero(); self.r];
            cand[self.pivots] = Gf::new(1);
            match self.try_candidate(cand, true) {
                Step::Found(rows) => return Step::Found(rows),
                Step::Budget => budget_hit = true,
                Step::Exhausted => {}
            }
        }
        if budget_hit {
            Step::Budget
        } else {
            Step::Exhausted
        }
    }

    fn try_candidate(&mut self, cand: Vec<Gf<P>>, new_pivot: bool) -> Step<P> {
        let v = self.rows.len();
        self.rows.push(cand);
        if new_pivot {
            self.pivots += 1;
        }
        let ok = self.constraints_hold(v);
        let out = if ok { self.dfs() } else { Step::Exhausted };
        self.rows.pop();
        if new_pivot {
            self.pivots -= 1;
        }
        out
    }

    /// Re-check the span conditions that involve the newly assigned row v:
    /// v's own row must avoid the span of its assigned non-neighbors, and
    /// each assigned non-neighbor j of v must still avoid the span of its
    /// own assigned non-neighbors (which now include v).
    fn constraints_hold(&self, v: usize) -> bool {
        if !self.condition_for(v) {
            return false;
        }
        self.non_neighbors[v]
            .iter()
            .filter(|&&j| j < v)
            .all(|&j| self.condition_for(j))
    }

    fn condition_for(&self, j: usize) -> bool {
        let assigned: Vec<&[Gf<P>]> = self.non_neighbors[j]
            .iter()
            .filter(|&&i| i < self.rows.len())
            .map(|&i| self.rows[i].as_slice())
            .collect();
        !in_span::<P>(&assigned, &self.rows[j])
    }
}

fn pow_u64(base: u64, exp: u32) -> u64 {
    base.saturating_pow(exp)
}

/// Decode a lexicographic code into a vector supported on the first
/// `pivots` coordinates of GF(p)^r; code digit order puts the first
/// coordinate most significant.
fn decode<const P: u64>(mut code: u64, pivots: usize, r: usize) -> Vec<Gf<P>> {
    let mut v = vec![Gf::<P>::zero(); r];
    for i in (0..pivots).rev() {
        v[i] = Gf::new((code % P) as i64);
        code /= P;
    }
    v
}

/// Membership of `target` in the row span, by elimination on a scratch
/// matrix.
fn in_span<const P: u64>(rows: &[&[Gf<P>]], target: &[Gf<P>]) -> bool {
    if rows.is_empty() {
        return target.iter().all(|x| x.is_zero());
    }
    let r = target.len();
    let mut m = Mat::from_fn(rows.len(), r, |i, j| rows[i][j]);
    let mut t = target.to_vec();
    let pivots = m.row_echelon_in_place();
    for (row, &col) in pivots.iter().enumerate() {
        if !t[col].is_zero() {
            let f = t[col];
            for j in 0..r {
                t[j] = t[j] - f * m[(row, j)];
            }
        }
    }
    t.iter().all(|x| x.is_zero())
}

/// Build the witness M = L·R: column j of R is a kernel vector of the
/// non-neighbor rows of j that pairs nonzero with L_j (the first such kernel
/// basis vector, so witnesses are deterministic).
fn build_witness<const P: u64>(
    g: &Graph,
    rows: &[Vec<Gf<P>>],
    r: usize,
    non_neighbors: &[Vec<usize>],
) -> Result<FittingMatrix<Gf<P>>> {
    let n = g.n();
    let l: Mat<Gf<P>> = Mat::from_fn(n, r, |i, j| rows[i][j]);
    let mut rmat: Mat<Gf<P>> = Mat::zeros(r, n);
    for j in 0..n {
        let z = &non_neighbors[j];
        let constraint = Mat::from_fn(z.len(), r, |i, c| l[(z[i], c)]);
        let kernel = constraint.kernel_basis();
        let lj: Vec<Gf<P>> = (0..r).map(|c| l[(j, c)]).collect();
        let mut chosen: Option<Vec<Gf<P>>> = None;
        for k in 0..kernel.cols() {
            let col = kernel.col(k);
            let dot = lj
                .iter()
                .zip(&col)
                .fold(Gf::<P>::zero(), |acc, (a, b)| acc + *a * *b);
            if !dot.is_zero() {
                chosen = Some(col);
                break;
            }
        }
        let col = chosen.ok_or_else(|| {
            Error::Numeric("internal: feasible row matrix lost column witness".into())
        })?;
        for i in 0..r {
            rmat[(i, j)] = col[i];
        }
    }
    Ok(FittingMatrix { mat: l.mul(&rmat) })
}

/// Runtime-dispatched variant for the CLI: p ∈ {2, 3, 5, 7}.
#[derive(Clone, Debug)]
pub enum DynFfResult {
    P2(FfRankResult<2>),
    P3(FfRankResult<3>),
    P5(FfRankResult<5>),
    P7(FfRankResult<7>),
}

impl DynFfResult {
    pub fn rank(&self) -> usize {
        match self {
            DynFfResult::P2(r) => r.rank,
            DynFfResult::P3(r) => r.rank,
            DynFfResult::P5(r) => r.rank,
            DynFfResult::P7(r) => r.rank,
        }
    }

    pub fn optimal(&self) -> bool {
        match self {
            DynFfResult::P2(r) => r.optimal,
            DynFfResult::P3(r) => r.optimal,
            DynFfResult::P5(r) => r.optimal,
            DynFfResult::P7(r) => r.optimal,
        }
    }
}

pub fn ff_min_rank_dyn(g: &Graph, p: u64, opts: &FfRankOptions) -> Result<DynFfResult> {
    match p {
        2 => Ok(DynFfResult::P2(ff_min_rank::<2>(g, opts)?)),
        3 => Ok(DynFfResult::P3(ff_min_rank::<3>(g, opts)?)),
        5 => Ok(DynFfResult::P5(ff_min_rank::<5>(g, opts)?)),
        7 => Ok(DynFfResult::P7(ff_min_rank::<7>(g, opts)?)),
        _ => Err(Error::Param(format!(
            "unsupported field GF({p}): prime fields 2, 3, 5, 7 only"
        ))),
    }
}
