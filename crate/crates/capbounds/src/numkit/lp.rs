//! Exact rational linear programming: dense two-phase simplex with Bland's
//! rule. All arithmetic is over arbitrary-precision rationals, so returned
//! optima and witnesses are exact and termination is guaranteed.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// Variables are implicitly non-negative; rows relate `coeffs · x` to `rhs`.
#[derive(Clone, Debug)]
pub struct LpConstraint {
    pub coeffs: Vec<Rat>,
    pub rel: Relation,
    pub rhs: Rat,
}

#[derive(Clone, Debug)]
pub struct LpProblem {
    pub maximize: bool,
    pub objective: Vec<Rat>,
    pub constraints: Vec<LpConstraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rat, x: Vec<Rat> },
    Infeasible,
    Unbounded,
}

/// Solve the program exactly. The returned assignment satisfies every
/// constraint exactly (checked in debug builds).
pub fn solve(p: &LpProblem) -> Result<LpOutcome> {
    let nvars = p.objective.len();
    for (i, c) in p.constraints.iter().enumerate() {
        if c.coeffs.len() != nvars {
            return Err(Error::Dimension(format!(
                "constraint {i} has {} coefficients, expected {nvars}",
                c.coeffs.len()
            )));
        }
    }
    let mut tab = Tableau::build(p);
    if !tab.artificials.is_empty() {
        tab.install_phase1_objective();
        tab.pivot_to_optimum();
        if !tab.objective_value().is_zero() {
            return Ok(LpOutcome::Infeasible);
        }
        tab.drive_out_artificials();
    }
    tab.install_phase2_objective(p);
    if !tab.pivot_to_optimum() {
        return Ok(LpOutcome::Unbounded);
    }
    let x = tab.primal_solution(nvars);
    let value: Rat = x.iter().zip(&p.objective).map(|(xi, ci)| xi * ci).sum();
    if !check_feasible(p, &x) {
        return Err(Error::Numeric(
            "internal: simplex returned an infeasible optimum".into(),
        ));
    }
    Ok(LpOutcome::Optimal { value, x })
}

fn check_feasible(p: &LpProblem, x: &[Rat]) -> bool {
    x.iter().all(|v| !v.is_negative())
        && p.constraints.iter().all(|c| {
            let lhs: Rat = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            match c.rel {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            }
        })
}

/// Dense simplex tableau. Column layout: original variables, then slack and
/// surplus columns, then artificials. Row 0..m are constraints (rhs ≥ 0
/// after normalization); the objective row is stored separately.
struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    ncols: usize,
    artificials: Vec<usize>,
    obj: Vec<Rat>,
    obj_value: Rat,
}

impl Tableau {
    fn build(p: &LpProblem) -> Tableau {
        let nvars = p.objective.len();
        let m = p.constraints.len();
        let mut nslack = 0;
        for c in &p.constraints {
            // A flipped Ge becomes Le and vice versa; count after normalize.
            if c.rel != Relation::Eq {
                nslack += 1;
            }
        }
        let ncols_wo_art = nvars + nslack;
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
        let mut rhs: Vec<Rat> = Vec::with_capacity(m);
        let mut basis = vec![usize::MAX; m];
        let mut artificials = Vec::new();
        let mut slack_at = nvars;
        let mut art_cols = 0;
        // First pass to know artificial count: Eq rows and rows whose slack
        // enters with -1 need artificials.
        let mut needs_art = vec![false; m];
        for (i, c) in p.constraints.iter().enumerate() {
            let flip = c.rhs.is_negative();
            let rel = effective_rel(c.rel, flip);
            needs_art[i] = !matches!(rel, Relation::Le);
            if needs_art[i] {
                art_cols += 1;
            }
        }
        let ncols = ncols_wo_art + art_cols;
        let mut art_at = ncols_wo_art;
        for (i, c) in p.constraints.iter().enumerate() {
            let flip = c.rhs.is_negative();
            let rel = effective_rel(c.rel, flip);
            let mut row = vec![Rat::zero(); ncols];
            for (j, a) in c.coeffs.iter().enumerate() {
                row[j] = if flip { -a.clone() } else { a.clone() };
            }
            let b = if flip { -c.rhs.clone() } else { c.rhs.clone() };
            match rel {
                Relation::Le => {
                    row[slack_at] = Rat::from_integer(1.into());
                    basis[i] = slack_at;
                    slack_at += 1;
                }
                Relation::Ge => {
                    row[slack_at] = Rat::from_integer((-1).into());
                    slack_at += 1;
                    row[art_at] = Rat::from_integer(1.into());
                    basis[i] = art_at;
                    artificials.push(art_at);
                    art_at += 1;
                }
                Relation::Eq => {
                    row[art_at] = Rat::from_integer(1.into());
                    basis[i] = art_at;
                    artificials.push(art_at);
                    art_at += 1;
                }
            }
            rows.push(row);
            rhs.push(b);
        }
        Tableau {
            rows,
            rhs,
            basis,
            ncols,
            artificials,
            obj: vec![Rat::zero(); ncols],
            obj_value: Rat::zero(),
        }
    }

    /// Phase-1 objective: maximize -(sum of artificials), expressed in terms
    /// of non-basic variables by pricing out the basic artificials.
    fn install_phase1_objective(&mut self) {
        let mut obj = vec![Rat::zero(); self.ncols];
        for &a in &self.artificials {
            obj[a] = Rat::from_integer((-1).into());
        }
        self.obj = obj;
        self.obj_value = Rat::zero();
        for i in 0..self.rows.len() {
            let b = self.basis[i];
            if !self.obj[b].is_zero() {
                let coef = self.obj[b].clone();
                for j in 0..self.ncols {
                    let t = &coef * &self.rows[i][j];
                    self.obj[j] -= t;
                }
                self.obj_value += &coef * &self.rhs[i];
            }
        }
    }

    fn install_phase2_objective(&mut self, p: &LpProblem) {
        let mut obj = vec![Rat::zero(); self.ncols];
        for (j, c) in p.objective.iter().enumerate() {
            obj[j] = if p.maximize { c.clone() } else { -c.clone() };
        }
        // Artificial columns are forbidden from re-entering.
        self.obj = obj;
        self.obj_value = Rat::zero();
        for i in 0..self.rows.len() {
            let b = self.basis[i];
            if !self.obj[b].is_zero() {
                let coef = self.obj[b].clone();
                for j in 0..self.ncols {
                    let t = &coef * &self.rows[i][j];
                    self.obj[j] -= t;
                }
                self.obj_value += &coef * &self.rhs[i];
            }
        }
    }

    fn objective_value(&self) -> Rat {
        self.obj_value.clone()
    }

    fn is_artificial(&self, col: usize) -> bool {
        self.artificials.binary_search(&col).is_ok()
    }

    /// Bland's rule pivoting until optimal. Returns false on unboundedness.
    fn pivot_to_optimum(&mut self) -> bool {
        loop {
            // Entering: lowest-index non-artificial column with positive
            // reduced cost (artificial columns never re-enter).
            let entering =
                (0..self.ncols).find(|&j| !self.is_artificial(j) && self.obj[j].is_positive());
            let Some(e) = entering else { return true };
            // Leaving: minimum ratio, Bland tie-break on basis variable.
            let mut leave: Option<usize> = None;
            let mut best_ratio: Option<Rat> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][e].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][e];
                    let better = match &best_ratio {
                        None => true,
                        Some(r) => {
                            ratio < *r
                                || (ratio == *r
                                    && self.basis[i] < self.basis[leave.unwrap()])
                        }
                    };
                    if better {
                        best_ratio = Some(ratio);
                        leave = Some(i);
                    }
                }
            }
            let Some(l) = leave else { return false };
            self.pivot(l, e);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = {
            let p = &self.rows[row][col];
            assert!(!p.is_zero());
            Rat::from_integer(1.into()) / p
        };
        for j in 0..self.ncols {
            self.rows[row][j] *= &inv;
        }
        self.rhs[row] *= &inv;
        for i in 0..self.rows.len() {
            if i != row && !self.rows[i][col].is_zero() {
                let f = self.rows[i][col].clone();
                for j in 0..self.ncols {
                    let t = &f * &self.rows[row][j];
                    self.rows[i][j] -= t;
                }
                let t = &f * &self.rhs[row];
                self.rhs[i] -= t;
            }
        }
        if !self.obj[col].is_zero() {
            let f = self.obj[col].clone();
            for j in 0..self.ncols {
                let t = &f * &self.rows[row][j];
                self.obj[j] -= t;
            }
            self.obj_value += &f * &self.rhs[row];
        }
        self.basis[row] = col;
    }

    /// After a zero-value phase 1, pivot basic artificials out on any
    /// nonzero non-artificial column; rows with none are redundant and
    /// harmless (the artificial stays basic at level zero).
    fn drive_out_artificials(&mut self) {
        for i in 0..self.rows.len() {
            if self.is_artificial(self.basis[i]) {
                debug_assert!(self.rhs[i].is_zero());
                if let Some(c) =
                    (0..self.ncols).find(|&j| !self.is_artificial(j) && !self.rows[i][j].is_zero())
                {
                    self.pivot(i, c);
                }
            }
        }
    }

    fn primal_solution(&self, nvars: usize) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); nvars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < nvars {
                x[b] = self.rhs[i].clone();
            }
        }
        x
    }
}

fn effective_rel(rel: Relation, flipped: bool) -> Relation {
    match (rel, flipped) {
        (Relation::Le, false) | (Relation::Ge, true) => Relation::Le,
        (Relation::Ge, false) | (Relation::Le, true) => Relation::Ge,
        (Relation::Eq, _) => Relation::Eq,
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::mat::Mat;
    use crate::scalar::{rat, rat_int};

    fn c(v: &[i64], rel: Relation, rhs: i64) -> LpConstraint {
        LpConstraint {
            coeffs: v.iter().map(|&x| rat_int(x)).collect(),
            rel,
            rhs: rat_int(rhs),
        }
    }

    #[test]
    fn single_bound() {
        let p = LpProblem {
            maximize: true,
            objective: vec![rat_int(1)],
            constraints: vec![c(&[1], Relation::Le, 1)],
        };
        assert_eq!(
            solve(&p).unwrap(),
            LpOutcome::Optimal { value: rat_int(1), x: vec![rat_int(1)] }
        );
    }

    #[test]
    fn infeasible_system() {
        let p = LpProblem {
            maximize: true,
            objective: vec![rat_int(0)],
            constraints: vec![c(&[1], Relation::Ge, 1), c(&[1], Relation::Le, 0)],
        };
        assert_eq!(solve(&p).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let p = LpProblem {
            maximize: true,
            objective: vec![rat_int(1)],
            constraints: vec![c(&[-1], Relation::Le, 1)],
        };
        assert_eq!(solve(&p).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn c5_cover_lp_value() {
        // min y0+..+y4 s.t. each vertex of C5 covered by its two incident
        // edge cliques. Optimum 5/2, also confirmed by vertex enumeration.
        let mut constraints = Vec::new();
        for v in 0..5usize {
            let mut coeffs = vec![rat_int(0); 5];
            // Edge cliques in order (0,1),(1,2),(2,3),(3,4),(0,4):
            // vertex v lies in edges v-1 and v (mod 5).
            coeffs[v] = rat_int(1);
            coeffs[(v + 4) % 5] = rat_int(1);
            constraints.push(LpConstraint { coeffs, rel: Relation::Ge, rhs: rat_int(1) });
        }
        let p = LpProblem { maximize: false, objective: vec![rat_int(1); 5], constraints };
        let LpOutcome::Optimal { value, .. } = solve(&p).unwrap() else {
            panic!("expected optimum")
        };
        assert_eq!(value, rat(5, 2));
        assert_eq!(brute_force_optimum(&p).unwrap(), rat(5, 2));
    }

    /// Independent oracle: enumerate candidate basic solutions by choosing
    /// `nvars` tight constraints among rows and non-negativity bounds,
    /// solving the square rational system, and keeping the feasible best.
    pub(crate) fn brute_force_optimum(p: &LpProblem) -> Option<Rat> {
        let n = p.objective.len();
        let mut rows: Vec<(Vec<Rat>, Rat)> = p
            .constraints
            .iter()
            .map(|c| (c.coeffs.clone(), c.rhs.clone()))
            .collect();
        for j in 0..n {
            let mut e = vec![rat_int(0); n];
            e[j] = rat_int(1);
            rows.push((e, rat_int(0)));
        }
        let idx: Vec<usize> = (0..rows.len()).collect();
        let mut best: Option<Rat> = None;
        for combo in combinations(&idx, n) {
            let a = Mat::from_fn(n, n, |i, j| rows[combo[i]].0[j].clone());
            let b: Vec<Rat> = combo.iter().map(|&i| rows[i].1.clone()).collect();
            let Ok(x) = a.solve(&b) else { continue };
            if !check_feasible(p, &x) {
                continue;
            }
            let v: Rat = x.iter().zip(&p.objective).map(|(xi, ci)| xi * ci).sum();
            best = Some(match best {
                None => v,
                Some(b) if p.maximize && v > b => v,
                Some(b) if !p.maximize && v < b => v,
                Some(b) => b,
            });
        }
        best
    }

    fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
        fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..items.len() {
                cur.push(items[i]);
                rec(items, k, i + 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(items, k, 0, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn matches_brute_force_on_small_programs() {
        // Deterministic battery of small LPs with mixed relations.
        let cases = vec![
            LpProblem {
                maximize: true,
                objective: vec![rat_int(3), rat_int(2)],
                constraints: vec![
                    c(&[1, 1], Relation::Le, 4),
                    c(&[1, 3], Relation::Le, 6),
                    c(&[1, 0], Relation::Ge, 1),
                ],
            },
            LpProblem {
                maximize: false,
                objective: vec![rat_int(2), rat_int(1), rat_int(4)],
                constraints: vec![
                    c(&[1, 1, 1], Relation::Ge, 3),
                    c(&[0, 1, 2], Relation::Ge, 2),
                    c(&[1, 0, 0], Relation::Le, 5),
                ],
            },
            LpProblem {
                maximize: true,
                objective: vec![rat_int(1), rat_int(1)],
                constraints: vec![
                    c(&[2, 1], Relation::Eq, 4),
                    c(&[1, 3], Relation::Le, 9),
                ],
            },
            LpProblem {
                maximize: false,
                objective: vec![rat_int(5), rat_int(4), rat_int(3), rat_int(7)],
                constraints: vec![
                    c(&[1, 1, 0, 1], Relation::Ge, 2),
                    c(&[0, 1, 1, 0], Relation::Ge, 1),
                    c(&[1, 0, 1, 1], Relation::Ge, 2),
                    c(&[1, 1, 1, 1], Relation::Le, 10),
                ],
            },
        ];
        for p in &cases {
            let LpOutcome::Optimal { value, .. } = solve(p).unwrap() else {
                panic!("expected optimum")
            };
            assert_eq!(value, brute_force_optimum(p).unwrap());
        }
    }

    #[test]
    fn degenerate_cycling_guard() {
        // Classic degenerate example; Bland's rule must terminate.
        let p = LpProblem {
            maximize: true,
            objective: vec![rat(3, 4), rat_int(-150), rat(1, 50), rat_int(-6)],
            constraints: vec![
                LpConstraint {
                    coeffs: vec![rat(1, 4), rat_int(-60), rat(-1, 25), rat_int(9)],
                    rel: Relation::Le,
                    rhs: rat_int(0),
                },
                LpConstraint {
                    coeffs: vec![rat(1, 2), rat_int(-90), rat(-1, 50), rat_int(3)],
                    rel: Relation::Le,
                    rhs: rat_int(0),
                },
                LpConstraint {
                    coeffs: vec![rat_int(0), rat_int(0), rat_int(1), rat_int(0)],
                    rel: Relation::Le,
                    rhs: rat_int(1),
                },
            ],
        };
        let LpOutcome::Optimal { value, .. } = solve(&p).unwrap() else {
            panic!("expected optimum")
        };
        assert_eq!(value, rat(1, 20));
    }
}
