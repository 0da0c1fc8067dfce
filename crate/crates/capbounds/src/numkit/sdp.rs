//! Small dense semidefinite programming:
//! maximize C•X subject to A_i•X = b_i and X ⪰ 0,
//! solved by a primal-dual path-following method (HKM direction with a
//! Mehrotra-style predictor-corrector). The contract is the duality gap and
//! feasibility residuals, not the algorithm; problems here are small
//! (dimension ≤ 128) and well-posed, with strictly feasible primal/dual
//! pairs.

use crate::error::Error;
use crate::mat::Mat;

/// Sparse symmetric matrix: entries on the upper triangle (i ≤ j), each
/// standing for both (i,j) and (j,i).
#[derive(Clone, Debug)]
pub struct SparseSym {
    pub n: usize,
    pub entries: Vec<(usize, usize, f64)>,
}

impl SparseSym {
    pub fn new(n: usize, mut entries: Vec<(usize, usize, f64)>) -> Self {
        for e in entries.iter_mut() {
            if e.0 > e.1 {
                std::mem::swap(&mut e.0, &mut e.1);
            }
        }
        SparseSym { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        SparseSym { n, entries: (0..n).map(|i| (i, i, 1.0)).collect() }
    }

    /// Both orientations of each off-diagonal entry.
    fn expanded(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::with_capacity(self.entries.len() * 2);
        for &(i, j, v) in &self.entries {
            out.push((i, j, v));
            if i != j {
                out.push((j, i, v));
            }
        }
        out
    }

    pub fn to_dense(&self) -> Mat<f64> {
        let mut m = Mat::zeros(self.n, self.n);
        for (i, j, v) in self.expanded() {
            m[(i, j)] += v;
        }
        m
    }

    pub fn dot(&self, dense: &Mat<f64>) -> f64 {
        self.expanded().iter().map(|&(i, j, v)| v * dense[(i, j)]).sum()
    }

    fn add_scaled_into(&self, dense: &mut Mat<f64>, scale: f64) {
        for (i, j, v) in self.expanded() {
            dense[(i, j)] += v * scale;
        }
    }
}

#[derive(Clone, Debug)]
pub struct SdpProblem {
    pub n: usize,
    /// Objective, maximized.
    pub c: SparseSym,
    /// Equality constraints `constraints[i] • X = b[i]`.
    pub constraints: Vec<SparseSym>,
    pub b: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct SdpSolution {
    pub x: Mat<f64>,
    pub y: Vec<f64>,
    pub z: Mat<f64>,
    pub primal_value: f64,
    pub dual_value: f64,
    /// |primal − dual|.
    pub gap: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub iterations: usize,
}

#[derive(Debug)]
pub struct SdpError {
    pub message: String,
    pub best: Option<Box<SdpSolution>>,
}

impl std::fmt::Display for SdpError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.best {
            Some(s) => write!(
                f,
                "{} (best iterate: primal {:.9}, dual {:.9}, gap {:.3e})",
                self.message, s.primal_value, s.dual_value, s.gap
            ),
            None => write!(f, "{}", self.message),
        }
    }
}

impl From<SdpError> for Error {
    fn from(e: SdpError) -> Error {
        Error::Numeric(e.to_string())
    }
}

#[derive(Clone, Debug)]
pub struct SdpOptions {
    pub max_iterations: usize,
    /// Normalized primal/dual feasibility tolerance. Feasibility residuals
    /// drop fast in the interior-point iteration, so this is kept tight:
    /// callers promise absolute constraint residuals around 1e-9.
    pub feas_tol: f64,
    /// Relative duality-gap tolerance; the slow axis on degenerate
    /// instances, and well below what reported values require.
    pub gap_tol: f64,
}

impl Default for SdpOptions {
    fn default() -> Self {
        SdpOptions { max_iterations: 120, feas_tol: 5e-10, gap_tol: 2e-9 }
    }
}

pub const SDP_DIM_LIMIT: usize = 128;

pub fn solve(p: &SdpProblem, opts: &SdpOptions) -> Result<SdpSolution, SdpError> {
    let n = p.n;
    let m = p.constraints.len();
    if n == 0 || m == 0 {
        return Err(SdpError { message: "sdp: empty problem".into(), best: None });
    }
    if n > SDP_DIM_LIMIT {
        return Err(SdpError {
            message: format!("sdp: dimension {n} exceeds limit {SDP_DIM_LIMIT}"),
            best: None,
        });
    }
    if p.b.len() != m {
        return Err(SdpError { message: "sdp: b length mismatch".into(), best: None });
    }
    let c_dense = p.c.to_dense();
    let b_scale = 1.0 + p.b.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    let c_scale = 1.0 + c_dense.max_abs();

    let xi = p.b.iter().fold(1.0f64, |a, &v| a.max(v.abs()));
    let eta = (1.0 + c_dense.max_abs()) * (n as f64).sqrt();
    let mut x: Mat<f64> = Mat::identity(n).scale(xi);
    let mut z: Mat<f64> = Mat::identity(n).scale(eta);
    let mut y = vec![0.0; m];

    let mut best: Option<SdpSolution> = None;
    let mut best_score = f64::INFINITY;
    let mut since_best = 0usize;
    let exp: Vec<Vec<(usize, usize, f64)>> =
        p.constraints.iter().map(|a| a.expanded()).collect();

    for iter in 0..opts.max_iterations {
        let pobj = p.c.dot(&x);
        let dobj: f64 = p.b.iter().zip(&y).map(|(bi, yi)| bi * yi).sum();
        let rp: Vec<f64> = (0..m).map(|i| p.b[i] - p.constraints[i].dot(&x)).collect();
        // Dual residual D = C − A*(y) + Z, want 0.
        let mut d = c_dense.add(&z);
        for i in 0..m {
            p.constraints[i].add_scaled_into(&mut d, -y[i]);
        }
        let prim_res = rp.iter().fold(0.0f64, |a, &v| a.max(v.abs())) / b_scale;
        let dual_res = d.max_abs() / c_scale;
        let gap_rel = (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs());
        let score = (prim_res / opts.feas_tol)
            .max(dual_res / opts.feas_tol)
            .max(gap_rel / opts.gap_tol);

        let current = SdpSolution {
            x: x.clone(),
            y: y.clone(),
            z: z.clone(),
            primal_value: pobj,
            dual_value: dobj,
            gap: (pobj - dobj).abs(),
            primal_residual: prim_res,
            dual_residual: dual_res,
            iterations: iter,
        };
        if score < best_score {
            best_score = score;
            best = Some(current.clone());
            since_best = 0;
        } else {
            since_best += 1;
        }
        if score <= 1.0 {
            return Ok(current);
        }
        // The iteration has hit its numerical floor; stop burning cycles.
        if since_best > 15 {
            break;
        }

        let mu = frob_dot(&x, &z) / n as f64;
        let Some(zi) = z.spd_inverse() else {
            return Err(SdpError {
                message: "sdp: dual iterate lost positive definiteness".into(),
                best: best.map(Box::new),
            });
        };

        // Schur complement M_ij = A_i • (Z⁻¹ A_j X).
        let mut schur = Mat::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                let mut s = 0.0;
                for &(a, bb, v) in &exp[i] {
                    for &(c, dd, w) in &exp[j] {
                        s += v * w * zi[(bb, c)] * x[(dd, a)];
                    }
                }
                schur[(i, j)] = s;
            }
        }

        // Near a degenerate optimal face the Schur complement can become
        // numerically singular; a tiny ridge restores solvability without
        // visibly perturbing the step.
        let solve_schur = |rhs: &[f64]| -> Option<Vec<f64>> {
            if let Ok(dy) = schur.lu_solve(rhs) {
                return Some(dy);
            }
            let scale = (0..m).fold(1.0f64, |a, i| a.max(schur[(i, i)].abs()));
            let mut ridge = 1e-13 * scale;
            for _ in 0..4 {
                let mut reg = schur.clone();
                for i in 0..m {
                    reg[(i, i)] += ridge;
                }
                if let Ok(dy) = reg.lu_solve(rhs) {
                    return Some(dy);
                }
                ridge *= 1e3;
            }
            None
        };

        let u = zi.mul(&d).mul(&x); // Z⁻¹ D X
        let a_dot = |mat: &Mat<f64>| -> Vec<f64> {
            (0..m).map(|i| p.constraints[i].dot(mat)).collect()
        };
        let u_dots = a_dot(&u);

        // Predictor (affine direction, sigma = 0).
        let rhs_aff: Vec<f64> = (0..m).map(|i| u_dots[i] - p.b[i]).collect();
        let Some(dy_aff) = solve_schur(&rhs_aff) else {
            return Err(SdpError {
                message: "sdp: singular Schur complement".into(),
                best: best.map(Box::new),
            });
        };
        let (dx_aff, dz_aff) = recover_directions(p, &zi, &x, &d, &u, &dy_aff, None);
        let ap_aff = max_step(&x, &dx_aff).min(1.0);
        let ad_aff = max_step(&z, &dz_aff).min(1.0);
        let mu_aff = frob_dot(
            &x.add(&dx_aff.scale(ap_aff)),
            &z.add(&dz_aff.scale(ad_aff)),
        ) / n as f64;
        let sigma = (mu_aff / mu).max(0.0).powi(3).clamp(1e-8, 0.9);

        // Corrector.
        let zdd = zi.mul(&dz_aff).mul(&dx_aff); // Z⁻¹ dZ_aff dX_aff
        let zi_dots = a_dot(&zi);
        let zdd_dots = a_dot(&zdd);
        let rhs: Vec<f64> = (0..m)
            .map(|i| sigma * mu * zi_dots[i] - p.b[i] + u_dots[i] - zdd_dots[i])
            .collect();
        let Some(dy) = solve_schur(&rhs) else {
            return Err(SdpError {
                message: "sdp: singular Schur complement".into(),
                best: best.map(Box::new),
            });
        };
        let (dx, dz) = recover_directions(p, &zi, &x, &d, &u, &dy, Some((sigma * mu, &zdd)));

        let tau = 0.98;
        let ap = (tau * max_step(&x, &dx)).min(1.0);
        let ad = (tau * max_step(&z, &dz)).min(1.0);
        x = x.add(&dx.scale(ap)).symmetrize();
        z = z.add(&dz.scale(ad)).symmetrize();
        for i in 0..m {
            y[i] += ad * dy[i];
        }
        if !x.all_finite() || !z.all_finite() {
            return Err(SdpError {
                message: "sdp: iterate diverged to non-finite values".into(),
                best: best.map(Box::new),
            });
        }
    }
    Err(SdpError {
        message: format!("sdp: no convergence within {} iterations", opts.max_iterations),
        best: best.map(Box::new),
    })
}

/// dZ = A*(dy) − D and dX = Z⁻¹R − Z⁻¹A*(dy)X + Z⁻¹DX (symmetrized), where
/// R = −ZX for the predictor and σμI − ZX − dZ_aff dX_aff for the corrector.
fn recover_directions(
    p: &SdpProblem,
    zi: &Mat<f64>,
    x: &Mat<f64>,
    d: &Mat<f64>,
    u: &Mat<f64>,
    dy: &[f64],
    corrector: Option<(f64, &Mat<f64>)>,
) -> (Mat<f64>, Mat<f64>) {
    let n = p.n;
    let mut a_dy = Mat::zeros(n, n);
    for (i, a) in p.constraints.iter().enumerate() {
        a.add_scaled_into(&mut a_dy, dy[i]);
    }
    let dz = a_dy.sub(d);
    // Z⁻¹R part: −X for the predictor, plus σμ Z⁻¹ − Z⁻¹dZ_aff dX_aff for
    // the corrector.
    let mut dx = x.scale(-1.0);
    if let Some((sigma_mu, zdd)) = corrector {
        dx = dx.add(&zi.scale(sigma_mu)).sub(zdd);
    }
    let dx = dx.sub(&zi.mul(&a_dy).mul(x)).add(u).symmetrize();
    (dx, dz)
}

fn frob_dot(a: &Mat<f64>, b: &Mat<f64>) -> f64 {
    a.data().iter().zip(b.data()).map(|(x, y)| x * y).sum()
}

/// Largest step α with M + α dM ⪰ 0, via λ_min(L⁻¹ dM L⁻ᵀ).
fn max_step(m: &Mat<f64>, dm: &Mat<f64>) -> f64 {
    let Some(l) = m.cholesky() else { return 0.0 };
    let linv = lower_tri_inverse(&l);
    let w = linv.mul(dm).mul(&linv.transpose()).symmetrize();
    match super::eig::eig_sym(&w) {
        Ok(spec) => {
            let lmin = spec.values.first().copied().unwrap_or(0.0);
            if lmin >= -1e-14 {
                1e6
            } else {
                -1.0 / lmin
            }
        }
        Err(_) => 0.0,
    }
}

fn lower_tri_inverse(l: &Mat<f64>) -> Mat<f64> {
    let n = l.rows();
    let mut inv = Mat::zeros(n, n);
    for j in 0..n {
        inv[(j, j)] = 1.0 / l[(j, j)];
        for i in j + 1..n {
            let mut s = 0.0;
            for k in j..i {
                s += l[(i, k)] * inv[(k, j)];
            }
            inv[(i, j)] = -s / l[(i, i)];
        }
    }
    inv
}
