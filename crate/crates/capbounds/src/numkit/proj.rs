//! Symmetric matrices, orthogonal projections, and the projection-lattice
//! operations: meet, join, the rank-nullity trace identity, support-trace
//! comparisons, and epsilon-truncation.
//!
//! Meet and join are computed from orthonormal eigenbases with a fixed
//! spectral cutoff, never by iterating (PQP)^n; the iterated form survives
//! only as a cross-check in tests. Traces are reported normalized (tr(·)/n)
//! so identities read the same in every dimension.

use rand::Rng;

use super::eig::{eig_sym, Spectrum};
use crate::error::{Error, Result};
use crate::mat::Mat;

/// Max tolerated asymmetry before a matrix is rejected as "symmetric".
pub const SYM_TOL: f64 = 1e-12;

/// Default projection validation tolerance.
pub const PROJ_TOL: f64 = 1e-8;

/// Relative spectral cutoff separating rank from null directions.
pub const RANK_CUTOFF: f64 = 1e-8;

/// Real symmetric matrix; symmetry is checked on construction and the
/// entries are exactly symmetrized afterwards.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMat {
    mat: Mat<f64>,
}

impl SymMat {
    pub fn new(mat: Mat<f64>) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::Dimension("symmetric matrix must be square".into()));
        }
        if !mat.all_finite() {
            return Err(Error::Numeric("non-finite entries".into()));
        }
        let defect = mat.sub(&mat.transpose()).max_abs();
        if defect > SYM_TOL * (1.0 + mat.max_abs()) {
            return Err(Error::Numeric(format!("asymmetry {defect} exceeds tolerance")));
        }
        Ok(SymMat { mat: mat.symmetrize() })
    }

    pub fn zeros(n: usize) -> Self {
        SymMat { mat: Mat::zeros(n, n) }
    }

    pub fn identity(n: usize) -> Self {
        SymMat { mat: Mat::identity(n) }
    }

    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    pub fn mat(&self) -> &Mat<f64> {
        &self.mat
    }

    pub fn into_mat(self) -> Mat<f64> {
        self.mat
    }

    pub fn eig(&self) -> Result<Spectrum<f64>> {
        eig_sym(&self.mat)
    }
}

/// Orthogonal projection: symmetric, idempotent, spectrum in {0, 1} within
/// `tol`.
#[derive(Clone, Debug)]
pub struct Projection {
    mat: Mat<f64>,
    tol: f64,
}

impl Projection {
    pub fn new(sym: SymMat, tol: f64) -> Result<Self> {
        let m = sym.mat();
        let sq_defect = m.mul(m).sub(m).max_abs();
        if sq_defect > tol {
            return Err(Error::Certificate(format!(
                "matrix is not idempotent: ‖P²−P‖ = {sq_defect} > {tol}"
            )));
        }
        let spec = eig_sym(m)?;
        for &l in &spec.values {
            if (l - l.round()).abs() > tol || !(l.round() == 0.0 || l.round() == 1.0) {
                return Err(Error::Certificate(format!("projection eigenvalue {l} not in {{0,1}}")));
            }
        }
        Ok(Projection { mat: sym.into_mat(), tol })
    }

    pub fn zero(n: usize) -> Self {
        Projection { mat: Mat::zeros(n, n), tol: PROJ_TOL }
    }

    pub fn identity(n: usize) -> Self {
        Projection { mat: Mat::identity(n), tol: PROJ_TOL }
    }

    /// P = UUᵀ for an orthonormal-column U.
    pub fn from_orthonormal_basis(u: &Mat<f64>) -> Self {
        Projection { mat: u.mul(&u.transpose()), tol: PROJ_TOL }
    }

    /// Projection onto a uniformly random `k`-dimensional subspace.
    pub fn random(rng: &mut impl Rng, n: usize, k: usize) -> Self {
        assert!(k <= n);
        if k == 0 {
            return Projection::zero(n);
        }
        loop {
            let g = Mat::from_fn(n, k, |_, _| standard_normal(rng));
            if let Some(u) = orthonormalize_columns(&g) {
                if u.cols() == k {
                    return Projection::from_orthonormal_basis(&u);
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    pub fn mat(&self) -> &Mat<f64> {
        &self.mat
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace()
    }

    /// Normalized trace tr(P)/n.
    pub fn tau(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            self.trace() / self.n() as f64
        }
    }

    pub fn rank(&self) -> usize {
        self.trace().round() as usize
    }

    pub fn complement(&self) -> Projection {
        let n = self.n();
        Projection { mat: Mat::identity(n).sub(&self.mat), tol: self.tol }
    }

    /// Orthonormal basis of the range (eigenvectors with eigenvalue ≈ 1).
    pub fn range_basis(&self) -> Result<Mat<f64>> {
        let spec = eig_sym(&self.mat)?;
        let cols: Vec<usize> = (0..spec.values.len()).filter(|&i| spec.values[i] > 0.5).collect();
        Ok(spec.vectors.select_cols(&cols))
    }

    /// Loewner comparison: P ≤ Q within tolerance, checked spectrally on
    /// Q − P.
    pub fn loewner_le(&self, other: &Projection, tol: f64) -> Result<bool> {
        let d = other.mat.sub(&self.mat);
        let spec = eig_sym(&d)?;
        Ok(spec.values.first().is_none_or(|&l| l >= -tol))
    }
}

fn standard_normal(rng: &mut impl Rng) -> f64 {
    // Box-Muller; plenty for test-data generation.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Modified Gram-Schmidt with re-orthogonalization; drops dependent columns
/// (relative cutoff). Returns None if every column vanishes.
fn orthonormalize_columns(a: &Mat<f64>) -> Option<Mat<f64>> {
    let n = a.rows();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for j in 0..a.cols() {
        let mut v = a.col(j);
        let orig_norm = norm(&v);
        if orig_norm == 0.0 {
            continue;
        }
        for _ in 0..2 {
            for b in &basis {
                let d = dot(&v, b);
                for i in 0..n {
                    v[i] -= d * b[i];
                }
            }
        }
        let nv = norm(&v);
        if nv > RANK_CUTOFF * orig_norm {
            for x in v.iter_mut() {
                *x /= nv;
            }
            basis.push(v);
        }
    }
    if basis.is_empty() {
        return None;
    }
    Some(Mat::from_fn(n, basis.len(), |i, j| basis[j][i]))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn check_same_dim(p: &Projection, q: &Projection) -> Result<()> {
    if p.n() != q.n() {
        return Err(Error::Dimension(format!(
            "projection dimensions differ: {} vs {}",
            p.n(),
            q.n()
        )));
    }
    Ok(())
}

/// Eigen-split of P + Q: eigenvalue ≈ 2 spans ran(P) ∩ ran(Q), eigenvalue
/// above the cutoff spans ran(P) + ran(Q).
fn sum_spectrum(p: &Projection, q: &Projection) -> Result<Spectrum<f64>> {
    eig_sym(&p.mat.add(&q.mat))
}

/// Projection onto ran(P) ∩ ran(Q).
pub fn meet(p: &Projection, q: &Projection) -> Result<Projection> {
    check_same_dim(p, q)?;
    let spec = sum_spectrum(p, q)?;
    let cols: Vec<usize> = (0..spec.values.len())
        .filter(|&i| spec.values[i] >= 2.0 - RANK_CUTOFF * 2.0)
        .collect();
    Ok(Projection::from_orthonormal_basis(&spec.vectors.select_cols(&cols)))
}

/// Projection onto ran(P) + ran(Q).
pub fn join(p: &Projection, q: &Projection) -> Result<Projection> {
    check_same_dim(p, q)?;
    let spec = sum_spectrum(p, q)?;
    let cols: Vec<usize> = (0..spec.values.len())
        .filter(|&i| spec.values[i] > RANK_CUTOFF * 2.0)
        .collect();
    Ok(Projection::from_orthonormal_basis(&spec.vectors.select_cols(&cols)))
}

/// Trace form of the rank-nullity identity.
#[derive(Clone, Debug)]
pub struct RankNullityReport {
    pub tau_p: f64,
    pub tau_q: f64,
    pub tau_join: f64,
    pub tau_meet: f64,
    /// |τ(P) + τ(Q) − τ(P∨Q) − τ(P∧Q)|; an identity, so this is pure
    /// floating-point noise and must stay ≤ 1e−6.
    pub residual: f64,
}

pub fn rank_nullity_check(p: &Projection, q: &Projection) -> Result<RankNullityReport> {
    check_same_dim(p, q)?;
    let j = join(p, q)?;
    let m = meet(p, q)?;
    let (tau_p, tau_q, tau_join, tau_meet) = (p.tau(), q.tau(), j.tau(), m.tau());
    Ok(RankNullityReport {
        tau_p,
        tau_q,
        tau_join,
        tau_meet,
        residual: (tau_p + tau_q - tau_join - tau_meet).abs(),
    })
}

/// Support-trace comparison: τ of the projection onto ran(QP) against
/// τ(P) − τ(P ∧ (I−Q)), plus the domination τ(Y) ≤ τ(Q).
#[derive(Clone, Debug)]
pub struct SupportTraceReport {
    /// τ(Y) where Y projects onto ran(QP); equals rank(QP)/n.
    pub tau_support: f64,
    /// τ(P ∧ (I − Q)).
    pub tau_meet_complement: f64,
    /// |τ(Y) − (τ(P) − τ(P∧(I−Q)))|.
    pub identity_residual: f64,
    /// τ(Q) − τ(Y); non-negative up to noise.
    pub domination_margin: f64,
}

pub fn support_trace(p: &Projection, q: &Projection) -> Result<SupportTraceReport> {
    check_same_dim(p, q)?;
    let n = p.n();
    let qp = q.mat.mul(&p.mat);
    let tau_support = if n == 0 {
        0.0
    } else {
        range_rank(&qp)? as f64 / n as f64
    };
    let meet_c = meet(p, &q.complement())?;
    let identity_residual = (tau_support - (p.tau() - meet_c.tau())).abs();
    let report = SupportTraceReport {
        tau_support,
        tau_meet_complement: meet_c.tau(),
        identity_residual,
        domination_margin: q.tau() - tau_support,
    };
    if report.domination_margin < -1e-9 {
        return Err(Error::ChainViolation(format!(
            "support trace exceeded τ(Q): margin {}",
            report.domination_margin
        )));
    }
    Ok(report)
}

/// Rank of an arbitrary matrix at the relative singular-value cutoff,
/// via the symmetric embedding [[0, M], [Mᵀ, 0]] whose spectrum is ±σ_i.
/// Working on singular values directly keeps the noise floor at machine
/// epsilon instead of its square root.
fn range_rank(m: &Mat<f64>) -> Result<usize> {
    let (r, c) = (m.rows(), m.cols());
    if r == 0 || c == 0 {
        return Ok(0);
    }
    let mut h = Mat::zeros(r + c, r + c);
    for i in 0..r {
        for j in 0..c {
            h[(i, r + j)] = m[(i, j)];
            h[(r + j, i)] = m[(i, j)];
        }
    }
    let spec = eig_sym(&h)?;
    let smax = spec.values.iter().fold(0.0f64, |a, &l| a.max(l.abs()));
    if smax == 0.0 {
        return Ok(0);
    }
    Ok(spec.values.iter().filter(|&&l| l > RANK_CUTOFF * smax).count())
}

/// Result of epsilon-truncating P against Q.
#[derive(Clone, Debug)]
pub struct EpsTruncation {
    pub p_eps: Projection,
    /// Normalized trace lost: τ(P − P_ε) ≤ eps.
    pub trace_lost: f64,
    /// Operator norm ‖P_ε (I − Q)‖₂, strictly below one.
    pub norm: f64,
    /// Reported strict-contraction margin 1 − ‖P_ε(I−Q)‖₂ > 0.
    pub margin: f64,
    /// Power index used to pick the spectral cut.
    pub n0: u32,
    /// Spectral cut: P_ε discards the spectrum of P(I−Q)P above 1 − delta.
    pub delta: f64,
}

const N0_CAP: u32 = 1 << 24;

/// Shrink P slightly so that it meets ran(Q)ᶜ at a strictly acute angle:
/// P_ε ≤ P, τ(P − P_ε) ≤ eps, and ‖P_ε(I−Q)‖ < 1. Requires the meet
/// P ∧ (I−Q) to vanish.
pub fn eps_truncation(p: &Projection, q: &Projection, eps: f64) -> Result<EpsTruncation> {
    check_same_dim(p, q)?;
    if !(eps > 0.0) {
        return Err(Error::Param(format!("eps must be positive, got {eps}")));
    }
    let n = p.n() as f64;
    let obstruction = meet(p, &q.complement())?;
    if obstruction.rank() > 0 {
        return Err(Error::Certificate(format!(
            "eps_truncation precondition failed: P ∧ (I−Q) has rank {}",
            obstruction.rank()
        )));
    }
    // T = P (I−Q) P, spectrum within [0, 1); find the smallest n0 with
    // τ(T^n0) ≤ eps/2, then delta with (1−delta)^n0 ≥ 1/2, and cut the
    // spectrum of T at 1−delta.
    let t = p.mat.mul(&q.complement().mat).mul(&p.mat).symmetrize();
    let spec = eig_sym(&t)?;
    let lambdas: Vec<f64> = spec.values.iter().map(|&l| l.clamp(0.0, 1.0)).collect();
    let tau_pow = |k: u32| -> f64 {
        if n == 0.0 {
            0.0
        } else {
            lambdas.iter().map(|&l| l.powi(k as i32)).sum::<f64>() / n
        }
    };
    let mut n0 = 1u32;
    while tau_pow(n0) > eps / 2.0 {
        if n0 >= N0_CAP {
            return Err(Error::Numeric(format!(
                "eps_truncation: τ(T^k) stuck at {} after k = {N0_CAP}; spectrum of P(I−Q)P \
                 reaches too close to 1",
                tau_pow(n0)
            )));
        }
        n0 *= 2;
    }
    // Shrink back to the smallest power (binary search in (n0/2, n0]).
    let mut lo = if n0 == 1 { 1 } else { n0 / 2 + 1 };
    let mut hi = n0;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if tau_pow(mid) <= eps / 2.0 {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let n0 = lo;
    let delta = 1.0 - 0.5f64.powf(1.0 / n0 as f64);
    // P_delta spans the tail spectrum of T above 1−delta; those directions
    // lie inside ran(P), so P − P_delta is again a projection.
    let tail: Vec<usize> = (0..lambdas.len()).filter(|&i| lambdas[i] > 1.0 - delta).collect();
    let p_delta = Projection::from_orthonormal_basis(&spec.vectors.select_cols(&tail));
    let p_eps_mat = p.mat.sub(p_delta.mat());
    let p_eps = Projection::new(SymMat::new(p_eps_mat)?, p.tol.max(PROJ_TOL))?;
    let norm = op_norm(&p_eps.mat.mul(&q.complement().mat))?;
    let trace_lost = p.tau() - p_eps.tau();
    let result = EpsTruncation {
        margin: 1.0 - norm,
        p_eps,
        trace_lost,
        norm,
        n0,
        delta,
    };
    if result.norm >= 1.0 {
        return Err(Error::Numeric(format!(
            "eps_truncation postcondition failed: ‖P_ε(I−Q)‖ = {} ≥ 1",
            result.norm
        )));
    }
    Ok(result)
}

/// Spectral operator norm ‖M‖₂ = √λ_max(MᵀM).
pub fn op_norm(m: &Mat<f64>) -> Result<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(0.0);
    }
    let spec = eig_sym(&m.transpose().mul(m))?;
    Ok(spec.values.last().copied().unwrap_or(0.0).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn meet_join_idempotent() {
        let mut r = rng(1);
        let p = Projection::random(&mut r, 6, 3);
        assert_eq!(meet(&p, &p).unwrap().rank(), 3);
        assert_eq!(join(&p, &p).unwrap().rank(), 3);
        assert!(meet(&p, &p).unwrap().mat().sub(p.mat()).max_abs() < 1e-8);
    }

    #[test]
    fn orthogonal_ranges() {
        // Coordinate subspaces on disjoint coordinates.
        let e01 = Projection::from_orthonormal_basis(&Mat::from_fn(4, 2, |i, j| {
            f64::from(i == j)
        }));
        let e23 = Projection::from_orthonormal_basis(&Mat::from_fn(4, 2, |i, j| {
            f64::from(i == j + 2)
        }));
        assert_eq!(meet(&e01, &e23).unwrap().rank(), 0);
        let j = join(&e01, &e23).unwrap();
        assert_eq!(j.rank(), 4);
        assert!(j.mat().sub(&e01.mat().add(e23.mat())).max_abs() < 1e-8);
    }

    #[test]
    fn rank_identity_random_pairs() {
        // Integer rank arithmetic: rank P + rank Q = rank join + rank meet.
        for seed in 0..20 {
            let mut r = rng(seed);
            let n = 4 + (seed as usize % 5);
            let p = Projection::random(&mut r, n, (seed as usize) % (n + 1));
            let q = Projection::random(&mut r, n, (seed as usize * 3 + 1) % (n + 1));
            let jm = join(&p, &q).unwrap();
            let mm = meet(&p, &q).unwrap();
            assert_eq!(p.rank() + q.rank(), jm.rank() + mm.rank(), "seed {seed}");
            let rep = rank_nullity_check(&p, &q).unwrap();
            assert!(rep.residual <= 1e-6, "seed {seed}: {}", rep.residual);
        }
    }

    #[test]
    fn rank_nullity_edge_cases() {
        let i = Projection::identity(5);
        let rep = rank_nullity_check(&i, &i).unwrap();
        assert!(rep.residual <= 1e-12);
        let mut r = rng(7);
        let p = Projection::random(&mut r, 5, 2);
        let rep = rank_nullity_check(&p, &p.complement()).unwrap();
        assert!(rep.tau_join > 0.999 && rep.tau_meet < 1e-9);
        assert!(rep.residual <= 1e-6);
    }

    #[test]
    fn support_trace_cases() {
        let mut r = rng(3);
        let p = Projection::random(&mut r, 6, 2);
        // Q = I: Y has the trace of P, the complement-meet vanishes.
        let rep = support_trace(&p, &Projection::identity(6)).unwrap();
        assert!((rep.tau_support - p.tau()).abs() < 1e-9);
        assert!(rep.tau_meet_complement < 1e-9);
        // ran(Q) ⊇ ran(P) via Q = join(P, R).
        let extra = Projection::random(&mut r, 6, 2);
        let q = join(&p, &extra).unwrap();
        let rep = support_trace(&p, &q).unwrap();
        assert!((rep.tau_support - p.tau()).abs() < 1e-9);
        assert!(rep.identity_residual <= 1e-6);
        // Random pairs.
        for seed in 10..30 {
            let mut r = rng(seed);
            let p = Projection::random(&mut r, 6, (seed as usize) % 7);
            let q = Projection::random(&mut r, 6, (seed as usize * 5 + 2) % 7);
            let rep = support_trace(&p, &q).unwrap();
            assert!(rep.identity_residual <= 1e-6, "seed {seed}");
            assert!(rep.domination_margin >= -1e-9, "seed {seed}");
        }
    }

    #[test]
    fn support_trace_exact_on_rational_lift() {
        // Exact oracle: 0/1-pattern subspaces where ranks are hand-computable.
        // P projects onto span(e0, e1), Q onto span(e1 + e2).
        let bp = Mat::from_fn(4, 2, |i, j| f64::from(i == j));
        let p = Projection::from_orthonormal_basis(&bp);
        let s = 0.5f64.sqrt();
        let bq = Mat::from_fn(4, 1, |i, _| if i == 1 || i == 2 { s } else { 0.0 });
        let q = Projection::from_orthonormal_basis(&bq);
        // QP has rank 1 (P∩kerQ = span(e0) has dim 1 = 2−1).
        let rep = support_trace(&p, &q).unwrap();
        assert!((rep.tau_support - 0.25).abs() < 1e-9);
        assert!((rep.tau_meet_complement - 0.25).abs() < 1e-9);
        assert!(rep.identity_residual <= 1e-9);
    }

    #[test]
    fn eps_truncation_contract() {
        // Q = I: P_ε = P with norm 0.
        let mut r = rng(5);
        let p = Projection::random(&mut r, 6, 3);
        let t = eps_truncation(&p, &Projection::identity(6), 0.1).unwrap();
        assert_eq!(t.p_eps.rank(), 3);
        assert!(t.norm < 1e-8);
        assert!(t.trace_lost.abs() < 1e-9);

        // P = 0 stays zero.
        let z = Projection::zero(6);
        let t = eps_truncation(&z, &p, 0.1).unwrap();
        assert_eq!(t.p_eps.rank(), 0);

        // Random pairs with trivial meet: all three postconditions.
        for seed in 0..25 {
            let mut r = rng(100 + seed);
            let n = 6;
            let p = Projection::random(&mut r, n, 2);
            let q = Projection::random(&mut r, n, 3);
            if meet(&p, &q.complement()).unwrap().rank() > 0 {
                continue;
            }
            let t = eps_truncation(&p, &q, 0.1).unwrap();
            assert!(t.trace_lost <= 0.1 + 1e-9, "seed {seed}");
            assert!(t.norm < 1.0, "seed {seed}");
            assert!(t.margin > 0.0, "seed {seed}");
            assert!(t.p_eps.loewner_le(&p, 1e-8).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn eps_truncation_rejects_nontrivial_meet() {
        // P and I−Q share a direction when Q misses part of ran(P).
        let p = Projection::from_orthonormal_basis(&Mat::from_fn(4, 2, |i, j| f64::from(i == j)));
        let q = Projection::from_orthonormal_basis(&Mat::from_fn(4, 1, |i, _| f64::from(i == 1)));
        assert!(matches!(
            eps_truncation(&p, &q, 0.1),
            Err(Error::Certificate(_))
        ));
    }

    #[test]
    fn meet_matches_iterated_product_form() {
        // Cross-check against the sot-limit form (PQP)^k, which converges
        // to the meet in finite dimension.
        let mut r = rng(11);
        let p = Projection::random(&mut r, 5, 3);
        let q = Projection::random(&mut r, 5, 4);
        let m = meet(&p, &q).unwrap();
        // 18 squarings: (PQP)^(2^18) has decayed on every strict principal
        // angle while squaring drift is still ~1e-11.
        let mut it = p.mat().mul(q.mat()).mul(p.mat());
        for _ in 0..18 {
            it = it.mul(&it).symmetrize();
        }
        assert!(it.sub(m.mat()).max_abs() < 1e-5);
    }

    #[test]
    fn loewner_monotonicity() {
        let mut r = rng(13);
        let p = Projection::random(&mut r, 6, 2);
        let q = Projection::random(&mut r, 6, 3);
        let jm = join(&p, &q).unwrap();
        let mm = meet(&p, &q).unwrap();
        assert!(p.loewner_le(&jm, 1e-8).unwrap());
        assert!(mm.loewner_le(&p, 1e-8).unwrap());
    }

    #[test]
    fn projection_validation_rejects_junk() {
        let half = SymMat::new(Mat::filled(2, 2, 0.5)).unwrap();
        assert!(Projection::new(half, PROJ_TOL).is_ok()); // rank-1 projection
        let bad = SymMat::new(Mat::filled(2, 2, 0.6)).unwrap();
        assert!(Projection::new(bad, PROJ_TOL).is_err());
    }
}

#[cfg(test)]
mod commutativity_tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn meet_join_commutative() {
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let p = Projection::random(&mut r, 6, 3);
        let q = Projection::random(&mut r, 6, 4);
        assert!(meet(&p, &q).unwrap().mat().sub(meet(&q, &p).unwrap().mat()).max_abs() < 1e-8);
        assert!(join(&p, &q).unwrap().mat().sub(join(&q, &p).unwrap().mat()).max_abs() < 1e-8);
    }
}
