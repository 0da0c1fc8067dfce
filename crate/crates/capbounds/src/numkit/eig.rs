//! Dense symmetric eigendecomposition by cyclic Jacobi rotations.
//!
//! Foolproof for real symmetric input and accurate enough that the
//! projection-lattice residual contracts hold with a wide margin. Eigenvalues
//! are returned ascending with matching orthonormal eigenvector columns.

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::scalar::Real;

#[derive(Clone, Debug)]
pub struct Spectrum<R> {
    /// Eigenvalues, ascending.
    pub values: Vec<R>,
    /// Orthonormal eigenvectors as columns, aligned with `values`.
    pub vectors: Mat<R>,
}

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a symmetric matrix. The input is symmetrized first;
/// callers that need the symmetry check use [`SymMat`](super::SymMat).
pub fn eig_sym<R: Real>(a: &Mat<R>) -> Result<Spectrum<R>> {
    assert!(a.is_square(), "eig_sym needs a square matrix");
    if !a.all_finite() {
        return Err(Error::Numeric("eig_sym: non-finite input".into()));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Spectrum { values: vec![], vectors: Mat::zeros(0, 0) });
    }
    let mut m = a.symmetrize();
    let mut v: Mat<R> = Mat::identity(n);
    let scale = m.frob_norm().max(R::one());
    let tol = R::epsilon() * scale;
    for sweep in 0..MAX_SWEEPS {
        let mut off = R::zero();
        for p in 0..n {
            for q in p + 1..n {
                off += m[(p, q)] * m[(p, q)];
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        if sweep == MAX_SWEEPS - 1 {
            return Err(Error::Numeric(format!(
                "eig_sym failed to converge in {MAX_SWEEPS} sweeps; off-diagonal residual {}",
                off.sqrt()
            )));
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].partial_cmp(&m[(j, j)]).unwrap());
    let values: Vec<R> = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = Mat::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(Spectrum { values, vectors })
}

fn rotate<R: Real>(m: &mut Mat<R>, v: &mut Mat<R>, p: usize, q: usize) {
    let apq = m[(p, q)];
    if apq == R::zero() {
        return;
    }
    let app = m[(p, p)];
    let aqq = m[(q, q)];
    let theta = (aqq - app) / (R::from_f64(2.0) * apq);
    let t = {
        let s = if theta >= R::zero() { R::one() } else { -R::one() };
        s / (theta.abs() + (theta * theta + R::one()).sqrt())
    };
    let c = R::one() / (t * t + R::one()).sqrt();
    let s = t * c;
    let n = m.rows();
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = c * mkp - s * mkq;
        m[(k, q)] = s * mkp + c * mkq;
    }
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = c * mpk - s * mqk;
        m[(q, k)] = s * mpk + c * mqk;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

impl<R: Real> Spectrum<R> {
    /// Residual `‖AV − VΛ‖_max` against the decomposed matrix.
    pub fn residual(&self, a: &Mat<R>) -> R {
        let n = self.values.len();
        let av = a.mul(&self.vectors);
        let mut vl = self.vectors.clone();
        for j in 0..n {
            for i in 0..n {
                vl[(i, j)] *= self.values[j];
            }
        }
        av.sub(&vl).max_abs()
    }

    /// Max deviation of `VᵀV` from the identity.
    pub fn orthogonality_defect(&self) -> R {
        let vtv = self.vectors.transpose().mul(&self.vectors);
        vtv.sub(&Mat::identity(self.values.len())).max_abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate, Family};

    #[test]
    fn diagonal_input_sorted() {
        let a = Mat::from_vec(3, 3, vec![3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0]);
        let s = eig_sym(&a).unwrap();
        assert_eq!(s.values, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn c5_adjacency_closed_form() {
        // Circulant eigenvalues 2cos(2πk/5): one 2, two golden-ratio pairs.
        let g = generate(&Family::Cycle(5)).unwrap();
        let a = Mat::from_fn(5, 5, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
        let s = eig_sym(&a).unwrap();
        let phi = (5.0f64.sqrt() - 1.0) / 2.0;
        let expected = [-(phi + 1.0), -(phi + 1.0), phi, phi, 2.0];
        for (got, want) in s.values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
        assert!(s.residual(&a) < 1e-10);
        assert!(s.orthogonality_defect() < 1e-10);
    }

    #[test]
    fn similarity_invariance() {
        // A and QAQᵀ share a spectrum for orthogonal Q.
        let a = Mat::from_vec(3, 3, vec![2.0, 1.0, 0.5, 1.0, -1.0, 0.25, 0.5, 0.25, 3.0]);
        // Orthonormalize a fixed basis by hand (Gram-Schmidt).
        let q = {
            let cols = [[1.0, 1.0, 0.0], [1.0, -1.0, 1.0], [0.0, 2.0, 1.0]];
            let mut basis: Vec<[f64; 3]> = Vec::new();
            for c in cols {
                let mut v = c;
                for b in &basis {
                    let dot: f64 = (0..3).map(|i| v[i] * b[i]).sum();
                    for i in 0..3 {
                        v[i] -= dot * b[i];
                    }
                }
                let norm: f64 = (0..3).map(|i| v[i] * v[i]).sum::<f64>().sqrt();
                for x in v.iter_mut() {
                    *x /= norm;
                }
                basis.push(v);
            }
            Mat::from_fn(3, 3, |i, j| basis[j][i])
        };
        let b = q.mul(&a).mul(&q.transpose());
        let sa = eig_sym(&a).unwrap();
        let sb = eig_sym(&b).unwrap();
        for (x, y) in sa.values.iter().zip(&sb.values) {
            assert!((x - y).abs() < 1e-8);
        }
    }

    #[test]
    fn contract_residuals_on_random_like_input() {
        // Deterministic pseudo-random symmetric matrices of several sizes.
        for n in [2usize, 5, 9, 16] {
            let a = Mat::from_fn(n, n, |i, j| {
                let (i, j) = if i <= j { (i, j) } else { (j, i) };
                (((i * 31 + j * 17 + 7) % 23) as f64 - 11.0) / 6.0
            });
            let s = eig_sym(&a).unwrap();
            let bound = 1e-8 * (1.0 + a.max_abs());
            assert!(s.residual(&a) <= bound);
            assert!(s.orthogonality_defect() <= 1e-8);
        }
    }

    #[test]
    fn works_in_f32_too() {
        let a: Mat<f32> = Mat::from_vec(2, 2, vec![2.0, 1.0, 1.0, 2.0]);
        let s = eig_sym(&a).unwrap();
        assert!((s.values[0] - 1.0).abs() < 1e-5);
        assert!((s.values[1] - 3.0).abs() < 1e-5);
    }
}
