//! Upper bounds on graph independence numbers and Shannon capacity.
//!
//! The crate computes and cross-checks the classical bound family around the
//! sandwich chain α ≤ ϑ ≤ χ̄_f: the Lovász theta function (via a dense SDP),
//! exact fractional clique covers, the inertia bound over edge weightings,
//! and Haemers-type bounds through subspace representations. A certificate
//! layer verifies user-supplied representation objects in exact arithmetic,
//! and property suites exercise the semiring axioms these bounds satisfy.
//!
//! Organization:
//! - [`graphs`]: graph type, semiring operations, exact invariants;
//! - [`numkit`]: matrices, eigendecomposition, exact LP, SDP, projections;
//! - [`reps`]: subspace-representation and related certificates;
//! - [`inertia`]: eigenvalue-signature bound and weight optimization;
//! - [`capacity`]: assembled bound reports and property suites.
//!
//! ```
//! use capbounds::graphs::{alpha_exact, chifrac, generate, Family};
//! use capbounds::capacity::theta;
//!
//! let c5 = generate(&Family::Cycle(5)).unwrap();
//! let (alpha, _witness) = alpha_exact(&c5, 128).unwrap();
//! let (cover, _) = chifrac(&c5, 1000).unwrap();
//! let t = theta(&c5).unwrap().value;
//!
//! assert_eq!(alpha, 2);
//! assert_eq!(cover, capbounds::scalar::rat(5, 2));
//! assert!((t - 5f64.sqrt()).abs() < 1e-4);
//! ```

pub mod bitset;
pub mod capacity;
pub mod error;
pub mod graphs;
pub mod inertia;
pub mod mat;
pub mod numkit;
pub mod reps;
pub mod scalar;

pub use error::{Error, Result};

/// Exact rational scalar used by every certificate and exact solver.
pub type Rat = num_rational::BigRational;

/// Dense rational matrix.
pub type RatMat = mat::Mat<Rat>;

/// Dense `f64` matrix used by the floating kernels.
pub type F64Mat = mat::Mat<f64>;

/// Dense matrix over GF(p).
pub type GfMat<const P: u64> = mat::Mat<scalar::Gf<P>>;
