//! Numeric and exact kernels: rational linear algebra lives on
//! [`Mat`](crate::mat::Mat), symmetric eigendecomposition in [`eig`], the
//! projection lattice in [`proj`], exact-rational linear programming in
//! [`lp`], and the dense SDP solver in [`sdp`].
//!
//! Everything here is real. A Hermitian matrix H = A + iB can be handled
//! through the standard real embedding [[A, −B], [B, A]], which is
//! symmetric and doubles each eigenvalue's multiplicity; no in-scope
//! computation needs complex entries directly.

pub mod eig;
pub mod exchange;
pub mod lp;
pub mod proj;
pub mod sdp;

pub use eig::{eig_sym, Spectrum};
pub use proj::{
    eps_truncation, join, meet, op_norm, rank_nullity_check, support_trace, EpsTruncation,
    Projection, RankNullityReport, SupportTraceReport, SymMat, PROJ_TOL, RANK_CUTOFF, SYM_TOL,
};
