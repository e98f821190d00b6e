//! Exact solutions and an initial-value solver for the 2D coupled Burgers
//! system `u_t = Δu + 2uu_x + 2vu_y`, `v_t = Δv + 2uv_x + 2vv_y`, together
//! with the independent checks used to verify them.
//!
//! * [`jets`]: truncated Taylor arithmetic in `(x, y, t)`.
//! * [`exact`]: heat seeds, the Bäcklund lift, the recurrence and residuals.
//! * [`heat`]: periodic grids, the spectral heat solver, the kernel
//!   quadrature oracle and recovery of `(u, v)` from `φ`.
//! * [`fd`]: explicit finite-difference reference integrator.
//! * [`io`]: configuration, field files, reports and runnable scenarios.

// `!(x > tol)` is used on purpose throughout so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod exact;
pub mod fd;
pub mod heat;
pub mod io;
pub mod jets;
