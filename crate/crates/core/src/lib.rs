//! Exact first-order deformation theory for isolated complete-intersection
//! germs, and verification of cyclic-quotient smoothing families of
//! hypersurfaces.
//!
//! Everything is computed over the rationals with Groebner bases; no floating
//! point enters a decision.

pub mod cli;
pub mod equiv;
pub mod gb;
pub mod geom;
mod linalg;
pub mod poly;
pub mod t1;
