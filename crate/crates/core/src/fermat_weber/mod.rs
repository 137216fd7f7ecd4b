//! Fermat-Weber point, its pencil certificate, SDPA export and support points.

mod sdpa;
mod solver;
mod support;
mod verify;

pub use sdpa::{export_sdp, sdpa_string, Formulation, MAX_BIG_K};
pub use solver::{solve_fw, solve_fw_with, FwOptions, FwSolution, FwStatus};
pub use support::boundary_support;
pub use verify::{verify_fw_via_pencil, verify_fw_via_pencil_with, FwVerification};
