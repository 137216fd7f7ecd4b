//! Point membership, branch tracing, rigid-convexity certification and the
//! small-ellipse and ellipsoid cross-checks.

mod branches;
mod ellipsoid;
mod membership;
pub mod output;
mod rigidity;
mod small_ellipse;

pub use branches::{
    confocal_pencil, confocal_pencil_with, trace_branches, trace_branches_with, BranchCurve,
    BranchPoint, ConfocalCurve, ConfocalPlot, CurveKind, Polyline, Window,
};
pub use ellipsoid::{ellipsoid_vanishing_check, EllipsoidReport, SurfaceSample};
pub use membership::{contains, membership_sweep, MembershipOracle, MembershipSweep};
pub use rigidity::{rigidity_check, rigidity_check_with, RigidityReport};
pub use small_ellipse::{small_ellipse_lmi_check, small_ellipse_matrix, SmallEllipseReport};

/// Default absolute tolerance for eigenvalue and distance tests.
pub const DEFAULT_TOL: f64 = 1e-8;
