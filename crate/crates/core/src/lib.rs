//! Determinantal representations of weighted k-ellipses and k-ellipsoids.
//!
//! The crate builds symmetric affine matrix pencils as tensor sums of small
//! per-focus blocks, expands their determinants exactly, checks degrees and
//! rigid convexity, and solves the Fermat-Weber problem that sits at the
//! bottom of the associated spectrahedron.
//!
//! Module map:
//!
//! * [`pencil`]: tensor sums and the planar / spatial pencils.
//! * [`poly`]: exact sparse polynomials, determinant expansion, degrees.
//! * [`geometry`]: membership, branch tracing, rigid convexity, SVG/CSV.
//! * [`fermat_weber`]: Weiszfeld solver, SDPA export, boundary support points.
//! * [`cli`]: the `kellipse` command-line front end.

pub mod cli;
pub mod config;
pub mod error;
pub mod fermat_weber;
pub mod geometry;
pub mod linalg;
pub mod matrix;
pub mod par;
pub mod pencil;
pub mod poly;
pub mod rational;

pub use config::FociConfig;
pub use error::{Error, Result};
pub use matrix::RatMatrix;
pub use par::Exec;
pub use pencil::AffinePencil;
pub use poly::{SignVector, SparsePoly, UniPoly};
