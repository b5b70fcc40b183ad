//! Constant Gauss curvature surfaces from extended frames of harmonic Gauss maps,
//! transformed by dressing with simple factors, and checked against the classical
//! Bianchi–Bäcklund construction.

pub mod error;
pub mod grid;
pub mod linalg;
pub mod stencil;
pub mod framing;
pub mod dressing;
pub mod backlund;
pub mod pseudosphere;
pub mod io;

mod par;

pub use error::{Error, Result};
