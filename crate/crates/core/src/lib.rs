//! Multi-qubit states as multilinear polynomials.
//!
//! A two-qubit state `c1|00⟩ + c2|01⟩ + c3|10⟩ + c4|11⟩` corresponds to the
//! bilinear polynomial `c1 + c2 x + c3 y + c4 xy`; the state is a product
//! state exactly when the polynomial factors as `Q1(x) · Q2(y)`, which is
//! exactly when `c1 c4 − c2 c3 = 0`. The crate builds on that
//! correspondence: Bell-state algebra, teleportation over arbitrary
//! entangled bases, a small circuit simulator that traces each slice as a
//! polynomial and surface, and OBJ/CSV export of real bilinear surfaces.

pub mod circuit;
pub mod cli;
pub mod error;
pub mod formats;
pub mod geometry;
pub mod mpoly;
pub mod numerics;
pub mod qstate;
pub mod separability;
pub mod teleport;

pub use error::{Error, Result};
pub use mpoly::{MultilinearPoly, VarMap};
pub use numerics::{Complex, Mat2, Mat4};
pub use qstate::{BellIndex, QubitState};
