//! Exact-arithmetic checks for the enumerative geometry of planes
//! tangent to quartic surfaces at several points, and of their limits.
//!
//! The crate is organised bottom-up:
//!
//! * [`kernel`]: rationals, sparse polynomials, exact rank/determinant.
//! * [`formulas`]: Severi degrees, dual degrees, de Jonquières and Plücker.
//! * [`tetra`]: an exact model of the tetrahedral degeneration and its
//!   component ledgers, recovered by brute-force incidence scans.
//! * [`triangle`]: ledgers for a degeneration with twelve marked points
//!   on a triangle of lines, with every entry backed by a derivation.
//! * [`kummer`]: the 16_6 configuration, its automorphism group and the
//!   Kummer ledgers.
//! * [`fibre`]: semistable central fibres, blow-up lattices and the
//!   Triple Point Formula.
//! * [`verify`]: the full battery of checks behind `enumera verify all`.

pub mod error;
pub mod fibre;
pub mod formulas;
pub mod kernel;
pub mod kummer;
pub mod ledger;
pub mod par;
pub mod tetra;
pub mod triangle;
pub mod verify;

pub use error::{Error, Result};
pub use ledger::{ComponentLedger, LedgerEntry};
pub use par::Exec;
