//! Exact-arithmetic calculator for wall-crossing invariants of reflection
//! isometries on the rank-3 Lorentzian lattice diag(-1, -1, +1).
//!
//! The library computes reflection words and their orientation data
//! (alpha, beta), enumerates the walls of the chamber space (the forward
//! hyperboloid sheet), counts signed wall crossings for the path from a
//! chamber point to its image, and assembles the resulting formal invariant
//! 2 (gamma . W) D_X over Z or Z/2. A small Seiberg-Witten side computation
//! covers the mod-2 parity of the single-reflection case. Everything outside
//! SVG rendering uses arbitrary-precision integers and rationals; no floats
//! touch any decision.

pub mod chambers;
pub mod crossing;
mod error;
pub mod lattice;
pub mod report;
pub mod swside;

pub use chambers::{ChamberPoint, HomologyOrientation, Wall};
pub use crossing::{Crossing, CrossingReport, InvariantExpression, OrderedCrossing};
pub use error::{Error, Result};
pub use lattice::{BundleData, CoefficientRing, Isometry, LatticeClass, Mat3, Sign};
pub use swside::{SwContext, SwReport};

use num::bigint::BigInt;
use serde_json::Value;

/// An arbitrary-precision integer as a bare JSON number.
pub(crate) fn json_int(n: &BigInt) -> Value {
    Value::Number(
        n.to_string()
            .parse()
            .expect("an integer literal is a valid JSON number"),
    )
}
