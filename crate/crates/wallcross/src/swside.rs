//! Seiberg-Witten bookkeeping for the single-reflection diffeomorphism:
//! the coefficient-ring decision through (-1)^epsilon * alpha, the Rohlin
//! constraint on b+, and the mod-2 value determined by parity.

use num::bigint::BigInt;
use num::{Integer, One};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{CoefficientRing, Sign};

/// Topological context for the mod-2 computation on Z = X # N.
///
/// b+ of the spin summand X must be 3 mod 4 (Rohlin constraint for a
/// zero-dimensional moduli space with c1 = 0); b+ of Z is then b+(X) + 1,
/// divisible by 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwContext {
    b_plus_x: BigInt,
    alpha: Sign,
}

impl SwContext {
    pub fn new(b_plus_x: impl Into<BigInt>, alpha: Sign) -> Result<SwContext> {
        let b_plus_x = b_plus_x.into();
        check_rohlin(&b_plus_x)?;
        Ok(SwContext { b_plus_x, alpha })
    }

    pub fn b_plus_x(&self) -> &BigInt {
        &self.b_plus_x
    }

    pub fn b_plus_z(&self) -> BigInt {
        &self.b_plus_x + BigInt::one()
    }

    pub fn alpha(&self) -> Sign {
        self.alpha
    }
}

fn check_rohlin(b_plus_x: &BigInt) -> Result<()> {
    let residue = b_plus_x.mod_floor(&BigInt::from(4));
    if residue != BigInt::from(3) || b_plus_x < &BigInt::from(3) {
        return Err(Error::RohlinViolation {
            b_plus: b_plus_x.to_string(),
        });
    }
    Ok(())
}

/// Parity of epsilon = b+/2 + 1, the sign exponent of the conjugation
/// involution on the moduli space; b+ must be even.
pub fn sw_epsilon_parity(b_plus: &BigInt) -> Result<u8> {
    if b_plus.is_odd() {
        return Err(Error::OddBPlus {
            b_plus: b_plus.to_string(),
        });
    }
    let epsilon = b_plus / BigInt::from(2) + BigInt::one();
    Ok(if epsilon.is_odd() { 1 } else { 0 })
}

/// Coefficient ring of the Seiberg-Witten invariant of the diffeomorphism:
/// the integers exactly when (-1)^epsilon * alpha = +1.
pub fn sw_ring(alpha: Sign, epsilon_parity: u8) -> CoefficientRing {
    let conjugation = if epsilon_parity == 0 {
        Sign::Plus
    } else {
        Sign::Minus
    };
    match conjugation * alpha {
        Sign::Plus => CoefficientRing::Z,
        Sign::Minus => CoefficientRing::Z2,
    }
}

/// Mod-2 value of the dimension-0 Seiberg-Witten invariant of a spin
/// 4-manifold: odd exactly when b+ = 3.
pub fn morgan_szabo_parity(b_plus_x: &BigInt) -> Result<u8> {
    check_rohlin(b_plus_x)?;
    Ok(if b_plus_x == &BigInt::from(3) { 1 } else { 0 })
}

/// Output of the reflection computation on the Seiberg-Witten side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwReport {
    pub parity: u8,
    pub ring: CoefficientRing,
    pub epsilon_parity: u8,
}

impl SwReport {
    pub fn to_json(&self) -> Value {
        json!({
            "parity": self.parity,
            "ring": self.ring.as_str(),
            "epsilon_parity": self.epsilon_parity,
        })
    }
}

/// The mod-2 invariant of the single-reflection diffeomorphism, together with
/// the ring decided by alpha and the parity of epsilon on Z.
pub fn sw_reflection_invariant(ctx: &SwContext) -> Result<SwReport> {
    let parity = morgan_szabo_parity(ctx.b_plus_x())?;
    let epsilon_parity = sw_epsilon_parity(&ctx.b_plus_z())?;
    Ok(SwReport {
        parity,
        ring: sw_ring(ctx.alpha(), epsilon_parity),
        epsilon_parity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn epsilon_parity_examples() {
        assert_eq!(sw_epsilon_parity(&big(4)).unwrap(), 1);
        assert_eq!(sw_epsilon_parity(&big(2)).unwrap(), 0);
        assert_eq!(sw_epsilon_parity(&big(8)).unwrap(), 1);
        assert!(matches!(
            sw_epsilon_parity(&big(3)).unwrap_err(),
            Error::OddBPlus { .. }
        ));
    }

    #[test]
    fn ring_decisions() {
        assert_eq!(sw_ring(Sign::Plus, 1), CoefficientRing::Z2);
        assert_eq!(sw_ring(Sign::Plus, 0), CoefficientRing::Z);
        assert_eq!(sw_ring(Sign::Minus, 1), CoefficientRing::Z);
        assert_eq!(sw_ring(Sign::Minus, 0), CoefficientRing::Z2);
    }

    #[test]
    fn morgan_szabo_examples() {
        assert_eq!(morgan_szabo_parity(&big(3)).unwrap(), 1);
        assert_eq!(morgan_szabo_parity(&big(7)).unwrap(), 0);
        assert!(matches!(
            morgan_szabo_parity(&big(4)).unwrap_err(),
            Error::RohlinViolation { .. }
        ));
        assert!(matches!(
            morgan_szabo_parity(&big(-1)).unwrap_err(),
            Error::RohlinViolation { .. }
        ));
    }

    #[test]
    fn context_enforces_rohlin() {
        assert!(SwContext::new(3, Sign::Plus).is_ok());
        assert!(SwContext::new(7, Sign::Plus).is_ok());
        assert!(matches!(
            SwContext::new(5, Sign::Plus).unwrap_err(),
            Error::RohlinViolation { .. }
        ));
        assert_eq!(SwContext::new(3, Sign::Plus).unwrap().b_plus_z(), big(4));
    }

    #[test]
    fn reflection_invariant_values() {
        let report = sw_reflection_invariant(&SwContext::new(3, Sign::Plus).unwrap()).unwrap();
        assert_eq!(report.parity, 1);
        assert_eq!(report.ring, CoefficientRing::Z2);
        assert_eq!(report.epsilon_parity, 1);

        let report = sw_reflection_invariant(&SwContext::new(7, Sign::Plus).unwrap()).unwrap();
        assert_eq!(report.parity, 0);
        let report = sw_reflection_invariant(&SwContext::new(11, Sign::Plus).unwrap()).unwrap();
        assert_eq!(report.parity, 0);
    }

    #[test]
    fn value_depends_only_on_three() {
        for k in 1..40 {
            let b = 4 * k + 3;
            let report = sw_reflection_invariant(&SwContext::new(b, Sign::Plus).unwrap()).unwrap();
            assert_eq!(report.parity, 0, "b+ = {b}");
            assert_eq!(report.ring, CoefficientRing::Z2);
        }
    }

    #[test]
    fn ring_is_z2_whenever_b_plus_is_divisible_by_four() {
        // The integer case never arises for this construction.
        for k in 1..=20 {
            let parity = sw_epsilon_parity(&big(4 * k)).unwrap();
            assert_eq!(
                sw_ring(Sign::Plus, parity),
                CoefficientRing::Z2,
                "b+ = {}",
                4 * k
            );
        }
    }

    #[test]
    fn json_shape() {
        let report = sw_reflection_invariant(&SwContext::new(3, Sign::Plus).unwrap()).unwrap();
        assert_eq!(
            serde_json::to_string(&report.to_json()).unwrap(),
            r#"{"parity":1,"ring":"Z2","epsilon_parity":1}"#
        );
    }
}
