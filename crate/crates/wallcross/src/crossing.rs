//! Signed wall-crossing counts for the path from a chamber point to its image
//! under an isometry, and the formal invariant algebra built on top of them.
//!
//! A wall is crossed (net) by a generic path exactly when it separates the
//! endpoints; because distinct walls are disjoint separating geodesics this
//! makes the count exact and independent of any path model. The ordered
//! segment oracle exists to cross-validate the separation count and to order
//! crossings along the straight Klein segment.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, Signed, Zero};
use serde_json::{json, Value};

use crate::chambers::{
    enumerate_walls_oriented, wall_bound, wall_sign, ChamberPoint, HomologyOrientation, Wall,
};
use crate::error::{Error, Result};
use crate::json_int;
use crate::lattice::{CoefficientRing, Isometry, LatticeClass, Sign};

/// Local multiplicity of each wall crossing: the Euler number of the gluing
/// picture. Imported as data; every crossing contributes twice its sign.
pub const GLUING_MULTIPLICITY: i64 = 2;

/// One separating wall, with the direction the path crosses it and the signed
/// contribution eps * direction to the crossing count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub wall: Wall,
    pub direction: Sign,
    pub contribution: Sign,
}

impl Crossing {
    /// Contribution scaled by the gluing multiplicity.
    pub fn doubled(&self) -> i64 {
        GLUING_MULTIPLICITY * self.contribution.unit()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "wall": self.wall.to_json(),
            "direction": self.direction.to_json(),
            "contribution": self.contribution.to_json(),
            "doubled": self.doubled(),
        })
    }
}

/// The full crossing record for a path between two generic chamber points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingReport {
    start: ChamberPoint,
    end: ChamberPoint,
    crossings: Vec<Crossing>,
    gamma_dot_w: BigInt,
}

impl CrossingReport {
    pub fn start(&self) -> &ChamberPoint {
        &self.start
    }

    pub fn end(&self) -> &ChamberPoint {
        &self.end
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Net signed crossing count gamma . W.
    pub fn gamma_dot_w(&self) -> &BigInt {
        &self.gamma_dot_w
    }

    /// Net count scaled by the gluing multiplicity.
    pub fn doubled_total(&self) -> BigInt {
        BigInt::from(GLUING_MULTIPLICITY) * &self.gamma_dot_w
    }

    pub fn to_json(&self) -> Value {
        json!({
            "crossings": Value::Array(self.crossings.iter().map(Crossing::to_json).collect()),
            "gamma_dot_W": json_int(&self.gamma_dot_w),
            "doubled_total": json_int(&self.doubled_total()),
            "start": self.start.to_json(),
            "end": self.end.to_json(),
        })
    }
}

fn generic_sign(wall: &Wall, p: &ChamberPoint) -> Result<Sign> {
    wall_sign(wall, p).map_err(|e| match e {
        Error::OnWall { wall } => Error::NonGenericPoint { wall },
        other => other,
    })
}

/// Separation-based crossing count for the path from `p0` to its image under
/// `iso`: every wall up to the enumeration bound is tested for a sign change
/// between the endpoints.
pub fn separation_crossings(
    iso: &Isometry,
    p0: &ChamberPoint,
    orientation: HomologyOrientation,
) -> Result<CrossingReport> {
    let end = p0.transformed(iso)?;
    let bound = wall_bound(p0, &end);
    let mut crossings = Vec::new();
    let mut gamma = BigInt::zero();
    for wall in enumerate_walls_oriented(&bound, orientation) {
        let s0 = generic_sign(&wall, p0)?;
        let s1 = generic_sign(&wall, &end)?;
        if s0 == s1 {
            continue;
        }
        // direction = (sign(end) - sign(start)) / 2, which is just sign(end).
        let direction = s1;
        let contribution = wall.eps() * direction;
        gamma += contribution.unit();
        crossings.push(Crossing {
            wall,
            direction,
            contribution,
        });
    }
    Ok(CrossingReport {
        start: p0.clone(),
        end,
        crossings,
        gamma_dot_w: gamma,
    })
}

/// A crossing located on the Klein segment at exact parameter t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedCrossing {
    pub wall: Wall,
    pub t: BigRational,
    pub direction: Sign,
}

impl OrderedCrossing {
    pub fn to_json(&self) -> Value {
        json!({
            "wall": self.wall.to_json(),
            "t": self.t.to_string(),
            "direction": self.direction.to_json(),
        })
    }
}

/// Independent oracle: walks the straight segment in Klein coordinates and
/// solves each wall chord for its crossing parameter. Each chord meets the
/// segment at most once; results are sorted by t.
pub fn segment_crossings_oracle(
    p0: &ChamberPoint,
    p1: &ChamberPoint,
    orientation: HomologyOrientation,
) -> Result<Vec<OrderedCrossing>> {
    if p0 == p1 {
        return Err(Error::DegenerateSegment);
    }
    let (x0, y0) = p0.klein();
    let (x1, y1) = p1.klein();
    let bound = wall_bound(p0, p1);
    let mut crossings = Vec::new();
    for wall in enumerate_walls_oriented(&bound, orientation) {
        let value = |x: &BigRational, y: &BigRational| -> BigRational {
            BigRational::from(wall.c().clone())
                - BigRational::from(wall.a().clone()) * x
                - BigRational::from(wall.b().clone()) * y
        };
        let v0 = value(&x0, &y0);
        let v1 = value(&x1, &y1);
        if v0.is_zero() || v1.is_zero() {
            return Err(Error::NonGenericPoint { wall: wall.label() });
        }
        if v0.is_positive() == v1.is_positive() {
            continue;
        }
        let t = &v0 / (&v0 - &v1);
        let direction = Sign::of(&v1).expect("endpoint value is nonzero");
        crossings.push(OrderedCrossing { wall, t, direction });
    }
    crossings.sort_by(|lhs, rhs| {
        lhs.t
            .cmp(&rhs.t)
            .then_with(|| lhs.wall.sort_key().cmp(&rhs.wall.sort_key()))
    });
    Ok(crossings)
}

/// Formal linear combination of manifold symbols over Z or Z/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantExpression {
    terms: BTreeMap<String, BigInt>,
    ring: CoefficientRing,
}

impl InvariantExpression {
    pub fn zero(ring: CoefficientRing) -> Self {
        InvariantExpression {
            terms: BTreeMap::new(),
            ring,
        }
    }

    pub fn term(symbol: &str, coefficient: impl Into<BigInt>, ring: CoefficientRing) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(symbol.to_string(), coefficient.into());
        InvariantExpression { terms, ring }.normalized()
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<String, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, symbol: &str) -> BigInt {
        self.terms.get(symbol).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(Zero::is_zero)
    }

    /// In Z/2 coefficients live in {0, 1} and zero terms are dropped; over Z
    /// coefficients are kept as written.
    fn normalized(mut self) -> Self {
        if self.ring == CoefficientRing::Z2 {
            self.terms = self
                .terms
                .into_iter()
                .map(|(k, v)| (k, v.mod_floor(&BigInt::from(2))))
                .filter(|(_, v)| !v.is_zero())
                .collect();
        }
        self
    }

    /// Coefficientwise sum. Rings promote Z -> Z/2 when mixed, never the
    /// other way.
    pub fn add(&self, other: &InvariantExpression) -> InvariantExpression {
        let ring = match (self.ring, other.ring) {
            (CoefficientRing::Z, CoefficientRing::Z) => CoefficientRing::Z,
            _ => CoefficientRing::Z2,
        };
        let mut terms = self.terms.clone();
        for (symbol, coeff) in &other.terms {
            *terms.entry(symbol.clone()).or_insert_with(BigInt::zero) += coeff;
        }
        InvariantExpression { terms, ring }.normalized()
    }

    /// Coefficientwise negation; the identity map in Z/2.
    pub fn negate(&self) -> InvariantExpression {
        let terms = self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect();
        InvariantExpression {
            terms,
            ring: self.ring,
        }
        .normalized()
    }

    /// Substitutes integer values for every symbol; the result is reduced to
    /// {0, 1} in Z/2.
    pub fn evaluate(&self, values: &BTreeMap<String, BigInt>) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (symbol, coeff) in &self.terms {
            let value = values.get(symbol).ok_or_else(|| Error::MissingSymbol {
                symbol: symbol.clone(),
            })?;
            total += coeff * value;
        }
        if self.ring == CoefficientRing::Z2 {
            total = total.mod_floor(&BigInt::from(2));
        }
        Ok(total)
    }

    pub fn to_json(&self) -> Value {
        let terms: serde_json::Map<String, Value> = self
            .terms
            .iter()
            .map(|(k, v)| (k.clone(), json_int(v)))
            .collect();
        json!({
            "ring": self.ring.as_str(),
            "terms": Value::Object(terms),
        })
    }

    /// Human form like "-4*X0 (ring Z)".
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return format!("0 (ring {})", self.ring);
        }
        let body: Vec<String> = self.terms.iter().map(|(k, v)| format!("{v}*{k}")).collect();
        format!("{} (ring {})", body.join(" + "), self.ring)
    }
}

/// The 1-parameter invariant of an isometry from a generic start point: the
/// formal expression 2 (gamma . W) times the manifold symbol, in the
/// coefficient ring decided by alpha and beta.
pub fn one_param_invariant(
    iso: &Isometry,
    p0: &ChamberPoint,
    symbol: &str,
    w2_lift: &LatticeClass,
    orientation: HomologyOrientation,
) -> Result<InvariantExpression> {
    let ring = iso.ym_ring(w2_lift)?;
    let report = separation_crossings(iso, p0, orientation)?;
    let coefficient = BigInt::from(GLUING_MULTIPLICITY) * report.gamma_dot_w();
    Ok(InvariantExpression::term(symbol, coefficient, ring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeClass;

    fn f0_word() -> Vec<LatticeClass> {
        vec![LatticeClass::sigma_minus(), LatticeClass::sigma_plus()]
    }

    fn wall_triples(report: &CrossingReport) -> Vec<(i64, i64, i64, i64)> {
        report
            .crossings()
            .iter()
            .map(|cr| {
                (
                    i64::try_from(cr.wall.a()).unwrap(),
                    i64::try_from(cr.wall.b()).unwrap(),
                    i64::try_from(cr.wall.c()).unwrap(),
                    cr.direction.unit(),
                )
            })
            .collect()
    }

    #[test]
    fn origin_crossing_report() {
        let iso = Isometry::from_word(&f0_word()).unwrap();
        let report =
            separation_crossings(&iso, &ChamberPoint::origin(), HomologyOrientation::Standard)
                .unwrap();
        assert_eq!(report.end(), &ChamberPoint::from_integers(4, 8, 9).unwrap());
        assert_eq!(wall_triples(&report), vec![(1, 1, 1, -1), (1, 3, 3, -1)]);
        assert_eq!(report.gamma_dot_w(), &BigInt::from(-2));
        assert_eq!(report.doubled_total(), BigInt::from(-4));
    }

    #[test]
    fn second_point_crossing_report() {
        let iso = Isometry::from_word(&f0_word()).unwrap();
        let p0 = ChamberPoint::from_integers(-2, -2, 3).unwrap();
        let report = separation_crossings(&iso, &p0, HomologyOrientation::Standard).unwrap();
        assert_eq!(
            report.end(),
            &ChamberPoint::from_integers(18, 30, 35).unwrap()
        );
        assert_eq!(
            wall_triples(&report),
            vec![
                (-1, -1, 1, 1),
                (1, 1, 1, -1),
                (1, 3, 3, -1),
                (7, 11, 13, -1)
            ]
        );
        let doubled: Vec<i64> = report.crossings().iter().map(Crossing::doubled).collect();
        assert_eq!(doubled, vec![2, -2, -2, -2]);
        assert_eq!(report.gamma_dot_w(), &BigInt::from(-2));
        assert_eq!(report.doubled_total(), BigInt::from(-4));
    }

    #[test]
    fn identity_has_no_crossings() {
        let report = separation_crossings(
            &Isometry::identity(),
            &ChamberPoint::origin(),
            HomologyOrientation::Standard,
        )
        .unwrap();
        assert!(report.crossings().is_empty());
        assert_eq!(report.gamma_dot_w(), &BigInt::zero());
    }

    #[test]
    fn orientation_flip_negates_gamma() {
        let iso = Isometry::from_word(&f0_word()).unwrap();
        let std =
            separation_crossings(&iso, &ChamberPoint::origin(), HomologyOrientation::Standard)
                .unwrap();
        let rev =
            separation_crossings(&iso, &ChamberPoint::origin(), HomologyOrientation::Reversed)
                .unwrap();
        assert_eq!(rev.gamma_dot_w(), &-std.gamma_dot_w());
    }

    #[test]
    fn non_generic_start_is_reported() {
        // (1, 1/2, 3/2) lies on W(1,1,1).
        let p = ChamberPoint::new(
            BigRational::new(BigInt::from(1), BigInt::from(1)),
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(3), BigInt::from(2)),
        )
        .unwrap();
        let iso = Isometry::from_word(&f0_word()).unwrap();
        let err = separation_crossings(&iso, &p, HomologyOrientation::Standard).unwrap_err();
        assert_eq!(
            err,
            Error::NonGenericPoint {
                wall: "W(1,1,1)".to_string()
            }
        );
    }

    #[test]
    fn oracle_orders_crossings() {
        let p0 = ChamberPoint::origin();
        let p1 = ChamberPoint::from_integers(4, 8, 9).unwrap();
        let ordered = segment_crossings_oracle(&p0, &p1, HomologyOrientation::Standard).unwrap();
        let labels: Vec<String> = ordered.iter().map(|c| c.wall.label()).collect();
        assert_eq!(labels, vec!["W(1,1,1)", "W(1,3,3)"]);
        assert_eq!(
            ordered[0].t,
            BigRational::new(BigInt::from(3), BigInt::from(4))
        );
        assert_eq!(
            ordered[1].t,
            BigRational::new(BigInt::from(27), BigInt::from(28))
        );

        let q0 = ChamberPoint::from_integers(-2, -2, 3).unwrap();
        let q1 = ChamberPoint::from_integers(18, 30, 35).unwrap();
        let ordered = segment_crossings_oracle(&q0, &q1, HomologyOrientation::Standard).unwrap();
        let labels: Vec<String> = ordered.iter().map(|c| c.wall.label()).collect();
        assert_eq!(
            labels,
            vec!["W(-1,-1,1)", "W(1,1,1)", "W(1,3,3)", "W(7,11,13)"]
        );
        assert!(ordered.windows(2).all(|p| p[0].t < p[1].t));
    }

    #[test]
    fn oracle_rejects_degenerate_segment() {
        let p = ChamberPoint::origin();
        assert_eq!(
            segment_crossings_oracle(&p, &p, HomologyOrientation::Standard).unwrap_err(),
            Error::DegenerateSegment
        );
    }

    #[test]
    fn one_param_invariant_examples() {
        let lift = LatticeClass::sigma_plus();
        let forward = Isometry::from_word(&f0_word()).unwrap();
        let inv = one_param_invariant(
            &forward,
            &ChamberPoint::origin(),
            "X0",
            &lift,
            HomologyOrientation::Standard,
        )
        .unwrap();
        assert_eq!(inv.ring(), CoefficientRing::Z);
        assert_eq!(inv.coefficient("X0"), BigInt::from(-4));

        let reverse = forward.inverse();
        let inv = one_param_invariant(
            &reverse,
            &ChamberPoint::origin(),
            "X0",
            &lift,
            HomologyOrientation::Standard,
        )
        .unwrap();
        assert_eq!(inv.coefficient("X0"), BigInt::from(4));

        let empty = one_param_invariant(
            &Isometry::identity(),
            &ChamberPoint::origin(),
            "X0",
            &lift,
            HomologyOrientation::Standard,
        )
        .unwrap();
        assert_eq!(empty.ring(), CoefficientRing::Z);
        assert_eq!(empty.coefficient("X0"), BigInt::zero());
        assert!(empty.terms().contains_key("X0"));
    }

    #[test]
    fn expression_algebra() {
        let d1 = InvariantExpression::term("X1", -4, CoefficientRing::Z);
        let d0 = InvariantExpression::term("X0", -4, CoefficientRing::Z);
        let composite = d1.add(&d0.negate());
        assert_eq!(composite.coefficient("X1"), BigInt::from(-4));
        assert_eq!(composite.coefficient("X0"), BigInt::from(4));

        let e = InvariantExpression::term("X0", 7, CoefficientRing::Z);
        assert_eq!(e.add(&InvariantExpression::zero(CoefficientRing::Z)), e);

        let one = InvariantExpression::term("X0", 1, CoefficientRing::Z2);
        assert!(one.add(&one).terms().is_empty());
        assert_eq!(one.negate(), one);
    }

    #[test]
    fn expression_evaluation() {
        let d1 = InvariantExpression::term("X1", -4, CoefficientRing::Z);
        let d0 = InvariantExpression::term("X0", 4, CoefficientRing::Z);
        let composite = d1.add(&d0);
        let mut values = BTreeMap::new();
        values.insert("X0".to_string(), BigInt::from(5));
        values.insert("X1".to_string(), BigInt::from(5));
        assert_eq!(composite.evaluate(&values).unwrap(), BigInt::zero());
        values.insert("X0".to_string(), BigInt::from(1));
        values.insert("X1".to_string(), BigInt::from(2));
        assert_eq!(composite.evaluate(&values).unwrap(), BigInt::from(-4));

        let missing = composite.evaluate(&BTreeMap::new()).unwrap_err();
        assert!(matches!(missing, Error::MissingSymbol { .. }));

        let empty = InvariantExpression::zero(CoefficientRing::Z);
        assert_eq!(empty.evaluate(&BTreeMap::new()).unwrap(), BigInt::zero());
    }

    #[test]
    fn z2_promotion() {
        let z = InvariantExpression::term("X0", 3, CoefficientRing::Z);
        let z2 = InvariantExpression::term("X0", 1, CoefficientRing::Z2);
        let sum = z.add(&z2);
        assert_eq!(sum.ring(), CoefficientRing::Z2);
        assert!(sum.terms().is_empty());
    }

    #[test]
    fn report_json_shape() {
        let report = separation_crossings(
            &Isometry::identity(),
            &ChamberPoint::origin(),
            HomologyOrientation::Standard,
        )
        .unwrap();
        let text = serde_json::to_string(&report.to_json()).unwrap();
        assert!(text.starts_with(r#"{"crossings":[],"gamma_dot_W":0"#));
    }
}
