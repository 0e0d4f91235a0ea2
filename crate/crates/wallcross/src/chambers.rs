//! The chamber space: the forward sheet of the hyperboloid z^2 - x^2 - y^2 = 1,
//! its Klein and Poincare chart projections, and the walls cut out by the
//! reducible reductions (a, b, c).
//!
//! A wall W(a, b, c) is the geodesic {cz - ax - by = 0} for an all-odd triple
//! with c > 0 and c^2 - a^2 - b^2 = -1, transversally oriented by the sign
//! epsilon(a, b, c). All arithmetic is exact rational; in the Klein chart
//! every wall is the straight chord aX + bY = c.

use std::collections::BTreeSet;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json_int;
use crate::lattice::{reflect, Isometry, LatticeClass, Sign};

/// Choice of homology orientation. Reversing it flips the base orientation
/// sign of every wall, and with it every crossing count.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HomologyOrientation {
    #[default]
    Standard,
    Reversed,
}

impl HomologyOrientation {
    pub fn sign(self) -> Sign {
        match self {
            HomologyOrientation::Standard => Sign::Plus,
            HomologyOrientation::Reversed => Sign::Minus,
        }
    }
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Orientation sign of the reduction (a, b, c) relative to the base reduction
/// (1, 1, 1): (-1) to the parity of ((c-1)/2)^2 - ((a-1)/2)^2 - ((b-1)/2)^2.
pub fn epsilon(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<Sign> {
    if a.is_even() || b.is_even() || c.is_even() {
        return Err(Error::NotOdd {
            a: a.to_string(),
            b: b.to_string(),
            c: c.to_string(),
        });
    }
    let half_sq = |n: &BigInt| -> BigInt {
        let h = (n - BigInt::one()) / 2;
        &h * &h
    };
    let exponent = half_sq(c) - half_sq(a) - half_sq(b);
    Ok(Sign::from_parity_of(&exponent))
}

/// A wall of the chamber structure, carrying its transverse orientation sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Wall {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    eps: Sign,
}

impl Wall {
    /// Validates the reduction conditions and computes the orientation sign.
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Wall> {
        Wall::oriented(a, b, c, HomologyOrientation::Standard)
    }

    pub fn oriented(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        orientation: HomologyOrientation,
    ) -> Result<Wall> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        let eps = epsilon(&a, &b, &c)?;
        if !c.is_positive() || &c * &c - &a * &a - &b * &b != BigInt::from(-1) {
            return Err(Error::NotReduction {
                a: a.to_string(),
                b: b.to_string(),
                c: c.to_string(),
            });
        }
        Ok(Wall {
            a,
            b,
            c,
            eps: orientation.sign() * eps,
        })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn eps(&self) -> Sign {
        self.eps
    }

    /// The wall as the cohomology class a e1 + b e2 + c s (square -1).
    pub fn class(&self) -> LatticeClass {
        LatticeClass::new(self.a.clone(), self.b.clone(), self.c.clone())
    }

    pub fn label(&self) -> String {
        format!("W({},{},{})", self.a, self.b, self.c)
    }

    /// Sort key (c, a, b) used for all deterministic wall orderings.
    pub fn sort_key(&self) -> (BigInt, BigInt, BigInt) {
        (self.c.clone(), self.a.clone(), self.b.clone())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": json_int(&self.a),
            "b": json_int(&self.b),
            "c": json_int(&self.c),
            "eps": self.eps.to_json(),
        })
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// An exact rational point on the forward hyperboloid sheet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChamberPoint {
    x: BigRational,
    y: BigRational,
    z: BigRational,
}

impl ChamberPoint {
    pub fn new(x: BigRational, y: BigRational, z: BigRational) -> Result<ChamberPoint> {
        let on_sheet = &z * &z - &x * &x - &y * &y == BigRational::one();
        if !on_sheet {
            return Err(Error::NotOnHyperboloid {
                x: x.to_string(),
                y: y.to_string(),
                z: z.to_string(),
            });
        }
        if !z.is_positive() {
            return Err(Error::NotForwardSheet);
        }
        Ok(ChamberPoint { x, y, z })
    }

    pub fn from_integers(x: i64, y: i64, z: i64) -> Result<ChamberPoint> {
        ChamberPoint::new(rational(x, 1), rational(y, 1), rational(z, 1))
    }

    /// The basepoint (0, 0, 1), the lift of the Poincare origin.
    pub fn origin() -> ChamberPoint {
        ChamberPoint {
            x: BigRational::zero(),
            y: BigRational::zero(),
            z: BigRational::one(),
        }
    }

    /// Lifts a Poincare disk point to the hyperboloid:
    /// (2u, 2v, 1 + u^2 + v^2) / (1 - u^2 - v^2).
    pub fn from_poincare(u: &BigRational, v: &BigRational) -> Result<ChamberPoint> {
        let norm = u * u + v * v;
        if norm >= BigRational::one() {
            return Err(Error::OutsideDisk {
                u: u.to_string(),
                v: v.to_string(),
            });
        }
        let denom = BigRational::one() - &norm;
        let two = BigRational::from(BigInt::from(2));
        Ok(ChamberPoint {
            x: &two * u / &denom,
            y: &two * v / &denom,
            z: (BigRational::one() + &norm) / &denom,
        })
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn z(&self) -> &BigRational {
        &self.z
    }

    /// Klein chart (x/z, y/z); always inside the open unit disk.
    pub fn klein(&self) -> (BigRational, BigRational) {
        (&self.x / &self.z, &self.y / &self.z)
    }

    /// Poincare chart (x/(1+z), y/(1+z)); inverse of `from_poincare`.
    pub fn poincare(&self) -> (BigRational, BigRational) {
        let denom = BigRational::one() + &self.z;
        (&self.x / &denom, &self.y / &denom)
    }

    /// Image of the point under a lattice isometry, which must keep the
    /// forward sheet.
    pub fn transformed(&self, iso: &Isometry) -> Result<ChamberPoint> {
        let m = iso.matrix();
        let col = [&self.x, &self.y, &self.z];
        let mut out = [
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ];
        for (i, slot) in out.iter_mut().enumerate() {
            for (k, coord) in col.iter().enumerate() {
                *slot += BigRational::from(m.entry(i, k).clone()) * *coord;
            }
        }
        let [x, y, z] = out;
        match ChamberPoint::new(x, y, z) {
            Err(Error::NotOnHyperboloid { .. }) => Err(Error::NotForwardSheet),
            other => other,
        }
    }

    /// Serializes as exact fraction strings.
    pub fn to_json(&self) -> Value {
        json!({
            "x": self.x.to_string(),
            "y": self.y.to_string(),
            "z": self.z.to_string(),
        })
    }
}

impl fmt::Display for ChamberPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Exact value of the defining linear form cz - ax - by at a chamber point.
pub fn wall_form_value(a: &BigInt, b: &BigInt, c: &BigInt, p: &ChamberPoint) -> BigRational {
    BigRational::from(c.clone()) * p.z()
        - BigRational::from(a.clone()) * p.x()
        - BigRational::from(b.clone()) * p.y()
}

/// Which side of a wall a generic chamber point lies on.
pub fn wall_sign(wall: &Wall, p: &ChamberPoint) -> Result<Sign> {
    let value = wall_form_value(&wall.a, &wall.b, &wall.c, p);
    Sign::of(&value).ok_or_else(|| Error::OnWall { wall: wall.label() })
}

/// A cutoff c_max such that every wall with c > c_max keeps a constant sign
/// on the Klein segment between the two points: with r^2 the larger of
/// (x^2 + y^2)/z^2 at the endpoints, c_max = floor(sqrt(r^2 / (1 - r^2))).
///
/// A wall chord has distance c/sqrt(c^2 + 1) from the Klein origin, so any
/// wall with c above the bound misses the disk of radius r containing the
/// segment and cannot separate the endpoints.
pub fn wall_bound(p0: &ChamberPoint, p1: &ChamberPoint) -> BigInt {
    let radius_sq =
        |p: &ChamberPoint| -> BigRational { (p.x() * p.x() + p.y() * p.y()) / (p.z() * p.z()) };
    let r2 = radius_sq(p0).max(radius_sq(p1));
    if r2.is_zero() {
        return BigInt::zero();
    }
    let q = &r2 / (BigRational::one() - &r2);
    q.to_integer().sqrt()
}

fn base_walls() -> [LatticeClass; 4] {
    [
        LatticeClass::new(-1, -1, 1),
        LatticeClass::new(-1, 1, 1),
        LatticeClass::new(1, -1, 1),
        LatticeClass::new(1, 1, 1),
    ]
}

/// All walls with c <= c_max, sorted lexicographically by (c, a, b).
///
/// Walls are generated as the orbit of the four c = 1 reductions under the
/// reflections in those same classes. Reflecting (a, b, c) in the generator
/// with signs (sgn a, sgn b, 1) strictly decreases c whenever c >= 3, so every
/// wall descends to a base wall through walls of smaller c; running the same
/// edges upward from the base therefore reaches every wall below the cutoff.
pub fn enumerate_walls_oriented(c_max: &BigInt, orientation: HomologyOrientation) -> Vec<Wall> {
    let mut seen: BTreeSet<(BigInt, BigInt, BigInt)> = BTreeSet::new();
    if c_max < &BigInt::one() {
        return Vec::new();
    }
    let generators = base_walls();
    let mut frontier: Vec<LatticeClass> = Vec::new();
    for g in &generators {
        seen.insert((g.s.clone(), g.e1.clone(), g.e2.clone()));
        frontier.push(g.clone());
    }
    while let Some(w) = frontier.pop() {
        for g in &generators {
            let mut image = reflect(g, &w).expect("generators have square -1");
            if image.s.is_negative() {
                image = image.negate();
            }
            if &image.s <= c_max
                && seen.insert((image.s.clone(), image.e1.clone(), image.e2.clone()))
            {
                frontier.push(image);
            }
        }
    }
    seen.into_iter()
        .map(|(c, a, b)| {
            Wall::oriented(a, b, c, orientation).expect("orbit classes satisfy wall invariants")
        })
        .collect()
}

pub fn enumerate_walls(c_max: &BigInt) -> Vec<Wall> {
    enumerate_walls_oriented(c_max, HomologyOrientation::Standard)
}

/// Intersection point of the Klein chords of two walls, if the chords are
/// not parallel.
fn chord_intersection(w1: &Wall, w2: &Wall) -> Option<(BigRational, BigRational)> {
    let det = &w1.a * &w2.b - &w2.a * &w1.b;
    if det.is_zero() {
        return None;
    }
    let det = BigRational::from(det);
    let x = BigRational::from(&w1.c * &w2.b - &w2.c * &w1.b) / &det;
    let y = BigRational::from(&w1.a * &w2.c - &w2.a * &w1.c) / &det;
    Some((x, y))
}

/// Checks that distinct walls with c <= c_max are pairwise disjoint inside
/// the chamber space: their Klein chords may only meet at squared distance
/// >= 1 from the origin.
pub fn walls_disjoint_check(c_max: &BigInt) -> bool {
    let walls = enumerate_walls(c_max);
    for (i, w1) in walls.iter().enumerate() {
        for w2 in walls.iter().skip(i + 1) {
            if let Some((x, y)) = chord_intersection(w1, w2) {
                if &x * &x + &y * &y < BigRational::one() {
                    return false;
                }
            }
        }
    }
    true
}
