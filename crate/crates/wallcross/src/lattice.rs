//! Exact integer arithmetic on the rank-3 Lorentzian cohomology lattice.
//!
//! The lattice has ordered basis (e1, e2, s) with intersection form
//! Q = diag(-1, -1, +1). Reflections in square -1 classes generate the
//! isometries of interest; each isometry carries the orientation data
//! (alpha, beta) that decides whether invariants live in Z or Z/2.

use std::fmt;

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json_int;

/// A sign, kept as a dedicated type so that +/-1 values cannot drift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// Sign of a nonzero quantity; `None` on zero.
    pub fn of<T: Signed>(value: &T) -> Option<Sign> {
        if value.is_positive() {
            Some(Sign::Plus)
        } else if value.is_negative() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    /// Sign determined by a parity: even exponent gives +1.
    pub fn from_parity_of(exponent: &BigInt) -> Sign {
        if exponent.is_odd() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn unit(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_json(self) -> Value {
        json!(self.unit())
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.unit())
    }
}

/// Coefficient ring of an invariant: the integers when the diffeomorphism
/// preserves the moduli orientation data, Z/2 otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientRing {
    Z,
    Z2,
}

impl CoefficientRing {
    pub fn as_str(self) -> &'static str {
        match self {
            CoefficientRing::Z => "Z",
            CoefficientRing::Z2 => "Z2",
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An integral cohomology class a*e1 + b*e2 + c*s.
///
/// All pairings are taken against the fixed form diag(-1, -1, +1) in basis
/// order (e1, e2, s); coefficients are arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeClass {
    pub e1: BigInt,
    pub e2: BigInt,
    pub s: BigInt,
}

impl LatticeClass {
    pub fn new(e1: impl Into<BigInt>, e2: impl Into<BigInt>, s: impl Into<BigInt>) -> Self {
        LatticeClass {
            e1: e1.into(),
            e2: e2.into(),
            s: s.into(),
        }
    }

    pub fn zero() -> Self {
        LatticeClass::new(0, 0, 0)
    }

    /// The +1 generator s.
    pub fn s_class() -> Self {
        LatticeClass::new(0, 0, 1)
    }

    pub fn e1_class() -> Self {
        LatticeClass::new(1, 0, 0)
    }

    pub fn e2_class() -> Self {
        LatticeClass::new(0, 1, 0)
    }

    /// sigma+ = s + e1 + e2, the square -1 class supporting the first reflection.
    pub fn sigma_plus() -> Self {
        LatticeClass::new(1, 1, 1)
    }

    /// sigma- = s - e1 + e2.
    pub fn sigma_minus() -> Self {
        LatticeClass::new(-1, 1, 1)
    }

    /// Intersection pairing: s*s' - e1*e1' - e2*e2'.
    pub fn pairing(&self, other: &LatticeClass) -> BigInt {
        &self.s * &other.s - &self.e1 * &other.e1 - &self.e2 * &other.e2
    }

    /// Self-intersection number.
    pub fn square(&self) -> BigInt {
        self.pairing(self)
    }

    pub fn is_minus_one_class(&self) -> bool {
        self.square() == BigInt::from(-1)
    }

    /// Componentwise congruence mod 2.
    pub fn congruent_mod2(&self, other: &LatticeClass) -> bool {
        (&self.e1 - &other.e1).is_even()
            && (&self.e2 - &other.e2).is_even()
            && (&self.s - &other.s).is_even()
    }

    pub fn negate(&self) -> LatticeClass {
        LatticeClass::new(-&self.e1, -&self.e2, -&self.s)
    }

    /// Serializes as the JSON triple [a, b, c] in basis order (e1, e2, s).
    pub fn to_json(&self) -> Value {
        Value::Array(vec![
            json_int(&self.e1),
            json_int(&self.e2),
            json_int(&self.s),
        ])
    }

    /// Human form like "3s + 2e1 + 2e2"; terms with zero coefficient are dropped.
    pub fn algebraic(&self) -> String {
        let mut out = String::new();
        for (coeff, name) in [(&self.s, "s"), (&self.e1, "e1"), (&self.e2, "e2")] {
            if coeff.is_zero() {
                continue;
            }
            if out.is_empty() {
                if *coeff == BigInt::from(-1) {
                    out.push('-');
                } else if !coeff.is_one() {
                    out.push_str(&coeff.to_string());
                }
            } else {
                out.push_str(if coeff.is_negative() { " - " } else { " + " });
                let mag = coeff.abs();
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                }
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.e1, self.e2, self.s)
    }
}

/// Reflection in a square -1 class: x + 2(x . sigma) sigma.
pub fn reflect(sigma: &LatticeClass, x: &LatticeClass) -> Result<LatticeClass> {
    if !sigma.is_minus_one_class() {
        return Err(Error::NotMinusOneClass {
            class: sigma.to_string(),
        });
    }
    let k = BigInt::from(2) * x.pairing(sigma);
    Ok(LatticeClass::new(
        &x.e1 + &k * &sigma.e1,
        &x.e2 + &k * &sigma.e2,
        &x.s + &k * &sigma.s,
    ))
}

/// 3x3 integer matrix acting on lattice classes as column vectors in
/// basis order (e1, e2, s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat3 {
    rows: [[BigInt; 3]; 3],
}

impl Mat3 {
    pub fn identity() -> Self {
        let mut rows: [[BigInt; 3]; 3] = Default::default();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        Mat3 { rows }
    }

    pub fn from_rows(rows: [[BigInt; 3]; 3]) -> Self {
        Mat3 { rows }
    }

    pub fn from_i64_rows(rows: [[i64; 3]; 3]) -> Self {
        Mat3 {
            rows: rows.map(|r| r.map(BigInt::from)),
        }
    }

    /// The intersection form Q = diag(-1, -1, +1).
    pub fn form() -> Self {
        Mat3::from_i64_rows([[-1, 0, 0], [0, -1, 0], [0, 0, 1]])
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.rows[row][col]
    }

    pub fn mul(&self, rhs: &Mat3) -> Mat3 {
        let mut rows: [[BigInt; 3]; 3] = Default::default();
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let mut acc = BigInt::zero();
                for k in 0..3 {
                    acc += &self.rows[i][k] * &rhs.rows[k][j];
                }
                *slot = acc;
            }
        }
        Mat3 { rows }
    }

    pub fn transpose(&self) -> Mat3 {
        let mut rows: [[BigInt; 3]; 3] = Default::default();
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = self.rows[j][i].clone();
            }
        }
        Mat3 { rows }
    }

    pub fn det(&self) -> BigInt {
        let m = &self.rows;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    /// Whether M^T Q M = Q exactly.
    pub fn preserves_form(&self) -> bool {
        self.transpose().mul(&Mat3::form()).mul(self) == Mat3::form()
    }

    pub fn apply(&self, x: &LatticeClass) -> LatticeClass {
        let col = [&x.e1, &x.e2, &x.s];
        let mut out = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for (i, slot) in out.iter_mut().enumerate() {
            for (k, c) in col.iter().enumerate() {
                *slot += &self.rows[i][k] * *c;
            }
        }
        let [e1, e2, s] = out;
        LatticeClass { e1, e2, s }
    }

    pub fn row_major(&self) -> Vec<BigInt> {
        self.rows.iter().flatten().cloned().collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.row_major().iter().map(json_int).collect())
    }
}

/// A lattice isometry together with the reflection word that produced it.
///
/// Invariants: the matrix preserves the form exactly and its determinant is
/// (-1)^(word length). The first word entry acts on a class first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    matrix: Mat3,
    word: Vec<LatticeClass>,
}

impl Isometry {
    pub fn identity() -> Self {
        Isometry {
            matrix: Mat3::identity(),
            word: Vec::new(),
        }
    }

    /// Matrix form of the reflection in a square -1 class; column i is the
    /// image of the i-th basis vector.
    pub fn reflection(sigma: &LatticeClass) -> Result<Self> {
        let cols = [
            reflect(sigma, &LatticeClass::e1_class())?,
            reflect(sigma, &LatticeClass::e2_class())?,
            reflect(sigma, &LatticeClass::s_class())?,
        ];
        let mut rows: [[BigInt; 3]; 3] = Default::default();
        for (j, c) in cols.iter().enumerate() {
            rows[0][j] = c.e1.clone();
            rows[1][j] = c.e2.clone();
            rows[2][j] = c.s.clone();
        }
        Ok(Isometry {
            matrix: Mat3::from_rows(rows),
            word: vec![sigma.clone()],
        })
    }

    /// Composes the reflections of a word left-to-right: the first entry acts
    /// on a class first. The empty word is the identity.
    pub fn from_word(word: &[LatticeClass]) -> Result<Self> {
        let mut matrix = Mat3::identity();
        for sigma in word {
            matrix = Isometry::reflection(sigma)?.matrix.mul(&matrix);
        }
        Ok(Isometry {
            matrix,
            word: word.to_vec(),
        })
    }

    /// Wraps an explicit matrix, checking the isometry invariants.
    pub fn from_parts(matrix: Mat3, word: Vec<LatticeClass>) -> Result<Self> {
        for sigma in &word {
            if !sigma.is_minus_one_class() {
                return Err(Error::NotMinusOneClass {
                    class: sigma.to_string(),
                });
            }
        }
        if !matrix.preserves_form() {
            return Err(Error::NotFormPreserving);
        }
        let expected_det = if word.len().is_multiple_of(2) {
            BigInt::one()
        } else {
            BigInt::from(-1)
        };
        if matrix.det() != expected_det {
            return Err(Error::WordParityMismatch);
        }
        Ok(Isometry { matrix, word })
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    pub fn word(&self) -> &[LatticeClass] {
        &self.word
    }

    pub fn apply(&self, x: &LatticeClass) -> LatticeClass {
        self.matrix.apply(x)
    }

    /// The isometry acting as `self` first and `next` afterwards.
    pub fn then(&self, next: &Isometry) -> Isometry {
        let mut word = self.word.clone();
        word.extend(next.word.iter().cloned());
        Isometry {
            matrix: next.matrix.mul(&self.matrix),
            word,
        }
    }

    /// Exact inverse: Q M^T Q, with the reflection word reversed.
    pub fn inverse(&self) -> Isometry {
        let q = Mat3::form();
        let matrix = q.mul(&self.matrix.transpose()).mul(&q);
        let word = self.word.iter().rev().cloned().collect();
        Isometry { matrix, word }
    }

    /// Spinor norm: +1 when the forward cone (orientation of H^2_+) is
    /// preserved, detected by pairing(M s, s) > 0.
    pub fn alpha(&self) -> Sign {
        let image = self.apply(&LatticeClass::s_class());
        Sign::of(&image.pairing(&LatticeClass::s_class()))
            .expect("pairing(Ms, s) is nonzero for a form-preserving matrix")
    }

    /// The orientation sign (-1)^(((M c - c)/2)^2) attached to an integral
    /// lift c of w2; only the parity of the exponent matters.
    pub fn beta(&self, lift: &LatticeClass) -> Result<Sign> {
        let image = self.apply(lift);
        if !image.congruent_mod2(lift) {
            return Err(Error::W2NotPreserved {
                lift: lift.to_string(),
            });
        }
        let half = LatticeClass::new(
            (&image.e1 - &lift.e1) / 2,
            (&image.e2 - &lift.e2) / 2,
            (&image.s - &lift.s) / 2,
        );
        Ok(Sign::from_parity_of(&half.square()))
    }

    /// Coefficient ring of the 1-parameter Yang-Mills invariant: Z exactly
    /// when alpha * beta = +1.
    pub fn ym_ring(&self, lift: &LatticeClass) -> Result<CoefficientRing> {
        Ok(match self.alpha() * self.beta(lift)? {
            Sign::Plus => CoefficientRing::Z,
            Sign::Minus => CoefficientRing::Z2,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "matrix": self.matrix.to_json(),
            "word": Value::Array(self.word.iter().map(LatticeClass::to_json).collect()),
        })
    }
}

/// Formal dimension -2 p1 - 3 (1 + b+) of the moduli space for a
/// simply-connected base (b1 = 0).
pub fn ym_dimension(p1: &BigInt, b_plus: &BigInt) -> BigInt {
    BigInt::from(-2) * p1 - BigInt::from(3) * (BigInt::one() + b_plus)
}

/// SO(3) bundle data for the reducible model L + R.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleData {
    pub p1: BigInt,
    pub w2_lift: LatticeClass,
    pub b_plus_n: BigInt,
}

impl BundleData {
    pub fn new(p1: impl Into<BigInt>, w2_lift: LatticeClass) -> Result<Self> {
        let p1 = p1.into();
        if w2_lift.square() != p1 {
            return Err(Error::BundleMismatch);
        }
        Ok(BundleData {
            p1,
            w2_lift,
            b_plus_n: BigInt::one(),
        })
    }

    /// The bundle built from the line bundle with c1 = s + e1 + e2.
    pub fn standard() -> Self {
        BundleData {
            p1: BigInt::from(-1),
            w2_lift: LatticeClass::sigma_plus(),
            b_plus_n: BigInt::one(),
        }
    }
}
