use thiserror::Error;

/// Errors raised by lattice, chamber, crossing and Seiberg-Witten bookkeeping
/// operations. Every variant carries enough context to identify the offending
/// input; the CLI maps each to a distinct message on stderr with exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("class {class} does not have square -1")]
    NotMinusOneClass { class: String },

    #[error("isometry does not preserve w2: image of lift {lift} is not congruent mod 2")]
    W2NotPreserved { lift: String },

    #[error("matrix does not preserve the intersection form")]
    NotFormPreserving,

    #[error("word parity does not match the matrix determinant")]
    WordParityMismatch,

    #[error("w2 lift squared does not equal p1 of the bundle")]
    BundleMismatch,

    #[error("wall coordinates must all be odd: ({a}, {b}, {c})")]
    NotOdd { a: String, b: String, c: String },

    #[error("({a}, {b}, {c}) is not a reduction: need c > 0 and c^2 - a^2 - b^2 = -1")]
    NotReduction { a: String, b: String, c: String },

    #[error("point ({u}, {v}) lies outside the open unit disk")]
    OutsideDisk { u: String, v: String },

    #[error("point ({x}, {y}, {z}) is not on the forward hyperboloid sheet")]
    NotOnHyperboloid { x: String, y: String, z: String },

    #[error("image point leaves the forward sheet (z <= 0)")]
    NotForwardSheet,

    #[error("chamber point lies exactly on wall {wall}")]
    OnWall { wall: String },

    #[error("non-generic chamber point: an endpoint lies on wall {wall}")]
    NonGenericPoint { wall: String },

    #[error("degenerate segment: the two endpoints coincide")]
    DegenerateSegment,

    #[error("no value supplied for symbol {symbol}")]
    MissingSymbol { symbol: String },

    #[error("b+ must be even, got {b_plus}")]
    OddBPlus { b_plus: String },

    #[error("Rohlin constraint violated: b+ must be = 3 mod 4 and >= 3, got {b_plus}")]
    RohlinViolation { b_plus: String },

    #[error("invalid input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
