use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("edge {edge} appears {count} times (expected exactly 2)")]
    EdgeMultiplicity { edge: u32, count: usize },

    #[error("inconsistent orientation: {0}")]
    Orientation(String),

    #[error("diagram is not planar: {0}")]
    NonPlanar(String),

    #[error("invalid braid word: {0}")]
    Braid(String),

    #[error("move not applicable: {0}")]
    InapplicableMove(String),

    #[error("crossing count {crossings} exceeds cap {cap}")]
    CapExceeded { crossings: usize, cap: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("d^2 != 0 in degree {degree}; the differential sign convention is broken")]
    NotAComplex { degree: i32 },

    #[error("s-invariant requires a knot (got {components} components)")]
    NotAKnot { components: usize },

    #[error("{0} is not on the unit circle")]
    NotUnitModulus(String),

    #[error("unknown corpus entry `{0}`")]
    UnknownCorpus(String),
}
