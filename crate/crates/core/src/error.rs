use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point is off the unit sphere: |z1|^2 + |z2|^2 = {norm_sq}")]
    NotOnSphere { norm_sq: f64 },

    #[error("algebra element is not real (not a member of su(2))")]
    NonRealElement,

    #[error("weight 2m = {two_m} is not a weight of level 2l = {two_l}")]
    WeightOutOfRange { two_l: u32, two_m: i32 },

    #[error("level mismatch: 2l = {left} vs 2l = {right}")]
    LevelMismatch { left: u32, right: u32 },

    #[error("negative exponent in Haar monomial integral")]
    NegativeExponent,

    #[error("polynomial degree {degree} exceeds the guard {max}")]
    DegreeGuard { degree: u32, max: u32 },

    #[error("series is not in the range of the lowering field at {}", fmt_keys(.0))]
    NotInRange(Vec<(u32, i32, i32)>),

    #[error("frame vectors do not form a basis of the complexified algebra")]
    DegenerateFrame,

    #[error("span of L1, L2 is not closed under the bracket: [L1, L2] has M-component {residual:e}")]
    NotSubalgebra { residual: f64 },

    #[error("bidegree ({p},{q}) is not a nontrivial bidegree for corank {corank}")]
    InvalidBidegree { corank: u8, p: u8, q: u8 },

    #[error("unknown preset '{0}'")]
    UnknownPreset(String),

    #[error("expected a corank {expected} structure, got corank {found}")]
    WrongCorank { expected: u8, found: u8 },

    #[error("printed constants exist only for named presets")]
    NoPrintedConstants,
}

fn fmt_keys(keys: &[(u32, i32, i32)]) -> String {
    keys.iter().map(|(l, m, n)| format!("(two_l={l}, two_m={m}, two_n={n})")).collect::<Vec<_>>().join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
