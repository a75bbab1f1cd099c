use thiserror::Error;

/// Errors produced by the solver stack.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("argument outside the domain of {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("Mobius factor C + D exp(-alpha r) vanishes at r = {r}")]
    MobiusPole { r: f64 },

    #[error("no real superpotential: discriminant {discriminant} < 0")]
    NoRealSuperpotential { discriminant: f64 },

    #[error("degenerate superpotential parameter a_{index} = 0")]
    DegenerateParameter { index: u32 },

    #[error("no bound state for {state} in energy window [{lo}, {hi}]")]
    NoBoundState { state: String, lo: f64, hi: f64 },

    #[error("{} physical roots for {state}: {candidates:?}", candidates.len())]
    Ambiguous { state: String, candidates: Vec<f64> },

    #[error("energy {energy} sits on the forbidden point of the partner-component denominator")]
    ForbiddenEnergy { energy: f64 },

    #[error("state {0} has no doublet partner")]
    NoPartner(String),

    #[error("state is not normalizable: {0}")]
    NotNormalizable(String),

    #[error("grid is not uniform")]
    NonUniformGrid,

    #[error("no sign change of the matching function in [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("converged state has {found} nodes, expected {expected}")]
    WrongState { expected: u32, found: u32 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
