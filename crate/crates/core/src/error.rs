use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("ring mismatch: GF({0}) vs GF({1})")]
    RingMismatch(u32, u32),
    #[error("desk-scale exceeded: {0}")]
    DeskScaleExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expected homogeneous input: {0}")]
    NonHomogeneous(String),
    #[error("zero input: {0}")]
    ZeroInput(String),
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),
    #[error("group law violated: {0}")]
    GroupLaw(String),
    #[error("not a homomorphism: {0}")]
    Homomorphism(String),
    #[error("representation law violated: {0}")]
    RepresentationLaw(String),
    #[error("invalid submodule: {0}")]
    InvalidSubmodule(String),
    #[error("not a retraction onto the submodule: {0}")]
    NotRetraction(String),
    #[error("cocycle identity fails: {0}")]
    CocycleIdentity(String),
    #[error("cocycle is a coboundary")]
    TrivialCocycle,
    #[error("summand witness fails: {0}")]
    SummandWitness(String),
    #[error("not an invariant: {0}")]
    NotInvariant(String),
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),
    #[error("certificate premise failed [{premise}]: {detail}")]
    Premise {
        premise: crate::certify::Premise,
        detail: String,
    },
    #[error("invalid job: {0}")]
    InvalidSpec(String),
    #[error("recorded evidence disagrees with recomputation: {0}")]
    EvidenceMismatch(String),
    #[error("annihilator search failed: {0}")]
    SearchFailed(String),
    #[error("transfer failed: {0}")]
    TransferFailed(String),
    #[error("certificate schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn premise(premise: crate::certify::Premise, detail: impl Into<String>) -> Self {
        Error::Premise {
            premise,
            detail: detail.into(),
        }
    }
}
