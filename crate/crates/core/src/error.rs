use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("theta must lie in [0, 1], got {0}")]
    ThetaOutOfRange(String),
    #[error("invalid scheme configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PhysicsError {
    #[error("non-physical state: {field} = {value}")]
    NonPhysical { field: &'static str, value: f64 },
    #[error("non-physical state at node {index}: {field} = {value}")]
    NonPhysicalAt {
        index: usize,
        field: &'static str,
        value: f64,
    },
    #[error("degenerate Roe state: averaged sound speed squared = {0}")]
    DegenerateState(f64),
    #[error("vacuum is generated by the Riemann data")]
    Vacuum,
    #[error("Riemann pressure iteration did not converge in {0} iterations")]
    NoConvergence(usize),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("periodic boundary on {0} side is not matched on the opposite side")]
    UnmatchedPeriodic(&'static str),
    #[error("ghost width {0} is too small, need at least 3")]
    GhostTooNarrow(usize),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("zero wave speed with a CFL time-step law; use a fixed power law instead")]
    ZeroWaveSpeed,
    #[error("invalid step control: {0}")]
    InvalidStepControl(String),
    #[error("problem has no exact reference solution")]
    UnsupportedReference,
    #[error("field shapes differ: {0}")]
    ShapeMismatch(String),
    #[error("grid is not symmetric about the requested axis")]
    AsymmetricGrid,
}

/// Which RK stage produced a non-finite value.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("non-finite value after RK stage {stage} at node {index} (t = {time})")]
pub struct NanAbort {
    pub stage: usize,
    pub index: usize,
    pub time: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Physics(#[from] PhysicsError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    NanAbort(#[from] NanAbort),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
