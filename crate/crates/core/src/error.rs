use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a graph needs at least one vertex")]
    EmptyGraph,

    #[error("{count} vertices exceed the supported maximum of {max}")]
    TooManyVertices { count: usize, max: usize },

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(usize, usize),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown generator: {0}")]
    UnknownGenerator(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("the complex is not pure")]
    NotPure,

    #[error("degenerate cap {cap} on variable {variable}; caps must be at least 2")]
    DegenerateCap { variable: usize, cap: u8 },

    #[error("expected {expected} caps, got {got}")]
    CapCount { expected: usize, got: usize },

    #[error("caps must all equal 2 for this operation")]
    NotSquarefree,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} is too large; moduli must be below 2^32")]
    ModulusTooLarge(u64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("vertex set is not independent")]
    NotIndependent,

    #[error("degenerate witness: the polynomial vanishes in the algebra")]
    DegenerateWitness,

    #[error("witness check failed: {0}")]
    WitnessCheck(String),

    #[error("block decomposition failed: {0}")]
    BlockStructure(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("degenerate sequence: every pair-sum difference is zero")]
    DegenerateSequence,

    #[error("graph is not well-covered")]
    NotWellCovered,

    #[error("independence number {got} does not match sequence length {expected}")]
    IndependenceNumber { expected: usize, got: usize },

    #[error("socle degree {d} is below independence number + 1 = {min}")]
    SocleDegree { d: usize, min: usize },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("invalid form: {0}")]
    InvalidForm(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
