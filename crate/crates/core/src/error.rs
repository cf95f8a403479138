use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors for all word, graph and survey operations.
///
/// Messages name the violated precondition, or for `Unrealizable` the
/// mathematical fact that forbids the request.
#[derive(Debug, Error)]
pub enum Error {
    #[error("symbol {symbol} occurs {count} times, expected exactly 2")]
    NotDoubleOccurrence { symbol: u32, count: usize },

    #[error("empty token in word input")]
    EmptyToken,

    #[error("symbol '{0}' is not a positive integer")]
    NonPositiveSymbol(String),

    #[error("invalid token '{0}' in word input")]
    InvalidToken(String),

    #[error("position {position} out of range for a word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("cut index {cut} out of range for a word of length {len}")]
    CutOutOfRange { cut: usize, len: usize },

    #[error("symbol {0} does not occur in the word")]
    SymbolAbsent(u32),

    #[error("{0}")]
    InvalidParameter(String),

    #[error("operation requires a nonempty word")]
    EmptyWord,

    #[error("embedding choice has {choice} bits but the graph has {vertices} vertices")]
    ChoiceSizeMismatch { choice: usize, vertices: usize },

    #[error("vertex index {index} out of range for {vertices} vertices")]
    VertexOutOfRange { index: usize, vertices: usize },

    #[error("edge index {index} out of range 1..={edges}")]
    EdgeOutOfRange { index: usize, edges: usize },

    #[error("invalid embedding bit string '{0}': expected {1} characters, each '0' or '1'")]
    BadBitString(String, usize),

    #[error(
        "graph size {n} exceeds the exhaustive enumeration cap {cap} \
         (2^{n} embeddings); raise the cap explicitly to proceed"
    )]
    OverCap { n: usize, cap: usize },

    #[error(
        "survey size {n} exceeds the cap {cap}: roughly {candidates} candidate \
         words times 2^{n} embeddings each; raise the cap explicitly to proceed"
    )]
    SurveyOverCap { n: usize, cap: usize, candidates: u128 },

    #[error("genus range {0} is impossible: {1}")]
    Unrealizable(String, String),

    #[error("genus range {0} with {1} vertices is outside the constructively realizable family: {2}")]
    NotKnownRealizable(String, usize, String),

    #[error("checkpoint line {line}: {message}")]
    Checkpoint { line: usize, message: String },

    #[error("resume word is not in canonical form: {0}")]
    BadResumeWord(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
