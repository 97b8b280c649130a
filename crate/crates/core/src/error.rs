use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} is out of range for {n} generators")]
    LetterOutOfRange { letter: usize, n: usize },

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("operation needs n = 2, got n = {0}")]
    NeedsTwoGenerators(usize),

    #[error("not invertible ({0})")]
    NotInvertible(NonInvertibleReason),

    #[error("product {product} of basis word {word} escapes the span of {codomain}")]
    EscapesSpan {
        word: String,
        product: String,
        codomain: String,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("composition mismatch at index {index}: {detail}")]
    ChainMismatch { index: usize, detail: String },

    #[error("cocycle is not regular (first failure at index {0})")]
    NotRegular(usize),

    #[error("not a functor: {0}")]
    NotAFunctor(String),

    #[error("degenerate pairing on {0}")]
    DegeneratePairing(String),

    #[error("non-homogeneous element {0}")]
    NotHomogeneous(String),

    #[error("tensor sign conventions differ")]
    ConventionMismatch,

    #[error("cross symmetry base is missing the pair (X{0}, T{1})")]
    IncompleteBase(usize, usize),

    #[error("cross symmetry is incoherent at degree {degree}: {witness}")]
    Incoherent { degree: usize, witness: String },

    #[error("invalid scalar literal {0:?}")]
    ScalarSyntax(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonInvertibleReason {
    ZeroConstant,
    ZeroDeterminant,
}

impl std::fmt::Display for NonInvertibleReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NonInvertibleReason::ZeroConstant => write!(f, "a0 = 0"),
            NonInvertibleReason::ZeroDeterminant => write!(f, "D = 0"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
