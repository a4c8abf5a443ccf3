use core::fmt;

/// Errors surfaced by constructors and transforms.
///
/// Shape mismatches (vector length vs. modulus, operator dimensions) are
/// programming errors and panic instead of returning a variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The modulus is not a prime number.
    NotPrime(u64),
    /// Primes below 5 break the `1/2` and `1/4` scalars used throughout.
    PrimeTooSmall(u64),
    /// Moduli must fit comfortably in 64-bit products; we cap at `2^31`.
    PrimeTooLarge(u64),
    /// Inversion of zero in `F_p`.
    DivisionByZero,
    /// `-1` is a square in `F_p` only for `p = 1 (mod 4)`.
    NoSquareRootOfMinusOne(u64),
    /// Matrix entries do not satisfy `det = 1`.
    NotUnimodular,
    /// `g - 1` is singular, so the Cayley transform (and with it the direct
    /// kernel formula) does not apply to `g`.
    NonGenericElement,
    /// The element is lower triangular; it acts by a chirp times a scaling
    /// and does not admit the two-chirp Fourier factorization.
    MonomialElement,
    /// Discrete logarithm requested for an element outside the torus.
    NotInTorus,
    /// The supplied element does not generate the full torus.
    NotAGenerator,
    /// No conjugation into the diagonal torus exists inside `SL2(F_p)` for a
    /// non-split torus.
    NonSplitTorus,
    /// The character does not appear in the spectral decomposition, so there
    /// is no eigenvector to return.
    EmptyCharacterSpace,
    /// The requested character space is a plane, not a line; callers must go
    /// through the full eigenbasis, which fixes a labelled orthonormal pair.
    NotOneDimensional,
    /// The fast transform needs the fourth-root torus to be split, i.e.
    /// `p = 1 (mod 4)`. No fast algorithm is known on the non-split side.
    FastPathUnavailable(u64),
    /// The brute-force spectral oracle refuses dimensions above its budget.
    OracleBudgetExceeded { p: u64, budget: u64 },
    /// An internal numerical cross-check failed; the message names it.
    NumericalFailure(&'static str),
    /// Normalization of a (numerically) zero vector.
    ZeroVector,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(n) => write!(f, "{n} is not prime"),
            Error::PrimeTooSmall(n) => write!(f, "prime {n} is below the minimum supported modulus 5"),
            Error::PrimeTooLarge(n) => write!(f, "prime {n} exceeds the 2^31 modulus cap"),
            Error::DivisionByZero => write!(f, "division by zero in F_p"),
            Error::NoSquareRootOfMinusOne(p) => {
                write!(f, "-1 has no square root mod {p} (p = 3 mod 4)")
            }
            Error::NotUnimodular => write!(f, "matrix determinant is not 1"),
            Error::NonGenericElement => {
                write!(f, "g - 1 is singular; no Cayley transform for this element")
            }
            Error::MonomialElement => {
                write!(f, "lower-triangular element acts monomially; no Fourier factorization")
            }
            Error::NotInTorus => write!(f, "element does not lie in the torus"),
            Error::NotAGenerator => write!(f, "element does not generate the full torus"),
            Error::NonSplitTorus => {
                write!(f, "torus is non-split; it cannot be conjugated to the diagonal over F_p")
            }
            Error::EmptyCharacterSpace => {
                write!(f, "character does not occur in the decomposition")
            }
            Error::NotOneDimensional => {
                write!(f, "character space is two-dimensional; use the full eigenbasis")
            }
            Error::FastPathUnavailable(p) => write!(
                f,
                "fast transform requires p = 1 (mod 4), got p = {p}; \
                 no fast algorithm is known for the non-split case"
            ),
            Error::OracleBudgetExceeded { p, budget } => {
                write!(f, "oracle budget {budget} exceeded by p = {p}")
            }
            Error::NumericalFailure(what) => write!(f, "numerical cross-check failed: {what}"),
            Error::ZeroVector => write!(f, "cannot normalize a zero vector"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
