use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("matrix is singular")]
    Singular,

    #[error("bilinear form is degenerate")]
    Degenerate,

    #[error("structure constants are inconsistent: {0}")]
    InconsistentBrackets(String),

    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),

    #[error("not a Lie subalgebra: bracket of basis vectors {0} and {1} leaves the subspace")]
    NotSubalgebra(usize, usize),

    #[error("not coisotropic: {0}")]
    NotCoisotropic(String),

    #[error("orthogonal space is not an ideal: {0}")]
    NotIdeal(String),

    #[error("bivector is not ad-invariant: fails for basis vector {0}")]
    NotAdInvariant(usize),

    #[error("subspaces are not complementary: {0}")]
    NotComplement(String),

    #[error("invalid groupoid data: {0}")]
    InvalidGroupoid(String),

    #[error("invalid module data: {0}")]
    InvalidModule(String),

    #[error("elements are not composable: {0}")]
    NotComposable(String),

    #[error("inconsistent linear system: {0}")]
    InconsistentSystem(String),

    #[error("invalid group element: {0}")]
    InvalidGroupElement(String),

    #[error("triple is not exact")]
    NotExact,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected,
            found,
        })
    }
}
