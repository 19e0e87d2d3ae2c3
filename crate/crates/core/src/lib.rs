//! Exact computations with toric face rings: monoidal complexes on rational
//! fans, their presentation ideals, binomial Gröbner bases, Betti numbers of
//! the residue field and Koszul-type properties.

pub mod complex;
pub mod document;
pub mod hmonoid;
pub mod homology;
pub mod ideal;
pub mod koszul;
pub mod numeric;
pub mod polyhedral;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Document(#[from] document::DocumentError),
    #[error(transparent)]
    Complex(#[from] complex::ComplexError),
    #[error(transparent)]
    Ideal(#[from] ideal::IdealError),
    #[error(transparent)]
    Koszul(#[from] koszul::KoszulError),
}

impl Error {
    /// Whether the error reports a resource guard rather than bad input.
    pub fn is_bound_exceeded(&self) -> bool {
        matches!(
            self,
            Error::Koszul(koszul::KoszulError::BoundExceeded(_))
                | Error::Koszul(koszul::KoszulError::H(hmonoid::HError::IntervalTooLarge { .. }))
                | Error::Complex(complex::ComplexError::BoundExceeded { .. })
        )
    }
}
