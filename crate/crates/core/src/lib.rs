//! Exact arithmetic of forms of higher degree.
//!
//! The crate decides isotropy of diagonal and general forms over small finite fields,
//! computes d-th levels, diagonal u-invariants and Waring numbers there, and carries
//! those values to p-adic and iterated Laurent series fields through residue forms.
//!
//! Form types are generic over their scalar type; every operation takes a [`Scalars`]
//! context. [`FieldDescriptor`] is the context for F_q, [`NumScalars`] wraps any
//! `num-traits` number (see the [`Rationals`] and [`Reals`] aliases).

pub mod bitset;
pub mod construct;
pub mod error;
pub mod forms;
pub mod gf;
pub mod invariants;
pub mod isotropy;
pub mod scalar;
pub mod tensor;
pub mod text;
pub mod valued;

pub use bitset::ElemSet;
pub use error::{Error, Result};
pub use forms::{diagonal_isomorphic, DiagonalForm, PolyForm};
pub use gf::{dth_powers, make_field, power_classes, FieldDescriptor, GfElem, PowerClassTable};
pub use invariants::{InvariantReport, InvariantValue, Witness};
pub use isotropy::{Isotropy, IsotropyVerdict};
pub use scalar::{NumScalars, Scalars};
pub use tensor::{polarize, SymmetricTensor};
pub use valued::{
    ValuedCoeff, ValuedDiagonalForm, ValuedFieldDescriptor, ValuedKind, ValuedVerdict,
};

use num_rational::Rational64;

/// Exact rational scalars.
pub type Rationals = NumScalars<Rational64>;
/// Double-precision scalars.
pub type Reals = NumScalars<f64>;
/// Single-precision scalars.
pub type Reals32 = NumScalars<f32>;

pub type GfDiagonalForm = DiagonalForm<GfElem>;
pub type GfPolyForm = PolyForm<GfElem>;
pub type GfTensor = SymmetricTensor<GfElem>;
pub type RationalDiagonalForm = DiagonalForm<Rational64>;
pub type RationalPolyForm = PolyForm<Rational64>;
pub type RationalTensor = SymmetricTensor<Rational64>;
