//! Numerical toolkit for braided finite quantum groups: multiplicative
//! unitaries, bicharacters, Yetter–Drinfeld coactions, twisted tensor
//! products and braided bialgebras, all on finite-dimensional Hilbert
//! spaces.

pub mod algebra;
pub mod bialgebra;
pub mod bicharacter;
pub mod catalog;
pub mod coaction;
pub mod corep;
pub mod error;
pub mod qgroup;
pub mod tensor;
pub mod twisted;

pub use error::{Error, Result};
pub use tensor::{ComplexMatrix, Tolerance, UnitaryMatrix, C64};
