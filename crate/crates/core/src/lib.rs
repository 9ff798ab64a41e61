//! Exact arithmetic for deciding monogeneity of radical and Kummer extensions:
//! integer and finite-field toolkits, number fields given by a monic generator,
//! prime splitting, index criteria, and the monogeneity verdict procedures.

pub mod dedekind;
pub mod error;
pub mod fqpoly;
pub mod intkit;
pub mod monogenic;
pub mod numfield;
pub mod zxpoly;

pub use dedekind::{LocalVerdict, RelativeVerdict, SplittingShape};
pub use error::{Error, ErrorClass, Result};
pub use intkit::FactorBudget;
pub use monogenic::{EddReport, Status, Verdict, WieferichDatum, Witness};
pub use numfield::{FieldElem, FieldOptions, NumberField, PrimeIdeal, PrimeLabel, RelPoly};
pub use zxpoly::IntPoly;
