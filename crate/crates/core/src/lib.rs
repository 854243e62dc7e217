//! Plethories of K-theory operations and their looping.

pub mod error;
pub mod evenops;
pub mod exterior;
mod lex;
pub mod poly;
pub mod report;
pub mod kbu;
pub mod loopgrade;
pub mod models;
pub mod setzz;
pub mod symmetric;
pub mod syntax;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{Family, IntPoly, Monomial, Var};
