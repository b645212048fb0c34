//! Right-angled Coxeter groups, their Hecke algebras, and desk-scale
//! certificates for the factoriality of Hecke-von Neumann algebras.
pub mod center;
pub mod cosets;
pub mod coxeter;
pub mod error;
pub mod free_products;
pub mod groupfile;
pub mod growth;
pub mod hecke;
pub mod laurent;
pub mod oracle;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
