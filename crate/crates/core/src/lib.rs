//! Core kernel for conformal Lorentzian geometry in dimension three:
//! crooked planes in Minkowski space, their anti-de Sitter analogues,
//! and crooked surfaces in the Einstein universe, together with the
//! sampling-based verification suites tying the three pictures together.

pub mod constants;
pub mod ads;
pub mod crooked_ads;
pub mod crooked_e3;
pub mod ein;
pub mod embed;
pub mod error;
pub mod sl2;
pub mod verify;

pub use error::{GeomError, Result};
