//! Exact sum-of-squares and sos-convexity certificates for polynomial forms.

pub mod biquadratic;
pub mod certificates;
pub mod cli;
pub mod corpus;
pub mod dual;
pub mod error;
pub mod face;
pub mod form;
pub mod linalg;
pub mod rational;
pub mod search;
mod textio;

pub use biquadratic::{hessian_biquadratic, BiquadraticForm, MonomialOrdering};
pub use certificates::{ldlt_psd_check, LdltReport, PsdVerdict, SosCertificate};
pub use dual::DualCertificate;
pub use error::{Error, Result};
pub use form::{Form, Monomial, PolyMatrix};
pub use linalg::{RationalMatrix, SymRationalMatrix};
pub use rational::Rational;
