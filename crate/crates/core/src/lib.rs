//! Exact symbolic tools for polynomial derivations over Q: polynomial
//! arithmetic, a text grammar, simplicity and nilpotency tests, bounded image
//! membership, and a Mathieu-Zhao classifier with a command-line front end.

pub mod classify;
pub mod cli;
pub mod derivation;
pub mod linalg;
pub mod membership;
pub mod ode;
pub mod parse;
pub mod poly;
pub mod resonance;
pub mod selfcheck;
pub mod simplicity;

pub use classify::{classify, ClassifyOptions, Status, Verdict};
pub use derivation::{Derivation, ShamsuddinForm, TriangularForm};
pub use membership::{BoundedCertificate, DegreeBounds};
pub use parse::{parse_derivation, parse_poly, ParseError};
pub use poly::{Polynomial, Rational, VarContext};
