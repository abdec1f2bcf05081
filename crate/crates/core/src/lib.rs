//! Exact verification of dimension, weight and tangent-map identities around
//! regular nilpotent elements of split reductive Lie algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactalg`]: prime fields, rationals, dense matrices, subspaces, dual
//!   numbers and polynomials.
//! * [`rootsys`]: root systems of types A–G, exponents, Coxeter spectra and
//!   the bad/good/very-good prime classification.
//! * [`chevalley`]: Chevalley-basis Lie algebras over `Z` and `F_p`, the
//!   regular nilpotent `Σ e_α` and the grading by `Σ_{β>0} β∨`.
//! * [`centralgebra`]: centralizers, normalizers and their weight multisets.
//! * [`typea`]: the matrix-level laboratory for `gl_n`.

mod error;
pub mod centralgebra;
mod check;
pub mod chevalley;
pub mod exactalg;
pub mod rootsys;
pub mod typea;

pub use error::{Error, Result};
pub use exactalg::{DenseMatrix, Field, FieldScalar, Subspace};
pub use rootsys::{CartanType, PrimeClass, RootKind, RootSystem};
pub use check::{Check, Verdict};
