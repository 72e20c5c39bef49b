//! Exact differential forms over rational function fields of characteristic p.
//!
//! Layers, bottom-up:
//! - [`field`]: F_p, sparse polynomials, canonical rational functions and the
//!   Frobenius expansion over the variable p-basis.
//! - [`forms`]: d, wedge, s_p, the Artin–Schreier map on forms and the Cartier
//!   operator with the closed / exact / logarithmic tests it decides.
//! - [`extensions`]: purely inseparable extensions as explicit embeddings
//!   into a second rational function field, and restriction of forms.
//! - [`hp`]: congruence certificates modulo `wp(Omega^n) + d(Omega^(n-1))`,
//!   generator systems of the kernel of `H_p^(n+1)(F) -> H_p^(n+1)(E)` and
//!   witnesses that they vanish over E.
//! - [`witt`]: quadratic and bilinear forms in characteristic 2 with
//!   isometry and Lagrangian certificates.
//! - [`oracle`]: bounded linear-algebra search for witnesses, used as an
//!   independent check.

pub mod error;
pub mod extensions;
pub mod field;
pub mod forms;
pub mod hp;
pub mod oracle;
pub mod text;
pub mod witt;

pub use error::{Error, Result};
pub use field::{FunctionField, RatFunc};
pub use forms::{DiffForm, IndexTuple};
