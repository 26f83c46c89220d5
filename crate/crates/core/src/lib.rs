//! Exact value sequences, Hilbert functions of valuation ideals, and
//! refutation certificates for quasi-polynomial models.
//!
//! The crate works from the value data `r_0, r_1, ...` of a generating
//! sequence in a two-dimensional regular local ring. A target multiplicity
//! `C` in `[0, 1/2]` (equivalently the parameter `theta = 1/C - 2`) fixes the
//! values; from them we compute `alpha(n) = l(I_n / I_{n+1})` and the
//! cumulative length `l(R / I_n)` exactly.
//!
//! Module map:
//! - [`theta`]: the parameter, its digit expansion and the value sequence.
//! - [`hilbert`]: fast recursive evaluation of `alpha`, plateaus, error terms
//!   and envelope checks.
//! - [`oracle`]: brute-force enumeration of the monomial basis.
//! - [`quasifit`]: exact infeasibility certificates against
//!   quasi-polynomial-plus-bounded models.
//! - [`semigroup`]: the finite residue degree case.
//! - [`cli`]: the command-line front end.

pub mod cli;
mod error;
pub mod format;
pub mod hilbert;
pub mod oracle;
pub mod quasifit;
pub mod semigroup;
pub mod theta;

pub use error::{Error, Result};
pub use hilbert::{alpha_at, alpha_table, AlphaEvaluator, HilbertTable, Plateau};
pub use oracle::{alpha_bruteforce, enumerate_basis, ExponentTuple};
pub use quasifit::{refute, verify_certificate, ModelCandidate, RefutationCertificate, RefutationOutcome};
pub use semigroup::{conductor, members, DimensionModel, LinearTail, SemigroupSpec};
pub use theta::{build_value_sequence, expand_theta, DigitExpansion, Multiplicity, ThetaSpec, ValueSequence};
