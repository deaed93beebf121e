//! Exact toolkit for tamely ramified Weil-Deligne representations with
//! coefficients in `E = Q(zeta_N)(sqrt q)`.
//!
//! * [`scalar`]: exact arithmetic in `E` and Weil weights.
//! * [`matrix`]: dense matrices, subspaces, characteristic polynomials and
//!   multiplicative Jordan decomposition.
//! * [`wdrep`]: representations `(S, F, N)`, the monodromy filtration, purity,
//!   Frobenius-semisimplification and trace panels.
//! * [`irred`]: irreducibles in induced normal form and constituent multisets.
//! * [`structure`]: special-block decomposition, peel/reconstruct, isomorphism
//!   and twist-equivalence certificates.
//! * [`wire`] and [`cli`]: JSON wire forms, the command dispatcher and the
//!   seeded generator.

pub mod cli;
pub mod error;
pub mod irred;
pub mod matrix;
pub mod scalar;
pub mod structure;
pub mod wdrep;
pub mod wire;

pub use error::{Error, Result};
pub use irred::{ConstituentMultiset, InducedIrrep};
pub use matrix::MatrixE;
pub use scalar::{FieldCtx, Scalar};
pub use structure::{SpecialBlock, TwistCertificate, TwistOutcome};
pub use wdrep::WDRep;
