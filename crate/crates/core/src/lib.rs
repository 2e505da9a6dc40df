//! Witt-vector structures over free associative algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`ncpoly`]: exact arithmetic in the free ring `Z{S}` over a finite
//!   alphabet, its commutativization `Z[S]`, and the polynomial text grammar.
//! * [`necklace`]: the additive quotient `A/[A,A]`, realised on cyclic words.
//! * [`ghost`]: Teichmüller and Verschiebung operators, formal sums
//!   `sum c * V^n<a>` evaluated in `A^N`, ghost components and the
//!   divisibility obstruction.
//! * [`wittpoly`]: universal Witt sum/difference polynomials and their
//!   two-variable specialisations, Witt-coordinate addition and the
//!   Teichmüller sum/difference relations checked on ghost components.
//! * [`indep`]: exact integer kernels and the linear-independence harness for
//!   Teichmüller vectors, with a seeded sampler of hard instances.

pub mod error;
pub mod ghost;
pub mod indep;
pub mod ncpoly;
pub mod necklace;
pub mod random;
pub mod wittpoly;

pub use error::{Error, ParseError, Result};
pub use ghost::{FormalXElement, GhostVector, Obstruction, WittContext, WittCoords};
pub use indep::{IndependenceInstance, Verdict};
pub use ncpoly::{Algebra, CPoly, NcPoly, VarId, VarOrder, Word};
pub use necklace::{Necklace, NecklacePoly};
pub use wittpoly::{LiftStrategy, WittPolySet};
