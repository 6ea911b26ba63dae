//! Exact rational polyhedral geometry for toric quotient constructions.
//!
//! Everything here is computed over ℚ with arbitrary-precision integers;
//! no floating point is used anywhere. The library provides
//!
//! * exact linear algebra over ℚ and ℤ (Hermite normal form, kernel and
//!   image lattices) in [`exact`],
//! * rational polyhedra with certified dual descriptions via an exact
//!   double description engine in [`polyhedron`],
//! * fans and polyhedral complexes with common refinement, induced fans
//!   and exact fan equality in [`fan`],
//! * fiber fans, GIT chamber complexes, GIT quotient fans, toric Chow
//!   quotient fans and duality verifiers in [`quotient`],
//! * a versioned text format, a seeded instance generator and an SVG
//!   renderer in [`io`], [`corpus`] and [`svg`].

pub mod corpus;
mod dd;
pub mod error;
pub mod exact;
pub mod fan;
pub mod io;
pub mod polyhedron;
pub mod quotient;
pub mod svg;

pub use error::Error;
pub use exact::{IntMatrix, Integer, RatMatrix, Rational};
pub use fan::{Fan, PolyhedralComplex};
pub use polyhedron::{Face, HRep, Polyhedron, VRep};
pub use quotient::{ProjectionContext, VerificationReport, VerifyStatus};
