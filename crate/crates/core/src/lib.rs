//! Exact-arithmetic library for degeneration, extension, and AR orders of
//! Cohen-Macaulay modules over one-variable power series rings, their
//! artinian quotients, and even-dimensional (A_n) hypersurface
//! singularities, together with the matrix-factorization transport the
//! decision procedures rest on.
//!
//! Everything is exact (integers and Gaussian rationals), immutable after
//! construction, and deterministic; all enumeration orders are fixed.

pub mod an;
pub mod ar;
pub mod cyclic;
pub mod error;
pub mod expr;
pub mod gauss;
pub mod hasse;
pub mod linalg;
pub mod matrix;
pub mod mf;
pub mod partition;
pub mod poly;

pub use an::{ANModule, ANRing, KappaClass, RankTable};
pub use ar::{ArSequence, ClosureBounds, ClosureTag, GroupElement, OrderClosure};
pub use cyclic::{CyclicModule, ExtWitness, Modulus, PaddedDominance};
pub use error::{Error, Result};
pub use gauss::GaussRational;
pub use hasse::HasseDiagram;
pub use matrix::PolyMatrix;
pub use mf::{MFPair, MfCheck};
pub use partition::Partition;
pub use poly::Poly;
