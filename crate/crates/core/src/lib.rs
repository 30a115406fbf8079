//! Exact symbolic engine for the Laplace Hopf algebra of a finite-dimensional
//! bosonic field space.
//!
//! Normal products live in the symmetric algebra S(V). A bilinear pairing on V
//! deforms the symmetric product into the circle product (operator product for
//! antisymmetric pairings, time-ordered product for symmetric ones), and a
//! renormalisation scheme ζ deforms it further into the renormalised circle
//! product. On top of that sit the T-maps, Fock-space projections and
//! truncated S-matrix / Green-function series. All arithmetic is over exact
//! Gaussian rationals.

pub mod algebra;
pub mod error;
pub mod fock;
pub mod laplace;
pub mod par;
pub mod random;
pub mod renorm;
pub mod scalar;
pub mod series;
pub mod tmaps;

pub use algebra::{divided_power, iterated_coproduct, Element, Monomial, MultiTensor, TensorElement};
pub use error::{Error, Result};
pub use fock::FockStructure;
pub use laplace::{PairingMatrix, PermanentKernel, SquareMatrix};
pub use renorm::{Functional, Renormaliser, Scheme};
pub use scalar::Scalar;
pub use series::FormalSeries;
pub use tmaps::TContext;
