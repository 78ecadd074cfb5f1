//! Executable tame-topology calculus.
//!
//! * [`ordinal`]: ordinals below ε₀ in Cantor normal form.
//! * [`tame1d`]: exact definable subsets of the line (intervals plus chain forests),
//!   Cantor-Bendixson derivatives and ranks, locally closed decomposition and
//!   weak stratification of the line.
//! * [`cellcomplex`]: Pillay rank on finite stratified complexes.
//! * [`whitney`]: numerical checks of Whitney (a), (b) and Verdier (w) on parametric pairs.
//! * [`acceptance`]: the self-test suite shared by the test harness and the CLI.

pub mod acceptance;
pub mod cellcomplex;
pub mod ordinal;
pub mod tame1d;
pub mod whitney;

pub use cellcomplex::{ComplexError, StratComplex, StrataSet};
pub use ordinal::{Ordinal, OrdinalError};
pub use tame1d::{ExtRat, Rat, Tame1DSet, TameError, ZeroDimSet};

/// Expression trees evaluated in double precision.
pub type Expr64 = whitney::Expr<f64>;
/// Expression trees evaluated in single precision.
pub type Expr32 = whitney::Expr<f32>;
/// Parametric manifolds in double precision.
pub type ParamManifold64 = whitney::ParamManifold<f64>;
/// Whitney pair specifications in double precision.
pub type PairSpec64 = whitney::PairSpec<f64>;
/// Whitney pair specifications in single precision.
pub type PairSpec32 = whitney::PairSpec<f32>;
