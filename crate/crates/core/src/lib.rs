//! Finite topological spaces, Vietoris-type hyperspace topologies, the
//! unordering quotient `q(f) = cl(f(Y))` of function spaces, and Hausdorff
//! distance, together with a verifier that checks the relations between
//! these topologies exhaustively on enumerated finite instances.

pub mod error;
pub mod exec;
pub mod hyperspace;
pub mod io;
pub mod mask;
pub mod metric;
pub mod topology;
pub mod verifier;

pub use error::{Error, Result};
pub use exec::Execution;
pub use hyperspace::{FunctionFamily, HyperKind, HyperStructure, SubsetSequence, TopologyExpr};
pub use mask::Mask;
pub use metric::{FiniteMetricSpace, HausdorffVariant};
pub use topology::{Comparison, EventualSequence, FiniteSpace, SpaceMap, Topology};
