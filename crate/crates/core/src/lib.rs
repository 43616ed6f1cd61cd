//! Super-indexed fermionic qubits: states over unordered index sets, order-free
//! ladder operators, a sparse Clifford algebra for gates, and the exterior
//! algebra and spinor-ideal models, all checked against dense Jordan-Wigner
//! matrices.

pub mod clifford;
pub mod dense;
pub mod error;
pub mod grassmann;
pub mod ladder;
pub mod sample;
pub mod scalar;
pub mod spinor;
pub mod sq;
pub mod verify;

pub use clifford::{Blade, CliffordElement, GateSpec, GeneratorLabel, GeneratorSet};
pub use dense::{DenseOperator, DenseVector};
pub use error::{Error, Result};
pub use grassmann::GrassmannForm;
pub use ladder::{Ladder, LadderOp};
pub use scalar::C64;
pub use spinor::{IdealElement, LambdaFactor};
pub use sq::{BasisState, IndexLabel, IndexSet, Permutation, SState, Sign};
pub use verify::{compare_models, ModelReport};
