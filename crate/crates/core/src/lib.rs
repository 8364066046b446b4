//! Lower bounds on the concurrence of tripartite quantum states from
//! generalized partial transpositions (GPT) and trace norms.
//!
//! The pieces:
//!
//! * [`tensor`] and [`linalg`]: dense complex matrices, tripartite states,
//!   partial traces, Jacobi eigenvalues and singular values.
//! * [`gpt`]: the slot-flip algebra behind partial transposition and
//!   realignment, with the nine catalog operations `Y1..Y9`.
//! * [`concurrence`]: pure-state concurrence and three-qubit closed forms.
//! * [`states`]: GHZ basis, GHZ-diagonal (DCT) mixtures, seeded random states.
//! * [`bounds`]: the three-qubit, general-dimension and special-type bounds.
//! * [`verify`]: Monte-Carlo campaigns checking the bounds numerically.
//! * [`statefile`]: JSON state files.
//!
//! ```
//! use triconc::{bounds::bound_theorem1, states::{dct_state, DctWeights}};
//!
//! let rho = dct_state(&DctWeights::worked_example());
//! let report = bound_theorem1(&rho).unwrap();
//! assert!((report.lower_bound - 1.0 / 3.0).abs() < 1e-9);
//! ```

pub mod bounds;
pub mod concurrence;
pub mod config;
pub mod error;
pub mod gpt;
pub mod linalg;
pub mod statefile;
pub mod states;
pub mod tensor;
pub mod verify;

pub use num_complex::Complex64;

pub use bounds::{bound_corollary, bound_theorem1, bound_theorem2, proof_cut_inequalities, BoundReport, Theorem};
pub use concurrence::{concurrence_pure, schmidt_state, SchmidtParams};
pub use config::Tolerances;
pub use error::{Error, Result};
pub use gpt::{apply_gpt, gpt_norm, is_gpt_entangled, CatalogOp, GptOperation, IndexSlot, Side};
pub use linalg::{hermitian_eigenvalues, singular_values, trace_norm};
pub use states::RngSeed;
pub use tensor::{flat_index, outer_product, partial_trace, purity, ComplexMatrix, PureState, Subsystem, SystemDims, TripartiteState};
