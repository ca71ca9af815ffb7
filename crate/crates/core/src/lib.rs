//! Strong discrete Morse reductions of finite simplicial complexes.
//!
//! Complexes are built from facet lists ([`SimplicialComplex`]). The
//! engines in [`reduce`] compute minimal strong and weak cores and strong
//! internal cores, each with a replayable trace, and [`homology`] checks
//! the results with integer homology.

pub(crate) mod collapse;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod io;
pub mod morse;
pub mod poset;
pub mod reduce;

pub use complex::{retract_simplex, Simplex, SimplicialComplex, VertexFunction, VertexId};
pub use error::{Error, Result};
pub use homology::{homology, verify_reduction, HomologyProfile};
pub use morse::{validate_matching, Matching};
pub use poset::{critical_poset, face_poset, order_complex, FinitePoset};
pub use reduce::{
    combined_reduction, minimal_strong_core, minimal_weak_core, reduce, replay, strong_internal_core,
    strong_morse_reduction, CoreKind, CoreResult, FixedOrder, RandomPolicy, ReductionPolicy,
};
