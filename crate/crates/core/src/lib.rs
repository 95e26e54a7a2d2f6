//! Computational engine for two equivalent categories: relative group
//! presentations modulo Andrews-Curtis moves, and the free symmetric
//! monoidal category on a unimodular cocommutative Hopf algebra. Provides
//! the translation functors in both directions, an exact evaluation
//! functor induced by any finite group, a brute-force homomorphism
//! oracle, and a bounded bidirectional AC-equivalence search that emits
//! replayable certificates.

pub mod axioms;
pub mod canon;
pub mod error;
pub mod functors;
pub mod model;
pub mod pres;
pub mod search;
pub mod term;
pub mod text;
pub mod words;

pub use canon::{canonical_key, CanonicalKey};
pub use error::{Error, Result};
pub use functors::{omega, omega_bar, sigma_p, OmegaBarChoices, SigmaStrategy};
pub use model::{eval_term, hom_count, hom_oracle, FiniteGroup, GroupSpec, LinearMap};
pub use pres::{
    apply_moves, braiding_p, compose_p, elementary, eliminate, identity_p, tensor_p, AcMove,
    RelPresentation,
};
pub use search::{
    neighbors, search_equiv, verify_certificate, Certificate, SearchBounds, SearchOutcome,
    VerifyOutcome,
};
pub use term::{
    antipode_s0, delta_n, duality, gamma_nm, mu_n, s_w, tensor_t, then, upsilon, GenSym, HopfTerm,
};
pub use words::{permute_word, Generator, Letter, Permutation, ReduceMode, Sign, Word};
