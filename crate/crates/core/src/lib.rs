//! Symplectic quandles over finite commutative rings and their good
//! involutions.
//!
//! The crate builds `(M, *)` with `x*y = x + <x,y>y` for a free module
//! `M = R^k` and an alternating Gram form, enumerates good involutions with
//! a propagating backtracking search, and reproduces the structural results
//! about them through the checks in [`harness`].

pub mod config;
pub mod error;
pub mod freemod;
pub mod gaussian;
pub mod harness;
pub mod quandle;
pub mod ring;
pub mod search;
pub mod symplectic;

pub use error::{AxiomError, Error, Result};
pub use freemod::{FormSpec, FreeModule, GramForm, ModuleVector};
pub use quandle::{FiniteQuandle, Permutation};
pub use ring::{Elem, Ring, RingDescriptor};
pub use search::{
    candidate_sets, classify_linear_involution, enumerate_good_involutions,
    enumerate_linear_good_involutions, is_good_involution, Enumeration, LinearFlags, LinearMap,
};
pub use symplectic::{is_trivial_symplectic, SymplecticQuandle};

/// Runs `f` on a dedicated rayon pool with `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}
