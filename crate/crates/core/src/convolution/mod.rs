//! Additive convolution and middle convolution along a good line.

mod compose;
mod convolve;
mod iso;

pub use compose::{verify_composition_law, CompositionReport, LawCheck};
pub use convolve::{
    block_order, convolve, convolve_unchecked, expected_mc_dim, kernel_subspaces, middle_convolve,
    quotient_system, subspace_invariant, ConvolutionResult, Quotient,
};
pub use iso::{
    find_invertible, intertwiner_space, is_isomorphic, IsoReport, SearchMethod,
    EXACT_SEARCH_MAX_DIM, ISO_SEED,
};
