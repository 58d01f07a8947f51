//! Braid words on `n` strands, the `PSL(2,Z)` quotient of `B_3`, and
//! homogeneous quasi-morphisms built from the Rademacher function.

mod linking;
mod psl;
mod qm;
mod word;

pub use linking::linking_numbers;
pub use psl::{dedekind_sum, psl_image, rademacher, rademacher_phi, PslMatrix};
pub use qm::{defect_sample, homogenize, phi_b3, DefectEstimate, QmSpec, WordSampler, RADEMACHER_DEFECT_BOUND};
pub use word::{braid_permutation, free_reduce, writhe, BraidWord};
