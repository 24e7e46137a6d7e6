//! Shared inputs for the benchmarks.

use gapforge::codes::hadamard_code;
use gapforge::field::{make_field, Felem};
use gapforge::gadget::sample_rademacher;
use gapforge::MatZ;

/// Generator columns of the binary Hadamard code of dimension `m`.
pub fn hadamard_gens(m: u32) -> Vec<Vec<Felem>> {
    hadamard_code(&make_field(2, 1).expect("F_2"), m).expect("small code").g.columns()
}

/// A seeded `h x n` sign matrix.
pub fn signs(h: usize, n: usize, seed: u64) -> MatZ {
    sample_rademacher(h, n, seed)
}
