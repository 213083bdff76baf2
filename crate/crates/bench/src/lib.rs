//! Shared inputs for the `kernels` benchmarks.

use excedance::perm::all_permutations;
use excedance::Permutation;

/// All of `S_n`, collected once so that the benchmarks time the kernels
/// rather than the enumeration.
pub fn symmetric_group(n: usize) -> Vec<Permutation> {
    all_permutations(n).expect("size within the enumeration guard").collect()
}
