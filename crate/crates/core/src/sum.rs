//! Fixed-order summation.
//!
//! All reductions in the crate go through [`pairwise_sum`] so that results do
//! not depend on how work is split across threads.

const BLOCK: usize = 16;

/// Pairwise (cascade) summation with a sequential base case of 16 terms.
///
/// The split point is `len / 2`, so the association order is a pure function
/// of the slice length.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= BLOCK {
        let mut acc = 0.0;
        for &v in values {
            acc += v;
        }
        acc
    } else {
        let (lo, hi) = values.split_at(values.len() / 2);
        pairwise_sum(lo) + pairwise_sum(hi)
    }
}
