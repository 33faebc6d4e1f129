//! Cyclic index arithmetic modulo `n + 1`.
//!
//! Every place that reads an index of the affine Dynkin diagram through the
//! congruence `a ≡ b (mod n+1)` goes through these helpers.

/// The representative of `a` modulo `n + 1` in `0..=n`.
pub fn residue(a: i64, n: usize) -> usize {
    a.rem_euclid(n as i64 + 1) as usize
}

/// Whether `a ≡ b (mod n + 1)`.
pub fn congruent(a: i64, b: i64, n: usize) -> bool {
    residue(a - b, n) == 0
}

/// The element `r` of `0..=n` with `r + sum ≡ 0 (mod n + 1)`.
pub fn res_of_sum(sum: i64, n: usize) -> usize {
    residue(-sum, n)
}
