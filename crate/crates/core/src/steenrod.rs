//! Action of the Steenrod squares on `H^*(RP^n; F_2) = F_2[x]/(x^{n+1})`.
//!
//! `Sq^i x^m = C(m, i) x^{m+i}`, so the parity of a binomial coefficient
//! decides every arrow. Only the indecomposable squares `Sq^{2^k}` produce
//! edges of the cell graph; the general action is kept for cross-checks.

use serde::{Deserialize, Serialize};

/// Largest exponent `k` whose square `Sq^{2^k}` has ghost filtration one.
/// `Sq^1, Sq^2, Sq^4, Sq^8` count once, everything from `Sq^16` up counts twice.
pub const LAST_FILTRATION_ONE_EXPONENT: u32 = 3;

/// `C(m, i) mod 2` via Lucas' theorem: odd exactly when the bits of `i`
/// are a subset of the bits of `m`.
#[inline]
pub fn binomial_mod2(m: u64, i: u64) -> u8 {
    u8::from(i & m == i)
}

/// Whether `Sq^{2^k} x^m` is a non-zero class in `H^*(RP^n)`.
///
/// The square is non-zero on `x^m` in `RP^infinity` iff bit `k` of `m` is set;
/// truncation at `n` kills it when the target dimension exceeds `n`.
#[inline]
pub fn sq_edge_exists(k: u32, m: u64, n: u64) -> bool {
    if m == 0 || k >= 63 {
        return false;
    }
    let step = 1u64 << k;
    (m >> k) & 1 == 1 && m.checked_add(step).is_some_and(|t| t <= n)
}

/// Ghost filtration counted for one application of `Sq^{2^k}`.
#[inline]
pub fn filtration_weight(k: u32) -> u32 {
    if k <= LAST_FILTRATION_ONE_EXPONENT {
        1
    } else {
        2
    }
}

/// A non-zero `Sq^{2^k}: x^source -> x^target` arrow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SqEdge {
    pub source: u64,
    pub k: u32,
    pub target: u64,
    pub weight: u32,
}

impl SqEdge {
    /// Returns the edge when `Sq^{2^k} x^source` survives in `RP^n`.
    pub fn new(source: u64, k: u32, n: u64) -> Option<Self> {
        sq_edge_exists(k, source, n).then(|| SqEdge {
            source,
            k,
            target: source + (1u64 << k),
            weight: filtration_weight(k),
        })
    }

    /// The `i` in `Sq^i`.
    pub fn degree(&self) -> u64 {
        1u64 << self.k
    }
}

/// All `Sq^{2^k}` arrows leaving `x^m` inside `RP^n`, in increasing `k`.
pub fn edges_from(m: u64, n: u64) -> impl Iterator<Item = SqEdge> {
    (0..u64::BITS - 1)
        .take_while(move |&k| m.checked_add(1u64 << k).is_some_and(|t| t <= n))
        .filter_map(move |k| SqEdge::new(m, k, n))
}
