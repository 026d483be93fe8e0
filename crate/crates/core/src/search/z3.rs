//! Bounded search for nontrivial solutions of
//! `(x-1) x (x+1) (y-1) y (y+1) = (z-1) z (z+1)` with `y = x + k`.
//!
//! For each `k` the window `x <= fib_bound(k)` is complete: beyond it, the
//! product is trapped strictly between consecutive cubes around
//! `x^2 + kx`, so the only solutions are the Fibonacci family members
//! `(F_{2n-1}, F_{2n+1}, F_{2n}^2)` at `k = F_{2n}`, which sit just inside
//! the bound.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::roots::{exact_sqrt_u128, exact_triple_u128};
use super::{sort_dedup, SolutionRecord, Tags};
use crate::pellfam::EquationId;
use crate::runge;

/// Largest `k` the `u128` fast path provably covers (the full product stays
/// far below 2^127 there).
const K_LIMIT: u64 = 1_000_000;

/// True iff `(x, y, z)` is a Fibonacci family member: `5k^2 + 4` a perfect
/// square, `x = (sqrt(5k^2+4) - k) / 2` and `z = k^2`.
fn is_fibonacci_member(k: u64, x: u64, z: u128) -> bool {
    let disc = 5u128 * (k as u128) * (k as u128) + 4;
    match exact_sqrt_u128(disc) {
        None => false,
        Some(s) => {
            s >= k as u128 && (s - k as u128) == 2 * x as u128 && z == (k as u128) * (k as u128)
        }
    }
}

/// Scan one `k`. Solutions need `z >= 2` (a vanishing side is degenerate).
pub fn search_z3_k(k: u64) -> Vec<SolutionRecord> {
    assert!((1..=K_LIMIT).contains(&k), "k out of supported range");
    let bound = runge::fib_bound(&BigInt::from(k))
        .to_u64()
        .expect("bound fits u64");
    let mut out = Vec::new();
    for x in 1..=bound {
        let y = x + k;
        let fx = (x as u128 - 1) * x as u128 * (x as u128 + 1);
        if fx == 0 {
            continue; // x = 1: both sides vanish for z <= 1 only
        }
        let fy = (y as u128 - 1) * y as u128 * (y as u128 + 1);
        let f = fx * fy;
        if let Some(z) = exact_triple_u128(f) {
            if z < 2 {
                continue;
            }
            let mut rec = SolutionRecord {
                eq: EquationId::Z3,
                b: 1u64.into(),
                k: k.into(),
                x: x.into(),
                y: y.into(),
                z: BigInt::from(z),
                t: None,
                tags: Tags::none(),
            };
            rec.tags.fibonacci = is_fibonacci_member(k, x, z);
            assert!(rec.verify(), "unverified record at k={k} x={x}");
            out.push(rec);
        }
    }
    out
}

/// Sequential driver over `k_min..=k_max`, sorted by `(k, x)`.
pub fn search_z3(k_min: u64, k_max: u64) -> Vec<SolutionRecord> {
    assert!(k_min >= 1 && k_min <= k_max);
    let mut out = Vec::new();
    for k in k_min..=k_max {
        out.extend(search_z3_k(k));
    }
    sort_dedup(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn k8_yields_exactly_the_family_member() {
        let recs = search_z3_k(8);
        assert_eq!(recs.len(), 1);
        let r = &recs[0];
        assert_eq!(
            (
                r.x.to_u64().unwrap(),
                r.y.to_u64().unwrap(),
                r.z.to_u64().unwrap()
            ),
            (5, 13, 64)
        );
        assert!(r.tags.fibonacci);
        // 4*5*6 * 12*13*14 = 262080 = 63*64*65
        assert_eq!(120u64 * 2184, 262_080);
    }

    #[test]
    fn k7_empty_and_brute_force_agrees() {
        assert!(search_z3_k(7).is_empty());
        // independent brute force far beyond the bound
        let k = 7u128;
        for x in 2u128..=10_000 {
            let y = x + k;
            let f = (x - 1) * x * (x + 1) * (y - 1) * y * (y + 1);
            if let Some(z) = exact_triple_u128(f) {
                assert!(z < 2, "unexpected solution at x={x}");
            }
        }
    }

    #[test]
    fn small_range_all_records_verify_and_are_fibonacci() {
        let recs = search_z3(4, 60);
        for r in &recs {
            assert!(r.verify());
            assert!(r.tags.fibonacci, "k={} x={}", r.k, r.x);
        }
        // 8, 21, 55 are the even-indexed Fibonacci numbers in [4, 60]
        let ks: Vec<u64> = recs.iter().map(|r| r.k.to_u64().unwrap()).collect();
        assert_eq!(ks, alloc::vec![8, 21, 55]);
    }
}
