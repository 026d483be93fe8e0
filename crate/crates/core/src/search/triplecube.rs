//! Search for `x(x+1) y(y+1) z(z+1) = t^3` with `x+1 < y < z-1 < n_max`.
//!
//! The naive triple loop is cubic in `n_max`; instead, `f(n) = n(n+1)` is
//! factored for every `n` up front and indexed by its cube-free signature.
//! For a pair `(x, y)` the product completes to a cube exactly for those `z`
//! whose signature is the complement of `sig(f(x) f(y))`, which is a single
//! index lookup. Most pairs die while computing the complement value: it
//! overflows the largest signature value present in the index. Every hit is
//! re-verified with the exact cube test, and a naive oracle cross-checks the
//! whole algorithm at small `n_max`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::roots::{exact_cbrt_u128, CubeFilter};
use super::sieve::{cubefree_signature, CubeSignature, SpfSieve};
use super::{sort_dedup, SolutionRecord, Tags};
use crate::pellfam::EquationId;

/// Signature index of `f(n) = n(n+1)` over `1..=n_max`.
pub struct SigIndex {
    n_max: u64,
    sigs: Vec<CubeSignature>,
    by_value: BTreeMap<u64, Vec<u64>>,
    max_value: u64,
}

impl SigIndex {
    pub fn build(n_max: u64) -> Self {
        assert!(n_max >= 5);
        let sieve = SpfSieve::new(n_max + 1);
        let mut sigs = Vec::with_capacity(n_max as usize + 1);
        sigs.push(CubeSignature::empty()); // unused slot 0
        let mut by_value: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        let mut max_value = 0u64;
        for n in 1..=n_max {
            // n and n+1 are coprime, so the signatures merge disjointly
            let s = cubefree_signature(n, &sieve)
                .unwrap()
                .combine(&cubefree_signature(n + 1, &sieve).unwrap());
            let v = u64::try_from(s.value_u128()).expect("f(n) fits u64");
            by_value.entry(v).or_default().push(n);
            max_value = max_value.max(v);
            sigs.push(s);
        }
        SigIndex {
            n_max,
            sigs,
            by_value,
            max_value,
        }
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }
}

fn record(x: u64, y: u64, z: u64, t: u64) -> SolutionRecord {
    SolutionRecord {
        eq: EquationId::TripleCube,
        b: 0u64.into(),
        k: 0u64.into(),
        x: x.into(),
        y: y.into(),
        z: z.into(),
        t: Some(t.into()),
        tags: Tags::none(),
    }
}

/// All solutions with `x` in the given range (shard of the pair loop).
pub fn pairs_block(index: &SigIndex, x_from: u64, x_to: u64) -> Vec<SolutionRecord> {
    let n_max = index.n_max;
    let mut out = Vec::new();
    for x in x_from..=x_to.min(n_max.saturating_sub(4)) {
        let fx = x as u128 * (x as u128 + 1);
        for y in (x + 2)..=(n_max - 2) {
            let combined = index.sigs[x as usize].combine(&index.sigs[y as usize]);
            let Some(v) = combined.complement_value_bounded(index.max_value) else {
                continue;
            };
            let Some(zs) = index.by_value.get(&v) else {
                continue;
            };
            let fxy = fx * (y as u128) * (y as u128 + 1);
            for &z in zs.iter().filter(|&&z| z > y + 1) {
                let f = fxy * (z as u128) * (z as u128 + 1);
                let t = exact_cbrt_u128(f).expect("complementary signature gives a cube");
                let rec = record(x, y, z, u64::try_from(t).expect("cube root fits u64"));
                assert!(rec.verify(), "unverified triple-cube record {x} {y} {z}");
                out.push(rec);
            }
        }
    }
    out
}

/// Signature-indexed search; returns `(count, records)` sorted by
/// `(x, y, z)`.
pub fn search_triple_cube(n_max: u64) -> (u64, Vec<SolutionRecord>) {
    let index = SigIndex::build(n_max);
    let mut out = pairs_block(&index, 1, n_max);
    sort_dedup(&mut out);
    (out.len() as u64, out)
}

/// Brute-force oracle: the plain triple loop with only the cube residue
/// pre-filter. Used to cross-check the signature algorithm.
pub fn naive_triple_cube(n_max: u64) -> (u64, Vec<SolutionRecord>) {
    assert!(n_max >= 5);
    let filter = CubeFilter::new();
    let mut out = Vec::new();
    for x in 1..=(n_max - 4) {
        let fx = x as u128 * (x as u128 + 1);
        for y in (x + 2)..=(n_max - 2) {
            let fxy = fx * (y as u128) * (y as u128 + 1);
            for z in (y + 2)..=n_max {
                let f = fxy * (z as u128) * (z as u128 + 1);
                if filter.maybe_cube(f) {
                    if let Some(t) = exact_cbrt_u128(f) {
                        out.push(record(x, y, z, u64::try_from(t).unwrap()));
                    }
                }
            }
        }
    }
    sort_dedup(&mut out);
    (out.len() as u64, out)
}
