//! Bounded search for nontrivial solutions of
//! `(x-b) x (x+b) (y-b) y (y+b) = z^2` with `y = x + k`.
//!
//! For each `(b, k)` the window `[1, Bmax]` is complete (larger `x` only
//! admits the closed-form candidates, which are added separately). The scan
//! never walks the window point by point. For a pool of prime powers `q`
//! the admissible residues `x mod q` (those for which the product is a
//! square residue mod `q`) are precomputed; their usefulness varies wildly
//! with `k mod q` (a prime dividing `k` filters nothing, a high prime power
//! often passes well under 10%), so the strongest few components are chosen
//! per shard and combined by CRT into the stride modulus, and the remaining
//! ones become one-lookup rejection stages. Everything is conservative: a
//! perfect-square product is a square residue modulo every `q`, so no
//! solution can be skipped.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use super::{is_trivial_b, sort_dedup, SolutionRecord, Tags};
use crate::pellfam::EquationId;
use crate::runge;

/// Filter pool: one prime power per prime, large enough to resolve
/// valuations of the six near-linear factors, small enough that per-shard
/// admissibility tables are negligible to build.
const POOL: [u64; 25] = [
    2048, 2187, 625, 2401, 1331, 2197, 289, 361, 529, 841, 961, 1369, 1681, 1849, 2209, 53, 59, 61,
    67, 71, 73, 79, 83, 89, 97,
];

/// Largest number of CRT classes a shard may materialise.
const CLASS_CAP: usize = 4_000_000;
/// Largest number of CRT components combined into the stride modulus.
const COMPONENT_CAP: usize = 5;

fn bitset_new(len: u64) -> Vec<u64> {
    alloc::vec![0u64; (len as usize).div_ceil(64)]
}

#[inline]
fn bitset_get(bits: &[u64], i: u64) -> bool {
    bits[(i / 64) as usize] & (1 << (i % 64)) != 0
}

#[inline]
fn bitset_set(bits: &mut [u64], i: u64) {
    bits[(i / 64) as usize] |= 1 << (i % 64);
}

/// Square-residue bitsets for every pool modulus; independent of `(b, k)`,
/// built once per run and shared read-only between shards.
pub struct SquareTables {
    squares: Vec<Vec<u64>>,
}

impl SquareTables {
    pub fn new() -> Self {
        let squares = POOL
            .iter()
            .map(|&q| {
                let mut bits = bitset_new(q);
                for i in 0..q {
                    bitset_set(&mut bits, (i * i) % q);
                }
                bits
            })
            .collect();
        SquareTables { squares }
    }
}

impl Default for SquareTables {
    fn default() -> Self {
        Self::new()
    }
}

/// `u (u-b) (u+b) mod q` for residues.
#[inline]
fn g_mod(u: u64, b2_mod: u64, q: u64) -> u64 {
    let d = ((u * u) % q + q - b2_mod) % q;
    (u * d) % q
}

/// Admissible residues `x mod q`: the product is a square residue mod `q`.
struct Component {
    q: u64,
    pass: u32,
    bits: Vec<u64>,
}

fn admissible_component(b: u64, k: u64, q: u64, squares: &[u64]) -> Component {
    let b2 = (b % q) * (b % q) % q;
    let km = k % q;
    let mut g = Vec::with_capacity(q as usize);
    for u in 0..q {
        g.push(g_mod(u, b2, q));
    }
    let mut bits = bitset_new(q);
    let mut pass = 0u32;
    for r in 0..q {
        let fm = (g[r as usize] * g[((r + km) % q) as usize]) % q;
        if bitset_get(squares, fm) {
            bitset_set(&mut bits, r);
            pass += 1;
        }
    }
    Component { q, pass, bits }
}

/// Modular inverse for coprime `a`, `m`.
fn mod_inv(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i128) as u64
}

#[derive(Clone, Debug)]
pub struct Z2Options {
    /// Disable to scan every `x` with only the exact test (slow; used to
    /// prove the filters change nothing).
    pub use_filters: bool,
    /// Override the scan ceiling (used to double the bound in completeness
    /// checks).
    pub bmax_override: Option<u64>,
}

impl Default for Z2Options {
    fn default() -> Self {
        Z2Options {
            use_filters: true,
            bmax_override: None,
        }
    }
}

/// `(x-b) x (x+b)` as `u128`; all factors positive for `x > b`.
#[inline]
fn block_u128(x: u64, b: u64) -> u128 {
    (x - b) as u128 * x as u128 * (x + b) as u128
}

/// Exact square test of the full product; returns `z`.
fn exact_square_product(x: u64, y: u64, b: u64) -> Option<BigUint> {
    let f = BigUint::from(block_u128(x, b)) * BigUint::from(block_u128(y, b));
    let z = f.sqrt();
    (&z * &z == f).then_some(z)
}

/// Scan one `(b, k)` shard. Emits nontrivial solutions sorted by `x`,
/// including the closed-form candidates beyond the scan window.
pub fn scan_pair(b: u64, k: u64, tables: &SquareTables, opts: &Z2Options) -> Vec<SolutionRecord> {
    let bounds = runge::z2_bounds(&BigInt::from(b), &BigInt::from(k));
    let bmax = opts.bmax_override.unwrap_or_else(|| {
        bounds
            .bmax
            .to_u64()
            .expect("scan bound exceeds u64; narrow the k range")
    });

    let mut hits: Vec<(u64, BigUint)> = Vec::new();
    let visit = |x: u64, hits: &mut Vec<(u64, BigUint)>| {
        if let Some(z) = exact_square_product(x, x + k, b) {
            hits.push((x, z));
        }
    };

    if !opts.use_filters {
        for x in (b + 1)..=bmax {
            visit(x, &mut hits);
        }
    } else {
        // per-shard component strengths
        let mut comps: Vec<Component> = POOL
            .iter()
            .zip(tables.squares.iter())
            .filter_map(|(&q, sq)| {
                let c = admissible_component(b, k, q, sq);
                // a component that passes (almost) everything is useless
                (u64::from(c.pass) * 100 < q * 99).then_some(c)
            })
            .collect();
        comps.sort_by(|a, c| (u64::from(a.pass) * c.q).cmp(&(u64::from(c.pass) * a.q)));

        // combine the strongest components into the stride modulus
        let mut m_sel: u64 = 1;
        let mut classes: Vec<u64> = alloc::vec![0];
        let mut stage2: Vec<Component> = Vec::new();
        let mut taken = 0usize;
        for comp in comps {
            let expand = taken < COMPONENT_CAP
                && m_sel.checked_mul(comp.q).is_some_and(|m| m <= bmax / 2)
                && classes.len() * comp.pass as usize <= CLASS_CAP;
            if !expand {
                stage2.push(comp);
                continue;
            }
            let residues: Vec<u64> = (0..comp.q).filter(|&r| bitset_get(&comp.bits, r)).collect();
            let inv = mod_inv(m_sel % comp.q, comp.q);
            let mut next = Vec::with_capacity(classes.len() * residues.len());
            for &c in &classes {
                let cq = c % comp.q;
                for &r in &residues {
                    let delta = (r + comp.q - cq) % comp.q;
                    next.push(c + m_sel * ((delta * inv) % comp.q));
                }
            }
            classes = next;
            m_sel *= comp.q;
            taken += 1;
        }

        for &c in &classes {
            let mut x = if c == 0 { m_sel } else { c };
            while x <= b {
                x += m_sel;
            }
            'walk: while x <= bmax {
                for comp in &stage2 {
                    if !bitset_get(&comp.bits, x % comp.q) {
                        x += m_sel;
                        continue 'walk;
                    }
                }
                visit(x, &mut hits);
                x += m_sel;
            }
        }
    }

    let mut records: Vec<SolutionRecord> = hits
        .into_iter()
        .map(|(x, z)| SolutionRecord {
            eq: EquationId::Z2,
            b: b.into(),
            k: k.into(),
            x: x.into(),
            y: (x + k).into(),
            z: BigInt::from(z),
            t: None,
            tags: Tags::none(),
        })
        .collect();

    // closed-form candidates (may lie beyond bmax)
    for x in &bounds.exact_candidates {
        let xb = x.clone();
        let yb = &xb + BigInt::from(k);
        if xb <= BigInt::from(b) {
            continue; // zero or negative factor: z would not be positive
        }
        let f = runge::sextic_product(&BigInt::from(b), &BigInt::from(k), &xb);
        let z = f.sqrt();
        debug_assert_eq!(&z * &z, f, "closed-form candidate must square exactly");
        records.push(SolutionRecord {
            eq: EquationId::Z2,
            b: b.into(),
            k: k.into(),
            x: xb,
            y: yb,
            z,
            t: None,
            tags: Tags::none(),
        });
    }

    records.retain(|r| !is_trivial_b(&r.b, &r.x, &r.y));
    for r in &records {
        assert!(r.verify(), "unverified record for b={b} k={k}: x={}", r.x);
    }
    sort_dedup(&mut records);
    records
}

/// All `(b, k)` shards for a run: every `b` in the set, `2b < k <= k_max`.
pub fn shards(b_set: &[u64], k_max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for &b in b_set {
        assert!(b >= 3 && b % 2 == 1, "b must be odd and >= 3");
        for k in (2 * b + 1)..=k_max {
            out.push((b, k));
        }
    }
    out
}

/// Sequential driver over all shards; sorted by `(b, k, x)`, deterministic.
pub fn search_z2(b_set: &[u64], k_max: u64, opts: &Z2Options) -> Vec<SolutionRecord> {
    let tables = SquareTables::new();
    let mut out = Vec::new();
    for (b, k) in shards(b_set, k_max) {
        out.extend(scan_pair(b, k, &tables, opts));
    }
    sort_dedup(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scan(b: u64, k: u64, opts: &Z2Options) -> Vec<SolutionRecord> {
        let tables = SquareTables::new();
        scan_pair(b, k, &tables, opts)
    }

    fn triple(r: &SolutionRecord) -> (u64, u64, u64) {
        (
            r.x.to_u64().unwrap(),
            r.y.to_u64().unwrap(),
            r.z.to_u64().unwrap(),
        )
    }

    #[test]
    fn b3_k7_contains_5_12_360() {
        let recs = scan(3, 7, &Z2Options::default());
        assert!(recs.iter().any(|r| triple(r) == (5, 12, 360)));
    }

    #[test]
    fn b5_k23_contains_7_30_2100() {
        let recs = scan(5, 23, &Z2Options::default());
        assert!(recs.iter().any(|r| triple(r) == (7, 30, 2100)));
        // 2*7*12*25*30*35 = 4410000 = 2100^2
        assert_eq!(block_u128(7, 5) * block_u128(30, 5), 4_410_000);
    }

    #[test]
    fn trivial_solutions_excluded() {
        // b = 3, k = 9: any x with 3 | x has 3 | y too; none may appear.
        let recs = scan(3, 9, &Z2Options::default());
        for r in &recs {
            assert!(!(r.x.to_u64().unwrap() % 3 == 0 && r.y.to_u64().unwrap() % 3 == 0));
        }
    }

    #[test]
    fn filters_change_nothing() {
        for (b, k) in [(3, 7), (3, 8), (5, 11), (3, 24)] {
            let with = scan(b, k, &Z2Options::default());
            let without = scan(
                b,
                k,
                &Z2Options {
                    use_filters: false,
                    bmax_override: None,
                },
            );
            assert_eq!(with, without, "b={b} k={k}");
        }
    }

    #[test]
    fn doubling_the_bound_changes_nothing() {
        // (b, k) pairs holding reference rows: (5,12,360), (4,21,504),
        // (8,33,3960) and (35,60,95760)
        for (b, k) in [(3, 7), (3, 17), (3, 25)] {
            let base = scan(b, k, &Z2Options::default());
            let bounds = runge::z2_bounds(&BigInt::from(b), &BigInt::from(k));
            let doubled = scan(
                b,
                k,
                &Z2Options {
                    use_filters: true,
                    bmax_override: Some(2 * bounds.bmax.to_u64().unwrap()),
                },
            );
            assert_eq!(base, doubled, "b={b} k={k}");
        }
    }

    #[test]
    fn shard_layout() {
        let s = shards(&[3, 5], 12);
        assert_eq!(s.first(), Some(&(3, 7)));
        assert!(s.contains(&(5, 11)));
        assert!(!s.contains(&(5, 10)));
        assert_eq!(s.len(), 6 + 2);
    }
}
