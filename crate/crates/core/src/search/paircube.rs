//! Search for `x(x+1) y(y+1) = z^3` with `x <= y`.
//!
//! Straight double loop over the grid with incremental cube residues mod 9
//! and mod 7 so the hot path never divides a `u128`; survivors get the exact
//! cube-root test.

use alloc::vec::Vec;

use super::roots::{exact_cbrt_u128, CubeFilter};
use super::{sort_dedup, SolutionRecord, Tags};
use crate::pellfam::EquationId;

/// Scan `x` in `[x_from, x_to]`, `y` in `[x, y_max]`.
pub fn paircube_stripe(
    x_from: u64,
    x_to: u64,
    y_max: u64,
    filter: &CubeFilter,
) -> Vec<SolutionRecord> {
    let mut out = Vec::new();
    for x in x_from..=x_to.min(y_max) {
        let fx = x as u128 * (x as u128 + 1);
        let fx9 = (fx % 9) as u32;
        let fx7 = (fx % 7) as u32;
        // y, y mod 9 and y mod 7 advance together
        let mut y9 = (x % 9) as u32;
        let mut y7 = (x % 7) as u32;
        for y in x..=y_max {
            let fy9 = y9 * (y9 + 1) % 9;
            let fy7 = y7 * (y7 + 1) % 7;
            if filter.maybe_cube_residues(fx9 * fy9 % 9, fx7 * fy7 % 7) {
                let f = fx * (y as u128) * (y as u128 + 1);
                if let Some(z) = exact_cbrt_u128(f) {
                    let rec = SolutionRecord {
                        eq: EquationId::PairCube,
                        b: 0u64.into(),
                        k: 0u64.into(),
                        x: x.into(),
                        y: y.into(),
                        z: u64::try_from(z).expect("cube root fits u64").into(),
                        t: None,
                        tags: Tags::none(),
                    };
                    assert!(rec.verify(), "unverified pair-cube record x={x} y={y}");
                    out.push(rec);
                }
            }
            y9 += 1;
            if y9 == 9 {
                y9 = 0;
            }
            y7 += 1;
            if y7 == 7 {
                y7 = 0;
            }
        }
    }
    out
}

/// Sequential driver over `x <= y <= y_max`, sorted by `(x, y)`.
pub fn search_pair_cube(y_max: u64) -> Vec<SolutionRecord> {
    assert!(y_max >= 2);
    let filter = CubeFilter::new();
    let mut out = paircube_stripe(1, y_max, y_max, &filter);
    sort_dedup(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn grid_100_is_empty_vs_brute_force() {
        assert!(search_pair_cube(100).is_empty());
        // brute-force oracle over the same grid, no filters
        for x in 1u128..=100 {
            for y in x..=100 {
                let f = x * (x + 1) * y * (y + 1);
                assert!(exact_cbrt_u128(f).is_none(), "x={x} y={y}");
            }
        }
    }

    #[test]
    fn finds_the_small_solutions() {
        let recs = search_pair_cube(300);
        let triples: Vec<(u64, u64, u64)> = recs
            .iter()
            .map(|r| {
                (
                    r.x.to_u64().unwrap(),
                    r.y.to_u64().unwrap(),
                    r.z.to_u64().unwrap(),
                )
            })
            .collect();
        // 11*12*242*243 = 7762392 = 198^3 and 32*33*242*243 = 396^3
        assert_eq!(triples, alloc::vec![(11, 242, 198), (32, 242, 396)]);
    }
}
