//! Search for `x(x+1)(x+2) = z^2 * y(y+1)(y+2)` with `x != y`.
//!
//! Outer loop on `x` with the cached product, inner loop on `y` with the
//! divisibility pre-filter before any square test. The inner loop stops as
//! soon as `y(y+1)(y+2)` exceeds the cached product.

use alloc::vec::Vec;

use super::roots::SquareFilter;
use super::{sort_dedup, SolutionRecord, Tags};
use crate::pellfam::EquationId;

#[inline]
fn consec3(n: u64) -> u128 {
    n as u128 * (n as u128 + 1) * (n as u128 + 2)
}

/// Scan `x` in `[x_from, x_to]`, `y` in `[1, y_max]`.
pub fn ratio_stripe(
    x_from: u64,
    x_to: u64,
    y_max: u64,
    filter: &SquareFilter,
) -> Vec<SolutionRecord> {
    let mut out = Vec::new();
    for x in x_from..=x_to {
        let px = consec3(x);
        for y in 1..=y_max {
            let py = consec3(y);
            if py > px {
                break;
            }
            if y == x || !px.is_multiple_of(py) {
                continue;
            }
            let q = px / py;
            if let Some(z) = filter.exact_square(q) {
                debug_assert!(z >= 1);
                let rec = SolutionRecord {
                    eq: EquationId::Ratio,
                    b: 0u64.into(),
                    k: 0u64.into(),
                    x: x.into(),
                    y: y.into(),
                    z: u64::try_from(z).expect("ratio root fits u64").into(),
                    t: None,
                    tags: Tags::none(),
                };
                assert!(rec.verify(), "unverified ratio record x={x} y={y}");
                out.push(rec);
            }
        }
    }
    out
}

/// Sequential driver, sorted by `(x, y)`.
pub fn search_ratio(x_max: u64, y_max: u64) -> Vec<SolutionRecord> {
    assert!(x_max >= 1 && y_max >= 1);
    let filter = SquareFilter::new();
    let mut out = ratio_stripe(1, x_max, y_max, &filter);
    sort_dedup(&mut out);
    out
}
