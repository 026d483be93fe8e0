//! Root bounds for the two sextic-product equations.
//!
//! For `F(x) = (x-b) x (x+b) (y-b) y (y+b)` with `y = x + k`, the scaled
//! square-root approximant `16 P(x) = 16x^3 + 24k x^2 + (6k^2 - 16b^2) x
//! - 8b^2 k - k^3` traps `256 F(x)` strictly between `(16P(x) - 1)^2` and
//! `(16P(x) + 1)^2` once `x` clears the roots of the two difference cubics.
//! Fujiwara's inequality turns those roots into the explicit bounds
//! `B1, B2, B3`; beyond `Bmax = floor(max Bi)` the only squares `F(x)` are
//! the closed-form candidates with `F(x) = P(x)^2`.
//!
//! Everything here is exact: the bounds are kept as integer radicands with
//! their floors computed by integer root extraction, so `Bmax` can never be
//! under-estimated by rounding. Floating-point rendering of `B1..B3` is left
//! to callers that want it for display.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::mpoly::MPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RungeError {
    /// Fujiwara's bound needs a nonzero leading coefficient and degree >= 1.
    ZeroLeadingCoefficient,
}

impl fmt::Display for RungeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RungeError::ZeroLeadingCoefficient => {
                write!(f, "leading coefficient must be nonzero (degree >= 1)")
            }
        }
    }
}

impl core::error::Error for RungeError {}

/// Floor of `sqrt(n)` for `n >= 0`.
pub fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

/// Smallest integer `s` with `s^2 >= n` (for `n >= 0`).
pub fn ceil_sqrt(n: &BigInt) -> BigInt {
    let s = n.sqrt();
    if &(&s * &s) < n {
        s + 1
    } else {
        s
    }
}

/// Floor of the cube root (for `n >= 0`).
pub fn icbrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.cbrt()
}

/// Fujiwara's bound `2 * max_i |a_{n-i} / a_n|^{1/i}` (with `a_0` halved at
/// `i = n`), stored exactly as the list of radicands `(i, num, den)` with
/// the `i`-th term equal to `(num/den)^{1/i}`.
#[derive(Clone, Debug)]
pub struct RootBound {
    terms: Vec<(u32, BigInt, BigInt)>,
}

impl RootBound {
    pub fn terms(&self) -> &[(u32, BigInt, BigInt)] {
        &self.terms
    }

    /// Exact `floor(bound)`: the largest `m >= 0` with
    /// `m^i * den <= 2^i * num` for some `i`.
    pub fn floor(&self) -> BigInt {
        let mut best = BigInt::zero();
        for (i, num, den) in &self.terms {
            // floor(2 * (num/den)^(1/i)) = nth_root(floor(2^i * num / den), i)
            let scaled = (num << *i) / den;
            let m = scaled.nth_root(*i);
            if m > best {
                best = m;
            }
        }
        best
    }

    /// True iff `bound >= |x|`, decided exactly.
    pub fn dominates(&self, x: &BigInt) -> bool {
        let ax = x.abs();
        self.terms
            .iter()
            .any(|(i, num, den)| num_traits::pow::pow(ax.clone(), *i as usize) * den <= (num << *i))
    }
}

/// Fujiwara's root bound for `p(z) = a_0 + a_1 z + ... + a_n z^n` given in
/// ascending coefficient order. Guaranteed `>= |zeta|` for every root.
pub fn fujiwara_bound(coeffs: &[BigInt]) -> Result<RootBound, RungeError> {
    if coeffs.len() < 2 {
        return Err(RungeError::ZeroLeadingCoefficient);
    }
    let n = coeffs.len() - 1;
    let lead = coeffs[n].abs();
    if lead.is_zero() {
        return Err(RungeError::ZeroLeadingCoefficient);
    }
    let mut terms = Vec::with_capacity(n);
    for i in 1..=n {
        let num = coeffs[n - i].abs();
        let den = if i == n { &lead * 2 } else { lead.clone() };
        terms.push((i as u32, num, den));
    }
    Ok(RootBound { terms })
}

/// Coefficients of `16 P(x)` for given `(b, k)`:
/// `16x^3 + 24k x^2 + (6k^2 - 16b^2) x - 8b^2 k - k^3`.
#[derive(Clone, Debug)]
pub struct ScaledPuiseux {
    pub c3: BigInt,
    pub c2: BigInt,
    pub c1: BigInt,
    pub c0: BigInt,
}

pub fn scaled_puiseux(b: &BigInt, k: &BigInt) -> ScaledPuiseux {
    let b2 = b * b;
    let k2 = k * k;
    ScaledPuiseux {
        c3: BigInt::from(16),
        c2: 24 * k,
        c1: 6 * &k2 - 16 * &b2,
        c0: -8 * &b2 * k - &k2 * k,
    }
}

impl ScaledPuiseux {
    /// `16 P(x)` at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        ((&self.c3 * x + &self.c2) * x + &self.c1) * x + &self.c0
    }
}

/// `F(x) = (x-b) x (x+b) (y-b) y (y+b)` with `y = x + k`.
pub fn sextic_product(b: &BigInt, k: &BigInt, x: &BigInt) -> BigInt {
    let y = x + k;
    (x - b) * x * (x + b) * (&y - b) * &y * (&y + b)
}

/// Ascending coefficients `[a0, a1, a2, a3]` of
/// `256 F(x) - (16P(x) - 1)^2` (`sign = -1`) or
/// `256 F(x) - (16P(x) + 1)^2` (`sign = +1`).
pub fn straddle_cubic(b: &BigInt, k: &BigInt, sign: i8) -> [BigInt; 4] {
    let s = BigInt::from(i64::from(sign));
    let b2 = b * b;
    let b4 = &b2 * &b2;
    let k2 = k * k;
    let k3 = &k2 * k;
    let k4 = &k2 * &k2;
    let k5 = &k4 * k;
    let k6 = &k4 * &k2;
    let a3 = BigInt::from(-32) * &s;
    let a2 = -192 * &b2 * &k2 + 12 * &k4 - 48 * k * &s;
    let a1 = -192 * &b2 * &k3 + 12 * &k5 + 32 * &b2 * &s - 12 * &k2 * &s;
    let a0 =
        -64 * &b4 * &k2 - 16 * &b2 * &k4 - &k6 + 16 * &b2 * k * &s + 2 * &k3 * &s - BigInt::one();
    [a0, a1, a2, a3]
}

/// The bounds for one `(b, k)`: `B1 = b1_num/16`, `B2 = sqrt(b2_num/8)`,
/// `B3 = cbrt(b3_num/8)`, each radicand maximised over the two sign variants
/// of the straddle cubics, with exact floors and
/// `bmax = floor(max(B1, B2, B3))`.
#[derive(Clone, Debug)]
pub struct BoundSet {
    pub b: BigInt,
    pub k: BigInt,
    pub b1_num: BigInt,
    pub b2_num: BigInt,
    pub b3_num: BigInt,
    pub b1_floor: BigInt,
    pub b2_floor: BigInt,
    pub b3_floor: BigInt,
    pub bmax: BigInt,
    /// All positive integers with `F(x) = P(x)^2`.
    pub exact_candidates: Vec<BigInt>,
}

/// Bounds on nontrivial solutions of the square equation at `(b, k)`:
/// any solution has `x <= bmax` or `x` among `exact_candidates`.
pub fn z2_bounds(b: &BigInt, k: &BigInt) -> BoundSet {
    let minus = straddle_cubic(b, k, -1);
    let plus = straddle_cubic(b, k, 1);
    let b1_num = minus[2].abs().max(plus[2].abs());
    let b2_num = minus[1].abs().max(plus[1].abs());
    let b3_num = minus[0].abs().max(plus[0].abs());
    // B1 = max|a2|/16; B2 = 2 sqrt(max|a1|/32) = sqrt(max|a1|/8);
    // B3 = 2 cbrt(max|a0|/64) = cbrt(max|a0|/8).
    let b1_floor: BigInt = &b1_num / 16;
    let b2_floor = isqrt(&(&b2_num / 8));
    let b3_floor = icbrt(&(&b3_num / 8));
    let bmax = b1_floor.clone().max(b2_floor.clone()).max(b3_floor.clone());
    BoundSet {
        b: b.clone(),
        k: k.clone(),
        b1_num,
        b2_num,
        b3_num,
        b1_floor,
        b2_floor,
        b3_floor,
        bmax,
        exact_candidates: z2_exact_solutions(b, k),
    }
}

/// Nonnegative integer roots of `c2 x^2 + c1 x + c0`, exact.
fn quadratic_nonneg_roots(c2: &BigInt, c1: &BigInt, c0: &BigInt) -> Vec<BigInt> {
    let mut roots = Vec::new();
    if c2.is_zero() {
        if c1.is_zero() {
            // constant polynomial: either no roots or everything; the latter
            // cannot occur for our callers (c0 > 0 in the degenerate case)
            return roots;
        }
        let (q, r) = (-c0).div_rem(c1);
        if r.is_zero() && !q.is_negative() {
            roots.push(q);
        }
        return roots;
    }
    let disc: BigInt = c1 * c1 - 4 * c2 * c0;
    if disc.is_negative() {
        return roots;
    }
    let s = isqrt(&disc);
    if &s * &s != disc {
        return roots;
    }
    let two_c2 = 2 * c2;
    for cand in [-c1 + &s, -c1 - &s] {
        let (q, r) = cand.div_rem(&two_c2);
        if r.is_zero() && !q.is_negative() && !roots.contains(&q) {
            roots.push(q);
        }
    }
    roots.sort();
    roots
}

/// All positive integers `x` with `F(x) = P(x)^2`, from the exact identity
/// `256 (F - P^2) = -k^2 * (12(16b^2-k^2) x^2 + 12k(16b^2-k^2) x + (8b^2+k^2)^2)`.
///
/// When `k = 4b` the quadratic degenerates to the positive constant
/// `(24 b^2)^2`, so the list is empty. An empty list is a valid result.
pub fn z2_exact_solutions(b: &BigInt, k: &BigInt) -> Vec<BigInt> {
    let b2 = b * b;
    let k2 = k * k;
    let lead = 16 * &b2 - &k2;
    let c2 = 12 * &lead;
    let c1 = 12 * k * &lead;
    let c0 = {
        let s = 8 * &b2 + &k2;
        &s * &s
    };
    quadratic_nonneg_roots(&c2, &c1, &c0)
        .into_iter()
        .filter(|x| x >= &BigInt::one())
        .collect()
}

/// Expands `256 F(x) - (16P(x) -/+ 1)^2` symbolically over `Z[x, b, k]` and
/// compares both results term-by-term with the printed cubics. Also checks
/// that `16 P` truncates the square root exactly: `256 F - (16P)^2` has
/// degree at most 2 in `x`.
pub fn aux_identity_check() -> bool {
    let x = MPoly::var("x");
    let b = MPoly::var("b");
    let k = MPoly::var("k");

    let y = &x + &k;
    let f = (&x - &b) * &x * (&x + &b) * (&y - &b) * &y * (&y + &b);
    let p16 = 16 * x.pow(3) + 24 * &k * x.pow(2) + (6 * k.pow(2) - 16 * b.pow(2)) * &x
        - 8 * b.pow(2) * &k
        - k.pow(3);

    if (256 * &f - p16.pow(2)).degree_in("x") > 2 {
        return false;
    }

    let minus = 256 * &f - (&p16 - 1).pow(2);
    let plus = 256 * &f - (&p16 + 1).pow(2);

    let expected_minus = 32 * x.pow(3)
        + (-192 * b.pow(2) * k.pow(2) + 12 * k.pow(4) + 48 * &k) * x.pow(2)
        + (-192 * b.pow(2) * k.pow(3) + 12 * k.pow(5) - 32 * b.pow(2) + 12 * k.pow(2)) * &x
        + (-64 * b.pow(4) * k.pow(2)
            - 16 * b.pow(2) * k.pow(4)
            - k.pow(6)
            - 16 * b.pow(2) * &k
            - 2 * k.pow(3)
            - MPoly::one());
    let expected_plus = -32 * x.pow(3)
        + (-192 * b.pow(2) * k.pow(2) + 12 * k.pow(4) - 48 * &k) * x.pow(2)
        + (-192 * b.pow(2) * k.pow(3) + 12 * k.pow(5) + 32 * b.pow(2) - 12 * k.pow(2)) * &x
        + (-64 * b.pow(4) * k.pow(2) - 16 * b.pow(2) * k.pow(4) - k.pow(6)
            + 16 * b.pow(2) * &k
            + 2 * k.pow(3)
            - MPoly::one());

    minus == expected_minus && plus == expected_plus
}

/// Smallest integer `m >= -k/2 + sqrt(3k^2 + 2k sqrt(k^2+4) + 4)/2`,
/// computed exactly: an outward-rounded integer seed is walked down while
/// the squared form of `m - 1 >= expr` still holds, so the result is the
/// true ceiling and never under-estimates.
pub fn fib_bound(k: &BigInt) -> BigInt {
    assert!(k >= &BigInt::one(), "k must be >= 1");
    let k2 = k * k;
    let inner = &k2 + 4; // k^2 + 4
    let rhs = 4 * &k2 * &inner; // (2k sqrt(k^2+4))^2

    // m >= expr  <=>  L := (2m+k)^2 - 3k^2 - 4 >= 0  and  L^2 >= 4k^2(k^2+4)
    let ge_expr = |m: &BigInt| -> bool {
        let s = 2 * m + k;
        let l: BigInt = &s * &s - 3 * &k2 - 4;
        !l.is_negative() && &l * &l >= rhs
    };

    let s1 = ceil_sqrt(&inner);
    let s2 = ceil_sqrt(&(3 * &k2 + 2 * k * s1 + 4));
    let mut m = (s2 - k + 1) / 2; // ceil((s2 - k) / 2), s2 > k here
    debug_assert!(ge_expr(&m));
    while m > BigInt::one() {
        let prev = &m - 1;
        if ge_expr(&prev) {
            m = prev;
        } else {
            break;
        }
    }
    m.max(BigInt::one())
}
