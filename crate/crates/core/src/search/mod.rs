//! Bounded exhaustive integer searches.
//!
//! Each search walks the window its root bound guarantees is complete, tests
//! the product shape with conservative modular pre-filters, and re-verifies
//! every hit by exact substitution before it is emitted. Results are sorted
//! by the canonical `(b, k, x, y, z)` key, so output is deterministic for
//! any sharding of the work.

pub mod paircube;
pub mod ratio;
pub mod roots;
pub mod sieve;
pub mod triplecube;
pub mod z2;
pub mod z3;

use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::mpoly::MPoly;
use crate::pellfam::{equation_degenerate, verify_equation, Assignment, EquationId};

pub use sieve::{cubefree_signature, CubeSignature, SieveError, SpfSieve};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchError {
    /// Negative input to a shape that requires a nonnegative value.
    DomainError(&'static str),
    /// Sieve-backed factorization outside the sieve range.
    OutOfSieveRange { n: u64, limit: u64 },
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::DomainError(what) => write!(f, "negative input for {what}"),
            SearchError::OutOfSieveRange { n, limit } => {
                write!(f, "{n} is outside the sieve range (limit {limit})")
            }
        }
    }
}

impl core::error::Error for SearchError {}

impl From<SieveError> for SearchError {
    fn from(e: SieveError) -> Self {
        match e {
            SieveError::OutOfRange { n, limit } => SearchError::OutOfSieveRange { n, limit },
        }
    }
}

/// Target shapes a product can be inverted against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `z^2 = n`, `z >= 0`
    Square,
    /// `z^3 = n`, any sign
    Cube,
    /// `z (z+1) = n`, `z >= 0`
    Oblong,
    /// `(z-1) z (z+1) = n`
    Triple,
}

/// Invert a shape exactly: integer Newton root extraction plus neighbour
/// tests. `None` when no integer preimage exists.
pub fn invert_shape(shape: Shape, n: &BigInt) -> Result<Option<BigInt>, SearchError> {
    match shape {
        Shape::Square => {
            if n.is_negative() {
                return Err(SearchError::DomainError("square"));
            }
            let s = n.sqrt();
            Ok((&s * &s == *n).then_some(s))
        }
        Shape::Cube => {
            let c = n.cbrt();
            for cand in [&c - 1, c.clone(), &c + 1] {
                if &cand * &cand * &cand == *n {
                    return Ok(Some(cand));
                }
            }
            Ok(None)
        }
        Shape::Oblong => {
            if n.is_negative() {
                return Err(SearchError::DomainError("oblong"));
            }
            // z = (sqrt(4n + 1) - 1) / 2
            let v: BigInt = n * 4 + 1;
            let s = v.sqrt();
            let z: BigInt = (&s - 1) / 2;
            for cand in [z.clone(), &z + 1] {
                if cand.is_negative() {
                    continue;
                }
                if &cand * (&cand + 1) == *n {
                    return Ok(Some(cand));
                }
            }
            Ok(None)
        }
        Shape::Triple => {
            let c = n.cbrt();
            let mut matches: Vec<BigInt> = Vec::new();
            for cand in [&c - 2, &c - 1, c.clone(), &c + 1, &c + 2] {
                if &cand * &cand * &cand - &cand == *n && !matches.contains(&cand) {
                    matches.push(cand);
                }
            }
            matches.sort();
            Ok(matches
                .iter()
                .find(|z| !z.is_negative())
                .or(matches.first())
                .cloned())
        }
    }
}

/// Solution tags, serialized in alphabetical order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tags {
    pub degenerate: bool,
    pub fibonacci: bool,
    pub trivial: bool,
}

impl Tags {
    pub fn none() -> Self {
        Tags::default()
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.degenerate {
            v.push("degenerate");
        }
        if self.fibonacci {
            v.push("fibonacci");
        }
        if self.trivial {
            v.push("trivial");
        }
        v
    }
}

/// One integer solution of one of the target equations. `b` and `k` are 0
/// when the equation does not use them; `t` carries the cube root for the
/// triple-product cube equation only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionRecord {
    pub eq: EquationId,
    pub b: BigInt,
    pub k: BigInt,
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
    pub t: Option<BigInt>,
    pub tags: Tags,
}

impl SolutionRecord {
    pub fn from_u64(eq: EquationId, b: u64, k: u64, x: u64, y: u64, z: u64) -> Self {
        SolutionRecord {
            eq,
            b: b.into(),
            k: k.into(),
            x: x.into(),
            y: y.into(),
            z: z.into(),
            t: None,
            tags: Tags::none(),
        }
    }

    fn assignment(&self) -> Assignment {
        let mut vars = alloc::vec![
            ("x".to_string(), MPoly::constant(self.x.clone())),
            ("y".to_string(), MPoly::constant(self.y.clone())),
            ("z".to_string(), MPoly::constant(self.z.clone())),
        ];
        if matches!(self.eq, EquationId::Z2 | EquationId::Z3) {
            vars.push(("b".to_string(), MPoly::constant(self.b.clone())));
        }
        if let Some(t) = &self.t {
            vars.push(("t".to_string(), MPoly::constant(t.clone())));
        }
        Assignment::new(vars)
    }

    /// Exact substitution into the defining equation.
    pub fn verify(&self) -> bool {
        verify_equation(self.eq, &self.assignment())
    }

    /// Both sides of the equation vanish.
    pub fn is_degenerate(&self) -> bool {
        equation_degenerate(self.eq, &self.assignment())
    }

    /// Canonical ordering key `(b, k, x, y, z)`.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        (&self.b, &self.k, &self.x, &self.y, &self.z)
            .cmp(&(&other.b, &other.k, &other.x, &other.y, &other.z))
    }
}

/// Sort by the canonical key and drop duplicates.
pub fn sort_dedup(records: &mut Vec<SolutionRecord>) {
    records.sort_by(|a, b| a.canonical_cmp(b));
    records.dedup_by(|a, b| a.canonical_cmp(b) == Ordering::Equal);
}

/// `F_n` with `F_0 = 0, F_1 = 1`.
pub fn fibonacci(n: u32) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

/// True iff `k` is an even-indexed Fibonacci number: `5k^2 + 4` is a
/// perfect square.
pub fn is_even_index_fibonacci(k: u64) -> bool {
    let v = 5u128 * (k as u128) * (k as u128) + 4;
    roots::exact_sqrt_u128(v).is_some()
}

/// The Fibonacci family member `(F_{2n-1}, F_{2n+1}, F_{2n}^2)` with
/// `k = F_{2n}`, for `n >= 1`. The first member is degenerate (both sides
/// vanish at `x = 1`).
pub fn fib_family(n: u32) -> SolutionRecord {
    assert!(n >= 1, "family index starts at 1");
    let x = fibonacci(2 * n - 1);
    let y = fibonacci(2 * n + 1);
    let k = fibonacci(2 * n);
    let z = &k * &k;
    let mut rec = SolutionRecord {
        eq: EquationId::Z3,
        b: BigInt::one(),
        k,
        x,
        y,
        z,
        t: None,
        tags: Tags {
            fibonacci: true,
            ..Tags::none()
        },
    };
    rec.tags.degenerate = rec.is_degenerate();
    rec
}

/// Trivial in the block sense: `b | x` and `b | y`. Only meaningful for
/// `b >= 2` (for `b = 1` it would mark everything).
pub(crate) fn is_trivial_b(b: &BigInt, x: &BigInt, y: &BigInt) -> bool {
    b > &BigInt::one() && x.mod_floor(b).is_zero() && y.mod_floor(b).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn invert_shape_examples() {
        assert_eq!(
            invert_shape(Shape::Square, &bi(129_600)).unwrap(),
            Some(bi(360))
        );
        assert_eq!(invert_shape(Shape::Square, &bi(2)).unwrap(), None);
        assert!(invert_shape(Shape::Square, &bi(-4)).is_err());

        assert_eq!(invert_shape(Shape::Oblong, &bi(0)).unwrap(), Some(bi(0)));
        assert_eq!(invert_shape(Shape::Oblong, &bi(5)).unwrap(), None);
        assert_eq!(invert_shape(Shape::Oblong, &bi(6)).unwrap(), Some(bi(2)));
        assert!(invert_shape(Shape::Oblong, &bi(-1)).is_err());

        assert_eq!(invert_shape(Shape::Triple, &bi(720)).unwrap(), Some(bi(9)));
        assert_eq!(invert_shape(Shape::Triple, &bi(0)).unwrap(), Some(bi(0)));
        assert_eq!(invert_shape(Shape::Triple, &bi(7)).unwrap(), None);

        assert_eq!(invert_shape(Shape::Cube, &bi(-8)).unwrap(), Some(bi(-2)));
        assert_eq!(
            invert_shape(Shape::Cube, &bi(7_762_392)).unwrap(),
            Some(bi(198))
        );
    }

    #[test]
    fn fibonacci_family_members() {
        let r = fib_family(2);
        assert_eq!(
            (r.x.clone(), r.y.clone(), r.z.clone()),
            (bi(2), bi(5), bi(9))
        );
        assert_eq!(r.k, bi(3));
        assert!(r.verify());
        assert!(!r.tags.degenerate);

        let r1 = fib_family(1);
        assert_eq!(
            (r1.x.clone(), r1.y.clone(), r1.z.clone()),
            (bi(1), bi(2), bi(1))
        );
        assert!(r1.verify());
        assert!(r1.tags.degenerate);

        assert!(is_even_index_fibonacci(8)); // 5*64+4 = 324 = 18^2
        assert!(!is_even_index_fibonacci(7));
        assert!(!is_even_index_fibonacci(13)); // odd-indexed
        assert!(is_even_index_fibonacci(2584));
    }

    #[test]
    fn record_verify_and_order() {
        let good = SolutionRecord::from_u64(EquationId::Z2, 3, 7, 5, 12, 360);
        assert!(good.verify());
        let bad = SolutionRecord::from_u64(EquationId::Z2, 3, 7, 5, 12, 361);
        assert!(!bad.verify());

        let mut v = alloc::vec![good.clone(), bad.clone(), good.clone()];
        sort_dedup(&mut v);
        // (5,12,360) and (5,12,361) differ in z
        assert_eq!(v.len(), 2);
        assert_eq!(v[0].z, bi(360));
    }
}
