//! Smallest-prime-factor sieve and cube-free signatures.
//!
//! The signature of `n` is its exponent vector reduced mod 3, kept as a
//! sorted `(prime, exponent)` list with exponents in `{1, 2}`. Two integers
//! multiply to a perfect cube exactly when their signatures are
//! complementary, which turns the triple-product cube search into an index
//! lookup.

use alloc::vec::Vec;
use core::fmt;

/// Errors from sieve-backed factorizations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SieveError {
    OutOfRange { n: u64, limit: u64 },
}

impl fmt::Display for SieveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SieveError::OutOfRange { n, limit } => {
                write!(f, "{n} is outside the sieve range (limit {limit})")
            }
        }
    }
}

impl core::error::Error for SieveError {}

/// Smallest prime factor for every integer up to a limit.
#[derive(Clone)]
pub struct SpfSieve {
    spf: Vec<u32>,
}

impl SpfSieve {
    /// Sieve covering `1..=limit`.
    pub fn new(limit: u64) -> Self {
        let n = (limit as usize) + 1;
        let mut spf: Vec<u32> = (0..n as u32).collect();
        let mut i = 2usize;
        while i * i < n {
            if spf[i] == i as u32 {
                let mut m = i * i;
                while m < n {
                    if spf[m] == m as u32 {
                        spf[m] = i as u32;
                    }
                    m += i;
                }
            }
            i += 1;
        }
        SpfSieve { spf }
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    /// Prime factorization `[(p, e), ...]` in ascending prime order.
    pub fn factor(&self, n: u64) -> Result<Vec<(u32, u32)>, SieveError> {
        if n == 0 || n > self.limit() {
            return Err(SieveError::OutOfRange {
                n,
                limit: self.limit(),
            });
        }
        let mut out: Vec<(u32, u32)> = Vec::new();
        let mut m = n as usize;
        while m > 1 {
            let p = self.spf[m];
            let mut e = 0u32;
            while (m as u32).is_multiple_of(p) && m > 1 {
                m /= p as usize;
                e += 1;
            }
            out.push((p, e));
        }
        out.sort_by_key(|&(p, _)| p);
        Ok(out)
    }
}

/// Exponent vector mod 3: sorted `(prime, e)` with `e` in `{1, 2}`. The
/// empty signature is a perfect cube.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubeSignature {
    parts: Vec<(u32, u8)>,
}

impl CubeSignature {
    pub fn empty() -> Self {
        CubeSignature { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[(u32, u8)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The cube-free integer this signature represents.
    pub fn value_u128(&self) -> u128 {
        let mut v: u128 = 1;
        for &(p, e) in &self.parts {
            for _ in 0..e {
                v *= p as u128;
            }
        }
        v
    }

    /// Signature with exponents `(3 - e) mod 3`; the product of an integer
    /// with (any cube times) its complement is a perfect cube.
    pub fn complement(&self) -> CubeSignature {
        CubeSignature {
            parts: self.parts.iter().map(|&(p, e)| (p, 3 - e)).collect(),
        }
    }

    /// Value of the complement, or `None` as soon as it exceeds `max`.
    pub fn complement_value_bounded(&self, max: u64) -> Option<u64> {
        let mut v: u64 = 1;
        for &(p, e) in &self.parts {
            for _ in 0..(3 - e) {
                v = v.checked_mul(p as u64)?;
                if v > max {
                    return None;
                }
            }
        }
        Some(v)
    }

    /// Signature of the product: exponents added mod 3, zeros dropped.
    pub fn combine(&self, other: &CubeSignature) -> CubeSignature {
        let mut parts = Vec::with_capacity(self.parts.len() + other.parts.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (pa, ea) = self.parts[i];
            let (pb, eb) = other.parts[j];
            match pa.cmp(&pb) {
                core::cmp::Ordering::Less => {
                    parts.push((pa, ea));
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    parts.push((pb, eb));
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let e = (ea + eb) % 3;
                    if e != 0 {
                        parts.push((pa, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        parts.extend_from_slice(&self.parts[i..]);
        parts.extend_from_slice(&other.parts[j..]);
        CubeSignature { parts }
    }
}

/// Cube-free signature of `n` (requires `1 <= n <= sieve limit`).
pub fn cubefree_signature(n: u64, sieve: &SpfSieve) -> Result<CubeSignature, SieveError> {
    let mut parts: Vec<(u32, u8)> = Vec::new();
    for (p, e) in sieve.factor(n)? {
        let e = (e % 3) as u8;
        if e != 0 {
            parts.push((p, e));
        }
    }
    Ok(CubeSignature { parts })
}
