//! Fast integer root extraction and conservative residue filters on machine
//! words. These back the hot search loops; exact `BigInt` verification stays
//! in the callers. Every filter here is one-sided: a true square or cube is
//! never rejected.

/// Floor of the cube root, integer Newton iteration.
pub fn icbrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let bits = 128 - n.leading_zeros();
    // initial x >= cbrt(n)
    let mut x: u128 = 1u128 << bits.div_ceil(3);
    loop {
        let y = (2 * x + n / (x * x)) / 3;
        if y >= x {
            break;
        }
        x = y;
    }
    while x
        .checked_mul(x)
        .and_then(|s| s.checked_mul(x))
        .is_none_or(|c3| c3 > n)
    {
        x -= 1;
    }
    x
}

/// Exact square root of `n`, if `n` is a perfect square.
pub fn exact_sqrt_u128(n: u128) -> Option<u128> {
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// Exact cube root of `n`, if `n` is a perfect cube.
pub fn exact_cbrt_u128(n: u128) -> Option<u128> {
    let r = icbrt_u128(n);
    (r * r * r == n).then_some(r)
}

/// Exact `z >= 0` with `(z-1) z (z+1) = n`, if any. `z^3 - z` is strictly
/// increasing for `z >= 1`, so the cube-root neighbourhood suffices.
pub fn exact_triple_u128(n: u128) -> Option<u128> {
    let c = icbrt_u128(n);
    (c.saturating_sub(1)..=c + 2).find(|&z| {
        z.checked_mul(z)
            .and_then(|s| s.checked_mul(z))
            .is_some_and(|c3| c3 - z == n)
    })
}

/// Square residue masks mod 64, 63 and 65. About 1.5% of uniform inputs
/// survive all three.
#[derive(Clone, Debug)]
pub struct SquareFilter {
    mod64: u64,
    mod63: u64,
    mod65: [bool; 65],
}

impl SquareFilter {
    pub fn new() -> Self {
        let mut mod64 = 0u64;
        let mut mod63 = 0u64;
        let mut mod65 = [false; 65];
        for i in 0u64..65 {
            mod64 |= 1 << ((i * i) % 64);
            mod63 |= 1 << ((i * i) % 63);
            mod65[((i * i) % 65) as usize] = true;
        }
        SquareFilter {
            mod64,
            mod63,
            mod65,
        }
    }

    /// False means `n` is certainly not a square.
    #[inline]
    pub fn maybe_square(&self, n: u128) -> bool {
        if self.mod64 & (1 << (n as u64 & 63)) == 0 {
            return false;
        }
        if self.mod63 & (1 << (n % 63) as u64) == 0 {
            return false;
        }
        self.mod65[(n % 65) as usize]
    }

    /// Filtered exact test.
    pub fn exact_square(&self, n: u128) -> Option<u128> {
        if !self.maybe_square(n) {
            return None;
        }
        exact_sqrt_u128(n)
    }
}

impl Default for SquareFilter {
    fn default() -> Self {
        Self::new()
    }
}

/// Cube residue masks mod 9 and 7 (cubes are {0,1,8} mod 9 and {0,1,6}
/// mod 7), passing 1/7 of uniform inputs.
#[derive(Clone, Copy, Debug)]
pub struct CubeFilter {
    mod9: u16,
    mod7: u8,
}

impl CubeFilter {
    pub fn new() -> Self {
        let mut mod9 = 0u16;
        let mut mod7 = 0u8;
        for i in 0u64..9 {
            mod9 |= 1 << ((i * i * i) % 9);
        }
        for i in 0u64..7 {
            mod7 |= 1 << ((i * i * i) % 7);
        }
        CubeFilter { mod9, mod7 }
    }

    /// False means `n` is certainly not a cube. The caller may pass residues
    /// it tracks incrementally instead of dividing `u128`s.
    #[inline]
    pub fn maybe_cube_residues(&self, n_mod9: u32, n_mod7: u32) -> bool {
        self.mod9 & (1 << n_mod9) != 0 && self.mod7 & (1 << n_mod7) != 0
    }

    #[inline]
    pub fn maybe_cube(&self, n: u128) -> bool {
        self.maybe_cube_residues((n % 9) as u32, (n % 7) as u32)
    }

    pub fn exact_cube(&self, n: u128) -> Option<u128> {
        if !self.maybe_cube(n) {
            return None;
        }
        exact_cbrt_u128(n)
    }
}

impl Default for CubeFilter {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cbrt_edges() {
        assert_eq!(icbrt_u128(0), 0);
        assert_eq!(icbrt_u128(1), 1);
        assert_eq!(icbrt_u128(7), 1);
        assert_eq!(icbrt_u128(8), 2);
        assert_eq!(icbrt_u128(26), 2);
        assert_eq!(icbrt_u128(27), 3);
        for n in [u128::MAX, u128::MAX - 1, 1u128 << 126] {
            let r = icbrt_u128(n);
            assert!(r * r * r <= n);
            assert!((r + 1)
                .checked_mul(r + 1)
                .and_then(|s| s.checked_mul(r + 1))
                .is_none_or(|c| c > n));
        }
    }

    #[test]
    fn exact_roots() {
        assert_eq!(exact_sqrt_u128(129_600), Some(360));
        assert_eq!(exact_sqrt_u128(129_601), None);
        assert_eq!(exact_cbrt_u128(7_762_392), Some(198));
        assert_eq!(exact_triple_u128(720), Some(9)); // 8 * 9 * 10
        assert_eq!(exact_triple_u128(0), Some(0)); // (-1) * 0 * 1
        assert_eq!(exact_triple_u128(721), None);
    }

    #[test]
    fn filters_never_reject_true_squares_or_cubes() {
        let sf = SquareFilter::new();
        let cf = CubeFilter::new();
        for i in 0u128..10_000 {
            assert!(sf.maybe_square(i * i));
            assert!(cf.maybe_cube(i * i * i));
        }
        // and they do reject something
        assert!(!sf.maybe_square(2));
        assert!(!cf.maybe_cube(2));
    }
}
