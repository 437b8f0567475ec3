//! Arithmetic in the prime field F_p.
//!
//! A [`FieldContext`] fixes an odd prime `p` together with its least primitive
//! root `g` and the tables of `x ↦ log_g x` and `e ↦ g^e`. Every character
//! evaluation downstream is a table lookup against these, so construction is
//! O(p) in time and memory and everything after it is O(1).
//!
//! Field elements are plain `u64` residues in `0..p`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest modulus accepted by [`FieldContext::new`]. Products of two
/// residues must fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Deterministic trial division up to `√n`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Euler's criterion, returning the Legendre symbol as `-1`, `0` or `1`.
fn euler_criterion(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Tonelli–Shanks. `a` must be a nonzero quadratic residue mod the odd prime `p`.
fn tonelli_shanks(a: u64, p: u64) -> u64 {
    let a = a % p;
    if p % 4 == 3 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| euler_criterion(z, p) == -1).expect("odd prime has a non-residue");

    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        // least i with t^(2^i) = 1
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    r
}

/// The ambient prime field: modulus, least primitive root and log/exp tables.
#[derive(Debug, Clone)]
pub struct FieldContext {
    p: u64,
    generator: u64,
    /// `log_table[x - 1] = L(x)` for `x` in `1..p`.
    log_table: Vec<u32>,
    /// `exp_table[e] = g^e` for `e` in `0..p-1`.
    exp_table: Vec<u32>,
}

impl FieldContext {
    pub fn new(p: u64) -> Result<Self> {
        Self::with_bound(p, MAX_MODULUS)
    }

    /// Builds the context, refusing primes above `bound` (capped at [`MAX_MODULUS`]).
    pub fn with_bound(p: u64, bound: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenPrime);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let bound = bound.min(MAX_MODULUS);
        if p > bound {
            return Err(Error::PrimeTooLarge { p, bound });
        }

        let n = p - 1;
        let factors = distinct_prime_factors(n);
        let generator = (2..p)
            .find(|&g| factors.iter().all(|&q| pow_mod(g, n / q, p) != 1))
            .expect("every prime has a primitive root");

        let mut exp_table = Vec::with_capacity(n as usize);
        let mut log_table = vec![0u32; n as usize];
        let mut x = 1u64;
        for e in 0..n {
            exp_table.push(x as u32);
            log_table[(x - 1) as usize] = e as u32;
            x = x * generator % p;
        }

        Ok(Self { p, generator, log_table, exp_table })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Order of the multiplicative group, `p - 1`.
    #[inline]
    pub fn group_order(&self) -> u64 {
        self.p - 1
    }

    /// The least primitive root `g`.
    #[inline]
    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// `L(x)` with `g^L(x) = x`.
    pub fn discrete_log(&self, x: u64) -> Result<u64> {
        let x = x % self.p;
        if x == 0 {
            return Err(Error::ZeroArgument);
        }
        Ok(self.log_table[(x - 1) as usize] as u64)
    }

    /// Table lookup for nonzero `x`; callers guarantee `x != 0`.
    #[inline]
    pub(crate) fn log_unchecked(&self, x: u64) -> u64 {
        debug_assert!(x != 0 && x < self.p);
        self.log_table[(x - 1) as usize] as u64
    }

    /// `g^e`, with `e` taken mod `p - 1`.
    #[inline]
    pub fn exp(&self, e: u64) -> u64 {
        self.exp_table[(e % (self.p - 1)) as usize] as u64
    }

    /// Reduces a signed integer into `0..p`.
    #[inline]
    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a % self.p) * (b % self.p) % self.p
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        let l = self.discrete_log(a)?;
        Ok(self.exp(self.group_order() - l))
    }

    /// Legendre symbol: `0` at zero, `1` on nonzero squares, `-1` otherwise.
    #[inline]
    pub fn quadratic_character(&self, x: u64) -> i8 {
        let x = x % self.p;
        if x == 0 {
            0
        } else if self.log_unchecked(x).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Square root of a residue; the smaller of the two roots.
    pub fn sqrt(&self, a: u64) -> Result<u64> {
        let a = a % self.p;
        if a == 0 {
            return Ok(0);
        }
        if self.quadratic_character(a) == -1 {
            return Err(Error::NonResidue { a, p: self.p });
        }
        let r = tonelli_shanks(a, self.p);
        Ok(r.min(self.p - r))
    }

    /// All `y` with `y² = a`.
    pub fn square_roots(&self, a: u64) -> Vec<u64> {
        match self.sqrt(a) {
            Ok(0) => vec![0],
            Ok(r) => vec![r, self.p - r],
            Err(_) => Vec::new(),
        }
    }
}

/// `p = x² + y²` with `x` odd and both positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoSquares {
    pub x: u64,
    pub y: u64,
}

impl TwoSquares {
    /// `2x·(-1)^((x+y+1)/2)`, the numerator of the special ₂F₁ values.
    /// Independent of the signs of `x` and `y`.
    pub fn signed_trace(&self) -> i64 {
        signed_trace(self.x as i64, self.y as i64)
    }
}

/// `2x·(-1)^((x+y+1)/2)` for signed `x` odd, `y` even.
pub fn signed_trace(x: i64, y: i64) -> i64 {
    let half = (x + y + 1).div_euclid(2);
    if half.rem_euclid(2) == 0 {
        2 * x
    } else {
        -2 * x
    }
}

/// Cornacchia's algorithm for `x² + y² = p`, normalized so `x` is odd.
pub fn two_squares_decomposition(p: u64) -> Result<TwoSquares> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p % 4 != 1 {
        return Err(Error::NoRepresentation(p));
    }
    // p ≡ 1 mod 4 so -1 is a residue
    let r = tonelli_shanks(p - 1, p);
    let (mut a, mut b) = (p, r.max(p - r));
    while b * b > p {
        let t = a % b;
        a = b;
        b = t;
    }
    let u = b;
    let rest = p - u * u;
    let v = (rest as f64).sqrt().round() as u64;
    debug_assert_eq!(v * v, rest);
    let (x, y) = if u % 2 == 1 { (u, v) } else { (v, u) };
    Ok(TwoSquares { x, y })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exhaustive_two_squares(p: u64) -> Option<(u64, u64)> {
        (1..p).step_by(2).find_map(|x| (1..p).find(|&y| x * x + y * y == p).map(|y| (x, y)))
    }

    #[test]
    fn context_small_primes() {
        let f7 = FieldContext::new(7).unwrap();
        assert_eq!(f7.generator(), 3);
        assert_eq!(f7.discrete_log(6).unwrap(), 3);
        assert_eq!(FieldContext::new(5).unwrap().generator(), 2);
        assert_eq!(FieldContext::new(3).unwrap().generator(), 2);
        assert_eq!(FieldContext::new(9).unwrap_err(), Error::NotPrime(9));
        assert_eq!(FieldContext::new(2).unwrap_err(), Error::EvenPrime);
        assert_eq!(FieldContext::new(1).unwrap_err(), Error::NotPrime(1));
        assert!(matches!(FieldContext::with_bound(101, 100), Err(Error::PrimeTooLarge { .. })));
    }

    #[test]
    fn least_primitive_root_by_order() {
        for p in (3..200).filter(|&p| is_prime(p)) {
            let ctx = FieldContext::new(p).unwrap();
            let order = |g: u64| (1..p).find(|&k| pow_mod(g, k, p) == 1).unwrap();
            let least = (2..p).find(|&g| order(g) == p - 1).unwrap();
            assert_eq!(ctx.generator(), least, "p = {p}");
        }
    }

    #[test]
    fn tables_are_inverse() {
        for p in (3..200).filter(|&p| is_prime(p)) {
            let ctx = FieldContext::new(p).unwrap();
            assert_eq!(ctx.log_table.len() as u64, p - 1);
            assert_eq!(ctx.exp_table.len() as u64, p - 1);
            assert_eq!(ctx.discrete_log(1).unwrap(), 0);
            assert_eq!(ctx.discrete_log(ctx.generator()).unwrap(), 1);
            for x in 1..p {
                let l = ctx.discrete_log(x).unwrap();
                assert_eq!(ctx.exp(l), x);
                assert_eq!(pow_mod(ctx.generator(), l, p), x);
            }
        }
    }

    #[test]
    fn discrete_log_examples() {
        let ctx = FieldContext::new(7).unwrap();
        assert_eq!(ctx.discrete_log(1), Ok(0));
        assert_eq!(ctx.discrete_log(6), Ok(3));
        assert_eq!(ctx.discrete_log(0), Err(Error::ZeroArgument));
    }

    #[test]
    fn quadratic_character_examples() {
        let f7 = FieldContext::new(7).unwrap();
        assert_eq!(f7.quadratic_character(4), 1);
        assert_eq!(f7.quadratic_character(3), -1);
        assert_eq!(FieldContext::new(5).unwrap().quadratic_character(0), 0);
    }

    #[test]
    fn quadratic_character_counts_squares() {
        for p in (3..200).filter(|&p| is_prime(p)) {
            let ctx = FieldContext::new(p).unwrap();
            let squares: std::collections::BTreeSet<u64> = (1..p).map(|y| y * y % p).collect();
            assert_eq!(squares.len() as u64, (p - 1) / 2);
            for x in 1..p {
                assert_eq!(ctx.quadratic_character(x) == 1, squares.contains(&x));
                assert_eq!(ctx.quadratic_character(x), euler_criterion(x, p));
            }
        }
    }

    #[test]
    fn sqrt_examples() {
        let f13 = FieldContext::new(13).unwrap();
        assert_eq!(f13.sqrt(4), Ok(2));
        assert_eq!(f13.sqrt(3), Ok(4));
        assert_eq!(f13.sqrt(0), Ok(0));
        let f7 = FieldContext::new(7).unwrap();
        assert_eq!(f7.sqrt(3), Err(Error::NonResidue { a: 3, p: 7 }));
    }

    #[test]
    fn sqrt_matches_brute_force() {
        for p in (3..400).filter(|&p| is_prime(p)) {
            let ctx = FieldContext::new(p).unwrap();
            for a in 0..p {
                let roots: Vec<u64> = (0..p).filter(|&r| r * r % p == a).collect();
                match ctx.sqrt(a) {
                    Ok(r) => assert_eq!(r, roots[0], "p={p} a={a}"),
                    Err(_) => assert!(roots.is_empty()),
                }
                assert_eq!(ctx.square_roots(a).len(), roots.len());
            }
        }
    }

    #[test]
    fn two_squares_examples() {
        assert_eq!(two_squares_decomposition(5), Ok(TwoSquares { x: 1, y: 2 }));
        assert_eq!(two_squares_decomposition(13), Ok(TwoSquares { x: 3, y: 2 }));
        assert_eq!(two_squares_decomposition(7), Err(Error::NoRepresentation(7)));
    }

    #[test]
    fn two_squares_against_exhaustive_search() {
        for p in (5..1000).filter(|&p| is_prime(p) && p % 4 == 1) {
            let ts = two_squares_decomposition(p).unwrap();
            assert_eq!(ts.x * ts.x + ts.y * ts.y, p);
            assert_eq!(ts.x % 2, 1);
            assert_eq!(Some((ts.x, ts.y)), exhaustive_two_squares(p));
            let (x, y) = (ts.x as i64, ts.y as i64);
            let t = ts.signed_trace();
            for (sx, sy) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
                assert_eq!(signed_trace(sx * x, sy * y), t, "p={p}");
            }
        }
    }

    #[test]
    fn field_ops() {
        let ctx = FieldContext::new(13).unwrap();
        assert_eq!(ctx.reduce(-1), 12);
        assert_eq!(ctx.inv(2), Ok(7));
        assert_eq!(ctx.inv(0), Err(Error::ZeroArgument));
        assert_eq!(ctx.sub(3, 5), 11);
        assert_eq!(ctx.neg(0), 0);
        assert_eq!(ctx.pow(2, 12), 1);
    }
}
