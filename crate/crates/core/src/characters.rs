//! Multiplicative characters of F_p^×, extended to F_p by χ(0) = 0.
//!
//! `χ_k(g^m) = ζ^{km}` with `ζ = e^{2πi/(p-1)}` and `g` the context's least
//! primitive root. Values are carried exactly as exponents of `ζ`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::FieldContext;

/// A character value: `0` or a power of `ζ = e^{2πi/(p-1)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharValue {
    Zero,
    /// `ζ^e`, exponent reduced mod `p - 1`.
    RootOfUnity(u64),
}

impl CharValue {
    /// Product, given the group order `n = p - 1`.
    pub fn mul(self, other: CharValue, n: u64) -> CharValue {
        match (self, other) {
            (CharValue::RootOfUnity(a), CharValue::RootOfUnity(b)) => CharValue::RootOfUnity((a + b) % n),
            _ => CharValue::Zero,
        }
    }

    pub fn conj(self, n: u64) -> CharValue {
        match self {
            CharValue::Zero => CharValue::Zero,
            CharValue::RootOfUnity(e) => CharValue::RootOfUnity((n - e % n) % n),
        }
    }

    pub fn to_complex(self, n: u64) -> Complex64 {
        match self {
            CharValue::Zero => Complex64::new(0.0, 0.0),
            CharValue::RootOfUnity(e) => root_of_unity(e, n),
        }
    }
}

/// `e^{2πi·e/n}`, snapped to exact values at the quarter turns.
pub fn root_of_unity(e: u64, n: u64) -> Complex64 {
    let e = e % n;
    if e == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * e == n {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * e == n {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * e == 3 * n {
        return Complex64::new(0.0, -1.0);
    }
    let theta = std::f64::consts::TAU * (e as f64) / (n as f64);
    let (s, c) = theta.sin_cos();
    Complex64::new(c, s)
}

/// The character `χ_k`.
#[derive(Clone, Copy)]
pub struct Character<'a> {
    ctx: &'a FieldContext,
    index: u64,
}

impl<'a> Character<'a> {
    /// `χ_k` with `k` reduced mod `p - 1`. Negative `k` is allowed.
    pub fn by_index(ctx: &'a FieldContext, k: i64) -> Self {
        let n = ctx.group_order() as i64;
        Self { ctx, index: k.rem_euclid(n) as u64 }
    }

    /// The trivial character ε.
    pub fn trivial(ctx: &'a FieldContext) -> Self {
        Self { ctx, index: 0 }
    }

    /// The quadratic character ϕ.
    pub fn quadratic(ctx: &'a FieldContext) -> Self {
        Self { ctx, index: ctx.group_order() / 2 }
    }

    pub fn ctx(&self) -> &'a FieldContext {
        self.ctx
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }

    pub fn is_quadratic(&self) -> bool {
        2 * self.index == self.ctx.group_order()
    }

    /// `(p - 1) / gcd(k, p - 1)`.
    pub fn order(&self) -> u64 {
        let n = self.ctx.group_order();
        n / num_integer::gcd(self.index, n)
    }

    pub fn evaluate(&self, x: u64) -> CharValue {
        let x = x % self.ctx.p();
        if x == 0 {
            return CharValue::Zero;
        }
        let n = self.ctx.group_order();
        CharValue::RootOfUnity(self.index * self.ctx.log_unchecked(x) % n)
    }

    /// Same as [`evaluate`](Self::evaluate) for a signed argument.
    pub fn evaluate_signed(&self, x: i64) -> CharValue {
        self.evaluate(self.ctx.reduce(x))
    }

    pub fn evaluate_complex(&self, x: u64) -> Complex64 {
        self.evaluate(x).to_complex(self.ctx.group_order())
    }

    /// `χ(-1) = (-1)^k`, always real.
    pub fn sign_at_minus_one(&self) -> i64 {
        if self.index.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn multiply(&self, other: &Character<'a>) -> Result<Character<'a>> {
        self.check_same_field(other)?;
        let n = self.ctx.group_order();
        Ok(Character { ctx: self.ctx, index: (self.index + other.index) % n })
    }

    pub fn divide(&self, other: &Character<'a>) -> Result<Character<'a>> {
        self.multiply(&other.conjugate())
    }

    pub fn conjugate(&self) -> Character<'a> {
        let n = self.ctx.group_order();
        Character { ctx: self.ctx, index: (n - self.index) % n }
    }

    pub fn pow(&self, e: i64) -> Character<'a> {
        let n = self.ctx.group_order() as i64;
        let k = (self.index as i64 * e.rem_euclid(n)).rem_euclid(n);
        Character { ctx: self.ctx, index: k as u64 }
    }

    pub(crate) fn check_same_field(&self, other: &Character<'_>) -> Result<()> {
        if std::ptr::eq(self.ctx, other.ctx) || self.ctx.p() == other.ctx.p() {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.ctx.p(), other.ctx.p()))
        }
    }
}

impl PartialEq for Character<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.p() == other.ctx.p() && self.index == other.index
    }
}

impl Eq for Character<'_> {}

impl fmt::Debug for Character<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Character<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            write!(f, "eps")
        } else if self.is_quadratic() {
            write!(f, "phi")
        } else {
            write!(f, "chi_{}", self.index)
        }
    }
}

/// `[χ_0, χ_1, …, χ_{p-2}]`.
pub fn all_characters(ctx: &FieldContext) -> Vec<Character<'_>> {
    (0..ctx.group_order()).map(|k| Character { ctx, index: k }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::is_prime;

    #[test]
    fn by_index() {
        let ctx = FieldContext::new(7).unwrap();
        assert!(Character::by_index(&ctx, 0).is_trivial());
        assert_eq!(Character::by_index(&ctx, 3), Character::quadratic(&ctx));
        assert_eq!(Character::by_index(&ctx, 9).index(), 3);
        assert_eq!(Character::by_index(&ctx, -1).index(), 5);
    }

    #[test]
    fn evaluate_examples() {
        let ctx = FieldContext::new(7).unwrap();
        for k in 0..6 {
            assert_eq!(Character::by_index(&ctx, k).evaluate(0), CharValue::Zero);
        }
        assert_eq!(Character::trivial(&ctx).evaluate(5), CharValue::RootOfUnity(0));
        let phi = Character::quadratic(&ctx);
        assert_eq!(phi.evaluate(3), CharValue::RootOfUnity(3));
        assert_eq!(phi.evaluate_complex(3), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn multiply_and_conjugate() {
        let ctx = FieldContext::new(7).unwrap();
        let phi = Character::quadratic(&ctx);
        let eps = Character::trivial(&ctx);
        let chi = |k| Character::by_index(&ctx, k);
        assert_eq!(phi.multiply(&phi).unwrap(), eps);
        assert_eq!(eps.multiply(&chi(2)).unwrap(), chi(2));
        assert_eq!(chi(1).multiply(&chi(4)).unwrap(), chi(5));
        assert_eq!(eps.conjugate(), eps);
        assert_eq!(phi.conjugate(), phi);
        assert_eq!(chi(1).conjugate(), chi(5));

        let other = FieldContext::new(11).unwrap();
        assert_eq!(phi.multiply(&Character::quadratic(&other)).unwrap_err(), Error::ContextMismatch(7, 11));
    }

    #[test]
    fn all_characters_listing() {
        let f5 = FieldContext::new(5).unwrap();
        assert_eq!(all_characters(&f5).len(), 4);
        let f7 = FieldContext::new(7).unwrap();
        let chars = all_characters(&f7);
        assert_eq!(chars.len(), 6);
        assert!(chars[3].is_quadratic());
        let f3 = FieldContext::new(3).unwrap();
        let chars = all_characters(&f3);
        assert!(chars[0].is_trivial() && chars[1].is_quadratic());
    }

    #[test]
    fn order_formula() {
        let ctx = FieldContext::new(13).unwrap();
        for c in all_characters(&ctx) {
            let brute = (1..=12).find(|&m| c.pow(m).is_trivial()).unwrap() as u64;
            assert_eq!(c.order(), brute);
        }
    }

    /// Σ_χ χ(x) as an exact exponent histogram: `p - 1` at `x = 1`, else 0.
    #[test]
    fn orthogonality() {
        for p in (3..=61).filter(|&p| is_prime(p)) {
            let ctx = FieldContext::new(p).unwrap();
            let n = ctx.group_order();
            for x in 1..p {
                let mut hist = vec![0i64; n as usize];
                for c in all_characters(&ctx) {
                    match c.evaluate(x) {
                        CharValue::RootOfUnity(e) => hist[e as usize] += 1,
                        CharValue::Zero => unreachable!(),
                    }
                }
                if x == 1 {
                    assert_eq!(hist[0], n as i64);
                } else {
                    // k·L(x) hits each multiple of d = gcd(L(x), n) exactly d
                    // times; a full set of (n/d)-th roots of unity sums to zero
                    let d = num_integer::gcd(ctx.discrete_log(x).unwrap(), n);
                    assert!(d < n);
                    for (e, &count) in hist.iter().enumerate() {
                        let want = if (e as u64).is_multiple_of(d) { d as i64 } else { 0 };
                        assert_eq!(count, want, "p={p} x={x} e={e}");
                    }
                    let s: Complex64 =
                        hist.iter().enumerate().map(|(e, &c)| root_of_unity(e as u64, n) * c as f64).sum();
                    assert!(s.norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn quadratic_matches_legendre_symbol() {
        for p in (3..200).filter(|&p| is_prime(p)) {
            let ctx = FieldContext::new(p).unwrap();
            let phi = Character::quadratic(&ctx);
            for x in 0..p {
                let expected = ctx.quadratic_character(x);
                let got = match phi.evaluate(x) {
                    CharValue::Zero => 0,
                    CharValue::RootOfUnity(0) => 1,
                    CharValue::RootOfUnity(e) => {
                        assert_eq!(2 * e, p - 1);
                        -1
                    }
                };
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn pointwise_product() {
        let ctx = FieldContext::new(19).unwrap();
        let n = ctx.group_order();
        for a in all_characters(&ctx) {
            for b in all_characters(&ctx) {
                let ab = a.multiply(&b).unwrap();
                for x in 0..19 {
                    assert_eq!(ab.evaluate(x), a.evaluate(x).mul(b.evaluate(x), n));
                }
                assert_eq!(a.evaluate(5).conj(n), a.conjugate().evaluate(5));
            }
        }
    }
}
