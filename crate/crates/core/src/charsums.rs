//! Character sums over F_p and the Gaussian hypergeometric series built from them.
//!
//! Jacobi sums are accumulated exactly as histograms over the exponents of
//! `ζ = e^{2πi/(p-1)}` and converted to floating point once, with compensated
//! summation. The quadratic specializations that are rational have separate
//! integer-only evaluators which anchor the floating-point path in tests.

use num_complex::Complex64;

use crate::characters::{all_characters, root_of_unity, CharValue, Character};
use crate::error::{Error, Result};
use crate::field::{two_squares_decomposition, FieldContext};
use crate::rational::ExactRational;

/// Carrier for approximate character-sum values.
pub type ComplexVal = Complex64;

/// Default absolute tolerance for comparing character sums at desk-scale `p`.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Neumaier-compensated accumulator for complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

fn neumaier_step(sum: &mut f64, carry: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *carry += (*sum - t) + x;
    } else {
        *carry += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        neumaier_step(&mut self.sum.re, &mut self.carry.re, z.re);
        neumaier_step(&mut self.sum.im, &mut self.carry.im, z.im);
    }

    pub fn total(&self) -> Complex64 {
        self.sum + self.carry
    }
}

impl FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

/// `Σ_e hist[e]·ζ^e` with `ζ = e^{2πi/n}`, `n = hist.len()`.
pub fn evaluate_histogram(hist: &[i64]) -> Complex64 {
    let n = hist.len() as u64;
    hist.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(e, &c)| root_of_unity(e as u64, n) * c as f64)
        .collect::<CompensatedSum>()
        .total()
}

/// `δ(x)`: 1 at zero, 0 elsewhere.
pub fn delta_indicator(x: u64) -> i64 {
    i64::from(x == 0)
}

/// `δ(A)`: 1 for the trivial character, 0 otherwise.
pub fn delta_char(a: &Character<'_>) -> i64 {
    i64::from(a.is_trivial())
}

/// Exponent histogram of `J(A, B) = Σ_x A(x)B(1-x)`.
///
/// With χ(0) = 0 for every χ (including ε), only `x ∉ {0, 1}` contribute.
pub fn jacobi_histogram(a: &Character<'_>, b: &Character<'_>) -> Result<Vec<i64>> {
    a.check_same_field(b)?;
    let ctx = a.ctx();
    let p = ctx.p();
    let n = ctx.group_order();
    let mut hist = vec![0i64; n as usize];
    for x in 2..p {
        let ea = a.evaluate(x);
        let eb = b.evaluate(p + 1 - x);
        if let CharValue::RootOfUnity(e) = ea.mul(eb, n) {
            hist[e as usize] += 1;
        }
    }
    Ok(hist)
}

pub fn jacobi_sum(a: &Character<'_>, b: &Character<'_>) -> Result<ComplexVal> {
    Ok(evaluate_histogram(&jacobi_histogram(a, b)?))
}

/// `g(χ) = Σ_{x≠0} χ(x)·e^{2πix/p}`.
pub fn gauss_sum(chi: &Character<'_>) -> ComplexVal {
    let ctx = chi.ctx();
    let p = ctx.p();
    let n = ctx.group_order();
    (1..p).map(|x| chi.evaluate(x).to_complex(n) * root_of_unity(x, p)).collect::<CompensatedSum>().total()
}

/// `{A choose B} = B(-1)/p · J(A, B̄)`, by the direct Jacobi sum.
pub fn binomial_symbol(a: &Character<'_>, b: &Character<'_>) -> Result<ComplexVal> {
    a.check_same_field(b)?;
    // B(-1) = ζ^{k(p-1)/2} = (-1)^k
    let j = jacobi_sum(a, &b.conjugate())?;
    let p = a.ctx().p() as f64;
    Ok(j * (b.sign_at_minus_one() as f64 / p))
}

/// Jacobi sum through Gauss sums when `AB ≠ ε`; exact values otherwise
/// (`J(ε, ε) = p - 2`, `J(A, Ā) = -A(-1)`).
fn jacobi_via_gauss(
    a: &Character<'_>,
    b: &Character<'_>,
    gauss: impl Fn(&Character<'_>) -> ComplexVal,
) -> Result<ComplexVal> {
    let ab = a.multiply(b)?;
    if ab.is_trivial() {
        let p = a.ctx().p() as f64;
        return Ok(if a.is_trivial() {
            Complex64::new(p - 2.0, 0.0)
        } else {
            Complex64::new(-a.sign_at_minus_one() as f64, 0.0)
        });
    }
    Ok(gauss(a) * gauss(b) / gauss(&ab))
}

/// `{A choose B}` through the Gauss-sum factorization of `J(A, B̄)`.
pub fn binomial_symbol_gauss(a: &Character<'_>, b: &Character<'_>) -> Result<ComplexVal> {
    let j = jacobi_via_gauss(a, &b.conjugate(), gauss_sum)?;
    let p = a.ctx().p() as f64;
    Ok(j * (b.sign_at_minus_one() as f64 / p))
}

/// All Gauss sums of a field, computed once.
pub struct GaussSumTable<'a> {
    ctx: &'a FieldContext,
    sums: Vec<ComplexVal>,
}

impl<'a> GaussSumTable<'a> {
    pub fn new(ctx: &'a FieldContext) -> Self {
        let sums = all_characters(ctx).iter().map(gauss_sum).collect();
        Self { ctx, sums }
    }

    pub fn get(&self, chi: &Character<'_>) -> ComplexVal {
        debug_assert_eq!(chi.ctx().p(), self.ctx.p());
        self.sums[chi.index() as usize]
    }

    pub fn jacobi(&self, a: &Character<'_>, b: &Character<'_>) -> Result<ComplexVal> {
        jacobi_via_gauss(a, b, |c| self.get(c))
    }

    pub fn binomial(&self, a: &Character<'_>, b: &Character<'_>) -> Result<ComplexVal> {
        let j = self.jacobi(a, &b.conjugate())?;
        Ok(j * (b.sign_at_minus_one() as f64 / self.ctx.p() as f64))
    }
}

/// `{χ_i choose χ_j}` for every pair of characters of one field.
pub struct BinomialTable<'a> {
    ctx: &'a FieldContext,
    values: Vec<ComplexVal>,
}

impl<'a> BinomialTable<'a> {
    pub fn new(ctx: &'a FieldContext) -> Self {
        let chars = all_characters(ctx);
        let mut values = Vec::with_capacity(chars.len() * chars.len());
        for a in &chars {
            for b in &chars {
                values.push(binomial_symbol(a, b).expect("same field"));
            }
        }
        Self { ctx, values }
    }

    pub fn ctx(&self) -> &'a FieldContext {
        self.ctx
    }

    pub fn get(&self, a: &Character<'_>, b: &Character<'_>) -> ComplexVal {
        let n = self.ctx.group_order() as usize;
        self.values[a.index() as usize * n + b.index() as usize]
    }
}

/// Parameters `A_0, …, A_n; B_1, …, B_n | x` of an `ₙ₊₁Fₙ` series.
#[derive(Debug, Clone)]
pub struct HypergeomParams<'a> {
    pub upper: Vec<Character<'a>>,
    pub lower: Vec<Character<'a>>,
    pub x: u64,
}

impl<'a> HypergeomParams<'a> {
    pub fn new(upper: Vec<Character<'a>>, lower: Vec<Character<'a>>, x: u64) -> Result<Self> {
        validate_parameters(&upper, &lower)?;
        let p = upper[0].ctx().p();
        if x >= p {
            return Err(Error::InvalidParams(format!("argument {x} is not reduced mod {p}")));
        }
        Ok(Self { upper, lower, x })
    }
}

fn validate_parameters(upper: &[Character<'_>], lower: &[Character<'_>]) -> Result<()> {
    if upper.is_empty() {
        return Err(Error::InvalidParams("no upper characters".into()));
    }
    if upper.len() != lower.len() + 1 {
        return Err(Error::InvalidParams(format!(
            "{} upper and {} lower characters; need exactly one more upper",
            upper.len(),
            lower.len()
        )));
    }
    let first = &upper[0];
    for c in upper.iter().chain(lower) {
        first.check_same_field(c)?;
    }
    Ok(())
}

/// A Gaussian hypergeometric series with its per-character coefficients
/// `(p/(p-1))·{A_0χ choose χ}·Π_i {A_iχ choose B_iχ}` precomputed, so each
/// evaluation at a new argument costs O(p).
pub struct HypergeometricSeries<'a> {
    ctx: &'a FieldContext,
    coefficients: Vec<ComplexVal>,
}

impl<'a> HypergeometricSeries<'a> {
    pub fn new(upper: &[Character<'a>], lower: &[Character<'a>]) -> Result<Self> {
        validate_parameters(upper, lower)?;
        let ctx = upper[0].ctx();
        let p = ctx.p() as f64;
        let scale = p / (p - 1.0);
        let mut coefficients = Vec::with_capacity(ctx.group_order() as usize);
        for chi in all_characters(ctx) {
            let mut c = binomial_symbol(&upper[0].multiply(&chi)?, &chi)?;
            for (a, b) in upper[1..].iter().zip(lower) {
                c *= binomial_symbol(&a.multiply(&chi)?, &b.multiply(&chi)?)?;
            }
            coefficients.push(c * scale);
        }
        Ok(Self { ctx, coefficients })
    }

    /// `₂F₁(ϕ, ϕ; ε | ·)`.
    pub fn two_f_one_quadratic(ctx: &'a FieldContext) -> Self {
        let phi = Character::quadratic(ctx);
        Self::new(&[phi, phi], &[Character::trivial(ctx)]).expect("valid parameters")
    }

    /// `₂F₁(ϕ, ε; ϕ | ·)`.
    pub fn two_f_one_phi_eps_phi(ctx: &'a FieldContext) -> Self {
        let phi = Character::quadratic(ctx);
        Self::new(&[phi, Character::trivial(ctx)], &[phi]).expect("valid parameters")
    }

    /// `₃F₂(ϕ, ϕ, ϕ; ε, ε | ·)`.
    pub fn three_f_two_quadratic(ctx: &'a FieldContext) -> Self {
        let phi = Character::quadratic(ctx);
        let eps = Character::trivial(ctx);
        Self::new(&[phi, phi, phi], &[eps, eps]).expect("valid parameters")
    }

    pub fn evaluate(&self, x: u64) -> ComplexVal {
        let x = x % self.ctx.p();
        if x == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let n = self.ctx.group_order();
        let l = self.ctx.discrete_log(x).expect("nonzero");
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| c * root_of_unity(k as u64 * l % n, n))
            .collect::<CompensatedSum>()
            .total()
    }
}

pub fn hypergeometric_series(params: &HypergeomParams<'_>) -> Result<ComplexVal> {
    let series = HypergeometricSeries::new(&params.upper, &params.lower)?;
    Ok(series.evaluate(params.x))
}

/// `Σ_x ϕ(x(x-1)(x-λ))`, integers only.
pub fn legendre_trace(ctx: &FieldContext, lambda: u64) -> i64 {
    (0..ctx.p())
        .map(|x| {
            let v = ctx.mul(ctx.mul(x, ctx.sub(x, 1)), ctx.sub(x, lambda));
            ctx.quadratic_character(v) as i64
        })
        .sum()
}

fn check_lambda(ctx: &FieldContext, lambda: u64) -> Result<u64> {
    let lambda = lambda % ctx.p();
    if lambda == 0 || lambda == 1 {
        return Err(Error::DegenerateLambda(lambda));
    }
    Ok(lambda)
}

/// `₂F₁(ϕ, ϕ; ε | λ) = ϕ(-1)·Σ_x ϕ(x(x-1)(x-λ)) / p`, exactly.
pub fn two_f_one_quadratic_exact(ctx: &FieldContext, lambda: u64) -> Result<ExactRational> {
    let lambda = check_lambda(ctx, lambda)?;
    let sign = ctx.quadratic_character(ctx.p() - 1) as i64;
    Ok(ExactRational::new(sign * legendre_trace(ctx, lambda), ctx.p() as i64))
}

/// The three arguments with a closed-form `₂F₁(ϕ, ϕ; ε | λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialArgument {
    MinusOne,
    /// The inverse of 2 in F_p.
    Half,
    Two,
}

impl SpecialArgument {
    pub const ALL: [SpecialArgument; 3] =
        [SpecialArgument::MinusOne, SpecialArgument::Half, SpecialArgument::Two];

    pub fn residue(self, p: u64) -> u64 {
        match self {
            SpecialArgument::MinusOne => p - 1,
            SpecialArgument::Half => p.div_ceil(2),
            SpecialArgument::Two => 2 % p,
        }
    }

    /// Recognizes `λ` as one of the special arguments mod `p`.
    pub fn classify(lambda: u64, p: u64) -> Option<SpecialArgument> {
        let lambda = lambda % p;
        Self::ALL.into_iter().find(|s| s.residue(p) == lambda)
    }

    pub fn label(self) -> &'static str {
        match self {
            SpecialArgument::MinusOne => "-1",
            SpecialArgument::Half => "1/2",
            SpecialArgument::Two => "2",
        }
    }
}

impl std::str::FromStr for SpecialArgument {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "-1" => Ok(SpecialArgument::MinusOne),
            "1/2" | "2^-1" | "half" => Ok(SpecialArgument::Half),
            "2" => Ok(SpecialArgument::Two),
            other => Err(format!("unsupported λ {other:?}: expected -1, 1/2 or 2")),
        }
    }
}

/// Closed form for `λ ∈ {-1, 1/2, 2}`: 0 when `p ≡ 3 mod 4`, otherwise
/// `2x·(-1)^((x+y+1)/2) / p` where `p = x² + y²`, `x` odd.
///
/// Note: for `λ = 1/2` the trace value carries an extra factor `ϕ(2)`, so this
/// disagrees in sign with [`two_f_one_quadratic_exact`] when `p ≡ 5 mod 8`.
pub fn two_f_one_special_value(p: u64, lambda: u64) -> Result<ExactRational> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !crate::field::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if SpecialArgument::classify(lambda, p).is_none() {
        return Err(Error::BadLambda(lambda % p));
    }
    if p % 4 == 3 {
        return Ok(ExactRational::ZERO);
    }
    let ts = two_squares_decomposition(p)?;
    Ok(ExactRational::new(ts.signed_trace(), p as i64))
}

/// `₂F₁(ϕ, ε; ϕ | λ)` in closed form:
/// `ϕ(-λ)ε(1-λ){ϕ choose ϕ} - ϕ(-1)ε(λ)/p + ((p-1)/p)ϕ(-1)δ(1-λ)`,
/// i.e. `-(ϕ(-λ) + ϕ(-1))/p` for `λ ≠ 1` and `ϕ(-1)(p-2)/p` at `λ = 1`.
pub fn two_f_one_phi_eps_phi_exact(ctx: &FieldContext, lambda: u64) -> Result<ExactRational> {
    let p = ctx.p() as i64;
    let lambda = lambda % ctx.p();
    if lambda == 0 {
        return Err(Error::ZeroArgument);
    }
    let phi_m1 = ctx.quadratic_character(ctx.p() - 1) as i64;
    if lambda == 1 {
        return Ok(ExactRational::new(phi_m1 * (p - 2), p));
    }
    let phi_neg_lambda = ctx.quadratic_character(ctx.neg(lambda)) as i64;
    Ok(ExactRational::new(-(phi_neg_lambda + phi_m1), p))
}
