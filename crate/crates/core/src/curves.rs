//! Curve models over F_p and their rational point counts.
//!
//! Brute-force counts solve each model for a square and count roots with the
//! quadratic character, so a count is O(p). Closed-form counts go through the
//! exact rational `₂F₁` evaluators in [`crate::charsums`].
//!
//! Points at infinity. The projective closures of the Edwards-type models are
//! singular at `(1:0:0)` and `(0:1:0)`; each singular point resolves into two
//! points of the smooth model. For `ax² + y² = 1 + dx²y²` the pair over
//! `(0:1:0)` is rational iff `d` is a square and the pair over `(1:0:0)` iff
//! `ad` is, which is `1 + ϕ(d) + #{y : dy² = a}` points. The Edwards model
//! `x² + y² = a²(1 + x²y²)` is the case `(1, a⁴)`, so it always has four. The
//! cubic models have a single point at infinity.

use std::fmt;

use serde::Serialize;

use crate::charsums::{two_f_one_phi_eps_phi_exact, two_f_one_quadratic_exact, HypergeometricSeries};
use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::rational::ExactRational;

/// Default relative tolerance (times `p²`) for the Clausen identity.
pub const CLAUSEN_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveModel {
    /// `x² + y² = a²(1 + x²y²)`, `a⁵ ≠ a`.
    Edwards { a: u64 },
    /// `ax² + y² = 1 + dx²y²`, `ad(a - d) ≠ 0`.
    TwistedEdwards { a: u64, d: u64 },
    /// `y² = x(x - 1)(x - λ)`, `λ(λ - 1) ≠ 0`.
    Legendre { lambda: u64 },
    /// `y² = (x - 1)(x² + λ)`, `λ(λ + 1) ≠ 0`.
    Clausen { lambda: u64 },
    /// `y² = x(x - a)(x - b)`, `ab(a - b) ≠ 0`.
    Weierstrass { a: u64, b: u64 },
}

impl CurveModel {
    pub fn name(&self) -> &'static str {
        match self {
            CurveModel::Edwards { .. } => "edwards",
            CurveModel::TwistedEdwards { .. } => "twisted",
            CurveModel::Legendre { .. } => "legendre",
            CurveModel::Clausen { .. } => "clausen",
            CurveModel::Weierstrass { .. } => "weierstrass",
        }
    }

    /// Parameters reduced into `0..p`.
    pub fn reduced(&self, ctx: &FieldContext) -> CurveModel {
        let r = |v: u64| v % ctx.p();
        match *self {
            CurveModel::Edwards { a } => CurveModel::Edwards { a: r(a) },
            CurveModel::TwistedEdwards { a, d } => CurveModel::TwistedEdwards { a: r(a), d: r(d) },
            CurveModel::Legendre { lambda } => CurveModel::Legendre { lambda: r(lambda) },
            CurveModel::Clausen { lambda } => CurveModel::Clausen { lambda: r(lambda) },
            CurveModel::Weierstrass { a, b } => CurveModel::Weierstrass { a: r(a), b: r(b) },
        }
    }

    /// `a = …, d = …` style parameter listing.
    pub fn parameters(&self) -> String {
        match *self {
            CurveModel::Edwards { a } => format!("a={a}"),
            CurveModel::TwistedEdwards { a, d } => format!("a={a} d={d}"),
            CurveModel::Legendre { lambda } | CurveModel::Clausen { lambda } => {
                format!("lambda={lambda}")
            }
            CurveModel::Weierstrass { a, b } => format!("a={a} b={b}"),
        }
    }

    /// Whether `(x, y)` satisfies the defining equation.
    pub fn contains(&self, ctx: &FieldContext, pt: AffinePoint) -> bool {
        let (x, y) = (pt.x % ctx.p(), pt.y % ctx.p());
        let (x2, y2) = (ctx.mul(x, x), ctx.mul(y, y));
        match self.reduced(ctx) {
            CurveModel::Edwards { a } => {
                let a2 = ctx.mul(a, a);
                ctx.add(x2, y2) == ctx.mul(a2, ctx.add(1, ctx.mul(x2, y2)))
            }
            CurveModel::TwistedEdwards { a, d } => {
                ctx.add(ctx.mul(a, x2), y2) == ctx.add(1, ctx.mul(d, ctx.mul(x2, y2)))
            }
            model => y2 == model.cubic_rhs(ctx, x).expect("cubic model"),
        }
    }

    /// Right-hand side `f(x)` of the cubic models `y² = f(x)`.
    fn cubic_rhs(&self, ctx: &FieldContext, x: u64) -> Option<u64> {
        match *self {
            CurveModel::Legendre { lambda } => Some(ctx.mul(ctx.mul(x, ctx.sub(x, 1)), ctx.sub(x, lambda))),
            CurveModel::Clausen { lambda } => Some(ctx.mul(ctx.sub(x, 1), ctx.add(ctx.mul(x, x), lambda))),
            CurveModel::Weierstrass { a, b } => Some(ctx.mul(ctx.mul(x, ctx.sub(x, a)), ctx.sub(x, b))),
            _ => None,
        }
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.parameters().replace(' ', ", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct AffinePoint {
    pub x: u64,
    pub y: u64,
}

impl AffinePoint {
    pub fn new(x: u64, y: u64) -> Self {
        Self { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Brute,
    Formula,
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMethod::Brute => "brute",
            CountMethod::Formula => "formula",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub model: CurveModel,
    pub p: u64,
    pub method: CountMethod,
    pub affine: u64,
    pub non_affine: u64,
    pub total: u64,
    pub hyper_value: Option<ExactRational>,
    pub isogeny_partner: Option<CurveModel>,
}

impl CountReport {
    /// `|total - p - 1| ≤ 2√p`, checked in integers.
    pub fn within_hasse_bound(&self) -> bool {
        within_hasse_bound(self.total, self.p)
    }
}

pub fn within_hasse_bound(total: u64, p: u64) -> bool {
    let t = total as i128 - p as i128 - 1;
    t * t <= 4 * p as i128
}

pub fn validate_model(model: &CurveModel, ctx: &FieldContext) -> Result<()> {
    let p = ctx.p();
    let bad = |what: &str| Err(Error::InvalidModel(format!("{what} (mod {p})")));
    match model.reduced(ctx) {
        CurveModel::Edwards { a } => {
            if ctx.pow(a, 5) == a {
                return bad("a^5 ≡ a");
            }
        }
        CurveModel::TwistedEdwards { a, d } => {
            if ctx.mul(ctx.mul(a, d), ctx.sub(a, d)) == 0 {
                return bad("a·d·(a-d) ≡ 0");
            }
        }
        CurveModel::Legendre { lambda } => {
            if ctx.mul(lambda, ctx.sub(lambda, 1)) == 0 {
                return bad("λ(λ-1) ≡ 0");
            }
        }
        CurveModel::Clausen { lambda } => {
            if ctx.mul(lambda, ctx.add(lambda, 1)) == 0 {
                return bad("λ(λ+1) ≡ 0");
            }
        }
        CurveModel::Weierstrass { a, b } => {
            if ctx.mul(ctx.mul(a, b), ctx.sub(a, b)) == 0 {
                return bad("a·b·(a-b) ≡ 0");
            }
        }
    }
    Ok(())
}

/// Number of `y` with `y² = num/den` (den ≠ 0), via `ϕ(num/den) = ϕ(num·den)`.
#[inline]
fn roots_of_quotient(ctx: &FieldContext, num: u64, den: u64) -> u64 {
    (1 + ctx.quadratic_character(ctx.mul(num, den)) as i64) as u64
}

fn count_roots_of_scaled_square(ctx: &FieldContext, scale: u64, target: u64) -> u64 {
    // #{t : scale·t² = target}, scale ≠ 0
    let q = ctx.mul(target, ctx.inv(scale).expect("nonzero"));
    (1 + ctx.quadratic_character(q) as i64) as u64
}

pub fn count_points_brute(model: &CurveModel, ctx: &FieldContext) -> Result<CountReport> {
    validate_model(model, ctx)?;
    let model = model.reduced(ctx);
    let p = ctx.p();
    let (affine, non_affine) = match model {
        CurveModel::Edwards { a } => {
            // y²(1 - a²x²) = a² - x²; the line 1 = a²x² carries no affine point
            let a2 = ctx.mul(a, a);
            let affine = (0..p)
                .map(|x| {
                    let x2 = ctx.mul(x, x);
                    let den = ctx.sub(1, ctx.mul(a2, x2));
                    if den == 0 {
                        0
                    } else {
                        roots_of_quotient(ctx, ctx.sub(a2, x2), den)
                    }
                })
                .sum();
            (affine, 2 + count_roots_of_scaled_square(ctx, a2, 1))
        }
        CurveModel::TwistedEdwards { a, d } => {
            // x²(a - dy²) = 1 - y²
            let affine = (0..p)
                .map(|y| {
                    let y2 = ctx.mul(y, y);
                    let den = ctx.sub(a, ctx.mul(d, y2));
                    if den == 0 {
                        0
                    } else {
                        roots_of_quotient(ctx, ctx.sub(1, y2), den)
                    }
                })
                .sum();
            let over_y_axis = (1 + ctx.quadratic_character(d) as i64) as u64;
            (affine, over_y_axis + count_roots_of_scaled_square(ctx, d, a))
        }
        cubic => {
            let affine = (0..p)
                .map(|x| {
                    let f = cubic.cubic_rhs(ctx, x).expect("cubic model");
                    (1 + ctx.quadratic_character(f) as i64) as u64
                })
                .sum();
            (affine, 1)
        }
    };
    let isogeny_partner = match model {
        CurveModel::Edwards { .. } => Some(isogenous_legendre_partner(&model, ctx)?),
        CurveModel::Weierstrass { a, b } => Some(twisted_partner_of_weierstrass(a, b, ctx)?),
        _ => None,
    };
    Ok(CountReport {
        model,
        p,
        method: CountMethod::Brute,
        affine,
        non_affine,
        total: affine + non_affine,
        hyper_value: None,
        isogeny_partner,
    })
}

/// The two closed forms for a twisted Edwards count, before rounding to integers:
/// `(2 + p + ϕ(a) + pϕ(-a)[F(λ) + G(λ)], 2 + p - ϕ(d) + pϕ(-a)F(λ))` with
/// `λ = a⁻¹d`, `F = ₂F₁(ϕ,ϕ;ε|·)` and `G = ₂F₁(ϕ,ε;ϕ|·)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistedForms {
    pub lambda: u64,
    pub hyper_value: ExactRational,
    pub long_form: ExactRational,
    pub particular_form: ExactRational,
}

pub fn twisted_edwards_forms(a: u64, d: u64, ctx: &FieldContext) -> Result<TwistedForms> {
    validate_model(&CurveModel::TwistedEdwards { a, d }, ctx)?;
    let (a, d) = (a % ctx.p(), d % ctx.p());
    let p = ctx.p() as i64;
    let lambda = ctx.mul(ctx.inv(a)?, d);
    let f = two_f_one_quadratic_exact(ctx, lambda)?;
    let g = two_f_one_phi_eps_phi_exact(ctx, lambda)?;
    let phi_a = ctx.quadratic_character(a) as i64;
    let phi_neg_a = ctx.quadratic_character(ctx.neg(a)) as i64;
    let phi_d = ctx.quadratic_character(d) as i64;
    let long_form = ExactRational::from_integer(2 + p + phi_a) + (f + g) * (p * phi_neg_a);
    let particular_form = ExactRational::from_integer(2 + p - phi_d) + f * (p * phi_neg_a);
    Ok(TwistedForms { lambda, hyper_value: f, long_form, particular_form })
}

fn integral_total(value: ExactRational, what: &str) -> Result<u64> {
    match value.to_integer() {
        Some(n) if n >= 0 => Ok(n as u64),
        _ => Err(Error::FormulaDisagreement(format!("{what} evaluates to {value}, not a count"))),
    }
}

/// Point count from the closed forms in `₂F₁(ϕ,ϕ;ε|·)`. Affine and non-affine
/// parts are not separated: `affine` carries the total and `non_affine` is 0.
pub fn count_points_formula(model: &CurveModel, ctx: &FieldContext) -> Result<CountReport> {
    validate_model(model, ctx)?;
    let model = model.reduced(ctx);
    let p = ctx.p() as i64;
    let base = ExactRational::from_integer(1 + p);
    let (total, hyper, partner) = match model {
        CurveModel::Edwards { a } => {
            let arg = ctx.sub(1, ctx.pow(a, 4));
            let f = two_f_one_quadratic_exact(ctx, arg)?;
            let total = integral_total(base + f * p, "1 + p + p·F(1 - a⁴)")?;
            (total, f, Some(isogenous_legendre_partner(&model, ctx)?))
        }
        CurveModel::TwistedEdwards { a, d } => {
            let forms = twisted_edwards_forms(a, d, ctx)?;
            if forms.long_form != forms.particular_form {
                return Err(Error::FormulaDisagreement(format!(
                    "long form {} vs particular form {}",
                    forms.long_form, forms.particular_form
                )));
            }
            let total = integral_total(forms.particular_form, "2 + p - ϕ(d) + pϕ(-a)·F(d/a)")?;
            (total, forms.hyper_value, None)
        }
        CurveModel::Legendre { lambda } => {
            let f = two_f_one_quadratic_exact(ctx, lambda)?;
            let sign = ctx.quadratic_character(ctx.p() - 1) as i64;
            let total = integral_total(base + f * (p * sign), "1 + p + pϕ(-1)·F(λ)")?;
            (total, f, None)
        }
        CurveModel::Clausen { .. } => return Err(Error::UnsupportedModel("clausen")),
        CurveModel::Weierstrass { .. } => return Err(Error::UnsupportedModel("weierstrass")),
    };
    Ok(CountReport {
        model,
        p: ctx.p(),
        method: CountMethod::Formula,
        affine: total,
        non_affine: 0,
        total,
        hyper_value: Some(hyper),
        isogeny_partner: partner,
    })
}

/// `(x₁, y₁) + (x₂, y₂)` on `x² + y² = a²(1 + x²y²)`:
/// `x₃ = (x₁y₂ + x₂y₁) / (a(1 + x₁x₂y₁y₂))`, `y₃ = (y₁y₂ - x₁x₂) / (a(1 - x₁x₂y₁y₂))`.
/// Neutral element `(0, a)`, inverse `(-x, y)`.
pub fn edwards_add(
    lhs: AffinePoint,
    rhs: AffinePoint,
    model: &CurveModel,
    ctx: &FieldContext,
) -> Result<AffinePoint> {
    let CurveModel::Edwards { a } = model.reduced(ctx) else {
        return Err(Error::InvalidModel(format!("addition law needs an Edwards model, got {model}")));
    };
    validate_model(model, ctx)?;
    for pt in [lhs, rhs] {
        if !model.contains(ctx, pt) {
            return Err(Error::NotOnCurve { x: pt.x, y: pt.y });
        }
    }
    let (x1, y1, x2, y2) = (lhs.x % ctx.p(), lhs.y % ctx.p(), rhs.x % ctx.p(), rhs.y % ctx.p());
    let t = ctx.mul(ctx.mul(x1, x2), ctx.mul(y1, y2));
    let den_x = ctx.mul(a, ctx.add(1, t));
    let den_y = ctx.mul(a, ctx.sub(1, t));
    if den_x == 0 {
        return Err(Error::ExceptionalAddition("1 + x1·x2·y1·y2"));
    }
    if den_y == 0 {
        return Err(Error::ExceptionalAddition("1 - x1·x2·y1·y2"));
    }
    let x3 = ctx.mul(ctx.add(ctx.mul(x1, y2), ctx.mul(x2, y1)), ctx.inv(den_x)?);
    let y3 = ctx.mul(ctx.sub(ctx.mul(y1, y2), ctx.mul(x1, x2)), ctx.inv(den_y)?);
    Ok(AffinePoint::new(x3, y3))
}

/// Every affine point of a model, by enumeration (small `p` only).
pub fn affine_points(model: &CurveModel, ctx: &FieldContext) -> Vec<AffinePoint> {
    let p = ctx.p();
    let mut out = Vec::new();
    for x in 0..p {
        for y in 0..p {
            let pt = AffinePoint::new(x, y);
            if model.contains(ctx, pt) {
                out.push(pt);
            }
        }
    }
    out
}

/// The Legendre curve `E_{a⁴}` with the same number of points as `Edwards{a}`.
pub fn isogenous_legendre_partner(model: &CurveModel, ctx: &FieldContext) -> Result<CurveModel> {
    let CurveModel::Edwards { a } = model.reduced(ctx) else {
        return Err(Error::InvalidModel(format!("expected an Edwards model, got {model}")));
    };
    validate_model(model, ctx)?;
    Ok(CurveModel::Legendre { lambda: ctx.pow(a, 4) })
}

/// `y² = x(x - a)(x - b)` ↦ `4ax² + y² = 1 + 4bx²y²`.
pub fn twisted_partner_of_weierstrass(a: u64, b: u64, ctx: &FieldContext) -> Result<CurveModel> {
    let (a, b) = (a % ctx.p(), b % ctx.p());
    if a == 0 || b == 0 || a == b {
        return Err(Error::SingularCurve(format!(
            "y^2 = x(x-{a})(x-{b}) has a repeated root mod {}",
            ctx.p()
        )));
    }
    Ok(CurveModel::TwistedEdwards { a: ctx.mul(4, a), d: ctx.mul(4, b) })
}

/// Both sides of `(1 + p - N)² = p + p²ϕ(λ+1)·₃F₂(ϕ,ϕ,ϕ; ε,ε | λ/(λ+1))`
/// for the Clausen curve `y² = (x - 1)(x² + λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClausenCheck {
    pub lambda: u64,
    pub count: u64,
    pub lhs: i64,
    pub rhs: f64,
    pub hyper_re: f64,
    pub hyper_im: f64,
    pub pass: bool,
}

pub fn clausen_identity_check(lambda: u64, ctx: &FieldContext) -> Result<ClausenCheck> {
    let series = HypergeometricSeries::three_f_two_quadratic(ctx);
    clausen_identity_check_with(lambda, ctx, &series, CLAUSEN_TOLERANCE)
}

/// As [`clausen_identity_check`], reusing a prebuilt `₃F₂(ϕ,ϕ,ϕ;ε,ε|·)` series.
pub fn clausen_identity_check_with(
    lambda: u64,
    ctx: &FieldContext,
    series: &HypergeometricSeries<'_>,
    tolerance: f64,
) -> Result<ClausenCheck> {
    let lambda = lambda % ctx.p();
    let shifted = ctx.add(lambda, 1);
    if ctx.mul(lambda, shifted) == 0 {
        return Err(Error::DegenerateLambda(lambda));
    }
    let count = count_points_brute(&CurveModel::Clausen { lambda }, ctx)?.total;
    let p = ctx.p() as i64;
    let lhs = (1 + p - count as i64).pow(2);
    let arg = ctx.mul(lambda, ctx.inv(shifted)?);
    let hyper = series.evaluate(arg);
    let sign = ctx.quadratic_character(shifted) as f64;
    let rhs = hyper * ((p * p) as f64 * sign) + p as f64;
    let pf = p as f64;
    let pass = (rhs - lhs as f64).norm() < tolerance * pf * pf;
    Ok(ClausenCheck { lambda, count, lhs, rhs: rhs.re, hyper_re: hyper.re, hyper_im: hyper.im, pass })
}
