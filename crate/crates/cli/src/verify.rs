//! Bulk verification scans over a prime range.

use charsum_core::charsums::{legendre_trace, DEFAULT_TOLERANCE};
use charsum_core::curves::{clausen_identity_check_with, twisted_edwards_forms, CLAUSEN_TOLERANCE};
use charsum_core::{
    count_points_brute, two_f_one_quadratic_exact, two_f_one_special_value, validate_model, CurveModel,
    ExactRational, FieldContext, HypergeometricSeries, SpecialArgument,
};
use clap::ValueEnum;
use rayon::prelude::*;

use crate::config::{CliError, Outcome, OutputFormat, RunConfig};
use crate::lemmas::check_lemmas;
use crate::report::{emit_report, VerificationRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Suite {
    /// Edwards counts vs 1 + p + p·2F1(1 - a^4).
    Thm1,
    /// Twisted Edwards counts vs both closed forms.
    Thm2,
    /// Edwards vs Legendre partner, Weierstrass vs twisted partner.
    CorIso,
    /// Closed-form special values vs the trace value.
    Prop1,
    /// Binomial-symbol identities, one record per identity and prime.
    Lemmas,
    /// Clausen curve counts vs the 3F2 value.
    Clausen,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] =
        [Suite::Thm1, Suite::Thm2, Suite::CorIso, Suite::Prop1, Suite::Lemmas, Suite::Clausen];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::CorIso => "cor-iso",
            Suite::Prop1 => "prop1",
            Suite::Lemmas => "lemmas",
            Suite::Clausen => "clausen",
            Suite::All => "all",
        }
    }

    fn min_prime(self) -> u64 {
        match self {
            Suite::Prop1 => 5,
            _ => 3,
        }
    }

    fn records_for(self, ctx: &FieldContext, cfg: &RunConfig) -> Vec<VerificationRecord> {
        match self {
            Suite::Thm1 => thm1(ctx),
            Suite::Thm2 => thm2(ctx),
            Suite::CorIso => cor_iso(ctx),
            Suite::Prop1 => prop1(ctx),
            Suite::Lemmas => lemmas(ctx, cfg.tolerance_or(DEFAULT_TOLERANCE)),
            Suite::Clausen => clausen(ctx, cfg.tolerance_or(CLAUSEN_TOLERANCE)),
            Suite::All => Suite::EACH.iter().flat_map(|s| s.records_for(ctx, cfg)).collect(),
        }
    }
}

fn edwards_models(ctx: &FieldContext) -> impl Iterator<Item = CurveModel> + '_ {
    (1..ctx.p()).map(|a| CurveModel::Edwards { a }).filter(|m| validate_model(m, ctx).is_ok())
}

fn brute_total(model: &CurveModel, ctx: &FieldContext) -> i64 {
    count_points_brute(model, ctx).expect("validated model").total as i64
}

fn thm1(ctx: &FieldContext) -> Vec<VerificationRecord> {
    let p = ctx.p() as i64;
    edwards_models(ctx)
        .map(|model| {
            let CurveModel::Edwards { a } = model else { unreachable!() };
            let f = two_f_one_quadratic_exact(ctx, ctx.sub(1, ctx.pow(a, 4))).expect("a^4 ≠ 1");
            let formula = ExactRational::from_integer(1 + p) + f * p;
            VerificationRecord::new(
                "thm1",
                ctx.p(),
                model.to_string(),
                brute_total(&model, ctx),
                formula,
                Some(f),
            )
        })
        .collect()
}

/// `formula_total` is the long form unless it agrees with the count, in which
/// case it is the particular form, so `match` means both forms agree.
fn thm2(ctx: &FieldContext) -> Vec<VerificationRecord> {
    let p = ctx.p();
    let mut out = Vec::new();
    for a in 1..p {
        for d in (1..p).filter(|&d| d != a) {
            let model = CurveModel::TwistedEdwards { a, d };
            let brute = brute_total(&model, ctx);
            let forms = twisted_edwards_forms(a, d, ctx).expect("validated model");
            let formula = if forms.long_form != ExactRational::from_integer(brute) {
                forms.long_form
            } else {
                forms.particular_form
            };
            out.push(VerificationRecord::new(
                "thm2",
                p,
                model.to_string(),
                brute,
                formula,
                Some(forms.hyper_value),
            ));
        }
    }
    out
}

fn cor_iso(ctx: &FieldContext) -> Vec<VerificationRecord> {
    let p = ctx.p();
    let pair = |model: CurveModel, partner: CurveModel| {
        let label = format!("{model} ~ {partner}");
        let partner_total = ExactRational::from_integer(brute_total(&partner, ctx));
        VerificationRecord::new("cor-iso", p, label, brute_total(&model, ctx), partner_total, None)
    };
    let mut out: Vec<_> = edwards_models(ctx)
        .map(|model| {
            let CurveModel::Edwards { a } = model else { unreachable!() };
            pair(model, CurveModel::Legendre { lambda: ctx.pow(a, 4) })
        })
        .collect();
    for a in 1..p {
        for b in (1..p).filter(|&b| b != a) {
            let model = CurveModel::Weierstrass { a, b };
            let partner = count_points_brute(&model, ctx)
                .expect("nonsingular")
                .isogeny_partner
                .expect("weierstrass partner");
            out.push(pair(model, partner));
        }
    }
    out
}

/// Totals are `p·₂F₁`: the trace `ϕ(-1)Σϕ(x(x-1)(x-λ))` vs `p` times the closed form.
fn prop1(ctx: &FieldContext) -> Vec<VerificationRecord> {
    let p = ctx.p();
    let sign = ctx.quadratic_character(p - 1) as i64;
    SpecialArgument::ALL
        .iter()
        .map(|arg| {
            let lambda = arg.residue(p);
            let trace = sign * legendre_trace(ctx, lambda);
            let closed = two_f_one_special_value(p, lambda).expect("special argument");
            VerificationRecord::new(
                "prop1",
                p,
                format!("lambda={}", arg.label()),
                trace,
                closed * p as i64,
                Some(ExactRational::new(trace, p as i64)),
            )
        })
        .collect()
}

/// Totals are the number of instances checked vs the number that held.
fn lemmas(ctx: &FieldContext, tol: f64) -> Vec<VerificationRecord> {
    let outcome = check_lemmas(ctx, tol);
    outcome
        .tallies
        .iter()
        .map(|t| {
            let mut label = format!("lemma {}", t.label);
            if t.label == "1f" {
                label.push_str(&format!(" (skipped {})", outcome.skipped_1f));
            }
            let passes = ExactRational::from_integer(t.passes as i64);
            VerificationRecord::new("lemmas", ctx.p(), label, t.checks as i64, passes, None)
        })
        .collect()
}

/// Totals are `(1 + p - N)²` vs the rounded right-hand side. A right-hand side
/// outside the tolerance is kept to six decimals so the record cannot match.
fn clausen(ctx: &FieldContext, tol: f64) -> Vec<VerificationRecord> {
    let p = ctx.p();
    let series = HypergeometricSeries::three_f_two_quadratic(ctx);
    (1..p - 1)
        .map(|lambda| {
            let check = clausen_identity_check_with(lambda, ctx, &series, tol).expect("λ(λ+1) ≠ 0");
            let rounded = check.rhs.round() as i64;
            let rhs = if check.pass || rounded != check.lhs {
                ExactRational::from_integer(rounded)
            } else {
                ExactRational::new((check.rhs * 1e6).round() as i64, 1_000_000)
            };
            let model = CurveModel::Clausen { lambda };
            VerificationRecord::new("clausen", p, model.to_string(), check.lhs, rhs, None)
        })
        .collect()
}

/// Runs `suite` on every prime in `[pmin, pmax]` using the configured worker
/// pool. Records come back in ascending `p` (suite-major for `all`).
pub fn scan(
    cfg: &RunConfig,
    suite: Suite,
    pmin: u64,
    pmax: u64,
) -> Result<Vec<VerificationRecord>, CliError> {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let pool = cfg.thread_pool()?;
    let all_primes = cfg.prime_range(pmin, pmax)?;
    let mut records = Vec::new();
    for s in suites {
        let primes: Vec<u64> = all_primes.iter().copied().filter(|&p| p >= s.min_prime()).collect();
        let per_prime: Vec<Vec<VerificationRecord>> = pool.install(|| {
            primes
                .par_iter()
                .map(|&p| cfg.field(p).map(|ctx| s.records_for(&ctx, cfg)))
                .collect::<Result<_, _>>()
        })?;
        records.extend(per_prime.into_iter().flatten());
    }
    Ok(records)
}

pub fn run_verify_scan(
    cfg: &RunConfig,
    suite: Suite,
    pmin: u64,
    pmax: u64,
    mismatches_only: bool,
) -> Result<Outcome, CliError> {
    let mut records = scan(cfg, suite, pmin, pmax)?;
    let checked = records.len();
    let mismatches = records.iter().filter(|r| !r.matches).count();
    if mismatches_only {
        records.retain(|r| !r.matches);
    }
    Ok(Outcome {
        output: emit_report(&records, cfg.format),
        summary: Some(format!("suite={} checked={checked} mismatches={mismatches}", suite.name())),
        mismatch: mismatches > 0,
    })
}

/// Whether the summary belongs on stdout next to the records.
pub fn summary_on_stdout(format: OutputFormat) -> bool {
    format == OutputFormat::Table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thm1_small_range_matches() {
        let recs = scan(&RunConfig::default(), Suite::Thm1, 3, 31).unwrap();
        assert!(!recs.is_empty());
        assert!(recs.iter().all(|r| r.matches));
        assert!(recs.windows(2).all(|w| w[0].p <= w[1].p));
        let first = &recs[0];
        assert_eq!((first.p, first.model_parameters.as_str(), first.brute_total), (7, "edwards(a=2)", 8));
    }

    #[test]
    fn thm2_mismatches_only_for_nonsquare_d() {
        let recs = scan(&RunConfig::default(), Suite::Thm2, 3, 13).unwrap();
        for r in &recs {
            let ctx = FieldContext::new(r.p).unwrap();
            let d: u64 =
                r.model_parameters.rsplit("d=").next().unwrap().trim_end_matches(')').parse().unwrap();
            let off = ExactRational::from_integer(r.brute_total) - r.formula_total;
            let expected = ExactRational::from_integer(ctx.quadratic_character(d) as i64 - 1);
            assert_eq!(off, expected, "{r:?}");
        }
    }

    #[test]
    fn prop1_mismatches_are_half_at_five_mod_eight() {
        let recs = scan(&RunConfig::default(), Suite::Prop1, 3, 101).unwrap();
        assert_eq!(recs[0].p, 5);
        for r in recs.iter().filter(|r| !r.matches) {
            assert_eq!(r.model_parameters, "lambda=1/2");
            assert_eq!(r.p % 8, 5);
            assert_eq!(ExactRational::from_integer(-r.brute_total), r.formula_total);
        }
    }

    #[test]
    fn all_suite_is_suite_major() {
        let recs = scan(&RunConfig { jobs: Some(2), ..RunConfig::default() }, Suite::All, 3, 11).unwrap();
        let order: Vec<&str> = recs.iter().map(|r| r.suite.as_str()).collect();
        let mut dedup = order.clone();
        dedup.dedup();
        assert_eq!(dedup, ["thm1", "thm2", "cor-iso", "prop1", "lemmas", "clausen"]);
    }

    #[test]
    fn parallel_and_serial_scans_agree() {
        let one = scan(&RunConfig { jobs: Some(1), ..RunConfig::default() }, Suite::CorIso, 3, 29).unwrap();
        let many = scan(&RunConfig { jobs: Some(4), ..RunConfig::default() }, Suite::CorIso, 3, 29).unwrap();
        assert_eq!(one, many);
        assert!(one.iter().all(|r| r.matches));
    }
}
