use std::fmt;
use std::str::FromStr;

use charsum_core::charsums::DEFAULT_TOLERANCE;
use charsum_core::{
    count_points_brute, count_points_formula, two_f_one_phi_eps_phi_exact, two_f_one_quadratic_exact,
    two_f_one_special_value, two_squares_decomposition, validate_model, Character, ComplexVal, CountReport,
    CurveModel, ExactRational, FieldContext, HypergeomParams, HypergeometricSeries, SpecialArgument,
};
use clap::ValueEnum;
use serde::Serialize;

use crate::config::{CliError, FieldArg, MethodSelection, Outcome, OutputFormat, RunConfig};
use crate::report::{csv_writer, json_array, json_value, render_table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Edwards,
    Twisted,
    Legendre,
    Clausen,
    Weierstrass,
}

/// Raw model parameters from the command line; which are required depends on the model.
#[derive(Debug, Clone, Copy, Default)]
pub struct ModelParams {
    pub a: Option<FieldArg>,
    pub b: Option<FieldArg>,
    pub d: Option<FieldArg>,
    pub lambda: Option<FieldArg>,
}

impl ModelParams {
    pub fn build(&self, kind: ModelKind, ctx: &FieldContext) -> Result<CurveModel, CliError> {
        let get = |v: Option<FieldArg>, flag: &str| -> Result<u64, CliError> {
            let v =
                v.ok_or_else(|| CliError::Invalid(format!("model {kind:?} needs --{flag}").to_lowercase()))?;
            v.residue(ctx)
        };
        let model = match kind {
            ModelKind::Edwards => CurveModel::Edwards { a: get(self.a, "a")? },
            ModelKind::Twisted => CurveModel::TwistedEdwards { a: get(self.a, "a")?, d: get(self.d, "d")? },
            ModelKind::Legendre => CurveModel::Legendre { lambda: get(self.lambda, "lambda")? },
            ModelKind::Clausen => CurveModel::Clausen { lambda: get(self.lambda, "lambda")? },
            ModelKind::Weierstrass => CurveModel::Weierstrass { a: get(self.a, "a")?, b: get(self.b, "b")? },
        };
        validate_model(&model, ctx)?;
        Ok(model)
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

#[derive(Debug, Clone, Serialize)]
struct CountRow {
    p: u64,
    model: String,
    method: String,
    affine: u64,
    non_affine: u64,
    total: u64,
    hyper_value: Option<ExactRational>,
    isogeny_partner: Option<String>,
    #[serde(rename = "match")]
    matches: Option<bool>,
}

impl CountRow {
    fn new(r: &CountReport, matches: Option<bool>) -> Self {
        Self {
            p: r.p,
            model: r.model.to_string(),
            method: r.method.to_string(),
            affine: r.affine,
            non_affine: r.non_affine,
            total: r.total,
            hyper_value: r.hyper_value,
            isogeny_partner: r.isogeny_partner.map(|m| m.to_string()),
            matches,
        }
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            self.model.clone(),
            self.method.clone(),
            self.affine.to_string(),
            self.non_affine.to_string(),
            self.total.to_string(),
            opt(self.hyper_value),
            opt(self.isogeny_partner.as_ref()),
            opt(self.matches.map(|m| if m { "yes" } else { "NO" })),
        ]
    }
}

const COUNT_HEADERS: [&str; 9] =
    ["p", "model", "method", "affine", "non_affine", "total", "hyper_value", "isogeny_partner", "match"];

#[derive(Serialize)]
struct BothReports<'a> {
    brute: &'a CountReport,
    formula: &'a CountReport,
    #[serde(rename = "match")]
    matches: bool,
}

pub fn run_count(
    cfg: &RunConfig,
    p: u64,
    kind: ModelKind,
    params: &ModelParams,
    method: MethodSelection,
) -> Result<Outcome, CliError> {
    let ctx = cfg.field(p)?;
    let model = params.build(kind, &ctx)?;
    let reports = match method {
        MethodSelection::Brute => vec![count_points_brute(&model, &ctx)?],
        MethodSelection::Formula => vec![count_points_formula(&model, &ctx)?],
        MethodSelection::Both => {
            vec![count_points_brute(&model, &ctx)?, count_points_formula(&model, &ctx)?]
        }
    };
    let matches = (reports.len() == 2).then(|| reports[0].total == reports[1].total);
    let rows: Vec<CountRow> = reports.iter().map(|r| CountRow::new(r, matches)).collect();
    let output = match cfg.format {
        OutputFormat::Json => match matches {
            Some(m) => json_value(&BothReports { brute: &reports[0], formula: &reports[1], matches: m }),
            None => json_value(&reports[0]),
        },
        OutputFormat::Csv => {
            let mut w = csv_writer();
            w.write_record(COUNT_HEADERS).expect("in-memory write");
            for row in &rows {
                w.serialize(row).expect("in-memory write");
            }
            w.into_inner().expect("in-memory write")
        }
        OutputFormat::Table => {
            let cells: Vec<_> = rows.iter().map(CountRow::cells).collect();
            render_table(&COUNT_HEADERS, &cells).into_bytes()
        }
    };
    let mismatch = matches == Some(false);
    let summary = matches.map(|m| {
        format!("total {}/{}, {}", reports[0].total, reports[1].total, if m { "match" } else { "MISMATCH" })
    });
    Ok(Outcome { output, summary, mismatch })
}

/// A character named on the command line: `eps`, `phi`, or an index `k` / `chi_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharSpec {
    Eps,
    Phi,
    Index(i64),
}

impl CharSpec {
    pub fn resolve<'a>(&self, ctx: &'a FieldContext) -> Character<'a> {
        match *self {
            CharSpec::Eps => Character::trivial(ctx),
            CharSpec::Phi => Character::quadratic(ctx),
            CharSpec::Index(k) => Character::by_index(ctx, k),
        }
    }
}

impl FromStr for CharSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "eps" | "epsilon" | "trivial" => return Ok(CharSpec::Eps),
            "phi" | "quadratic" => return Ok(CharSpec::Phi),
            _ => {}
        }
        let digits = t.strip_prefix("chi_").or_else(|| t.strip_prefix("chi")).unwrap_or(&t);
        digits
            .parse()
            .map(CharSpec::Index)
            .map_err(|_| format!("malformed character {s:?}: expected eps, phi, k or chi_k"))
    }
}

impl fmt::Display for CharSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharSpec::Eps => write!(f, "eps"),
            CharSpec::Phi => write!(f, "phi"),
            CharSpec::Index(k) => write!(f, "chi_{k}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct HyperValue {
    p: u64,
    upper: String,
    lower: String,
    x: u64,
    re: f64,
    im: f64,
    exact: Option<ExactRational>,
    abs_diff: Option<f64>,
}

fn join_chars(chars: &[Character<'_>]) -> String {
    chars.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Exact value for the specializations with a rational closed form.
fn exact_value(
    upper: &[Character<'_>],
    lower: &[Character<'_>],
    x: u64,
    ctx: &FieldContext,
) -> Option<ExactRational> {
    if x == 0 {
        return Some(ExactRational::ZERO);
    }
    match (upper, lower) {
        ([a, b], [c]) if a.is_quadratic() && b.is_quadratic() && c.is_trivial() => {
            two_f_one_quadratic_exact(ctx, x).ok()
        }
        ([a, b], [c]) if a.is_quadratic() && b.is_trivial() && c.is_quadratic() => {
            two_f_one_phi_eps_phi_exact(ctx, x).ok()
        }
        _ => None,
    }
}

pub fn run_hyper(
    cfg: &RunConfig,
    p: u64,
    upper: &[CharSpec],
    lower: &[CharSpec],
    x: FieldArg,
) -> Result<Outcome, CliError> {
    let ctx = cfg.field(p)?;
    let upper: Vec<_> = upper.iter().map(|c| c.resolve(&ctx)).collect();
    let lower: Vec<_> = lower.iter().map(|c| c.resolve(&ctx)).collect();
    let x = x.residue(&ctx)?;
    let params = HypergeomParams::new(upper.clone(), lower.clone(), x)?;
    let value = HypergeometricSeries::new(&params.upper, &params.lower)?.evaluate(x);
    let exact = exact_value(&upper, &lower, x, &ctx);
    let abs_diff = exact.map(|e| (value - ComplexVal::new(e.to_f64(), 0.0)).norm());
    let tol = cfg.tolerance_or(DEFAULT_TOLERANCE);
    let mismatch = abs_diff.is_some_and(|d| d >= tol);
    let hv = HyperValue {
        p,
        upper: join_chars(&upper),
        lower: join_chars(&lower),
        x,
        re: value.re,
        im: value.im,
        exact,
        abs_diff,
    };
    let output = match cfg.format {
        OutputFormat::Json => json_value(&hv),
        OutputFormat::Csv => {
            let mut w = csv_writer();
            w.write_record(["p", "upper", "lower", "x", "re", "im", "exact", "abs_diff"])
                .expect("in-memory write");
            w.serialize(&hv).expect("in-memory write");
            w.into_inner().expect("in-memory write")
        }
        OutputFormat::Table => {
            let rows = [
                ("p", p.to_string()),
                ("upper", hv.upper.clone()),
                ("lower", hv.lower.clone()),
                ("x", x.to_string()),
                ("value", format!("{:.12} {:+.12}i", hv.re, hv.im)),
                ("exact", opt(exact)),
                ("abs_diff", opt(abs_diff.map(|d| format!("{d:.3e}")))),
            ];
            rows.iter().map(|(k, v)| format!("{k:<8}  {v}\n")).collect::<String>().into_bytes()
        }
    };
    let summary = mismatch.then(|| format!("series and exact value differ by more than {tol:e}"));
    Ok(Outcome { output, summary, mismatch })
}

#[derive(Debug, Clone, Serialize)]
struct SpecialRow {
    p: u64,
    pmod4: u64,
    x: Option<u64>,
    y: Option<u64>,
    value_num: i64,
    value_den: i64,
}

const DASH: &str = "—";

pub fn run_special_values(
    cfg: &RunConfig,
    lambda: SpecialArgument,
    pmin: u64,
    pmax: u64,
) -> Result<Outcome, CliError> {
    let rows = cfg
        .prime_range(pmin, pmax)?
        .into_iter()
        .map(|p| {
            let value = two_f_one_special_value(p, lambda.residue(p))?;
            let xy = (p % 4 == 1).then(|| two_squares_decomposition(p)).transpose()?;
            Ok(SpecialRow {
                p,
                pmod4: p % 4,
                x: xy.map(|t| t.x),
                y: xy.map(|t| t.y),
                value_num: value.numer(),
                value_den: value.denom(),
            })
        })
        .collect::<Result<Vec<_>, charsum_core::Error>>()?;
    let cells = |r: &SpecialRow| {
        let dash = |v: Option<u64>| v.map_or_else(|| DASH.to_string(), |v| v.to_string());
        vec![
            r.p.to_string(),
            r.pmod4.to_string(),
            dash(r.x),
            dash(r.y),
            r.value_num.to_string(),
            r.value_den.to_string(),
        ]
    };
    let headers = ["p", "pmod4", "x", "y", "value_num", "value_den"];
    let output = match cfg.format {
        OutputFormat::Json => json_array(&rows),
        OutputFormat::Csv => {
            let mut w = csv_writer();
            w.write_record(headers).expect("in-memory write");
            for r in &rows {
                w.write_record(cells(r)).expect("in-memory write");
            }
            w.into_inner().expect("in-memory write")
        }
        OutputFormat::Table => {
            render_table(&headers, &rows.iter().map(cells).collect::<Vec<_>>()).into_bytes()
        }
    };
    Ok(Outcome { output, summary: None, mismatch: false })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IsogenySource {
    Edwards,
    Weierstrass,
}

#[derive(Debug, Clone, Serialize)]
struct IsogenyRow {
    p: u64,
    model: String,
    partner: String,
    model_total: u64,
    partner_total: u64,
    #[serde(rename = "match")]
    matches: bool,
}

pub fn run_isogeny(
    cfg: &RunConfig,
    p: u64,
    source: IsogenySource,
    params: &ModelParams,
) -> Result<Outcome, CliError> {
    let ctx = cfg.field(p)?;
    let kind = match source {
        IsogenySource::Edwards => ModelKind::Edwards,
        IsogenySource::Weierstrass => ModelKind::Weierstrass,
    };
    let model = params.build(kind, &ctx)?;
    let report = count_points_brute(&model, &ctx)?;
    let partner = report.isogeny_partner.expect("edwards and weierstrass models carry a partner");
    let partner_report = count_points_brute(&partner, &ctx)?;
    let row = IsogenyRow {
        p,
        model: model.to_string(),
        partner: partner.to_string(),
        model_total: report.total,
        partner_total: partner_report.total,
        matches: report.total == partner_report.total,
    };
    let headers = ["p", "model", "partner", "model_total", "partner_total", "match"];
    let output = match cfg.format {
        OutputFormat::Json => json_value(&row),
        OutputFormat::Csv => {
            let mut w = csv_writer();
            w.write_record(headers).expect("in-memory write");
            w.serialize(&row).expect("in-memory write");
            w.into_inner().expect("in-memory write")
        }
        OutputFormat::Table => {
            let cells = vec![
                p.to_string(),
                row.model.clone(),
                row.partner.clone(),
                row.model_total.to_string(),
                row.partner_total.to_string(),
                if row.matches { "yes" } else { "NO" }.to_string(),
            ];
            render_table(&headers, &[cells]).into_bytes()
        }
    };
    let summary = (!row.matches)
        .then(|| format!("isogenous models disagree: {} vs {} points", row.model_total, row.partner_total));
    Ok(Outcome { output, summary, mismatch: !row.matches })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arg(s: &str) -> Option<FieldArg> {
        Some(s.parse().unwrap())
    }

    fn text(o: &Outcome) -> String {
        String::from_utf8(o.output.clone()).unwrap()
    }

    #[test]
    fn char_specs_parse() {
        assert_eq!("eps".parse::<CharSpec>().unwrap(), CharSpec::Eps);
        assert_eq!("PHI".parse::<CharSpec>().unwrap(), CharSpec::Phi);
        assert_eq!("chi_3".parse::<CharSpec>().unwrap(), CharSpec::Index(3));
        assert_eq!("-1".parse::<CharSpec>().unwrap(), CharSpec::Index(-1));
        assert!("psi".parse::<CharSpec>().is_err());
        assert!("".parse::<CharSpec>().is_err());
    }

    #[test]
    fn count_both_reports_match() {
        let cfg = RunConfig { format: OutputFormat::Json, ..RunConfig::default() };
        let params = ModelParams { a: arg("2"), ..ModelParams::default() };
        let out = run_count(&cfg, 7, ModelKind::Edwards, &params, MethodSelection::Both).unwrap();
        assert!(!out.mismatch);
        let v: serde_json::Value = serde_json::from_slice(&out.output).unwrap();
        assert_eq!(v["brute"]["total"], 8);
        assert_eq!(v["formula"]["total"], 8);
        assert_eq!(v["match"], true);
    }

    #[test]
    fn count_rejects_bad_input() {
        let cfg = RunConfig::default();
        let params = ModelParams { a: arg("2"), ..ModelParams::default() };
        let err = run_count(&cfg, 5, ModelKind::Edwards, &params, MethodSelection::Brute).unwrap_err();
        assert!(err.to_string().contains("a^5 ≡ a"), "{err}");
        assert_eq!(err.exit_code(), 2);
        let err = run_count(&cfg, 9, ModelKind::Edwards, &params, MethodSelection::Brute).unwrap_err();
        assert!(err.to_string().contains("not prime"));
        let err = run_count(&cfg, 7, ModelKind::Twisted, &params, MethodSelection::Brute).unwrap_err();
        assert_eq!(err.to_string(), "model twisted needs --d");
        let clausen = ModelParams { lambda: arg("2"), ..ModelParams::default() };
        assert!(run_count(&cfg, 7, ModelKind::Clausen, &clausen, MethodSelection::Formula).is_err());
    }

    #[test]
    fn hyper_recognizes_exact_cases() {
        let cfg = RunConfig { format: OutputFormat::Json, ..RunConfig::default() };
        let (phi, eps) = (CharSpec::Phi, CharSpec::Eps);
        let run = |p, up: &[CharSpec], lo: &[CharSpec], x: &str| {
            let o = run_hyper(&cfg, p, up, lo, x.parse().unwrap()).unwrap();
            assert!(!o.mismatch);
            serde_json::from_slice::<serde_json::Value>(&o.output).unwrap()
        };
        assert_eq!(run(5, &[phi, phi], &[eps], "2")["exact"], "2/5");
        assert_eq!(run(7, &[phi, phi], &[eps], "-1")["exact"], "0/1");
        let zero = run(5, &[phi, phi], &[eps], "0");
        assert_eq!((zero["exact"].as_str(), zero["re"].as_f64()), (Some("0/1"), Some(0.0)));
        assert_eq!(run(13, &[phi, eps], &[phi], "12")["exact"], "-2/13");
        assert!(run(13, &[phi, phi, phi], &[eps, eps], "3")["exact"].is_null());
        let err = run_hyper(&cfg, 5, &[phi, phi], &[], "2".parse().unwrap()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn special_value_rows() {
        let cfg = RunConfig { format: OutputFormat::Csv, ..RunConfig::default() };
        let out = run_special_values(&cfg, SpecialArgument::MinusOne, 5, 13).unwrap();
        assert_eq!(
            text(&out),
            "p,pmod4,x,y,value_num,value_den\n5,1,1,2,2,5\n7,3,—,—,0,1\n11,3,—,—,0,1\n13,1,3,2,-6,13\n"
        );
        let out = run_special_values(&cfg, SpecialArgument::Two, 7, 7).unwrap();
        assert_eq!(text(&out).lines().nth(1), Some("7,3,—,—,0,1"));
    }

    #[test]
    fn isogeny_partners() {
        let cfg = RunConfig { format: OutputFormat::Json, ..RunConfig::default() };
        let ed = ModelParams { a: arg("2"), ..ModelParams::default() };
        let out = run_isogeny(&cfg, 7, IsogenySource::Edwards, &ed).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&out.output).unwrap();
        assert_eq!(v["partner"], "legendre(lambda=2)");
        assert_eq!((v["model_total"].as_u64(), v["partner_total"].as_u64()), (Some(8), Some(8)));
        let w = ModelParams { a: arg("1"), b: arg("2"), ..ModelParams::default() };
        let out = run_isogeny(&cfg, 7, IsogenySource::Weierstrass, &w).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&out.output).unwrap();
        assert_eq!(v["partner"], "twisted(a=4, d=1)");
        assert_eq!(v["match"], true);
        let bad = ModelParams { a: arg("1"), ..ModelParams::default() };
        assert_eq!(run_isogeny(&cfg, 7, IsogenySource::Edwards, &bad).unwrap_err().exit_code(), 2);
    }
}
