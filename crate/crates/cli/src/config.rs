use std::fmt;
use std::str::FromStr;

use charsum_core::field::{is_prime, MAX_MODULUS};
use charsum_core::{Error, ExactRational, FieldContext};
use clap::ValueEnum;
use rayon::ThreadPool;

pub const DEFAULT_PRIME_CEILING: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum MethodSelection {
    #[default]
    Brute,
    Formula,
    Both,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad arguments or parameters. Exit code 2.
    #[error("{0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::PrimeTooLarge { p, bound } => CliError::Invalid(format!(
                "p = {p} exceeds the prime ceiling {bound} (raise CHARSUM_PMAX / --prime-ceiling, or pass --unsafe-pmax)"
            )),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

/// Rendered command output. `mismatch` maps to exit code 1.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub output: Vec<u8>,
    pub summary: Option<String>,
    pub mismatch: bool,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub format: OutputFormat,
    pub prime_ceiling: u64,
    pub unsafe_pmax: bool,
    pub tolerance: Option<f64>,
    pub jobs: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            format: OutputFormat::Table,
            prime_ceiling: DEFAULT_PRIME_CEILING,
            unsafe_pmax: false,
            tolerance: None,
            jobs: None,
        }
    }
}

impl RunConfig {
    pub fn ceiling(&self) -> u64 {
        if self.unsafe_pmax {
            MAX_MODULUS
        } else {
            self.prime_ceiling
        }
    }

    pub fn tolerance_or(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    pub fn field(&self, p: u64) -> Result<FieldContext, CliError> {
        Ok(FieldContext::with_bound(p, self.ceiling())?)
    }

    /// Odd primes in `[pmin, pmax]`.
    pub fn prime_range(&self, pmin: u64, pmax: u64) -> Result<Vec<u64>, CliError> {
        if pmin > pmax {
            return Err(CliError::Invalid(format!("empty range: pmin = {pmin} > pmax = {pmax}")));
        }
        if pmax > self.ceiling() {
            return Err(Error::PrimeTooLarge { p: pmax, bound: self.ceiling() }.into());
        }
        Ok((pmin.max(3)..=pmax).filter(|&p| is_prime(p)).collect())
    }

    pub fn thread_pool(&self) -> Result<ThreadPool, CliError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs.unwrap_or(0))
            .build()
            .map_err(|e| CliError::Invalid(format!("cannot start worker pool: {e}")))
    }
}

/// A field element given on the command line: an integer (possibly negative)
/// or a fraction `n/d`, reduced mod `p` once `p` is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldArg(pub ExactRational);

impl FieldArg {
    pub fn residue(&self, ctx: &FieldContext) -> Result<u64, CliError> {
        let num = ctx.reduce(self.0.numer());
        let den = ctx.reduce(self.0.denom());
        let inv = ctx.inv(den).map_err(|_| {
            CliError::Invalid(format!("{self} is undefined mod {}: denominator divisible by p", ctx.p()))
        })?;
        Ok(ctx.mul(num, inv))
    }
}

impl FromStr for FieldArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.parse::<ExactRational>().map(FieldArg).map_err(|e| e.to_string())
    }
}

impl fmt::Display for FieldArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.to_integer() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}", self.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_args_reduce() {
        let ctx = FieldContext::new(7).unwrap();
        let r = |s: &str| s.parse::<FieldArg>().unwrap().residue(&ctx).unwrap();
        assert_eq!(r("-1"), 6);
        assert_eq!(r("1/2"), 4);
        assert_eq!(r("15"), 1);
        assert!("1/7".parse::<FieldArg>().unwrap().residue(&ctx).is_err());
        assert!("x".parse::<FieldArg>().is_err());
    }

    #[test]
    fn ranges_respect_ceiling() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.prime_range(1, 13).unwrap(), vec![3, 5, 7, 11, 13]);
        assert!(cfg.prime_range(13, 5).is_err());
        assert!(cfg.prime_range(3, 10_007).is_err());
        let open = RunConfig { unsafe_pmax: true, ..cfg };
        assert_eq!(open.prime_range(10_000, 10_010).unwrap(), vec![10_007, 10_009]);
        assert_eq!(cfg.field(10_007).unwrap_err().exit_code(), 2);
    }
}
