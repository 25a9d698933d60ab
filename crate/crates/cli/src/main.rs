mod expr;

/// `println!` that ignores a closed stdout.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use omega_core::instances::InstanceVisitor;
use omega_core::representation::{matrix_vec, octonion_left, q_mult};
use omega_core::sequences::catalog::{digits_for_precision, padic_digits};
use omega_core::{
    complete_representation, full_suite, Completed, ElementSyntax, InstanceSpec, OmegaError, Representation, Verdict,
};

#[derive(Parser)]
#[command(name = "omega", version, about = "Normed Omega-groups and their completions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the axiom suites on an instance.
    Verify {
        /// q-abs, q-padic:<p>, matrix:<n>, octonion, map:<n>:<inner>
        instance: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// Fill in `elapsed_ms`; makes the report nondeterministic.
        #[arg(long)]
        timing: bool,
    },
    /// Approximate an expression over the completion of an instance.
    Approx {
        instance: String,
        expr: String,
        #[arg(long)]
        prec: u32,
        #[arg(long, value_enum, default_value_t = Format::Rational)]
        format: Format,
    },
    /// Apply a completed catalog representation: q-mult, matrix-vec:<n>, octonion-left.
    Rep {
        rep: String,
        arg1: String,
        arg2: String,
        #[arg(long)]
        prec: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Rational,
    Decimal,
    PadicDigits,
}

enum Failure {
    Usage(OmegaError),
    Property,
}

impl From<OmegaError> for Failure {
    fn from(e: OmegaError) -> Self {
        Failure::Usage(e)
    }
}

#[derive(Serialize)]
struct SuiteJson {
    name: String,
    pass: bool,
    samples: usize,
    seed: u64,
    counterexample: Option<String>,
}

#[derive(Serialize)]
struct VerifyJson {
    instance: String,
    suites: Vec<SuiteJson>,
    elapsed_ms: Option<u64>,
}

struct Verify {
    samples: usize,
    seed: u64,
}

impl InstanceVisitor for Verify {
    type Output = Vec<SuiteJson>;

    fn visit<G: ElementSyntax>(self, group: Arc<G>) -> Vec<SuiteJson> {
        full_suite(&*group, self.samples, self.seed)
            .into_iter()
            .map(|r| SuiteJson {
                pass: r.all_pass(),
                samples: r.samples(),
                seed: r.seed,
                counterexample: r.first_counterexample(),
                name: r.suite,
            })
            .collect()
    }
}

fn verify(instance: &str, samples: usize, seed: u64, json: bool, timing: bool) -> Result<(), Failure> {
    if samples == 0 {
        return Err(OmegaError::InvalidParameter("--samples must be positive".into()).into());
    }
    let spec: InstanceSpec = instance.parse()?;
    let start = Instant::now();
    let suites = spec.visit(Verify { samples, seed })?;
    let elapsed_ms = timing.then(|| start.elapsed().as_millis() as u64);
    let pass = suites.iter().all(|s| s.pass);
    let report = VerifyJson {
        instance: spec.to_string(),
        suites,
        elapsed_ms,
    };
    if json {
        out!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        out!("instance: {}", report.instance);
        for s in &report.suites {
            out!(
                "{} {} (samples={}, seed={})",
                if s.pass { "PASS" } else { "FAIL" },
                s.name,
                s.samples,
                s.seed
            );
            if let Some(c) = &s.counterexample {
                out!("    counterexample: {c}");
            }
        }
        if let Some(ms) = report.elapsed_ms {
            out!("elapsed: {ms} ms");
        }
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Property)
    }
}

fn decimal_places(k: u32) -> usize {
    // ⌈k·log₁₀2⌉ + 1
    (u64::from(k) * 30103 / 100_000 + 2) as usize
}

fn format_fixed(scaled: &BigInt, places: usize) -> String {
    let digits = scaled.abs().to_string();
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = padded.split_at(padded.len() - places);
    let sign = if scaled.is_negative() { "-" } else { "" };
    format!("{sign}{int}.{frac}")
}

/// A decimal interval guaranteed to contain every point within `2⁻ᵏ` of `q`.
fn decimal_interval(q: &BigRational, k: u32) -> (String, String) {
    let places = decimal_places(k);
    let scale = BigRational::from_integer(BigInt::from(10).pow(places as u32));
    let slack = BigRational::new(BigInt::from(1), BigInt::from(2).pow(k));
    let lo = ((q - &slack) * &scale).floor().to_integer();
    let hi = ((q + &slack) * &scale).ceil().to_integer();
    (format_fixed(&lo, places), format_fixed(&hi, places))
}

struct Approx {
    expr: expr::Expr,
    prec: u32,
    format: Format,
    prime: Option<u64>,
}

impl InstanceVisitor for Approx {
    type Output = Result<Vec<String>, OmegaError>;

    fn visit<G: ElementSyntax>(self, group: Arc<G>) -> Self::Output {
        let x = expr::eval(&group, &self.expr)?;
        let value = x.approx(self.prec);
        let k = self.prec;
        let mut lines = Vec::new();
        match self.format {
            Format::Rational => lines.push(format!("value: {value}")),
            Format::Decimal => {
                let q = group
                    .as_rational(&value)
                    .filter(|_| self.prime.is_none())
                    .ok_or_else(|| OmegaError::Unsupported("decimal output needs q-abs".into()))?;
                let (lo, hi) = decimal_interval(&q, k);
                lines.push(format!("value: {}", mid_decimal(&q, k)));
                lines.push(format!("interval: [{lo}, {hi}]"));
            }
            Format::PadicDigits => {
                let (q, p) = group
                    .as_rational(&value)
                    .zip(self.prime)
                    .ok_or_else(|| OmegaError::Unsupported("padic-digits output needs q-padic".into()))?;
                let digits = padic_digits(&q, p, digits_for_precision(p, k))?;
                let text: Vec<String> = digits.iter().map(u64::to_string).collect();
                lines.push(format!("digits (base {p}, units first): {}", text.join(" ")));
            }
        }
        lines.push(format!("bound: 2^-{k}"));
        Ok(lines)
    }
}

fn mid_decimal(q: &BigRational, k: u32) -> String {
    let places = decimal_places(k);
    let scale = BigRational::from_integer(BigInt::from(10).pow(places as u32));
    format_fixed(&(q * scale).round().to_integer(), places)
}

fn approx(instance: &str, text: &str, prec: u32, format: Format) -> Result<(), Failure> {
    let spec: InstanceSpec = instance.parse()?;
    let prime = match spec {
        InstanceSpec::RationalPadic(p) => Some(p),
        _ => None,
    };
    let lines = spec.visit(Approx {
        expr: expr::parse(text)?,
        prec,
        format,
        prime,
    })??;
    for line in lines {
        out!("{line}");
    }
    Ok(())
}

fn run_rep<A: ElementSyntax, B: ElementSyntax>(
    f: Representation<A, B>,
    arg1: &str,
    arg2: &str,
    k: u32,
) -> Result<(), Failure> {
    let x = expr::eval(f.source(), &expr::parse(arg1)?)?;
    let y = expr::eval(f.target(), &expr::parse(arg2)?)?;
    let g = complete_representation(&f);
    let out: Completed<B> = g.apply(&x, &y);
    let value = out.approx(k);
    match out.as_exact() {
        Some(exact) => out!("value: {exact} (exact)"),
        None => out!("value: {value}"),
    }
    if let Some(q) = f.target().as_rational(&value) {
        let (lo, hi) = decimal_interval(&q, k);
        out!("interval: [{lo}, {hi}]");
    }
    out!("bound: 2^-{k}");
    let verdict = g.restriction_check(&x, &y, k);
    let word = match &verdict {
        Verdict::Yes => "Yes".to_string(),
        Verdict::No => "No".to_string(),
        Verdict::Unknown { lower, upper } => format!("Unknown (distance in [{lower}, {upper}])"),
    };
    out!("restriction check: {word}");
    if verdict == Verdict::No {
        Err(Failure::Property)
    } else {
        Ok(())
    }
}

fn rep(name: &str, arg1: &str, arg2: &str, k: u32) -> Result<(), Failure> {
    match name.split_once(':') {
        None if name == "q-mult" => run_rep(q_mult(), arg1, arg2, k),
        None if name == "octonion-left" => run_rep(octonion_left(), arg1, arg2, k),
        Some(("matrix-vec", n)) => {
            let n: usize = n
                .parse()
                .map_err(|_| OmegaError::Parse(format!("dimension `{n}` is not a number")))?;
            run_rep(matrix_vec(n)?, arg1, arg2, k)
        }
        _ => Err(OmegaError::Parse(format!("unknown representation `{name}`")).into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            instance,
            samples,
            seed,
            json,
            timing,
        } => verify(&instance, samples, seed, json, timing),
        Command::Approx {
            instance,
            expr,
            prec,
            format,
        } => approx(&instance, &expr, prec, format),
        Command::Rep {
            rep: name,
            arg1,
            arg2,
            prec,
        } => rep(&name, &arg1, &arg2, prec),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
