//! Command-line front end: compute moments, run validations, dump figure
//! data.
//!
//! Exit codes: 0 success (or statistical pass), 1 statistical failure,
//! 2 usage problems, 3 enumeration-capacity rejections. The environment
//! variable `ELLIPTIC_MOMENTS_MAX_L` overrides the enumeration ceiling.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::asymptotics::{rescaled_exact, AsymptoticParams};
use crate::combinatorics::{catalan, Letter, Word, ENUMERATION_CEILING};
use crate::error::Error;
use crate::moments::{block_moment, word_moment_oracle_with_ceiling, MomentPolynomial};
use crate::montecarlo::{estimate_word_moment, EstimateResult};
use crate::output::{format_float, polynomial_to_json, OutputRecord, SweepTable};
use crate::positional::{canonicalize, positional_moment_with_ceiling, PositionTuple};

pub const EXIT_OK: i32 = 0;
pub const EXIT_STATISTICAL_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

const ENV_MAX_L: &str = "ELLIPTIC_MOMENTS_MAX_L";
const ENV_MAX_DIM: &str = "ELLIPTIC_MOMENTS_MAX_DIM";
/// Default cap on the sampled matrix dimension; word products cost
/// `O(L N^3)` per sample, so this keeps validation runs in seconds.
const DEFAULT_MAX_DIM: usize = 512;

#[derive(Parser)]
#[command(
    name = "elliptic-moments",
    version,
    about = "Exact mixed-moments of Gaussian elliptic matrices, with brute-force, \
             asymptotic and Monte Carlo cross-checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form moment polynomial of the block word x^n d^m.
    Moment(MomentArgs),
    /// Moment polynomial of an arbitrary word over {x, d}.
    Word(WordArgs),
    /// Moment polynomial from the positions of x inside a length-2M word.
    Positional(PositionalArgs),
    /// Saddle-point estimate of the rescaled moment along a ray n = q m.
    Asymptotic(AsymptoticArgs),
    /// Monte Carlo validation of a word moment against the exact value.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct MomentArgs {
    /// Exponent of x.
    #[arg(long)]
    n: usize,
    /// Exponent of d.
    #[arg(long)]
    m: usize,
    /// Also evaluate the polynomial at this elliptic parameter.
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct WordArgs {
    /// Word over the alphabet {x, d}, e.g. xxdxdxdd.
    #[arg(long)]
    word: String,
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<f64>,
    /// Force the brute-force pairing enumeration instead of closed forms.
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct PositionalArgs {
    /// Half word length M (the word has 2M letters).
    #[arg(long = "M")]
    m: usize,
    /// Comma-separated positions of x, strictly increasing in 1..=2M.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    positions: Vec<usize>,
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct AsymptoticArgs {
    /// Ray slope q = n/m >= 1.
    #[arg(long)]
    q: f64,
    /// Elliptic parameter, strictly between 0 and 1.
    #[arg(long)]
    rho: f64,
    /// Half-exponent v (the pair is n = 2 q v, m = 2 v).
    #[arg(long)]
    v: u64,
    /// Emit figure data over a grid of v values; pass a comma list as
    /// --sweep=v1,v2,... or bare --sweep for a geometric grid up to --v.
    #[arg(long, num_args = 0..=1, default_missing_value = "", require_equals = true)]
    sweep: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ValidateArgs {
    /// Word over {x, d} whose trace is sampled.
    #[arg(long)]
    word: String,
    /// Elliptic parameter in [-1, 1].
    #[arg(long, allow_hyphen_values = true)]
    rho: f64,
    /// Matrix dimension N.
    #[arg(long, default_value_t = 300)]
    dim: usize,
    /// Number of independent matrix samples.
    #[arg(long, default_value_t = 100)]
    samples: u32,
    /// Master seed; generated (and printed) when absent.
    #[arg(long)]
    seed: Option<u64>,
    /// Sweep rho over a grid and emit figure data; pass a comma list as
    /// --sweep=r1,r2,... or bare --sweep for the default grid.
    #[arg(long, num_args = 0..=1, default_missing_value = "", require_equals = true)]
    sweep: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn report(self) -> i32 {
        eprintln!("error: {}", self.message);
        self.code
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::EnumerationCapacity { .. } | Error::PositionalCapacity { .. } => EXIT_CAPACITY,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

/// Parses `std::env::args`, runs the command, and returns the process exit
/// code.
pub fn run() -> i32 {
    match Cli::try_parse() {
        Ok(cli) => match dispatch(cli.command) {
            Ok(code) => code,
            Err(failure) => failure.report(),
        },
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            code
        }
    }
}

fn dispatch(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Moment(args) => cmd_moment(args),
        Command::Word(args) => cmd_word(args),
        Command::Positional(args) => cmd_positional(args),
        Command::Asymptotic(args) => cmd_asymptotic(args),
        Command::Validate(args) => cmd_validate(args),
    }
}

fn enumeration_ceiling() -> Result<usize, Failure> {
    env_limit(ENV_MAX_L, ENUMERATION_CEILING)
}

fn dimension_cap() -> Result<usize, Failure> {
    env_limit(ENV_MAX_DIM, DEFAULT_MAX_DIM)
}

fn env_limit(name: &str, default: usize) -> Result<usize, Failure> {
    match std::env::var(name) {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            Failure::usage(format!("{name} must be a non-negative integer, got {raw:?}"))
        }),
        Err(_) => Ok(default),
    }
}

fn warn_rho_domain(rho: f64) {
    if rho.abs() > 1.0 {
        eprintln!("warning: |rho| = {} exceeds 1; the moment formulas are only meaningful for |rho| <= 1", rho.abs());
    }
}

/// Exact integer value at the corner points, where every moment polynomial
/// evaluates to an integer.
fn corner_value(poly: &MomentPolynomial, rho: f64) -> Option<String> {
    if rho == 1.0 || rho == 0.0 || rho == -1.0 {
        let r = BigRational::from_integer((rho as i64).into());
        Some(poly.eval_rational(&r).to_integer().to_string())
    } else {
        None
    }
}

fn polynomial_result(poly: &MomentPolynomial, rho: Option<f64>) -> Value {
    let value = rho.map(|r| poly.eval_f64(r));
    json!({
        "polynomial": polynomial_to_json(poly),
        "polynomial_text": poly.to_string(),
        "rho": rho,
        "value": value,
        "value_exact": rho.and_then(|r| corner_value(poly, r)),
    })
}

fn print_polynomial_text(label: &str, poly: &MomentPolynomial, rho: Option<f64>) {
    println!("{label} = {poly}");
    println!("coefficients: {}", polynomial_to_json(poly));
    if let Some(r) = rho {
        match corner_value(poly, r) {
            Some(exact) => println!("value at rho={}: {exact}", format_float(r)),
            None => println!("value at rho={}: {}", format_float(r), format_float(poly.eval_f64(r))),
        }
    }
}

fn reject_csv(format: Format) -> Result<(), Failure> {
    if format == Format::Csv {
        return Err(Failure::usage(
            "csv output applies to the data commands (asymptotic, validate); use text or json",
        ));
    }
    Ok(())
}

fn cmd_moment(args: MomentArgs) -> Result<i32, Failure> {
    reject_csv(args.format)?;
    if let Some(r) = args.rho {
        warn_rho_domain(r);
    }
    let poly = block_moment(args.n, args.m);
    match args.format {
        Format::Json => {
            let record = OutputRecord::new(
                "moment",
                json!({"n": args.n, "m": args.m, "rho": args.rho}),
                polynomial_result(&poly, args.rho),
                None,
            );
            println!("{}", record.to_json());
        }
        Format::Text => {
            print_polynomial_text(
                &format!("P[n={}, m={}](rho)", args.n, args.m),
                &poly,
                args.rho,
            );
        }
        Format::Csv => unreachable!(),
    }
    Ok(EXIT_OK)
}

/// Routes a word to the positional closed forms when possible, falling back
/// to the oracle (inside the library) for three or more even positions.
fn word_polynomial(word: &Word, force_oracle: bool, ceiling: usize) -> Result<MomentPolynomial, Error> {
    if force_oracle {
        return word_moment_oracle_with_ceiling(word, ceiling);
    }
    if word.is_empty() {
        return Ok(MomentPolynomial::constant(1.into()));
    }
    if word.len() % 2 == 1 {
        return Ok(MomentPolynomial::zero());
    }
    let positions: Vec<usize> = word
        .letters()
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == Letter::Plain)
        .map(|(i, _)| i + 1)
        .collect();
    let tuple = PositionTuple::new(word.len() / 2, positions)?;
    positional_moment_with_ceiling(&tuple, ceiling)
}

fn cmd_word(args: WordArgs) -> Result<i32, Failure> {
    reject_csv(args.format)?;
    if let Some(r) = args.rho {
        warn_rho_domain(r);
    }
    let word: Word = args.word.parse().map_err(Failure::from)?;
    let ceiling = enumeration_ceiling()?;
    let poly = word_polynomial(&word, args.oracle, ceiling).map_err(Failure::from)?;
    let route = if args.oracle { "oracle" } else { "positional" };
    match args.format {
        Format::Json => {
            let mut result = polynomial_result(&poly, args.rho);
            result["route"] = json!(route);
            let record = OutputRecord::new(
                "word",
                json!({"word": args.word, "rho": args.rho, "oracle": args.oracle}),
                result,
                None,
            );
            println!("{}", record.to_json());
        }
        Format::Text => {
            print_polynomial_text(&format!("tau({})", args.word), &poly, args.rho);
            println!("route: {route}");
        }
        Format::Csv => unreachable!(),
    }
    Ok(EXIT_OK)
}

fn cmd_positional(args: PositionalArgs) -> Result<i32, Failure> {
    reject_csv(args.format)?;
    if let Some(r) = args.rho {
        warn_rho_domain(r);
    }
    let (canonical, transforms) = canonicalize(args.m, &args.positions).map_err(Failure::from)?;
    let ceiling = enumeration_ceiling()?;
    let poly = positional_moment_with_ceiling(&canonical, ceiling).map_err(Failure::from)?;
    match args.format {
        Format::Json => {
            let mut result = polynomial_result(&poly, args.rho);
            result["canonical"] = json!({
                "M": canonical.half_length(),
                "positions": canonical.positions(),
            });
            result["transforms"] = serde_json::to_value(&transforms).expect("serializable");
            let record = OutputRecord::new(
                "positional",
                json!({"M": args.m, "positions": args.positions, "rho": args.rho}),
                result,
                None,
            );
            println!("{}", record.to_json());
        }
        Format::Text => {
            print_polynomial_text(
                &format!("phi(P(i)), M={}, i={:?}", args.m, args.positions),
                &poly,
                args.rho,
            );
            if transforms.is_empty() {
                println!("canonical: yes");
            } else {
                println!(
                    "canonicalized to M={}, i={:?} via {:?}",
                    canonical.half_length(),
                    canonical.positions(),
                    transforms
                );
            }
        }
        Format::Csv => unreachable!(),
    }
    Ok(EXIT_OK)
}

fn parse_sweep_list<T: std::str::FromStr>(raw: &str) -> Result<Vec<T>, Failure> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse::<T>()
                .map_err(|_| Failure::usage(format!("bad sweep entry {s:?}")))
        })
        .collect()
}

/// Plateau value of the rescaled moment at `rho -> 1`, used as the
/// `normalized` column scale for asymptotic sweeps.
fn ray_plateau(q: f64) -> f64 {
    (2.0 * q.sqrt() / (1.0 + q)).powf(1.5)
}

struct RayPoint {
    v: u64,
    n: u64,
    m: u64,
    exact: Option<f64>,
    estimate: f64,
    psi: f64,
    phi: f64,
    regime: crate::asymptotics::SaddleRegime,
    regime_ratio: f64,
}

fn ray_point(q: f64, rho: f64, v: u64) -> Result<RayPoint, Failure> {
    let params = AsymptoticParams::new(q, rho, v).map_err(Failure::from)?;
    let u_real = q * v as f64;
    let u = u_real.round() as u64;
    let exact = if (u_real - u as f64).abs() < 1e-9 && u >= v {
        Some(rescaled_exact(2 * u as usize, 2 * v as usize, rho).map_err(Failure::from)?)
    } else {
        None
    };
    let (regime, regime_ratio) = params.regime();
    Ok(RayPoint {
        v,
        n: 2 * u,
        m: 2 * v,
        exact,
        estimate: params.estimate(),
        psi: params.psi(),
        phi: params.phi(),
        regime,
        regime_ratio,
    })
}

fn cmd_asymptotic(args: AsymptoticArgs) -> Result<i32, Failure> {
    let vs: Vec<u64> = match &args.sweep {
        None => vec![args.v],
        Some(raw) if raw.is_empty() => {
            // geometric grid up to --v
            let mut vs: Vec<u64> = (0..6).map(|i| args.v >> (5 - i)).filter(|&v| v > 0).collect();
            vs.dedup();
            vs
        }
        Some(raw) => parse_sweep_list(raw)?,
    };
    if vs.is_empty() {
        return Err(Failure::usage("empty sweep grid"));
    }

    let mut table = SweepTable::new(&["psi", "phi"]);
    let mut points = Vec::new();
    for &v in &vs {
        let p = ray_point(args.q, args.rho, v)?;
        let ratio = p.exact.map(|e| e / p.estimate);
        table.push_row(vec![
            format_float(args.rho),
            p.n.to_string(),
            p.m.to_string(),
            p.exact.map(format_float).unwrap_or_default(),
            p.exact
                .map(|e| format_float(e / ray_plateau(args.q)))
                .unwrap_or_default(),
            format_float(p.estimate),
            ratio.map(format_float).unwrap_or_default(),
            format_float(p.psi),
            format_float(p.phi),
        ]);
        points.push(p);
    }

    let sweeping = args.sweep.is_some();
    match (args.format, sweeping) {
        (Format::Json, _) => {
            let rows: Vec<Value> = points
                .iter()
                .map(|p| {
                    json!({
                        "v": p.v,
                        "n": p.n,
                        "m": p.m,
                        "exact": p.exact,
                        "estimate": p.estimate,
                        "ratio": p.exact.map(|e| e / p.estimate),
                        "psi": p.psi,
                        "phi": p.phi,
                        "phi_hat": p.phi / (args.q + 1.0),
                        "regime": p.regime,
                        "regime_ratio": p.regime_ratio,
                    })
                })
                .collect();
            let record = OutputRecord::new(
                "asymptotic",
                json!({"q": args.q, "rho": args.rho, "v": args.v, "sweep": args.sweep}),
                if sweeping { json!(rows) } else { rows[0].clone() },
                None,
            );
            println!("{}", record.to_json());
        }
        (Format::Csv, _) | (Format::Text, true) => {
            print!("{}", table.to_csv());
        }
        (Format::Text, false) => {
            let p = &points[0];
            println!("ray q={}, rho={}, v={}", args.q, args.rho, p.v);
            println!("psi = {}", format_float(p.psi));
            println!("phi = {}  (phi_hat = {})", format_float(p.phi), format_float(p.phi / (args.q + 1.0)));
            println!("estimate = {}", format_float(p.estimate));
            match p.exact {
                Some(e) => {
                    println!("exact    = {}", format_float(e));
                    println!("ratio    = {}", format_float(e / p.estimate));
                }
                None => println!("exact    = (q*v is not an integer; no exact value)"),
            }
            println!("regime   = {:?} (saddle/width ratio {})", p.regime, format_float(p.regime_ratio));
        }
    }
    Ok(EXIT_OK)
}

struct ValidatePoint {
    rho: f64,
    exact: f64,
    est: EstimateResult,
    z: f64,
    pass: bool,
}

fn validate_point(
    word: &Word,
    rho: f64,
    args: &ValidateArgs,
    seed: u64,
    ceiling: usize,
) -> Result<ValidatePoint, Failure> {
    let exact = word_polynomial(word, false, ceiling)
        .map_err(Failure::from)?
        .eval_f64(rho);
    let est = estimate_word_moment(word, rho, args.dim, args.samples, seed);
    // One tolerance unit is max(stderr, 1% of max(1, |exact|)); the 1% floor
    // absorbs the documented O(1/N) finite-size bias, so |z| <= 5 reproduces
    // the tolerance |mean - exact| <= max(5 stderr, 5% of max(1, |exact|)).
    let unit = est.stderr.max(0.01 * exact.abs().max(1.0));
    let z = (est.mean - exact) / unit;
    Ok(ValidatePoint {
        rho,
        exact,
        est,
        z,
        pass: z.abs() <= 5.0,
    })
}

fn cmd_validate(args: ValidateArgs) -> Result<i32, Failure> {
    let word: Word = args.word.parse().map_err(Failure::from)?;
    if word.is_empty() {
        return Err(Failure::usage("word must be non-empty"));
    }
    if args.samples < 2 {
        return Err(Failure::usage("need at least 2 samples"));
    }
    if args.dim == 0 {
        return Err(Failure::usage("dim must be positive"));
    }
    let cap = dimension_cap()?;
    if args.dim > cap {
        return Err(Failure::usage(format!(
            "dim {} exceeds the cap {cap} (word products cost O(N^3) per sample); \
             raise {ENV_MAX_DIM} to override",
            args.dim
        )));
    }
    if args.rho.abs() > 1.0 {
        return Err(Failure::usage(format!("|rho| <= 1 required, got {}", args.rho)));
    }
    let ceiling = enumeration_ceiling()?;
    let seed = args.seed.unwrap_or_else(rand::random);

    let rhos: Vec<f64> = match &args.sweep {
        None => vec![args.rho],
        Some(raw) if raw.is_empty() => vec![-0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9],
        Some(raw) => parse_sweep_list(raw)?,
    };
    for &r in &rhos {
        if r.abs() > 1.0 {
            return Err(Failure::usage(format!("sweep rho {r} outside [-1, 1]")));
        }
    }

    let scale = catalan(word.len() / 2); // Fig-2 normalization C_{(n+m)/2}
    let n = word.plain_count();
    let m = word.dagger_count();
    let mut table = SweepTable::new(&["stderr", "z", "pass"]);
    let mut points = Vec::new();
    let mut all_pass = true;
    for &rho in &rhos {
        let p = validate_point(&word, rho, &args, seed, ceiling)?;
        all_pass &= p.pass;
        let normalized = if word.len().is_multiple_of(2) {
            use num_traits::ToPrimitive;
            p.exact / scale.to_f64().unwrap_or(f64::NAN)
        } else {
            p.exact
        };
        table.push_row(vec![
            format_float(p.rho),
            n.to_string(),
            m.to_string(),
            format_float(p.exact),
            format_float(normalized),
            format_float(p.est.mean),
            if p.exact != 0.0 {
                format_float(p.est.mean / p.exact)
            } else {
                String::new()
            },
            format_float(p.est.stderr),
            format_float(p.z),
            p.pass.to_string(),
        ]);
        points.push(p);
    }

    let sweeping = args.sweep.is_some();
    match (args.format, sweeping) {
        (Format::Json, _) => {
            let rows: Vec<Value> = points
                .iter()
                .map(|p| {
                    json!({
                        "rho": p.rho,
                        "n": n,
                        "m": m,
                        "exact": p.exact,
                        "mean": p.est.mean,
                        "stderr": p.est.stderr,
                        "imag_mean": p.est.imag_mean,
                        "imag_stderr": p.est.imag_stderr,
                        "z": p.z,
                        "pass": p.pass,
                    })
                })
                .collect();
            let record = OutputRecord::new(
                "validate",
                json!({
                    "word": args.word, "rho": args.rho, "dim": args.dim,
                    "samples": args.samples, "sweep": args.sweep,
                }),
                if sweeping { json!(rows) } else { rows[0].clone() },
                Some(seed),
            );
            println!("{}", record.to_json());
        }
        (Format::Csv, _) | (Format::Text, true) => {
            if args.seed.is_none() {
                eprintln!("seed: {seed}");
            }
            print!("{}", table.to_csv());
        }
        (Format::Text, false) => {
            let p = &points[0];
            println!(
                "validate {} at rho={}, N={}, samples={}",
                args.word,
                format_float(p.rho),
                args.dim,
                args.samples
            );
            println!("seed:   {seed}");
            println!("mean:   {} (stderr {})", format_float(p.est.mean), format_float(p.est.stderr));
            println!(
                "imag:   {} (stderr {})",
                format_float(p.est.imag_mean),
                format_float(p.est.imag_stderr)
            );
            println!("exact:  {}", format_float(p.exact));
            println!("z:      {}", format_float(p.z));
            println!("result: {}", if p.pass { "PASS" } else { "FAIL" });
        }
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_STATISTICAL_FAIL })
}
