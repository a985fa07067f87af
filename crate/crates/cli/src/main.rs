//! `goldencalc`: command-line surface over the Fibonacci-divisor Golden
//! calculus library. Exact values print as decimal or canonical Q(√5)
//! strings; floats print as shortest round-trip decimals at the requested
//! precision.
//!
//! Exit codes: 0 success (and every reported residual meets its bound),
//! 1 a reported residual or exactness check failed, 2 usage error,
//! 3 domain error, 4 requested precision unachievable.

use clap::{Parser, Subcommand, ValueEnum};
use rug::{Float, Integer};

use golden_cli::output::*;
use golden_core::goldenfield::{ComplexQuadratic, QuadraticNumber};
use golden_core::hydroimages::{
    annulus_velocity, periodicity_residual, wedge_velocity, Flow, FlowConfig,
};
use golden_core::numeric::{float_serde, CFloat};
use golden_core::oscillator::{
    bargman_apply, bosonic_spectrum, coherent_state, fermionic_spectrum, semiclassical_energy,
    SpectrumEntry,
};
use golden_core::qcalculus::{
    golden_binomial, golden_derivative_poly, golden_taylor, BinomialSign, GoldenPolynomial,
};
use golden_core::quantumapps::{
    antipodal_qubits, bell_superpositions, concurrence_closed, concurrence_wootters,
    fibonacci_multiqubit, hecke_power, hecke_sample, hecke_sample_conjugated, PureState,
    TwoByTwoOperator,
};
use golden_core::sequences::{fib_divisor_nk, fibonomial, lucas};
use golden_core::series::{
    entire_gf_residual, generating_coeffs, golden_exp_eval, identity_suite, ExpVariant,
    IdentityReport,
};
use golden_core::Error as CoreError;

#[derive(Parser)]
#[command(
    name = "goldencalc",
    version,
    about = "Exact and arbitrary-precision calculus of Fibonacci divisors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Working precision in bits (default 128; the GOLDENCALC_PRECISION
    /// environment variable overrides the default).
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Default truncation order for series and image sums (default 100).
    #[arg(long, global = true)]
    truncation: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Small,
    Capital,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Boson,
    Fermion,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlowArg {
    Annulus,
    Wedge,
}

#[derive(Subcommand)]
enum Command {
    /// Fibonacci divisors F_n^(k) = F_{nk}/F_k for n = 1..=N, exact.
    Seq {
        /// Deformation order k (nonzero).
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Number of values.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10_000))]
        n: u64,
    },
    /// Lucas numbers L_n for n = 1..=N, exact.
    Lucas {
        /// Number of values.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10_000))]
        n: u64,
    },
    /// Fibonomial coefficients: one row of the deformed Pascal triangle, or a
    /// single entry when --m is given.
    Fibonomial {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Row index n.
        #[arg(long, value_parser = clap::value_parser!(i64).range(0..=2_000))]
        n: i64,
        /// Column index m (prints the whole row when omitted).
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i64>,
    },
    /// Golden binomial (x ± a)^n_F expanded into exact coefficients.
    Binomial {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Binomial power n.
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=300))]
        n: u32,
        /// Shift a, as an exact literal like "1", "3/2", or "1/2+1/2*sqrt5".
        #[arg(long, value_parser = parse_quad_arg, allow_hyphen_values = true)]
        a: QuadraticNumber,
        /// Sign convention.
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
    },
    /// k-th Golden derivative of a polynomial, applied --times times, exact.
    Derive {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Comma-separated exact coefficients, low order first.
        #[arg(long)]
        coeffs: String,
        /// How often to apply the derivative.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=1_000))]
        times: u32,
    },
    /// Golden-Taylor coefficients (D^n p)(0) of a polynomial, exact.
    Taylor {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Comma-separated exact coefficients, low order first.
        #[arg(long)]
        coeffs: String,
    },
    /// Rational generating function x/(1 − L_k x + (−1)^k x²): series
    /// coefficients, or the entire-function identity residual when --x is
    /// given.
    Genfun {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Truncation order (defaults to --truncation).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        order: Option<u64>,
        /// Evaluation point for the entire-function identity check.
        #[arg(long, value_parser = parse_float_arg, allow_negative_numbers = true)]
        x: Option<String>,
    },
    /// Exponential summation-identity battery at order k; exit 0 iff every
    /// residual meets its certified bound.
    Identities {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Golden exponential e_F or E_F partial sum at x with a certified tail
    /// bound.
    Exp {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Evaluation point (decimal literal).
        #[arg(long, value_parser = parse_float_arg, allow_negative_numbers = true)]
        x: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Small)]
        variant: VariantArg,
        /// Truncation order, inclusive (defaults to --truncation).
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..=100_000))]
        order: Option<u64>,
    },
    /// Oscillator spectrum in half-quantum units for n = 1..=N, exact.
    Spectrum {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Statistics: bosonic E_n = F_n + F_{n+1} or fermionic
        /// E_n = F_n − F_{n+1} (odd k).
        #[arg(long = "type", value_enum)]
        kind: KindArg,
        /// Highest level.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        n: u64,
        /// Print magnitudes instead of signed energies.
        #[arg(long)]
        abs: bool,
    },
    /// Semiclassical Bernoulli expansion of level n next to the exact value
    /// (even k).
    Semiclassical {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..=100_000))]
        n: u64,
        /// Number of correction terms S.
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=200))]
        terms: u32,
    },
    /// Truncated coherent state of the lowering operator: amplitudes, measured
    /// eigen-residual, and its certified bound.
    Coherent {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Re β.
        #[arg(long, value_parser = parse_float_arg, allow_negative_numbers = true)]
        beta_re: String,
        /// Im β.
        #[arg(long, default_value = "0", value_parser = parse_float_arg, allow_negative_numbers = true)]
        beta_im: String,
        /// Fock-space truncation dimension.
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(2..=500))]
        dim: u64,
    },
    /// Holomorphic number operator z·D applied to a polynomial; monomials are
    /// eigenvectors with eigenvalue F_n^(k).
    Bargman {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Comma-separated exact coefficients, low order first.
        #[arg(long)]
        coeffs: String,
    },
    /// Qubit states with sequence-valued amplitudes: the antipodal pair, or
    /// the n-qubit weighted state when --n is given (odd k).
    Qubit {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Qubit count for the weighted multiqubit state.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=20))]
        n: Option<u32>,
    },
    /// Two-qubit concurrence of the weighted state: closed form 2/(2 + L_k²)
    /// against the Wootters evaluation (odd k).
    Concurrence {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// The four Bell-type superpositions of the antipodal pair with their
    /// concurrences.
    Bell {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Power reduction R^n = F_n^(k) R + F_{n−1}^(k) I for an operator
    /// satisfying the order-k quadratic condition, against the directly
    /// multiplied power.
    Hecke {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Power n.
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..=10_000))]
        n: u64,
        /// Use the conjugated sample instead of the diagonal one.
        #[arg(long)]
        conjugated: bool,
        /// Seed for the conjugated sample.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Sample the conjugate velocity of a truncated image flow on a grid;
    /// rows x, y, Re V, Im V, |V|. Grid points hitting an image are skipped.
    HydroField {
        #[arg(long, value_enum)]
        flow: FlowArg,
        /// Re z0 (vortex position).
        #[arg(long, value_parser = parse_float_arg, allow_negative_numbers = true)]
        z0_re: String,
        /// Im z0.
        #[arg(long, default_value = "0", value_parser = parse_float_arg, allow_negative_numbers = true)]
        z0_im: String,
        /// Circulation Γ.
        #[arg(long, default_value = "1", value_parser = parse_float_arg, allow_negative_numbers = true)]
        gamma: String,
        /// Annulus order (outer wall at φ^(k/2)).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
        k: u32,
        #[arg(long, value_parser = parse_float_arg, allow_negative_numbers = true)]
        xmin: Option<String>,
        #[arg(long, value_parser = parse_float_arg, allow_negative_numbers = true)]
        xmax: Option<String>,
        #[arg(long, value_parser = parse_float_arg, allow_negative_numbers = true)]
        ymin: Option<String>,
        #[arg(long, value_parser = parse_float_arg, allow_negative_numbers = true)]
        ymax: Option<String>,
        /// Samples per axis.
        #[arg(long, default_value_t = 24, value_parser = clap::value_parser!(u64).range(2..=1_000))]
        steps: u64,
    },
    /// Golden-periodicity defect |φ^k V̄(φ^k z) − V̄(z)| of a truncated image
    /// flow, with its predicted truncation scale; exit 0 iff the measured
    /// residual meets the prediction.
    HydroResidual {
        #[arg(long, value_enum)]
        flow: FlowArg,
        /// Re z0 (vortex position).
        #[arg(long, value_parser = parse_float_arg, allow_negative_numbers = true)]
        z0_re: String,
        /// Im z0.
        #[arg(long, default_value = "0", value_parser = parse_float_arg, allow_negative_numbers = true)]
        z0_im: String,
        /// Circulation Γ.
        #[arg(long, default_value = "1", value_parser = parse_float_arg, allow_negative_numbers = true)]
        gamma: String,
        /// Annulus order (outer wall at φ^(k/2)).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
        k: u32,
        /// Re z (evaluation point).
        #[arg(long, value_parser = parse_float_arg, allow_negative_numbers = true)]
        z_re: String,
        /// Im z.
        #[arg(long, default_value = "0", value_parser = parse_float_arg, allow_negative_numbers = true)]
        z_im: String,
    },
}

/// Syntax-checks a decimal float literal at parse time; the value is
/// re-parsed at the resolved precision later.
fn parse_float_arg(s: &str) -> Result<String, String> {
    Float::parse(s)
        .map(|_| s.to_owned())
        .map_err(|e| format!("invalid numeric literal: {e}"))
}

fn parse_quad_arg(s: &str) -> Result<QuadraticNumber, String> {
    s.parse::<QuadraticNumber>().map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Lib(CoreError),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Lib(e) => match e {
                CoreError::DivisionByZero => "division_by_zero",
                CoreError::InvalidOrder => "invalid_order",
                CoreError::NegativeIndex(_) => "negative_index",
                CoreError::IndexOutOfRange { .. } => "index_out_of_range",
                CoreError::EvaluationAtZero => "evaluation_at_zero",
                CoreError::EvenOrderForFermionic(_) => "even_order_for_fermionic",
                CoreError::OddOrderForSemiclassical(_) => "odd_order_for_semiclassical",
                CoreError::EvenOrderForState(_) => "even_order_for_state",
                CoreError::WrongArity(_) => "wrong_arity",
                CoreError::NotHecke(_) => "not_hecke",
                CoreError::PoleHit => "pole_hit",
                CoreError::OutOfDomain(_) => "out_of_domain",
                CoreError::PrecisionUnachievable(_) => "precision_unachievable",
                CoreError::Parse(_) => "parse",
            },
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Lib(CoreError::PrecisionUnachievable(_)) => 4,
            Failure::Lib(CoreError::Parse(_)) => 2,
            Failure::Lib(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

struct Opts {
    format: Format,
    prec: u32,
    trunc: usize,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(f) => {
            let doc = ErrorDoc {
                error: ErrorBody {
                    kind: f.kind().to_owned(),
                    message: f.message(),
                },
            };
            eprintln!("{}", serde_json::to_string(&doc).expect("error serialization"));
            std::process::exit(f.exit_code());
        }
    }
}

fn resolve_opts(cli: &Cli) -> Result<Opts, Failure> {
    let prec = match cli.precision {
        Some(p) => p,
        None => match std::env::var("GOLDENCALC_PRECISION") {
            Ok(s) => s.trim().parse::<u32>().map_err(|_| {
                Failure::Usage(format!(
                    "GOLDENCALC_PRECISION is not a valid bit count: {s:?}"
                ))
            })?,
            Err(std::env::VarError::NotPresent) => 128,
            Err(e) => return Err(Failure::Usage(format!("GOLDENCALC_PRECISION: {e}"))),
        },
    };
    if !(8..=1_048_576).contains(&prec) {
        return Err(Failure::Usage(format!(
            "precision must be between 8 and 1048576 bits, got {prec}"
        )));
    }
    let trunc = cli.truncation.unwrap_or(100);
    if trunc > 1_000_000 {
        return Err(Failure::Usage(format!(
            "truncation must be at most 1000000, got {trunc}"
        )));
    }
    Ok(Opts {
        format: cli.format,
        prec,
        trunc,
    })
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let opts = resolve_opts(&cli)?;
    match cli.command {
        Command::Seq { k, n } => cmd_seq(&opts, k, n),
        Command::Lucas { n } => cmd_lucas(&opts, n),
        Command::Fibonomial { k, n, m } => cmd_fibonomial(&opts, k, n, m),
        Command::Binomial { k, n, a, sign } => cmd_binomial(&opts, k, n, &a, sign),
        Command::Derive { k, coeffs, times } => cmd_derive(&opts, k, &coeffs, times),
        Command::Taylor { k, coeffs } => cmd_taylor(&opts, k, &coeffs),
        Command::Genfun { k, order, x } => cmd_genfun(&opts, k, order, x.as_deref()),
        Command::Identities { k } => cmd_identities(&opts, k),
        Command::Exp {
            k,
            x,
            variant,
            order,
        } => cmd_exp(&opts, k, &x, variant, order),
        Command::Spectrum { k, kind, n, abs } => cmd_spectrum(&opts, k, kind, n, abs),
        Command::Semiclassical { k, n, terms } => cmd_semiclassical(&opts, k, n, terms),
        Command::Coherent {
            k,
            beta_re,
            beta_im,
            dim,
        } => cmd_coherent(&opts, k, &beta_re, &beta_im, dim as usize),
        Command::Bargman { k, coeffs } => cmd_bargman(&opts, k, &coeffs),
        Command::Qubit { k, n } => cmd_qubit(&opts, k, n),
        Command::Concurrence { k } => cmd_concurrence(&opts, k),
        Command::Bell { k } => cmd_bell(&opts, k),
        Command::Hecke {
            k,
            n,
            conjugated,
            seed,
        } => cmd_hecke(&opts, k, n, conjugated, seed),
        Command::HydroField {
            flow,
            z0_re,
            z0_im,
            gamma,
            k,
            xmin,
            xmax,
            ymin,
            ymax,
            steps,
        } => cmd_hydro_field(
            &opts,
            flow,
            &z0_re,
            &z0_im,
            &gamma,
            k,
            [
                xmin.as_deref(),
                xmax.as_deref(),
                ymin.as_deref(),
                ymax.as_deref(),
            ],
            steps as usize,
        ),
        Command::HydroResidual {
            flow,
            z0_re,
            z0_im,
            gamma,
            k,
            z_re,
            z_im,
        } => cmd_hydro_residual(&opts, flow, &z0_re, &z0_im, &gamma, k, &z_re, &z_im),
    }
}

fn fstr(f: &Float) -> String {
    float_serde::to_string(f)
}

fn parse_float(s: &str, prec: u32) -> Result<Float, Failure> {
    Float::parse(s)
        .map(|i| Float::with_val(prec, i))
        .map_err(|e| Failure::Usage(format!("invalid numeric literal {s:?}: {e}")))
}

fn parse_coeffs(s: &str) -> Result<Vec<ComplexQuadratic>, Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.iter().all(|p| p.trim().is_empty()) {
        return Err(Failure::Usage("empty coefficient list".into()));
    }
    parts
        .into_iter()
        .map(|p| {
            p.parse::<QuadraticNumber>()
                .map(ComplexQuadratic::from_real)
                .map_err(|e| Failure::Usage(format!("coefficient {:?}: {e}", p.trim())))
        })
        .collect()
}

fn poly_strings(p: &GoldenPolynomial) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".to_owned()];
    }
    p.coeffs().iter().map(ToString::to_string).collect()
}

/// Prints one line to stdout, exiting quietly when the consumer closed the
/// pipe early.
fn out(line: std::fmt::Arguments) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let res = stdout
        .write_fmt(line)
        .and_then(|()| stdout.write_all(b"\n"));
    if let Err(e) = res {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed writing to stdout: {e}");
    }
}

macro_rules! outln {
    ($($arg:tt)*) => { out(format_args!($($arg)*)) };
}

fn csv_guard<T>(r: Result<T, csv::Error>) -> T {
    match r {
        Ok(t) => t,
        Err(e) => {
            if let csv::ErrorKind::Io(io) = e.kind() {
                if io.kind() == std::io::ErrorKind::BrokenPipe {
                    std::process::exit(0);
                }
            }
            panic!("csv write failed: {e}");
        }
    }
}

fn emit_json<T: serde::Serialize>(doc: &T) {
    outln!("{}", serde_json::to_string(doc).expect("json serialization"));
}

fn emit_csv(headers: &[&str], rows: &[Vec<String>]) {
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    csv_guard(w.write_record(headers));
    for r in rows {
        csv_guard(w.write_record(r));
    }
    if let Err(e) = w.flush() {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("csv flush failed: {e}");
    }
}

fn emit_values_line(values: &[String]) {
    outln!("{}", values.join(" "));
}

fn cmd_seq(opts: &Opts, k: i64, n: u64) -> Result<bool, Failure> {
    let values: Vec<String> = (1..=n as i64)
        .map(|i| fib_divisor_nk(i, k).map(|v| v.to_string()))
        .collect::<Result<_, _>>()?;
    match opts.format {
        Format::Plain => emit_values_line(&values),
        Format::Json => emit_json(&SequenceDoc { k, values }),
        Format::Csv => {
            let rows: Vec<Vec<String>> = values
                .iter()
                .enumerate()
                .map(|(i, v)| vec![k.to_string(), (i as i64 + 1).to_string(), v.clone()])
                .collect();
            emit_csv(&["k", "n", "value"], &rows);
        }
    }
    Ok(true)
}

fn cmd_lucas(opts: &Opts, n: u64) -> Result<bool, Failure> {
    let values: Vec<String> = (1..=n as i64).map(|i| lucas(i).to_string()).collect();
    match opts.format {
        Format::Plain => emit_values_line(&values),
        Format::Json => emit_json(&LucasDoc { values }),
        Format::Csv => {
            let rows: Vec<Vec<String>> = values
                .iter()
                .enumerate()
                .map(|(i, v)| vec![(i as i64 + 1).to_string(), v.clone()])
                .collect();
            emit_csv(&["n", "value"], &rows);
        }
    }
    Ok(true)
}

fn cmd_fibonomial(opts: &Opts, k: i64, n: i64, m: Option<i64>) -> Result<bool, Failure> {
    let ms: Vec<i64> = match m {
        Some(m) => vec![m],
        None => (0..=n).collect(),
    };
    let entries: Vec<FibonomialEntry> = ms
        .into_iter()
        .map(|m| {
            Ok(FibonomialEntry {
                m,
                value: fibonomial(n, m, k)?.to_string(),
            })
        })
        .collect::<Result<_, Failure>>()?;
    match opts.format {
        Format::Plain => {
            let values: Vec<String> = entries.iter().map(|e| e.value.clone()).collect();
            emit_values_line(&values);
        }
        Format::Json => emit_json(&FibonomialDoc { k, n, entries }),
        Format::Csv => {
            let rows: Vec<Vec<String>> = entries
                .iter()
                .map(|e| {
                    vec![
                        k.to_string(),
                        n.to_string(),
                        e.m.to_string(),
                        e.value.clone(),
                    ]
                })
                .collect();
            emit_csv(&["k", "n", "m", "value"], &rows);
        }
    }
    Ok(true)
}

fn emit_poly(opts: &Opts, k: i64, coeffs: Vec<String>) {
    match opts.format {
        Format::Plain => emit_values_line(&coeffs),
        Format::Json => emit_json(&PolyDoc { k, coeffs }),
        Format::Csv => {
            let rows: Vec<Vec<String>> = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| vec![k.to_string(), i.to_string(), c.clone()])
                .collect();
            emit_csv(&["k", "index", "coeff"], &rows);
        }
    }
}

fn cmd_binomial(
    opts: &Opts,
    k: i64,
    n: u32,
    a: &QuadraticNumber,
    sign: SignArg,
) -> Result<bool, Failure> {
    let lib_sign = match sign {
        SignArg::Plus => BinomialSign::Plus,
        SignArg::Minus => BinomialSign::Minus,
    };
    let p = golden_binomial(k, n, &ComplexQuadratic::from_real(a.clone()), lib_sign)?;
    let coeffs = poly_strings(&p);
    match opts.format {
        Format::Json => emit_json(&BinomialDoc {
            k,
            n,
            a: a.to_string(),
            sign: match sign {
                SignArg::Plus => "plus".to_owned(),
                SignArg::Minus => "minus".to_owned(),
            },
            coeffs,
        }),
        _ => emit_poly(opts, k, coeffs),
    }
    Ok(true)
}

fn cmd_derive(opts: &Opts, k: i64, coeffs: &str, times: u32) -> Result<bool, Failure> {
    let mut p = GoldenPolynomial::from_coeffs(parse_coeffs(coeffs)?);
    for _ in 0..times {
        p = golden_derivative_poly(k, &p)?;
    }
    emit_poly(opts, k, poly_strings(&p));
    Ok(true)
}

fn cmd_taylor(opts: &Opts, k: i64, coeffs: &str) -> Result<bool, Failure> {
    let p = GoldenPolynomial::from_coeffs(parse_coeffs(coeffs)?);
    let values: Vec<String> = golden_taylor(k, &p)?
        .iter()
        .map(ToString::to_string)
        .collect();
    match opts.format {
        Format::Plain => emit_values_line(&values),
        Format::Json => emit_json(&TaylorDoc { k, coeffs: values }),
        Format::Csv => {
            let rows: Vec<Vec<String>> = values
                .iter()
                .enumerate()
                .map(|(i, c)| vec![k.to_string(), i.to_string(), c.clone()])
                .collect();
            emit_csv(&["k", "index", "coeff"], &rows);
        }
    }
    Ok(true)
}

fn identity_csv_row(r: &IdentityReport) -> Vec<String> {
    vec![
        r.id.clone(),
        r.k.to_string(),
        fstr(&r.x),
        fstr(&r.lhs),
        fstr(&r.rhs),
        fstr(&r.residual),
        fstr(&r.bound),
    ]
}

fn identity_plain_line(r: &IdentityReport) -> String {
    format!(
        "id={} k={} x={} residual={} bound={} ok={}",
        r.id,
        r.k,
        fstr(&r.x),
        fstr(&r.residual),
        fstr(&r.bound),
        r.within_bound()
    )
}

const IDENTITY_HEADERS: [&str; 7] = ["id", "k", "x", "lhs", "rhs", "residual", "bound"];

fn cmd_genfun(opts: &Opts, k: i64, order: Option<u64>, x: Option<&str>) -> Result<bool, Failure> {
    let order = order.map(|o| o as usize).unwrap_or(opts.trunc);
    if let Some(x) = x {
        let xf = parse_float(x, opts.prec)?;
        let report = entire_gf_residual(k, &xf, order, opts.prec)?;
        match opts.format {
            Format::Plain => outln!("{}", identity_plain_line(&report)),
            Format::Json => emit_json(&report),
            Format::Csv => emit_csv(&IDENTITY_HEADERS, &[identity_csv_row(&report)]),
        }
        return Ok(report.within_bound());
    }
    let values: Vec<String> = generating_coeffs(k, order)?
        .iter()
        .map(ToString::to_string)
        .collect();
    match opts.format {
        Format::Plain => emit_values_line(&values),
        Format::Json => emit_json(&GenfunDoc { k, coeffs: values }),
        Format::Csv => {
            let rows: Vec<Vec<String>> = values
                .iter()
                .enumerate()
                .map(|(i, c)| vec![k.to_string(), i.to_string(), c.clone()])
                .collect();
            emit_csv(&["k", "index", "coeff"], &rows);
        }
    }
    Ok(true)
}

fn cmd_identities(opts: &Opts, k: i64) -> Result<bool, Failure> {
    let reports = identity_suite(k, opts.prec)?;
    let ok = reports.iter().all(IdentityReport::within_bound);
    match opts.format {
        Format::Plain => {
            for r in &reports {
                outln!("{}", identity_plain_line(r));
            }
        }
        Format::Json => {
            for r in &reports {
                emit_json(r);
            }
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports.iter().map(identity_csv_row).collect();
            emit_csv(&IDENTITY_HEADERS, &rows);
        }
    }
    Ok(ok)
}

fn cmd_exp(
    opts: &Opts,
    k: i64,
    x: &str,
    variant: VariantArg,
    order: Option<u64>,
) -> Result<bool, Failure> {
    let order = order.map(|o| o as usize).unwrap_or(opts.trunc);
    let xf = parse_float(x, opts.prec)?;
    let lib_variant = match variant {
        VariantArg::Small => ExpVariant::Small,
        VariantArg::Capital => ExpVariant::Capital,
    };
    let value = golden_exp_eval(k, lib_variant, &CFloat::from_real(xf.clone()), order, opts.prec)?;
    let doc = ExpDoc {
        k,
        variant: match variant {
            VariantArg::Small => "small".to_owned(),
            VariantArg::Capital => "capital".to_owned(),
        },
        x: xf,
        order,
        value: value.value.re,
        tail_bound: value.tail_bound,
    };
    match opts.format {
        Format::Plain => outln!("value={} tail_bound={}", fstr(&doc.value), fstr(&doc.tail_bound)),
        Format::Json => emit_json(&doc),
        Format::Csv => emit_csv(
            &["k", "variant", "x", "order", "value", "tail_bound"],
            &[vec![
                doc.k.to_string(),
                doc.variant.clone(),
                fstr(&doc.x),
                doc.order.to_string(),
                fstr(&doc.value),
                fstr(&doc.tail_bound),
            ]],
        ),
    }
    Ok(true)
}

fn cmd_spectrum(opts: &Opts, k: i64, kind: KindArg, n: u64, abs: bool) -> Result<bool, Failure> {
    let spectrum: Vec<SpectrumEntry> = match kind {
        KindArg::Boson => bosonic_spectrum(k, n)?,
        KindArg::Fermion => fermionic_spectrum(k, n)?,
    };
    let entries: Vec<SpectrumRow> = spectrum
        .into_iter()
        .skip(1)
        .map(|e| {
            let v = if abs {
                e.energy_halfquanta.abs()
            } else {
                e.energy_halfquanta
            };
            SpectrumRow {
                n: e.n,
                energy_halfquanta: v.to_string(),
            }
        })
        .collect();
    match opts.format {
        Format::Plain => {
            let values: Vec<String> = entries
                .iter()
                .map(|e| e.energy_halfquanta.clone())
                .collect();
            emit_values_line(&values);
        }
        Format::Json => emit_json(&SpectrumDoc {
            k,
            kind: match kind {
                KindArg::Boson => "boson".to_owned(),
                KindArg::Fermion => "fermion".to_owned(),
            },
            entries,
        }),
        Format::Csv => {
            let rows: Vec<Vec<String>> = entries
                .iter()
                .map(|e| {
                    vec![
                        k.to_string(),
                        e.n.to_string(),
                        e.energy_halfquanta.clone(),
                    ]
                })
                .collect();
            emit_csv(&["k", "n", "energy_halfquanta"], &rows);
        }
    }
    Ok(true)
}

fn cmd_semiclassical(opts: &Opts, k: i64, n: u64, terms: u32) -> Result<bool, Failure> {
    let value = semiclassical_energy(k, n, terms, opts.prec)?;
    let exact: Integer = if k == 0 {
        Integer::from(2 * n + 1)
    } else {
        bosonic_spectrum(k, n)?
            .pop()
            .expect("spectrum is nonempty")
            .energy_halfquanta
    };
    let wp = opts.prec + 32;
    let error = Float::with_val(
        opts.prec,
        Float::with_val(wp, &value) - Float::with_val(wp, &exact),
    )
    .abs();
    let doc = SemiclassicalDoc {
        k,
        n,
        terms,
        semiclassical: value,
        exact_halfquanta: exact.to_string(),
        error,
    };
    match opts.format {
        Format::Plain => outln!(
            "semiclassical={} exact={} error={}",
            fstr(&doc.semiclassical),
            doc.exact_halfquanta,
            fstr(&doc.error)
        ),
        Format::Json => emit_json(&doc),
        Format::Csv => emit_csv(
            &["k", "n", "terms", "semiclassical", "exact", "error"],
            &[vec![
                doc.k.to_string(),
                doc.n.to_string(),
                doc.terms.to_string(),
                fstr(&doc.semiclassical),
                doc.exact_halfquanta.clone(),
                fstr(&doc.error),
            ]],
        ),
    }
    Ok(true)
}

fn cmd_coherent(
    opts: &Opts,
    k: i64,
    beta_re: &str,
    beta_im: &str,
    dim: usize,
) -> Result<bool, Failure> {
    let beta = CFloat::new(
        parse_float(beta_re, opts.prec)?,
        parse_float(beta_im, opts.prec)?,
    );
    let state = coherent_state(k, &beta, dim, opts.prec)?;
    let ok = state.eigen_residual <= state.tail_bound;
    let doc = CoherentDoc {
        k: state.k,
        dim: state.dim,
        beta: Complex {
            re: state.beta.re.clone(),
            im: state.beta.im.clone(),
        },
        eigen_residual: state.eigen_residual,
        tail_bound: state.tail_bound,
        amplitudes: state
            .amplitudes
            .iter()
            .map(|a| {
                let a = a.with_prec(opts.prec);
                Complex { re: a.re, im: a.im }
            })
            .collect(),
    };
    match opts.format {
        Format::Plain => outln!(
            "eigen_residual={} tail_bound={} ok={}",
            fstr(&doc.eigen_residual),
            fstr(&doc.tail_bound),
            ok
        ),
        Format::Json => emit_json(&doc),
        Format::Csv => {
            let rows: Vec<Vec<String>> = doc
                .amplitudes
                .iter()
                .enumerate()
                .map(|(i, a)| vec![i.to_string(), fstr(&a.re), fstr(&a.im)])
                .collect();
            emit_csv(&["n", "re", "im"], &rows);
        }
    }
    Ok(ok)
}

fn cmd_bargman(opts: &Opts, k: i64, coeffs: &str) -> Result<bool, Failure> {
    let p = GoldenPolynomial::from_coeffs(parse_coeffs(coeffs)?);
    let out = bargman_apply(k, &p)?;
    emit_poly(opts, k, poly_strings(&out));
    Ok(true)
}

fn state_plain_line(s: &PureState) -> String {
    let amps: Vec<String> = s.amplitudes_unnorm.iter().map(ToString::to_string).collect();
    format!("{} norm_sq={}", amps.join(" "), s.norm_sq)
}

fn state_csv_rows(label: &str, s: &PureState) -> Vec<Vec<String>> {
    s.amplitudes_unnorm
        .iter()
        .enumerate()
        .map(|(i, a)| vec![label.to_owned(), i.to_string(), a.to_string()])
        .collect()
}

fn cmd_qubit(opts: &Opts, k: i64, n: Option<u32>) -> Result<bool, Failure> {
    match n {
        Some(n) => {
            let state = fibonacci_multiqubit(k, n)?;
            match opts.format {
                Format::Plain => outln!("{}", state_plain_line(&state)),
                Format::Json => emit_json(&state),
                Format::Csv => {
                    emit_csv(&["state", "index", "amplitude"], &state_csv_rows("state", &state))
                }
            }
        }
        None => {
            let (first, second) = antipodal_qubits(k)?;
            match opts.format {
                Format::Plain => {
                    outln!("first: {}", state_plain_line(&first));
                    outln!("second: {}", state_plain_line(&second));
                }
                Format::Json => emit_json(&AntipodalDoc { first, second }),
                Format::Csv => {
                    let mut rows = state_csv_rows("first", &first);
                    rows.extend(state_csv_rows("second", &second));
                    emit_csv(&["state", "index", "amplitude"], &rows);
                }
            }
        }
    }
    Ok(true)
}

fn cmd_concurrence(opts: &Opts, k: i64) -> Result<bool, Failure> {
    let state = fibonacci_multiqubit(k, 2)?;
    let closed = concurrence_closed(k);
    let wootters = concurrence_wootters(&state, opts.prec)?;
    let wp = opts.prec + 32;
    let closed_f = Float::with_val(wp, &closed);
    let difference = Float::with_val(opts.prec, Float::with_val(wp, &wootters) - closed_f).abs();
    let bound = Float::with_val(opts.prec, Float::i_exp(1, -(opts.prec as i32) + 6));
    let ok = difference <= bound;
    let doc = ConcurrenceDoc {
        k,
        closed: closed.to_string(),
        wootters,
        difference,
        bound,
    };
    match opts.format {
        Format::Plain => outln!(
            "closed={} wootters={} difference={} bound={} ok={}",
            doc.closed,
            fstr(&doc.wootters),
            fstr(&doc.difference),
            fstr(&doc.bound),
            ok
        ),
        Format::Json => emit_json(&doc),
        Format::Csv => emit_csv(
            &["k", "closed", "wootters", "difference", "bound"],
            &[vec![
                doc.k.to_string(),
                doc.closed.clone(),
                fstr(&doc.wootters),
                fstr(&doc.difference),
                fstr(&doc.bound),
            ]],
        ),
    }
    Ok(ok)
}

fn cmd_bell(opts: &Opts, k: i64) -> Result<bool, Failure> {
    let states = bell_superpositions(k)?;
    let c = |s: &PureState| concurrence_wootters(s, opts.prec);
    let concurrences = BellConcurrences {
        p_plus: c(&states.p_plus)?,
        p_minus: c(&states.p_minus)?,
        g_plus: c(&states.g_plus)?,
        g_minus: c(&states.g_minus)?,
    };
    let named = [
        ("p_plus", &states.p_plus, &concurrences.p_plus),
        ("p_minus", &states.p_minus, &concurrences.p_minus),
        ("g_plus", &states.g_plus, &concurrences.g_plus),
        ("g_minus", &states.g_minus, &concurrences.g_minus),
    ];
    match opts.format {
        Format::Plain => {
            for (name, state, conc) in named {
                outln!("{name}: {} concurrence={}", state_plain_line(state), fstr(conc));
            }
        }
        Format::Json => emit_json(&BellDoc {
            k,
            states: states.clone(),
            concurrences,
        }),
        Format::Csv => {
            let mut rows = Vec::new();
            for (name, state, conc) in named {
                for (i, a) in state.amplitudes_unnorm.iter().enumerate() {
                    rows.push(vec![
                        name.to_owned(),
                        i.to_string(),
                        a.to_string(),
                        fstr(conc),
                    ]);
                }
            }
            emit_csv(&["state", "index", "amplitude", "concurrence"], &rows);
        }
    }
    Ok(true)
}

fn mat_str(m: &TwoByTwoOperator) -> String {
    format!(
        "[[{}, {}], [{}, {}]]",
        m.entries[0][0], m.entries[0][1], m.entries[1][0], m.entries[1][1]
    )
}

fn mat_csv_rows(label: &str, m: &TwoByTwoOperator) -> Vec<Vec<String>> {
    let mut rows = Vec::with_capacity(4);
    for i in 0..2 {
        for j in 0..2 {
            rows.push(vec![
                label.to_owned(),
                i.to_string(),
                j.to_string(),
                m.entries[i][j].to_string(),
            ]);
        }
    }
    rows
}

fn cmd_hecke(opts: &Opts, k: i64, n: u64, conjugated: bool, seed: u64) -> Result<bool, Failure> {
    let operator = if conjugated {
        hecke_sample_conjugated(k, seed)?
    } else {
        hecke_sample(k)?
    };
    let mut power = TwoByTwoOperator::identity();
    for _ in 0..n {
        power = power.mul(&operator);
    }
    let reduced = hecke_power(&operator, n, k)?;
    let exact = power == reduced;
    let coeff_r = fib_divisor_nk(n as i64, k)?.to_string();
    let coeff_identity = fib_divisor_nk(n as i64 - 1, k)?.to_string();
    let doc = HeckeDoc {
        k,
        n,
        sample: if conjugated {
            "conjugated".to_owned()
        } else {
            "diagonal".to_owned()
        },
        seed: conjugated.then_some(seed),
        operator,
        power,
        reduced,
        coeff_r,
        coeff_identity,
        exact,
    };
    match opts.format {
        Format::Plain => {
            outln!("operator={}", mat_str(&doc.operator));
            outln!("power={}", mat_str(&doc.power));
            outln!("reduced={}", mat_str(&doc.reduced));
            outln!(
                "coeff_r={} coeff_identity={} exact={}",
                doc.coeff_r, doc.coeff_identity, doc.exact
            );
        }
        Format::Json => emit_json(&doc),
        Format::Csv => {
            let mut rows = mat_csv_rows("operator", &doc.operator);
            rows.extend(mat_csv_rows("power", &doc.power));
            rows.extend(mat_csv_rows("reduced", &doc.reduced));
            emit_csv(&["matrix", "i", "j", "value"], &rows);
        }
    }
    Ok(doc.exact)
}

fn flow_config(
    opts: &Opts,
    z0_re: &str,
    z0_im: &str,
    gamma: &str,
    k: u32,
) -> Result<FlowConfig, Failure> {
    let z0 = CFloat::new(
        parse_float(z0_re, opts.prec)?,
        parse_float(z0_im, opts.prec)?,
    );
    let gamma = parse_float(gamma, opts.prec)?;
    Ok(FlowConfig::new(z0, gamma, opts.trunc, k, opts.prec)?)
}

const FIELD_HEADERS: [&str; 5] = ["x", "y", "re_v", "im_v", "abs_v"];

#[allow(clippy::too_many_arguments)]
fn cmd_hydro_field(
    opts: &Opts,
    flow: FlowArg,
    z0_re: &str,
    z0_im: &str,
    gamma: &str,
    k: u32,
    window: [Option<&str>; 4],
    steps: usize,
) -> Result<bool, Failure> {
    let cfg = flow_config(opts, z0_re, z0_im, gamma, k)?;
    // Default window: the annulus box spans the outer wall φ^(k/2) with a
    // small margin; the wedge box covers the first-quadrant region.
    let outer = ((1.0 + 5f64.sqrt()) / 2.0).powf(k as f64 / 2.0);
    let defaults = match flow {
        FlowArg::Annulus => [-1.05 * outer, 1.05 * outer, -1.05 * outer, 1.05 * outer],
        FlowArg::Wedge => [0.0, 1.05 * outer, 0.0, 1.05 * outer],
    };
    let mut bounds = [Float::new(opts.prec), Float::new(opts.prec), Float::new(opts.prec), Float::new(opts.prec)];
    for (i, b) in bounds.iter_mut().enumerate() {
        *b = match window[i] {
            Some(s) => parse_float(s, opts.prec)?,
            None => Float::with_val(opts.prec, defaults[i]),
        };
    }
    let [xmin, xmax, ymin, ymax] = bounds;
    if xmin >= xmax || ymin >= ymax {
        return Err(Failure::Usage(
            "grid window is empty: need xmin < xmax and ymin < ymax".into(),
        ));
    }
    let velocity = |z: &CFloat| match flow {
        FlowArg::Annulus => annulus_velocity(&cfg, z),
        FlowArg::Wedge => wedge_velocity(&cfg, z),
    };
    let dx = Float::with_val(opts.prec, &xmax - &xmin) / (steps as u32 - 1);
    let dy = Float::with_val(opts.prec, &ymax - &ymin) / (steps as u32 - 1);
    let mut rows = Vec::new();
    for i in 0..steps {
        let x = Float::with_val(opts.prec, &dx * Float::with_val(opts.prec, i)) + &xmin;
        for j in 0..steps {
            let y = Float::with_val(opts.prec, &dy * Float::with_val(opts.prec, j)) + &ymin;
            let z = CFloat::new(x.clone(), y.clone());
            match velocity(&z) {
                Ok(v) => rows.push(FieldRow {
                    x: x.clone(),
                    y,
                    abs_v: v.abs(),
                    re_v: v.re,
                    im_v: v.im,
                }),
                Err(CoreError::PoleHit) => continue,
                Err(e) => return Err(e.into()),
            }
        }
    }
    match opts.format {
        Format::Json => emit_json(&rows),
        Format::Plain => {
            outln!("{}", FIELD_HEADERS.join(" "));
            for r in &rows {
                outln!(
                    "{} {} {} {} {}",
                    fstr(&r.x),
                    fstr(&r.y),
                    fstr(&r.re_v),
                    fstr(&r.im_v),
                    fstr(&r.abs_v)
                );
            }
        }
        Format::Csv => {
            let csv_rows: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        fstr(&r.x),
                        fstr(&r.y),
                        fstr(&r.re_v),
                        fstr(&r.im_v),
                        fstr(&r.abs_v),
                    ]
                })
                .collect();
            emit_csv(&FIELD_HEADERS, &csv_rows);
        }
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn cmd_hydro_residual(
    opts: &Opts,
    flow: FlowArg,
    z0_re: &str,
    z0_im: &str,
    gamma: &str,
    k: u32,
    z_re: &str,
    z_im: &str,
) -> Result<bool, Failure> {
    let cfg = flow_config(opts, z0_re, z0_im, gamma, k)?;
    let z = CFloat::new(parse_float(z_re, opts.prec)?, parse_float(z_im, opts.prec)?);
    let lib_flow = match flow {
        FlowArg::Annulus => Flow::Annulus,
        FlowArg::Wedge => Flow::Wedge,
    };
    let report = periodicity_residual(&cfg, &z, lib_flow)?;
    let ok = report.residual <= report.predicted_scale;
    let doc = HydroResidualDoc {
        flow: lib_flow,
        k,
        truncation: cfg.truncation_n,
        z: Complex {
            re: z.re.clone(),
            im: z.im.clone(),
        },
        residual: report.residual,
        predicted_scale: report.predicted_scale,
    };
    match opts.format {
        Format::Plain => outln!(
            "residual={} predicted_scale={} ok={}",
            fstr(&doc.residual),
            fstr(&doc.predicted_scale),
            ok
        ),
        Format::Json => emit_json(&doc),
        Format::Csv => emit_csv(
            &["flow", "k", "truncation", "residual", "predicted_scale"],
            &[vec![
                match lib_flow {
                    Flow::Annulus => "annulus".to_owned(),
                    Flow::Wedge => "wedge".to_owned(),
                },
                doc.k.to_string(),
                doc.truncation.to_string(),
                fstr(&doc.residual),
                fstr(&doc.predicted_scale),
            ]],
        ),
    }
    Ok(ok)
}
