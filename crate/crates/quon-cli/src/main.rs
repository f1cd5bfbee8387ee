//! Command-line front end: parses operator expressions, dispatches the
//! library verbs, and emits plain/LaTeX/JSON renderings.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse/usage error,
//! 3 resource cap exceeded.

mod emit;
mod parse;

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::BigRational;
use quon::combinatorics::{
    enumerate_balanced_patterns, enumerate_feynman, enumerate_noncrossing,
    enumerate_pair_partitions, SignPattern,
};
use quon::fock::{field_moments, verify_relations_grid, FockConfig, MParam};
use quon::qwick::{verify_pi_equals_c, verify_specialization};
use quon::symbolic::{
    normal_form_equal, normal_order_rewrite, normal_order_wick, vacuum_expectation,
    verify_engine_equivalence, NormalForm, ProjectorMode, Word,
};
use quon::VerifyReport;

#[derive(Parser)]
#[command(name = "quon", version, about = "Normal ordering and deformed Fock space toolkit")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Normal-order an operator expression.
    NormalOrder {
        /// Algebra parameter m (≥ 1).
        #[arg(long)]
        m: i64,
        /// Engine to run; `both` cross-checks them and fails on disagreement.
        #[arg(long, value_enum, default_value_t = Mode::Wick)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        /// Expression such as "a(f) a+(g) p[2]", or "-" to read stdin.
        expression: String,
    },
    /// Vacuum expectation of an expression, as polynomials in q.
    Vacuum {
        /// Algebra parameter m (≥ 1).
        #[arg(long)]
        m: i64,
        /// Evaluate at this q: a rational "p/q" evaluates exactly, a decimal
        /// in floating point. Omit to print the polynomials.
        #[arg(long)]
        q: Option<String>,
        /// Evaluate projector symbols on the vacuum instead of keeping them
        /// formal.
        #[arg(long, value_enum, default_value_t = OnOff::On)]
        concrete_projectors: OnOff,
        /// Expression, or "-" to read stdin.
        expression: String,
    },
    /// Moments of the field operator a(f)+a⁺(f), ‖f‖ = 1.
    Moments {
        /// Deformation parameter, in [−1, 1].
        #[arg(long)]
        q: f64,
        /// Interaction range m (≥ 1).
        #[arg(long)]
        m: u32,
        /// One-particle dimension (≤ 4).
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Truncation level (≤ 6).
        #[arg(long, default_value_t = 4)]
        levels: usize,
        /// Highest moment to print (≤ 2·levels).
        #[arg(long)]
        orders: usize,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Exhaustive length bound (suite-specific default).
        #[arg(long)]
        max_len: Option<usize>,
        /// Randomized case count where the suite uses one.
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Count combinatorial families.
    Count {
        #[arg(long, value_enum)]
        what: What,
        /// Number of pairs (pp, ncpp, patterns).
        #[arg(long)]
        n: Option<usize>,
        /// Sign pattern for `feynman`, e.g. "-++".
        #[arg(long, allow_hyphen_values = true)]
        pattern: Option<String>,
        /// Restrict `feynman` to diagrams of this degree.
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Wick,
    Rewrite,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Latex,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    WickVsRewrite,
    PiEqualsC,
    FockRelations,
    Specialization,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Pp,
    Ncpp,
    Patterns,
    Feynman,
}

/// A failure destined for stderr plus a process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<quon::Error> for Failure {
    fn from(e: quon::Error) -> Self {
        let code = match e {
            quon::Error::CapExceeded { .. } => 3,
            quon::Error::Invalid(_) => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_expression(raw: &str) -> Result<String, Failure> {
    if raw == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::usage(format!("reading stdin: {e}")))?;
        Ok(text)
    } else {
        Ok(raw.to_string())
    }
}

fn parse_word(m: i64, raw: &str) -> Result<Word, Failure> {
    let text = read_expression(raw)?;
    let factors = parse::parse_expression(&text).map_err(|e| Failure::usage(e.to_string()))?;
    Word::new(m, factors).map_err(Failure::from)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.verb {
        Verb::NormalOrder {
            m,
            mode,
            format,
            expression,
        } => {
            let w = parse_word(m, &expression)?;
            let nf = match mode {
                Mode::Wick => normal_order_wick(&w)?,
                Mode::Rewrite => normal_order_rewrite(&w)?,
                Mode::Both => {
                    let wick = normal_order_wick(&w)?;
                    let rewrite = normal_order_rewrite(&w)?;
                    if !normal_form_equal(&wick, &rewrite)? {
                        return Err(Failure {
                            code: 1,
                            message: "normal-ordering engines disagree".to_string(),
                        });
                    }
                    wick
                }
            };
            print_normal_form(&nf, &w, format);
            Ok(())
        }
        Verb::Vacuum {
            m,
            q,
            concrete_projectors,
            expression,
        } => {
            let w = parse_word(m, &expression)?;
            let mode = match concrete_projectors {
                OnOff::On => ProjectorMode::Concrete,
                OnOff::Off => ProjectorMode::Formal,
            };
            let v = vacuum_expectation(&w, mode)?;
            let at = q.map(|text| parse_q(&text)).transpose()?;
            print_vacuum(&v, &w, at.as_ref());
            Ok(())
        }
        Verb::Moments {
            q,
            m,
            dim,
            levels,
            orders,
        } => {
            let cfg = FockConfig::new(q, MParam::Finite(m), dim, levels)?;
            let mut f = vec![num_complex_zero(); dim];
            f[0] = num_complex::Complex64::new(1.0, 0.0);
            for (i, value) in field_moments(&cfg, &f, orders)?.iter().enumerate() {
                println!("m{} = {}", i + 1, value);
            }
            Ok(())
        }
        Verb::Verify {
            suite,
            max_len,
            cases,
            seed,
        } => {
            let reports = run_suites(suite, max_len, cases, seed)?;
            let mut all_pass = true;
            for report in &reports {
                println!("{}", report.to_json());
                all_pass &= report.pass;
            }
            if all_pass {
                Ok(())
            } else {
                Err(Failure {
                    code: 1,
                    message: "verification failed".to_string(),
                })
            }
        }
        Verb::Count {
            what,
            n,
            pattern,
            k,
        } => {
            let count = run_count(what, n, pattern, k)?;
            println!("{count}");
            Ok(())
        }
    }
}

fn num_complex_zero() -> num_complex::Complex64 {
    num_complex::Complex64::new(0.0, 0.0)
}

fn run_suites(
    suite: Suite,
    max_len: Option<usize>,
    cases: Option<usize>,
    seed: Option<u64>,
) -> Result<Vec<VerifyReport>, Failure> {
    let seed = seed.unwrap_or(0xACCE);
    let one = |s: Suite| -> Result<VerifyReport, quon::Error> {
        match s {
            Suite::WickVsRewrite => {
                verify_engine_equivalence(max_len.unwrap_or(6), &[1, 2, 3, 5], cases.unwrap_or(200), 8, seed)
            }
            Suite::PiEqualsC => verify_pi_equals_c(max_len.unwrap_or(10)),
            Suite::FockRelations => Ok(verify_relations_grid()),
            Suite::Specialization => verify_specialization(max_len.unwrap_or(6), &[1, 2, 3]),
            Suite::All => unreachable!("expanded by the caller"),
        }
    };
    let suites = match suite {
        Suite::All => vec![
            Suite::WickVsRewrite,
            Suite::PiEqualsC,
            Suite::FockRelations,
            Suite::Specialization,
        ],
        s => vec![s],
    };
    suites
        .into_iter()
        .map(|s| one(s).map_err(Failure::from))
        .collect()
}

fn run_count(
    what: What,
    n: Option<usize>,
    pattern: Option<String>,
    k: Option<usize>,
) -> Result<usize, Failure> {
    let need_n = |n: Option<usize>| {
        n.ok_or_else(|| Failure::usage("this count needs --n (the number of pairs)"))
    };
    match what {
        What::Pp => Ok(enumerate_pair_partitions(need_n(n)?)?.len()),
        What::Ncpp => Ok(enumerate_noncrossing(need_n(n)?)?.len()),
        What::Patterns => Ok(enumerate_balanced_patterns(need_n(n)?)?.len()),
        What::Feynman => {
            let text = pattern
                .ok_or_else(|| Failure::usage("count --what feynman needs --pattern, e.g. \"-++\""))?;
            let signs: Vec<i8> = text
                .chars()
                .map(|c| match c {
                    '-' => Ok(-1),
                    '+' => Ok(1),
                    other => Err(Failure::usage(format!(
                        "pattern may contain only '+' and '-', found {other:?}"
                    ))),
                })
                .collect::<Result<_, _>>()?;
            let pattern = SignPattern::new(signs)?;
            let max_k = pattern
                .annihilator_positions()
                .len()
                .min(pattern.creator_positions().len());
            let degrees: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (0..=max_k).collect(),
            };
            Ok(degrees
                .into_iter()
                .map(|k| enumerate_feynman(&pattern, k).len())
                .sum())
        }
    }
}

enum QValue {
    Exact(BigRational),
    Float(f64),
}

fn parse_q(text: &str) -> Result<QValue, Failure> {
    let bad = || Failure::usage(format!("--q {text:?} is neither a rational p/q nor a decimal"));
    if text.contains('.') {
        Ok(QValue::Float(text.parse().map_err(|_| bad())?))
    } else {
        // "p/q" or a bare integer: exact arithmetic either way.
        let q: BigRational = text.parse().map_err(|_| bad())?;
        Ok(QValue::Exact(q))
    }
}

fn print_normal_form(nf: &NormalForm, w: &Word, format: Format) {
    let labels = w.core_labels();
    match format {
        Format::Plain => println!("{}", emit::plain(nf, &labels)),
        Format::Latex => println!("{}", emit::latex(nf, &labels)),
        Format::Json => println!("{}", nf.to_json()),
    }
}

fn print_vacuum(
    v: &quon::symbolic::VacuumExpectation,
    w: &Word,
    at: Option<&QValue>,
) {
    let labels = w.core_labels();
    let mut lines = 0usize;
    for (pairings, poly) in v.terms() {
        let product = emit::pairing_product(pairings, &labels);
        let value = match at {
            None => emit::polynomial(poly),
            Some(QValue::Exact(q)) => {
                let mut acc = BigRational::from_integer(0.into());
                for (&exp, &coeff) in poly {
                    let mut power = BigRational::from_integer(1.into());
                    for _ in 0..exp {
                        power *= q;
                    }
                    acc += BigRational::from_integer(coeff.into()) * power;
                }
                acc.to_string()
            }
            Some(QValue::Float(q)) => {
                let acc: f64 = poly
                    .iter()
                    .map(|(&exp, &coeff)| coeff as f64 * q.powi(exp as i32))
                    .sum();
                acc.to_string()
            }
        };
        if product.is_empty() {
            println!("{value}");
        } else {
            println!("{product}: {value}");
        }
        lines += 1;
    }
    if lines == 0 {
        println!("0");
    }
}
