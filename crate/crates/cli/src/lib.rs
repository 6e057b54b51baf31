//! Command-line front end.
//!
//! Output grammar, one item per line:
//!
//! ```text
//! vector   := "0" | (class "\t" coeff)+        classes in canonical order
//! class    := "∅" | "(" a "," b ")" | "core^" n | "match[" pairs "]"
//! coeff    := rational | laurent
//! rational := int | int "/" int                  lowest terms
//! laurent  := "0" | term (" + " term)*           term := rational "*t^" int
//! poly     := "0" | mono (" + " mono)*           mono := rational ["*z[^n]"] ["*w[^n]"]
//! ```
//!
//! `expand` prints `order k`, then `state sum` and `operators` each followed
//! by a vector, then `EQUAL` or `DIFFER`. `star` prints `lambda_k` headers
//! each followed by a vector. `poly` prints `P_k = poly` lines. `verify`
//! prints one report line per check group and a closing `passed`/`failed`
//! count.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use skeindef::corpus::CorpusSpec;
use skeindef::diagram::io::{read_diagram, render_diagram};
use skeindef::diagram::{from_braid, kink_chain, torus_multicurve, MarkedDiagram};
use skeindef::exactalg::phi_coeff;
use skeindef::starprod::star;
use skeindef::statesum::{bracket_series, bracket_with, expansion_series, install_table, DeformationPolyTable};
use skeindef::surface::{normalize_torus_class, CurveClass, SurfaceSpec};
use skeindef::verify::{self, Config, SUITES};
use skeindef::{Error, Exec};

pub const TABLE_ENV: &str = "SKEINDEF_POLY_TABLE";
pub const DEFAULT_TABLE: &str = "skeindef_polys.json";

#[derive(Parser, Debug)]
#[command(name = "skeindef", version, about = "Exact Kauffman bracket state sums and their deformation expansion")]
pub struct Cli {
    /// Evaluate state sums on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the bracket of a diagram file as Laurent polynomials in t.
    Bracket { file: PathBuf },
    /// Compare the h^k coefficient of the bracket with the operator expansion.
    Expand {
        file: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Print lambda_0 .. lambda_K of the stacking product.
    Star {
        #[arg(long, value_enum, default_value_t = SurfaceArg::Torus)]
        surface: SurfaceArg,
        /// `p,q` on the torus, a core count on the annulus.
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Print the deformation polynomials P_0 .. P_k, extending the cached table.
    Poly {
        #[arg(long)]
        k: usize,
        /// Table file; defaults to $SKEINDEF_POLY_TABLE, then ./skeindef_polys.json.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Print the h^(2j) coefficient of (-t^2 - t^-2)^i.
    Phi {
        #[arg(long)]
        j: usize,
        #[arg(long)]
        i: usize,
    },
    /// Write a generated diagram as JSON.
    Gen(GenArgs),
    /// Run verification suites.
    Verify {
        /// One of main-theorem, phi, poly, skein-relation, axioms, invariance, star, differentiability.
        suite: Option<String>,
        /// Highest order compared by the main theorem.
        #[arg(long, default_value_t = 5)]
        max_order: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Use a reduced corpus.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SurfaceArg {
    Torus,
    Annulus,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
    /// Output file; stdout when absent.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// Annulus closure of a braid word such as `1,-2,1`.
    Braid {
        #[arg(long)]
        strands: u32,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        word: String,
    },
    /// `n` parallel copies of a torus class, optionally stacked over `m` copies of another.
    Torus {
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long, default_value_t = 1)]
        copies: u32,
        #[arg(long, allow_hyphen_values = true)]
        over: Option<String>,
        #[arg(long, default_value_t = 1)]
        over_copies: u32,
    },
    /// A chain of curls on the annulus core.
    Kink {
        #[arg(long)]
        count: u32,
    },
}

/// Exit status: 0 success, 1 an identity differs, 2 malformed input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Differ = 1,
    Malformed = 2,
}

fn status_of(e: &Error) -> Status {
    match e {
        Error::TheoremViolation(_) | Error::SingularSystem(_) => Status::Differ,
        _ => Status::Malformed,
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::MalformedDiagram(msg.into())
}

fn parse_pair(s: &str) -> skeindef::Result<(i64, i64)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok((a.parse().map_err(|_| bad(format!("bad integer {a}")))?, b.parse().map_err(|_| bad(format!("bad integer {b}")))?)),
        _ => Err(bad(format!("expected p,q but got {s}"))),
    }
}

fn parse_word(s: &str) -> skeindef::Result<Vec<i32>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| bad(format!("bad generator {x}"))))
        .collect()
}

fn parse_class(surface: SurfaceSpec, s: &str) -> skeindef::Result<CurveClass> {
    match surface {
        SurfaceSpec::Torus => {
            let (p, q) = parse_pair(s)?;
            Ok(normalize_torus_class(p, q))
        }
        _ => Ok(CurveClass::core(s.trim().parse().map_err(|_| bad(format!("bad core count {s}")))?)),
    }
}

fn table_path(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(TABLE_ENV).map(PathBuf::from)).unwrap_or_else(|| PathBuf::from(DEFAULT_TABLE))
}

fn generate(args: &GenKind) -> skeindef::Result<MarkedDiagram> {
    match args {
        GenKind::Braid { strands, word } => from_braid(*strands, &parse_word(word)?),
        GenKind::Kink { count } => Ok(kink_chain(*count)),
        GenKind::Torus { class, copies, over, over_copies } => {
            let (p, q) = parse_pair(class)?;
            let top = torus_multicurve(*copies, p, q)?;
            match over {
                None => Ok(top),
                Some(o) => {
                    let (r, s) = parse_pair(o)?;
                    let bottom = torus_multicurve(*over_copies, r, s)?;
                    skeindef::diagram::superpose(&top, &bottom, skeindef::diagram::ProductMode::Strong)
                }
            }
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> skeindef::Result<Status> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match cli.command {
        Command::Bracket { file } => {
            write!(out, "{}", bracket_with(&read_diagram(&file)?, exec)?)?;
        }
        Command::Expand { file, order } => {
            let d = read_diagram(&file)?;
            let oracle = bracket_series(&d, order)?.map_coeffs(|s| s.coeff(order).clone());
            let formula = expansion_series(&d, order, exec)?.pop().expect("orders 0..=k");
            writeln!(out, "order {order}")?;
            write!(out, "state sum\n{oracle}operators\n{formula}")?;
            let equal = oracle == formula;
            writeln!(out, "{}", if equal { "EQUAL" } else { "DIFFER" })?;
            if !equal {
                return Ok(Status::Differ);
            }
        }
        Command::Star { surface, alpha, beta, order } => {
            let surface = match surface {
                SurfaceArg::Torus => SurfaceSpec::Torus,
                SurfaceArg::Annulus => SurfaceSpec::Annulus,
            };
            let s = star(surface, &parse_class(surface, &alpha)?, &parse_class(surface, &beta)?, order)?;
            write!(out, "{s}")?;
        }
        Command::Poly { k, table } => {
            let path = table_path(table);
            let mut t = DeformationPolyTable::load(&path)?;
            t.validate()?;
            t.extend_to(k)?;
            t.save(&path)?;
            install_table(&t)?;
            for j in 0..=k {
                writeln!(out, "P_{j} = {}", t.get(j).expect("table extended"))?;
            }
        }
        Command::Phi { j, i } => writeln!(out, "{}", phi_coeff(j, i))?,
        Command::Gen(args) => {
            let text = render_diagram(&generate(&args.kind)?);
            match args.output {
                Some(path) => std::fs::write(path, text + "\n")?,
                None => writeln!(out, "{text}")?,
            }
        }
        Command::Verify { suite, max_order, seed, quick } => {
            let corpus = if quick { CorpusSpec::small() } else { CorpusSpec::default() };
            let cfg = Config { corpus, max_order, seed, exec };
            let names: Vec<&str> = match &suite {
                Some(s) if SUITES.contains(&s.as_str()) => vec![s.as_str()],
                Some(s) => return Err(Error::UnknownSuite(s.clone())),
                None => SUITES.to_vec(),
            };
            let (mut passed, mut total) = (0, 0);
            for name in names {
                for r in verify::run_suite(name, &cfg)? {
                    total += 1;
                    if r.passed() {
                        passed += 1;
                    }
                    writeln!(out, "{r}")?;
                }
            }
            writeln!(out, "{passed} passed, {} failed", total - passed)?;
            if passed != total {
                return Ok(Status::Differ);
            }
        }
    }
    Ok(Status::Ok)
}

/// Parses `argv` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> Status
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { Status::Malformed } else { Status::Ok };
        }
    };
    match execute(cli, out) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            status_of(&e)
        }
    }
}
