use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use catsl2_core::bimodules::{graded_rank, ShiftConvention};
use catsl2_core::diagramlang::{compile_diagram, parse_diagram, parse_element};
use catsl2_core::exactpoly::{Homogeneity, LaurentPoly};
use catsl2_core::grassrings::{bubble_value, special_class, Family, GrassContext, Orientation};
use catsl2_core::relationsuite::{run_suite, Suite, SuiteOptions, DEFAULT_MAX_N};
use catsl2_core::twomorphisms::{compile_word, MeasuredDegree, SignedWord};

#[derive(Parser)]
#[command(name = "catsl2", version, about = "Equivariant flag-variety bimodules for categorified sl(2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Orient {
    Cw,
    Ccw,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "X")]
    X,
    #[value(name = "Y")]
    Y,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    TheoremProof,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Run the relation suite.
    Verify {
        #[arg(long = "N", env = "CATSL2_N")]
        n: i64,
        /// Comma-separated suite names; all suites when omitted.
        #[arg(long, value_delimiter = ',')]
        suites: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = SuiteOptions::default().seed)]
        seed: u64,
    },
    /// Evaluate a diagram file on a bimodule element.
    Eval {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        element: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Value of a dotted bubble by its degree parameter.
    Bubble {
        #[arg(long = "N", env = "CATSL2_N")]
        n: i64,
        #[arg(long)]
        k: i64,
        #[arg(long, value_enum)]
        orient: Orient,
        #[arg(long, allow_negative_numbers = true)]
        alpha: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// A special class X or Y.
    Special {
        #[arg(long = "N", env = "CATSL2_N")]
        n: i64,
        #[arg(long)]
        k: i64,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, allow_negative_numbers = true)]
        alpha: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Graded rank of the bimodule of a word.
    Rank {
        #[arg(long = "N", env = "CATSL2_N")]
        n: i64,
        /// Letters E and F, leftmost acting last.
        #[arg(long)]
        word: String,
        #[arg(long, allow_negative_numbers = true)]
        weight: i64,
        #[arg(long, value_enum, default_value = "theorem-proof")]
        convention: Convention,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Bad input; reported on stderr with exit code 2.
struct InputError(String);

type Outcome = Result<ExitCode, InputError>;

fn input<E: std::fmt::Display>(e: E) -> InputError {
    InputError(e.to_string())
}

fn context(n: i64, k: i64) -> Result<GrassContext, InputError> {
    if n < 1 {
        return Err(InputError(format!("N must be positive, got {n}")));
    }
    GrassContext::new(n, k).map_err(input)
}

fn emit(format: Format, text: String, value: serde_json::Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
    }
}

fn verify(n: i64, suites: &[String], format: Format, seed: u64) -> Outcome {
    let selected: Vec<Suite> = if suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        suites.iter().map(|s| s.parse::<Suite>()).collect::<Result<_, _>>().map_err(InputError)?
    };
    let options = SuiteOptions { seed, ..SuiteOptions::default() };
    let report = run_suite(n, &selected, options).map_err(input)?;
    match format {
        Format::Text => print!("{}", report.to_table()),
        Format::Json => println!("{}", report.to_json()),
    }
    Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn degree_text(h: Homogeneity) -> String {
    match h {
        Homogeneity::AnyDegree => "any (zero)".into(),
        Homogeneity::Degree(d) => d.to_string(),
        Homogeneity::Inhomogeneous => "inhomogeneous".into(),
    }
}

fn eval(path: &PathBuf, element: &str, format: Format) -> Outcome {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let ast = parse_diagram(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let compiled = compile_diagram(&ast).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    for w in &compiled.warnings {
        eprintln!("warning: {w}");
    }
    let map = &compiled.map;
    let e = parse_element(element, map.domain()).map_err(|e| InputError(format!("element: {e}")))?;
    let image = map.apply(&e).map_err(input)?;
    let measured = match map.measured_degree().map_err(input)? {
        MeasuredDegree::Degree(d) => d.to_string(),
        MeasuredDegree::ZeroMap => "zero map".into(),
        MeasuredDegree::Inhomogeneous(s) => format!("inhomogeneous ({s})"),
    };
    let (din, dout) = (degree_text(e.degree()), degree_text(image.degree()));
    let text = format!(
        "{image}\ndomain {} -> codomain {}\ndegree: element {din}, image {dout}, map {measured}, generators {}",
        map.domain(),
        map.codomain(),
        compiled.table_degree
    );
    let value = json!({
        "image": image.to_string(),
        "domain": map.domain().to_string(),
        "codomain": map.codomain().to_string(),
        "element_degree": din,
        "image_degree": dout,
        "map_degree": measured,
        "table_degree": compiled.table_degree,
        "warnings": compiled.warnings,
    });
    emit(format, text, value);
    Ok(ExitCode::SUCCESS)
}

fn rank(n: i64, word: &str, weight: i64, convention: Convention, format: Format) -> Outcome {
    if n < 1 {
        return Err(InputError(format!("N must be positive, got {n}")));
    }
    if let Some(c) = word.chars().find(|c| !matches!(c, 'E' | 'F') && !c.is_whitespace()) {
        return Err(InputError(format!("unexpected letter `{c}` in word (use E and F)")));
    }
    if weight.abs() > n {
        return Err(InputError(format!("weight {weight} is outside -{n}..={n}")));
    }
    let convention = match convention {
        Convention::TheoremProof => ShiftConvention::TheoremProof,
        Convention::Table => ShiftConvention::Table,
    };
    let path = compile_word(&SignedWord::new(word, weight), n as u32, convention).map_err(input)?;
    let r = if path.is_zero() { LaurentPoly::zero() } else { graded_rank(&path) };
    emit(format, r.to_string(), json!({ "path": path.to_string(), "rank": r.to_string(), "zero": path.is_zero() }));
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify { n, suites, format, seed } => {
            if n < 1 || n > DEFAULT_MAX_N as i64 {
                return Err(InputError(format!("N must be between 1 and {DEFAULT_MAX_N}, got {n}")));
            }
            verify(n, &suites, format, seed)
        }
        Command::Eval { diagram, element, format } => eval(&diagram, &element, format),
        Command::Bubble { n, k, orient, alpha, format } => {
            let ctx = context(n, k)?;
            let o = match orient {
                Orient::Cw => Orientation::Clockwise,
                Orient::Ccw => Orientation::Counterclockwise,
            };
            let v = bubble_value(ctx, o, alpha);
            emit(format, v.to_string(), json!({ "value": v.to_string() }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Special { n, k, family, alpha, format } => {
            let ctx = context(n, k)?;
            let f = match family {
                FamilyArg::X => Family::X,
                FamilyArg::Y => Family::Y,
            };
            let v = special_class(ctx, f, alpha);
            emit(format, v.to_string(), json!({ "value": v.to_string() }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Rank { n, word, weight, convention, format } => rank(n, &word, weight, convention, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
