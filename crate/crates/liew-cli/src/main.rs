//! liew: exact computations with formal vector fields, wreath brackets,
//! and split-extension embeddings, driven by JSON inputs.
//!
//! Exit codes: 0 when a computation succeeds or a check passes, 1 when a
//! mathematical check fails (a witness is printed), 2 when the input is
//! unusable. Standard output is byte-deterministic for a fixed argv and
//! seed; timing goes to standard error.

mod io;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use liew_core::action::pointwise_bracket;
use liew_core::derive::bracket_s;
use liew_core::extension::EmbeddingReport;
use liew_core::fundamental::{fundamental_action, TCoeffTable};
use liew_core::scalar::format_rational;
use liew_core::suite::SuiteReport;
use liew_core::suites::run_suite;
use liew_core::{Error, Jet, Result, WreathAlgebra, WreathElement};

use report::CommandReport;

#[derive(Parser)]
#[command(name = "liew", version, about = "Exact wreath product and embedding computations over Q")]
struct Cli {
    /// Emit the full report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a Lie algebra JSON file (antisymmetry and Jacobi).
    CheckLie { file: PathBuf },
    /// Print the canonical series coefficients t_0 .. t_N.
    Tcoeffs {
        #[arg(long)]
        order: usize,
    },
    /// The field the canonical action assigns to an element.
    Fundamental {
        /// Lie algebra JSON file for the acting algebra.
        lie: PathBuf,
        /// Basis label or comma-separated coordinates.
        #[arg(long)]
        elem: String,
        #[arg(long)]
        order: i64,
    },
    /// Bracket two jets from files: vector fields by default, algebra
    /// valued pointwise with --pointwise.
    SeriesBracket {
        /// Coefficient Lie algebra JSON file (pointwise bracket only).
        lie: Option<PathBuf>,
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        #[arg(long)]
        pointwise: bool,
    },
    /// Bracket two wreath product elements from files.
    WreathBracket {
        lie_a: PathBuf,
        lie_b: PathBuf,
        #[arg(long)]
        order: i64,
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        /// Action of B on its series space; default is the canonical one.
        #[arg(long)]
        action: Option<PathBuf>,
    },
    /// The vector field on X x Y attached to a wreath element by an
    /// action of A on X.
    Triangular {
        /// Action JSON file for A on the extra space X.
        action: PathBuf,
        lie_a: PathBuf,
        lie_b: PathBuf,
        /// Wreath element JSON file.
        #[arg(long)]
        elem: PathBuf,
        #[arg(long)]
        order: i64,
    },
    /// Embed an element of a split extension into the wreath product.
    KkEmbed {
        ext: PathBuf,
        /// Basis label or comma-separated coordinates in C.
        #[arg(long)]
        elem: Option<String>,
        #[arg(long)]
        order: i64,
        /// Re-check bracket preservation and injectivity instead.
        #[arg(long)]
        verify: bool,
    },
    /// Run a randomized verification suite.
    Verify {
        /// jacobi, identities, fundamental, wreath, embedding, or all.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 6)]
        order: i64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Depth bound for the coefficient identity families.
        #[arg(long, default_value_t = 12)]
        max_m: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli);
    let elapsed = start.elapsed().as_millis();
    let report = match outcome {
        Ok(report) => report,
        Err(e) if e.is_math_defect() => CommandReport::fail(
            serde_json::json!({ "witnesses": [e.to_string()] }),
            format!("fail: {e}"),
        ),
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("liew: {elapsed} ms");
            return ExitCode::from(2);
        }
    };
    report.emit(cli.json);
    eprintln!("liew: {elapsed} ms");
    ExitCode::from(report.exit_code())
}

fn run(cli: &Cli) -> Result<CommandReport> {
    match &cli.command {
        Command::CheckLie { file } => check_lie(file),
        Command::Tcoeffs { order } => tcoeffs(*order),
        Command::Fundamental { lie, elem, order } => fundamental(lie, elem, *order),
        Command::SeriesBracket { lie, lhs, rhs, pointwise } => {
            series_bracket(lie.as_deref(), lhs, rhs, *pointwise)
        }
        Command::WreathBracket { lie_a, lie_b, order, lhs, rhs, action } => {
            wreath_bracket(lie_a, lie_b, *order, lhs, rhs, action.as_deref())
        }
        Command::Triangular { action, lie_a, lie_b, elem, order } => {
            triangular(action, lie_a, lie_b, elem, *order)
        }
        Command::KkEmbed { ext, elem, order, verify } => {
            kk_embed(ext, elem.as_deref(), *order, *verify)
        }
        Command::Verify { suite, order, seed, max_m } => verify(suite, *order, *seed, *max_m),
    }
}

fn jet_report(jet: &Jet) -> CommandReport {
    let payload = serde_json::to_value(jet).expect("jets serialize");
    let text = jet.pretty();
    CommandReport::computed(payload, text)
}

fn element_report(elt: &WreathElement) -> CommandReport {
    CommandReport::computed(elt.to_json(), elt.pretty())
}

fn check_lie(file: &std::path::Path) -> Result<CommandReport> {
    let algebra = io::load_lie(file)?;
    let name = algebra.space.name.clone();
    let dim = algebra.dim();
    let payload = serde_json::json!({
        "name": name,
        "dim": dim,
        "nilpotency_bound": algebra.nilpotency_bound(),
    });
    Ok(CommandReport::pass(payload, format!("pass: {name} is a Lie algebra (dim {dim})")))
}

fn tcoeffs(order: usize) -> Result<CommandReport> {
    let table = TCoeffTable::new(order);
    let rendered: Vec<String> = table.values().iter().map(format_rational).collect();
    let payload = serde_json::to_value(&rendered).expect("strings serialize");
    Ok(CommandReport::computed(payload, rendered.join(", ")))
}

fn fundamental(lie: &std::path::Path, elem: &str, order: i64) -> Result<CommandReport> {
    let algebra = io::load_lie(lie)?;
    let v = io::parse_element(&algebra.space, elem)?;
    let action = fundamental_action(&algebra, order)?;
    Ok(jet_report(&action.image_of(&v)?))
}

fn series_bracket(
    lie: Option<&std::path::Path>,
    lhs: &std::path::Path,
    rhs: &std::path::Path,
    pointwise: bool,
) -> Result<CommandReport> {
    let f = io::load_jet(lhs)?;
    let g = io::load_jet(rhs)?;
    let out = match (pointwise, lie) {
        (true, Some(path)) => pointwise_bracket(&io::load_lie(path)?, &f, &g)?,
        (true, None) => {
            return Err(Error::invalid(
                "series-bracket",
                "--pointwise needs the coefficient Lie algebra as a positional argument",
            ))
        }
        (false, Some(_)) => {
            return Err(Error::invalid(
                "series-bracket",
                "a coefficient Lie algebra is only used with --pointwise",
            ))
        }
        (false, None) => bracket_s(&f, &g)?,
    };
    Ok(jet_report(&out))
}

fn build_wreath(
    lie_a: &std::path::Path,
    lie_b: &std::path::Path,
    order: i64,
    action: Option<&std::path::Path>,
) -> Result<WreathAlgebra> {
    let a = io::load_lie(lie_a)?;
    let b = io::load_lie(lie_b)?;
    match action {
        None => WreathAlgebra::fundamental(a, b, order),
        Some(path) => {
            let d = io::load_action(path)?;
            if d.order != order {
                return Err(Error::invalid(
                    "wreath action",
                    format!("the action file is truncated at order {}, not {order}", d.order),
                ));
            }
            WreathAlgebra::with_action(a, b, d)
        }
    }
}

fn wreath_bracket(
    lie_a: &std::path::Path,
    lie_b: &std::path::Path,
    order: i64,
    lhs: &std::path::Path,
    rhs: &std::path::Path,
    action: Option<&std::path::Path>,
) -> Result<CommandReport> {
    let w = build_wreath(lie_a, lie_b, order, action)?;
    let u = io::load_wreath_element(lhs, &w)?;
    let v = io::load_wreath_element(rhs, &w)?;
    Ok(element_report(&w.bracket(&u, &v)?))
}

fn triangular(
    action: &std::path::Path,
    lie_a: &std::path::Path,
    lie_b: &std::path::Path,
    elem: &std::path::Path,
    order: i64,
) -> Result<CommandReport> {
    let x_action = io::load_action(action)?;
    let w = build_wreath(lie_a, lie_b, order, None)?;
    let u = io::load_wreath_element(elem, &w)?;
    Ok(jet_report(&w.triangular_field(&x_action, &u)?))
}

fn embedding_text(report: &EmbeddingReport) -> String {
    let mut out = format!(
        "{}: embedding at order {}, basis pairs: {}, injective: {}\n",
        if report.pass() { "pass" } else { "fail" },
        report.order,
        report.pairs,
        if report.injective { "yes" } else { "no" },
    );
    for failure in &report.failures {
        out.push_str(&format!("{}: {}\n", failure.cell, failure.witness));
    }
    out
}

fn kk_embed(
    ext_path: &std::path::Path,
    elem: Option<&str>,
    order: i64,
    verify: bool,
) -> Result<CommandReport> {
    let ext = io::load_extension(ext_path)?;
    if verify {
        let report = ext.verify_embedding(order)?;
        let payload = serde_json::to_value(&report).expect("reports serialize");
        let text = embedding_text(&report);
        return Ok(if report.pass() {
            CommandReport::pass(payload, text)
        } else {
            CommandReport::fail(payload, text)
        });
    }
    let Some(elem) = elem else {
        return Err(Error::invalid("kk-embed", "--elem is required unless --verify is given"));
    };
    let c = io::parse_element(&ext.c.space, elem)?;
    Ok(element_report(&ext.kk_embed(&c, order)?))
}

fn suites_text(reports: &[SuiteReport], pass: bool) -> String {
    let mut out = String::new();
    for report in reports {
        out.push_str(&format!(
            "suite {}: {} cells, {} failures\n",
            report.suite,
            report.cells,
            report.failures.len()
        ));
        for failure in &report.failures {
            out.push_str(&format!("{}: {}\n", failure.cell, failure.witness));
        }
    }
    out.push_str(if pass { "pass" } else { "fail" });
    out
}

fn verify(suite: &str, order: i64, seed: u64, max_m: u32) -> Result<CommandReport> {
    let reports = run_suite(suite, order, seed, max_m)?;
    let pass = reports.iter().all(SuiteReport::pass);
    let payload = serde_json::to_value(&reports).expect("reports serialize");
    let text = suites_text(&reports, pass);
    Ok(if pass {
        CommandReport::pass(payload, text)
    } else {
        CommandReport::fail(payload, text)
    })
}
