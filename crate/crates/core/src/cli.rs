//! Command-line front end. `run` is the whole program minus process exit.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::analysis::{bounds, catalogue, cross_validate, default_degree_bound, reversibility_status};
use crate::bridge::{Algebraic, Conclusion, NetIdeal, ReversibilityStatus};
use crate::format::{emit, parse_marking, parse_net, LoadedNet, MarkingValue, NetBody, NetDocument};
use crate::net::{explore, is_reversible, ExploreLimits, Reversibility};
use crate::poly::MonomialOrder;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "petrigb", version, about = "Petri net reachability via Gröbner bases")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Monomial order; overrides the file's `order:` line (default deglex)
    #[arg(long, global = true)]
    pub order: Option<MonomialOrder>,

    /// Stop state-space exploration after this many markings
    #[arg(long, global = true, default_value_t = ExploreLimits::default().max_states)]
    pub max_states: usize,

    /// Do not explore markings holding more tokens than this
    #[arg(long, global = true, default_value_t = ExploreLimits::default().max_tokens)]
    pub max_tokens: u64,

    /// Treat the net as reversible without exploring it
    #[arg(long, global = true)]
    pub assume_reversible: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the reduced Gröbner basis, one binomial per line
    Gb { file: PathBuf },
    /// Decide whether a marking is reachable from the initial marking
    Reach { file: PathBuf, marking: String },
    /// List markings equivalent to the initial marking, ascending
    Catalogue {
        file: PathBuf,
        #[arg(long)]
        degree: Option<u64>,
        /// Start marking instead of the file's `init:`
        #[arg(long)]
        from: Option<String>,
    },
    /// Explore the state space and test reversibility
    CheckReversible { file: PathBuf },
    /// Token conservation and minimum token count
    Bounds { file: PathBuf },
    /// Print the plain net behind a coloured net
    Unfold { file: PathBuf },
    /// Check the net for structural problems
    Validate { file: PathBuf },
    /// Compare the catalogue against explicit exploration
    CrossValidate {
        file: PathBuf,
        #[arg(long)]
        degree: Option<u64>,
    },
}

impl Command {
    fn file(&self) -> &PathBuf {
        match self {
            Command::Gb { file }
            | Command::Reach { file, .. }
            | Command::Catalogue { file, .. }
            | Command::CheckReversible { file }
            | Command::Bounds { file }
            | Command::Unfold { file }
            | Command::Validate { file }
            | Command::CrossValidate { file, .. } => file,
        }
    }
}

/// A report with its exit code, or an input error message.
type Outcome = Result<(String, i32), String>;

pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stderr) {
        Ok((report, code)) => {
            let _ = stdout.write_all(report.as_bytes());
            code
        }
        Err(message) => {
            let _ = writeln!(stderr, "error: {message}");
            EXIT_INPUT
        }
    }
}

fn execute(cli: &Cli, stderr: &mut dyn Write) -> Outcome {
    let path = cli.command.file();
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let doc = parse_net(&text).map_err(|e| format!("{}:{e}", path.display()))?;

    if let Command::Validate { .. } = cli.command {
        return Ok(validate(&doc));
    }
    if let Command::Unfold { .. } = cli.command {
        return unfold(&doc);
    }

    let loaded = doc.load().map_err(|e| e.to_string())?;
    let order = cli.order.or(doc.order).unwrap_or_default();
    match &loaded {
        LoadedNet::Plain { net, initial } => {
            let ideal = ideal_for(net, order, &doc)?;
            let target = |s: &str| match parse_marking(&loaded, s) {
                Ok(MarkingValue::Plain(m)) => Ok(m),
                Ok(_) => unreachable!(),
                Err(e) => Err(format!("marking `{s}`: {}", e.message)),
            };
            analyse(cli, &doc, net, initial, &ideal, target, stderr)
        }
        LoadedNet::Coloured { net, initial } => {
            let ideal = ideal_for(net, order, &doc)?;
            let target = |s: &str| match parse_marking(&loaded, s) {
                Ok(MarkingValue::Coloured(m)) => Ok(m),
                Ok(_) => unreachable!(),
                Err(e) => Err(format!("marking `{s}`: {}", e.message)),
            };
            analyse(cli, &doc, net, initial, &ideal, target, stderr)
        }
    }
}

fn ideal_for<N: Algebraic>(net: &N, order: MonomialOrder, doc: &NetDocument) -> Result<NetIdeal, String> {
    match &doc.vars {
        Some(seq) => NetIdeal::with_sequence(net, order, seq).map_err(|e| e.to_string()),
        None => Ok(NetIdeal::build(net, order)),
    }
}

fn analyse<N: Algebraic>(
    cli: &Cli,
    doc: &NetDocument,
    net: &N,
    initial: &N::Marking,
    ideal: &NetIdeal,
    parse_target: impl Fn(&str) -> Result<N::Marking, String>,
    stderr: &mut dyn Write,
) -> Outcome {
    let limits = ExploreLimits {
        max_states: cli.max_states,
        max_tokens: cli.max_tokens,
    };
    let mut out = String::new();
    match &cli.command {
        Command::Gb { .. } => {
            for g in ideal.basis().elements() {
                let _ = writeln!(out, "{}", g.render(ideal.table()));
            }
            Ok((out, EXIT_OK))
        }
        Command::Reach { marking, .. } => {
            let target = parse_target(marking)?;
            let m0 = ideal.monomial(net, initial);
            let mt = ideal.monomial(net, &target);
            let assumed = cli.assume_reversible || doc.reversible == Some(true);
            let mut verdict = ideal.decide(&m0, &mt, ReversibilityStatus::NotVerified);
            if verdict.conclusion == Conclusion::Unreachable {
                let _ = writeln!(out, "UNREACHABLE: {}", verdict.note);
                return Ok((out, EXIT_REFUTED));
            }
            if assumed {
                verdict = ideal.decide(&m0, &mt, ReversibilityStatus::Verified);
                let _ = writeln!(out, "REACHABLE: {} (reversibility assumed)", verdict.note);
                return Ok((out, EXIT_OK));
            }
            let graph = explore(net, initial, limits);
            let status = reversibility_status(&is_reversible(&graph));
            let nf = ideal.render(&verdict.target_normal_form);
            if graph.contains(&target) {
                let _ = writeln!(out, "REACHABLE: found by exploration; normal form {nf}");
                Ok((out, EXIT_OK))
            } else if !graph.truncated() {
                let _ = writeln!(
                    out,
                    "UNREACHABLE: equivalent (normal form {nf}) but absent from the complete state space"
                );
                Ok((out, EXIT_REFUTED))
            } else {
                verdict = ideal.decide(&m0, &mt, status);
                let _ = writeln!(out, "UNDECIDED: {}", verdict.note);
                Ok((out, EXIT_OK))
            }
        }
        Command::Catalogue { degree, from, .. } => {
            let start = match from {
                Some(s) => parse_target(s)?,
                None => initial.clone(),
            };
            let m0 = ideal.monomial(net, &start);
            let bound = degree.unwrap_or_else(|| default_degree_bound(ideal, &m0));
            let cat = catalogue(ideal, &m0, bound);
            for d in &cat.diagnostics {
                let _ = writeln!(stderr, "warning: {d}");
            }
            for e in &cat.entries {
                let _ = writeln!(out, "{}", ideal.render(e));
            }
            Ok((out, EXIT_OK))
        }
        Command::CheckReversible { .. } => {
            let graph = explore(net, initial, limits);
            let size = format!("{} markings, {} edges", graph.len(), graph.edges().len());
            match is_reversible(&graph) {
                Reversibility::Reversible => {
                    let _ = writeln!(out, "REVERSIBLE: {size}");
                    Ok((out, EXIT_OK))
                }
                Reversibility::NotReversible { witness } => {
                    let _ = writeln!(
                        out,
                        "NOT REVERSIBLE: {size}; witness {}",
                        ideal.render(&ideal.monomial(net, &witness))
                    );
                    Ok((out, EXIT_REFUTED))
                }
                Reversibility::Unknown => {
                    let _ = writeln!(out, "UNKNOWN: exploration truncated at {size}");
                    Ok((out, EXIT_OK))
                }
            }
        }
        Command::Bounds { .. } => {
            let m0 = ideal.monomial(net, initial);
            Ok((bounds(ideal, &m0).render(), EXIT_OK))
        }
        Command::CrossValidate { degree, .. } => {
            let m0 = ideal.monomial(net, initial);
            let bound = degree.unwrap_or_else(|| default_degree_bound(ideal, &m0));
            let report = cross_validate(net, ideal, initial, bound, limits);
            let list = |ms: &[crate::poly::Monomial]| {
                if ms.is_empty() {
                    "-".to_string()
                } else {
                    ms.iter().map(|m| ideal.render(m)).collect::<Vec<_>>().join(" ")
                }
            };
            let yes = |b: bool| if b { "yes" } else { "no" };
            let _ = writeln!(out, "degree bound: {bound}");
            let _ = writeln!(out, "catalogue: {} markings", report.catalogue.len());
            let _ = writeln!(
                out,
                "oracle: {} markings{}",
                report.oracle.len(),
                if report.oracle_truncated { " (truncated)" } else { "" }
            );
            let _ = writeln!(out, "reversibility: {}", report.reversibility);
            if let Some(w) = &report.reversibility_witness {
                let _ = writeln!(out, "witness: {}", ideal.render(w));
            }
            let _ = writeln!(out, "oracle within catalogue: {}", yes(report.oracle_in_catalogue()));
            let _ = writeln!(out, "catalogue within oracle: {}", yes(report.catalogue_in_oracle()));
            let _ = writeln!(out, "exactness required: {}", yes(report.exactness_required()));
            let _ = writeln!(out, "missing from catalogue: {}", list(&report.missing_from_catalogue));
            let _ = writeln!(out, "missing from oracle: {}", list(&report.missing_from_oracle));
            let passed = report.passed();
            let _ = writeln!(out, "result: {}", if passed { "PASS" } else { "FAIL" });
            Ok((out, if passed { EXIT_OK } else { EXIT_REFUTED }))
        }
        Command::Validate { .. } | Command::Unfold { .. } => unreachable!("handled before loading"),
    }
}

fn validate(doc: &NetDocument) -> (String, i32) {
    let mut out = String::new();
    let diagnostics = doc.validate();
    for d in &diagnostics {
        let _ = writeln!(out, "{d}");
    }
    let errors = diagnostics.iter().filter(|d| d.is_error()).count();
    let shape = match &doc.body {
        NetBody::Plain { places, transitions, .. } => {
            format!("{} places, {} transitions", places.len(), transitions.len())
        }
        NetBody::Coloured {
            colours,
            places,
            transitions,
            ..
        } => format!(
            "{} places, {} colours, {} transitions",
            places.len(),
            colours.len(),
            transitions.len()
        ),
    };
    if errors == 0 {
        if let Err(e) = doc.load() {
            let _ = writeln!(out, "error: {e}");
            return (out, EXIT_INPUT);
        }
        let _ = writeln!(out, "{}: {shape}, ok", doc.name);
        (out, EXIT_OK)
    } else {
        let _ = writeln!(out, "{}: {shape}, {errors} error(s)", doc.name);
        (out, EXIT_INPUT)
    }
}

fn unfold(doc: &NetDocument) -> Outcome {
    let loaded = doc.load().map_err(|e| e.to_string())?;
    let plain = match &loaded {
        LoadedNet::Plain { .. } => doc.clone(),
        LoadedNet::Coloured { net, initial } => {
            let u = net.unfold();
            let mut d = NetDocument::from_plain(&format!("{}_unfolded", doc.name), &u.net, &u.marking(initial));
            d.order = doc.order;
            d.vars = doc.vars.clone();
            d.reversible = doc.reversible;
            d
        }
    };
    Ok((emit(&plain), EXIT_OK))
}
