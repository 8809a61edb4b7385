use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use weldkit::analysis::{
    table_6crossings, triviality_verdict, warping_degree_diagram, warping_profile, welded_unknotting_bounds,
};
use weldkit::families::{
    bundled_catalog, catalog_load, torus_2q, torus_welded_one, torus_welded_two, twist, twist_welded_one,
    twist_welded_two, CatalogEntry,
};
use weldkit::gaussdiag::{CrossingLabel, Orientation, WeldedDiagram};
use weldkit::grouppres::{
    abelianization, alexander_polynomial, coloring_count, free_rank, tietze_simplify, wirtinger, Presentation,
};
use weldkit::moves::{is_descending, simplify};

const DEFAULT_BUDGET: usize = 1_000_000;

/// Welded knot diagrams: welding, moves, knot groups and certificates.
#[derive(Parser)]
#[command(name = "weldkit", version)]
struct Cli {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Search budget in states.
    #[arg(long, global = true, env = "WELDKIT_BUDGET")]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

/// A Gauss code given inline, as a file path, or `-` for standard input.
#[derive(Args)]
struct Input {
    diagram: String,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a Gauss code and describe it.
    Parse(Input),
    /// Print the canonical form.
    Canon(Input),
    /// Weld crossings and print the resulting code.
    Weld {
        diagram: String,
        /// Crossing labels, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        crossings: Vec<u32>,
    },
    /// Search for a reduction by welded moves.
    Simplify(Input),
    /// Find a descending basepoint.
    Descending(Input),
    /// Warping degrees for both orientations.
    Warping(Input),
    /// Decide triviality where a certificate exists.
    Verdict {
        diagram: String,
        /// Exit with status 2 when the verdict is Unknown.
        #[arg(long)]
        strict: bool,
    },
    /// Bounds on the welded unknotting number.
    Uw(Input),
    /// Knot group computations.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Generate family diagrams.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Reproduce weld tables.
    #[command(subcommand)]
    Table(TableCommand),
    /// Inspect the knot catalog.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Wirtinger presentation.
    Wirtinger(Input),
    /// Tietze-simplified Wirtinger presentation.
    Tietze(Input),
    /// Elementary divisors of the abelianization.
    Abelian(Input),
    /// Alexander polynomial.
    Alexander(Input),
    /// Fox coloring count modulo m.
    Colorings {
        diagram: String,
        #[arg(long)]
        m: u64,
    },
}

#[derive(Args)]
struct WeldChoice {
    #[arg(long)]
    n: u32,
    #[arg(long, conflicts_with = "weld_two")]
    weld_one: bool,
    #[arg(long)]
    weld_two: bool,
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// The torus knot K(2, 2n+1).
    Torus {
        #[command(flatten)]
        choice: WeldChoice,
        /// Crossings between the two welds, for --weld-two.
        #[arg(long, requires = "weld_two")]
        m1: Option<u32>,
    },
    /// The twist knot with n half twists.
    Twist {
        #[command(flatten)]
        choice: WeldChoice,
    },
}

#[derive(Args)]
struct CatalogPath {
    /// Catalog JSON file; the bundled catalog when omitted.
    #[arg(long)]
    catalog: Option<PathBuf>,
}

#[derive(Subcommand)]
enum TableCommand {
    /// Weld tables of 6_1, 6_2 and 6_3.
    Six {
        #[command(flatten)]
        catalog: CatalogPath,
        /// Weld counts, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        sizes: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Names of the catalog entries.
    List(CatalogPath),
    /// One catalog entry.
    Show {
        name: String,
        #[command(flatten)]
        catalog: CatalogPath,
    },
}

fn read_diagram(arg: &str) -> Result<WeldedDiagram> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    } else {
        arg.to_string()
    };
    Ok(WeldedDiagram::parse(text.trim())?)
}

fn load_catalog(p: &CatalogPath) -> Result<Vec<CatalogEntry>> {
    match &p.catalog {
        Some(path) => Ok(catalog_load(path)?),
        None => Ok(bundled_catalog()),
    }
}

fn orientation_name(o: Orientation) -> &'static str {
    match o {
        Orientation::Forward => "forward",
        Orientation::Reversed => "reversed",
    }
}

/// What a command prints: a text form and a JSON form.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Output {
        Output { text: text.into(), json, code: 0 }
    }
}

fn presentation_json(p: &Presentation) -> Value {
    json!({ "text": p.to_string(), "presentation": p })
}

fn op_name(c: &Command) -> &'static str {
    match c {
        Command::Parse(_) => "parse",
        Command::Canon(_) => "canon",
        Command::Weld { .. } => "weld",
        Command::Simplify(_) => "simplify",
        Command::Descending(_) => "descending",
        Command::Warping(_) => "warping",
        Command::Verdict { .. } => "verdict",
        Command::Uw(_) => "uw",
        Command::Group(_) => "group",
        Command::Family(_) => "family",
        Command::Table(_) => "table",
        Command::Catalog(_) => "catalog",
    }
}

fn run(cmd: &Command, budget: usize) -> Result<Output> {
    Ok(match cmd {
        Command::Parse(i) => {
            let d = read_diagram(&i.diagram)?;
            let text = format!("{} crossings, {} arcs\n{}", d.crossing_count(), d.arc_count(), d.serialize());
            Output::new(
                text,
                json!({ "crossings": d.crossing_count(), "arcs": d.arcs(), "canonical": d.serialize() }),
            )
        }
        Command::Canon(i) => {
            let s = read_diagram(&i.diagram)?.serialize();
            Output::new(s.clone(), json!({ "canonical": s }))
        }
        Command::Weld { diagram, crossings } => {
            let labels: Vec<CrossingLabel> = crossings.iter().map(|&k| CrossingLabel(k)).collect();
            let w = read_diagram(diagram)?.weld_set(&labels)?;
            Output::new(w.to_string(), json!({ "diagram": w, "welded": w.welded_history() }))
        }
        Command::Simplify(i) => {
            let r = simplify(&read_diagram(&i.diagram)?, budget);
            let text = format!(
                "{}\n{} moves, {} states explored{}",
                r.result.serialize(),
                r.trace.len(),
                r.states_explored,
                if r.budget_exhausted { ", budget exhausted" } else { "" }
            );
            Output::new(text, serde_json::to_value(&r)?)
        }
        Command::Descending(i) => {
            let b = is_descending(&read_diagram(&i.diagram)?);
            let text = b.map_or("not descending".to_string(), |b| format!("descending from basepoint {}", b.0));
            Output::new(text, json!({ "basepoint": b }))
        }
        Command::Warping(i) => {
            let d = read_diagram(&i.diagram)?;
            let (f, r) = warping_degree_diagram(&d);
            let pf = warping_profile(&d, Orientation::Forward);
            let pr = warping_profile(&d, Orientation::Reversed);
            let text = format!(
                "d(D) = {f}, d(-D) = {r}\n{}: {pf:?}\n{}: {pr:?}",
                orientation_name(Orientation::Forward),
                orientation_name(Orientation::Reversed)
            );
            Output::new(text, json!({ "d": f, "d_reversed": r, "forward": pf, "reversed": pr }))
        }
        Command::Verdict { diagram, strict } => {
            let v = triviality_verdict(&read_diagram(diagram)?, budget)?;
            let mut out = Output::new(v.to_string(), serde_json::to_value(&v)?);
            if *strict && v.is_unknown() {
                out.code = 2;
            }
            out
        }
        Command::Uw(i) => {
            let b = welded_unknotting_bounds(&read_diagram(&i.diagram)?, budget)?;
            let text = format!("{} <= u_w <= {} ({} unresolved subsets)", b.lower, b.upper, b.unresolved_subsets);
            Output::new(text, serde_json::to_value(b)?)
        }
        Command::Group(g) => run_group(g, budget)?,
        Command::Family(f) => {
            let d = match f {
                FamilyCommand::Torus { choice, m1 } => match (choice.weld_one, choice.weld_two) {
                    (true, _) => torus_welded_one(choice.n)?,
                    (_, true) => torus_welded_two(choice.n, m1.ok_or_else(|| anyhow!("--weld-two needs --m1"))?)?,
                    _ => torus_2q(choice.n)?,
                },
                FamilyCommand::Twist { choice } => match (choice.weld_one, choice.weld_two) {
                    (true, _) => twist_welded_one(choice.n)?,
                    (_, true) => twist_welded_two(choice.n)?,
                    _ => twist(choice.n)?,
                },
            };
            Output::new(d.to_string(), json!({ "diagram": d, "welded": d.welded_history() }))
        }
        Command::Table(TableCommand::Six { catalog, sizes }) => {
            let report = table_6crossings(&load_catalog(catalog)?, sizes, budget)?;
            Output::new(report.to_text().trim_end().to_string(), serde_json::to_value(&report)?)
        }
        Command::Catalog(CatalogCommand::List(p)) => {
            let c = load_catalog(p)?;
            let names: Vec<&str> = c.iter().map(|e| e.name.as_str()).collect();
            Output::new(names.join("\n"), json!(names))
        }
        Command::Catalog(CatalogCommand::Show { name, catalog }) => {
            let c = load_catalog(catalog)?;
            let e = c.iter().find(|e| &e.name == name).ok_or_else(|| anyhow!("no catalog entry `{name}`"))?;
            let u = e.known_unknotting_number.map_or("-".to_string(), |u| u.to_string());
            let text = format!("{}\n{}\nunknotting number {u}", e.name, e.diagram);
            Output::new(text, serde_json::to_value(e)?)
        }
    })
}

fn run_group(g: &GroupCommand, budget: usize) -> Result<Output> {
    Ok(match g {
        GroupCommand::Wirtinger(i) => {
            let p = wirtinger(&read_diagram(&i.diagram)?);
            Output::new(p.to_string(), presentation_json(&p))
        }
        GroupCommand::Tietze(i) => {
            let p = tietze_simplify(&wirtinger(&read_diagram(&i.diagram)?), budget);
            Output::new(p.to_string(), presentation_json(&p))
        }
        GroupCommand::Abelian(i) => {
            let divs = abelianization(&wirtinger(&read_diagram(&i.diagram)?));
            let shown: Vec<String> = divs.iter().map(ToString::to_string).collect();
            let text = format!("divisors ({}), free rank {}", shown.join(", "), free_rank(&divs));
            Output::new(text, json!({ "divisors": shown, "free_rank": free_rank(&divs) }))
        }
        GroupCommand::Alexander(i) => {
            let a = alexander_polynomial(&wirtinger(&read_diagram(&i.diagram)?))?;
            Output::new(a.to_string(), json!({ "text": a.to_string(), "polynomial": a }))
        }
        GroupCommand::Colorings { diagram, m } => {
            let r = coloring_count(&read_diagram(diagram)?, *m)?;
            let text = format!("modulus {}: total {}, nontrivial {}", r.modulus, r.total_count, r.nontrivial_exists);
            Output::new(text, serde_json::to_value(&r)?)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET).max(1);
    match run(&cli.command, budget) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("JSON values serialize")
            } else {
                out.text
            };
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("weldkit: {}: {e:#}", op_name(&cli.command));
            ExitCode::from(1)
        }
    }
}
