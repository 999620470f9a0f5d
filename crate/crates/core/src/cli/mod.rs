//! Command-line front end. [`run`] does all the work and returns what to
//! print and the exit code, so it can be driven from tests.
//!
//! Exit codes: 0 when the geometry has convex dimension at most 2 (or the
//! oracle agrees), 1 when it does not (or the oracle disagrees), 2 for
//! invalid input or a closure system that is not a convex geometry, 3 when
//! a size guard is exceeded.

mod parse;
mod render;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::geometry::{validate_geometry_with, ConvexGeometry, Limits};
use crate::properties::{check_2ex_exhaustive, check_sq_exhaustive, decide_cdim2, PropertyReport};
use crate::representation::{
    brute_force_cdim2, build_representation_with, verify_representation_exhaustive,
    BuilderStrategy, SegmentRepresentation,
};
use crate::set::GroundSet;
use crate::uniqueness::{
    block_decomposition, count_representations, enumerate_representations, is_unique,
};

pub use parse::{parse_geometry, parse_interval_table, ParseError};
pub use render::{render_ascii, render_svg, ROW_HEIGHT};

#[derive(Debug, Parser)]
#[command(
    name = "cdim2",
    version,
    about = "Convex geometries of convex dimension 2"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Raise every size guard to this many elements.
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    /// Also run the exhaustive checks.
    #[arg(long, global = true)]
    pub exhaustive: bool,
    /// Insertion strategy of the representation builder.
    #[arg(long, global = true, value_enum, default_value_t = Builder::Paper)]
    pub builder: Builder,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include elapsed time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the convex dimension is at most 2.
    Check { file: PathBuf },
    /// Build a segment representation.
    Represent { file: PathBuf },
    /// Block structure and number of representations.
    Unique { file: PathBuf },
    /// Closure of a set and its extreme points.
    Closure {
        file: PathBuf,
        /// Element labels; none means the empty set.
        elements: Vec<String>,
    },
    /// Compare the polynomial checks with exhaustive search.
    Oracle { file: PathBuf },
    /// Draw the segments.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builder {
    /// Peel and insert with a per-block orientation choice.
    Paper,
    /// Try every orientation and position.
    Backtrack,
}

impl From<Builder> for BuilderStrategy {
    fn from(b: Builder) -> Self {
        match b {
            Builder::Paper => BuilderStrategy::Insertion,
            Builder::Backtrack => BuilderStrategy::Backtrack,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Svg,
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Machine-readable report; fields serialize in declaration order.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub input_sha256: String,
    pub elements: usize,
    pub implications: usize,
    pub basis_size: usize,
    pub exit_code: i32,
    pub result: Value,
    pub closure_calls: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

struct Input {
    digest: String,
    geom: ConvexGeometry,
}

fn failure(code: i32, message: String) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
        code,
    }
}

fn error_outcome(err: &Error) -> Outcome {
    match err {
        Error::GroundSetTooLarge { .. } | Error::TooManyBlocks { .. } => {
            failure(3, format!("{err}; raise the guard with --max-n"))
        }
        _ => failure(2, err.to_string()),
    }
}

fn load(path: &PathBuf, limits: Limits) -> Result<Input, Outcome> {
    let bytes = std::fs::read(path)
        .map_err(|e| failure(2, format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| failure(2, format!("{} is not UTF-8", path.display())))?;
    let basis =
        parse_geometry(&text).map_err(|e| failure(2, format!("{}: {e}", path.display())))?;
    let geom = validate_geometry_with(basis, limits).map_err(|e| error_outcome(&e))?;
    Ok(Input {
        digest: hex::encode(Sha256::digest(&bytes)),
        geom,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn property_line(report: &PropertyReport, ground: &GroundSet) -> String {
    match report.witness {
        None => format!("{}: holds", report.property),
        Some(w) => format!("{}: fails, {}", report.property, w.describe(ground)),
    }
}

fn property_json(report: &PropertyReport, ground: &GroundSet) -> Value {
    json!({
        "property": report.property.to_string(),
        "holds": report.holds,
        "witness": report.witness.map(|w| w.describe(ground)),
    })
}

fn representation_json(rep: &SegmentRepresentation, ground: &GroundSet) -> Value {
    let label = |seq: &[usize]| -> Vec<String> {
        seq.iter().map(|&e| ground.name(e).to_string()).collect()
    };
    json!({
        "display": rep.display(ground),
        "left": label(rep.left().sequence()),
        "right": label(rep.right().sequence()),
    })
}

type Produced = (String, Value, i32);

fn cmd_check(geom: &ConvexGeometry, exhaustive: bool) -> Result<Produced, Error> {
    let ground = geom.ground();
    let decision = decide_cdim2(geom);
    let mut text = String::new();
    let _ = writeln!(text, "{}", property_line(&decision.two_ex, ground));
    let _ = writeln!(text, "{}", property_line(&decision.sq, ground));
    let mut value = json!({
        "cdim2": decision.cdim2,
        "two_ex": property_json(&decision.two_ex, ground),
        "sq": property_json(&decision.sq, ground),
    });
    if exhaustive {
        let two_ex = check_2ex_exhaustive(geom)?;
        let sq = check_sq_exhaustive(geom)?;
        let _ = writeln!(text, "exhaustive {}", property_line(&two_ex, ground));
        let _ = writeln!(text, "exhaustive {}", property_line(&sq, ground));
        value["exhaustive"] = json!({
            "two_ex": property_json(&two_ex, ground),
            "sq": property_json(&sq, ground),
        });
    }
    let _ = writeln!(text, "cdim <= 2: {}", yes_no(decision.cdim2));
    Ok((text, value, if decision.cdim2 { 0 } else { 1 }))
}

fn build(cli: &Cli, geom: &ConvexGeometry) -> Result<Option<SegmentRepresentation>, Error> {
    match build_representation_with(geom, cli.builder.into()) {
        Ok(rep) => Ok(Some(rep)),
        Err(Error::Infeasible { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn no_representation(geom: &ConvexGeometry) -> Produced {
    let decision = decide_cdim2(geom);
    let mut text = String::from("no segment representation: cdim > 2\n");
    if let Some(w) = decision.witness() {
        let _ = writeln!(text, "witness: {}", w.describe(geom.ground()));
    }
    let value = json!({
        "cdim2": false,
        "witness": decision.witness().map(|w| w.describe(geom.ground())),
    });
    (text, value, 1)
}

fn cmd_represent(cli: &Cli, geom: &ConvexGeometry) -> Result<Produced, Error> {
    let Some(rep) = build(cli, geom)? else {
        return Ok(no_representation(geom));
    };
    let ground = geom.ground();
    let layout = rep.layout();
    let mut text = format!("{}\n", rep.display(ground));
    text.push_str(&layout.to_table(ground));
    let mut value = json!({
        "cdim2": true,
        "representation": representation_json(&rep, ground),
        "layout": layout.intervals,
    });
    if cli.exhaustive {
        let agrees = verify_representation_exhaustive(geom, &rep)?.agrees();
        let _ = writeln!(
            text,
            "exhaustive verification: {}",
            if agrees { "agrees" } else { "disagrees" }
        );
        value["exhaustive_verification"] = json!(agrees);
        if !agrees {
            return Ok((text, value, 1));
        }
    }
    Ok((text, value, 0))
}

fn cmd_unique(cli: &Cli, geom: &ConvexGeometry) -> Result<Produced, Error> {
    let Some(rep) = build(cli, geom)? else {
        return Ok(no_representation(geom));
    };
    let ground = geom.ground();
    let decomposition = block_decomposition(&rep);
    let count = count_representations(&rep);
    let verdict = is_unique(&rep);
    let mut text = decomposition.report(ground);
    let _ = writeln!(text, "representations: {count}");
    let _ = writeln!(text, "{}", verdict.explain(ground));
    let all = enumerate_representations(&rep, geom.limits().blocks)?;
    for r in &all {
        let _ = writeln!(text, "{}", r.display(ground));
    }
    let blocks: Vec<Value> = decomposition
        .blocks
        .iter()
        .map(|b| {
            json!({
                "positions": [b.start, b.end],
                "members": ground.format(b.members),
                "switchable": b.switchable,
            })
        })
        .collect();
    let value = json!({
        "blocks": blocks,
        "count": count.to_string(),
        "unique": verdict.unique,
        "explanation": verdict.explain(ground),
        "representations": all.iter().map(|r| r.display(ground)).collect::<Vec<_>>(),
    });
    Ok((text, value, 0))
}

fn cmd_closure(geom: &ConvexGeometry, elements: &[String]) -> Result<Produced, Error> {
    let ground = geom.ground();
    let seed = ground.set_of(elements.iter().map(String::as_str))?;
    let closed = geom.closure(seed);
    let extreme = geom.extreme_points(closed);
    let text = format!(
        "closure: {}\nextreme points: {}\n",
        ground.format_braced(closed),
        ground.format_braced(extreme)
    );
    let value = json!({
        "seed": ground.format(seed),
        "closure": ground.format(closed),
        "extreme_points": ground.format(extreme),
    });
    Ok((text, value, 0))
}

fn cmd_oracle(cli: &Cli, geom: &ConvexGeometry) -> Result<Produced, Error> {
    let ground = geom.ground();
    let decision = decide_cdim2(geom);
    let brute = brute_force_cdim2(geom)?;
    let two_ex = check_2ex_exhaustive(geom)?;
    let sq = check_sq_exhaustive(geom)?;
    let mut agree = decision.cdim2 == brute.cdim2
        && decision.two_ex.holds == two_ex.holds
        && (!two_ex.holds || decision.sq.holds == sq.holds);
    let mut text = String::new();
    let _ = writeln!(
        text,
        "cdim <= 2: polynomial {}, exhaustive {}",
        yes_no(decision.cdim2),
        yes_no(brute.cdim2)
    );
    let _ = writeln!(
        text,
        "2Ex: polynomial {}, exhaustive {}",
        yes_no(decision.two_ex.holds),
        yes_no(two_ex.holds)
    );
    let _ = writeln!(
        text,
        "Sq: polynomial {}, exhaustive {}",
        yes_no(decision.sq.holds),
        yes_no(sq.holds)
    );
    let mut count = None;
    if let Some(rep) = build(cli, geom)? {
        let c = count_representations(&rep);
        agree &= c == brute.representations.len() as u128;
        let _ = writeln!(
            text,
            "representations: blocks {c}, exhaustive {}",
            brute.representations.len()
        );
        count = Some(c.to_string());
    }
    for r in &brute.representations {
        let _ = writeln!(text, "{}", r.display(ground));
    }
    let _ = writeln!(text, "{}", if agree { "agree" } else { "MISMATCH" });
    let value = json!({
        "agree": agree,
        "polynomial": { "cdim2": decision.cdim2, "two_ex": decision.two_ex.holds, "sq": decision.sq.holds },
        "exhaustive": { "cdim2": brute.cdim2, "two_ex": two_ex.holds, "sq": sq.holds },
        "count": count,
        "representations": brute.representations.iter().map(|r| r.display(ground)).collect::<Vec<_>>(),
    });
    Ok((text, value, if agree { 0 } else { 1 }))
}

fn cmd_render(cli: &Cli, geom: &ConvexGeometry, format: Format) -> Result<Produced, Error> {
    let Some(rep) = build(cli, geom)? else {
        return Ok(no_representation(geom));
    };
    let ground = geom.ground();
    let text = match format {
        Format::Ascii => render_ascii(&rep, ground),
        Format::Svg => render_svg(&rep, ground),
    };
    let value = json!({ "format": format!("{format:?}").to_lowercase(), "document": text });
    Ok((text, value, 0))
}

/// Runs one command.
pub fn run(cli: &Cli) -> Outcome {
    let started = Instant::now();
    let limits = cli.max_n.map(Limits::uniform).unwrap_or_default();
    let (name, file) = match &cli.command {
        Command::Check { file } => ("check", file),
        Command::Represent { file } => ("represent", file),
        Command::Unique { file } => ("unique", file),
        Command::Closure { file, .. } => ("closure", file),
        Command::Oracle { file } => ("oracle", file),
        Command::Render { file, .. } => ("render", file),
    };
    let input = match load(file, limits) {
        Ok(input) => input,
        Err(outcome) => return outcome,
    };
    let geom = &input.geom;
    let produced = match &cli.command {
        Command::Check { .. } => cmd_check(geom, cli.exhaustive),
        Command::Represent { .. } => cmd_represent(cli, geom),
        Command::Unique { .. } => cmd_unique(cli, geom),
        Command::Closure { elements, .. } => cmd_closure(geom, elements),
        Command::Oracle { .. } => cmd_oracle(cli, geom),
        Command::Render { format, .. } => cmd_render(cli, geom, *format),
    };
    let (text, value, code) = match produced {
        Ok(p) => p,
        Err(e) => return error_outcome(&e),
    };
    let elapsed_ms = cli.timing.then(|| started.elapsed().as_secs_f64() * 1000.0);
    let stdout = if cli.json {
        let report = RunReport {
            command: name,
            input_sha256: input.digest,
            elements: geom.n(),
            implications: geom.basis().m(),
            basis_size: geom.basis().k(),
            exit_code: code,
            result: value,
            closure_calls: geom.closure_calls(),
            elapsed_ms,
        };
        let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
        s.push('\n');
        s
    } else {
        let mut s = text;
        if let Some(ms) = elapsed_ms {
            let _ = writeln!(s, "elapsed: {ms:.3} ms");
        }
        s
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code,
    }
}
