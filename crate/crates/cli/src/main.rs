//! `rasp`: answer sets, world views, well-support checks and property reports
//! for propositional disjunctive and epistemic logic programs.

mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rasp_core::properties::{self, Property, PropertyReport, DEFAULT_PAIR_BOUND};
use rasp_core::reducts::epistemic_reduct;
use rasp_core::semantics::{answer_sets, world_views, Limits, SemanticsId};
use rasp_core::wellsupport::ws_all_witnesses;
use rasp_core::Program;
use serde_json::{json, Value};

const FOUND: u8 = 0;
const NONE: u8 = 10;
const ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "rasp", version, about = "Well-supported answer sets and world views")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Program file.
    file: PathBuf,
    /// Refuse programs whose ground signature exceeds this many atoms.
    #[arg(long, default_value_t = rasp_core::DEFAULT_MAX_ATOMS as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_atoms: u64,
    /// Report every witness instead of the first.
    #[arg(long)]
    all_witnesses: bool,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the answer sets of an epistemic-free program.
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "RATIONAL")]
        semantics: String,
    },
    /// Print the world views of an epistemic program.
    Worldviews {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "RATIONAL")]
        semantics: String,
    },
    /// Check whether a model (`a,b`) or epistemic model (`{a};{b}`) is
    /// well-supported.
    CheckWs {
        #[command(flatten)]
        common: Common,
        /// Atoms of the interpretation, or members of an epistemic model
        #[arg(long)]
        model: String,
    },
    /// Run several semantics and report where they disagree.
    Compare {
        #[command(flatten)]
        common: Common,
        /// Comma-separated semantics; defaults depend on the program.
        #[arg(long)]
        semantics: Option<String>,
    },
    /// Check MM, FN, WFN, CM or SCM.
    Properties {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "RATIONAL")]
        semantics: String,
        /// Comma-separated properties; defaults depend on the program.
        #[arg(long)]
        property: Option<String>,
        /// Constraint for CM and SCM, e.g. `:- ~c2.`
        #[arg(long)]
        constraint: Option<String>,
        /// Largest unfounded set of pairs searched for WFN.
        #[arg(long, default_value_t = DEFAULT_PAIR_BOUND)]
        bound: usize,
    },
}

struct Ctx {
    program: Program,
    path: String,
    limits: Limits,
    all: bool,
    json: bool,
}

impl Ctx {
    fn new(c: &Common) -> Result<Ctx> {
        Ok(Ctx {
            program: input::load_program(&c.file)?,
            path: c.file.display().to_string(),
            limits: Limits {
                max_atoms: usize::try_from(c.max_atoms).unwrap_or(usize::MAX),
            },
            all: c.all_witnesses,
            json: c.json,
        })
    }

    fn emit(&self, v: Value, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
        } else {
            println!("{}", text());
        }
    }
}

fn parse_semantics(s: &str) -> Result<SemanticsId> {
    Ok(s.parse::<SemanticsId>()?)
}

fn solve(ctx: &Ctx, sem: &str) -> Result<u8> {
    let sem = parse_semantics(sem)?;
    let sets = answer_sets(&ctx.program, &sem, ctx.limits)?;
    let mut v = json!({
        "program": ctx.path,
        "semantics": sem.to_string(),
        "answer_sets": output::sets(&sets),
    });
    let mut witnesses = Vec::new();
    if ctx.all && sem == SemanticsId::Rational {
        for i in &sets {
            let ws = ws_all_witnesses(&ctx.program, i, None)?;
            witnesses.push(json!({
                "answer_set": output::atoms(i),
                "witnesses": ws.iter().map(output::witness).collect::<Vec<_>>(),
            }));
        }
        v["witnesses"] = json!(witnesses);
    }
    ctx.emit(v, || {
        let mut s = format!("{sem}: {} answer set(s)", sets.len());
        for i in &sets {
            s.push_str(&format!("\n{i}"));
            if ctx.all && sem == SemanticsId::Rational {
                for w in ws_all_witnesses(&ctx.program, i, None).unwrap_or_default() {
                    s.push_str(&format!("\n{}", output::witness_text(&w)));
                }
            }
        }
        s
    });
    Ok(if sets.is_empty() { NONE } else { FOUND })
}

fn worldviews(ctx: &Ctx, sem: &str) -> Result<u8> {
    let sem = parse_semantics(sem)?;
    let views = world_views(&ctx.program, &sem, ctx.limits)?;
    let v = json!({
        "program": ctx.path,
        "semantics": sem.to_string(),
        "world_views": views.iter().map(output::world_view).collect::<Vec<_>>(),
    });
    ctx.emit(v, || {
        let mut s = format!("{sem}: {} world view(s)", views.len());
        for w in &views {
            let phi: Vec<String> = w.phi.iter().map(|f| format!("not {f}")).collect();
            s.push_str(&format!("\n{}  [{}]", w.model, phi.join(", ")));
        }
        s
    });
    Ok(if views.is_empty() { NONE } else { FOUND })
}

fn check_ws(ctx: &Ctx, literal: &str) -> Result<u8> {
    let p = &ctx.program;
    let limit = if ctx.all { None } else { Some(1) };
    if input::is_epistemic_literal(literal) {
        let a = input::parse_epistemic_model(literal, p)?;
        let red = epistemic_reduct(p, &a)?;
        let mut members = Vec::new();
        let mut ok = true;
        for i in a.iter() {
            let ws = ws_all_witnesses(&red.program, i, limit)?;
            ok &= !ws.is_empty();
            members.push((i.clone(), ws));
        }
        let v = json!({
            "program": ctx.path,
            "model": output::model(&a),
            "well_supported": ok,
            "members": members.iter().map(|(i, ws)| json!({
                "interpretation": output::atoms(i),
                "witnesses": ws.iter().map(output::witness).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        });
        ctx.emit(v, || {
            let mut s = format!("{a}: {}", if ok { "well-supported" } else { "not well-supported" });
            for (i, ws) in &members {
                let verdict = if ws.is_empty() { "unsupported" } else { "supported" };
                s.push_str(&format!("\n  member {i}: {verdict}"));
                for w in ws {
                    s.push_str(&format!("\n{}", output::witness_text(w)));
                }
            }
            s
        });
        return Ok(if ok { FOUND } else { NONE });
    }
    let i = input::parse_interpretation(literal, p)?;
    let ws = ws_all_witnesses(p, &i, limit)?;
    let ok = !ws.is_empty();
    let v = json!({
        "program": ctx.path,
        "model": output::atoms(&i),
        "well_supported": ok,
        "witnesses": ws.iter().map(output::witness).collect::<Vec<_>>(),
    });
    ctx.emit(v, || {
        let mut s = format!("{i}: {}", if ok { "well-supported" } else { "not well-supported" });
        for w in &ws {
            s.push_str(&format!("\n{}", output::witness_text(w)));
        }
        s
    });
    Ok(if ok { FOUND } else { NONE })
}

enum Outcome {
    Sets(Vec<Vec<String>>),
    Views(Vec<Value>),
    Failed(String),
}

fn compare(ctx: &Ctx, list: Option<&str>) -> Result<u8> {
    let p = &ctx.program;
    let default = if p.is_epistemic_free() {
        "RATIONAL,GL,GL_NLP,WJ,FLP,EQUILIBRIUM,DI_GLNLP,DI_WJ,THREE_VALUED"
    } else {
        "RATIONAL,G91,SE16(RATIONAL)"
    };
    let ids = input::split_top(list.unwrap_or(default), ',')
        .into_iter()
        .map(parse_semantics)
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for sem in &ids {
        let out = if p.is_epistemic_free() && sem.is_answer_set_semantics() {
            match answer_sets(p, sem, ctx.limits) {
                Ok(s) => Outcome::Sets(output::sets(&s)),
                Err(e) => Outcome::Failed(e.to_string()),
            }
        } else {
            match world_views(p, sem, ctx.limits) {
                Ok(v) => Outcome::Views(v.iter().map(output::world_view).collect()),
                Err(e) => Outcome::Failed(e.to_string()),
            }
        };
        rows.push((sem.to_string(), out));
    }
    let comparable = |o: &Outcome| match o {
        Outcome::Sets(s) => Some(json!(s)),
        Outcome::Views(v) => Some(json!(v.iter().map(|w| w["models"].clone()).collect::<Vec<_>>())),
        Outcome::Failed(_) => None,
    };
    let mut disagreements = Vec::new();
    for a in 0..rows.len() {
        for b in a + 1..rows.len() {
            if let (Some(x), Some(y)) = (comparable(&rows[a].1), comparable(&rows[b].1)) {
                if x != y {
                    disagreements.push([rows[a].0.clone(), rows[b].0.clone()]);
                }
            }
        }
    }
    if rows.iter().all(|(_, o)| matches!(o, Outcome::Failed(_))) {
        bail!("no semantics applies to this program");
    }
    let results: Vec<Value> = rows
        .iter()
        .map(|(name, o)| match o {
            Outcome::Sets(s) => json!({ "semantics": name, "answer_sets": s }),
            Outcome::Views(v) => json!({ "semantics": name, "world_views": v }),
            Outcome::Failed(e) => json!({ "semantics": name, "error": e }),
        })
        .collect();
    let v = json!({
        "program": ctx.path,
        "results": results,
        "agree": disagreements.is_empty(),
        "disagreements": disagreements,
    });
    ctx.emit(v, || {
        let width = rows.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
        let mut s = String::new();
        for (name, o) in &rows {
            let cell = match o {
                Outcome::Sets(sets) => sets
                    .iter()
                    .map(|i| format!("{{{}}}", i.join(", ")))
                    .collect::<Vec<_>>()
                    .join(" "),
                Outcome::Views(v) => v
                    .iter()
                    .map(|w| w["models"].to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
                Outcome::Failed(e) => format!("n/a ({e})"),
            };
            let cell = if cell.is_empty() { "none".to_string() } else { cell };
            s.push_str(&format!("{name:width$}  {cell}\n"));
        }
        if disagreements.is_empty() {
            s.push_str("all applicable semantics agree");
        } else {
            for [a, b] in &disagreements {
                s.push_str(&format!("DISAGREE {a} vs {b}\n"));
            }
            s.pop();
        }
        s
    });
    Ok(if disagreements.is_empty() { FOUND } else { NONE })
}

fn properties(
    ctx: &Ctx,
    sem: &str,
    list: Option<&str>,
    constraint: Option<&str>,
    bound: usize,
) -> Result<u8> {
    let p = &ctx.program;
    let sem = parse_semantics(sem)?;
    let wanted: Vec<Property> = match list {
        Some(l) => l
            .split(',')
            .map(|s| s.parse::<Property>().map_err(anyhow::Error::msg))
            .collect::<Result<_>>()?,
        None if !p.is_epistemic_free() => vec![Property::Wfn],
        None if p.is_simple() => vec![Property::Mm, Property::Fn],
        None => vec![Property::Mm],
    };
    let constraint = constraint.map(input::parse_rule).transpose()?;
    let need = || constraint.as_ref().context("--constraint is required for CM and SCM");
    let mut reports: Vec<PropertyReport> = Vec::new();
    for prop in wanted {
        reports.push(match prop {
            Property::Mm => properties::check_mm_with(p, &sem, ctx.limits)?,
            Property::Fn => properties::check_fn_with(p, &sem, ctx.limits)?,
            Property::Wfn => properties::check_wfn_with(p, &sem, bound, ctx.limits)?,
            Property::Cm => properties::check_cm_with(p, need()?, &sem, ctx.limits)?,
            Property::Scm => properties::check_scm_with(p, need()?, &sem, ctx.limits)?,
        });
    }
    let all_hold = reports.iter().all(|r| r.holds);
    let v = json!({
        "program": ctx.path,
        "semantics": sem.to_string(),
        "properties": reports.iter().map(output::report).collect::<Vec<_>>(),
    });
    ctx.emit(v, || {
        reports
            .iter()
            .map(output::report_text)
            .collect::<Vec<_>>()
            .join("\n")
    });
    Ok(if all_hold { FOUND } else { NONE })
}

fn run(cli: Cli) -> Result<u8> {
    match &cli.command {
        Command::Solve { common, semantics } => solve(&Ctx::new(common)?, semantics),
        Command::Worldviews { common, semantics } => worldviews(&Ctx::new(common)?, semantics),
        Command::CheckWs { common, model } => check_ws(&Ctx::new(common)?, model),
        Command::Compare { common, semantics } => compare(&Ctx::new(common)?, semantics.as_deref()),
        Command::Properties {
            common,
            semantics,
            property,
            constraint,
            bound,
        } => properties(
            &Ctx::new(common)?,
            semantics,
            property.as_deref(),
            constraint.as_deref(),
            *bound,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { ERROR } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR)
        }
    }
}
