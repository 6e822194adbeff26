//! `klcheck`: command-line front end to the kripke-lewis library.
//!
//! Exit status is 0 when the requested check holds, 1 when it fails (a
//! witness is printed on standard output), and 2 on bad input.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kripke_lewis::axioms::axiom_valid_on_frame;
use kripke_lewis::correspondence::{sweep, SweepConfig, SweepError, SweepMode};
use kripke_lewis::model::{validate_frame, Frame, Model, RawModel, StateId};
use kripke_lewis::properties::{check_property_with, PropertyId, PropertyWitness, Strategy};
use kripke_lewis::revision::{agm_event_check, AgmPostulateId, AgmWitness, BeliefStateView};
use kripke_lewis::{build_countermodel, classify, parse, AxiomId, Event, Formula, SchemaWitness};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "klcheck", version, about = "Check belief/conditional formulas, frame properties and AGM postulates on finite Kripke-Lewis frames")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and classify a formula.
    Parse { formula: String },
    /// Evaluate a formula at a state of a model.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        state: String,
        #[arg(long)]
        formula: String,
    },
    /// Check frame properties P2..P8.
    FrameCheck {
        #[arg(long)]
        frame: PathBuf,
        /// Comma-separated property list, e.g. `P2,P7`. Defaults to all.
        #[arg(long, value_delimiter = ',')]
        props: Vec<PropertyId>,
        /// Use the literal quantifier forms for P7 and P8.
        #[arg(long)]
        literal: bool,
    },
    /// Check schema validity of modal axioms and rules on a frame.
    AxiomCheck {
        #[arg(long)]
        frame: PathBuf,
        /// Comma-separated axiom list, e.g. `A2,A4,RuleK6`. Defaults to all.
        #[arg(long, value_delimiter = ',')]
        axiom: Vec<AxiomId>,
    },
    /// Check the AGM postulates at every state of a frame.
    AgmCheck {
        #[arg(long)]
        frame: PathBuf,
        /// Comma-separated postulate list, e.g. `K2,K7`. Defaults to all.
        #[arg(long, value_delimiter = ',')]
        postulate: Vec<AgmPostulateId>,
    },
    /// Ask whether a query belongs to the revised (or expanded) belief set.
    Revise {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        state: String,
        #[arg(long)]
        input: String,
        #[arg(long)]
        query: String,
        /// Test the expansion instead of the revision.
        #[arg(long)]
        expand: bool,
    },
    /// Build a model falsifying an axiom from a violation of its frame property.
    Countermodel {
        #[arg(long)]
        axiom: AxiomId,
        #[arg(long)]
        frame: PathBuf,
    },
    /// Sweep many frames and tabulate agreement between properties, axioms and postulates.
    Sweep {
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Frames to draw in random mode.
        #[arg(long, default_value_t = 10_000)]
        count: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Comma-separated property list. Defaults to all.
        #[arg(long, value_delimiter = ',')]
        pairs: Vec<PropertyId>,
        /// Allow exhaustive enumeration beyond two states.
        #[arg(long)]
        allow_large: bool,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

/// Bad input; reported on stderr with status 2.
struct InputError(String);

impl<E: fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

enum Outcome {
    Holds,
    Fails,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Holds) => ExitCode::SUCCESS,
        Ok(Outcome::Fails) => ExitCode::from(1),
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    let json = cli.json;
    match &cli.command {
        Command::Parse { formula } => cmd_parse(formula, json),
        Command::Eval { model, state, formula } => cmd_eval(model, state, formula, json),
        Command::FrameCheck { frame, props, literal } => cmd_frame_check(frame, props, *literal, json),
        Command::AxiomCheck { frame, axiom } => cmd_axiom_check(frame, axiom, json),
        Command::AgmCheck { frame, postulate } => cmd_agm_check(frame, postulate, json),
        Command::Revise { model, state, input, query, expand } => {
            cmd_revise(model, state, input, query, *expand, json)
        }
        Command::Countermodel { axiom, frame } => cmd_countermodel(*axiom, frame, json),
        Command::Sweep { size, mode, count, seed, workers, pairs, allow_large, out } => {
            let mut config = match mode {
                Mode::Exhaustive => SweepConfig::exhaustive(*size),
                Mode::Random => {
                    let seed = seed.ok_or_else(|| InputError("random mode needs --seed".into()))?;
                    SweepConfig::random(*size, *count, seed)
                }
            };
            if let (Mode::Exhaustive, Some(seed)) = (mode, seed) {
                config.seed = Some(*seed);
            }
            if !pairs.is_empty() {
                config.pairs = pairs.clone();
            }
            config.allow_large = *allow_large;
            config.workers = *workers;
            cmd_sweep(&config, out.as_deref(), json)
        }
    }
}

fn read_raw(path: &Path) -> Result<RawModel, InputError> {
    let text = fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_frame(path: &Path) -> Result<Frame, InputError> {
    validate_frame(&read_raw(path)?).map_err(|errors| {
        let lines: Vec<String> = errors.iter().map(|e| e.to_string()).collect();
        InputError(format!("{}: {}", path.display(), lines.join("; ")))
    })
}

fn load_model(path: &Path) -> Result<Model, InputError> {
    Model::from_raw(&read_raw(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn state_of(frame: &Frame, name: &str) -> Result<StateId, InputError> {
    frame
        .state_id(name)
        .ok_or_else(|| InputError(format!("unknown state `{name}`")))
}

fn parse_formula(text: &str) -> Result<Formula, InputError> {
    parse(text).map_err(|e| InputError(format!("`{text}`: {e}")))
}

fn names(frame: &Frame, e: Event) -> Value {
    json!(frame.names_of(e))
}

fn opt_names(frame: &Frame, e: Option<Event>) -> Value {
    e.map_or(Value::Null, |e| names(frame, e))
}

fn property_witness_json(frame: &Frame, w: &PropertyWitness) -> Value {
    json!({
        "property": w.property.to_string(),
        "state": frame.name(w.state),
        "belief_state": w.belief_state.map(|s| frame.name(s)),
        "E": names(frame, w.e),
        "F": opt_names(frame, w.f),
        "G": opt_names(frame, w.g),
    })
}

fn schema_witness_json(frame: &Frame, w: &SchemaWitness) -> Value {
    let a = &w.assignment;
    let letters = [("p", a.phi), ("q", a.psi), ("r", a.chi)];
    let valuation: serde_json::Map<String, Value> = letters
        .iter()
        .take(w.axiom.letters())
        .map(|(p, e)| (p.to_string(), names(frame, *e)))
        .collect();
    json!({
        "axiom": w.axiom.to_string(),
        "instance": w.axiom.instance().to_string(),
        "state": frame.name(w.state),
        "valuation": valuation,
    })
}

fn agm_witness_json(frame: &Frame, w: &AgmWitness) -> Value {
    json!({
        "postulate": w.postulate.to_string(),
        "state": frame.name(w.state),
        "E": names(frame, w.e),
        "F": opt_names(frame, w.f),
    })
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json values serialize"));
}

fn cmd_parse(text: &str, json: bool) -> Result<Outcome, InputError> {
    let formula = parse_formula(text)?;
    let class = classify(&formula);
    if json {
        print_json(&json!({
            "formula": formula.to_string(),
            "class": class.to_string(),
            "ast": formula,
        }));
    } else {
        println!("{formula}");
        println!("class: {class}");
        println!("ast: {formula:?}");
    }
    Ok(Outcome::Holds)
}

fn cmd_eval(path: &Path, state: &str, text: &str, json: bool) -> Result<Outcome, InputError> {
    let model = load_model(path)?;
    let s = state_of(model.frame(), state)?;
    let formula = parse_formula(text)?;
    let value = model.truth(s, &formula)?;
    if json {
        let extension = model.truth_set(&formula)?;
        print_json(&json!({
            "formula": formula.to_string(),
            "state": state,
            "value": value,
            "truth_set": names(model.frame(), extension),
        }));
    } else {
        println!("{value}");
    }
    Ok(Outcome::Holds)
}

fn cmd_frame_check(
    path: &Path,
    props: &[PropertyId],
    literal: bool,
    json: bool,
) -> Result<Outcome, InputError> {
    let frame = load_frame(path)?;
    let props = if props.is_empty() { PropertyId::ALL.to_vec() } else { props.to_vec() };
    let strategy = if literal { Strategy::Literal } else { Strategy::Reformulated };
    let mut failed = false;
    let mut results = Vec::new();
    for k in props {
        let result = check_property_with(&frame, k, strategy);
        failed |= result.is_err();
        let witness = result.err().map(|w| property_witness_json(&frame, &w));
        if !json {
            match &witness {
                None => println!("{k}: holds"),
                Some(w) => println!("{k}: fails {}", serde_json::to_string(w).expect("json")),
            }
        }
        results.push(json!({ "property": k.to_string(), "holds": witness.is_none(), "witness": witness }));
    }
    if json {
        print_json(&json!({ "frame": frame.digest(), "results": results }));
    }
    Ok(if failed { Outcome::Fails } else { Outcome::Holds })
}

fn cmd_axiom_check(path: &Path, axioms: &[AxiomId], json: bool) -> Result<Outcome, InputError> {
    let frame = load_frame(path)?;
    let axioms = if axioms.is_empty() {
        AxiomId::SCHEMAS.iter().chain(AxiomId::RULES.iter()).copied().collect()
    } else {
        axioms.to_vec()
    };
    let mut failed = false;
    let mut results = Vec::new();
    for a in axioms {
        let validity = axiom_valid_on_frame(&frame, a);
        failed |= !validity.is_valid();
        let witness = validity.witness().map(|w| schema_witness_json(&frame, w));
        if !json {
            match &witness {
                None => println!("{a}: valid"),
                Some(w) => println!("{a}: invalid {}", serde_json::to_string(w).expect("json")),
            }
        }
        results.push(json!({ "axiom": a.to_string(), "valid": witness.is_none(), "witness": witness }));
    }
    if json {
        print_json(&json!({ "frame": frame.digest(), "results": results }));
    }
    Ok(if failed { Outcome::Fails } else { Outcome::Holds })
}

fn cmd_agm_check(path: &Path, postulates: &[AgmPostulateId], json: bool) -> Result<Outcome, InputError> {
    let frame = load_frame(path)?;
    let postulates = if postulates.is_empty() { AgmPostulateId::ALL.to_vec() } else { postulates.to_vec() };
    let mut failed = false;
    let mut rows = Vec::new();
    if !json {
        let header: Vec<String> = postulates.iter().map(|k| format!("{:>6}", k.to_string())).collect();
        println!("{:<8}{}", "state", header.join(""));
    }
    for s in frame.states() {
        let mut cells = serde_json::Map::new();
        let mut line = format!("{:<8}", frame.name(s));
        let mut witnesses = Vec::new();
        for &k in &postulates {
            let result = agm_event_check(&frame, s, k);
            failed |= result.is_err();
            line.push_str(&format!("{:>6}", if result.is_ok() { "ok" } else { "FAIL" }));
            let witness = result.err().map(|w| agm_witness_json(&frame, &w));
            if let Some(w) = &witness {
                witnesses.push(w.clone());
            }
            cells.insert(k.to_string(), json!({ "holds": witness.is_none(), "witness": witness }));
        }
        if !json {
            println!("{line}");
            for w in witnesses {
                println!("  {}", serde_json::to_string(&w).expect("json"));
            }
        }
        rows.push(json!({ "state": frame.name(s), "postulates": cells }));
    }
    if json {
        print_json(&json!({ "frame": frame.digest(), "states": rows }));
    }
    Ok(if failed { Outcome::Fails } else { Outcome::Holds })
}

fn cmd_revise(
    path: &Path,
    state: &str,
    input: &str,
    query: &str,
    expand: bool,
    json: bool,
) -> Result<Outcome, InputError> {
    let model = load_model(path)?;
    let s = state_of(model.frame(), state)?;
    let input = parse_formula(input)?;
    let query = parse_formula(query)?;
    let view = BeliefStateView::new(&model, s)?;
    let member = if expand {
        view.expansion_contains(&input, &query)?
    } else {
        view.revision_contains(&input, &query)?
    };
    if json {
        print_json(&json!({
            "state": state,
            "operation": if expand { "expansion" } else { "revision" },
            "input": input.to_string(),
            "query": query.to_string(),
            "member": member,
        }));
    } else {
        println!("{member}");
    }
    Ok(Outcome::Holds)
}

fn cmd_countermodel(axiom: AxiomId, path: &Path, json: bool) -> Result<Outcome, InputError> {
    let frame = load_frame(path)?;
    let property = axiom
        .property()
        .ok_or_else(|| InputError(format!("{axiom} has no paired frame property")))?;
    let witness = match check_property_with(&frame, property, Strategy::Reformulated) {
        Ok(()) => {
            if json {
                print_json(&json!({ "axiom": axiom.to_string(), "property_holds": true, "countermodel": null }));
            } else {
                println!("{property} holds on this frame; {axiom} is valid and has no countermodel");
            }
            return Ok(Outcome::Holds);
        }
        Err(w) => w,
    };
    let cm = build_countermodel(&frame, axiom, &witness)?;
    let body = json!({
        "axiom": axiom.to_string(),
        "instance": cm.instance.to_string(),
        "state": frame.name(cm.state),
        "falsified": cm.falsifies(),
        "property_witness": property_witness_json(&frame, &witness),
        "model": cm.model.to_raw(),
    });
    if json {
        print_json(&body);
    } else {
        println!("{} is false at {}", cm.instance, frame.name(cm.state));
        print_json(&body["model"]);
    }
    Ok(Outcome::Holds)
}

fn cmd_sweep(config: &SweepConfig, out: Option<&Path>, json: bool) -> Result<Outcome, InputError> {
    let report = match sweep(config) {
        Ok(report) => report,
        Err(SweepError::Worker { frame_index, message, partial }) => {
            if let Some(out) = out {
                let text = serde_json::to_string_pretty(&partial)?;
                fs::write(out, text + "\n")?;
            }
            return Err(InputError(format!("worker failed on frame {frame_index}: {message}")));
        }
        Err(e) => return Err(e.into()),
    };
    let text = serde_json::to_string_pretty(&report)?;
    if let Some(out) = out {
        fs::write(out, text.clone() + "\n")
            .map_err(|e| InputError(format!("cannot write {}: {e}", out.display())))?;
    }
    if json {
        println!("{text}");
    } else {
        let mode = match config.mode {
            SweepMode::Exhaustive => "exhaustive",
            SweepMode::Random => "random",
        };
        println!("{mode} sweep, {} states: {} frames", config.states, report.totals.frames);
        for (k, c) in &report.per_axiom {
            let agm = &report.per_agm[k];
            let replay = &report.countermodel_replay[k];
            println!(
                "{k}: axiom pp={} pf={} fp={} ff={}  agm pp={} pf={} fp={} ff={}  replay {}/{}",
                c.pp, c.pf, c.fp, c.ff, agm.pp, agm.pf, agm.fp, agm.ff, replay.succeeded, replay.attempted
            );
        }
        for (name, count) in &report.always_valid {
            println!("{name}: valid on {count}/{}", report.totals.frames);
        }
        println!("discrepancies: {}", report.totals.discrepancies);
        for d in &report.discrepancies {
            println!("  {}", serde_json::to_string(d)?);
        }
    }
    Ok(if report.is_clean() { Outcome::Holds } else { Outcome::Fails })
}
