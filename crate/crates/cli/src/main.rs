//! `tsspic`: JSON front end to the `tsspic` library.
//!
//! Every invocation prints exactly one JSON document on stdout. Exit codes:
//! 0 on success (including negative answers of `morita`, `isomorphic` and
//! `equal`), 1 on domain errors and failed verifications, 2 on usage and
//! parse errors.

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tsspic::graph::{self, GraphError};
use tsspic::groupoid::{
    self, GroupoidModel, LiftVector, ModelKind, Perturbation, VerificationReport, VerifyOptions,
};
use tsspic::mcg::{symplectic_surface_picard_report, SurfaceType};
use tsspic::model::{self, build_graph, ModelError, TssSurface};
use tsspic::picard::{self, PicardError, PicardGroupDescription};
use tsspic::rational::format_rational;

#[derive(Debug, Parser)]
#[command(name = "tsspic", version, about = "Invariants and Picard groups of TSS Poisson surfaces")]
struct Cli {
    /// Pretty-print the JSON and add a human-readable `display` field.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the invariants of a TSS document.
    Validate { tss: String },
    /// Labeled graph, canonical key and numerical invariants.
    Invariants { tss: String },
    /// Decide Morita equivalence of two TSS.
    Morita { a: String, b: String },
    /// Decide isomorphism of two TSS (Morita data plus volume).
    Isomorphic {
        a: String,
        b: String,
        /// Match regularized volumes leaf by leaf instead of in total.
        #[arg(long)]
        strict: bool,
    },
    /// The Picard group as a structured description.
    Picard { tss: String },
    /// The static Picard group.
    Statpic { tss: String },
    /// Product `a · b` of two Picard group elements.
    Compose { tss: String, a: String, b: String },
    /// Inverse of a Picard group element.
    Invert { tss: String, a: String },
    /// Compare two Picard group elements.
    Equal { tss: String, a: String, b: String },
    /// Randomized checks of an explicit symplectic groupoid model.
    VerifyGroupoid {
        #[arg(value_enum)]
        model: ModelArg,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Tolerance of the finite difference dΩ check.
        #[arg(long, default_value_t = 1e-6)]
        fd_tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = CheckArg::All)]
        check: CheckArg,
        /// Break the product on purpose (negative control).
        #[arg(long, value_enum)]
        perturb: Option<PerturbArg>,
        /// Hamiltonian field used by the modular lift check.
        #[arg(long, value_enum, default_value_t = LiftArg::Hp)]
        lift: LiftArg,
    },
    /// Picard group of a symplectic surface with `boundary` ends.
    ReportSymplectic {
        #[arg(long)]
        genus: u32,
        #[arg(long, default_value_t = 0)]
        boundary: u32,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Affine,
    CylinderOne,
    CylinderTwo,
}

impl From<ModelArg> for ModelKind {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Affine => ModelKind::AffinePlane,
            ModelArg::CylinderOne => ModelKind::CylinderOne,
            ModelArg::CylinderTwo => ModelKind::CylinderTwo,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    All,
    Axioms,
    Symplectic,
    Lift,
    Alpha,
    Isotropy,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PerturbArg {
    DropQPrime,
    WrongFlowFactor,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LiftArg {
    Hp,
    Hq,
}

/// A failure, with its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
    detail: Value,
}

impl Failure {
    fn usage(kind: &'static str, message: impl ToString) -> Self {
        Failure {
            code: 2,
            kind,
            message: message.to_string(),
            detail: Value::Null,
        }
    }

    fn domain(kind: &'static str, message: impl ToString) -> Self {
        Failure {
            code: 1,
            kind,
            message: message.to_string(),
            detail: Value::Null,
        }
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match &e {
            ModelError::Syntax { .. } | ModelError::UnknownField(_) => Failure::usage("parse", e),
            ModelError::Invalid(report) => Failure {
                detail: json!({ "violations": report.violations }),
                ..Failure::domain("invalid_surface", &e)
            },
            _ => Failure::domain("invalid_surface", e),
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Model(m) => m.into(),
            other => Failure::domain("graph", other),
        }
    }
}

impl From<PicardError> for Failure {
    fn from(e: PicardError) -> Self {
        match e {
            PicardError::Model(m) => m.into(),
            PicardError::Graph(g) => g.into(),
            PicardError::Document(_) => Failure::usage("parse", e),
            PicardError::Leaf { .. } => Failure::domain("uncataloged_leaf", e),
            other => Failure::domain("element", other),
        }
    }
}

/// Inline JSON when the argument starts with `{`, otherwise a file path.
fn read_input(arg: &str) -> Result<String, Failure> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg))
        .map_err(|e| Failure::usage("io", format!("cannot read {arg}: {e}")))
}

fn load_tss(arg: &str) -> Result<TssSurface, Failure> {
    Ok(model::parse_tss(&read_input(arg)?)?)
}

fn load_element(d: &PicardGroupDescription, arg: &str) -> Result<picard::PicardElement, Failure> {
    let text = read_input(arg)?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| Failure::usage("parse", format!("{arg}: {e}")))?;
    Ok(d.element_from_json(&v)?)
}

struct Output {
    value: Value,
    display: String,
    code: u8,
}

impl Output {
    fn ok(value: Value, display: impl Into<String>) -> Self {
        Output {
            value,
            display: display.into(),
            code: 0,
        }
    }
}

fn decision(result: bool, witness: Option<Value>) -> Value {
    json!({ "result": result, "witness": witness })
}

fn verify(
    kind: ModelKind,
    opts: &VerifyOptions,
    check: CheckArg,
    perturb: Option<PerturbArg>,
    lift: LiftArg,
) -> Result<VerificationReport, Failure> {
    let perturbation = match perturb {
        None => Perturbation::None,
        Some(PerturbArg::DropQPrime) => Perturbation::DropQPrime,
        Some(PerturbArg::WrongFlowFactor) => Perturbation::WrongFlowFactor,
    };
    let lift = match lift {
        LiftArg::Hp => LiftVector::Hp,
        LiftArg::Hq => LiftVector::Hq,
    };
    let m = GroupoidModel::<f64>::perturbed(kind, perturbation);
    let want = |c: CheckArg| check == CheckArg::All || check == c;
    let mut report = VerificationReport {
        model: kind.name().to_string(),
        checks: Vec::new(),
        conventions: Default::default(),
    };
    if want(CheckArg::Axioms) {
        report = report.merge(groupoid::verify_groupoid_axioms(&m, opts));
    }
    if want(CheckArg::Symplectic) {
        report = report.merge(groupoid::verify_symplectic_compatibility(&m, opts));
    }
    if want(CheckArg::Lift) {
        report = report.merge(groupoid::verify_modular_lift(&m, lift, opts));
    }
    let alpha_ok = kind == ModelKind::CylinderTwo;
    let isotropy_ok = kind == ModelKind::CylinderOne;
    if check == CheckArg::Alpha && !alpha_ok {
        return Err(Failure::usage("usage", "--check alpha needs cylinder-two"));
    }
    if check == CheckArg::Isotropy && !isotropy_ok {
        return Err(Failure::usage("usage", "--check isotropy needs cylinder-one"));
    }
    if want(CheckArg::Alpha) && alpha_ok {
        report = report.merge(groupoid::verify_alpha_group_law::<f64>(opts));
    }
    if want(CheckArg::Isotropy) && isotropy_ok {
        report = report.merge(groupoid::verify_isotropy::<f64>(opts));
    }
    Ok(report)
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Validate { tss } => {
            let s = load_tss(&tss)?;
            let report = model::validate(&s);
            let valid = report.is_valid();
            let value = json!({
                "valid": valid,
                "violations": report.violations,
                "euler_characteristic": model::euler_characteristic(&s),
            });
            let display = if valid { "valid".to_string() } else { report.to_string() };
            Ok(Output {
                value,
                display,
                code: if valid { 0 } else { 1 },
            })
        }
        Command::Invariants { tss } => {
            let s = load_tss(&tss)?;
            let g = build_graph(&s)?;
            let key = graph::canonical_key(&g)?;
            let aut = graph::automorphism_group(&g)?;
            let value = json!({
                "graph": g.to_json(),
                "canonical_key": key,
                "euler_characteristic": model::euler_characteristic(&s),
                "ambient_genus": s.ambient_genus(),
                "total_volume": format_rational(&s.total_volume()),
                "automorphisms": { "order": aut.order(), "structure": aut.structure_name() },
            });
            Ok(Output::ok(value, key))
        }
        Command::Morita { a, b } => {
            let (s1, s2) = (load_tss(&a)?, load_tss(&b)?);
            let (result, w) = graph::morita_equivalent(&s1, &s2)?;
            let (g1, g2) = (build_graph(&s1)?, build_graph(&s2)?);
            let witness = w.map(|m| serde_json::to_value(m.to_witness(&g1, &g2)).expect("serializes"));
            Ok(Output::ok(decision(result, witness), result.to_string()))
        }
        Command::Isomorphic { a, b, strict } => {
            let (s1, s2) = (load_tss(&a)?, load_tss(&b)?);
            let (result, w) = if strict {
                graph::isomorphic_tss_strict(&s1, &s2)?
            } else {
                graph::isomorphic_tss(&s1, &s2)?
            };
            let (g1, g2) = (build_graph(&s1)?, build_graph(&s2)?);
            let witness = w.map(|m| serde_json::to_value(m.to_witness(&g1, &g2)).expect("serializes"));
            Ok(Output::ok(decision(result, witness), result.to_string()))
        }
        Command::Picard { tss } => {
            let d = picard::picard_group(&load_tss(&tss)?)?;
            Ok(Output::ok(d.to_json(), d.pretty()))
        }
        Command::Statpic { tss } => {
            let g = picard::static_picard(&load_tss(&tss)?)?;
            let display = g.pretty();
            Ok(Output::ok(serde_json::to_value(&g).expect("serializes"), display))
        }
        Command::Compose { tss, a, b } => {
            let d = picard::picard_group(&load_tss(&tss)?)?;
            let (x, y) = (load_element(&d, &a)?, load_element(&d, &b)?);
            let z = d.compose(&x, &y)?;
            Ok(Output::ok(d.element_to_json(&z), "a · b"))
        }
        Command::Invert { tss, a } => {
            let d = picard::picard_group(&load_tss(&tss)?)?;
            let x = load_element(&d, &a)?;
            let z = d.invert(&x)?;
            Ok(Output::ok(d.element_to_json(&z), "a^-1"))
        }
        Command::Equal { tss, a, b } => {
            let d = picard::picard_group(&load_tss(&tss)?)?;
            let (x, y) = (load_element(&d, &a)?, load_element(&d, &b)?);
            let verdict = d.elements_equal(&x, &y)?;
            Ok(Output::ok(verdict.to_json(), verdict.to_string()))
        }
        Command::VerifyGroupoid {
            model,
            samples,
            tol,
            fd_tol,
            seed,
            check,
            perturb,
            lift,
        } => {
            if samples == 0 {
                return Err(Failure::usage("usage", "--samples must be at least 1"));
            }
            let opts = VerifyOptions {
                samples,
                tol,
                fd_tol,
                seed,
                ..VerifyOptions::default()
            };
            let report = verify(model.into(), &opts, check, perturb, lift)?;
            let pass = report.passed();
            let mut value = serde_json::to_value(&report).expect("serializes");
            value["pass"] = Value::Bool(pass);
            let failed: Vec<&str> = report
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| c.name.as_str())
                .collect();
            let display = if pass {
                format!("{}: all {} checks pass", report.model, report.checks.len())
            } else {
                format!("{}: failed {}", report.model, failed.join(", "))
            };
            Ok(Output {
                value,
                display,
                code: if pass { 0 } else { 1 },
            })
        }
        Command::ReportSymplectic { genus, boundary } => {
            let r = symplectic_surface_picard_report(SurfaceType::new(genus, 0, boundary));
            let display = r.relations.join("; ");
            Ok(Output::ok(serde_json::to_value(&r).expect("serializes"), display))
        }
    }
}

fn emit(mut value: Value, display: Option<String>, pretty: bool) {
    if let (Some(d), Value::Object(map)) = (display, &mut value) {
        map.insert("display".into(), Value::String(d));
    }
    let text = if pretty {
        serde_json::to_string_pretty(&value)
    } else {
        serde_json::to_string(&value)
    };
    // a closed pipe is not worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{}", text.expect("json values serialize"));
}

fn main() -> ExitCode {
    let pretty_requested = std::env::args().any(|a| a == "--pretty");
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                emit(json!({ "help": text }), None, pretty_requested);
                return ExitCode::SUCCESS;
            }
            eprintln!("{text}");
            emit(
                json!({ "error": { "kind": "usage", "message": text.trim_end() } }),
                None,
                pretty_requested,
            );
            return ExitCode::from(2);
        }
    };
    let pretty = cli.pretty;
    match run(cli) {
        Ok(out) => {
            emit(out.value, pretty.then_some(out.display), pretty);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            let mut err = json!({ "kind": f.kind, "message": f.message });
            if !f.detail.is_null() {
                err["detail"] = f.detail;
            }
            emit(json!({ "error": err }), None, pretty);
            ExitCode::from(f.code)
        }
    }
}
