//! Command-line front end: session files, command dispatch, reports.
//!
//! Exit codes: 0 success, 1 substantive failure (a violated axiom, a failed
//! construction, a strategy that is not rationalizable), 2 input error.

use crate::assessment::{
    check_a, check_e, check_i, check_ie, check_nt, check_s_i, Assessment, AssessmentFile,
    AxiomReport, DEFAULT_N_MAX,
};
use crate::bits::Event;
use crate::construct::{build, build_belief_lift, BuildError, BuildOutcome, Completion, Construction};
use crate::games::{
    layer_decompose, rationalizable, t_bullet, t_circ, GamesError,
    RationalizabilityResult, Strategy, StrategyFile,
};
use crate::identify::{largest_subtheory, subtheory_via_certainty, understood_implications, SubtheoryResult};
use crate::logic::{Atoms, Theory};
use crate::model::{represents, ModelFile, SubjectiveModel};
use crate::rational::{display_q, format_q, parse_q, Q};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(
    name = "contingent",
    version,
    about = "Check, model and rationalize likelihood assessments over propositional statements"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for randomized generators. Every command is deterministic, so
    /// the seed never changes a report.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Input files. Flags given on the command line replace the session's
/// entries of the same kind.
#[derive(Debug, Clone, Default, Args)]
pub struct Inputs {
    /// Session JSON naming the other inputs (paths relative to the session).
    #[arg(long)]
    pub session: Option<PathBuf>,
    #[arg(long)]
    pub assessment: Option<PathBuf>,
    #[arg(long)]
    pub theory: Option<PathBuf>,
    #[arg(long = "model")]
    pub models: Vec<PathBuf>,
    #[arg(long = "strategy")]
    pub strategies: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxiomArg {
    Nt,
    E,
    I,
    Ie,
    A,
    #[value(name = "s-i")]
    SI,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check axioms of the assessment; with models, also test representation.
    Check {
        /// Axioms to check; defaults to all (S-I only with a theory).
        #[arg(value_enum)]
        axioms: Vec<AxiomArg>,
        #[command(flatten)]
        inputs: Inputs,
        /// Largest family size for the IE check.
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
    },
    /// Build a subjective model that represents the assessment.
    Build {
        #[arg(value_parser = parse_construction)]
        construction: Construction,
        #[command(flatten)]
        inputs: Inputs,
        /// Complete an under-determined additive model by projecting the
        /// uniform assignment (additive-sound only).
        #[arg(long)]
        complete_maxent: bool,
        /// Write the model JSON here instead of into the report.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Report understood implications and, with a theory, the sub-theory
    /// the agent reasons with.
    Identify {
        #[command(flatten)]
        inputs: Inputs,
        /// Also derive the sub-theory from the certain members of the theory.
        #[arg(long)]
        via_certainty: bool,
    },
    /// Decide whether strategies are Choquet best responses to some
    /// likelihood appraisal on the first model's states.
    Rationalize {
        #[command(flatten)]
        inputs: Inputs,
        /// Strategy to test, by name or 1-based position; defaults to all.
        #[arg(long)]
        choice: Option<String>,
        /// Only allow additive appraisals.
        #[arg(long)]
        additive_only: bool,
        /// Use weak instead of strict pointwise dominance.
        #[arg(long)]
        weak: bool,
    },
    /// Choquet integrals of a payoff vector or of strategies' acts.
    Choquet {
        #[command(flatten)]
        inputs: Inputs,
        /// Comma-separated payoffs, one per state of the first model.
        #[arg(long)]
        payoff: Option<String>,
        /// Exact additive model to carry strategies into.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Möbius masses of each model's appraisal.
    Mobius {
        #[command(flatten)]
        inputs: Inputs,
    },
}

fn parse_construction(s: &str) -> Result<Construction, String> {
    s.parse()
}

/// Result of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub code: i32,
    pub json: Value,
    pub text: String,
}

impl Report {
    fn new(code: i32, json: Value, text: String) -> Self {
        Report { code, json, text }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
        }
    }
}

#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Res<T> = Result<T, InputError>;

fn input_error(msg: String) -> Report {
    Report::new(2, json!({ "error": msg }), format!("error: {msg}\n"))
}

/// Parses arguments, runs the command, prints the report and returns the
/// exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let report = run(&cli);
    let out = report.render(cli.format);
    if report.code == 2 && cli.format == Format::Text {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    report.code
}

pub fn run(cli: &Cli) -> Report {
    let result = match &cli.command {
        Command::Check {
            axioms,
            inputs,
            n_max,
        } => cmd_check(inputs, axioms, *n_max),
        Command::Build {
            construction,
            inputs,
            complete_maxent,
            output,
        } => cmd_build(inputs, *construction, *complete_maxent, output.as_deref()),
        Command::Identify {
            inputs,
            via_certainty,
        } => cmd_identify(inputs, *via_certainty),
        Command::Rationalize {
            inputs,
            choice,
            additive_only,
            weak,
        } => cmd_rationalize(inputs, choice.as_deref(), *additive_only, *weak),
        Command::Choquet {
            inputs,
            payoff,
            target,
        } => cmd_choquet(inputs, payoff.as_deref(), target.as_deref()),
        Command::Mobius { inputs } => cmd_mobius(inputs),
    };
    result.unwrap_or_else(|e| input_error(e.0))
}

// ---------------------------------------------------------------- inputs

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Source<T> {
    Path(String),
    Inline(T),
}

/// `{"atoms": [...]?, "generators": ["<formula>", ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoryFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atoms: Option<Vec<String>>,
    pub generators: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SessionFile {
    #[serde(default)]
    atoms: Option<Vec<String>>,
    #[serde(default)]
    assessment: Option<Source<AssessmentFile>>,
    #[serde(default)]
    theory: Option<Source<TheoryFile>>,
    #[serde(default)]
    models: Vec<Source<ModelFile>>,
    #[serde(default)]
    strategies: Vec<Source<StrategyFile>>,
    #[serde(default)]
    choice: Option<String>,
}

#[derive(Default)]
struct Loaded {
    atoms: Option<Atoms>,
    assessment: Option<Assessment>,
    theory: Option<Theory>,
    models: Vec<(String, SubjectiveModel)>,
    strategies: Vec<(String, Strategy)>,
    choice: Option<String>,
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn context<T, E: std::fmt::Display>(what: &str, r: Result<T, E>) -> Res<T> {
    r.map_err(|e| InputError(format!("{what}: {e}")))
}

/// A file's contents (or inline value) with a name for reports.
fn resolve<T: serde::de::DeserializeOwned>(
    src: Source<T>,
    base: &Path,
    fallback: String,
) -> Res<(String, T)> {
    match src {
        Source::Path(p) => {
            let path = base.join(&p);
            let text = read(&path)?;
            let value = context(&path.display().to_string(), serde_json::from_str(&text))?;
            Ok((stem(&path), value))
        }
        Source::Inline(v) => Ok((fallback, v)),
    }
}

fn flag<T>(p: &Path) -> Source<T> {
    Source::Path(p.to_string_lossy().into_owned())
}

fn same_atoms(a: &Atoms, b: &Atoms, what: &str) -> Res<()> {
    if a.names() == b.names() {
        Ok(())
    } else {
        Err(InputError(format!(
            "{what} declares atoms [{}] but the session uses [{}]",
            b.names().join(", "),
            a.names().join(", ")
        )))
    }
}

fn load(inputs: &Inputs) -> Res<Loaded> {
    let mut session = SessionFile {
        atoms: None,
        assessment: None,
        theory: None,
        models: Vec::new(),
        strategies: Vec::new(),
        choice: None,
    };
    let mut base = PathBuf::from(".");
    if let Some(path) = &inputs.session {
        let text = read(path)?;
        session = context(&path.display().to_string(), serde_json::from_str(&text))?;
        base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    }
    let cwd = PathBuf::from(".");

    let mut out = Loaded {
        choice: session.choice,
        ..Loaded::default()
    };
    if let Some(names) = &session.atoms {
        out.atoms = Some(Atoms::new(names)?);
    }

    let assessment = match &inputs.assessment {
        Some(p) => Some((flag(p), cwd.as_path())),
        None => session.assessment.map(|s| (s, base.as_path())),
    };
    if let Some((src, dir)) = assessment {
        let (name, file) = resolve::<AssessmentFile>(src, dir, "assessment".into())?;
        let a = context(&name, file.into_assessment())?;
        match &out.atoms {
            Some(atoms) => same_atoms(atoms, a.atoms(), &name)?,
            None => out.atoms = Some(a.atoms().clone()),
        }
        out.assessment = Some(a);
    }

    let models: Vec<(Source<ModelFile>, &Path)> = if inputs.models.is_empty() {
        session.models.into_iter().map(|s| (s, base.as_path())).collect()
    } else {
        inputs.models.iter().map(|p| (flag(p), cwd.as_path())).collect()
    };
    for (i, (src, dir)) in models.into_iter().enumerate() {
        let (name, file) = resolve::<ModelFile>(src, dir, format!("model{}", i + 1))?;
        let m = context(&name, file.into_model(out.atoms.as_ref()))?;
        match &out.atoms {
            Some(atoms) => same_atoms(atoms, m.atoms(), &name)?,
            None => out.atoms = Some(m.atoms().clone()),
        }
        out.models.push((name, m));
    }

    let theory = match &inputs.theory {
        Some(p) => Some((flag(p), cwd.as_path())),
        None => session.theory.map(|s| (s, base.as_path())),
    };
    if let Some((src, dir)) = theory {
        let (name, file) = resolve::<TheoryFile>(src, dir, "theory".into())?;
        let atoms = match (&file.atoms, &out.atoms) {
            (Some(names), Some(atoms)) => {
                let own = Atoms::new(names)?;
                same_atoms(atoms, &own, &name)?;
                own
            }
            (Some(names), None) => Atoms::new(names)?,
            (None, Some(atoms)) => atoms.clone(),
            (None, None) => return Err(InputError(format!("{name}: no atom declaration"))),
        };
        let mut gens = Vec::with_capacity(file.generators.len());
        for g in &file.generators {
            gens.push(context(&format!("{name}: `{g}`"), atoms.parse(g))?);
        }
        out.theory = Some(context(&name, Theory::new(&atoms, gens))?);
        out.atoms.get_or_insert(atoms);
    }

    let strategies: Vec<(Source<StrategyFile>, &Path)> = if inputs.strategies.is_empty() {
        session.strategies.into_iter().map(|s| (s, base.as_path())).collect()
    } else {
        inputs.strategies.iter().map(|p| (flag(p), cwd.as_path())).collect()
    };
    for (i, (src, dir)) in strategies.into_iter().enumerate() {
        let (stem_name, file) = resolve::<StrategyFile>(src, dir, format!("s{}", i + 1))?;
        let atoms = out
            .atoms
            .as_ref()
            .ok_or_else(|| InputError(format!("{stem_name}: no atom declaration")))?;
        let name = file.name.clone().unwrap_or(stem_name);
        let mut payoffs = Vec::with_capacity(file.payoffs.len());
        for (formula, value) in &file.payoffs {
            payoffs.push((formula.as_str(), context(&name, parse_q(value))?));
        }
        let s = context(&name, Strategy::from_texts(atoms, &payoffs))?;
        if out.strategies.iter().any(|(n, _)| *n == name) {
            return Err(InputError(format!("two strategies are named `{name}`")));
        }
        out.strategies.push((name, s));
    }
    Ok(out)
}

fn need_assessment(l: &Loaded) -> Res<&Assessment> {
    l.assessment
        .as_ref()
        .ok_or_else(|| InputError("an assessment is required (--assessment or --session)".into()))
}

fn need_model(l: &Loaded) -> Res<&(String, SubjectiveModel)> {
    l.models
        .first()
        .ok_or_else(|| InputError("a model is required (--model or --session)".into()))
}

// --------------------------------------------------------------- helpers

fn q_json(v: &Q) -> Value {
    Value::String(format_q(v))
}

fn qs_json(vs: &[Q]) -> Value {
    Value::Array(vs.iter().map(q_json).collect())
}

fn qs_text(vs: &[Q]) -> String {
    let parts: Vec<String> = vs.iter().map(display_q).collect();
    format!("({})", parts.join(", "))
}

fn axiom_text(out: &mut String, r: &AxiomReport) {
    let status = if r.pass { "pass" } else { "FAIL" };
    let _ = writeln!(out, "{} ({}): {status}", r.axiom.id(), r.axiom.name());
    for v in &r.violations {
        let _ = writeln!(
            out,
            "  [{}]: {} vs {}  ({})",
            v.formulas.join(", "),
            display_q(&v.lhs),
            display_q(&v.rhs),
            v.rule
        );
    }
    if r.untestable_count > 0 {
        let _ = writeln!(
            out,
            "  {} instance(s) untestable: compound missing from the universe",
            r.untestable_count
        );
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

// -------------------------------------------------------------- commands

fn cmd_check(inputs: &Inputs, axioms: &[AxiomArg], n_max: usize) -> Res<Report> {
    let l = load(inputs)?;
    let a = need_assessment(&l)?;
    let mut wanted = axioms.to_vec();
    if wanted.is_empty() {
        wanted = vec![AxiomArg::Nt, AxiomArg::E, AxiomArg::I, AxiomArg::Ie, AxiomArg::A];
        if l.theory.is_some() {
            wanted.push(AxiomArg::SI);
        }
    }
    wanted.dedup();
    let mut reports = Vec::new();
    for ax in wanted {
        reports.push(match ax {
            AxiomArg::Nt => check_nt(a),
            AxiomArg::E => check_e(a),
            AxiomArg::I => check_i(a),
            AxiomArg::Ie => check_ie(a, n_max),
            AxiomArg::A => check_a(a),
            AxiomArg::SI => {
                let t = l
                    .theory
                    .as_ref()
                    .ok_or_else(|| InputError("s-i needs a theory (--theory or --session)".into()))?;
                check_s_i(a, t)
            }
        });
    }
    let mut text = String::new();
    for r in &reports {
        axiom_text(&mut text, r);
    }
    let mut pass = reports.iter().all(|r| r.pass);

    let universe: Vec<_> = a.entries().iter().map(|e| e.formula.clone()).collect();
    let mut models = Vec::new();
    for (name, m) in &l.models {
        let rep = represents(m, a);
        pass &= rep.represents;
        let truth = m.classify_truth(&universe);
        let lambda = m.classify_lambda();
        let _ = writeln!(
            text,
            "model {name}: {}",
            if rep.represents { "represents π" } else { "does NOT represent π" }
        );
        for r in rep.failures() {
            let _ = writeln!(
                text,
                "  {}: π = {}, λ(t(φ)) = {}",
                r.formula,
                display_q(&r.pi),
                r.lambda.as_ref().map_or("undefined".into(), display_q)
            );
        }
        let _ = writeln!(
            text,
            "  t: exact={} monotone={} symmetric={} and-distributive={} sound={}",
            truth.exact, truth.monotone, truth.symmetric, truth.and_distributive, truth.sound
        );
        for w in &truth.witnesses {
            let _ = writeln!(text, "    {} fails at [{}] -> [{}]", w.property, w.formulas.join(", "), w.events.join(", "));
        }
        let lambda_json = match &lambda {
            Ok(c) => {
                let _ = writeln!(
                    text,
                    "  λ: monotone={} symmetric={} totally-monotone={} additive={} (Σ has {} atoms)",
                    c.monotone, c.symmetric, c.totally_monotone, c.additive, c.sigma_atoms
                );
                for w in &c.witnesses {
                    let _ = writeln!(text, "    {} fails at [{}]", w.property, w.events.join(", "));
                }
                to_json(c)
            }
            Err(e) => {
                let _ = writeln!(text, "  λ: not classified ({e})");
                json!({ "error": e.to_string() })
            }
        };
        models.push(json!({
            "name": name,
            "represents": rep.represents,
            "residuals": to_json(&rep.residuals),
            "truth": to_json(&truth),
            "lambda": lambda_json,
        }));
    }
    let mut json = json!({ "pass": pass, "axioms": to_json(&reports) });
    if !models.is_empty() {
        json["models"] = Value::Array(models);
    }
    Ok(Report::new(if pass { 0 } else { 1 }, json, text))
}

fn certificate_text(out: &mut String, b: &BuildOutcome) {
    for c in &b.certificate {
        let _ = writeln!(out, "  {}: {}", c.name, if c.holds { "holds" } else { "fails" });
    }
}

fn build_failure(construction: Construction, e: BuildError) -> Res<Report> {
    let mut text = format!("build {construction} failed: {e}\n");
    let mut json = json!({ "construction": construction.id(), "built": false, "error": e.to_string() });
    match &e {
        BuildError::Axiom(r) => {
            axiom_text(&mut text, r);
            json["violated"] = to_json(r);
        }
        BuildError::NotSound(w) => json["witnesses"] = to_json(w),
        BuildError::Model(_) | BuildError::TooLarge(_) => return Err(InputError(e.to_string())),
        _ => {}
    }
    Ok(Report::new(1, json, text))
}

fn cmd_build(
    inputs: &Inputs,
    construction: Construction,
    complete: bool,
    output: Option<&Path>,
) -> Res<Report> {
    let l = load(inputs)?;
    let completion = if complete {
        Completion::NearestUniform
    } else {
        Completion::Refuse
    };
    let result = match (construction, l.models.first()) {
        (Construction::BeliefLift, Some((_, m))) => build_belief_lift(m),
        _ => build(need_assessment(&l)?, construction, completion),
    };
    let b = match result {
        Ok(b) => b,
        Err(e) => return build_failure(construction, e),
    };
    let file = b.model.to_file();
    let mut text = format!(
        "built {construction}: {} states, {} truth entries\n",
        b.model.state_count(),
        b.model.truth_entries().len()
    );
    certificate_text(&mut text, &b);
    let mut json = json!({
        "construction": construction.id(),
        "built": true,
        "certificate": to_json(&b.certificate),
    });
    let pretty = serde_json::to_string_pretty(&file).expect("model files serialize") + "\n";
    match output {
        Some(path) => {
            std::fs::write(path, &pretty).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            let _ = writeln!(text, "model written to {}", path.display());
            json["output"] = Value::String(path.display().to_string());
        }
        None => {
            text.push_str(&pretty);
            json["model"] = to_json(&file);
        }
    }
    Ok(Report::new(0, json, text))
}

fn subtheory_json(r: &SubtheoryResult, atoms: &Atoms) -> Value {
    let models: Vec<String> = r
        .subtheory
        .models
        .iter()
        .map(|v| crate::construct::valuation_label(atoms, v))
        .collect();
    json!({
        "generators": r.subtheory.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "from_theory": r.subtheory.from_theory,
        "models": models,
        "unique": r.unique,
        "candidates": r.candidates.iter().map(|c| c.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "verified": r.verification.pass,
        "diagnostics": r.diagnostics,
    })
}

fn subtheory_text(out: &mut String, label: &str, r: &SubtheoryResult) {
    let gens: Vec<String> = r.subtheory.generators.iter().map(|g| g.to_string()).collect();
    let _ = writeln!(
        out,
        "{label}: closure of {{{}}}{}",
        gens.join(", "),
        if r.unique { "" } else { " (not unique)" }
    );
    for c in &r.candidates {
        let g: Vec<String> = c.generators.iter().map(|g| g.to_string()).collect();
        let _ = writeln!(out, "  candidate: {{{}}}", g.join(", "));
    }
    let _ = writeln!(out, "  S-I on the universe: {}", if r.verification.pass { "pass" } else { "FAIL" });
    for d in &r.diagnostics {
        let _ = writeln!(out, "  {d}");
    }
}

fn cmd_identify(inputs: &Inputs, via_certainty: bool) -> Res<Report> {
    let l = load(inputs)?;
    let a = need_assessment(&l)?;
    let mut text = String::new();
    let mut code = 0;
    let mut json = json!({});
    match understood_implications(a) {
        Ok(verdicts) => {
            let bad: Vec<_> = verdicts.iter().filter(|v| !v.understood).collect();
            let _ = writeln!(
                text,
                "{} valid implication(s) within the universe, {} not understood",
                verdicts.len(),
                bad.len()
            );
            for v in &bad {
                let _ = writeln!(
                    text,
                    "  {} ⟹ {} not understood: π({}) − π({}) = {}",
                    v.antecedent,
                    v.consequent,
                    v.consequent,
                    v.antecedent,
                    display_q(&v.margin)
                );
            }
            json["implications"] = to_json(&verdicts);
            json["not_understood"] = Value::from(bad.len());
        }
        Err(e) => {
            code = 1;
            let _ = writeln!(text, "implications: {e}");
            json["implications_error"] = Value::String(e.to_string());
        }
    }
    if let Some(t) = &l.theory {
        match largest_subtheory(a, t) {
            Ok(r) => {
                subtheory_text(&mut text, "largest sub-theory", &r);
                json["subtheory"] = subtheory_json(&r, a.atoms());
            }
            Err(e) => {
                code = 1;
                let _ = writeln!(text, "largest sub-theory: {e}");
                if let crate::identify::IdentifyError::Axiom(r) = &e {
                    axiom_text(&mut text, r);
                }
                json["subtheory_error"] = Value::String(e.to_string());
            }
        }
        if via_certainty {
            match subtheory_via_certainty(a, t) {
                Ok(r) => {
                    subtheory_text(&mut text, "sub-theory via certainty", &r);
                    json["via_certainty"] = subtheory_json(&r, a.atoms());
                }
                Err(e) => {
                    code = 1;
                    let _ = writeln!(text, "sub-theory via certainty refused: {e}");
                    match &e {
                        crate::identify::IdentifyError::Axiom(r)
                        | crate::identify::IdentifyError::Verification(r) => {
                            axiom_text(&mut text, r);
                            json["via_certainty_report"] = to_json(r);
                        }
                        _ => {}
                    }
                    json["via_certainty_error"] = Value::String(e.to_string());
                }
            }
        }
    } else if via_certainty {
        return Err(InputError("--via-certainty needs a theory".into()));
    }
    Ok(Report::new(code, json, text))
}

fn games_input(e: GamesError) -> InputError {
    InputError(e.to_string())
}

fn rationalize_one(
    names: &[String],
    index: usize,
    r: &RationalizabilityResult,
    base: &SubjectiveModel,
    text: &mut String,
) -> Value {
    let name = &names[index];
    let coords: Vec<String> = r.coordinates.iter().map(|e| base.event_label(e)).collect();
    let mut json = json!({
        "strategy": name,
        "rationalizable": r.rationalizable,
        "mode": to_json(&r.mode),
        "additive_only": r.additive_only,
        "lp_value": q_json(&r.dominance.value),
    });
    if !r.additive_only {
        json["coordinates"] = to_json(&coords);
    }
    if r.rationalizable {
        let _ = writeln!(text, "{name}: rationalizable");
        let w = r.witness.as_ref().expect("rationalizable results carry a witness");
        let lambda: Vec<(String, Value)> = match w.appraisal() {
            crate::model::Appraisal::Table(t) => t
                .iter()
                .map(|(e, v)| (base.event_label(e), q_json(v)))
                .collect(),
            crate::model::Appraisal::Additive(m) => base
                .states()
                .iter()
                .zip(m)
                .map(|(s, v)| (format!("{{{s}}}"), q_json(v)))
                .collect(),
        };
        let _ = writeln!(
            text,
            "  witness λ: {}",
            lambda
                .iter()
                .map(|(e, v)| format!("{e}={}", v.as_str().map(display_text).unwrap_or_default()))
                .collect::<Vec<_>>()
                .join(" ")
        );
        for (n, v) in names.iter().zip(&r.values) {
            let _ = writeln!(text, "  ∫ {n} = {}", display_q(v));
        }
        json["witness"] = Value::Object(lambda.into_iter().collect());
        json["values"] = Value::Object(
            names
                .iter()
                .zip(&r.values)
                .map(|(n, v)| (n.clone(), q_json(v)))
                .collect(),
        );
    } else {
        let mu = r.dominance.mixture.as_ref().expect("dominated results carry a mixture");
        let _ = writeln!(
            text,
            "{name}: NOT rationalizable; dominated by {} (margin {})",
            names
                .iter()
                .zip(mu)
                .map(|(n, m)| format!("{}·{n}", display_q(m)))
                .collect::<Vec<_>>()
                .join(" + "),
            display_q(&r.dominance.value)
        );
        json["mixture"] = Value::Object(
            names
                .iter()
                .zip(mu)
                .map(|(n, m)| (n.clone(), q_json(m)))
                .collect(),
        );
    }
    json
}

fn display_text(s: &str) -> String {
    parse_q(s).map(|q| display_q(&q)).unwrap_or_else(|_| s.to_string())
}

fn cmd_rationalize(
    inputs: &Inputs,
    choice: Option<&str>,
    additive_only: bool,
    weak: bool,
) -> Res<Report> {
    let l = load(inputs)?;
    let (_, base) = need_model(&l)?;
    if l.strategies.is_empty() {
        return Err(InputError("at least one strategy is required".into()));
    }
    let names: Vec<String> = l.strategies.iter().map(|(n, _)| n.clone()).collect();
    let strategies: Vec<Strategy> = l.strategies.iter().map(|(_, s)| s.clone()).collect();
    let choice = choice.map(str::to_string).or(l.choice.clone());
    let indices: Vec<usize> = match &choice {
        None => (0..names.len()).collect(),
        Some(c) => {
            let i = names
                .iter()
                .position(|n| n == c)
                .or_else(|| c.parse::<usize>().ok().filter(|&i| i >= 1 && i <= names.len()).map(|i| i - 1))
                .ok_or_else(|| InputError(format!("no strategy named `{c}`")))?;
            vec![i]
        }
    };
    let mode = if weak {
        crate::games::DominanceMode::Weak
    } else {
        crate::games::DominanceMode::Strict
    };
    let mut text = String::new();
    let mut results = Vec::new();
    let mut all = true;
    for i in indices {
        let r = rationalizable(i, &strategies, base, mode, additive_only).map_err(games_input)?;
        all &= r.rationalizable;
        results.push(rationalize_one(&names, i, &r, base, &mut text));
    }
    let json = json!({ "all_rationalizable": all, "results": results });
    Ok(Report::new(if all { 0 } else { 1 }, json, text))
}

fn cmd_choquet(inputs: &Inputs, payoff: Option<&str>, target: Option<&Path>) -> Res<Report> {
    let l = load(inputs)?;
    let (name, m) = need_model(&l)?;
    let mut text = String::new();
    if let Some(p) = payoff {
        let x: Vec<Q> = p
            .split(',')
            .map(|s| parse_q(s.trim()))
            .collect::<Result<_, _>>()?;
        let v = m.choquet(&x)?;
        let _ = writeln!(text, "∫ {} dλ over {name} = {}", qs_text(&x), display_q(&v));
        return Ok(Report::new(
            0,
            json!({ "model": name, "payoff": qs_json(&x), "value": q_json(&v) }),
            text,
        ));
    }
    if l.strategies.is_empty() {
        return Err(InputError("give --payoff or at least one strategy".into()));
    }
    let target = match target {
        Some(path) => {
            let file: ModelFile = context(&path.display().to_string(), serde_json::from_str(&read(path)?))?;
            let t = context(&path.display().to_string(), file.into_model(Some(m.atoms())))?;
            same_atoms(m.atoms(), t.atoms(), &path.display().to_string())?;
            Some((stem(path), t))
        }
        None => None,
    };
    let mut code = 0;
    let mut results = Vec::new();
    for (sname, s) in &l.strategies {
        let x = t_circ(m, s).map_err(games_input)?;
        let layers = layer_decompose(&x, m).map_err(games_input)?;
        let v = m.choquet(&x)?;
        let _ = writeln!(text, "{sname}: t∘ = {} on {name}", qs_text(&x));
        let _ = writeln!(
            text,
            "  layers: {}",
            layers
                .iter()
                .map(|l| format!("({}, {})", display_q(&l.alpha), l.formula))
                .collect::<Vec<_>>()
                .join(" ")
        );
        let _ = writeln!(text, "  ∫ dλ = {}", display_q(&v));
        let mut entry = json!({
            "strategy": sname,
            "t_circ": qs_json(&x),
            "layers": to_json(&layers),
            "value": q_json(&v),
        });
        if let Some((tname, t)) = &target {
            let y = t_bullet(m, t, s).map_err(games_input)?;
            let tv = t.choquet(&y)?;
            let equal = tv == v;
            if !equal {
                code = 1;
            }
            let _ = writeln!(text, "  t• = {} on {tname}, ∫ dλ′ = {}{}", qs_text(&y), display_q(&tv), if equal { "" } else { "  MISMATCH" });
            entry["t_bullet"] = qs_json(&y);
            entry["target_value"] = q_json(&tv);
            entry["equal"] = Value::Bool(equal);
        }
        results.push(entry);
    }
    Ok(Report::new(code, json!({ "model": name, "results": results }), text))
}

fn cmd_mobius(inputs: &Inputs) -> Res<Report> {
    let l = load(inputs)?;
    need_model(&l)?;
    let mut text = String::new();
    let mut out = Vec::new();
    for (name, m) in &l.models {
        let (atoms, f) = m.sigma_function()?;
        let masses = crate::model::mobius(&f);
        let n = m.state_count();
        let label = |mask: u64| m.event_label(&crate::bits::union_of_atoms(n, &atoms, mask));
        let belief = masses.first_negative().is_none();
        let _ = writeln!(
            text,
            "{name}: {} atom(s) in Σ, {}",
            atoms.len(),
            if belief { "belief function" } else { "not a belief function" }
        );
        let mut focal = serde_json::Map::new();
        for (mask, v) in masses.focal_sets() {
            let _ = writeln!(text, "  m({}) = {}", label(mask), display_q(v));
            focal.insert(label(mask), q_json(v));
        }
        out.push(json!({
            "model": name,
            "sigma_atoms": atoms.iter().map(|e: &Event| m.event_label(e)).collect::<Vec<_>>(),
            "belief_function": belief,
            "total": q_json(&masses.total()),
            "masses": Value::Object(focal),
        }));
    }
    Ok(Report::new(0, json!({ "models": out }), text))
}
