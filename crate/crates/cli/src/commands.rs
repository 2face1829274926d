use std::fmt::Write as _;
use std::fs;

use anyhow::{Context, Result};
use serde_json::{json, Value};

use parmod_core::engine::{self, Domain, Interpretation};
use parmod_core::instantiate::{collective_modular, collective_union, plan_kappa};
use parmod_core::modular::{self, CoherenceReport};
use parmod_core::text::parse_atoms;
use parmod_core::{
    parse_control, parse_program, ClingoProgram, ControlPlan, IntensionalityStatement, ModularProgram, Options,
    PredAtom, Program,
};

use crate::{Command, Common, Mode, Output};

/// What a command prints and the exit status it ends with.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn verdict(stdout: String, holds: bool) -> Outcome {
        Outcome {
            stdout,
            stderr: String::new(),
            code: if holds { 0 } else { 1 },
        }
    }
}

struct Loaded {
    program: ClingoProgram,
    plan: ControlPlan,
}

fn load(args: &Common) -> Result<Loaded> {
    let text = fs::read_to_string(&args.program)
        .with_context(|| format!("cannot read {}", args.program.display()))?;
    let program = parse_program(&text).with_context(|| format!("in {}", args.program.display()))?;
    let plan = match &args.control {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            parse_control(&text, &program, &args.overrides()).with_context(|| format!("in {}", path.display()))?
        }
        None => ControlPlan::base_only(),
    };
    Ok(Loaded { program, plan })
}

impl Loaded {
    fn union(&self) -> Result<(IntensionalityStatement, Program)> {
        let pi = collective_union(&self.program, &self.plan.specs)?;
        let kappa = plan_kappa(&self.plan, &pi)?;
        Ok((kappa, pi))
    }

    fn modular(&self) -> Result<ModularProgram> {
        Ok(collective_modular(&self.program, &self.plan)?)
    }

    /// The declared domain, or the smallest interval covering 0 and every
    /// numeral of the selected rules.
    fn domain(&self, pi: &Program) -> Result<Domain> {
        let (lo, hi) = self.plan.domain.unwrap_or_else(|| Domain::hull(pi));
        Ok(Domain::for_program(lo, hi, pi)?)
    }
}

fn sets_json(sets: &[Interpretation]) -> Value {
    Value::Array(sets.iter().map(|i| json!(i.to_strings())).collect())
}

fn machine(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
    s.push('\n');
    s
}

fn coherence_json(r: &CoherenceReport) -> Value {
    json!({
        "coherent": r.coherent,
        "violations": r.violations.iter().map(|v| json!({
            "kind": v.kind.as_str(),
            "detail": v.detail,
        })).collect::<Vec<_>>(),
    })
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Parse(args) => parse(args),
        Command::Instantiate(args) => instantiate(args),
        Command::Solve(args) => solve(args),
        Command::CheckCoherence(args) => check_coherence(args),
        Command::Compare(args) => compare(args),
        Command::CheckModel(args) => check_model(args),
    }
}

fn parse(args: &Common) -> Result<Outcome> {
    let loaded = load(args)?;
    let r = &loaded.program;
    let mut listing = Vec::new();
    for (name, params) in &r.declarations {
        let rules: Vec<String> = r.subprogram(name)?.rules().map(|rule| rule.to_string()).collect();
        listing.push((name, params, rules));
    }
    let stdout = match args.output {
        Output::Machine => machine(json!({
            "subprograms": listing.iter().map(|(name, params, rules)| json!({
                "name": name,
                "parameters": params,
                "rules": rules,
            })).collect::<Vec<_>>(),
        })),
        Output::Text => {
            let mut s = String::new();
            for (name, params, rules) in &listing {
                if params.is_empty() {
                    writeln!(s, "#program {name}.")?;
                } else {
                    writeln!(s, "#program {name}({}).", params.join(","))?;
                }
                for rule in rules {
                    writeln!(s, "  {rule}")?;
                }
            }
            s
        }
    };
    Ok(Outcome::ok(stdout))
}

fn instantiate(args: &Common) -> Result<Outcome> {
    let loaded = load(args)?;
    let stdout = match args.mode {
        Mode::Union => {
            let (_, pi) = loaded.union()?;
            match args.output {
                Output::Text => pi.to_string(),
                Output::Machine => machine(json!({
                    "rules": pi.rules().map(|r| r.to_string()).collect::<Vec<_>>(),
                })),
            }
        }
        Mode::Modular => {
            let p = loaded.modular()?;
            match args.output {
                Output::Text => p.to_string(),
                Output::Machine => machine(json!({
                    "kappa": p.kappa.to_string(),
                    "modules": p.modules.iter().map(|m| json!({
                        "label": m.label,
                        "kappa": m.kappa.to_string(),
                        "rules": m.pi.rules().map(|r| r.to_string()).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                })),
            }
        }
    };
    Ok(Outcome::ok(stdout))
}

fn options(args: &Common) -> Options {
    Options { cap: args.cap }
}

fn solve(args: &Common) -> Result<Outcome> {
    let loaded = load(args)?;
    let sets = match args.mode {
        Mode::Union => {
            let (kappa, pi) = loaded.union()?;
            let dom = loaded.domain(&pi)?;
            engine::enumerate_kappa_stable_with(&kappa, &pi, &dom, args.engine, options(args))?
        }
        Mode::Modular => {
            let p = loaded.modular()?;
            let dom = loaded.domain(&p.union_program())?;
            modular::modular_answer_sets_with(&p, &dom, args.engine, options(args))?
        }
    };
    let stdout = match args.output {
        Output::Machine => machine(json!({ "answer_sets": sets_json(&sets) })),
        Output::Text => sets.iter().map(|i| format!("{i}\n")).collect(),
    };
    Ok(Outcome {
        stdout,
        stderr: if sets.is_empty() { "UNSATISFIABLE\n".into() } else { String::new() },
        code: if sets.is_empty() { 1 } else { 0 },
    })
}

fn check_coherence(args: &Common) -> Result<Outcome> {
    let loaded = load(args)?;
    let p = loaded.modular()?;
    let report = modular::is_coherent(&p);
    let stdout = match args.output {
        Output::Text => report.to_string(),
        Output::Machine => machine(coherence_json(&report)),
    };
    Ok(Outcome::verdict(stdout, report.coherent))
}

fn compare(args: &Common) -> Result<Outcome> {
    let loaded = load(args)?;
    let p = loaded.modular()?;
    let dom = loaded.domain(&p.union_program())?;
    let report = modular::theorem1_check_with(&p, &dom, args.engine, options(args))?;
    let stdout = match args.output {
        Output::Text => report.to_string(),
        Output::Machine => machine(json!({
            "coherence": coherence_json(&report.coherence),
            "modular_sets": sets_json(&report.modular_sets),
            "union_sets": sets_json(&report.union_sets),
            "equal": report.equal,
            "only_modular": sets_json(&report.only_modular),
            "only_union": sets_json(&report.only_union),
        })),
    };
    let mut outcome = Outcome::verdict(stdout, report.equal);
    if !report.coherence.coherent {
        outcome.stderr = "warning: the modular program is not coherent; the two sides need not agree\n".into();
    }
    Ok(outcome)
}

fn check_model(args: &Common) -> Result<Outcome> {
    let loaded = load(args)?;
    let text = args.model.as_deref().context("check-model needs --model")?;
    let atoms: Vec<PredAtom> = parse_atoms(text)?
        .iter()
        .map(PredAtom::eval_ground)
        .collect::<parmod_core::Result<_>>()?;
    let i = Interpretation::new(atoms)?;
    let engine = match args.engine {
        parmod_core::Engine::Brute => parmod_core::Engine::Brute,
        _ => parmod_core::Engine::Reduct,
    };
    let (holds, yes, no) = match args.mode {
        Mode::Union => {
            let (kappa, pi) = loaded.union()?;
            let dom = loaded.domain(&pi)?;
            let holds = engine::is_kappa_stable_with(&i, &kappa, &pi, &dom, engine, options(args))?;
            (holds, "kappa-stable model", "not a kappa-stable model")
        }
        Mode::Modular => {
            let p = loaded.modular()?;
            let dom = loaded.domain(&p.union_program())?;
            let holds = modular::is_modular_answer_set_with(&i, &p, &dom, engine, options(args))?;
            (
                holds,
                "answer set of the modular program",
                "not an answer set of the modular program",
            )
        }
    };
    let verdict = if holds { yes } else { no };
    let stdout = match args.output {
        Output::Text => format!("{verdict}\n"),
        Output::Machine => machine(json!({ "holds": holds, "verdict": verdict })),
    };
    Ok(Outcome::verdict(stdout, holds))
}
