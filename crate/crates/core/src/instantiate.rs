//! Valuations, parametric modules and the two readings of a control plan:
//! the union of instantiated subprograms, and the modular program made of
//! one module per instance.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::intensional::{check_requirement, IntensionalityStatement, ParametricIntensionality};
use crate::syntax::{Predicate, Program, Rule, Term};
use crate::text::{ClingoProgram, ControlPlan, SubprogramSpec};

/// A map from placeholders to precomputed terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation(BTreeMap<String, Term>);

impl Valuation {
    pub fn new(pairs: impl IntoIterator<Item = (String, Term)>) -> Result<Self> {
        let map: BTreeMap<String, Term> = pairs.into_iter().collect();
        if let Some(t) = map.values().find(|t| !t.is_precomputed()) {
            return Err(Error::NotPrecomputed(t.to_string()));
        }
        Ok(Valuation(map))
    }

    pub fn get(&self, placeholder: &str) -> Option<&Term> {
        self.0.get(placeholder)
    }

    pub fn as_map(&self) -> &BTreeMap<String, Term> {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn covers(&self, placeholders: &BTreeSet<String>) -> Result<()> {
        match placeholders.iter().find(|p| !self.0.contains_key(*p)) {
            Some(p) => Err(Error::UnboundPlaceholder(p.clone())),
            None => Ok(()),
        }
    }

    /// Replaces placeholder occurrences. No simplification happens, so
    /// `k+1` under `k ↦ 42` becomes `42+1`.
    pub fn apply_term(&self, t: &Term) -> Term {
        t.replace_symbols(&self.0)
    }

    pub fn apply_rule(&self, rule: &Rule) -> Result<Rule> {
        let r = rule.map_terms(&mut |t| self.apply_term(t));
        Rule::new(r.head, r.body)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}↦{v}")).collect();
        write!(f, "({})", items.join(","))
    }
}

/// `v(Π)` for a program over placeholders `placeholders`.
pub fn apply_valuation(
    pi: &Program,
    v: &Valuation,
    placeholders: &BTreeSet<String>,
) -> Result<Program> {
    let used: BTreeSet<String> = pi
        .rules()
        .flat_map(Rule::symbols)
        .filter(|s| placeholders.contains(s))
        .collect();
    v.covers(&used)?;
    pi.rules().map(|r| v.apply_rule(r)).collect()
}

/// A program together with the tuples it defines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub label: String,
    pub kappa: IntensionalityStatement,
    pub pi: Program,
}

impl Module {
    pub fn new(label: impl Into<String>, kappa: IntensionalityStatement, pi: Program) -> Self {
        Module {
            label: label.into(),
            kappa,
            pi,
        }
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "module {}", self.label)?;
        writeln!(f, "  kappa {}", self.kappa)?;
        for r in self.pi.rules() {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricModule {
    pub name: String,
    pub placeholders: BTreeSet<String>,
    pub chi: ParametricIntensionality,
    pub pi: Program,
}

impl ParametricModule {
    pub fn new(
        name: impl Into<String>,
        placeholders: BTreeSet<String>,
        chi: ParametricIntensionality,
        pi: Program,
    ) -> Result<Self> {
        if let Some(p) = chi.placeholders.difference(&placeholders).next() {
            return Err(Error::UnboundPlaceholder(p.clone()));
        }
        Ok(ParametricModule {
            name: name.into(),
            placeholders,
            chi,
            pi,
        })
    }

    /// `Φ_Θ = ⟨χΘ, ΠΘ⟩`.
    pub fn instantiate(&self, theta: &Valuation) -> Result<Module> {
        theta.covers(&self.placeholders)?;
        let kappa = self.chi.instantiate(theta.as_map())?;
        let pi = apply_valuation(&self.pi, theta, &self.placeholders)?;
        let label = if self.placeholders.is_empty() {
            self.name.clone()
        } else {
            format!("{}{}", self.name, theta)
        };
        Ok(Module::new(label, kappa, pi))
    }
}

/// The statement read off the rule heads: each head argument becomes a fresh
/// variable if it mentions rule variables and is kept (simplified)
/// otherwise.
pub fn default_chi(placeholders: &BTreeSet<String>, pi: &Program) -> Result<ParametricIntensionality> {
    let mut chi = ParametricIntensionality::new(placeholders.clone());
    for rule in pi.rules() {
        let Some(head) = rule.head.atom() else { continue };
        let mut tuple = Vec::with_capacity(head.args.len());
        for (i, t) in head.args.iter().enumerate() {
            let t = t.simplify();
            if t.variables().is_empty() {
                tuple.push(t);
                continue;
            }
            let mut syms = BTreeSet::new();
            t.collect_symbols(&mut syms);
            if !t.is_var() && !syms.is_disjoint(placeholders) {
                return Err(Error::UnsupportedPattern {
                    atom: head.to_string(),
                    term: t.to_string(),
                });
            }
            tuple.push(Term::var(crate::intensional::position_var(i)));
        }
        chi.insert(head.predicate(), tuple)?;
    }
    Ok(chi)
}

/// `⟨κ, {Δ1,...,Δn}⟩`, with the requirement that every module only defines
/// tuples the global statement makes intensional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularProgram {
    pub kappa: IntensionalityStatement,
    pub modules: Vec<Module>,
    signature: BTreeSet<Predicate>,
}

impl ModularProgram {
    pub fn new(kappa: IntensionalityStatement, modules: Vec<Module>) -> Result<Self> {
        let kappas: Vec<IntensionalityStatement> = modules.iter().map(|m| m.kappa.clone()).collect();
        check_requirement(&kappa, &kappas)?;
        let mut signature: BTreeSet<Predicate> = kappa.predicates().cloned().collect();
        for m in &modules {
            signature.extend(m.pi.predicates());
            signature.extend(m.kappa.predicates().cloned());
        }
        Ok(ModularProgram {
            kappa,
            modules,
            signature,
        })
    }

    pub fn signature(&self) -> &BTreeSet<Predicate> {
        &self.signature
    }

    pub fn module_kappas(&self) -> Vec<IntensionalityStatement> {
        self.modules.iter().map(|m| m.kappa.clone()).collect()
    }

    /// The union of all module rules.
    pub fn union_program(&self) -> Program {
        let mut out = Program::new();
        for m in &self.modules {
            out.extend(&m.pi);
        }
        out
    }
}

impl fmt::Display for ModularProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kappa {}", self.kappa)?;
        for (i, m) in self.modules.iter().enumerate() {
            write!(f, "[{i}] {m}")?;
        }
        Ok(())
    }
}

/// `v1(R(m1)) ∪ ... ∪ vj(R(mj))`.
pub fn collective_union(r: &ClingoProgram, specs: &[SubprogramSpec]) -> Result<Program> {
    let mut out = Program::new();
    for spec in specs {
        let placeholders: BTreeSet<String> = r.params(&spec.name)?.iter().cloned().collect();
        out.extend(&apply_valuation(&r.subprogram(&spec.name)?, &spec.valuation, &placeholders)?);
    }
    Ok(out)
}

/// The parametric module of subprogram `name`, with the plan's `module` line
/// if there is one and the head-derived statement otherwise.
pub fn parametric_module(r: &ClingoProgram, plan: &ControlPlan, name: &str) -> Result<ParametricModule> {
    let placeholders: BTreeSet<String> = r.params(name)?.iter().cloned().collect();
    let pi = r.subprogram(name)?;
    let chi = match plan.module_chi.get(name) {
        Some(atoms) => ParametricIntensionality::from_atoms(placeholders.clone(), atoms)?,
        None => default_chi(&placeholders, &pi)?,
    };
    ParametricModule::new(name, placeholders, chi, pi)
}

/// One module per distinct spec, in spec order.
pub fn collective_modular(r: &ClingoProgram, plan: &ControlPlan) -> Result<ModularProgram> {
    let mut parametric: BTreeMap<String, ParametricModule> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    let mut modules = Vec::new();
    for spec in &plan.specs {
        if !seen.insert((spec.name.clone(), spec.valuation.clone())) {
            continue;
        }
        if !parametric.contains_key(&spec.name) {
            parametric.insert(spec.name.clone(), parametric_module(r, plan, &spec.name)?);
        }
        modules.push(parametric[&spec.name].instantiate(&spec.valuation)?);
    }
    let kappa = match &plan.global_kappa {
        Some(atoms) => IntensionalityStatement::from_atoms(atoms)?,
        None => {
            let mut preds = BTreeSet::new();
            for m in &modules {
                preds.extend(m.pi.predicates());
                preds.extend(m.kappa.predicates().cloned());
            }
            IntensionalityStatement::purely_intensional(&preds)
        }
    };
    ModularProgram::new(kappa, modules)
}

/// The global statement of a plan for the union reading.
pub fn plan_kappa(plan: &ControlPlan, program: &Program) -> Result<IntensionalityStatement> {
    match &plan.global_kappa {
        Some(atoms) => IntensionalityStatement::from_atoms(atoms),
        None => Ok(IntensionalityStatement::purely_intensional(&program.predicates())),
    }
}
