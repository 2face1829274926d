use super::domain::Domain;
use super::ground::ground;
use super::interp::Interpretation;
use crate::error::{Error, Result};
use crate::intensional::IntensionalityStatement;
use crate::syntax::{PredAtom, Program};

/// Whether some rule `B → p(r)` and simple substitution `θ` into the domain
/// give `(rθ)^I = t` and `I ⊨ Bθ`, for the intensional atom `p(t)`.
pub fn check_support(
    i: &Interpretation,
    kappa: &IntensionalityStatement,
    pi: &Program,
    atom: &PredAtom,
    dom: &Domain,
) -> Result<bool> {
    if !kappa.lambda_holds(atom) {
        return Err(Error::NotIntensional(atom.to_string()));
    }
    let relevant: Program = pi
        .rules()
        .filter(|r| r.head.atom().is_some_and(|h| h.predicate() == atom.predicate()))
        .cloned()
        .collect();
    let g = ground(&relevant, dom)?;
    Ok(g.rules
        .iter()
        .any(|r| r.head.as_ref() == Some(atom) && r.body_holds(&|a| i.contains(a))))
}
