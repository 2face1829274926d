//! Least-model computation for programs without negation.

use super::compiled::Instance;

/// The least model of the single component, or `None` if it violates a
/// constraint.
pub(crate) fn least_model(inst: &Instance) -> Option<Vec<bool>> {
    let c = &inst.components[0];
    let keep = vec![true; c.rules.len()];
    let model = c.least_model(&keep, vec![false; inst.len()]);
    c.is_model(&model).then_some(model)
}
