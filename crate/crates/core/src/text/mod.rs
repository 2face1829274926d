//! Program files with `#program` declarations, and control files.

mod control;
mod cursor;
mod lexer;
mod program;

pub use control::{parse_control, ControlPlan, SubprogramSpec};
pub use program::{parse_program, parse_rules, ClingoProgram, Item, ProgramDeclaration, BASE};

/// Parses a single pattern atom such as `q(X, k+1)`.
pub fn parse_pattern_atom(text: &str) -> crate::Result<crate::syntax::PredAtom> {
    let mut cur = cursor::Cursor::new(lexer::tokenize(text, lexer::CommentStyle::Program)?);
    let atom = cur.pred_atom()?;
    if !cur.at_eof() {
        return Err(cur.unexpected("end of input"));
    }
    Ok(atom)
}

/// Parses a space- or comma-separated list of ground atoms, as given to
/// `check-model`.
pub fn parse_atoms(text: &str) -> crate::Result<Vec<crate::syntax::PredAtom>> {
    let mut cur = cursor::Cursor::new(lexer::tokenize(text, lexer::CommentStyle::Program)?);
    let mut out = Vec::new();
    while !cur.at_eof() {
        out.push(cur.pred_atom()?);
        cur.eat(&lexer::Tok::Comma);
    }
    Ok(out)
}
