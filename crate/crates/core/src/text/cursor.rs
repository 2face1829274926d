//! Recursive-descent helpers shared by the program and control parsers.

use super::lexer::{Tok, Token};
use crate::error::{Error, ParseError, Result};
use crate::syntax::{ArithOp, Atom, Comparison, Literal, PredAtom, Relation, Term};

pub struct Cursor {
    tokens: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(tokens: Vec<Token>) -> Self {
        Cursor { tokens, pos: 0 }
    }

    pub fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub fn bump(&mut self) -> Tok {
        let tok = self.tokens[self.pos].tok.clone();
        if tok != Tok::Eof {
            self.pos += 1;
        }
        tok
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        let t = &self.tokens[self.pos];
        Error::Parse(ParseError::new(t.line, t.column, message))
    }

    pub fn unexpected(&self, wanted: &str) -> Error {
        self.error(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    pub fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            let wanted = Tok::describe(&tok);
            Err(self.unexpected(&wanted))
        }
    }

    pub fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    pub fn keyword(&mut self, word: &str) -> bool {
        if matches!(self.peek(), Tok::Ident(s) if s == word) {
            self.bump();
            true
        } else {
            false
        }
    }

    /// `sum := product (('+' | '-') product)*`
    pub fn term(&mut self) -> Result<Term> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => ArithOp::Add,
                Tok::Minus => ArithOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.product()?;
            lhs = Term::arith(op, lhs, rhs);
        }
    }

    fn product(&mut self) -> Result<Term> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Star) {
            let rhs = self.unary()?;
            lhs = Term::mul(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Term> {
        if *self.peek() != Tok::Minus {
            return self.primary();
        }
        self.bump();
        if let Tok::Int(digits) = self.peek().clone() {
            let value = format!("-{digits}")
                .parse::<i64>()
                .map_err(|_| self.error(format!("integer -{digits} out of range")))?;
            self.bump();
            return Ok(Term::Num(value));
        }
        let operand = self.unary()?;
        Ok(Term::sub(Term::Num(0), operand))
    }

    fn primary(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Int(digits) => {
                let value = digits
                    .parse::<i64>()
                    .map_err(|_| self.error(format!("integer {digits} out of range")))?;
                self.bump();
                Ok(Term::Num(value))
            }
            Tok::Var(name) => {
                self.bump();
                Ok(Term::var(name))
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::LParen {
                    Ok(Term::Func(name, self.arguments()?))
                } else {
                    Ok(Term::Sym(name))
                }
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    /// `'(' term (',' term)* ')'`
    pub fn arguments(&mut self) -> Result<Vec<Term>> {
        self.expect(Tok::LParen)?;
        let mut args = vec![self.term()?];
        while self.eat(&Tok::Comma) {
            args.push(self.term()?);
        }
        self.expect(Tok::RParen)?;
        Ok(args)
    }

    /// A predicate atom `p` or `p(t1,...,tn)`.
    pub fn pred_atom(&mut self) -> Result<PredAtom> {
        let name = self.ident()?;
        let args = if *self.peek() == Tok::LParen {
            self.arguments()?
        } else {
            Vec::new()
        };
        Ok(PredAtom::new(name, args))
    }

    fn relation(&self) -> Option<Relation> {
        Some(match self.peek() {
            Tok::Eq => Relation::Eq,
            Tok::Ne => Relation::Ne,
            Tok::Lt => Relation::Lt,
            Tok::Le => Relation::Le,
            Tok::Gt => Relation::Gt,
            Tok::Ge => Relation::Ge,
            _ => return None,
        })
    }

    /// `not* (pred-atom | term rel term)`
    pub fn literal(&mut self) -> Result<Literal> {
        let mut negations = 0u8;
        while matches!(self.peek(), Tok::Ident(s) if s == "not") {
            self.bump();
            negations += 1;
            if negations > 2 {
                return Err(self.error("at most two occurrences of `not` may precede an atom"));
            }
        }
        let lhs = self.term()?;
        let atom = if let Some(rel) = self.relation() {
            self.bump();
            let rhs = self.term()?;
            Atom::Cmp(Comparison::new(rel, lhs, rhs))
        } else {
            match lhs {
                Term::Sym(name) => Atom::Pred(PredAtom::new(name, Vec::new())),
                Term::Func(name, args) => Atom::Pred(PredAtom::new(name, args)),
                other => {
                    return Err(self.error(format!("`{other}` is neither an atom nor a comparison")))
                }
            }
        };
        Literal::new(atom, negations)
    }
}
