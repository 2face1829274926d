use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// Lowercase-initial identifier (constants, predicates, keywords).
    Ident(String),
    /// Uppercase- or underscore-initial identifier.
    Var(String),
    /// Unsigned integer literal, kept as text so that `-9223372036854775808`
    /// can be parsed together with its sign.
    Int(String),
    Directive(String),
    LParen,
    RParen,
    Comma,
    Dot,
    DotDot,
    If,
    Colon,
    Plus,
    Minus,
    Star,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Var(s) | Tok::Int(s) => format!("`{s}`"),
            Tok::Directive(s) => format!("`#{s}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::DotDot => "..",
            Tok::If => ":-",
            Tok::Colon => ":",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Eq => "=",
            Tok::Ne => "!=",
            Tok::Lt => "<",
            Tok::Le => "<=",
            Tok::Gt => ">",
            Tok::Ge => ">=",
            _ => "?",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommentStyle {
    /// `%` comments; `#` introduces a directive.
    Program,
    /// `#` comments.
    Control,
}

pub fn tokenize(text: &str, style: CommentStyle) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let comment = match style {
        CommentStyle::Program => '%',
        CommentStyle::Control => '#',
    };
    while i < chars.len() {
        let c = chars[i];
        let (tline, tcol) = (line, col);
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i, &mut col);
            continue;
        }
        if c == comment {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let push = |tok: Tok, out: &mut Vec<Token>| {
            out.push(Token {
                tok,
                line: tline,
                column: tcol,
            })
        };
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            col += i - start;
            let word: String = chars[start..i].iter().collect();
            if c.is_ascii_lowercase() {
                push(Tok::Ident(word), &mut out);
            } else {
                push(Tok::Var(word), &mut out);
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            push(Tok::Int(chars[start..i].iter().collect()), &mut out);
            continue;
        }
        if c == '#' && style == CommentStyle::Program {
            let start = i + 1;
            i += 1;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i + 1 - start;
            push(Tok::Directive(chars[start..i].iter().collect()), &mut out);
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, len) = match (c, next) {
            (':', Some('-')) => (Tok::If, 2),
            (':', _) => (Tok::Colon, 1),
            ('.', Some('.')) => (Tok::DotDot, 2),
            ('.', _) => (Tok::Dot, 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            (',', _) => (Tok::Comma, 1),
            ('+', _) => (Tok::Plus, 1),
            ('-', _) => (Tok::Minus, 1),
            ('*', _) => (Tok::Star, 1),
            ('!', Some('=')) => (Tok::Ne, 2),
            ('<', Some('=')) => (Tok::Le, 2),
            ('<', _) => (Tok::Lt, 1),
            ('>', Some('=')) => (Tok::Ge, 2),
            ('>', _) => (Tok::Gt, 1),
            ('=', _) => (Tok::Eq, 1),
            _ => {
                return Err(ParseError::new(line, col, format!("unexpected character `{c}`")));
            }
        };
        push(tok, &mut out);
        advance(len, &mut i, &mut col);
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}
