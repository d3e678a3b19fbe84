//! Text grammar for polynomials and derivations.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := '-' factor | '+' factor | atom ('^' INT)?
//! atom    := INT ('/' INT)? | IDENT | '(' expr ')'
//!
//! derivation := 'vars' ':' IDENT (',' IDENT)* (';' IDENT '\'' '=' expr)* ';'?
//! ```
//!
//! Multiplication is always explicit, so `y11` is one identifier and `2x` is
//! rejected. A rational literal `p/q` is a single atom. The first declared
//! variable of a derivation is the distinguished one.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::derivation::Derivation;
use crate::poly::{PolyError, Polynomial, Rational, VarContext};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("negative exponent")]
    NegativeExponent,
    #[error("exponent too large")]
    ExponentTooLarge,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("missing rule for `{0}`")]
    MissingRule(String),
    #[error("duplicate rule for `{0}`")]
    DuplicateRule(String),
    #[error("rule for undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("{0}")]
    Context(PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Prime,
    Eq,
    Semi,
    Colon,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Prime => "'",
            Tok::Eq => "=",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Comma => ",",
            _ => "",
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
    offset: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    let advance = |c: char, line: &mut usize, column: &mut usize| {
        if c == '\n' {
            *line += 1;
            *column = 1;
        } else {
            *column += 1;
        }
    };
    while let Some(&(offset, c)) = chars.peek() {
        let (l0, c0) = (line, column);
        if c.is_whitespace() {
            chars.next();
            advance(c, &mut line, &mut column);
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
                advance(d, &mut line, &mut column);
            }
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
                advance(d, &mut line, &mut column);
            }
            Tok::Ident(s)
        } else {
            let t = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '\'' => Tok::Prime,
                '=' => Tok::Eq,
                ';' => Tok::Semi,
                ':' => Tok::Colon,
                ',' => Tok::Comma,
                other => {
                    return Err(ParseError {
                        line,
                        column,
                        kind: ParseErrorKind::UnexpectedChar(other),
                    })
                }
            };
            chars.next();
            advance(c, &mut line, &mut column);
            t
        };
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
            offset,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
        offset: text.len(),
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    ctx: Option<&'a VarContext>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_at(t: &Spanned, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: t.line,
            column: t.column,
            kind,
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let t = self.peek();
        Self::error_at(
            t,
            ParseErrorKind::Unexpected {
                expected: expected.into(),
                found: t.tok.describe(),
            },
        )
    }

    fn expect(&mut self, tok: Tok) -> Result<Spanned, ParseError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&format!("`{}`", tok.symbol())))
        }
    }

    fn ident(&mut self) -> Result<(String, Spanned), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                Ok((s, self.bump()))
            }
            _ => Err(self.unexpected("identifier")),
        }
    }

    fn ctx(&self) -> &'a VarContext {
        self.ctx.expect("context set before expressions")
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                return Ok(-self.factor()?);
            }
            Tok::Plus => {
                self.bump();
                return self.factor();
            }
            _ => {}
        }
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(n) => {
                let e = n
                    .to_u32()
                    .ok_or_else(|| Self::error_at(&t, ParseErrorKind::ExponentTooLarge))?;
                self.bump();
                Ok(base.pow(e))
            }
            Tok::Minus => Err(Self::error_at(&t, ParseErrorKind::NegativeExponent)),
            _ => Err(self.unexpected("non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let ctx = self.ctx();
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(n) => {
                self.bump();
                let mut value = Rational::from_integer(n.clone());
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    let dt = self.peek().clone();
                    match &dt.tok {
                        Tok::Int(d) if d.is_zero() => {
                            return Err(Self::error_at(&dt, ParseErrorKind::ZeroDenominator))
                        }
                        Tok::Int(d) => {
                            self.bump();
                            value = Rational::new(n.clone(), d.clone());
                        }
                        _ => return Err(self.unexpected("integer denominator")),
                    }
                }
                Ok(Polynomial::constant(ctx, value))
            }
            Tok::Ident(name) => {
                let v = ctx.index_of(name).ok_or_else(|| {
                    Self::error_at(&t, ParseErrorKind::UnknownIdentifier(name.clone()))
                })?;
                self.bump();
                Ok(Polynomial::var(ctx, v))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => Err(self.unexpected("number, identifier or `(`")),
        }
    }
}

/// Parses a polynomial over the variables of `ctx`.
pub fn parse_poly(text: &str, ctx: &VarContext) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        ctx: Some(ctx),
    };
    let out = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.unexpected("operator or end of input"));
    }
    Ok(out)
}

/// One `v' = expr` rule as written in the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSpec {
    pub variable: String,
    pub source: String,
    pub image: Polynomial,
}

/// A parsed but not yet validated derivation text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationSpec {
    pub context: VarContext,
    pub rules: Vec<RuleSpec>,
}

impl DerivationSpec {
    /// Checks that every declared variable has exactly one rule.
    pub fn into_derivation(self) -> Result<Derivation, ParseError> {
        let images = self
            .context
            .names()
            .iter()
            .map(|name| {
                self.rules
                    .iter()
                    .find(|r| &r.variable == name)
                    .map(|r| r.image.clone())
                    .ok_or_else(|| ParseError {
                        line: 0,
                        column: 0,
                        kind: ParseErrorKind::MissingRule(name.clone()),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Derivation::new(&self.context, images).expect("one image per variable"))
    }
}

/// Parses `vars: x, y; x' = 1; y' = x*y + 1` into its declared context and rules.
pub fn parse_derivation_spec(text: &str) -> Result<DerivationSpec, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        ctx: None,
    };
    let (kw, kw_tok) = p.ident()?;
    if kw != "vars" {
        return Err(Parser::error_at(
            &kw_tok,
            ParseErrorKind::Unexpected {
                expected: "`vars`".into(),
                found: format!("identifier `{kw}`"),
            },
        ));
    }
    p.expect(Tok::Colon)?;
    let mut names = Vec::new();
    loop {
        let (name, t) = p.ident()?;
        if names.contains(&name) {
            return Err(Parser::error_at(
                &t,
                ParseErrorKind::Context(PolyError::DuplicateName(name)),
            ));
        }
        names.push(name);
        if p.peek().tok == Tok::Comma {
            p.bump();
        } else {
            break;
        }
    }
    let ctx = VarContext::with_names(names).map_err(|e| ParseError {
        line: kw_tok.line,
        column: kw_tok.column,
        kind: ParseErrorKind::Context(e),
    })?;
    p.ctx = Some(&ctx);

    let mut rules: Vec<RuleSpec> = Vec::new();
    loop {
        match p.peek().tok {
            Tok::Eof => break,
            Tok::Semi => {
                p.bump();
            }
            _ => return Err(p.unexpected("`;`")),
        }
        if p.peek().tok == Tok::Eof {
            break;
        }
        let (name, t) = p.ident()?;
        if ctx.index_of(&name).is_none() {
            return Err(Parser::error_at(&t, ParseErrorKind::UndeclaredVariable(name)));
        }
        if rules.iter().any(|r| r.variable == name) {
            return Err(Parser::error_at(&t, ParseErrorKind::DuplicateRule(name)));
        }
        p.expect(Tok::Prime)?;
        p.expect(Tok::Eq)?;
        let start = p.peek().offset;
        let image = p.expr()?;
        let end = p.peek().offset;
        rules.push(RuleSpec {
            variable: name,
            source: text[start..end].trim().to_string(),
            image,
        });
    }
    let missing = ctx
        .names()
        .iter()
        .find(|n| !rules.iter().any(|r| &r.variable == *n));
    if let Some(name) = missing {
        let t = p.peek();
        return Err(Parser::error_at(t, ParseErrorKind::MissingRule(name.clone())));
    }
    Ok(DerivationSpec {
        context: ctx.clone(),
        rules,
    })
}

pub fn parse_derivation(text: &str) -> Result<Derivation, ParseError> {
    parse_derivation_spec(text)?.into_derivation()
}
