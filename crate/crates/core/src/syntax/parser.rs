//! Recursive-descent parser for the formula grammar:
//!
//! ```text
//! formula    := disj
//! disj       := conj ( "|" conj )*
//! conj       := unary ( "&" unary )*
//! unary      := "!" unary | "(" formula ")" | constraint
//! constraint := IDENT "{" RELNAME ("," RELNAME)* "}" IDENT
//! ```
//!
//! `#` starts a comment running to the end of the line.

use std::fmt;

use thiserror::Error;

use super::{Constraint, Formula, Variable};
use crate::algebra::{Algebra, Relation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownRelation(String),
    SelfConstraint(String),
    VariableNamedLikeRelation(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => f.write_str(msg),
            ParseErrorKind::UnknownRelation(name) => write!(f, "unknown relation name `{name}`"),
            ParseErrorKind::SelfConstraint(var) => {
                write!(f, "constraint relates variable `{var}` to itself")
            }
            ParseErrorKind::VariableNamedLikeRelation(name) => {
                write!(f, "variable `{name}` clashes with a relation name")
            }
        }
    }
}

/// A parse failure with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    LBrace,
    RBrace,
    Comma,
    Bang,
    Amp,
    Pipe,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "`{s}`"),
            Token::LBrace => f.write_str("`{`"),
            Token::RBrace => f.write_str("`}`"),
            Token::Comma => f.write_str("`,`"),
            Token::Bang => f.write_str("`!`"),
            Token::Amp => f.write_str("`&`"),
            Token::Pipe => f.write_str("`|`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    token: Token,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (start_line, start_column) = (line, column);
        let simple = match c {
            '{' => Some(Token::LBrace),
            '}' => Some(Token::RBrace),
            ',' => Some(Token::Comma),
            '!' => Some(Token::Bang),
            '&' => Some(Token::Amp),
            '|' => Some(Token::Pipe),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(token) = simple {
            chars.next();
            column += 1;
            tokens.push(Spanned {
                token,
                line: start_line,
                column: start_column,
            });
        } else if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut ident = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    ident.push(c);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            tokens.push(Spanned {
                token: Token::Ident(ident),
                line: start_line,
                column: start_column,
            });
        } else {
            return Err(ParseError {
                line,
                column,
                kind: ParseErrorKind::Syntax(format!("unexpected character `{c}`")),
            });
        }
    }
    tokens.push(Spanned {
        token: Token::End,
        line,
        column,
    });
    Ok(tokens)
}

struct Parser<'a> {
    algebra: &'a Algebra,
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Spanned {
        let t = self.tokens[self.pos].clone();
        if t.token != Token::End {
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

    fn unexpected(t: &Spanned, expected: &str) -> ParseError {
        Self::error_at(
            t,
            ParseErrorKind::Syntax(format!("expected {expected}, found {}", t.token)),
        )
    }

    fn expect(&mut self, token: Token, expected: &str) -> Result<Spanned, ParseError> {
        let t = self.advance();
        if t.token == token {
            Ok(t)
        } else {
            Err(Self::unexpected(&t, expected))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut children = vec![self.conj()?];
        while self.peek().token == Token::Pipe {
            self.advance();
            children.push(self.conj()?);
        }
        Ok(Formula::or(children))
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut children = vec![self.unary()?];
        while self.peek().token == Token::Amp {
            self.advance();
            children.push(self.unary()?);
        }
        Ok(Formula::and(children))
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().token {
            Token::Bang => {
                self.advance();
                Ok(Formula::not(self.unary()?))
            }
            Token::LParen => {
                self.advance();
                let inner = self.formula()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            _ => self.constraint(),
        }
    }

    fn variable(&mut self) -> Result<(Variable, Spanned), ParseError> {
        let t = self.advance();
        match &t.token {
            Token::Ident(name) => {
                if self.algebra.base(name).is_some() {
                    return Err(Self::error_at(
                        &t,
                        ParseErrorKind::VariableNamedLikeRelation(name.clone()),
                    ));
                }
                Ok((Variable::new(name.clone()), t))
            }
            _ => Err(Self::unexpected(&t, "a variable name")),
        }
    }

    fn constraint(&mut self) -> Result<Formula, ParseError> {
        let (left, left_token) = self.variable()?;
        self.expect(Token::LBrace, "`{`")?;
        let mut rel = Relation::EMPTY;
        // `{}` is accepted as the empty relation so printed formulas always re-parse.
        if self.peek().token != Token::RBrace {
            loop {
                let t = self.advance();
                let Token::Ident(name) = &t.token else {
                    return Err(Self::unexpected(&t, "a relation name"));
                };
                let b = self.algebra.base(name).ok_or_else(|| {
                    Self::error_at(&t, ParseErrorKind::UnknownRelation(name.clone()))
                })?;
                rel = rel | Relation::singleton(b);
                let sep = self.advance();
                match sep.token {
                    Token::Comma => continue,
                    Token::RBrace => break,
                    _ => return Err(Self::unexpected(&sep, "`,` or `}`")),
                }
            }
        } else {
            self.advance();
        }
        let (right, _) = self.variable()?;
        if left == right {
            return Err(Self::error_at(
                &left_token,
                ParseErrorKind::SelfConstraint(left.name().to_string()),
            ));
        }
        Ok(Formula::Atom(Constraint { left, rel, right }))
    }
}

/// Parses one formula. Relation lists are read with set semantics.
pub fn parse(algebra: &Algebra, text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser {
        algebra,
        tokens: tokenize(text)?,
        pos: 0,
    };
    let formula = parser.formula()?;
    let trailing = parser.advance();
    if trailing.token != Token::End {
        return Err(Parser::unexpected(&trailing, "end of input"));
    }
    Ok(formula)
}
