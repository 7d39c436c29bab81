//! Text format for games.
//!
//! ```text
//! game ::= node
//! node ::= '(' agent node+ ')' | '{' prop* '}'
//! agent, prop ::= [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is insignificant and `;` starts a comment running to the end of
//! the line. [`Game`]'s `Display` produces the canonical form, e.g.
//! `(b {prison} (g {prison} {free}))`.

use std::fmt;

use thiserror::Error;

use super::{Game, GameError, NodeId, NodeKind, Tree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameParseError {
    #[error("empty game description")]
    Empty,
    #[error("{line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] GameError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    LBrace,
    RBrace,
    Ident(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { chars: text.chars().peekable(), line: 1, col: 1 }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error(&self, line: usize, col: usize, message: impl Into<String>) -> GameParseError {
        GameParseError::Syntax { line, col, message: message.into() }
    }

    /// Next token with its starting position, or `None` at end of input.
    fn next(&mut self) -> Result<Option<(Tok, usize, usize)>, GameParseError> {
        loop {
            match self.chars.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some(';') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
        let (line, col) = (self.line, self.col);
        let Some(c) = self.bump() else { return Ok(None) };
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::from(c);
                while let Some(&c) = self.chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Ident(ident)
            }
            other => return Err(self.error(line, col, format!("unexpected character `{other}`"))),
        };
        Ok(Some((tok, line, col)))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<(Tok, usize, usize)>,
}

impl Parser<'_> {
    fn peek(&mut self) -> Result<Option<&(Tok, usize, usize)>, GameParseError> {
        if self.peeked.is_none() {
            self.peeked = self.lexer.next()?;
        }
        Ok(self.peeked.as_ref())
    }

    fn next(&mut self) -> Result<Option<(Tok, usize, usize)>, GameParseError> {
        match self.peeked.take() {
            Some(t) => Ok(Some(t)),
            None => self.lexer.next(),
        }
    }

    fn eof_error(&self, expected: &str) -> GameParseError {
        self.lexer.error(self.lexer.line, self.lexer.col, format!("unexpected end of input, expected {expected}"))
    }

    fn node(&mut self) -> Result<Tree, GameParseError> {
        let Some((tok, line, col)) = self.next()? else {
            return Err(self.eof_error("`(` or `{`"));
        };
        match tok {
            Tok::LBrace => {
                let mut props = Vec::new();
                loop {
                    match self.next()? {
                        Some((Tok::Ident(p), ..)) => props.push(p),
                        Some((Tok::RBrace, ..)) => return Ok(Tree::Outcome(props)),
                        Some((t, l, c)) => {
                            return Err(self.lexer.error(l, c, format!("expected proposition or `}}`, found {t}")))
                        }
                        None => return Err(self.eof_error("`}`")),
                    }
                }
            }
            Tok::LParen => {
                let agent = match self.next()? {
                    Some((Tok::Ident(a), ..)) => a,
                    Some((t, l, c)) => return Err(self.lexer.error(l, c, format!("expected agent name, found {t}"))),
                    None => return Err(self.eof_error("agent name")),
                };
                let mut children = Vec::new();
                loop {
                    match self.peek()? {
                        Some((Tok::RParen, l, c)) => {
                            let (l, c) = (*l, *c);
                            self.next()?;
                            if children.is_empty() {
                                return Err(self.lexer.error(l, c, format!("decision node `{agent}` has no children")));
                            }
                            return Ok(Tree::Decision { agent, children });
                        }
                        Some(_) => children.push(self.node()?),
                        None => return Err(self.eof_error("`)`")),
                    }
                }
            }
            t => Err(self.lexer.error(line, col, format!("expected `(` or `{{`, found {t}"))),
        }
    }
}

/// Parses and validates a game description.
pub fn parse_game(text: &str) -> Result<Game, GameParseError> {
    let mut parser = Parser { lexer: Lexer::new(text), peeked: None };
    if parser.peek()?.is_none() {
        return Err(GameParseError::Empty);
    }
    let tree = parser.node()?;
    if let Some((t, l, c)) = parser.next()? {
        return Err(parser.lexer.error(l, c, format!("trailing input after the root node: {t}")));
    }
    Ok(Game::from_tree(&tree)?)
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Explicit stack: generated chains can be deep.
        enum Step {
            Open(NodeId),
            Close,
        }
        let mut stack = vec![Step::Open(self.root())];
        let mut first = true;
        while let Some(step) = stack.pop() {
            match step {
                Step::Close => f.write_str(")")?,
                Step::Open(n) => {
                    if !first {
                        f.write_str(" ")?;
                    }
                    first = false;
                    match &self.nodes[n.index()].kind {
                        NodeKind::Outcome { .. } => {
                            f.write_str("{")?;
                            for (k, p) in self.labels(n).enumerate() {
                                if k > 0 {
                                    f.write_str(" ")?;
                                }
                                f.write_str(p)?;
                            }
                            f.write_str("}")?;
                        }
                        NodeKind::Decision { agent, children } => {
                            write!(f, "({}", self.agent_name(*agent))?;
                            stack.push(Step::Close);
                            stack.extend(children.iter().rev().map(|&c| Step::Open(c)));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
