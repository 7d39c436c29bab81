//! Recursive descent parser for formulae.
//!
//! ```text
//! imp   ::= or ('->' imp)?
//! or    ::= and ('|' and)*
//! and   ::= unary ('&' unary)*
//! unary ::= '!' unary | 'C' '[' ident ']' unary | 'S' '[' ident ']' unary | atom
//! atom  ::= 'true' | 'false' | ident | '(' imp ')'
//! ```

use thiserror::Error;

use super::Formula;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaParseError {
    #[error("empty formula")]
    Empty,
    /// `col` is the 1-based character position of the offending token.
    #[error("column {col}: {message}")]
    Syntax { col: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Bang,
    Amp,
    Pipe,
    Arrow,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Ident(String),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, FormulaParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '!' => Tok::Bang,
            '&' => Tok::Amp,
            '|' => Tok::Pipe,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                Tok::Ident(chars[start..=i].iter().collect())
            }
            other => return Err(FormulaParseError::Syntax { col, message: format!("unexpected character `{other}`") }),
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek2(&self) -> &Tok {
        self.toks.get(self.pos + 1).map_or(&Tok::End, |t| &t.0)
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &str) -> FormulaParseError {
        let (tok, col) = &self.toks[self.pos];
        FormulaParseError::Syntax { col: *col, message: format!("expected {expected}, found {}", tok.describe()) }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), FormulaParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&tok.describe()))
        }
    }

    fn implication(&mut self) -> Result<Formula, FormulaParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, FormulaParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, FormulaParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, FormulaParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(m) if (m == "C" || m == "S") && *self.peek2() == Tok::LBracket => {
                self.bump();
                self.bump();
                let agent = match self.peek().clone() {
                    Tok::Ident(a) => {
                        self.bump();
                        a
                    }
                    _ => return Err(self.error("agent name")),
                };
                self.expect(Tok::RBracket)?;
                let body = self.unary()?;
                Ok(if m == "C" { Formula::counterfactual(agent, body) } else { Formula::see_to(agent, body) })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, FormulaParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(match name.as_str() {
                    "true" => Formula::Top,
                    "false" => Formula::Bottom,
                    _ => Formula::Prop(name),
                })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.implication()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => Err(self.error("formula")),
        }
    }
}

/// Parses a formula; `|` and `->` are desugared on the fly.
pub fn parse_formula(text: &str) -> Result<Formula, FormulaParseError> {
    let toks = tokenize(text)?;
    if toks.len() == 1 {
        return Err(FormulaParseError::Empty);
    }
    let mut parser = Parser { toks, pos: 0 };
    let f = parser.implication()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error("end of input"));
    }
    Ok(f)
}
