//! The expression grammar.
//!
//! ```text
//! expr  := ('+'|'-')? term (('+'|'-') term)*
//! term  := coeff? atom*
//! atom  := NAME '*'?
//! coeff := INT ('/' INT)?
//! ```
//!
//! Juxtaposition is the product and `x*` is the starred letter. A term with
//! no atoms is a multiple of the unit `Σ v`, so `1` is the unit and `0` is
//! zero. The result is normalized.

use leavitt::coeff::Rational;
use leavitt::graph::Symbol;
use leavitt::rewrite::{Algebra, Element, Letter, RewriteError, Strategy};
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("column {column}: unknown name `{name}`")]
    Unresolved { column: usize, name: String },
    #[error("column {column}: division by zero")]
    DivisionByZero { column: usize },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Name(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
}

fn describe(t: Option<&Token>) -> String {
    match t {
        None => "end of input".into(),
        Some(Token::Name(n)) => format!("`{n}`"),
        Some(Token::Int(n)) => format!("`{n}`"),
        Some(Token::Plus) => "`+`".into(),
        Some(Token::Minus) => "`-`".into(),
        Some(Token::Star) => "`*`".into(),
        Some(Token::Slash) => "`/`".into(),
    }
}

fn syntax(column: usize, message: impl Into<String>) -> ExprError {
    ExprError::Syntax {
        column,
        message: message.into(),
    }
}

/// Tokens paired with their 1-based column.
fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let start = i;
        i += 1;
        let token = match c {
            c if c.is_whitespace() => continue,
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                Token::Int(digits.parse().expect("ascii digits"))
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                Token::Name(chars[start..i].iter().collect())
            }
            other => return Err(syntax(column, format!("unexpected character `{other}`"))),
        };
        out.push((token, column));
    }
    Ok(out)
}

struct Parser<'a> {
    alg: &'a Algebra,
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |&(_, c)| c)
    }

    fn sign(&mut self) -> Option<bool> {
        let negative = match self.peek() {
            Some(Token::Plus) => false,
            Some(Token::Minus) => true,
            _ => return None,
        };
        self.pos += 1;
        Some(negative)
    }

    fn expr(&mut self) -> Result<Element, ExprError> {
        let mut negative = self.sign().unwrap_or(false);
        let mut acc = Element::zero();
        loop {
            let mut term = self.term()?;
            if negative {
                term = -&term;
            }
            acc = &acc + &term;
            match self.sign() {
                Some(n) => negative = n,
                None if self.peek().is_none() => return Ok(acc),
                None => {
                    return Err(syntax(
                        self.column(),
                        format!("expected `+` or `-`, found {}", describe(self.peek())),
                    ))
                }
            }
        }
    }

    fn coefficient(&mut self) -> Result<Option<Rational>, ExprError> {
        let Some(Token::Int(num)) = self.peek().cloned() else {
            return Ok(None);
        };
        self.pos += 1;
        if self.peek() != Some(&Token::Slash) {
            return Ok(Some(Rational::from_integer(num)));
        }
        self.pos += 1;
        let column = self.column();
        match self.peek().cloned() {
            Some(Token::Int(den)) if den.is_zero() => Err(ExprError::DivisionByZero { column }),
            Some(Token::Int(den)) => {
                self.pos += 1;
                Ok(Some(Rational::new(num, den)))
            }
            other => Err(syntax(
                column,
                format!("expected a denominator, found {}", describe(other.as_ref())),
            )),
        }
    }

    fn term(&mut self) -> Result<Element, ExprError> {
        let start = self.column();
        let coeff = self.coefficient()?;
        let mut letters = Vec::new();
        while let Some(Token::Name(name)) = self.peek().cloned() {
            let column = self.column();
            self.pos += 1;
            let starred = self.peek() == Some(&Token::Star);
            if starred {
                self.pos += 1;
            }
            letters.push(match (self.alg.graph().lookup(&name), starred) {
                (Some(Symbol::Vertex(v)), _) => Letter::Vertex(v),
                (Some(Symbol::Edge(e)), false) => Letter::Real(e),
                (Some(Symbol::Edge(e)), true) => Letter::Ghost(e),
                (None, _) => return Err(ExprError::Unresolved { column, name }),
            });
        }
        let value = match (&coeff, letters.is_empty()) {
            (None, true) => {
                return Err(syntax(
                    start,
                    format!("expected a term, found {}", describe(self.peek())),
                ))
            }
            (_, true) => self.alg.one(),
            (_, false) => self.alg.normalize(&letters, Strategy::Leftmost)?,
        };
        Ok(match coeff {
            Some(c) => value.scale(&c),
            None => value,
        })
    }
}

pub fn parse_expression(alg: &Algebra, text: &str) -> Result<Element, ExprError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        alg,
        tokens,
        pos: 0,
        end: text.chars().count() + 1,
    };
    parser.expr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use leavitt::catalog::{algebra, graph_toeplitz};
    use leavitt::coeff::ratio;
    use leavitt::render;

    fn show(text: &str) -> String {
        let t = algebra(graph_toeplitz());
        render::element(&t, &parse_expression(&t, text).unwrap())
    }

    #[test]
    fn relations_and_unit() {
        assert_eq!(show("a* a"), "v");
        assert_eq!(show("2 a b* + v"), "v");
        assert_eq!(show("1"), "v + u");
        assert_eq!(show("0"), "0");
        assert_eq!(show("b b*"), "v - a a*");
        assert_eq!(show("-a a* + a a*"), "0");
    }

    #[test]
    fn rational_coefficients() {
        let t = algebra(graph_toeplitz());
        let x = parse_expression(&t, "1/2 a - 3/4 a").unwrap();
        let a = t.parse_word("a").unwrap();
        assert_eq!(x, a.scale(&ratio(-1, 4)));
        assert_eq!(show("2/4 v + 1/2 v"), "v");
    }

    #[test]
    fn errors() {
        let t = algebra(graph_toeplitz());
        let err = |s: &str| parse_expression(&t, s).unwrap_err();
        assert_eq!(
            err("a + c"),
            ExprError::Unresolved {
                column: 5,
                name: "c".into()
            }
        );
        assert_eq!(err("1/0 a"), ExprError::DivisionByZero { column: 3 });
        assert!(matches!(err("a +"), ExprError::Syntax { column: 4, .. }));
        assert!(matches!(err("* a"), ExprError::Syntax { column: 1, .. }));
        assert!(matches!(err("a 2"), ExprError::Syntax { column: 3, .. }));
        assert!(matches!(err("a / b"), ExprError::Syntax { column: 3, .. }));
        assert!(matches!(err("a ^ b"), ExprError::Syntax { column: 3, .. }));
        assert!(matches!(err(""), ExprError::Syntax { column: 1, .. }));
        assert!(matches!(err("1/ a"), ExprError::Syntax { column: 4, .. }));
    }
}
