//! Recursive-descent parser.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := power (('*' | '/') power)*
//! power   := unary ('^' unary)*
//! unary   := '-' unary | primary
//! primary := INT | 'q' | 'x' | IDENT | '(' expr ')'
//!          | 'poch' '(' expr ',' count ')'
//!          | 'sum' '(' IDENT ',' expr ',' count ',' expr ')'
//! count   := 'inf' | expr
//! ```
//!
//! Identifiers other than `q` and `x` must be indices of an enclosing `sum`;
//! an index may not reuse the name of an index already in scope.

use num_bigint::BigInt;

use super::ast::{Bound, Expr};
use super::DslError;

const KEYWORDS: [&str; 5] = ["q", "x", "poch", "sum", "inf"];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    text: String,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, found: impl Into<String>, message: impl Into<String>) -> DslError {
    DslError::Syntax {
        line,
        column,
        found: found.into(),
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (start_line, start_col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let mut text = String::new();
        let tok = if c.is_ascii_digit() {
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                text.push(d);
                chars.next();
            }
            Tok::Int(text.parse().expect("ascii digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                text.push(d);
                chars.next();
            }
            Tok::Ident(text.clone())
        } else {
            chars.next();
            text.push(c);
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                _ => return Err(syntax(line, column, format!("'{c}'"), "unexpected character")),
            }
        };
        column += text.chars().count();
        out.push(Token {
            tok,
            text,
            line: start_line,
            column: start_col,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        text: String::new(),
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    scope: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: &str) -> DslError {
        let t = self.peek();
        let found = match t.tok {
            Tok::Eof => "end of input".to_string(),
            _ => format!("'{}'", t.text),
        };
        syntax(t.line, t.column, found, message)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), DslError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.term()?;
        loop {
            let ctor: fn(Box<Expr>, Box<Expr>) -> Expr = match self.peek().tok {
                Tok::Plus => Expr::Add,
                Tok::Minus => Expr::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = ctor(Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.power()?;
        loop {
            let ctor: fn(Box<Expr>, Box<Expr>) -> Expr = match self.peek().tok {
                Tok::Star => Expr::Mul,
                Tok::Slash => Expr::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = ctor(Box::new(lhs), Box::new(self.power()?));
        }
    }

    fn power(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::Caret {
            self.bump();
            lhs = Expr::Pow(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, DslError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn count(&mut self) -> Result<Bound, DslError> {
        if self.peek().tok == Tok::Ident("inf".into()) {
            self.bump();
            return Ok(Bound::Infinite);
        }
        Ok(Bound::Finite(Box::new(self.expr()?)))
    }

    fn primary(&mut self) -> Result<Expr, DslError> {
        let tok = self.peek().tok.clone();
        match tok {
            Tok::Int(v) => {
                self.bump();
                Ok(Expr::Int(v))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "q" => {
                    self.bump();
                    Ok(Expr::Q)
                }
                "x" => {
                    self.bump();
                    Ok(Expr::X)
                }
                "poch" => {
                    self.bump();
                    self.expect(Tok::LParen, "'(' after poch")?;
                    let base = self.expr()?;
                    self.expect(Tok::Comma, "','")?;
                    let count = self.count()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expr::Poch {
                        base: Box::new(base),
                        count,
                    })
                }
                "sum" => self.sum(),
                "inf" => Err(self.error("'inf' is only allowed as a sum bound or poch count")),
                _ if self.scope.contains(&name) => {
                    self.bump();
                    Ok(Expr::Var(name))
                }
                _ => Err(self.error("unknown identifier")),
            },
            _ => Err(self.error("expected expression")),
        }
    }

    fn sum(&mut self) -> Result<Expr, DslError> {
        self.bump();
        self.expect(Tok::LParen, "'(' after sum")?;
        let var = match &self.peek().tok {
            Tok::Ident(name) if KEYWORDS.contains(&name.as_str()) => {
                return Err(self.error("reserved word cannot be a summation index"))
            }
            Tok::Ident(name) if self.scope.contains(name) => {
                return Err(self.error("summation index shadows an enclosing index"))
            }
            Tok::Ident(name) => name.clone(),
            _ => return Err(self.error("expected summation index")),
        };
        self.bump();
        self.expect(Tok::Comma, "','")?;
        let lo = self.expr()?;
        self.expect(Tok::Comma, "','")?;
        let hi = self.count()?;
        self.expect(Tok::Comma, "','")?;
        self.scope.push(var.clone());
        let body = self.expr();
        self.scope.pop();
        let body = body?;
        self.expect(Tok::RParen, "')'")?;
        Ok(Expr::Sum {
            var,
            lo: Box::new(lo),
            hi,
            body: Box::new(body),
        })
    }
}

pub fn parse(text: &str) -> Result<Expr, DslError> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
        scope: Vec::new(),
    };
    let e = parser.expr()?;
    if parser.peek().tok != Tok::Eof {
        return Err(parser.error("unexpected token after expression"));
    }
    Ok(e)
}
