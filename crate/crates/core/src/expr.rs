//! Tiny expression parser for user-supplied mass profiles.
//!
//! Grammar: the variable `x`, decimal literals, `+ - * / ^`, parentheses,
//! unary minus, the constants `pi` and `e`, and a fixed set of functions
//! (`sin cos tan sinh cosh tanh exp ln log sqrt abs atan`). `^` is
//! right-associative. Errors report the byte offset of the offending token.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Ln,
    Sqrt,
    Abs,
    Atan,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "tanh" => Func::Tanh,
            "exp" => Func::Exp,
            "ln" | "log" => Func::Ln,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            "atan" => Func::Atan,
            _ => return None,
        })
    }

    fn apply<R: Real>(self, v: R) -> R {
        match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Tan => v.tan(),
            Func::Sinh => v.sinh(),
            Func::Cosh => v.cosh(),
            Func::Tanh => v.tanh(),
            Func::Exp => v.exp(),
            Func::Ln => v.ln(),
            Func::Sqrt => v.sqrt(),
            Func::Abs => v.abs(),
            Func::Atan => v.atan(),
        }
    }
}

/// Parsed expression in one variable.
#[derive(Debug, Clone)]
pub enum Expr {
    Num(f64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    /// Parses `src` into an expression tree.
    pub fn parse(src: &str) -> Result<Expr> {
        let tokens = tokenize(src)?;
        let mut p = Parser {
            tokens,
            pos: 0,
            src_len: src.len(),
        };
        let e = p.expr(0)?;
        if p.pos < p.tokens.len() {
            return Err(Error::Parse {
                position: p.tokens[p.pos].1,
                message: format!("unexpected trailing token {:?}", p.tokens[p.pos].0),
            });
        }
        Ok(e)
    }

    /// Evaluates at `x`, with literals converted to the scalar type.
    pub fn eval<R: Real>(&self, x: R) -> R {
        match self {
            Expr::Num(c) => R::lit(*c),
            Expr::Var => x,
            Expr::Neg(e) => -e.eval(x),
            Expr::Add(a, b) => a.eval(x) + b.eval(x),
            Expr::Sub(a, b) => a.eval(x) - b.eval(x),
            Expr::Mul(a, b) => a.eval(x) * b.eval(x),
            Expr::Div(a, b) => a.eval(x) / b.eval(x),
            Expr::Pow(a, b) => a.eval(x).powf(b.eval(x)),
            Expr::Call(f, e) => f.apply(e.eval(x)),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((Token::Plus, i));
                i += 1;
            }
            '-' => {
                out.push((Token::Minus, i));
                i += 1;
            }
            '*' => {
                out.push((Token::Star, i));
                i += 1;
            }
            '/' => {
                out.push((Token::Slash, i));
                i += 1;
            }
            '^' => {
                out.push((Token::Caret, i));
                i += 1;
            }
            '(' => {
                out.push((Token::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Token::RParen, i));
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_digit()
                        || bytes[i] == b'.'
                        || bytes[i] == b'e'
                        || bytes[i] == b'E'
                        || ((bytes[i] == b'+' || bytes[i] == b'-')
                            && i > start
                            && (bytes[i - 1] == b'e' || bytes[i - 1] == b'E')))
                {
                    i += 1;
                }
                let text = &src[start..i];
                let v: f64 = text.parse().map_err(|_| Error::Parse {
                    position: start,
                    message: format!("bad number literal '{text}'"),
                })?;
                out.push((Token::Num(v), start));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Token::Ident(src[start..i].to_string()), start));
            }
            _ => {
                return Err(Error::Parse {
                    position: i,
                    message: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    src_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.src_len)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token) -> Result<()> {
        let at = self.here();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            got => Err(Error::Parse {
                position: at,
                message: format!("expected {want:?}, found {got:?}"),
            }),
        }
    }

    // Pratt loop; binding powers: +,- = 1; *,/ = 2; ^ = 4 (right assoc).
    fn expr(&mut self, min_bp: u8) -> Result<Expr> {
        let mut lhs = self.atom()?;
        loop {
            let (op, bp) = match self.peek() {
                Some(Token::Plus) => (Token::Plus, 1),
                Some(Token::Minus) => (Token::Minus, 1),
                Some(Token::Star) => (Token::Star, 2),
                Some(Token::Slash) => (Token::Slash, 2),
                Some(Token::Caret) => (Token::Caret, 4),
                _ => break,
            };
            if bp < min_bp {
                break;
            }
            self.bump();
            let rhs = if op == Token::Caret {
                self.expr(bp)? // right-associative: same bp recurses
            } else {
                self.expr(bp + 1)?
            };
            lhs = match op {
                Token::Plus => Expr::Add(Box::new(lhs), Box::new(rhs)),
                Token::Minus => Expr::Sub(Box::new(lhs), Box::new(rhs)),
                Token::Star => Expr::Mul(Box::new(lhs), Box::new(rhs)),
                Token::Slash => Expr::Div(Box::new(lhs), Box::new(rhs)),
                Token::Caret => Expr::Pow(Box::new(lhs), Box::new(rhs)),
                _ => unreachable!(),
            };
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.here();
        match self.bump() {
            Some(Token::Num(v)) => Ok(Expr::Num(v)),
            Some(Token::Minus) => Ok(Expr::Neg(Box::new(self.expr(3)?))),
            Some(Token::Plus) => self.atom(),
            Some(Token::LParen) => {
                let e = self.expr(0)?;
                self.expect(Token::RParen)?;
                Ok(e)
            }
            Some(Token::Ident(name)) => match name.as_str() {
                "x" => Ok(Expr::Var),
                "pi" => Ok(Expr::Num(std::f64::consts::PI)),
                "e" => Ok(Expr::Num(std::f64::consts::E)),
                other => {
                    if let Some(f) = Func::from_name(other) {
                        self.expect(Token::LParen)?;
                        let arg = self.expr(0)?;
                        self.expect(Token::RParen)?;
                        Ok(Expr::Call(f, Box::new(arg)))
                    } else {
                        Err(Error::Parse {
                            position: at,
                            message: format!("unknown identifier '{other}'"),
                        })
                    }
                }
            },
            got => Err(Error::Parse {
                position: at,
                message: format!("expected expression, found {got:?}"),
            }),
        }
    }
}
