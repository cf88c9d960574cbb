//! Recursive-descent parser for program files, programs and guards.
//!
//! ```text
//! file    := header stmt
//! header  := "vars" ident ("," ident)* "mod" number
//! stmt    := simple (";" stmt?)?
//! simple  := "skip" | "diverge" | ident ":=" expr
//!          | "if" guard block "else" block | "while" guard block
//!          | block ("[]" block)*
//! block   := "{" stmt "}"
//! guard   := conj ("||" conj)*
//! conj    := unary ("&&" unary)*
//! unary   := "!" unary | "true" | "false" | expr cmp expr | "(" guard ")"
//! expr    := term (("+" | "-") term)*
//! term    := atom ("*" atom)*
//! atom    := number | ident | "(" expr ")"
//! ```

use super::ast::{CmpOp, Expr, Guard, Program};
use super::space::{StateSpace, MAX_STATES};
use crate::error::{Error, Result};

const KEYWORDS: &[&str] = &[
    "skip", "diverge", "if", "else", "while", "true", "false", "vars", "mod",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Assign,
    Semi,
    Comma,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Box,
    Plus,
    Minus,
    Star,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Bang,
    AndAnd,
    OrOr,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::Assign => ":=",
            Tok::Semi => ";",
            Tok::Comma => ",",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Box => "[]",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Eq => "=",
            Tok::Ne => "!=",
            Tok::Lt => "<",
            Tok::Le => "<=",
            Tok::Gt => ">",
            Tok::Ge => ">=",
            Tok::Bang => "!",
            Tok::AndAnd => "&&",
            Tok::OrOr => "||",
            _ => "",
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let next = chars.get(i + 1).copied();
        let two = |t: Tok| (t, 2);
        let (tok, len) = if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            (Tok::Ident(chars[start..j].iter().collect()), j - i)
        } else if c.is_ascii_digit() {
            let mut j = i;
            let mut n: u64 = 0;
            while j < chars.len() && chars[j].is_ascii_digit() {
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add(chars[j] as u64 - '0' as u64))
                    .ok_or(Error::Syntax {
                        line: l0,
                        col: c0,
                        msg: "integer literal too large".into(),
                    })?;
                j += 1;
            }
            (Tok::Num(n), j - i)
        } else {
            match (c, next) {
                (':', Some('=')) => two(Tok::Assign),
                ('[', Some(']')) => two(Tok::Box),
                ('=', Some('=')) => two(Tok::Eq),
                ('!', Some('=')) => two(Tok::Ne),
                ('<', Some('=')) => two(Tok::Le),
                ('>', Some('=')) => two(Tok::Ge),
                ('&', Some('&')) => two(Tok::AndAnd),
                ('|', Some('|')) => two(Tok::OrOr),
                (';', _) => (Tok::Semi, 1),
                (',', _) => (Tok::Comma, 1),
                ('{', _) => (Tok::LBrace, 1),
                ('}', _) => (Tok::RBrace, 1),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                ('+', _) => (Tok::Plus, 1),
                ('-', _) => (Tok::Minus, 1),
                ('*', _) => (Tok::Star, 1),
                ('=', _) => (Tok::Eq, 1),
                ('<', _) => (Tok::Lt, 1),
                ('>', _) => (Tok::Gt, 1),
                ('!', _) => (Tok::Bang, 1),
                _ => {
                    return Err(Error::Syntax {
                        line: l0,
                        col: c0,
                        msg: format!("unexpected character `{c}`"),
                    })
                }
            }
        };
        out.push(Spanned {
            tok,
            line: l0,
            col: c0,
        });
        i += len;
        col += len;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    space: Option<&'a StateSpace>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, space: Option<&'a StateSpace>) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            space,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Syntax {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!(
                "expected {}, found {}",
                tok.describe(),
                self.peek().describe()
            ))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_kw(&mut self, kw: &str) -> Result<()> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected `{kw}`, found {}", self.peek().describe()))
        }
    }

    fn expect_eof(&mut self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error(format!("unexpected {}", self.peek().describe()))
        }
    }

    fn space(&self) -> &'a StateSpace {
        self.space
            .expect("state space is set before parsing statements")
    }

    fn header(&mut self) -> Result<(Vec<String>, u32)> {
        self.expect_kw("vars")?;
        let mut vars = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Ident(s) if !is_keyword(&s) => {
                    self.bump();
                    vars.push(s);
                }
                other => {
                    return self.error(format!(
                        "expected variable name, found {}",
                        other.describe()
                    ))
                }
            }
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        self.expect_kw("mod")?;
        match self.peek().clone() {
            Tok::Num(n) if n >= 1 && n <= MAX_STATES as u64 => {
                self.bump();
                Ok((vars, n as u32))
            }
            other => self.error(format!(
                "expected positive modulus, found {}",
                other.describe()
            )),
        }
    }

    fn stmt(&mut self) -> Result<Program> {
        let first = self.simple()?;
        if *self.peek() == Tok::Semi {
            self.bump();
            if matches!(self.peek(), Tok::RBrace | Tok::Eof) {
                return Ok(first);
            }
            let rest = self.stmt()?;
            return Ok(Program::seq(first, rest));
        }
        Ok(first)
    }

    fn simple(&mut self) -> Result<Program> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "skip" => {
                self.bump();
                Ok(Program::Skip)
            }
            Tok::Ident(s) if s == "diverge" => {
                self.bump();
                Ok(Program::Diverge)
            }
            Tok::Ident(s) if s == "if" => {
                self.bump();
                let g = self.guard()?;
                let a = self.block()?;
                self.expect_kw("else")?;
                let b = self.block()?;
                Ok(Program::ite(g, a, b))
            }
            Tok::Ident(s) if s == "while" => {
                self.bump();
                let g = self.guard()?;
                let body = self.block()?;
                Ok(Program::while_loop(g, body))
            }
            Tok::Ident(s) if !is_keyword(&s) => {
                let var = self.variable()?;
                self.expect(Tok::Assign)?;
                let e = self.expr()?;
                Ok(Program::assign(var, e))
            }
            Tok::LBrace => {
                let mut p = self.block()?;
                while *self.peek() == Tok::Box {
                    self.bump();
                    let q = self.block()?;
                    p = Program::choice(p, q);
                }
                Ok(p)
            }
            other => self.error(format!("expected statement, found {}", other.describe())),
        }
    }

    fn block(&mut self) -> Result<Program> {
        self.expect(Tok::LBrace)?;
        let p = self.stmt()?;
        self.expect(Tok::RBrace)?;
        Ok(p)
    }

    fn variable(&mut self) -> Result<usize> {
        let t = self.bump();
        match t.tok {
            Tok::Ident(name) => self.space().var_index(&name).ok_or(Error::UnknownVariable {
                name,
                line: t.line,
                col: t.col,
            }),
            _ => unreachable!("variable() is only called on identifiers"),
        }
    }

    fn guard(&mut self) -> Result<Guard> {
        let mut g = self.conj()?;
        while *self.peek() == Tok::OrOr {
            self.bump();
            g = Guard::or(g, self.conj()?);
        }
        Ok(g)
    }

    fn conj(&mut self) -> Result<Guard> {
        let mut g = self.unary()?;
        while *self.peek() == Tok::AndAnd {
            self.bump();
            g = Guard::and(g, self.unary()?);
        }
        Ok(g)
    }

    fn unary(&mut self) -> Result<Guard> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(Guard::not(self.unary()?))
            }
            Tok::Ident(s) if s == "true" => {
                self.bump();
                Ok(Guard::True)
            }
            Tok::Ident(s) if s == "false" => {
                self.bump();
                Ok(Guard::False)
            }
            Tok::LParen => {
                let save = self.pos;
                match self.comparison() {
                    Ok(g) => Ok(g),
                    Err(first) => {
                        let reached = self.pos;
                        self.pos = save;
                        self.bump();
                        match self
                            .guard()
                            .and_then(|g| self.expect(Tok::RParen).map(|_| g))
                        {
                            Ok(g) => Ok(g),
                            Err(second) => {
                                if matches!(first, Error::UnknownVariable { .. })
                                    || reached > self.pos
                                {
                                    Err(first)
                                } else {
                                    Err(second)
                                }
                            }
                        }
                    }
                }
            }
            _ => self.comparison(),
        }
    }

    fn comparison(&mut self) -> Result<Guard> {
        let a = self.expr()?;
        let op = match self.peek() {
            Tok::Eq => CmpOp::Eq,
            Tok::Ne => CmpOp::Ne,
            Tok::Lt => CmpOp::Lt,
            Tok::Le => CmpOp::Le,
            Tok::Gt | Tok::Ge => {
                let strict = *self.peek() == Tok::Gt;
                self.bump();
                let b = self.expr()?;
                let op = if strict { CmpOp::Lt } else { CmpOp::Le };
                return Ok(Guard::cmp(op, b, a));
            }
            other => return self.error(format!("expected comparison, found {}", other.describe())),
        };
        self.bump();
        let b = self.expr()?;
        Ok(Guard::cmp(op, a, b))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    e = Expr::add(e, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    e = Expr::sub(e, self.term()?);
                }
                _ => return Ok(e),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            e = Expr::mul(e, self.atom()?);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                let m = self.space().modulus() as u64;
                Ok(Expr::Const((n % m) as u32))
            }
            Tok::Ident(s) if !is_keyword(&s) => Ok(Expr::Var(self.variable()?)),
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => self.error(format!("expected expression, found {}", other.describe())),
        }
    }
}

/// Parses a program body against an existing state space.
pub fn parse_program(text: &str, space: &StateSpace) -> Result<Program> {
    let mut p = Parser::new(text, Some(space))?;
    let prog = p.stmt()?;
    p.expect_eof()?;
    Ok(prog)
}

/// Parses a guard; the result doubles as predicate syntax.
pub fn parse_guard(text: &str, space: &StateSpace) -> Result<Guard> {
    let mut p = Parser::new(text, Some(space))?;
    let g = p.guard()?;
    p.expect_eof()?;
    Ok(g)
}

/// A self-contained program file: header plus body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgramFile {
    pub space: StateSpace,
    pub program: Program,
}

/// Parses `vars x, y mod m` followed by a program. `modulus` overrides the
/// declared modulus; `cap` bounds `|Σ|`.
pub fn parse_file(text: &str, modulus: Option<u32>, cap: usize) -> Result<ProgramFile> {
    let mut p = Parser::new(text, None)?;
    let (line, col) = (p.toks[0].line, p.toks[0].col);
    let (vars, declared) = p.header()?;
    let space =
        StateSpace::with_cap(&vars, modulus.unwrap_or(declared), cap).map_err(|e| match e {
            Error::Space(msg) => Error::Syntax { line, col, msg },
            other => other,
        })?;
    let mut body = Parser {
        toks: p.toks,
        pos: p.pos,
        space: Some(&space),
    };
    let program = body.stmt()?;
    body.expect_eof()?;
    Ok(ProgramFile { space, program })
}
