//! Surface syntax for states and scalars.
//!
//! Grammar:
//!   expr     := sum
//!   sum      := prodterm (("+" | "-") prodterm)*
//!   prodterm := unary (("*" | "/") unary)*
//!   unary    := "-" unary | power
//!   power    := atom ("^" int)?
//!   atom     := name | call | int | ":" letter+ ":" | "(" expr ")"
//!   call     := ("no" | "prod" | "bra" | "D" ("^" int)?) "(" args ")"
//!
//! Names are the registry identifiers of the active configuration (they may
//! contain `[i,j]`, a trailing `+`/`-`/`^`, or a `(n)` suffix), matched
//! longest-first. Scalar symbols are the parameter bindings of the active
//! context. The colon form is the canonical rendering of monomials, so
//! printed states parse back.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Name(String),
    Int(i64),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Der(Box<Expr>, u32),
    Nop(Box<Expr>, Box<Expr>),
    Prod(Box<Expr>, Box<Expr>, i64),
    Bra(Box<Expr>, Box<Expr>),
    /// `:g1 D(g2) D^2(g3):` - a normally ordered monomial of letters.
    Colon(Vec<(String, u32)>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)
    }
}

pub struct Parser<'a> {
    text: &'a str,
    pos: usize,
    /// registry and generator names, longest first
    names: Vec<String>,
    /// scalar parameter symbols of the active context
    symbols: Vec<String>,
}

impl<'a> Parser<'a> {
    pub fn new(text: &'a str, names: &[String], symbols: &[String]) -> Self {
        let mut names: Vec<String> = names.to_vec();
        names.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        Parser {
            text,
            pos: 0,
            names,
            symbols: symbols.to_vec(),
        }
    }

    pub fn parse(mut self) -> Result<Expr, ParseError> {
        let e = self.sum()?;
        self.skip_ws();
        if self.pos != self.text.len() {
            return Err(self.err("trailing input"));
        }
        Ok(e)
    }

    fn err(&self, message: &str) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn peek_char(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.prodterm()?;
        loop {
            self.skip_ws();
            if self.eat("+") {
                acc = Expr::Add(Box::new(acc), Box::new(self.prodterm()?));
            } else if self.eat("-") {
                acc = Expr::Sub(Box::new(acc), Box::new(self.prodterm()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn prodterm(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            if self.eat("*") {
                acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
            } else if self.eat("/") {
                acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        self.skip_ws();
        // `^` is a power only when followed by an integer; a bare trailing
        // `^` belongs to coset field names and is consumed by name matching
        if self.rest().starts_with('^') {
            let after = &self.rest()[1..];
            if after.trim_start().starts_with(|c: char| c.is_ascii_digit() || c == '-') {
                self.pos += 1;
                let e = self.integer()?;
                return Ok(Expr::Pow(Box::new(base), e));
            }
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let neg = self.eat("-");
        let start = self.pos;
        while self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        let v: i64 = self.text[start..self.pos]
            .parse()
            .map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        match self.peek_char() {
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(")") {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(':') => self.colon_monomial(),
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.integer()?)),
            Some(c) if c.is_alphabetic() => self.name_or_call(),
            _ => Err(self.err("expected an atom")),
        }
    }

    fn colon_monomial(&mut self) -> Result<Expr, ParseError> {
        assert!(self.eat(":"));
        let mut letters = Vec::new();
        loop {
            self.skip_ws();
            if self.eat(":") {
                if letters.is_empty() {
                    return Err(self.err("empty normally ordered monomial"));
                }
                return Ok(Expr::Colon(letters));
            }
            letters.push(self.letter()?);
        }
    }

    /// `name`, `D(name)` or `D^m(name)` inside a colon monomial.
    fn letter(&mut self) -> Result<(String, u32), ParseError> {
        self.skip_ws();
        if self.rest().starts_with("D(") || self.rest().starts_with("D^") {
            self.pos += 1;
            let m = if self.eat("^") {
                let v = self.integer()?;
                u32::try_from(v).map_err(|_| self.err("negative derivative order"))?
            } else {
                1
            };
            if !self.eat("(") {
                return Err(self.err("expected `(` after D"));
            }
            let name = self.match_name().ok_or_else(|| self.err("unknown name"))?;
            if !self.eat(")") {
                return Err(self.err("expected `)`"));
            }
            Ok((name, m))
        } else {
            let name = self.match_name().ok_or_else(|| self.err("unknown name"))?;
            Ok((name, 0))
        }
    }

    fn match_name(&mut self) -> Option<String> {
        self.skip_ws();
        let rest = self.rest();
        for name in &self.names {
            if rest.starts_with(name.as_str()) {
                // reject when the match is a prefix of a longer identifier
                let after = &rest[name.len()..];
                if after.starts_with(|c: char| c.is_alphanumeric()) {
                    continue;
                }
                self.pos += name.len();
                return Some(name.clone());
            }
        }
        None
    }

    fn name_or_call(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        // call keywords first
        for kw in ["no", "prod", "bra"] {
            if rest.starts_with(kw)
                && rest[kw.len()..].trim_start().starts_with('(')
                && !self.names.iter().any(|n| n == kw)
            {
                self.pos += kw.len();
                self.eat("(");
                let a = self.sum()?;
                if !self.eat(",") {
                    return Err(self.err("expected `,`"));
                }
                let b = self.sum()?;
                let e = match kw {
                    "no" => Expr::Nop(Box::new(a), Box::new(b)),
                    "bra" => Expr::Bra(Box::new(a), Box::new(b)),
                    "prod" => {
                        if !self.eat(",") {
                            return Err(self.err("expected `,` before product index"));
                        }
                        let n = self.integer()?;
                        Expr::Prod(Box::new(a), Box::new(b), n)
                    }
                    _ => unreachable!(),
                };
                if !self.eat(")") {
                    return Err(self.err("expected `)`"));
                }
                return Ok(e);
            }
        }
        if (rest.starts_with("D(") || rest.starts_with("D^")) && !self.names.iter().any(|n| n == "D")
        {
            self.pos += 1;
            let m = if self.eat("^") {
                let v = self.integer()?;
                u32::try_from(v).map_err(|_| self.err("negative derivative order"))?
            } else {
                1
            };
            if !self.eat("(") {
                return Err(self.err("expected `(` after D"));
            }
            let e = self.sum()?;
            if !self.eat(")") {
                return Err(self.err("expected `)`"));
            }
            return Ok(Expr::Der(Box::new(e), m));
        }
        // registry / generator name
        if let Some(name) = self.match_name() {
            return Ok(Expr::Name(name));
        }
        // scalar parameter symbol
        let symbols = self.symbols.clone();
        for sym in &symbols {
            let rest = self.rest();
            if rest.starts_with(sym.as_str())
                && !rest[sym.len()..].starts_with(|c: char| c.is_alphanumeric())
            {
                self.pos += sym.len();
                return Ok(Expr::Sym(sym.clone()));
            }
        }
        Err(self.err("unknown name"))
    }
}

/// Canonical rendering; `parse(render(e))` returns `e` for well-formed
/// trees over the same name set.
pub fn render(e: &Expr) -> String {
    fn prec(e: &Expr) -> u8 {
        match e {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
    fn wrap(parent: u8, child: &Expr) -> String {
        if prec(child) < parent {
            format!("({})", render(child))
        } else {
            render(child)
        }
    }
    match e {
        Expr::Name(n) => n.clone(),
        Expr::Int(v) => {
            if *v < 0 {
                format!("({})", v)
            } else {
                v.to_string()
            }
        }
        Expr::Sym(s) => s.clone(),
        Expr::Neg(a) => format!("-{}", wrap(3, a)),
        Expr::Add(a, b) => format!("{} + {}", wrap(1, a), wrap(2, b)),
        Expr::Sub(a, b) => format!("{} - {}", wrap(1, a), wrap(2, b)),
        Expr::Mul(a, b) => format!("{}*{}", wrap(2, a), wrap(3, b)),
        Expr::Div(a, b) => format!("{}/{}", wrap(2, a), wrap(3, b)),
        Expr::Pow(a, n) => {
            if *n < 0 {
                format!("{}^-{}", wrap(5, a), -n)
            } else {
                format!("{}^{}", wrap(5, a), n)
            }
        }
        Expr::Der(a, 1) => format!("D({})", render(a)),
        Expr::Der(a, m) => format!("D^{}({})", m, render(a)),
        Expr::Nop(a, b) => format!("no({}, {})", render(a), render(b)),
        Expr::Prod(a, b, n) => format!("prod({}, {}, {})", render(a), render(b), n),
        Expr::Bra(a, b) => format!("bra({}, {})", render(a), render(b)),
        Expr::Colon(letters) => {
            let parts: Vec<String> = letters
                .iter()
                .map(|(name, d)| match d {
                    0 => name.clone(),
                    1 => format!("D({})", name),
                    m => format!("D^{}({})", m, name),
                })
                .collect();
            format!(":{}:", parts.join(" "))
        }
    }
}
