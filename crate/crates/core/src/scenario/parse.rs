//! Lexer and recursive-descent parser for scenario files.

use super::{
    ActionExpr, ConstructionExpr, ElementExpr, HomExpr, IdealExpr, Key, Poly, ProductsExpr, RingExpr, Scenario,
};
use crate::error::{Result, ZdaError};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Arrow,
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, k) = (line, col);
        let bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>, col: &mut usize| {
            *col += 1;
            chars.next()
        };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                bump(&mut chars, &mut col);
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars, &mut col);
                }
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    bump(&mut chars, &mut col);
                }
                let v = s.parse().map_err(|_| syntax(l, k, format!("integer {s} is too large")))?;
                out.push(Token { tok: Tok::Int(v), line: l, col: k });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                    s.push(d);
                    bump(&mut chars, &mut col);
                }
                out.push(Token { tok: Tok::Ident(s), line: l, col: k });
            }
            '-' => {
                bump(&mut chars, &mut col);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars, &mut col);
                    out.push(Token { tok: Tok::Arrow, line: l, col: k });
                } else {
                    out.push(Token { tok: Tok::Sym('-'), line: l, col: k });
                }
            }
            '=' | ';' | '[' | ']' | '(' | ')' | '{' | '}' | ',' | '*' | '/' | '+' | '^' => {
                bump(&mut chars, &mut col);
                out.push(Token { tok: Tok::Sym(c), line: l, col: k });
            }
            other => return Err(syntax(l, k, format!("unexpected character {other:?}"))),
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> ZdaError {
    ZdaError::Syntax { line, col, msg: msg.into() }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

pub(super) fn parse(text: &str) -> Result<Scenario> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut sc = Scenario::default();
    loop {
        while p.eat_sym(';') {}
        if p.peek() == &Tok::Eof {
            break;
        }
        let t = p.next();
        let name = match t.tok {
            Tok::Ident(name) => name,
            other => return Err(syntax(t.line, t.col, format!("expected a key, found {}", describe(&other)))),
        };
        let key = Key::from_name(&name).ok_or_else(|| ZdaError::Semantic {
            line: t.line,
            col: t.col,
            msg: format!("unknown key {name:?}"),
        })?;
        if sc.spans.contains_key(&key) {
            return Err(ZdaError::Semantic { line: t.line, col: t.col, msg: format!("duplicate key {name:?}") });
        }
        p.expect_sym('=')?;
        sc.spans.insert(key, (t.line, t.col));
        match key {
            Key::R => sc.r = Some(p.ring()?),
            Key::S => sc.s = Some(p.ring()?),
            Key::M => sc.m = Some(p.ring()?),
            Key::F => sc.f = Some(p.hom()?),
            Key::J => sc.j = Some(p.ideal()?),
            Key::Action => sc.action = Some(p.action()?),
            Key::Products => sc.products = Some(p.products()?),
            Key::Construction => sc.construction = Some(p.construction()?),
        }
    }
    Ok(sc)
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("{s:?}"),
        Tok::Int(v) => format!("{v}"),
        Tok::Arrow => "\"->\"".into(),
        Tok::Sym(c) => format!("{:?}", c.to_string()),
        Tok::Eof => "end of input".into(),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn error<T>(&self, what: &str) -> Result<T> {
        let (l, c) = self.here();
        Err(syntax(l, c, format!("expected {what}, found {}", describe(self.peek()))))
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.error(&format!("{:?}", c.to_string()))
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if matches!(self.peek(), Tok::Ident(s) if s == w) {
            self.next();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<u64> {
        match *self.peek() {
            Tok::Int(v) => {
                self.next();
                Ok(v)
            }
            _ => self.error("an integer"),
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            _ => self.error("a name"),
        }
    }

    fn ring(&mut self) -> Result<RingExpr> {
        let mut left = self.ring_postfix()?;
        while self.eat_sym('*') {
            let right = self.ring_postfix()?;
            left = RingExpr::Product(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn ring_postfix(&mut self) -> Result<RingExpr> {
        let mut base = self.ring_atom()?;
        while self.eat_sym('[') {
            let var = self.ident()?;
            self.expect_sym(']')?;
            self.expect_sym('/')?;
            self.expect_sym('(')?;
            let (line, col) = self.here();
            let modulus = self.poly()?;
            self.expect_sym(')')?;
            if let Some(other) = modulus.var.as_ref().filter(|v| **v != var) {
                return Err(syntax(line, col, format!("modulus uses {other:?} but the variable is {var:?}")));
            }
            base = RingExpr::Quotient { base: Box::new(base), var, modulus };
        }
        Ok(base)
    }

    fn ring_atom(&mut self) -> Result<RingExpr> {
        if self.eat_sym('(') {
            let r = self.ring()?;
            self.expect_sym(')')?;
            return Ok(r);
        }
        let (line, col) = self.here();
        match self.peek().clone() {
            Tok::Ident(s) if s == "Z" => {
                self.next();
                Ok(RingExpr::Zn(self.int()?))
            }
            Tok::Ident(s) if s.len() > 1 && s.starts_with('Z') && s[1..].bytes().all(|b| b.is_ascii_digit()) => {
                self.next();
                let n = s[1..].parse().map_err(|_| syntax(line, col, format!("modulus in {s} is too large")))?;
                Ok(RingExpr::Zn(n))
            }
            _ => self.error("a ring (Z<n>, a product or a quotient)"),
        }
    }

    /// `['+'|'-'] term (('+'|'-') term)*` with `term := INT ['*'] [IDENT ['^' INT]] | IDENT ['^' INT]`.
    fn poly(&mut self) -> Result<Poly> {
        let mut poly = Poly::default();
        let mut sign = if self.eat_sym('-') {
            -1
        } else {
            self.eat_sym('+');
            1
        };
        loop {
            let (line, col) = self.here();
            let mut coeff: i64 = 1;
            let mut have_coeff = false;
            if let Tok::Int(v) = *self.peek() {
                self.next();
                coeff = i64::try_from(v).map_err(|_| syntax(line, col, "coefficient is too large"))?;
                have_coeff = true;
                if matches!(self.peek(), Tok::Sym('*')) && matches!(self.peek_at(1), Tok::Ident(_)) {
                    self.next();
                }
            }
            let mut exp = 0;
            if let Tok::Ident(v) = self.peek().clone() {
                self.next();
                match &poly.var {
                    Some(w) if *w != v => {
                        return Err(syntax(line, col, format!("polynomial mixes variables {w:?} and {v:?}")))
                    }
                    _ => poly.var = Some(v),
                }
                exp = 1;
                if self.eat_sym('^') {
                    let (l, c) = self.here();
                    exp = u32::try_from(self.int()?).map_err(|_| syntax(l, c, "exponent is too large"))?;
                }
            } else if !have_coeff {
                return self.error("a polynomial term");
            }
            poly.add_term(exp, sign * coeff);
            sign = if self.eat_sym('+') {
                1
            } else if self.eat_sym('-') {
                -1
            } else {
                break;
            };
        }
        poly.normalize();
        Ok(poly)
    }

    fn element(&mut self) -> Result<ElementExpr> {
        if self.eat_sym('(') {
            let mut parts = vec![self.element()?];
            while self.eat_sym(',') {
                parts.push(self.element()?);
            }
            self.expect_sym(')')?;
            return Ok(if parts.len() == 1 { parts.pop().unwrap() } else { ElementExpr::Tuple(parts) });
        }
        Ok(ElementExpr::Poly(self.poly()?))
    }

    fn element_list(&mut self, close: char) -> Result<Vec<ElementExpr>> {
        let mut out = Vec::new();
        if self.eat_sym(close) {
            return Ok(out);
        }
        loop {
            out.push(self.element()?);
            if self.eat_sym(close) {
                return Ok(out);
            }
            self.expect_sym(',')?;
        }
    }

    fn ideal(&mut self) -> Result<IdealExpr> {
        if self.eat_word("gen") {
            self.expect_sym('(')?;
            return Ok(IdealExpr::Gen(self.element_list(')')?));
        }
        if self.eat_sym('{') {
            return Ok(IdealExpr::Set(self.element_list('}')?));
        }
        self.error("gen(...) or a set {...}")
    }

    fn hom(&mut self) -> Result<HomExpr> {
        if self.eat_word("identity") {
            return Ok(HomExpr::Identity);
        }
        if self.eat_word("natural") {
            return Ok(HomExpr::Natural);
        }
        if self.eat_word("map") {
            self.expect_sym('{')?;
            let mut rules = Vec::new();
            if self.eat_sym('}') {
                return Ok(HomExpr::Map(rules));
            }
            loop {
                let a = self.element()?;
                if self.next().tok != Tok::Arrow {
                    self.pos -= 1;
                    return self.error("\"->\"");
                }
                rules.push((a, self.element()?));
                if self.eat_sym('}') {
                    return Ok(HomExpr::Map(rules));
                }
                self.expect_sym(',')?;
            }
        }
        self.error("identity, natural or map {...}")
    }

    fn construction(&mut self) -> Result<ConstructionExpr> {
        for (w, c) in [
            ("amalgamation", ConstructionExpr::Amalgamation),
            ("duplication", ConstructionExpr::Duplication),
            ("idealization", ConstructionExpr::Idealization),
        ] {
            if self.eat_word(w) {
                return Ok(c);
            }
        }
        if self.eat_word("trivial_ext") {
            let paren = self.eat_sym('(');
            let n = self.int()?;
            if paren {
                self.expect_sym(')')?;
            }
            return Ok(ConstructionExpr::TrivialExt(n as usize));
        }
        self.error("amalgamation, duplication, idealization or trivial_ext <n>")
    }

    fn action(&mut self) -> Result<ActionExpr> {
        if self.eat_word("natural") {
            return Ok(ActionExpr::Natural);
        }
        if self.eat_word("project") {
            self.expect_sym('(')?;
            let k = self.int()?;
            self.expect_sym(')')?;
            return Ok(ActionExpr::Project(k as usize));
        }
        self.error("natural or project(<k>)")
    }

    fn products(&mut self) -> Result<ProductsExpr> {
        if self.eat_word("ring") {
            return Ok(ProductsExpr::Ring);
        }
        if self.eat_word("zero") {
            return Ok(ProductsExpr::Zero);
        }
        self.error("ring or zero")
    }
}
