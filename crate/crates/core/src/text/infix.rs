//! Human-friendly infix syntax for elements and forms, e.g. `x dx`,
//! `(x+1)/y^2 dx^dy`, `dlog(x*y)`, `d(x^3 y)`.
//!
//! Juxtaposition and `*` multiply (wedge for forms). `^` followed by an
//! integer is a power; otherwise it is a wedge. `dx` is the differential of
//! the variable `x`, unless `dx` is itself a variable name.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::field::{FunctionField, MultiPoly, RatFunc};
use crate::forms::DiffForm;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()∧".contains(c) {
            out.push(Token::Sym(if c == '∧' { '^' } else { c }));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    field: &'a FunctionField,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<DiffForm> {
        let neg = self.eat('-');
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = add_forms(&acc, &t)?;
            } else if self.eat('-') {
                let t = self.term()?;
                acc = add_forms(&acc, &t.neg())?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Token::Num(_)) | Some(Token::Ident(_)) | Some(Token::Sym('('))
        )
    }

    fn term(&mut self) -> Result<DiffForm> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') || self.eat('^') {
                let f = self.power()?;
                acc = acc.wedge(&f)?;
            } else if self.eat('/') {
                let f = self.power()?;
                let den = f
                    .as_scalar()
                    .ok_or_else(|| Error::Parse("can only divide by a function".into()))?;
                acc = acc.scale(&den.inv()?);
            } else if self.starts_factor() {
                let f = self.power()?;
                acc = acc.wedge(&f)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<DiffForm> {
        let base = self.atom()?;
        let exponent_follows = self.peek() == Some(&Token::Sym('^'))
            && (matches!(self.toks.get(self.pos + 1), Some(Token::Num(_)))
                || (self.toks.get(self.pos + 1) == Some(&Token::Sym('-'))
                    && matches!(self.toks.get(self.pos + 2), Some(Token::Num(_)))));
        if !exponent_follows {
            return Ok(base);
        }
        self.pos += 1;
        let neg = self.eat('-');
        let Some(Token::Num(n)) = self.peek().cloned() else {
            unreachable!()
        };
        self.pos += 1;
        let e: i64 = n
            .parse()
            .map_err(|_| Error::Parse(format!("exponent `{n}` too large")))?;
        let f = base
            .as_scalar()
            .ok_or_else(|| Error::Parse("powers apply to functions only".into()))?;
        Ok(DiffForm::scalar(
            self.field,
            f.powi(if neg { -e } else { e })?,
        ))
    }

    fn atom(&mut self) -> Result<DiffForm> {
        let field = self.field;
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                let p = field.p() as u64;
                let c = n
                    .bytes()
                    .fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p);
                Ok(DiffForm::scalar(field, field.constant(c as i64)))
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = field.var_index(&name) {
                    return Ok(DiffForm::scalar(field, field.var(i)));
                }
                if (name == "dlog" || name == "d") && self.peek() == Some(&Token::Sym('(')) {
                    self.pos += 1;
                    let inner = self.expr()?;
                    self.expect(')')?;
                    return if name == "d" {
                        Ok(inner.d())
                    } else {
                        let a = inner
                            .as_scalar()
                            .ok_or_else(|| Error::Parse("dlog takes a function".into()))?;
                        DiffForm::dlog(&a, field)
                    };
                }
                if let Some(rest) = name.strip_prefix('d') {
                    if let Some(i) = field.var_index(rest) {
                        return Ok(DiffForm::dx(field, i));
                    }
                }
                Err(Error::Parse(format!(
                    "unknown variable `{name}` in {}",
                    field.descriptor()
                )))
            }
            Some(Token::Sym(c)) => Err(Error::Parse(format!("unexpected `{c}`"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

fn add_forms(a: &DiffForm, b: &DiffForm) -> Result<DiffForm> {
    if a.is_zero() && a.degree() != b.degree() {
        return Ok(b.clone());
    }
    if b.is_zero() && a.degree() != b.degree() {
        return Ok(a.clone());
    }
    a.try_add(b)
}

/// Parse an infix form. Degree is inferred; a zero result has the degree of
/// its syntax (so `0` is a 0-form).
pub fn parse_infix_form(text: &str, field: &FunctionField) -> Result<DiffForm> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        field,
    };
    let w = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "unexpected trailing input in `{text}`"
        )));
    }
    Ok(w)
}

pub fn parse_infix_rat(text: &str, field: &FunctionField) -> Result<RatFunc> {
    parse_infix_form(text, field)?
        .as_scalar()
        .ok_or_else(|| Error::Parse(format!("`{text}` is a form, not a function")))
}

/// Parse either syntax: S-expression when the text starts with `(form` / `(rat`.
pub fn parse_form_any(text: &str, field: &FunctionField) -> Result<DiffForm> {
    let t = text.trim_start();
    if t.starts_with("(form") {
        super::sexp::parse_form(t, field)
    } else if t.starts_with("(rat") {
        Ok(DiffForm::scalar(field, super::sexp::parse_rat(t, field)?))
    } else {
        parse_infix_form(t, field)
    }
}

pub fn parse_rat_any(text: &str, field: &FunctionField) -> Result<RatFunc> {
    let t = text.trim_start();
    if t.starts_with("(rat") {
        super::sexp::parse_rat(t, field)
    } else {
        parse_infix_rat(t, field)
    }
}

fn poly_infix(p: &MultiPoly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        if k > 0 {
            out.push_str(" + ");
        }
        let vars: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{e}", names[i])
                }
            })
            .collect();
        if vars.is_empty() {
            write!(out, "{c}").unwrap();
        } else {
            if c != 1 {
                write!(out, "{c}*").unwrap();
            }
            out.push_str(&vars.join("*"));
        }
    }
    out
}

fn wrap(s: String, needs: bool) -> String {
    if needs {
        format!("({s})")
    } else {
        s
    }
}

pub fn rat_infix(f: &RatFunc, field: &FunctionField) -> String {
    let names = field.vars();
    let num = poly_infix(f.num(), names);
    if f.den().is_one() {
        return num;
    }
    let den = poly_infix(f.den(), names);
    let den_needs = f.den().num_terms() > 1 || den.contains('*');
    format!(
        "{}/{}",
        wrap(num, f.num().num_terms() > 1),
        wrap(den, den_needs)
    )
}

/// Infix rendering that [`parse_infix_form`] reads back to an equal form.
pub fn form_infix(w: &DiffForm) -> String {
    let field = w.field();
    if w.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (s, c) in w.terms() {
        let coeff = rat_infix(c, field);
        if s.is_empty() {
            parts.push(coeff);
            continue;
        }
        let basis: Vec<String> = s
            .entries()
            .iter()
            .map(|&i| format!("d{}", field.var_name(i)))
            .collect();
        let basis = basis.join("^");
        if c.is_one() {
            parts.push(basis);
        } else {
            parts.push(format!("({coeff})*{basis}"));
        }
    }
    parts.join(" + ")
}
