//! Minimal S-expression trees plus the element and form grammars.
//!
//! ```text
//! (rat (poly p (term coeff (e1 e2 ...)) ...) (poly p ...))
//! (form n ((idx i1 i2 ...) RAT) ...)
//! (field p x y ...)
//! ```
//! Indices in `idx` are 1-based.

use std::fmt::{self, Write};

use crate::error::{Error, Result};
use crate::field::{FunctionField, Monomial, MultiPoly, RatFunc};
use crate::forms::{DiffForm, IndexTuple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

impl Sexp {
    pub fn atom(s: impl Into<String>) -> Sexp {
        Sexp::Atom(s.into())
    }

    pub fn list(items: Vec<Sexp>) -> Sexp {
        Sexp::List(items)
    }

    pub fn parse(text: &str) -> Result<Sexp> {
        let mut p = Parser {
            chars: text.char_indices().peekable(),
            text,
        };
        let s = p.value()?;
        p.skip_ws();
        if let Some((i, _)) = p.chars.peek() {
            return Err(Error::Parse(format!("trailing input at byte {i}")));
        }
        Ok(s)
    }

    pub fn as_atom(&self) -> Result<&str> {
        match self {
            Sexp::Atom(a) => Ok(a),
            Sexp::List(_) => Err(Error::Parse(format!("expected atom, found {self}"))),
        }
    }

    pub fn as_list(&self) -> Result<&[Sexp]> {
        match self {
            Sexp::List(l) => Ok(l),
            Sexp::Atom(a) => Err(Error::Parse(format!("expected list, found `{a}`"))),
        }
    }

    /// A list whose head is the atom `tag`; returns the remaining items.
    pub fn tagged(&self, tag: &str) -> Result<&[Sexp]> {
        let l = self.as_list()?;
        match l.first() {
            Some(Sexp::Atom(h)) if h == tag => Ok(&l[1..]),
            _ => Err(Error::Parse(format!("expected `({tag} ...)`"))),
        }
    }

    pub fn as_u64(&self) -> Result<u64> {
        let a = self.as_atom()?;
        a.parse()
            .map_err(|_| Error::Parse(format!("expected a natural number, found `{a}`")))
    }

    pub fn as_i64(&self) -> Result<i64> {
        let a = self.as_atom()?;
        a.parse()
            .map_err(|_| Error::Parse(format!("expected an integer, found `{a}`")))
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(a) => f.write_str(a),
            Sexp::List(items) => {
                f.write_char('(')?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_char(' ')?;
                    }
                    write!(f, "{it}")?;
                }
                f.write_char(')')
            }
        }
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while let Some(&(_, c)) = self.chars.peek() {
            if c.is_whitespace() {
                self.chars.next();
            } else if c == ';' {
                for (_, c) in self.chars.by_ref() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn value(&mut self) -> Result<Sexp> {
        self.skip_ws();
        match self.chars.peek().copied() {
            None => Err(Error::Parse("unexpected end of input".into())),
            Some((i, ')')) => Err(Error::Parse(format!("unbalanced `)` at byte {i}"))),
            Some((_, '(')) => {
                self.chars.next();
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.chars.peek() {
                        None => return Err(Error::Parse("unclosed `(`".into())),
                        Some((_, ')')) => {
                            self.chars.next();
                            return Ok(Sexp::List(items));
                        }
                        _ => items.push(self.value()?),
                    }
                }
            }
            Some((start, _)) => {
                let mut end = self.text.len();
                while let Some(&(i, c)) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        end = i;
                        break;
                    }
                    self.chars.next();
                }
                Ok(Sexp::Atom(self.text[start..end].to_string()))
            }
        }
    }
}

pub fn poly_to_sexp(p: &MultiPoly) -> Sexp {
    let mut items = vec![Sexp::atom("poly"), Sexp::atom(p.field().p().to_string())];
    for (m, c) in p.terms() {
        let exps = m
            .exponents()
            .iter()
            .map(|e| Sexp::atom(e.to_string()))
            .collect();
        items.push(Sexp::list(vec![
            Sexp::atom("term"),
            Sexp::atom(c.to_string()),
            Sexp::List(exps),
        ]));
    }
    Sexp::List(items)
}

pub fn rat_to_sexp(f: &RatFunc) -> Sexp {
    Sexp::list(vec![
        Sexp::atom("rat"),
        poly_to_sexp(f.num()),
        poly_to_sexp(f.den()),
    ])
}

pub fn form_to_sexp(w: &DiffForm) -> Sexp {
    let mut items = vec![Sexp::atom("form"), Sexp::atom(w.degree().to_string())];
    for (s, c) in w.terms() {
        let mut idx = vec![Sexp::atom("idx")];
        idx.extend(s.entries().iter().map(|i| Sexp::atom((i + 1).to_string())));
        items.push(Sexp::list(vec![Sexp::List(idx), rat_to_sexp(c)]));
    }
    Sexp::List(items)
}

pub fn field_to_sexp(f: &FunctionField) -> Sexp {
    let mut items = vec![Sexp::atom("field"), Sexp::atom(f.p().to_string())];
    items.extend(f.vars().iter().map(Sexp::atom));
    Sexp::List(items)
}

pub fn print_rat(f: &RatFunc) -> String {
    rat_to_sexp(f).to_string()
}

pub fn print_form(w: &DiffForm) -> String {
    form_to_sexp(w).to_string()
}

pub fn poly_from_sexp(s: &Sexp, field: &FunctionField) -> Result<MultiPoly> {
    let items = s.tagged("poly")?;
    let p = items
        .first()
        .ok_or_else(|| Error::Parse("poly lacks a modulus".into()))?
        .as_u64()?;
    if p != field.p() as u64 {
        return Err(Error::Parse(format!(
            "poly over F{p} given where F{} expected",
            field.p()
        )));
    }
    let m = field.nvars();
    let mut terms = Vec::new();
    for t in &items[1..] {
        let parts = t.tagged("term")?;
        if parts.len() != 2 {
            return Err(Error::Parse(
                "term must be `(term coeff (exponents))`".into(),
            ));
        }
        let c = parts[0].as_i64()?;
        let exps = parts[1]
            .as_list()?
            .iter()
            .map(|e| {
                e.as_u64().and_then(|v| {
                    u32::try_from(v).map_err(|_| Error::Parse("exponent too large".into()))
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        if exps.len() != m {
            return Err(Error::Parse(format!(
                "exponent vector of length {} in a field with {m} variables",
                exps.len()
            )));
        }
        terms.push((Monomial::from_exponents(&exps), c));
    }
    Ok(MultiPoly::from_terms(field.prime(), m, terms))
}

pub fn rat_from_sexp(s: &Sexp, field: &FunctionField) -> Result<RatFunc> {
    let items = s.tagged("rat")?;
    if items.len() != 2 {
        return Err(Error::Parse("rat must be `(rat NUM DEN)`".into()));
    }
    RatFunc::normalize(
        poly_from_sexp(&items[0], field)?,
        poly_from_sexp(&items[1], field)?,
    )
}

pub fn form_from_sexp(s: &Sexp, field: &FunctionField) -> Result<DiffForm> {
    let items = s.tagged("form")?;
    let n = items
        .first()
        .ok_or_else(|| Error::Parse("form lacks a degree".into()))?
        .as_u64()? as usize;
    let mut terms = Vec::new();
    for t in &items[1..] {
        let pair = t.as_list()?;
        if pair.len() != 2 {
            return Err(Error::Parse("form term must be `((idx ...) RAT)`".into()));
        }
        let idx = pair[0]
            .tagged("idx")?
            .iter()
            .map(|i| {
                let v = i.as_u64()? as usize;
                if v == 0 {
                    Err(Error::Parse("indices are 1-based".into()))
                } else {
                    Ok(v - 1)
                }
            })
            .collect::<Result<Vec<usize>>>()?;
        terms.push((IndexTuple::new(&idx)?, rat_from_sexp(&pair[1], field)?));
    }
    DiffForm::from_terms(field, n, terms)
}

pub fn field_from_sexp(s: &Sexp) -> Result<FunctionField> {
    let items = s.tagged("field")?;
    let p = items
        .first()
        .ok_or_else(|| Error::Parse("field lacks a characteristic".into()))?
        .as_u64()?;
    let vars = items[1..]
        .iter()
        .map(|v| v.as_atom().map(str::to_string))
        .collect::<Result<Vec<_>>>()?;
    FunctionField::from_names(p, vars)
}

pub fn parse_rat(text: &str, field: &FunctionField) -> Result<RatFunc> {
    rat_from_sexp(&Sexp::parse(text)?, field)
}

pub fn parse_form(text: &str, field: &FunctionField) -> Result<DiffForm> {
    form_from_sexp(&Sexp::parse(text)?, field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_round_trip() {
        let s = Sexp::parse(" (a (b c) ; comment\n d)").unwrap();
        assert_eq!(s.to_string(), "(a (b c) d)");
        assert!(Sexp::parse("(a b").is_err());
        assert!(Sexp::parse("a)").is_err());
    }

    #[test]
    fn rat_and_form_round_trip() {
        let f = FunctionField::new(3, &["x", "y"]).unwrap();
        let (x, y) = (f.var(0), f.var(1));
        let r = x.pow(2).add(&y).div(&x.add(&f.one())).unwrap();
        let text = print_rat(&r);
        assert_eq!(parse_rat(&text, &f).unwrap(), r);
        assert_eq!(print_rat(&parse_rat(&text, &f).unwrap()), text);

        let w = DiffForm::dx(&f, 0)
            .scale(&r)
            .add(&DiffForm::dx(&f, 1).scale(&y));
        let text = print_form(&w);
        assert_eq!(parse_form(&text, &f).unwrap(), w);
        assert_eq!(
            print_rat(&f.zero()),
            "(rat (poly 3) (poly 3 (term 1 (0 0))))"
        );
    }

    #[test]
    fn rejects_mismatched_data() {
        let f = FunctionField::new(2, &["x"]).unwrap();
        assert!(parse_rat("(rat (poly 3) (poly 3 (term 1 (0))))", &f).is_err());
        assert!(parse_rat("(rat (poly 2) (poly 2))", &f).is_err());
        assert!(parse_form(
            "(form 1 ((idx 0) (rat (poly 2) (poly 2 (term 1 (0))))))",
            &f
        )
        .is_err());
    }
}
