//! The line-oriented `.quiver` text format.
//!
//! ```text
//! field Q                      # or: field F 3
//! vertex 1 2
//! arrow a : 1 -> 2
//! arrow b : 2 -> 1
//! relation b.a                 # b then a is zero
//! relation 2*a.b = a.b.a.b     # equalities are moved to one side
//! idem e = 1
//! ```

use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::quiver::{Path, Presentation, Quiver, Relation};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Number(String),
    Plus,
    Minus,
    Star,
    Dot,
    Eq,
    Colon,
    To,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Word(w) | Tok::Number(w) => format!("`{}`", w),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Colon => "`:`".into(),
        Tok::To => "`->`".into(),
    }
}

fn is_name_char(c: char) -> bool {
    !c.is_whitespace() && !"+-*.=:#/".contains(c)
}

fn lex(line: &str, lineno: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '*' => Some(Tok::Star),
            '.' => Some(Tok::Dot),
            '=' => Some(Tok::Eq),
            ':' => Some(Tok::Colon),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, col));
            i += 1;
            continue;
        }
        if c == '-' {
            if chars.get(i + 1) == Some(&'>') {
                out.push((Tok::To, col));
                i += 2;
            } else {
                out.push((Tok::Minus, col));
                i += 1;
            }
            continue;
        }
        if c == '/' {
            return Err(syntax(lineno, col, "`/` outside a number"));
        }
        let start = i;
        while i < chars.len() && is_name_char(chars[i]) {
            i += 1;
        }
        let mut word: String = chars[start..i].iter().collect();
        if word.chars().all(|d| d.is_ascii_digit()) {
            if chars.get(i) == Some(&'/') {
                let s = i + 1;
                let mut j = s;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == s {
                    return Err(syntax(lineno, i + 1, "expected a denominator after `/`"));
                }
                word.push('/');
                word.extend(&chars[s..j]);
                i = j;
            }
            out.push((Tok::Number(word), col));
        } else {
            out.push((Tok::Word(word), col));
        }
    }
    Ok(out)
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

struct Cursor<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        syntax(self.line, self.col(), msg)
    }

    fn next(&mut self) -> Option<&'a Tok> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn name(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Word(w)) | Some(Tok::Number(w)) if !w.contains('/') => {
                self.pos += 1;
                Ok(w.clone())
            }
            Some(t) => Err(self.err(format!("expected {}, found {}", what, describe(t)))),
            None => Err(self.err(format!("expected {}", what))),
        }
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.peek() {
            Some(x) if *x == t => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.err(format!("expected {}, found {}", describe(&t), describe(x)))),
            None => Err(self.err(format!("expected {}", describe(&t)))),
        }
    }

    fn done(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(format!("unexpected {}", describe(t)))),
        }
    }
}

/// Parses a `.quiver` source with the field given in the file (default `Q`).
pub fn parse(text: &str) -> Result<Presentation> {
    parse_with(text, None)
}

/// Parses a `.quiver` source; `field` overrides any `field` line.
pub fn parse_with(text: &str, field: Option<Field>) -> Result<Presentation> {
    let mut pres = Presentation::new(field.unwrap_or(Field::Rationals), Quiver::new());
    let mut seen_field = false;
    let mut relations = Vec::new();
    let mut idems = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = lex(raw, line)?;
        if toks.is_empty() {
            continue;
        }
        let end = raw.chars().count() + 1;
        let mut c = Cursor { toks: &toks, pos: 0, line, end };
        let kw = match c.next() {
            Some(Tok::Word(w)) => w.as_str(),
            Some(t) => return Err(syntax(line, toks[0].1, format!("expected a keyword, found {}", describe(t)))),
            None => unreachable!(),
        };
        match kw {
            "field" => {
                if seen_field || !relations.is_empty() {
                    return Err(syntax(line, toks[0].1, "`field` must appear once, before any relation"));
                }
                seen_field = true;
                let rest: Vec<String> = toks[1..]
                    .iter()
                    .map(|(t, _)| match t {
                        Tok::Word(w) | Tok::Number(w) => w.clone(),
                        other => describe(other),
                    })
                    .collect();
                let k = Field::from_name(&rest.join(" ")).map_err(|m| syntax(line, c.col(), m))?;
                if field.is_none() {
                    pres.field = k;
                }
            }
            "vertex" => {
                if c.peek().is_none() {
                    return Err(c.err("expected at least one vertex name"));
                }
                while c.peek().is_some() {
                    let col = c.col();
                    let v = c.name("a vertex name")?;
                    pres.quiver.add_vertex(&v).map_err(|e| relocate(e, line, col))?;
                }
            }
            "arrow" => {
                let col = c.col();
                let name = c.name("an arrow name")?;
                c.expect(Tok::Colon)?;
                let s = c.name("a source vertex")?;
                c.expect(Tok::To)?;
                let t = c.name("a target vertex")?;
                c.done()?;
                pres.quiver.add_arrow(&name, &s, &t).map_err(|e| relocate(e, line, col))?;
            }
            "relation" => {
                let start = c.pos;
                relations.push((line, toks[start..].to_vec(), c.col()));
            }
            "idem" => {
                let name = c.name("an idempotent name")?;
                c.expect(Tok::Eq)?;
                let mut vs = Vec::new();
                loop {
                    let col = c.col();
                    let v = c.name("a vertex name")?;
                    vs.push((v, col));
                    match c.next() {
                        None => break,
                        Some(Tok::Plus) => {}
                        Some(t) => return Err(syntax(line, col, format!("expected `+`, found {}", describe(t)))),
                    }
                }
                idems.push((line, name, vs));
            }
            other => return Err(syntax(line, toks[0].1, format!("unknown keyword `{}`", other))),
        }
    }
    let k = pres.field;
    for (line, toks, _) in relations {
        let end = toks.last().map(|t| t.1 + 1).unwrap_or(1);
        let mut c = Cursor { toks: &toks, pos: 0, line, end };
        let mut terms = combo(&mut c, k, &pres.quiver)?;
        if c.peek() == Some(&Tok::Eq) {
            c.pos += 1;
            for (a, p) in combo(&mut c, k, &pres.quiver)? {
                terms.push((k.neg(&a), p));
            }
        }
        c.done()?;
        let r = Relation { terms };
        r.validate(&pres.quiver).map_err(|e| relocate(e, line, toks.first().map(|t| t.1).unwrap_or(1)))?;
        pres.relations.push(r);
    }
    for (line, name, vs) in idems {
        if pres.idempotents.iter().any(|(n, _)| *n == name) {
            return Err(syntax(line, 1, format!("idempotent `{}` defined twice", name)));
        }
        let mut set = Vec::new();
        for (v, col) in vs {
            let i = pres.quiver.vertex(&v).ok_or_else(|| syntax(line, col, format!("unknown vertex `{}`", v)))?;
            if !set.contains(&i) {
                set.push(i);
            }
        }
        set.sort_unstable();
        pres.idempotents.push((name, set));
    }
    pres.validate()?;
    Ok(pres)
}

fn relocate(e: Error, line: usize, column: usize) -> Error {
    match e {
        Error::Input(m) => Error::Syntax { line, column, message: m },
        other => other,
    }
}

fn combo(c: &mut Cursor, k: Field, q: &Quiver) -> Result<Vec<(Rat, Path)>> {
    let mut terms = Vec::new();
    let mut sign = Rat::ONE;
    if c.peek() == Some(&Tok::Minus) {
        c.pos += 1;
        sign = k.neg(&Rat::ONE);
    }
    loop {
        let mut coeff = sign.clone();
        if let Some(Tok::Number(n)) = c.peek() {
            if c.toks.get(c.pos + 1).map(|t| &t.0) == Some(&Tok::Star) {
                let x = Rat::parse(n).ok_or_else(|| c.err(format!("bad coefficient `{}`", n)))?;
                let x = k.from_rat(&x).ok_or_else(|| c.err(format!("coefficient `{}` is not defined over {}", n, k.name())))?;
                coeff = k.mul(&coeff, &x);
                c.pos += 2;
            }
        }
        let p = path(c, q)?;
        terms.push((coeff, p));
        match c.peek() {
            Some(Tok::Plus) => sign = Rat::ONE,
            Some(Tok::Minus) => sign = k.neg(&Rat::ONE),
            _ => break,
        }
        c.pos += 1;
    }
    Ok(terms)
}

fn path(c: &mut Cursor, q: &Quiver) -> Result<Path> {
    let col = c.col();
    let first = c.name("a path")?;
    if let Some(v) = first.strip_prefix("e_") {
        if q.arrow(&first).is_none() {
            let i = q.vertex(v).ok_or_else(|| syntax(c.line, col, format!("unknown vertex `{}`", v)))?;
            return Ok(q.trivial(i));
        }
    }
    let mut arrows = Vec::new();
    let mut name = first;
    let mut ncol = col;
    loop {
        let a = q.arrow(&name).ok_or_else(|| syntax(c.line, ncol, format!("unknown arrow `{}`", name)))?;
        arrows.push(a);
        if c.peek() != Some(&Tok::Dot) {
            break;
        }
        c.pos += 1;
        ncol = c.col();
        name = c.name("an arrow name")?;
    }
    q.path(&arrows).ok_or_else(|| syntax(c.line, col, "arrows do not compose"))
}

/// Writes a presentation in the `.quiver` format; `parse` reads it back to
/// an equal presentation.
pub fn emit(p: &Presentation) -> String {
    let k = p.field;
    let mut out = String::new();
    out.push_str(&match k {
        Field::Rationals => "field Q\n".to_string(),
        Field::Prime(q) => format!("field F {}\n", q),
    });
    if !p.quiver.vertices.is_empty() {
        out.push_str("vertex");
        for v in &p.quiver.vertices {
            out.push(' ');
            out.push_str(v);
        }
        out.push('\n');
    }
    for a in &p.quiver.arrows {
        out.push_str(&format!("arrow {} : {} -> {}\n", a.name, p.quiver.vertices[a.source], p.quiver.vertices[a.target]));
    }
    for r in &p.relations {
        out.push_str("relation ");
        out.push_str(&relation_text(&p.quiver, k, r));
        out.push('\n');
    }
    for (name, vs) in &p.idempotents {
        let names: Vec<&str> = vs.iter().map(|v| p.quiver.vertices[*v].as_str()).collect();
        out.push_str(&format!("idem {} = {}\n", name, names.join(" + ")));
    }
    out
}

/// A relation as a `.quiver` combination (`b.a - 2*c.d`).
pub fn relation_text(q: &Quiver, k: Field, r: &Relation) -> String {
    let mut out = String::new();
    for (i, (c, path)) in r.terms.iter().enumerate() {
        let neg = k == Field::Rationals && c.signum() < 0;
        let abs = if neg { c.neg() } else { c.clone() };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !abs.is_one() {
            out.push_str(&format!("{}*", abs));
        }
        out.push_str(&q.path_name(path));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::tests::example1;

    const F2: &str = "field Q\nvertex 1 2\narrow a : 1 -> 2\narrow b : 2 -> 1\nrelation b.a\nidem e = 1\n";

    #[test]
    fn parses_and_round_trips() {
        let p = parse(F2).unwrap();
        assert_eq!(p.quiver.vertices, ["1", "2"]);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.idempotents, vec![(String::from("e"), vec![0])]);
        assert_eq!(parse(&emit(&p)).unwrap(), p);
        let ex = example1();
        let text = emit(&ex);
        assert_eq!(parse(&text).unwrap(), ex);
    }

    #[test]
    fn equalities_and_coefficients() {
        let src = "vertex x\narrow a : x -> x\nrelation a.a.a = -2/3*a.a + a.a.a  # comment\n";
        let p = parse(src).unwrap();
        let r = &p.relations[0];
        assert_eq!(r.terms.len(), 3);
        assert_eq!(r.terms[1].0, Rat::new(2, 3));
        let over3 = parse_with("field F 3\nvertex x\narrow a : x -> x\nrelation 2*a.a\n", None).unwrap();
        assert_eq!(over3.relations[0].terms[0].0, Rat::int(2));
        assert!(parse_with(src, Some(Field::Prime(3))).is_err());
        assert_eq!(parse_with(src, Some(Field::Prime(5))).unwrap().field, Field::Prime(5));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("vertex 1\narrow a : 1 -> 2\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 2, column: 7, .. }), "{:?}", e);
        let e = parse("vertex 1\narrow a : 1 -> 1\nrelation a.b\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 3, column: 12, .. }), "{:?}", e);
        let e = parse("vertex 1\narrow a : 1 -> 1\nrelation a\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 3, .. }), "{:?}", e);
        let e = parse("vertices 1\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 1, column: 1, .. }));
        assert!(parse("field F 4\n").is_err());
        let e = parse("vertex 1\nidem e = 2\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 2, column: 10, .. }), "{:?}", e);
    }
}
