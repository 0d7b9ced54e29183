//! The text format: parsing into a [`Document`] and printing it back.
//!
//! ```text
//! field Q
//! complex CR
//!   degree 0 dim 2 basis one eps
//! dga R on CR
//!   unit = one
//!   mul one one = one
//!   mul one eps = eps
//!   mul eps one = eps
//! ```
//!
//! Headers start in column 1, body lines are indented. `#` starts a comment.
//! Entries that are not written down are zero.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use smith_ideals::field::{Field, Scalar};

/// Sparse combination of basis elements, keyed by label.
pub type Term = BTreeMap<String, Scalar>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComplexDecl {
    pub degrees: BTreeMap<i64, Vec<String>>,
    pub d: BTreeMap<String, Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgaDecl {
    pub complex: String,
    pub unit: Term,
    pub mul: BTreeMap<(String, String), Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    /// Tensor factors of the source, each a complex name.
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub images: BTreeMap<String, Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleDecl {
    pub complex: String,
    pub ring: String,
    pub left: BTreeMap<(String, String), Term>,
    pub right: BTreeMap<(String, String), Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealDecl {
    Full {
        ring: String,
        bimodule: String,
        nu_l: String,
        nu_r: String,
    },
    Reduced {
        bimodule: String,
        j: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Complex(ComplexDecl),
    Dga(DgaDecl),
    Map(MapDecl),
    Bimodule(BimoduleDecl),
    Ideal(IdealDecl),
}

impl Decl {
    pub fn kind(&self) -> &'static str {
        match self {
            Decl::Complex(_) => "complex",
            Decl::Dga(_) => "dga",
            Decl::Map(_) => "map",
            Decl::Bimodule(_) => "bimodule",
            Decl::Ideal(_) => "ideal",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Document {
    pub field: Field,
    pub decls: BTreeMap<String, Decl>,
    /// Line of each declaration header, for diagnostics.
    pub lines: BTreeMap<String, usize>,
}

impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.decls == other.decls
    }
}

impl Eq for Document {}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        column,
        message: message.into(),
    })
}

/// A line with comments removed, remembering where each token starts.
struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn column_of(&self, part: &str) -> usize {
        let offset = part.as_ptr() as usize - self.text.as_ptr() as usize;
        self.text[..offset].chars().count() + 1
    }

    fn fail<T>(&self, part: &str, message: impl Into<String>) -> Result<T, ParseError> {
        err(self.number, self.column_of(part), message)
    }

    fn tokens(&self) -> Vec<&'a str> {
        self.text.split_whitespace().collect()
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_basis(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_' || c == '[')
        && s.chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '.' | '[' | ']' | '⊗' | '\''))
}

fn name<'a>(line: &Line<'a>, tok: &'a str) -> Result<String, ParseError> {
    if is_name(tok) {
        Ok(tok.to_string())
    } else {
        line.fail(tok, format!("invalid name '{tok}'"))
    }
}

fn basis<'a>(line: &Line<'a>, tok: &'a str) -> Result<String, ParseError> {
    if is_basis(tok) {
        Ok(tok.to_string())
    } else {
        line.fail(tok, format!("invalid basis element '{tok}'"))
    }
}

fn coefficient(field: Field, s: &str) -> Option<Scalar> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if den.is_zero() {
        return None;
    }
    field.from_rational(&BigRational::new(num, den)).ok()
}

/// `c1*b1 + c2*b2 + …`, `b`, `-b`, or `0`.
fn term<'a>(line: &Line<'a>, field: Field, text: &'a str) -> Result<Term, ParseError> {
    let mut out = Term::new();
    if text.trim().is_empty() {
        return line.fail(text, "missing term");
    }
    if text.trim() == "0" {
        return Ok(out);
    }
    for summand in text.split('+') {
        let s = summand.trim();
        if s.is_empty() {
            return line.fail(summand, "empty summand");
        }
        let (coef, b) = match s.split_once('*') {
            Some((c, b)) => {
                let c = c.trim();
                match coefficient(field, c) {
                    Some(v) => (v, b.trim()),
                    None => return line.fail(c, format!("invalid coefficient '{c}'")),
                }
            }
            None => match s.strip_prefix('-') {
                Some(b) => (field.from_int(-1), b.trim()),
                None => (field.one(), s),
            },
        };
        if b.split_whitespace().count() != 1 {
            return line.fail(s, format!("malformed term '{s}'"));
        }
        let label = basis(line, b)?;
        let entry = out.entry(label).or_insert_with(|| field.zero());
        *entry = field.add(entry, &coef);
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Splits `lhs = rhs` at the first `=`.
fn equation<'a>(line: &Line<'a>, body: &'a str) -> Result<(&'a str, &'a str), ParseError> {
    match body.split_once('=') {
        Some((l, r)) => Ok((l, r)),
        None => line.fail(body, "expected '='"),
    }
}

fn tensor_names<'a>(line: &Line<'a>, text: &'a str) -> Result<Vec<String>, ParseError> {
    text.split('⊗')
        .map(|part| {
            let p = part.trim();
            if p.is_empty() {
                line.fail(part, "empty tensor factor")
            } else {
                name(line, p)
            }
        })
        .collect()
}

fn insert_once<K: Ord, V>(
    line: &Line<'_>,
    at: &str,
    map: &mut BTreeMap<K, V>,
    key: K,
    value: V,
    what: &str,
) -> Result<(), ParseError> {
    if map.contains_key(&key) {
        return line.fail(at, format!("{what} given twice"));
    }
    map.insert(key, value);
    Ok(())
}

fn header<'a>(line: &Line<'a>, field: Option<Field>) -> Result<(String, Decl), ParseError> {
    let toks = line.tokens();
    let field_required = || -> Result<Field, ParseError> {
        field.ok_or_else(|| ParseError {
            line: line.number,
            column: 1,
            message: "missing field declaration".into(),
        })
    };
    match toks[0] {
        "complex" => {
            field_required()?;
            if toks.len() != 2 {
                return line.fail(toks[0], "expected 'complex <name>'");
            }
            Ok((name(line, toks[1])?, Decl::Complex(ComplexDecl::default())))
        }
        "dga" => {
            field_required()?;
            if toks.len() != 4 || toks[2] != "on" {
                return line.fail(toks[0], "expected 'dga <name> on <complex>'");
            }
            Ok((
                name(line, toks[1])?,
                Decl::Dga(DgaDecl {
                    complex: name(line, toks[3])?,
                    unit: Term::new(),
                    mul: BTreeMap::new(),
                }),
            ))
        }
        "map" => {
            field_required()?;
            let rest = line.text.trim_start().strip_prefix("map").unwrap();
            let Some((n, sig)) = rest.split_once(':') else {
                return line.fail(toks[0], "expected 'map <name> : <source> -> <target>'");
            };
            let Some((src, dst)) = sig.split_once("->") else {
                return line.fail(sig, "expected '->'");
            };
            Ok((
                name(line, n.trim())?,
                Decl::Map(MapDecl {
                    source: tensor_names(line, src)?,
                    target: tensor_names(line, dst)?,
                    images: BTreeMap::new(),
                }),
            ))
        }
        "bimodule" => {
            field_required()?;
            if toks.len() != 6 || toks[2] != ":" || toks[4] != "over" {
                return line.fail(toks[0], "expected 'bimodule <name> : <complex> over <dga>'");
            }
            Ok((
                name(line, toks[1])?,
                Decl::Bimodule(BimoduleDecl {
                    complex: name(line, toks[3])?,
                    ring: name(line, toks[5])?,
                    left: BTreeMap::new(),
                    right: BTreeMap::new(),
                }),
            ))
        }
        "ideal" => {
            field_required()?;
            let rest = line.text.trim_start().strip_prefix("ideal").unwrap();
            let Some((n, body)) = rest.split_once('=') else {
                return line.fail(toks[0], "expected 'ideal <name> = full(…)' or 'reduced(…)'");
            };
            let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
            let args = |prefix: &str| -> Option<Vec<String>> {
                let inner = compact.strip_prefix(prefix)?.strip_suffix(')')?;
                Some(inner.split(',').map(str::to_string).collect())
            };
            let keyed = |arg: &str, key: &str| -> Result<String, ParseError> {
                match arg.strip_prefix(key) {
                    Some(v) if is_name(v) => Ok(v.to_string()),
                    _ => line.fail(body, format!("expected '{key}<map>'")),
                }
            };
            let plain = |arg: &str| -> Result<String, ParseError> {
                if is_name(arg) {
                    Ok(arg.to_string())
                } else {
                    line.fail(body, format!("invalid name '{arg}'"))
                }
            };
            let decl = if let Some(a) = args("full(") {
                if a.len() != 4 {
                    return line.fail(body, "full(…) takes a dga, a bimodule, nuL= and nuR=");
                }
                IdealDecl::Full {
                    ring: plain(&a[0])?,
                    bimodule: plain(&a[1])?,
                    nu_l: keyed(&a[2], "nuL=")?,
                    nu_r: keyed(&a[3], "nuR=")?,
                }
            } else if let Some(a) = args("reduced(") {
                if a.len() != 2 {
                    return line.fail(body, "reduced(…) takes a bimodule and j=");
                }
                IdealDecl::Reduced {
                    bimodule: plain(&a[0])?,
                    j: keyed(&a[1], "j=")?,
                }
            } else {
                return line.fail(body, "expected full(…) or reduced(…)");
            };
            Ok((name(line, n.trim())?, Decl::Ideal(decl)))
        }
        other => line.fail(other, format!("unknown declaration '{other}'")),
    }
}

fn body_line<'a>(line: &Line<'a>, field: Field, decl: &mut Decl) -> Result<(), ParseError> {
    let text = line.text.trim();
    let toks = line.tokens();
    match decl {
        Decl::Complex(c) => match toks[0] {
            "degree" => {
                if toks.len() < 5 || toks[2] != "dim" || toks[4] != "basis" {
                    return line.fail(toks[0], "expected 'degree <n> dim <k> basis <id>…'");
                }
                let Ok(n) = toks[1].parse::<i64>() else {
                    return line.fail(toks[1], "invalid degree");
                };
                let Ok(k) = toks[3].parse::<usize>() else {
                    return line.fail(toks[3], "invalid dimension");
                };
                let ids = toks[5..]
                    .iter()
                    .map(|t| basis(line, t))
                    .collect::<Result<Vec<_>, _>>()?;
                if ids.len() != k {
                    return line.fail(toks[3], format!("dim {k} but {} basis elements", ids.len()));
                }
                insert_once(line, toks[1], &mut c.degrees, n, ids, "degree")
            }
            "d" => {
                let (lhs, rhs) = equation(line, text.strip_prefix('d').unwrap())?;
                let lt: Vec<&str> = lhs.split_whitespace().collect();
                if lt.len() != 1 {
                    return line.fail(lhs, "expected 'd <basis> = <term>'");
                }
                let b = basis(line, lt[0])?;
                let t = term(line, field, rhs)?;
                insert_once(line, lt[0], &mut c.d, b, t, "differential")
            }
            other => line.fail(other, format!("unexpected '{other}' in complex")),
        },
        Decl::Dga(g) => match toks[0] {
            "unit" => {
                let (lhs, rhs) = equation(line, text)?;
                if lhs.trim() != "unit" {
                    return line.fail(lhs, "expected 'unit = <term>'");
                }
                g.unit = term(line, field, rhs)?;
                Ok(())
            }
            "mul" => {
                let (lhs, rhs) = equation(line, text.strip_prefix("mul").unwrap())?;
                let lt: Vec<&str> = lhs.split_whitespace().collect();
                if lt.len() != 2 {
                    return line.fail(lhs, "expected 'mul <basis> <basis> = <term>'");
                }
                let key = (basis(line, lt[0])?, basis(line, lt[1])?);
                let t = term(line, field, rhs)?;
                insert_once(line, lt[0], &mut g.mul, key, t, "product")
            }
            other => line.fail(other, format!("unexpected '{other}' in dga")),
        },
        Decl::Map(m) => {
            let Some((lhs, rhs)) = text.split_once("|->") else {
                return line.fail(toks[0], "expected '<basis> |-> <term>'");
            };
            let lt: Vec<&str> = lhs.split_whitespace().collect();
            if lt.len() != 1 {
                return line.fail(lhs, "expected '<basis> |-> <term>'");
            }
            let b = basis(line, lt[0])?;
            let t = term(line, field, rhs)?;
            insert_once(line, lt[0], &mut m.images, b, t, "image")
        }
        Decl::Bimodule(b) => {
            let side = toks[0];
            if side != "left" && side != "right" {
                return line.fail(side, format!("unexpected '{side}' in bimodule"));
            }
            let (lhs, rhs) = equation(line, text.strip_prefix(side).unwrap())?;
            let lt: Vec<&str> = lhs.split_whitespace().collect();
            if lt.len() != 2 {
                return line.fail(lhs, format!("expected '{side} <basis> <basis> = <term>'"));
            }
            let key = (basis(line, lt[0])?, basis(line, lt[1])?);
            let t = term(line, field, rhs)?;
            let map = if side == "left" {
                &mut b.left
            } else {
                &mut b.right
            };
            insert_once(line, lt[0], map, key, t, "action")
        }
        Decl::Ideal(_) => line.fail(toks[0], "ideal declarations have no body"),
    }
}

pub fn parse(input: &str) -> Result<Document, ParseError> {
    let mut field: Option<Field> = None;
    let mut decls: BTreeMap<String, Decl> = BTreeMap::new();
    let mut lines: BTreeMap<String, usize> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (i, raw) in input.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        let line = Line {
            number: i + 1,
            text,
        };
        let toks = line.tokens();
        if toks.is_empty() {
            continue;
        }
        let indented = text.starts_with(char::is_whitespace);
        if indented {
            let Some(n) = &current else {
                return line.fail(toks[0], "indented line outside a declaration");
            };
            let f = field.expect("declarations follow the field");
            body_line(&line, f, decls.get_mut(n).unwrap())?;
            continue;
        }
        if toks[0] == "field" {
            if field.is_some() {
                return line.fail(toks[0], "field declared twice");
            }
            field = Some(match toks[1..] {
                ["Q"] => Field::Rationals,
                ["Fp", p] => match p.parse::<u64>().ok().map(Field::prime) {
                    Some(Ok(f)) => f,
                    _ => return line.fail(toks[2], format!("'{p}' is not a supported prime")),
                },
                _ => return line.fail(toks[0], "expected 'field Q' or 'field Fp <prime>'"),
            });
            current = None;
            continue;
        }
        let (n, decl) = header(&line, field)?;
        if decls.contains_key(&n) {
            return line.fail(toks[1], format!("duplicate name '{n}'"));
        }
        decls.insert(n.clone(), decl);
        lines.insert(n.clone(), line.number);
        current = Some(n);
    }
    let Some(field) = field else {
        return err(1, 1, "missing field declaration");
    };
    Ok(Document {
        field,
        decls,
        lines,
    })
}

fn coefficient_text(field: Field, c: &Scalar) -> String {
    field.render(c)
}

pub fn print_term(field: Field, t: &Term) -> String {
    if t.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = t
        .iter()
        .map(|(b, c)| {
            if *c == field.one() {
                b.clone()
            } else {
                format!("{}*{b}", coefficient_text(field, c))
            }
        })
        .collect();
    parts.join(" + ")
}

impl fmt::Display for Document {
    /// Canonical text: field first, then declarations grouped by kind and
    /// sorted by name.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.field;
        match field {
            Field::Rationals => writeln!(f, "field Q")?,
            Field::Prime(p) => writeln!(f, "field Fp {p}")?,
        }
        let t = |term: &Term| print_term(field, term);
        for kind in ["complex", "dga", "bimodule", "map", "ideal"] {
            for (n, d) in self.decls.iter().filter(|(_, d)| d.kind() == kind) {
                let mut s = String::new();
                match d {
                    Decl::Complex(c) => {
                        writeln!(s, "complex {n}")?;
                        for (deg, ids) in &c.degrees {
                            writeln!(
                                s,
                                "  degree {deg} dim {} basis {}",
                                ids.len(),
                                ids.join(" ")
                            )?;
                        }
                        for (b, term) in &c.d {
                            writeln!(s, "  d {b} = {}", t(term))?;
                        }
                    }
                    Decl::Dga(g) => {
                        writeln!(s, "dga {n} on {}", g.complex)?;
                        writeln!(s, "  unit = {}", t(&g.unit))?;
                        for ((a, b), term) in &g.mul {
                            writeln!(s, "  mul {a} {b} = {}", t(term))?;
                        }
                    }
                    Decl::Bimodule(b) => {
                        writeln!(s, "bimodule {n} : {} over {}", b.complex, b.ring)?;
                        for ((r, m), term) in &b.left {
                            writeln!(s, "  left {r} {m} = {}", t(term))?;
                        }
                        for ((m, r), term) in &b.right {
                            writeln!(s, "  right {m} {r} = {}", t(term))?;
                        }
                    }
                    Decl::Map(m) => {
                        writeln!(
                            s,
                            "map {n} : {} -> {}",
                            m.source.join(" ⊗ "),
                            m.target.join(" ⊗ ")
                        )?;
                        for (b, term) in &m.images {
                            writeln!(s, "  {b} |-> {}", t(term))?;
                        }
                    }
                    Decl::Ideal(IdealDecl::Full {
                        ring,
                        bimodule,
                        nu_l,
                        nu_r,
                    }) => {
                        writeln!(
                            s,
                            "ideal {n} = full({ring}, {bimodule}, nuL={nu_l}, nuR={nu_r})"
                        )?;
                    }
                    Decl::Ideal(IdealDecl::Reduced { bimodule, j }) => {
                        writeln!(s, "ideal {n} = reduced({bimodule}, j={j})")?;
                    }
                }
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}
