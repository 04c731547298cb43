//! Line-oriented text formats for complexes, cosheaves and matchings.
//!
//! Blank lines and lines starting with `#` are ignored everywhere.
//!
//! Complex: one simplex per line as strictly increasing vertex ids; the
//! complex is the face closure of the listed simplices.
//!
//! Cosheaf: a `field p` header, then `stalk <vertices> <dim>` lines and
//! `map <coface> -> <facet> : <entries>` lines, entries row-major with
//! `stalk(facet)` rows and `stalk(coface)` columns.
//!
//! Matching: `pair <facet> <coface>` lines, the vertices of both simplices
//! on one line (the facet has one vertex fewer); an optional `<` may
//! separate them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use cosheaf::{Cosheaf, Field, Matrix, PartialMatching, Simplex, SimplicialComplex};
use thiserror::Error;

/// A syntax or consistency error at a line of an input file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_u32(token: &str, line: usize, what: &str) -> Result<u32, ParseError> {
    token
        .parse::<u32>()
        .or_else(|_| err(line, format!("invalid {what} '{token}'")))
}

fn parse_simplex(tokens: &[&str], line: usize) -> Result<Simplex, ParseError> {
    if tokens.is_empty() {
        return err(line, "empty simplex");
    }
    let vertices = tokens
        .iter()
        .map(|t| parse_u32(t, line, "vertex id"))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(w) = vertices.windows(2).find(|w| w[0] >= w[1]) {
        let what = if w[0] == w[1] { "duplicate" } else { "unsorted" };
        return err(line, format!("{what} vertices {} {}", w[0], w[1]));
    }
    Simplex::new(vertices).or_else(|e| err(line, e.to_string()))
}

fn simplex_tokens(s: &Simplex) -> String {
    let v: Vec<String> = s.vertices().iter().map(u32::to_string).collect();
    v.join(" ")
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex, ParseError> {
    let mut generators = Vec::new();
    for (n, line) in content_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        generators.push(parse_simplex(&tokens, n)?);
    }
    Ok(SimplicialComplex::from_generators(generators))
}

/// The maximal simplices of `k`, one per line.
pub fn emit_complex(k: &SimplicialComplex) -> String {
    let mut out = String::from("# maximal simplices\n");
    for s in k.maximal_simplices() {
        out.push_str(&simplex_tokens(&s));
        out.push('\n');
    }
    out
}

/// Why a cosheaf file was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosheafFileError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    /// The file parsed but describes an invalid cosheaf.
    #[error("invalid cosheaf: {0}")]
    Invalid(String),
}

pub fn parse_cosheaf(text: &str, k: &SimplicialComplex) -> Result<Cosheaf, CosheafFileError> {
    let mut field: Option<Field> = None;
    let mut stalks: BTreeMap<Simplex, (usize, usize)> = BTreeMap::new();
    let mut maps: BTreeMap<(Simplex, Simplex), (usize, Vec<u32>)> = BTreeMap::new();
    for (n, line) in content_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "field" => {
                if field.is_some() {
                    return Err(bad(n, "repeated field line"));
                }
                let [_, p] = tokens[..] else {
                    return Err(bad(n, "expected 'field <p>'"));
                };
                let p = parse_u32(p, n, "characteristic")?;
                field = Some(Field::new(p).or_else(|e| err(n, e.to_string()))?);
            }
            "stalk" => {
                require_field(field, n)?;
                if tokens.len() < 3 {
                    return Err(bad(n, "expected 'stalk <simplex> <dim>'"));
                }
                let s = parse_simplex(&tokens[1..tokens.len() - 1], n)?;
                let d = parse_u32(tokens[tokens.len() - 1], n, "dimension")? as usize;
                if !k.contains(&s) {
                    return Err(bad(n, format!("{s} is not in the complex")));
                }
                if let Some((_, first)) = stalks.insert(s.clone(), (d, n)) {
                    return Err(bad(n, format!("stalk {s} already given on line {first}")));
                }
            }
            "map" => {
                let p = require_field(field, n)?;
                let arrow = tokens.iter().position(|&t| t == "->");
                let colon = tokens.iter().position(|&t| t == ":");
                let (Some(a), Some(c)) = (arrow, colon) else {
                    return Err(bad(n, "expected 'map <coface> -> <facet> : <entries>'"));
                };
                if !(1 < a && a + 1 < c) {
                    return Err(bad(n, "expected 'map <coface> -> <facet> : <entries>'"));
                }
                let coface = parse_simplex(&tokens[1..a], n)?;
                let facet = parse_simplex(&tokens[a + 1..c], n)?;
                if !k.contains(&coface) {
                    return Err(bad(n, format!("{coface} is not in the complex")));
                }
                if !facet.is_facet_of(&coface) {
                    return Err(bad(n, format!("{facet} is not a facet of {coface}")));
                }
                let entries = tokens[c + 1..]
                    .iter()
                    .map(|t| {
                        let x = parse_u32(t, n, "entry")?;
                        if x >= p.characteristic() {
                            return err(n, format!("entry {x} is not reduced mod {}", p.characteristic()));
                        }
                        Ok(x)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if maps.insert((coface.clone(), facet.clone()), (n, entries)).is_some() {
                    return Err(bad(n, format!("map {coface} -> {facet} given twice")));
                }
            }
            other => {
                return Err(bad(n, format!("unknown directive '{other}'")));
            }
        }
    }
    let Some(field) = field else {
        return Err(bad(1, "missing 'field <p>' line"));
    };
    let dim = |s: &Simplex| stalks.get(s).map_or(0, |&(d, _)| d);
    let mut matrices = BTreeMap::new();
    for ((coface, facet), (n, entries)) in &maps {
        let (rows, cols) = (dim(facet), dim(coface));
        if entries.len() != rows * cols {
            return Err(bad(
                *n,
                format!(
                    "map {coface} -> {facet} needs {rows}x{cols} = {} entries, found {}",
                    rows * cols,
                    entries.len()
                ),
            ));
        }
        let m = Matrix::from_vec(field, rows, cols, entries.clone()).expect("checked shape");
        matrices.insert((coface.clone(), facet.clone()), m);
    }
    if let Some((coface, facet)) = k
        .facet_pairs()
        .find(|(c, f)| dim(c) > 0 && dim(f) > 0 && !maps.contains_key(&((*c).clone(), f.clone())))
    {
        let last = text.lines().count().max(1);
        return Err(bad(last, format!("missing map {coface} -> {facet}")));
    }
    let stalk_dims = stalks.iter().map(|(s, &(d, _))| (s.clone(), d)).collect();
    let c = Cosheaf::new(k.clone(), field, stalk_dims, matrices)
        .map_err(|e| CosheafFileError::Invalid(e.to_string()))?;
    let report = c.validate();
    if let Some(v) = report.violations.first() {
        return Err(CosheafFileError::Invalid(v.to_string()));
    }
    Ok(c)
}

fn bad(line: usize, message: impl Into<String>) -> CosheafFileError {
    CosheafFileError::Parse(ParseError {
        line,
        message: message.into(),
    })
}

fn require_field(field: Option<Field>, line: usize) -> Result<Field, ParseError> {
    field.map_or_else(|| err(line, "'field <p>' must come first"), Ok)
}

pub fn emit_cosheaf(c: &Cosheaf) -> String {
    let mut out = format!("field {}\n", c.field().characteristic());
    for (s, d) in c.stalk_dims() {
        let _ = writeln!(out, "stalk {} {d}", simplex_tokens(s));
    }
    for ((coface, facet), m) in c.facet_maps() {
        if m.rows() == 0 || m.cols() == 0 {
            continue;
        }
        let entries: Vec<String> = m.entries().iter().map(u32::to_string).collect();
        let _ = writeln!(
            out,
            "map {} -> {} : {}",
            simplex_tokens(coface),
            simplex_tokens(facet),
            entries.join(" ")
        );
    }
    out
}

/// Parses the pairs of a matching; checking them against a complex is left
/// to [`PartialMatching::validate`].
pub fn parse_matching(text: &str) -> Result<PartialMatching, ParseError> {
    let mut pairs = Vec::new();
    for (n, line) in content_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] != "pair" {
            return err(n, format!("unknown directive '{}'", tokens[0]));
        }
        let rest = &tokens[1..];
        let (facet, coface) = match rest.iter().position(|&t| t == "<") {
            Some(i) => (&rest[..i], &rest[i + 1..]),
            None => {
                if rest.len() % 2 == 0 {
                    return err(n, format!("a pair needs an odd number of vertex ids, found {}", rest.len()));
                }
                rest.split_at(rest.len() / 2)
            }
        };
        let facet = parse_simplex(facet, n)?;
        let coface = parse_simplex(coface, n)?;
        if !facet.is_facet_of(&coface) {
            return err(n, format!("{facet} is not a facet of {coface}"));
        }
        pairs.push((facet, coface));
    }
    Ok(PartialMatching::new(pairs))
}

pub fn emit_matching(m: &PartialMatching) -> String {
    let mut out = String::new();
    for (s, t) in m.pairs() {
        let _ = writeln!(out, "pair {} {}", simplex_tokens(s), simplex_tokens(t));
    }
    out
}
