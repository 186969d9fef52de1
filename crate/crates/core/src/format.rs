//! Plain-text lattice and matrix files.
//!
//! ```text
//! lattice v1
//! rank 2
//! gram
//! 0 1
//! 1 0
//! vec f 1 0
//! ```
//!
//! Matrices use the same layout with `matrix v1` and `rows` in place of
//! `lattice v1` and `gram`. Trailing blank lines are ignored; anything else
//! out of place is a parse error carrying its 1-based line number.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeFile {
    pub lattice: Lattice,
    pub vectors: Vec<(String, LatticeVector)>,
}

impl LatticeFile {
    pub fn new(lattice: Lattice) -> Self {
        LatticeFile { lattice, vectors: Vec::new() }
    }

    pub fn with_vector(mut self, name: impl Into<String>, v: LatticeVector) -> Self {
        self.vectors.push((name.into(), v));
        self
    }

    pub fn vector(&self, name: &str) -> Option<&LatticeVector> {
        self.vectors.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

struct Lines<'a> {
    inner: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut inner: Vec<&str> = text.lines().collect();
        while inner.last().is_some_and(|l| l.trim().is_empty()) {
            inner.pop();
        }
        Lines { inner, pos: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let line = self.pos + 1;
        let text = self
            .inner
            .get(self.pos)
            .ok_or_else(|| parse_err(line, format!("unexpected end of input, expected {what}")))?;
        self.pos += 1;
        Ok((line, text.trim()))
    }

    fn done(&self) -> bool {
        self.pos >= self.inner.len()
    }
}

fn parse_ints(line: usize, tokens: &[&str], expected: usize) -> Result<Vec<i64>> {
    if tokens.len() != expected {
        return Err(parse_err(line, format!("expected {expected} integers, found {}", tokens.len())));
    }
    tokens.iter().map(|t| t.parse::<i64>().map_err(|_| parse_err(line, format!("invalid integer '{t}'")))).collect()
}

fn parse_header(lines: &mut Lines<'_>, magic: &str, body: &str) -> Result<(usize, Vec<Vec<i64>>)> {
    let (n, l) = lines.next(magic)?;
    if l != magic {
        return Err(parse_err(n, format!("expected '{magic}'")));
    }
    let (n, l) = lines.next("rank")?;
    let rank = match l.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["rank", r] => {
            r.parse::<usize>().ok().filter(|&r| r > 0).ok_or_else(|| parse_err(n, format!("invalid rank '{r}'")))?
        }
        _ => return Err(parse_err(n, "expected 'rank N'")),
    };
    let (n, l) = lines.next(body)?;
    if l != body {
        return Err(parse_err(n, format!("expected '{body}'")));
    }
    let mut rows = Vec::with_capacity(rank);
    for _ in 0..rank {
        let (n, l) = lines.next("matrix row")?;
        let tokens: Vec<&str> = l.split_whitespace().collect();
        rows.push(parse_ints(n, &tokens, rank)?);
    }
    Ok((rank, rows))
}

pub fn parse_lattice_file(text: &str) -> Result<LatticeFile> {
    let mut lines = Lines::new(text);
    let (rank, gram) = parse_header(&mut lines, "lattice v1", "gram")?;
    let lattice = Lattice::new(gram)?;
    let mut vectors: Vec<(String, LatticeVector)> = Vec::new();
    while !lines.done() {
        let (n, l) = lines.next("vector")?;
        let tokens: Vec<&str> = l.split_whitespace().collect();
        match tokens.as_slice() {
            ["vec", name, rest @ ..] => {
                if vectors.iter().any(|(existing, _)| existing == name) {
                    return Err(parse_err(n, format!("duplicate vector name '{name}'")));
                }
                let coords = parse_ints(n, rest, rank)?;
                vectors.push((name.to_string(), LatticeVector::new(coords)));
            }
            _ => return Err(parse_err(n, "expected 'vec <name> <integers>'")),
        }
    }
    Ok(LatticeFile { lattice, vectors })
}

pub fn serialize_lattice_file(file: &LatticeFile) -> String {
    let mut out = String::new();
    let l = &file.lattice;
    writeln!(out, "lattice v1").unwrap();
    writeln!(out, "rank {}", l.rank()).unwrap();
    writeln!(out, "gram").unwrap();
    write_rows(&mut out, l.gram());
    for (name, v) in &file.vectors {
        write!(out, "vec {name}").unwrap();
        for x in v.coords() {
            write!(out, " {x}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn write_rows(out: &mut String, rows: &[Vec<i64>]) {
    for row in rows {
        let line: Vec<String> = row.iter().map(i64::to_string).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
}

pub fn parse_matrix_file(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut lines = Lines::new(text);
    let (_, rows) = parse_header(&mut lines, "matrix v1", "rows")?;
    if !lines.done() {
        let (n, _) = lines.next("end of input")?;
        return Err(parse_err(n, "trailing content after matrix"));
    }
    Ok(rows)
}

pub fn serialize_matrix_file(m: &[Vec<i64>]) -> String {
    let mut out = format!("matrix v1\nrank {}\nrows\n", m.len());
    write_rows(&mut out, m);
    out
}
