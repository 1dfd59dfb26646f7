use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

/// The complete graph `K_n`.
pub fn complete(n: usize) -> Result<Graph> {
    Graph::new(n, (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))))
}

/// The star `H_n`: center `1` joined to `2..=n`.
pub fn star(n: usize) -> Result<Graph> {
    Graph::new(n, (2..=n).map(|v| (1, v)))
}

/// The broom `B_m` on `m + 3` vertices.
///
/// Bristles `x_1..x_m` are labeled `1..=m` and the handle `y_1, y_2, y_3` is
/// labeled `m+1, m+2, m+3`; edges are `y_1y_2`, `y_2y_3` and `y_3x_i` for all `i`.
pub fn broom(m: usize) -> Result<Graph> {
    if m == 0 {
        return Err(Error::UnknownGenerator("broom needs at least one bristle".into()));
    }
    let (y1, y2, y3) = (m + 1, m + 2, m + 3);
    Graph::new(m + 3, [(y1, y2), (y2, y3)].into_iter().chain((1..=m).map(|x| (y3, x))))
}

/// Parses the edge-list format: a header line `n m`, then `m` lines `u v`.
///
/// Blank lines and `#` comments are skipped.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(Error::Parse { line: 1, message: "missing header".into() })?;
    let [n, m] = parse_fields::<2>(header, header_line)?;
    let mut g = Graph::edgeless(n).map_err(|e| Error::Parse { line: header_line, message: e.to_string() })?;

    let mut seen = 0;
    for (line, content) in lines {
        if seen == m {
            return Err(Error::Parse { line, message: format!("more than the declared {m} edges") });
        }
        let [u, v] = parse_fields::<2>(content, line)?;
        g.insert_edge(u, v).map_err(|e| Error::Parse { line, message: e.to_string() })?;
        seen += 1;
    }
    if seen != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: format!("expected {m} edges, found {seen}"),
        });
    }
    Ok(g)
}

pub(crate) fn parse_fields<const K: usize>(line: &str, line_no: usize) -> Result<[usize; K]> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != K {
        return Err(Error::Parse { line: line_no, message: format!("expected {K} fields, found {}", fields.len()) });
    }
    let mut out = [0usize; K];
    for (slot, field) in out.iter_mut().zip(fields) {
        *slot = field
            .parse()
            .map_err(|_| Error::Parse { line: line_no, message: format!("not a non-negative integer: {field:?}") })?;
    }
    Ok(out)
}

/// Named graph families of the generator mini-language.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    Star(usize),
    Broom(usize),
}

/// Edge removals applied after the family is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Modifier {
    /// Removes `{1,2}`.
    MinusEdge,
    /// Removes `{1,2}`, `{1,3}`, `{2,3}`.
    MinusTriangle,
}

impl Modifier {
    fn pairs(self) -> &'static [(usize, usize)] {
        match self {
            Modifier::MinusEdge => &[(1, 2)],
            Modifier::MinusTriangle => &[(1, 2), (1, 3), (2, 3)],
        }
    }
}

/// A generator spec such as `complete:5,minus-edge` or `broom:3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub family: Family,
    pub modifiers: Vec<Modifier>,
}

impl Generator {
    pub fn build(&self) -> Result<Graph> {
        let g = match self.family {
            Family::Complete(n) => complete(n)?,
            Family::Star(n) => star(n)?,
            Family::Broom(m) => broom(m)?,
        };
        self.modifiers.iter().try_fold(g, |g, m| g.remove_edges(m.pairs()))
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = || Error::UnknownGenerator(spec.to_string());
        let mut parts = spec.split(',').map(str::trim);
        let head = parts.next().ok_or_else(bad)?;
        let (name, param) = head.split_once(':').ok_or_else(bad)?;
        let param: usize = param.trim().parse().map_err(|_| bad())?;
        let family = match name.trim() {
            "complete" => Family::Complete(param),
            "star" => Family::Star(param),
            "broom" => Family::Broom(param),
            _ => return Err(bad()),
        };
        let modifiers = parts
            .map(|m| match m {
                "minus-edge" => Ok(Modifier::MinusEdge),
                "minus-triangle" => Ok(Modifier::MinusTriangle),
                _ => Err(bad()),
            })
            .collect::<Result<_>>()?;
        Ok(Generator { family, modifiers })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Complete(n) => write!(f, "complete:{n}")?,
            Family::Star(n) => write!(f, "star:{n}")?,
            Family::Broom(m) => write!(f, "broom:{m}")?,
        }
        for m in &self.modifiers {
            match m {
                Modifier::MinusEdge => write!(f, ",minus-edge")?,
                Modifier::MinusTriangle => write!(f, ",minus-triangle")?,
            }
        }
        Ok(())
    }
}
