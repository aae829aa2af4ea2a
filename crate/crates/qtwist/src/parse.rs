//! Parsers for the plain-text input formats: quandle tables, presentations
//! (optionally marked), cocycle tables, PD codes, and group specs. Lines
//! starting with `#` and blank lines are ignored everywhere.

use crate::homology::Cocycle;
use crate::knots::{MarkedPresentation, PdCode};
use crate::quandle::{FiniteQuandle, FreeQuandleElem, Presentation};
use crate::ring::AbelianGroup;

/// Parse failure with the 1-based source line and what was expected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        msg: msg.into(),
    }
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

/// `Z`, `Z/n`, or products joined by `x` with free factors first and
/// torsion factors forming a divisibility chain, e.g. `Z/2 x Z/4`.
pub fn parse_group_spec(s: &str) -> Result<AbelianGroup, String> {
    let mut free_rank = 0usize;
    let mut torsion = Vec::new();
    for part in s.split('x') {
        let part = part.trim();
        if part == "Z" {
            if !torsion.is_empty() {
                return Err("free factors must come before torsion factors".into());
            }
            free_rank += 1;
        } else if let Some(n) = part.strip_prefix("Z/") {
            let n: i64 = n
                .trim()
                .parse()
                .map_err(|_| format!("expected an integer after Z/, got `{n}`"))?;
            torsion.push(n);
        } else {
            return Err(format!("expected `Z` or `Z/n`, got `{part}`"));
        }
    }
    AbelianGroup::new(free_rank, torsion).map_err(|e| e.to_string())
}

/// Raw quandle table rows: first line `n`, then `n` rows of `n` 0-based
/// entries, row `x` column `y` holding `x^y`. Axioms are not checked here.
pub fn parse_quandle_table(text: &str) -> Result<Vec<Vec<usize>>, ParseError> {
    let mut lines = meaningful_lines(text);
    let (lno, first) = lines.next().ok_or_else(|| err(0, "empty quandle file"))?;
    let n: usize = first
        .parse()
        .map_err(|_| err(lno, format!("expected the order n, got `{first}`")))?;
    let mut table = Vec::with_capacity(n);
    for _ in 0..n {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| err(0, format!("expected {n} table rows")))?;
        let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        let row = row.map_err(|_| err(lno, "expected space-separated integers"))?;
        if row.len() != n {
            return Err(err(lno, format!("expected {n} entries, got {}", row.len())));
        }
        table.push(row);
    }
    if let Some((lno, _)) = lines.next() {
        return Err(err(lno, "unexpected extra content after the table"));
    }
    Ok(table)
}

/// Quandle table file with the axioms verified.
pub fn parse_quandle(text: &str) -> Result<FiniteQuandle, ParseError> {
    let table = parse_quandle_table(text)?;
    FiniteQuandle::from_table(table).map_err(|e| err(0, e.to_string()))
}

/// Either a plain presentation or one carrying `base:`/`loop:` marking.
#[derive(Debug, Clone)]
pub enum PresentationFile {
    Plain(Presentation),
    Marked(MarkedPresentation),
}

impl PresentationFile {
    pub fn presentation(&self) -> &Presentation {
        match self {
            PresentationFile::Plain(p) => p,
            PresentationFile::Marked(mp) => &mp.presentation,
        }
    }

    pub fn into_marked(self) -> Option<MarkedPresentation> {
        match self {
            PresentationFile::Marked(mp) => Some(mp),
            PresentationFile::Plain(_) => None,
        }
    }
}

/// Presentation file: `gens: a b c`, then `rel: <word> = <word>` lines;
/// marked presentations add `base: <gen>` and `loop: u1 u2' u3` lines.
/// Word grammar: `base` or `base^[ item+ ]` with `'` marking an inverse
/// letter.
pub fn parse_presentation(text: &str) -> Result<PresentationFile, ParseError> {
    let mut names: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    let mut base: Option<usize> = None;
    let mut loops: Vec<Vec<(usize, i8)>> = Vec::new();
    for (lno, line) in meaningful_lines(text) {
        if let Some(rest) = line.strip_prefix("gens:") {
            if names.is_some() {
                return Err(err(lno, "duplicate gens: line"));
            }
            let gens: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if gens.is_empty() {
                return Err(err(lno, "expected at least one generator name"));
            }
            names = Some(gens);
        } else if let Some(rest) = line.strip_prefix("rel:") {
            let names = names
                .as_ref()
                .ok_or_else(|| err(lno, "rel: before gens:"))?;
            let (lhs, rhs) = rest
                .split_once('=')
                .ok_or_else(|| err(lno, "expected `rel: <word> = <word>`"))?;
            relators.push((
                parse_word(lhs.trim(), names).map_err(|m| err(lno, m))?,
                parse_word(rhs.trim(), names).map_err(|m| err(lno, m))?,
            ));
        } else if let Some(rest) = line.strip_prefix("base:") {
            let names = names
                .as_ref()
                .ok_or_else(|| err(lno, "base: before gens:"))?;
            let name = rest.trim();
            let idx = names
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| err(lno, format!("unknown generator `{name}`")))?;
            base = Some(idx);
        } else if let Some(rest) = line.strip_prefix("loop:") {
            let names = names
                .as_ref()
                .ok_or_else(|| err(lno, "loop: before gens:"))?;
            loops.push(parse_items(rest.trim(), names).map_err(|m| err(lno, m))?);
        } else {
            return Err(err(
                lno,
                format!("expected gens:/rel:/base:/loop:, got `{line}`"),
            ));
        }
    }
    let names = names.ok_or_else(|| err(0, "missing gens: line"))?;
    let p = Presentation::new(names, relators).map_err(|e| err(0, e.to_string()))?;
    if base.is_none() && loops.is_empty() {
        return Ok(PresentationFile::Plain(p));
    }
    let base = base.ok_or_else(|| err(0, "loop: lines require a base: line"))?;
    let mp = MarkedPresentation::new(p, base, loops).map_err(|e| err(0, e.to_string()))?;
    Ok(PresentationFile::Marked(mp))
}

fn parse_items(s: &str, names: &[String]) -> Result<Vec<(usize, i8)>, String> {
    let mut items = Vec::new();
    for tok in s.split_whitespace() {
        let (name, sign) = match tok.strip_suffix('\'') {
            Some(base) => (base, -1i8),
            None => (tok, 1i8),
        };
        let idx = names
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| format!("unknown generator `{name}`"))?;
        items.push((idx, sign));
    }
    Ok(items)
}

fn parse_word(s: &str, names: &[String]) -> Result<FreeQuandleElem, String> {
    let (base_name, tail) = match s.split_once("^[") {
        None => (s.trim(), None),
        Some((b, rest)) => {
            let inner = rest
                .strip_suffix(']')
                .ok_or_else(|| format!("unterminated `^[` in `{s}`"))?;
            (b.trim(), Some(inner))
        }
    };
    let base = names
        .iter()
        .position(|g| g == base_name)
        .ok_or_else(|| format!("unknown generator `{base_name}`"))?;
    let items = match tail {
        None => vec![],
        Some(inner) => parse_items(inner, names)?,
    };
    Ok(FreeQuandleElem::new(base, items))
}

/// Cocycle file: first line a group spec, then `x y v1 v2 ...` rows giving
/// coordinates of `θ(x, y)`; unspecified pairs default to `0`.
pub fn parse_cocycle(text: &str, x: &FiniteQuandle) -> Result<Cocycle, ParseError> {
    let mut lines = meaningful_lines(text);
    let (lno, spec) = lines.next().ok_or_else(|| err(0, "empty cocycle file"))?;
    let group = parse_group_spec(spec).map_err(|m| err(lno, m))?;
    let n = x.order();
    let mut theta = Cocycle::zero(n, &group);
    for (lno, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 + group.coord_len() {
            return Err(err(
                lno,
                format!("expected `x y` plus {} coordinates", group.coord_len()),
            ));
        }
        let a: usize = toks[0]
            .parse()
            .map_err(|_| err(lno, "expected integer x"))?;
        let b: usize = toks[1]
            .parse()
            .map_err(|_| err(lno, "expected integer y"))?;
        if a >= n || b >= n {
            return Err(err(
                lno,
                format!("pair ({a},{b}) out of range for order {n}"),
            ));
        }
        let coords: Result<Vec<i64>, _> = toks[2..].iter().map(|t| t.parse()).collect();
        let coords = coords.map_err(|_| err(lno, "expected integer coordinates"))?;
        theta.set_value(a, b, group.elem(coords));
    }
    Ok(theta)
}

/// PD code file: one crossing per line, `i j k l` counterclockwise from
/// the incoming under-edge. An empty file is the 0-crossing unknot.
pub fn parse_pd(text: &str) -> Result<PdCode, ParseError> {
    let mut crossings = Vec::new();
    for (lno, line) in meaningful_lines(text) {
        let toks: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        let toks = toks.map_err(|_| err(lno, "expected four integers"))?;
        if toks.len() != 4 {
            return Err(err(
                lno,
                format!("expected four labels, got {}", toks.len()),
            ));
        }
        crossings.push([toks[0], toks[1], toks[2], toks[3]]);
    }
    PdCode::new(crossings).map_err(|e| err(0, e.to_string()))
}
