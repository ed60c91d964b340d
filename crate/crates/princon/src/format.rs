//! The flat text format for posets and (colored) lattices.
//!
//! ```text
//! elements:
//! a
//! b
//! covers:
//! a < b
//! colors:
//! a < b : p
//! boundaries:
//! N1 = a,b
//! positions:
//! a = 0
//! b = -1
//! ```
//!
//! Sections appear in this order; `colors:`, `boundaries:` and `positions:`
//! are optional. Labels match `[A-Za-z0-9_]+`, lines end in LF.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use princon_core::{ColoredLattice, FiniteLattice, KitError, OrderError, Poset, Role};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid order")]
    Validation(#[from] OrderError),
    #[error(transparent)]
    Kit(#[from] KitError),
    #[error("{0}")]
    Content(String),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Elements,
    Covers,
    Colors,
    Boundaries,
    Positions,
}

impl Section {
    fn from_header(line: &str) -> Option<Section> {
        Some(match line {
            "elements:" => Section::Elements,
            "covers:" => Section::Covers,
            "colors:" => Section::Colors,
            "boundaries:" => Section::Boundaries,
            "positions:" => Section::Positions,
            _ => return None,
        })
    }
}

/// A parsed file, kept as text so that rendering reproduces it exactly.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    pub colors: Option<Vec<(String, String, String)>>,
    pub boundaries: Option<Vec<(String, Vec<String>)>>,
    pub positions: Option<Vec<(String, i64)>>,
}

fn is_label(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

fn label(line: usize, s: &str) -> Result<String, FormatError> {
    let s = s.trim();
    if is_label(s) {
        Ok(s.to_string())
    } else {
        Err(parse_err(line, format!("`{s}` is not a valid label")))
    }
}

fn pair(line: usize, s: &str) -> Result<(String, String), FormatError> {
    let (a, b) = s
        .split_once('<')
        .ok_or_else(|| parse_err(line, format!("expected `lower < upper`, found `{s}`")))?;
    Ok((label(line, a)?, label(line, b)?))
}

impl Document {
    pub fn parse(text: &str) -> Result<Document, FormatError> {
        let mut doc = Document::default();
        let mut section: Option<Section> = None;
        for (k, raw) in text.split('\n').enumerate() {
            let line = k + 1;
            if raw.ends_with('\r') {
                return Err(parse_err(line, "CR line ending"));
            }
            if raw.trim().is_empty() {
                continue;
            }
            if let Some(next) = Section::from_header(raw.trim()) {
                let expected_first = section.is_none() && next != Section::Elements;
                if expected_first || section.is_some_and(|s| s >= next) {
                    return Err(parse_err(line, format!("section `{}` out of order", raw.trim())));
                }
                match next {
                    Section::Colors => doc.colors = Some(Vec::new()),
                    Section::Boundaries => doc.boundaries = Some(Vec::new()),
                    Section::Positions => doc.positions = Some(Vec::new()),
                    _ => {}
                }
                section = Some(next);
                continue;
            }
            match section {
                None => return Err(parse_err(line, "expected `elements:`")),
                Some(Section::Elements) => doc.elements.push(label(line, raw)?),
                Some(Section::Covers) => doc.covers.push(pair(line, raw)?),
                Some(Section::Colors) => {
                    let (edge, color) = raw
                        .split_once(':')
                        .ok_or_else(|| parse_err(line, "expected `lower < upper : color`"))?;
                    let (a, b) = pair(line, edge)?;
                    let colors = doc.colors.get_or_insert_with(Vec::new);
                    colors.push((a, b, label(line, color)?));
                }
                Some(Section::Boundaries) => {
                    let (role, chain) = raw
                        .split_once('=')
                        .ok_or_else(|| parse_err(line, "expected `role = label,label,...`"))?;
                    let role = role.trim();
                    if Role::from_name(role).is_none() {
                        return Err(parse_err(line, format!("unknown role `{role}`")));
                    }
                    let chain = chain.split(',').map(|s| label(line, s)).collect::<Result<_, _>>()?;
                    let boundaries = doc.boundaries.get_or_insert_with(Vec::new);
                    boundaries.push((role.to_string(), chain));
                }
                Some(Section::Positions) => {
                    let (v, x) = raw
                        .split_once('=')
                        .ok_or_else(|| parse_err(line, "expected `label = x`"))?;
                    let x = x
                        .trim()
                        .parse::<i64>()
                        .map_err(|e| parse_err(line, format!("bad coordinate: {e}")))?;
                    let positions = doc.positions.get_or_insert_with(Vec::new);
                    positions.push((label(line, v)?, x));
                }
            }
        }
        if section.is_none_or(|s| s < Section::Covers) {
            return Err(parse_err(text.lines().count().max(1), "missing `covers:` section"));
        }
        Ok(doc)
    }

    pub fn render(&self) -> String {
        let mut out = String::from("elements:\n");
        for e in &self.elements {
            let _ = writeln!(out, "{e}");
        }
        out.push_str("covers:\n");
        for (a, b) in &self.covers {
            let _ = writeln!(out, "{a} < {b}");
        }
        if let Some(colors) = &self.colors {
            out.push_str("colors:\n");
            for (a, b, c) in colors {
                let _ = writeln!(out, "{a} < {b} : {c}");
            }
        }
        if let Some(boundaries) = &self.boundaries {
            out.push_str("boundaries:\n");
            for (role, chain) in boundaries {
                let _ = writeln!(out, "{role} = {}", chain.join(","));
            }
        }
        if let Some(positions) = &self.positions {
            out.push_str("positions:\n");
            for (v, x) in positions {
                let _ = writeln!(out, "{v} = {x}");
            }
        }
        out
    }

    pub fn from_poset(p: &Poset) -> Document {
        Document {
            elements: p.labels().to_vec(),
            covers: p
                .covers()
                .iter()
                .map(|&(a, b)| (p.label(a).into(), p.label(b).into()))
                .collect(),
            ..Document::default()
        }
    }

    pub fn from_lattice(l: &FiniteLattice) -> Document {
        Document {
            elements: l.labels().to_vec(),
            covers: l
                .covers()
                .iter()
                .map(|&(a, b)| (l.label(a).into(), l.label(b).into()))
                .collect(),
            positions: l
                .embedding()
                .map(|e| l.labels().iter().cloned().zip(e.xs().iter().copied()).collect()),
            ..Document::default()
        }
    }

    pub fn from_colored(c: &ColoredLattice) -> Document {
        let l = c.lattice();
        let mut doc = Document::from_lattice(l);
        doc.colors = Some(
            l.covers()
                .iter()
                .zip(c.colors())
                .map(|(&(a, b), color)| (l.label(a).into(), l.label(b).into(), color.clone()))
                .collect(),
        );
        if !c.boundaries().is_empty() {
            doc.boundaries = Some(
                c.boundaries()
                    .iter()
                    .map(|(role, chain)| {
                        (
                            role.name().to_string(),
                            chain.iter().map(|&v| l.label(v).to_string()).collect(),
                        )
                    })
                    .collect(),
            );
        }
        doc
    }

    fn only_order(&self, what: &str) -> Result<(), FormatError> {
        if self.colors.is_some() || self.boundaries.is_some() || self.positions.is_some() {
            return Err(FormatError::Content(format!(
                "a {what} file has only `elements:` and `covers:`"
            )));
        }
        Ok(())
    }

    pub fn to_poset(&self) -> Result<Poset, FormatError> {
        self.only_order("poset")?;
        Ok(Poset::new(self.elements.clone(), &self.covers)?)
    }

    /// The lattice with its drawing, if the file has one.
    pub fn to_lattice(&self) -> Result<FiniteLattice, FormatError> {
        let lattice = FiniteLattice::new(self.elements.clone(), &self.covers)?;
        let Some(positions) = &self.positions else {
            return Ok(lattice);
        };
        let mut x: Vec<Option<i64>> = vec![None; lattice.len()];
        for (v, pos) in positions {
            let id = lattice
                .index_of(v)
                .ok_or_else(|| FormatError::Content(format!("position for unknown element `{v}`")))?;
            if x[id].replace(*pos).is_some() {
                return Err(FormatError::Content(format!("two positions for `{v}`")));
            }
        }
        let x = x
            .into_iter()
            .enumerate()
            .map(|(id, p)| p.ok_or_else(|| FormatError::Content(format!("no position for `{}`", lattice.label(id)))))
            .collect::<Result<_, _>>()?;
        Ok(lattice.with_embedding(x))
    }

    /// The colored lattice; fails if the file has no `colors:` section.
    pub fn to_colored(&self) -> Result<ColoredLattice, FormatError> {
        let lattice = self.to_lattice()?;
        let colors = self
            .colors
            .as_ref()
            .ok_or_else(|| FormatError::Content("no `colors:` section".into()))?;
        let mut by_edge: BTreeMap<(usize, usize), String> = BTreeMap::new();
        for (a, b, c) in colors {
            let ids = (lattice.index_of(a), lattice.index_of(b));
            let (Some(p), Some(q)) = ids else {
                return Err(FormatError::Content(format!("color on unknown edge `{a} < {b}`")));
            };
            if !lattice.is_cover(p, q) {
                return Err(FormatError::Content(format!("`{a} < {b}` is not a cover")));
            }
            if by_edge.insert((p, q), c.clone()).is_some() {
                return Err(FormatError::Content(format!("two colors for `{a} < {b}`")));
            }
        }
        let mut list = Vec::with_capacity(lattice.covers().len());
        for &(p, q) in lattice.covers() {
            let color = by_edge.remove(&(p, q)).ok_or_else(|| {
                FormatError::Content(format!("no color for `{} < {}`", lattice.label(p), lattice.label(q)))
            })?;
            list.push(color);
        }
        let mut colored = ColoredLattice::new(lattice, list)?;
        for (role, chain) in self.boundaries.iter().flatten() {
            let role = Role::from_name(role).ok_or_else(|| FormatError::Content(format!("unknown role `{role}`")))?;
            let ids = chain
                .iter()
                .map(|v| {
                    colored
                        .lattice()
                        .index_of(v)
                        .ok_or_else(|| FormatError::Content(format!("boundary names unknown element `{v}`")))
                })
                .collect::<Result<_, _>>()?;
            colored.set_boundary(role, ids)?;
        }
        Ok(colored)
    }
}

pub fn parse_poset(text: &str) -> Result<Poset, FormatError> {
    Document::parse(text)?.to_poset()
}

pub fn parse_lattice(text: &str) -> Result<FiniteLattice, FormatError> {
    Document::parse(text)?.to_lattice()
}

pub fn parse_colored(text: &str) -> Result<ColoredLattice, FormatError> {
    Document::parse(text)?.to_colored()
}

pub fn serialize_poset(p: &Poset) -> String {
    Document::from_poset(p).render()
}

pub fn serialize_lattice(l: &FiniteLattice) -> String {
    Document::from_lattice(l).render()
}

pub fn serialize_colored(c: &ColoredLattice) -> String {
    Document::from_colored(c).render()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_matches_parse() {
        let text = "elements:\na\nb\ncovers:\na < b\ncolors:\na < b : p\npositions:\na = 0\nb = -1\n";
        let doc = Document::parse(text).unwrap();
        assert_eq!(doc.render(), text);
        let c = doc.to_colored().unwrap();
        assert_eq!(c.color(0, 1), Some("p"));
        assert_eq!(serialize_colored(&c), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match Document::parse("elements:\na\nb c\ncovers:\n") {
            Err(FormatError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            Document::parse("covers:\n"),
            Err(FormatError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Document::parse("elements:\na\ncovers:\nelements:\n"),
            Err(FormatError::Parse { line: 4, .. })
        ));
        assert!(matches!(
            Document::parse("elements:\na\n"),
            Err(FormatError::Parse { .. })
        ));
    }
}
