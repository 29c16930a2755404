//! The model bundle (ground set, topology, ideal, self-map) and its
//! line-oriented text format.
//!
//! The grammar is deliberately close to how such spaces are written out in
//! the literature:
//!
//! ```text
//! # comment
//! name: EX_4_1
//! points: a b c d
//! opens: {a} {c} {a c} {a c d}
//! ideal: {a c}            # generators; also `trivial` or `power {a c}`
//! map: a>c b>b c>a d>d
//! ```
//!
//! The empty set and the full set are implied members of `opens:` (listing
//! them is also accepted). Ideals are given by generators and saturated to a
//! power set. Printing a model yields a canonical file that parses back to
//! an identical model.

use std::fmt;

use thiserror::Error;

use crate::ideal::Ideal;
use crate::topology::{GroundSet, SelfMap, SetFamily, Subset, Topology, TopologyError};

#[derive(Clone, PartialEq, Eq)]
pub struct Model {
    pub name: Option<String>,
    topology: Topology,
    ideal: Ideal,
    map: SelfMap,
}

impl Model {
    pub fn new(topology: Topology, ideal: Ideal, map: SelfMap) -> Model {
        assert_eq!(topology.ground(), ideal.ground(), "ideal ground mismatch");
        assert_eq!(topology.ground(), map.ground(), "map ground mismatch");
        Model { name: None, topology, ideal, map }
    }

    pub fn named(name: impl Into<String>, topology: Topology, ideal: Ideal, map: SelfMap) -> Model {
        let mut m = Model::new(topology, ideal, map);
        m.name = Some(name.into());
        m
    }

    pub fn ground(&self) -> &GroundSet {
        self.topology.ground()
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn map(&self) -> &SelfMap {
        &self.map
    }

    pub fn parse(text: &str) -> Result<Model, ParseError> {
        parse_model(text)
    }

    /// Canonical multi-line model file. `parse(to_text(m)) == m`.
    pub fn to_text(&self) -> String {
        let g = self.ground();
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("name: {name}\n"));
        }
        out.push_str(&format!("points: {}\n", g.labels().join(" ")));
        let proper: Vec<String> = self
            .topology
            .opens()
            .iter()
            .filter(|o| !o.is_empty() && !o.is_full())
            .map(|o| g.render(o))
            .collect();
        out.push_str(&format!("opens: {}\n", proper.join(" ")));
        if self.ideal.is_trivial() {
            out.push_str("ideal: trivial\n");
        } else {
            out.push_str(&format!("ideal: {}\n", g.render(self.ideal.union_set())));
        }
        let assignments: Vec<String> = (0..g.len())
            .map(|x| format!("{}>{}", g.label(x), g.label(self.map.apply(x))))
            .collect();
        out.push_str(&format!("map: {}\n", assignments.join(" ")));
        out
    }

    /// One-line form used in reports and witnesses.
    pub fn to_compact(&self) -> String {
        self.to_text().trim_end().replace('\n', "; ")
    }
}

impl fmt::Debug for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Model[{}]", self.to_compact())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, message: message.into() }
    }
}

struct RawSection {
    line: usize,
    value: String,
}

pub fn parse_model(text: &str) -> Result<Model, ParseError> {
    let mut name: Option<RawSection> = None;
    let mut points: Option<RawSection> = None;
    let mut opens: Vec<RawSection> = Vec::new();
    let mut ideal: Option<RawSection> = None;
    let mut map: Option<RawSection> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| ParseError::new(lineno, "expected `key: value`"))?;
        let section = RawSection { line: lineno, value: value.trim().to_string() };
        match key.trim() {
            "name" => assign_once(&mut name, section, "name")?,
            "points" => assign_once(&mut points, section, "points")?,
            "opens" => opens.push(section),
            "ideal" => assign_once(&mut ideal, section, "ideal")?,
            "map" => assign_once(&mut map, section, "map")?,
            other => {
                return Err(ParseError::new(
                    lineno,
                    format!("unknown section `{other}` (expected name/points/opens/ideal/map)"),
                ))
            }
        }
    }

    let points = points.ok_or_else(|| ParseError::new(0, "missing `points:` line"))?;
    if opens.is_empty() {
        return Err(ParseError::new(0, "missing `opens:` line"));
    }
    let ideal_sec = ideal.ok_or_else(|| ParseError::new(0, "missing `ideal:` line"))?;
    let map_sec = map.ok_or_else(|| ParseError::new(0, "missing `map:` line"))?;

    let labels: Vec<&str> = points.value.split_whitespace().collect();
    let ground = GroundSet::new(labels)
        .map_err(|e| ParseError::new(points.line, e.to_string()))?;

    // opens: set literals, possibly spread over several `opens:` lines
    let mut open_sets = vec![ground.empty_set(), ground.full_set()];
    for sec in &opens {
        let sets = parse_set_literals(&ground, &sec.value, sec.line)?;
        open_sets.extend(sets);
    }
    let opens_line = opens[0].line;
    let topology = Topology::validate(ground.clone(), SetFamily::new(open_sets))
        .map_err(|e| ParseError::new(opens_line, render_topology_error(&ground, e)))?;

    // ideal: `trivial`, `power {..}`, or a list of generator set literals
    let ideal_value = ideal_sec.value.trim();
    let ideal = if ideal_value == "trivial" {
        Ideal::trivial(ground.clone())
    } else {
        let gen_text = ideal_value.strip_prefix("power").unwrap_or(ideal_value);
        let gens = parse_set_literals(&ground, gen_text.trim(), ideal_sec.line)?;
        let mut union = ground.empty_set();
        for s in &gens {
            union = union.union(*s);
        }
        if union.card() > 20 {
            return Err(ParseError::new(
                ideal_sec.line,
                "ideal generators span more than 20 points; the saturated ideal would be too large to materialize",
            ));
        }
        Ideal::from_generators(ground.clone(), &SetFamily::new(gens))
    };

    // map: `x>y` tokens, total, no duplicates
    let mut images: Vec<Option<usize>> = vec![None; ground.len()];
    for token in map_sec.value.split_whitespace() {
        let (from, to) = token.split_once('>').ok_or_else(|| {
            ParseError::new(map_sec.line, format!("bad map token `{token}` (expected `x>y`)"))
        })?;
        let fi = ground.index_of(from.trim()).ok_or_else(|| {
            ParseError::new(map_sec.line, format!("unknown point `{}` in map", from.trim()))
        })?;
        let ti = ground.index_of(to.trim()).ok_or_else(|| {
            ParseError::new(map_sec.line, format!("unknown point `{}` in map", to.trim()))
        })?;
        if images[fi].is_some() {
            return Err(ParseError::new(
                map_sec.line,
                format!("point `{}` is assigned twice in map", from.trim()),
            ));
        }
        images[fi] = Some(ti);
    }
    for (x, img) in images.iter().enumerate() {
        if img.is_none() {
            return Err(ParseError::new(
                map_sec.line,
                format!("map is not total: point `{}` has no image", ground.label(x)),
            ));
        }
    }
    let map = SelfMap::new(ground, images.into_iter().map(Option::unwrap).collect())
        .map_err(|e| ParseError::new(map_sec.line, e.to_string()))?;

    let mut model = Model::new(topology, ideal, map);
    model.name = name.map(|s| s.value);
    Ok(model)
}

fn assign_once(
    slot: &mut Option<RawSection>,
    section: RawSection,
    key: &str,
) -> Result<(), ParseError> {
    if slot.is_some() {
        return Err(ParseError::new(section.line, format!("duplicate `{key}:` line")));
    }
    *slot = Some(section);
    Ok(())
}

/// Parse whitespace-separated `{...}` literals. Labels inside braces may be
/// separated by whitespace or commas.
fn parse_set_literals(
    ground: &GroundSet,
    text: &str,
    line: usize,
) -> Result<Vec<Subset>, ParseError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if !rest.starts_with('{') {
            return Err(ParseError::new(line, format!("expected `{{` at `{rest}`")));
        }
        let close = rest
            .find('}')
            .ok_or_else(|| ParseError::new(line, "unclosed `{` in set literal"))?;
        let inner = &rest[1..close];
        let mut bits = 0u32;
        for label in inner.split(|c: char| c.is_whitespace() || c == ',') {
            if label.is_empty() {
                continue;
            }
            let idx = ground
                .index_of(label)
                .ok_or_else(|| ParseError::new(line, format!("unknown point `{label}`")))?;
            bits |= 1 << idx;
        }
        out.push(ground.subset_from_bits(bits));
        rest = rest[close + 1..].trim_start();
    }
    Ok(out)
}

fn render_topology_error(g: &GroundSet, e: TopologyError) -> String {
    match e {
        TopologyError::NotUnionClosed(a, b) => format!(
            "opens are not closed under union: {} \u{222a} {} = {} is missing",
            g.render(a),
            g.render(b),
            g.render(a.union(b))
        ),
        TopologyError::NotIntersectionClosed(a, b) => format!(
            "opens are not closed under intersection: {} \u{2229} {} = {} is missing",
            g.render(a),
            g.render(b),
            g.render(a.intersect(b))
        ),
        other => other.to_string(),
    }
}

/// Parse a single set literal such as `{a c}` against a ground set.
pub fn parse_subset(ground: &GroundSet, text: &str) -> Result<Subset, ParseError> {
    let sets = parse_set_literals(ground, text.trim(), 0)?;
    match sets.as_slice() {
        [one] => Ok(*one),
        _ => Err(ParseError::new(0, "expected exactly one set literal")),
    }
}
