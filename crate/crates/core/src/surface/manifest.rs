//! Plain-text manifest of fields, surfaces and maps.
//!
//! ```text
//! field s = -t
//! surface X
//!   chart x z
//!   cover y
//!   twist 1
//!   branch x*z*(x+1)*(z+1)*(x+z*t)
//! map iota: X -> X
//!   x = 1/z
//!   z = 1/x
//!   y = -y/(x^2*z^2)
//! ```
//!
//! A surface or map whose coefficients involve a generator carries a
//! `field NAME` line referring to an earlier `field` declaration.

use std::fmt::Write as _;
use std::sync::Arc;

use super::cover::DoubleCover;
use super::map::RationalMap;
use crate::arith::{QuadField, RatFunc};
use crate::error::{Error, Result};

pub fn field_manifest(f: &QuadField) -> String {
    format!("field {} = {}\n", f.name(), f.d())
}

pub fn surface_manifest(s: &DoubleCover) -> String {
    let mut out = format!("surface {}\n  chart {}\n  cover {}\n", s.name(), s.chart().join(" "), s.cover());
    let _ = writeln!(out, "  twist {}", s.twist().to_ratfunc());
    let _ = writeln!(out, "  branch {}", s.branch().to_ratfunc());
    if let Some(f) = s.field() {
        let _ = writeln!(out, "  field {}", f.name());
    }
    out
}

pub fn map_manifest(m: &RationalMap) -> String {
    let mut out = format!("map {}: {} -> {}\n", m.name(), m.source().name(), m.target().name());
    let mut names: Vec<&str> = m.target().chart().iter().map(String::as_str).collect();
    names.push(m.target().cover());
    for (n, g) in names.iter().zip(m.images()) {
        let _ = writeln!(out, "  {n} = {}", g.to_ratfunc());
    }
    if let Some(f) = m.images().iter().find_map(|g| g.field()).or(m.source().field()) {
        let _ = writeln!(out, "  field {}", f.name());
    }
    out
}

#[derive(Clone, Debug, Default)]
pub struct Manifest {
    pub fields: Vec<Arc<QuadField>>,
    pub surfaces: Vec<Arc<DoubleCover>>,
    pub maps: Vec<RationalMap>,
}

impl Manifest {
    pub fn surface(&self, name: &str) -> Option<&Arc<DoubleCover>> {
        self.surfaces.iter().find(|s| s.name() == name)
    }

    pub fn field(&self, name: &str) -> Option<&Arc<QuadField>> {
        self.fields.iter().find(|f| f.name() == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.fields.iter().for_each(|f| out.push_str(&field_manifest(f)));
        self.surfaces.iter().for_each(|s| out.push_str(&surface_manifest(s)));
        self.maps.iter().for_each(|m| out.push_str(&map_manifest(m)));
        out
    }
}

enum Block {
    Surface { name: String, props: Vec<(String, String)> },
    Map { name: String, source: String, target: String, props: Vec<(String, String)> },
}

fn err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Manifest(format!("line {}: {msg}", line + 1))
}

pub fn parse_manifest(text: &str) -> Result<Manifest> {
    let mut out = Manifest::default();
    let mut blocks: Vec<(usize, Block)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end();
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        if line.starts_with(char::is_whitespace) {
            let body = line.trim();
            let (key, value) = if let Some((k, v)) = body.split_once('=') {
                (k.trim().to_string(), v.trim().to_string())
            } else {
                let (k, v) = body.split_once(' ').ok_or_else(|| err(i, "expected `key value`"))?;
                (k.to_string(), v.trim().to_string())
            };
            match blocks.last_mut() {
                Some((_, Block::Surface { props, .. })) | Some((_, Block::Map { props, .. })) => props.push((key, value)),
                None => return Err(err(i, "property outside a block")),
            }
            continue;
        }
        let (kw, rest) = line.split_once(' ').ok_or_else(|| err(i, "expected a declaration"))?;
        match kw {
            "field" => {
                let (name, d) = rest.split_once('=').ok_or_else(|| err(i, "expected `field NAME = D`"))?;
                let d: RatFunc = d.trim().parse().map_err(|e| err(i, e))?;
                out.fields.push(QuadField::new(name.trim(), d)?);
            }
            "surface" => blocks.push((i, Block::Surface { name: rest.trim().to_string(), props: vec![] })),
            "map" => {
                let (name, arrow) = rest.split_once(':').ok_or_else(|| err(i, "expected `map NAME: A -> B`"))?;
                let (a, b) = arrow.split_once("->").ok_or_else(|| err(i, "expected `A -> B`"))?;
                blocks.push((
                    i,
                    Block::Map { name: name.trim().into(), source: a.trim().into(), target: b.trim().into(), props: vec![] },
                ));
            }
            other => return Err(err(i, format!("unknown declaration `{other}`"))),
        }
    }
    for (i, block) in blocks {
        match block {
            Block::Surface { name, props } => {
                let get = |k: &str| props.iter().find(|(p, _)| p == k).map(|(_, v)| v.as_str());
                let field = match get("field") {
                    Some(f) => Some(out.field(f).cloned().ok_or_else(|| err(i, format!("unknown field {f}")))?),
                    None => None,
                };
                let chart: Vec<&str> = get("chart").ok_or_else(|| err(i, "missing chart"))?.split_whitespace().collect();
                let cover = get("cover").ok_or_else(|| err(i, "missing cover"))?;
                let twist = get("twist").unwrap_or("1");
                let branch = get("branch").ok_or_else(|| err(i, "missing branch"))?;
                let s = DoubleCover::parse(&name, &chart, cover, twist, branch, field.as_ref()).map_err(|e| err(i, e))?;
                out.surfaces.push(s);
            }
            Block::Map { name, source, target, props } => {
                let src = out.surface(&source).cloned().ok_or_else(|| err(i, format!("unknown surface {source}")))?;
                let tgt = out.surface(&target).cloned().ok_or_else(|| err(i, format!("unknown surface {target}")))?;
                let field = match props.iter().find(|(k, _)| k == "field") {
                    Some((_, f)) => Some(out.field(f).cloned().ok_or_else(|| err(i, format!("unknown field {f}")))?),
                    None => src.field().or(tgt.field()).cloned(),
                };
                let mut names: Vec<&str> = tgt.chart().iter().map(String::as_str).collect();
                names.push(tgt.cover());
                let images = names
                    .iter()
                    .map(|n| {
                        props
                            .iter()
                            .find(|(k, _)| k == n)
                            .map(|(_, v)| v.as_str())
                            .ok_or_else(|| err(i, format!("missing image for {n}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let m = RationalMap::parse(&name, &src, &tgt, &images, field.as_ref()).map_err(|e| err(i, e))?;
                out.maps.push(m);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = "field s = -t
surface X
  chart x z
  cover y
  twist 1
  branch x*z*(x+1)*(z+1)*(x+z*t)
map iota: X -> X
  x = 1/z
  z = 1/x
  y = -y/(x^2*z^2)
";

    #[test]
    fn round_trip() {
        let m = parse_manifest(TEXT).unwrap();
        assert_eq!(m.surfaces.len(), 1);
        assert!(m.maps[0].verify().is_pass());
        let again = parse_manifest(&m.to_text()).unwrap();
        assert!(again.surfaces[0].same_model(&m.surfaces[0]));
        assert_eq!(again.maps[0].images(), m.maps[0].images());
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_manifest("surface X\n  chart x z\n  cover y\n").unwrap_err();
        assert!(e.to_string().contains("line 1"), "{e}");
        let e = parse_manifest("map f: A -> B\n").unwrap_err();
        assert!(e.to_string().contains("unknown surface A"), "{e}");
    }
}
