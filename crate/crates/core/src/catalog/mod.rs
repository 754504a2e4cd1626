//! Every named object of the construction, built once and looked up by name.
//!
//! Family entries are transcribed over `Q(t)` and specialized afterwards, so
//! a specialized catalog is exactly the image of the generic one.

mod family;
mod minus_one;
pub mod suite;

use std::fmt;
use std::sync::Arc;

use crate::arith::{QuadExt, QuadField, Rational};
use crate::error::{Error, Result};
use crate::lattice::{Configuration, NodalCurveSet};
use crate::surface::conic::{Conic, Line};
use crate::surface::manifest::{field_manifest, map_manifest, surface_manifest};
use crate::surface::{DoubleCover, FibrationData, RationalMap, SurfaceFunction};

pub use suite::{item_names, verify_all, verify_items, verify_lattice, SuiteItem, SuiteReport};

/// The parameter regime of a catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Generic,
    At(Rational),
}

impl Mode {
    /// Reads `generic` or an exact rational `n/d`.
    pub fn parse(s: &str) -> Result<Mode> {
        if s == "generic" {
            return Ok(Mode::Generic);
        }
        crate::arith::parse_rational(s)
            .map(Mode::At)
            .map_err(|_| Error::Parse { offset: 0, message: format!("expected `generic` or n/d, got `{s}`") })
    }

    pub fn is_minus_one(&self) -> bool {
        matches!(self, Mode::At(v) if *v == crate::arith::rat(-1))
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Generic => f.write_str("generic"),
            Mode::At(v) => write!(f, "{v}"),
        }
    }
}

/// A line meeting a conic, as coefficient data.
#[derive(Clone, Debug)]
pub struct TangencyData {
    pub line: Line,
    pub conic: Conic,
    pub description: String,
}

#[derive(Clone, Debug)]
pub enum Entry {
    Field(Arc<QuadField>),
    Surface(Arc<DoubleCover>),
    Map(RationalMap),
    Function(SurfaceFunction),
    Constant(QuadExt),
    Constants(Vec<QuadExt>),
    Fibration(Box<FibrationData>),
    Tangency(Box<TangencyData>),
    /// Polynomial identity data of the `t = -1` suite, as expression strings.
    Formula(Vec<(String, String)>),
    Configuration(Box<Configuration>),
    Curves(Box<NodalCurveSet>),
    Labels(Vec<String>),
}

impl Entry {
    pub fn kind(&self) -> &'static str {
        match self {
            Entry::Field(_) => "field",
            Entry::Surface(_) => "surface",
            Entry::Map(_) => "map",
            Entry::Function(_) => "function",
            Entry::Constant(_) => "constant",
            Entry::Constants(_) => "constants",
            Entry::Fibration(_) => "fibration",
            Entry::Tangency(_) => "tangency",
            Entry::Formula(_) => "formula",
            Entry::Configuration(_) => "configuration",
            Entry::Curves(_) => "curves",
            Entry::Labels(_) => "labels",
        }
    }

    /// The entry in the text manifest format.
    pub fn show(&self, name: &str) -> String {
        match self {
            Entry::Field(f) => field_manifest(f),
            Entry::Surface(s) => surface_manifest(s),
            Entry::Map(m) => map_manifest(m),
            Entry::Function(g) => format!("function {name}\n  on {}\n  value {}\n", g.host().name(), g.to_ratfunc()),
            Entry::Constant(c) => format!("constant {name}\n  value {}\n", c.to_ratfunc()),
            Entry::Constants(cs) => {
                let body: Vec<String> = cs.iter().map(|c| c.to_ratfunc().to_string()).collect();
                format!("constants {name}\n  values {}\n", body.join(", "))
            }
            Entry::Fibration(f) => format!(
                "fibration {name}\n  on {}\n  alpha {}\n  xi {}\n  eta {}\n  section ({}, {})\n",
                f.alpha.host().name(),
                f.alpha.to_ratfunc(),
                f.xi.to_ratfunc(),
                f.eta.to_ratfunc(),
                f.section.0.to_ratfunc(),
                f.section.1.to_ratfunc()
            ),
            Entry::Tangency(t) => format!("tangency {name}\n  {}\n", t.description),
            Entry::Formula(parts) => {
                let mut out = format!("formula {name}\n");
                for (k, v) in parts {
                    out.push_str(&format!("  {k} = {v}\n"));
                }
                out
            }
            Entry::Configuration(c) => format!("configuration {name}\n{}", c.describe()),
            Entry::Curves(c) => format!("curves {name}\n  {} curves: {}\n", c.len(), c.labels().join(", ")),
            Entry::Labels(l) => format!("labels {name}\n  {}\n", l.join(", ")),
        }
    }
}

/// Named entries in construction order.
#[derive(Clone, Debug)]
pub struct Catalog {
    mode: Mode,
    entries: Vec<(String, Entry)>,
}

impl Catalog {
    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    pub fn entries(&self) -> &[(String, Entry)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Result<&Entry> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| e)
            .ok_or_else(|| Error::UnknownEntry(name.to_string()))
    }

    pub fn surface(&self, name: &str) -> Result<&Arc<DoubleCover>> {
        match self.get(name)? {
            Entry::Surface(s) => Ok(s),
            other => Err(wrong_kind(name, "surface", other)),
        }
    }

    pub fn map(&self, name: &str) -> Result<&RationalMap> {
        match self.get(name)? {
            Entry::Map(m) => Ok(m),
            other => Err(wrong_kind(name, "map", other)),
        }
    }

    pub fn field(&self, name: &str) -> Result<Option<&Arc<QuadField>>> {
        match self.get(name)? {
            Entry::Field(f) => Ok(Some(f)),
            // split by specialization
            Entry::Constant(_) => Ok(None),
            other => Err(wrong_kind(name, "field", other)),
        }
    }

    pub fn function(&self, name: &str) -> Result<&SurfaceFunction> {
        match self.get(name)? {
            Entry::Function(f) => Ok(f),
            other => Err(wrong_kind(name, "function", other)),
        }
    }

    pub fn constant(&self, name: &str) -> Result<&QuadExt> {
        match self.get(name)? {
            Entry::Constant(c) => Ok(c),
            other => Err(wrong_kind(name, "constant", other)),
        }
    }

    pub fn constants(&self, name: &str) -> Result<&[QuadExt]> {
        match self.get(name)? {
            Entry::Constants(c) => Ok(c),
            other => Err(wrong_kind(name, "constants", other)),
        }
    }

    pub fn fibration(&self, name: &str) -> Result<&FibrationData> {
        match self.get(name)? {
            Entry::Fibration(f) => Ok(f),
            other => Err(wrong_kind(name, "fibration", other)),
        }
    }

    pub fn tangency(&self, name: &str) -> Result<&TangencyData> {
        match self.get(name)? {
            Entry::Tangency(t) => Ok(t),
            other => Err(wrong_kind(name, "tangency", other)),
        }
    }

    pub fn formula(&self, name: &str) -> Result<&[(String, String)]> {
        match self.get(name)? {
            Entry::Formula(f) => Ok(f),
            other => Err(wrong_kind(name, "formula", other)),
        }
    }

    pub fn configuration(&self, name: &str) -> Result<&Configuration> {
        match self.get(name)? {
            Entry::Configuration(c) => Ok(c),
            other => Err(wrong_kind(name, "configuration", other)),
        }
    }

    pub fn curves(&self, name: &str) -> Result<&NodalCurveSet> {
        match self.get(name)? {
            Entry::Curves(c) => Ok(c),
            other => Err(wrong_kind(name, "curves", other)),
        }
    }

    pub fn labels(&self, name: &str) -> Result<&[String]> {
        match self.get(name)? {
            Entry::Labels(l) => Ok(l),
            other => Err(wrong_kind(name, "labels", other)),
        }
    }

    /// Text manifest of one entry.
    pub fn show(&self, name: &str) -> Result<String> {
        Ok(self.get(name)?.show(name))
    }

    /// One line per entry: kind and name.
    pub fn list(&self) -> String {
        self.entries.iter().map(|(n, e)| format!("{:<14} {n}\n", e.kind())).collect()
    }

    fn push(&mut self, name: &str, e: Entry) {
        debug_assert!(self.entries.iter().all(|(n, _)| n != name), "duplicate entry {name}");
        self.entries.push((name.to_string(), e));
    }
}

fn wrong_kind(name: &str, want: &str, got: &Entry) -> Error {
    Error::UnknownEntry(format!("{name} is a {}, not a {want}", got.kind()))
}

/// Builds the catalog for a parameter regime.
///
/// `t = 0` is rejected (the branch sextic degenerates); `t = -1` builds the
/// special-fibre suite; any other value specializes the family.
pub fn build_catalog(mode: &Mode) -> Result<Catalog> {
    let mut cat = Catalog { mode: mode.clone(), entries: Vec::new() };
    match mode {
        Mode::At(v) if v == &crate::arith::rat(0) => {
            return Err(Error::ForbiddenParameter("t = 0: the branch curve degenerates".into()))
        }
        Mode::At(_) if mode.is_minus_one() => minus_one::build(&mut cat)?,
        Mode::Generic => family::build(&mut cat, None)?,
        Mode::At(v) => family::build(&mut cat, Some(v))?,
    }
    crate::lattice::catalog_entries(&mut cat, mode)?;
    Ok(cat)
}

/// Lets the lattice module add its configuration entries.
pub(crate) fn push_entry(cat: &mut Catalog, name: &str, e: Entry) {
    cat.push(name, e);
}
