//! JSON formats for spaces, structure packages and triples. Coefficients
//! are always strings (`"p/q"` or an integer).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::manin::{DoubleSpace, TripleStructure};
use crate::monomial::Monomial;
use crate::scalar::{format_scalar, parse_scalar};
use crate::space::{GeneratorRef, GradedSpace};
use crate::structures::{component_label, parse_component_label, StructurePackage};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub field: String,
    pub generators: Vec<GeneratorSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub duals: Vec<String>,
    pub primals: Vec<String>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PackageFile {
    pub components: BTreeMap<String, Vec<Term>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub args: Vec<String>,
    pub value: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketBlock {
    pub arity: usize,
    pub entries: Vec<BracketEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleFile {
    pub space: SpaceFile,
    pub brackets: Vec<BracketBlock>,
}

fn from_json<T: DeserializeOwned>(src: &str) -> Result<T> {
    serde_json::from_str(src).map_err(|e| match e.classify() {
        serde_json::error::Category::Data => Error::Schema(e.to_string()),
        _ => Error::Json(e.to_string()),
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

impl SpaceFile {
    pub fn build(&self) -> Result<Arc<GradedSpace>> {
        if self.field != "rational" {
            return Err(Error::Schema(format!("unsupported field `{}`", self.field)));
        }
        let gens = self.generators.iter().map(|g| (g.name.clone(), g.degree));
        Ok(Arc::new(GradedSpace::new(gens)?))
    }

    pub fn of(space: &GradedSpace) -> Self {
        Self {
            field: "rational".into(),
            generators: space
                .generators()
                .iter()
                .map(|g| GeneratorSpec { name: g.name.clone(), degree: g.degree })
                .collect(),
        }
    }
}

pub fn read_space(src: &str) -> Result<Arc<GradedSpace>> {
    from_json::<SpaceFile>(src)?.build()
}

pub fn write_space(space: &GradedSpace) -> String {
    to_json(&SpaceFile::of(space))
}

fn term_element(space: &Arc<GradedSpace>, t: &Term) -> Result<Element> {
    let c = parse_scalar(&t.coeff)?;
    if num_traits::Zero::is_zero(&c) {
        return Err(Error::Schema(format!("zero coefficient `{}`", t.coeff)));
    }
    let mut word = Vec::new();
    for d in &t.duals {
        word.push(GeneratorRef::dual(space.index_of(d)?));
    }
    for p in &t.primals {
        word.push(GeneratorRef::primal(space.index_of(p)?));
    }
    Element::canonicalize(space, &word, c)
}

fn terms_of(space: &GradedSpace, e: &Element) -> Vec<Term> {
    e.terms()
        .iter()
        .map(|(m, c)| {
            let (mut duals, mut primals) = (Vec::new(), Vec::new());
            for g in m.expanded() {
                let name = space.name(g.index).to_string();
                if g.is_dual() {
                    duals.push(name)
                } else {
                    primals.push(name)
                }
            }
            Term { duals, primals, coeff: format_scalar(c) }
        })
        .collect()
}

pub fn read_package(src: &str, space: &Arc<GradedSpace>) -> Result<StructurePackage> {
    let file: PackageFile = from_json(src)?;
    let mut p = StructurePackage::new(space);
    for (label, terms) in &file.components {
        let (k, l) = parse_component_label(label)
            .ok_or_else(|| Error::Schema(format!("component label `{label}` is not of the form tkl")))?;
        for t in terms {
            if t.duals.len() != k || t.primals.len() != l {
                return Err(Error::Schema(format!(
                    "term in {label} has {} duals and {} primals",
                    t.duals.len(),
                    t.primals.len()
                )));
            }
            p.insert((k, l), &term_element(space, t)?)?;
        }
    }
    Ok(p)
}

pub fn write_package(p: &StructurePackage) -> String {
    let components = p
        .components()
        .iter()
        .map(|(&bd, t)| (component_label(bd), terms_of(p.space(), t)))
        .collect();
    to_json(&PackageFile { components })
}

fn parse_atom(space: &GradedSpace, s: &str) -> Result<GeneratorRef> {
    match s.strip_suffix('\'') {
        Some(name) => Ok(GeneratorRef::dual(space.index_of(name)?)),
        None => Ok(GeneratorRef::primal(space.index_of(s)?)),
    }
}

pub fn read_triple(src: &str) -> Result<TripleStructure> {
    let file: TripleFile = from_json(src)?;
    let space = file.space.build()?;
    let mut t = TripleStructure::new(DoubleSpace::new(&space));
    for block in &file.brackets {
        for entry in &block.entries {
            if entry.args.len() != block.arity {
                return Err(Error::Schema(format!("entry with {} args in arity-{} block", entry.args.len(), block.arity)));
            }
            let args = entry.args.iter().map(|a| parse_atom(&space, a)).collect::<Result<Vec<_>>>()?;
            let mut value = Element::zero(&space);
            for term in &entry.value {
                if term.duals.len() + term.primals.len() != 1 {
                    return Err(Error::Schema("bracket values must be single generators".into()));
                }
                value.add_assign(&term_element(&space, term)?);
            }
            let previous = t.eval(&args);
            if !previous.is_zero() && previous != value {
                return Err(Error::Schema(format!("conflicting entries for ({})", entry.args.join(", "))));
            }
            t.insert(&args, &value)?;
        }
    }
    Ok(t)
}

pub fn write_triple(t: &TripleStructure) -> String {
    let space = t.base();
    let brackets = t
        .brackets()
        .iter()
        .filter(|(_, table)| !table.is_empty())
        .map(|(&arity, table)| BracketBlock {
            arity,
            entries: table
                .iter()
                .map(|(w, v): (&Monomial, &Element)| BracketEntry {
                    args: w.expanded().into_iter().map(|g| space.atom(g)).collect(),
                    value: terms_of(space, v),
                })
                .collect(),
        })
        .collect();
    to_json(&TripleFile { space: SpaceFile::of(space), brackets })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_round_trip() {
        let v = GradedSpace::new([("a", 0), ("b", -1)]).unwrap();
        assert_eq!(*read_space(&write_space(&v)).unwrap(), v);
        assert!(matches!(read_space("{"), Err(Error::Json(_))));
        assert!(matches!(read_space(r#"{"field":"rational"}"#), Err(Error::Schema(_))));
        assert!(matches!(read_space(r#"{"field":"real","generators":[]}"#), Err(Error::Schema(_))));
        assert!(matches!(
            read_space(r#"{"field":"rational","generators":[{"name":"1a","degree":0}]}"#),
            Err(Error::InvalidName(_))
        ));
    }

    #[test]
    fn package_terms_are_checked() {
        let v = Arc::new(GradedSpace::ungraded(&["x", "y"]).unwrap());
        let ok = r#"{"components":{"t21":[{"duals":["y","x"],"primals":["y"],"coeff":"1"}]}}"#;
        let p = read_package(ok, &v).unwrap();
        assert_eq!(p.component((2, 1)).to_string(), "-x'^y'^y");
        assert_eq!(read_package(&write_package(&p), &v).unwrap(), p);
        let bad = r#"{"components":{"t21":[{"duals":["x"],"primals":["y"],"coeff":"1"}]}}"#;
        assert!(matches!(read_package(bad, &v), Err(Error::Schema(_))));
        let zero = r#"{"components":{"t21":[{"duals":["x","y"],"primals":["y"],"coeff":"0"}]}}"#;
        assert!(matches!(read_package(zero, &v), Err(Error::Schema(_))));
        let label = r#"{"components":{"tx":[]}}"#;
        assert!(matches!(read_package(label, &v), Err(Error::Schema(_))));
    }
}
