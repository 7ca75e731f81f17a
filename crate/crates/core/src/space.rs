//! Graded vector spaces and references to their (dual) basis generators.

use std::fmt;

use crate::error::{Error, Result};

/// Whether a generator is a basis vector of `V` or of its dual.
///
/// The derived order puts duals first, which fixes the canonical factor
/// order of monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Dual,
    Primal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorRef {
    pub kind: Kind,
    pub index: usize,
}

impl GeneratorRef {
    pub const fn primal(index: usize) -> Self {
        Self { kind: Kind::Primal, index }
    }

    pub const fn dual(index: usize) -> Self {
        Self { kind: Kind::Dual, index }
    }

    /// The generator this one pairs with: `e_a <-> e*_a`.
    pub const fn partner(self) -> Self {
        match self.kind {
            Kind::Dual => Self::primal(self.index),
            Kind::Primal => Self::dual(self.index),
        }
    }

    pub fn is_dual(self) -> bool {
        self.kind == Kind::Dual
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

/// A finite-dimensional graded space `V` given by named basis generators
/// with integer internal degrees. Duals are implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    generators: Vec<Generator>,
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl GradedSpace {
    pub fn new<S: Into<String>>(generators: impl IntoIterator<Item = (S, i64)>) -> Result<Self> {
        let mut out: Vec<Generator> = Vec::new();
        for (name, degree) in generators {
            let name = name.into();
            if !is_valid_name(&name) {
                return Err(Error::InvalidName(name));
            }
            if out.iter().any(|g| g.name == name) {
                return Err(Error::DuplicateName(name));
            }
            out.push(Generator { name, degree });
        }
        Ok(Self { generators: out })
    }

    /// Every generator in internal degree zero.
    pub fn ungraded(names: &[&str]) -> Result<Self> {
        Self::new(names.iter().map(|n| (*n, 0)))
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn name(&self, index: usize) -> &str {
        &self.generators[index].name
    }

    pub fn degree(&self, index: usize) -> i64 {
        self.generators[index].degree
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn check(&self, g: GeneratorRef) -> Result<()> {
        if g.index < self.dim() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(g.index))
        }
    }

    pub fn is_ungraded(&self) -> bool {
        self.generators.iter().all(|g| g.degree == 0)
    }

    /// `deg(e_a)` for primal, `-deg(e_a)` for dual.
    pub fn internal_degree(&self, g: GeneratorRef) -> i64 {
        match g.kind {
            Kind::Primal => self.degree(g.index),
            Kind::Dual => -self.degree(g.index),
        }
    }

    /// A lone generator sits in external degree -1.
    pub fn total_degree(&self, g: GeneratorRef) -> i64 {
        self.internal_degree(g) - 1
    }

    /// Koszul parity of a generator; a generator and its dual always agree.
    pub fn is_odd(&self, g: GeneratorRef) -> bool {
        self.degree(g.index).rem_euclid(2) == 0
    }

    /// Printed atom: `name` or `name'` for duals.
    pub fn atom(&self, g: GeneratorRef) -> String {
        match g.kind {
            Kind::Primal => self.name(g.index).to_string(),
            Kind::Dual => format!("{}'", self.name(g.index)),
        }
    }

    /// All primal then all dual generators.
    pub fn all_refs(&self) -> Vec<GeneratorRef> {
        (0..self.dim())
            .map(GeneratorRef::primal)
            .chain((0..self.dim()).map(GeneratorRef::dual))
            .collect()
    }
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.generators.iter().map(|g| format!("{}:{}", g.name, g.degree)).collect();
        write!(f, "V<{}>", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_names() {
        assert!(GradedSpace::ungraded(&["h", "e_1", "_x"]).is_ok());
        assert!(matches!(GradedSpace::ungraded(&["1a"]), Err(Error::InvalidName(_))));
        assert!(matches!(GradedSpace::ungraded(&["a'"]), Err(Error::InvalidName(_))));
        assert!(matches!(GradedSpace::ungraded(&[""]), Err(Error::InvalidName(_))));
        assert!(matches!(GradedSpace::ungraded(&["a", "a"]), Err(Error::DuplicateName(_))));
    }

    #[test]
    fn degrees_and_parity() {
        let v = GradedSpace::new([("x", 1), ("e", 0), ("y", -2)]).unwrap();
        let x = GeneratorRef::primal(0);
        assert_eq!(v.total_degree(x), 0);
        assert_eq!(v.total_degree(x.partner()), -2);
        assert!(!v.is_odd(x));
        assert!(v.is_odd(GeneratorRef::dual(1)));
        assert!(v.is_odd(GeneratorRef::primal(2)));
        assert_eq!(v.internal_degree(GeneratorRef::dual(2)), 2);
    }
}
