//! Structure packages, their Maurer-Cartan equations, verifiers and the
//! classifier.

mod oracle;

pub use oracle::{oracle_axioms, StrictConstants};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::bracket::{big_bracket, nested, Subspace};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::homotopy::{iad_apply, primal_words};
use crate::monomial::Monomial;
use crate::scalar::int;
use crate::space::{GeneratorRef, GradedSpace};
use crate::verdict::Verdict;

/// The eight structure types, each governed by a subspace of `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StructureKind {
    Lie,
    CoLie,
    Bialgebra,
    Quasi,
    LinfAlgebra,
    LinfCoalgebra,
    LinfBialgebra,
    LinfQuasi,
}

impl StructureKind {
    pub const ALL: [StructureKind; 8] = [
        Self::Lie,
        Self::CoLie,
        Self::Bialgebra,
        Self::Quasi,
        Self::LinfAlgebra,
        Self::LinfCoalgebra,
        Self::LinfBialgebra,
        Self::LinfQuasi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Lie => "lie",
            Self::CoLie => "colie",
            Self::Bialgebra => "bialgebra",
            Self::Quasi => "quasi",
            Self::LinfAlgebra => "linf_algebra",
            Self::LinfCoalgebra => "linf_coalgebra",
            Self::LinfBialgebra => "linf_bialgebra",
            Self::LinfQuasi => "linf_quasi",
        }
    }

    pub fn governing(self) -> Subspace {
        match self {
            Self::Lie | Self::LinfAlgebra => Subspace::L,
            Self::CoLie | Self::LinfCoalgebra => Subspace::C,
            Self::Bialgebra | Self::LinfBialgebra => Subspace::B,
            Self::Quasi | Self::LinfQuasi => Subspace::QB,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Self::Lie | Self::CoLie | Self::Bialgebra | Self::Quasi)
    }

    /// Whether a component of bidegree `(k, l)` may appear.
    pub fn allows(self, bd: (usize, usize)) -> bool {
        if matches!(bd, (0, 1) | (0, 2)) || !self.governing().contains_bidegree(bd) {
            return false;
        }
        !self.is_strict() || STRICT_BIDEGREES.contains(&bd)
    }
}

/// Bidegrees of the classical bracket, cobracket and φ-term.
pub const STRICT_BIDEGREES: [(usize, usize); 3] = [(2, 1), (1, 2), (0, 3)];

impl FromStr for StructureKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `Q = Σ t_kl`, stored by bidegree.
#[derive(Debug, Clone, PartialEq)]
pub struct StructurePackage {
    space: Arc<GradedSpace>,
    components: BTreeMap<(usize, usize), Element>,
}

pub fn component_label((k, l): (usize, usize)) -> String {
    if k < 10 && l < 10 {
        format!("t{k}{l}")
    } else {
        format!("t{k}_{l}")
    }
}

/// Parses `tkl` (or `tk_l`) back into a bidegree.
pub fn parse_component_label(s: &str) -> Option<(usize, usize)> {
    let rest = s.strip_prefix('t')?;
    if let Some((k, l)) = rest.split_once('_') {
        return Some((k.parse().ok()?, l.parse().ok()?));
    }
    let mut chars = rest.chars();
    let (k, l) = (chars.next()?.to_digit(10)?, chars.next()?.to_digit(10)?);
    chars.next().is_none().then_some((k as usize, l as usize))
}

impl StructurePackage {
    pub fn new(space: &Arc<GradedSpace>) -> Self {
        Self { space: space.clone(), components: BTreeMap::new() }
    }

    /// Splits `q` into its bidegree components.
    pub fn from_element(q: &Element) -> Self {
        Self { space: q.space().clone(), components: q.by_bidegree() }
    }

    /// Adds `t` to the `(k, l)` component. Every monomial of `t` must have
    /// bidegree `(k, l)`; total degree is checked by [`verify`].
    pub fn insert(&mut self, (k, l): (usize, usize), t: &Element) -> Result<()> {
        if !Arc::ptr_eq(&self.space, t.space()) && *self.space != **t.space() {
            return Err(Error::SpaceMismatch);
        }
        if let Some(m) = t.terms().keys().find(|m| m.bidegree() != (k, l)) {
            let (p, q) = m.bidegree();
            return Err(Error::WrongBidegree { k, l, p, q });
        }
        let slot = self.components.entry((k, l)).or_insert_with(|| Element::zero(&self.space));
        slot.add_assign(t);
        if slot.is_zero() {
            self.components.remove(&(k, l));
        }
        Ok(())
    }

    pub fn with(mut self, bd: (usize, usize), t: &Element) -> Result<Self> {
        self.insert(bd, t)?;
        Ok(self)
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn components(&self) -> &BTreeMap<(usize, usize), Element> {
        &self.components
    }

    pub fn component(&self, bd: (usize, usize)) -> Element {
        self.components.get(&bd).cloned().unwrap_or_else(|| Element::zero(&self.space))
    }

    pub fn bidegrees(&self) -> BTreeSet<(usize, usize)> {
        self.components.keys().copied().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `Q`, the sum of all components.
    pub fn total(&self) -> Element {
        let mut q = Element::zero(&self.space);
        for t in self.components.values() {
            q.add_assign(t);
        }
        q
    }

    pub fn bracket_part(&self) -> Element {
        self.component((2, 1))
    }

    pub fn cobracket_part(&self) -> Element {
        self.component((1, 2))
    }

    pub fn phi_part(&self) -> Element {
        self.component((0, 3))
    }
}

/// `[Q, Q]`.
pub fn mc_defect(p: &StructurePackage) -> Element {
    let q = p.total();
    big_bracket(&q, &q).expect("components share the package space")
}

/// Report name of the bidegree-`(p, q)` part of `[Q, Q]`.
pub fn equation_label((p, q): (usize, usize)) -> String {
    match (p, q) {
        (1, 1) => "Eq11".into(),
        (1, 2) | (2, 1) => "Eq12and21".into(),
        (2, 2) => "Eq22".into(),
        (3, 1) => "Eq31".into(),
        (1, 3) => "Eq13".into(),
        _ => format!("MC({p},{q})"),
    }
}

/// Nonzero bidegree components of `[Q, Q]`.
pub fn mc_components(p: &StructurePackage) -> BTreeMap<(usize, usize), Element> {
    mc_defect(p).by_bidegree()
}

/// The four equations of a quasi-bialgebra `l + c + φ`, in order.
pub fn quasi_equations(p: &StructurePackage) -> [(&'static str, Element); 4] {
    let (l, c, phi) = (p.bracket_part(), p.cobracket_part(), p.phi_part());
    let br = |a: &Element, b: &Element| big_bracket(a, b).expect("same space");
    let mut second = br(&c, &c);
    second.add_scaled(&br(&l, &phi), &int(2));
    [("quasi-1", br(&l, &l)), ("quasi-2", second), ("quasi-3", br(&c, &phi)), ("quasi-4", br(&c, &l))]
}

/// Checks support, total degree and the Maurer-Cartan equation of `p` as a
/// structure of type `kind`.
pub fn verify(kind: StructureKind, p: &StructurePackage) -> Verdict {
    let mut v = Verdict::new();
    for (&bd, t) in &p.components {
        if !kind.allows(bd) {
            v.check(format!("support:{}", component_label(bd)), t.clone());
        }
        let off = t.filter(|m| m.total_degree(&p.space) != 1);
        v.check(format!("total-degree:{}", component_label(bd)), off);
    }
    for (bd, d) in mc_components(p) {
        v.check(equation_label(bd), d);
    }
    if kind == StructureKind::Quasi {
        for (label, d) in quasi_equations(p) {
            v.check(label, d);
        }
    }
    v
}

/// Outcome of [`classify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// Smallest governing subspace containing every component.
    pub governing: Option<Subspace>,
    pub total_degree_one: bool,
    pub maurer_cartan: bool,
    /// Only classical bidegrees occur.
    pub strict: bool,
    pub ungraded: bool,
    pub name: String,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "structure: {}", self.name)?;
        match self.governing {
            Some(s) => writeln!(f, "governing subalgebra: {s}")?,
            None => writeln!(f, "governing subalgebra: none")?,
        }
        writeln!(f, "total degree 1: {}", self.total_degree_one)?;
        writeln!(f, "Maurer-Cartan: {}", self.maurer_cartan)?;
        if self.ungraded {
            writeln!(f, "ungraded: {}", if self.strict { "strict" } else { "not strict" })?;
        }
        Ok(())
    }
}

pub fn classify(p: &StructurePackage) -> Classification {
    let bds = p.bidegrees();
    let weak = bds.iter().any(|bd| matches!(bd, (0, 1) | (0, 2)));
    let governing = if weak {
        None
    } else {
        [Subspace::L, Subspace::C, Subspace::B, Subspace::QB]
            .into_iter()
            .find(|s| bds.iter().all(|&bd| s.contains_bidegree(bd)))
    };
    let total_degree_one = p.components.values().all(|t| t.terms().keys().all(|m| m.total_degree(&p.space) == 1));
    let maurer_cartan = mc_defect(p).is_zero();
    let strict = bds.iter().all(|bd| STRICT_BIDEGREES.contains(bd));
    let name = match (governing, total_degree_one && maurer_cartan) {
        (None, _) => "not governed by L, C, B or QB".to_string(),
        (Some(_), false) if !total_degree_one => "not of total degree 1".to_string(),
        (Some(_), false) => "not a Maurer-Cartan element".to_string(),
        (Some(s), true) => {
            let base = match s {
                Subspace::L => "algebra",
                Subspace::C => "coalgebra",
                Subspace::B => "bialgebra",
                Subspace::QB => "quasi-bialgebra",
            };
            if strict {
                format!("Lie {base}")
            } else {
                format!("L-infinity {base}")
            }
        }
    };
    Classification { governing, total_degree_one, maurer_cartan, strict, ungraded: p.space.is_ungraded(), name }
}

/// The operator `w ↦ Σ iad(t_kl)(w)` on `∧V`, summed over components with
/// `k >= 1` that act on words of length `n >= k`.
pub fn iad_operator_apply(p: &StructurePackage, x: &Element) -> Result<Element> {
    let space = &p.space;
    let mut out = Element::zero(space);
    for (m, c) in x.terms() {
        let args: Vec<Element> = m.expanded().iter().map(|&g| Element::generator(space, g)).collect();
        for (&(k, _), t) in &p.components {
            if k == 0 || k > args.len() {
                continue;
            }
            out.add_scaled(&iad_apply(t, &args)?, c);
        }
    }
    Ok(out)
}

/// Reports every basis word of length at most `cap` (default `dim V`) on
/// which the square of the iad-operator of `Q` is nonzero.
pub fn iad_square_detector(p: &StructurePackage, cap: Option<usize>) -> Result<Verdict> {
    let mut v = Verdict::new();
    let mc = mc_defect(p);
    if !mc.is_zero() {
        v.check("precondition:[Q,Q]", mc);
    }
    let cap = cap.unwrap_or_else(|| p.space.dim());
    for w in primal_words(&p.space, cap) {
        let word = Element::monomial(&p.space, w.clone(), int(1));
        let once = iad_operator_apply(p, &word)?;
        let twice = iad_operator_apply(p, &once)?;
        v.check(format!("square:{}", w.display(&p.space)), twice);
    }
    Ok(v)
}

fn basis_tensor(space: &Arc<GradedSpace>, word: &[GeneratorRef]) -> Option<Element> {
    Monomial::canonical(space, word).map(|(_, m)| Element::monomial(space, m, int(1)))
}

/// The unique `l ∈ ∧²V*⊗V` whose binary bracket `[[l, e_a], e_b]` matches
/// `constants[(a, b)]` for every ordered pair; missing pairs are zero unless
/// implied by graded antisymmetry of a listed pair.
pub fn build_bracket_tensor(
    space: &Arc<GradedSpace>,
    constants: &BTreeMap<(usize, usize), Element>,
) -> Result<Element> {
    let n = space.dim();
    let lookup = |a: usize, b: usize| -> Option<Element> {
        if let Some(x) = constants.get(&(a, b)) {
            return Some(x.clone());
        }
        constants.get(&(b, a)).map(|x| {
            let odd = space.is_odd(GeneratorRef::primal(a)) && space.is_odd(GeneratorRef::primal(b));
            if odd {
                -x
            } else {
                x.clone()
            }
        })
    };
    for ((a, b), x) in constants {
        if *a >= n || *b >= n {
            return Err(Error::IndexOutOfRange((*a).max(*b)));
        }
        if !x.is_primal() || x.terms().keys().any(|m| m.len() != 1) {
            return Err(Error::NotInSubspace(format!("bracket value on ({a},{b}) is not in V")));
        }
    }
    let mut l = Element::zero(space);
    for a in 0..n {
        for b in a..n {
            let Some(value) = lookup(a, b) else { continue };
            let Some(t) = basis_tensor(space, &[GeneratorRef::dual(a), GeneratorRef::dual(b)]) else {
                continue;
            };
            for (m, c) in value.terms() {
                let g = m.expanded()[0];
                let basis = t.wedge_unchecked(&Element::generator(space, g));
                let unit = nested(&basis, &[Element::primal(space, a), Element::primal(space, b)])?;
                let s = unit.coefficient(m);
                l.add_scaled(&basis, &(c / s));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let got = nested(&l, &[Element::primal(space, a), Element::primal(space, b)])?;
            let want = lookup(a, b).unwrap_or_else(|| Element::zero(space));
            if got != want {
                return Err(Error::NotAlternating(format!(
                    "value on ({}, {}) conflicts with graded antisymmetry",
                    space.name(a),
                    space.name(b)
                )));
            }
        }
    }
    Ok(l)
}

/// The unique `c ∈ V*⊗∧²V` with `[c, e_a] = constants[a]`.
pub fn build_cobracket_tensor(space: &Arc<GradedSpace>, constants: &BTreeMap<usize, Element>) -> Result<Element> {
    let mut c = Element::zero(space);
    for (&a, value) in constants {
        if a >= space.dim() {
            return Err(Error::IndexOutOfRange(a));
        }
        if !value.is_primal() || value.terms().keys().any(|m| m.len() != 2) {
            return Err(Error::NotInSubspace(format!("cobracket of {} is not in ∧²V", space.name(a))));
        }
        let dual = Element::dual(space, a);
        for (m, k) in value.terms() {
            let basis = dual.wedge_unchecked(&Element::monomial(space, m.clone(), int(1)));
            let s = big_bracket(&basis, &Element::primal(space, a))?.coefficient(m);
            c.add_scaled(&basis, &(k / s));
        }
    }
    for a in 0..space.dim() {
        let got = big_bracket(&c, &Element::primal(space, a))?;
        let want = constants.get(&a).cloned().unwrap_or_else(|| Element::zero(space));
        if got != want {
            return Err(Error::NotInSubspace(format!("cobracket of {} does not round-trip", space.name(a))));
        }
    }
    Ok(c)
}
