//! Sparse rational combinations of monomials: the elements of `B`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::scalar::{format_scalar, is_negative, sign_scalar, Scalar};
use crate::space::{GeneratorRef, GradedSpace};

#[derive(Debug, Clone)]
pub struct Element {
    space: Arc<GradedSpace>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.terms == other.terms
    }
}

impl Eq for Element {}

pub(crate) fn same_space(a: &Arc<GradedSpace>, b: &Arc<GradedSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A grading value that is unconstrained (zero element), fixed, or mixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grade<T> {
    Any,
    Exactly(T),
    Mixed,
}

impl<T: Copy + PartialEq> Grade<T> {
    fn collect(values: impl Iterator<Item = T>) -> Self {
        let mut out = Grade::Any;
        for v in values {
            out = match out {
                Grade::Any => Grade::Exactly(v),
                Grade::Exactly(w) if w == v => Grade::Exactly(w),
                _ => return Grade::Mixed,
            };
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        !matches!(self, Grade::Mixed)
    }

    pub fn value(&self) -> Option<T> {
        match self {
            Grade::Exactly(v) => Some(*v),
            _ => None,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Grade<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Any => write!(f, "any"),
            Grade::Exactly(v) => write!(f, "{v}"),
            Grade::Mixed => write!(f, "mixed"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Degrees {
    pub internal: Grade<i64>,
    pub external: Grade<i64>,
    pub total: Grade<i64>,
    pub bidegree: Grade<(usize, usize)>,
}

impl Element {
    pub fn zero(space: &Arc<GradedSpace>) -> Self {
        Self { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(space: &Arc<GradedSpace>, c: Scalar) -> Self {
        Self::monomial(space, Monomial::one(), c)
    }

    pub fn one(space: &Arc<GradedSpace>) -> Self {
        Self::scalar(space, Scalar::one())
    }

    pub fn monomial(space: &Arc<GradedSpace>, m: Monomial, c: Scalar) -> Self {
        let mut out = Self::zero(space);
        out.add_term(m, c);
        out
    }

    pub fn generator(space: &Arc<GradedSpace>, g: GeneratorRef) -> Self {
        Self::monomial(space, Monomial::generator(g), Scalar::one())
    }

    pub fn primal(space: &Arc<GradedSpace>, index: usize) -> Self {
        Self::generator(space, GeneratorRef::primal(index))
    }

    pub fn dual(space: &Arc<GradedSpace>, index: usize) -> Self {
        Self::generator(space, GeneratorRef::dual(index))
    }

    /// `coeff` times the canonical reordering of `word`.
    pub fn canonicalize(space: &Arc<GradedSpace>, word: &[GeneratorRef], coeff: Scalar) -> Result<Self> {
        for &g in word {
            space.check(g)?;
        }
        Ok(match Monomial::canonical(space, word) {
            Some((neg, m)) => Self::monomial(space, m, coeff * sign_scalar(neg)),
            None => Self::zero(space),
        })
    }

    pub fn from_terms(space: &Arc<GradedSpace>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut out = Self::zero(space);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The coefficient of `1` (the `B^-2` part).
    pub fn scalar_part(&self) -> Scalar {
        self.coefficient(&Monomial::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Self::zero(&self.space);
        }
        Self { space: self.space.clone(), terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    pub fn check_space(&self, other: &Element) -> Result<()> {
        if same_space(&self.space, &other.space) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn wedge(&self, other: &Element) -> Result<Element> {
        self.check_space(other)?;
        Ok(self.wedge_unchecked(other))
    }

    pub(crate) fn wedge_unchecked(&self, other: &Element) -> Element {
        let mut out = Self::zero(&self.space);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((neg, m)) = a.multiply(b, &self.space) {
                    out.add_term(m, ca * cb * sign_scalar(neg));
                }
            }
        }
        out
    }

    pub fn degrees(&self) -> Degrees {
        let s = &self.space;
        Degrees {
            internal: Grade::collect(self.terms.keys().map(|m| m.internal_degree(s))),
            external: Grade::collect(self.terms.keys().map(|m| m.external_degree())),
            total: Grade::collect(self.terms.keys().map(|m| m.total_degree(s))),
            bidegree: Grade::collect(self.terms.keys().map(|m| m.bidegree())),
        }
    }

    /// Total-degree parity if homogeneous in parity.
    pub fn parity(&self) -> Option<bool> {
        let mut it = self.terms.keys().map(|m| m.is_odd(&self.space));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn bidegrees(&self) -> BTreeSet<(usize, usize)> {
        self.terms.keys().map(|m| m.bidegree()).collect()
    }

    pub fn project_bidegree(&self, p: usize, q: usize) -> Element {
        self.filter(|m| m.bidegree() == (p, q))
    }

    /// Terms with exactly `n` factors.
    pub fn project_length(&self, n: usize) -> Element {
        self.filter(|m| m.len() == n)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Element {
        Self {
            space: self.space.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Splits into bidegree components.
    pub fn by_bidegree(&self) -> BTreeMap<(usize, usize), Element> {
        let mut out: BTreeMap<(usize, usize), Element> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.bidegree()).or_insert_with(|| Self::zero(&self.space)).add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn is_primal(&self) -> bool {
        self.terms.keys().all(Monomial::is_primal)
    }
}

impl fmt::Display for Element {
    /// Canonical printed form, re-readable by the expression parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{}", format_scalar(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", m.display(&self.space))?;
            } else {
                write!(f, "{}*{}", format_scalar(&abs), m.display(&self.space))?;
            }
        }
        Ok(())
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert!(same_space(&self.space, &rhs.space), "adding elements of different spaces");
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert!(same_space(&self.space, &rhs.space), "subtracting elements of different spaces");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Scalar::one())
    }
}
