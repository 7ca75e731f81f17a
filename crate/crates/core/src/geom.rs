//! Polynomial differential operators in coordinates `x^α` and derivative
//! symbols `ξ^α`, with the graded Poisson bracket. This is an independent
//! model of `B`: `e*_α ↦ x^α`, `e_α ↦ ξ^α`.
//!
//! Words are ordered by generator index with `x` before `ξ`, unlike the
//! ordering used for `B`, so translation carries genuine Koszul signs.
//! Both symbols of index `α` have the parity of `e_α`. The bracket is
//!
//! ```text
//! {E, F} = Σ_α (E ∂/∂x^α) (∂/∂ξ^α F) - (-1)^{|E||F|} (F ∂/∂x^α) (∂/∂ξ^α E)
//! ```
//!
//! with the `x`-derivative taken from the right and the `ξ`-derivative from
//! the left.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::bracket::big_bracket;
use crate::element::Element;
use crate::error::Result;
use crate::scalar::{format_scalar, int, Scalar};
use crate::space::{GeneratorRef, GradedSpace, Kind};
use crate::verdict::Verdict;

/// `x^α` or `ξ^α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub index: usize,
    /// `false` for `x^α`, `true` for `ξ^α`.
    pub derivative: bool,
}

impl Symbol {
    pub fn x(index: usize) -> Self {
        Self { index, derivative: false }
    }

    pub fn xi(index: usize) -> Self {
        Self { index, derivative: true }
    }

    fn partner(self) -> Self {
        Self { index: self.index, derivative: !self.derivative }
    }

    /// Degree used to match the total degree of `B`: `1 - |e_α|` for `x^α`
    /// and `1 + |e_α|` for `ξ^α`.
    pub fn degree(self, space: &GradedSpace) -> i64 {
        let d = space.degree(self.index);
        if self.derivative {
            1 + d
        } else {
            1 - d
        }
    }
}

/// A sorted word with exponents; odd symbols have exponent 1.
pub type Word = Vec<(Symbol, u32)>;

#[derive(Debug, Clone, PartialEq)]
pub struct CoordOperator {
    space: Arc<GradedSpace>,
    terms: BTreeMap<Word, Scalar>,
}

fn odd(space: &GradedSpace, s: Symbol) -> bool {
    space.degree(s.index) % 2 == 0
}

/// Sorts `letters` into a word, returning the Koszul sign (`true` =
/// negative), or `None` if an odd symbol repeats.
pub fn sort_word(space: &GradedSpace, letters: &[Symbol]) -> Option<(bool, Word)> {
    let mut v = letters.to_vec();
    let mut negative = false;
    // insertion sort, counting odd transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            if odd(space, v[j - 1]) && odd(space, v[j]) {
                negative = !negative;
            }
            v.swap(j - 1, j);
            j -= 1;
        }
    }
    let mut word: Word = Vec::new();
    for s in v {
        match word.last_mut() {
            Some((t, k)) if *t == s => {
                if odd(space, s) {
                    return None;
                }
                *k += 1;
            }
            _ => word.push((s, 1)),
        }
    }
    Some((negative, word))
}

fn expand(word: &Word) -> Vec<Symbol> {
    word.iter().flat_map(|&(s, k)| std::iter::repeat(s).take(k as usize)).collect()
}

fn word_parity(space: &GradedSpace, word: &Word) -> bool {
    word.iter().filter(|(s, k)| odd(space, *s) && k % 2 == 1).count() % 2 == 1
}

/// `(sign, exponent, rest)` of a one-sided derivative, or `None` if `s`
/// does not occur.
fn derivative(space: &GradedSpace, word: &Word, s: Symbol, from_right: bool) -> Option<(bool, u32, Word)> {
    let pos = word.iter().position(|(t, _)| *t == s)?;
    let k = word[pos].1;
    let passed = if from_right { &word[pos + 1..] } else { &word[..pos] };
    let negative = odd(space, s) && word_parity(space, &passed.to_vec());
    let mut rest = word.clone();
    if k == 1 {
        rest.remove(pos);
    } else {
        rest[pos].1 -= 1;
    }
    Some((negative, k, rest))
}

impl CoordOperator {
    pub fn zero(space: &Arc<GradedSpace>) -> Self {
        Self { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn one(space: &Arc<GradedSpace>) -> Self {
        let mut out = Self::zero(space);
        out.add_term(Vec::new(), Scalar::one());
        out
    }

    pub fn symbol(space: &Arc<GradedSpace>, s: Symbol) -> Self {
        let mut out = Self::zero(space);
        out.add_term(vec![(s, 1)], Scalar::one());
        out
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    fn add_letters(&mut self, letters: &[Symbol], c: Scalar) {
        if let Some((neg, w)) = sort_word(&self.space, letters) {
            self.add_term(w, if neg { -c } else { c });
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(&self.space);
        for (w, d) in &self.terms {
            out.add_term(w.clone(), d * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.space);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let mut letters = expand(a);
                letters.extend(expand(b));
                out.add_letters(&letters, c * d);
            }
        }
        out
    }

    /// `Σ degree(symbols) - 2`, when the same for every term.
    pub fn degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|w| {
            w.iter().map(|&(s, k)| s.degree(&self.space) * k as i64).sum::<i64>() - 2
        });
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

impl fmt::Display for CoordOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let body: Vec<String> = expand(w)
                .into_iter()
                .map(|s| format!("{}{}", if s.derivative { "ξ_" } else { "x_" }, self.space.name(s.index)))
                .collect();
            let body = if body.is_empty() { "1".to_string() } else { body.join("*") };
            let neg = c < &Scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if abs.is_one() {
                f.write_str(&body)?;
            } else {
                write!(f, "{}*{}", format_scalar(&abs), body)?;
            }
        }
        Ok(())
    }
}

fn to_symbol(g: GeneratorRef) -> Symbol {
    match g.kind {
        Kind::Dual => Symbol::x(g.index),
        Kind::Primal => Symbol::xi(g.index),
    }
}

fn to_generator(s: Symbol) -> GeneratorRef {
    if s.derivative {
        GeneratorRef::primal(s.index)
    } else {
        GeneratorRef::dual(s.index)
    }
}

/// `e*_α ↦ x^α`, `e_α ↦ ξ^α`, multiplicatively.
pub fn translate(a: &Element) -> CoordOperator {
    let mut out = CoordOperator::zero(a.space());
    for (m, c) in a.terms() {
        let letters: Vec<Symbol> = m.expanded().into_iter().map(to_symbol).collect();
        out.add_letters(&letters, c.clone());
    }
    out
}

/// Inverse of [`translate`].
pub fn untranslate(e: &CoordOperator) -> Element {
    let mut out = Element::zero(&e.space);
    for (w, c) in &e.terms {
        let letters: Vec<GeneratorRef> = expand(w).into_iter().map(to_generator).collect();
        out.add_assign(&Element::canonicalize(&e.space, &letters, c.clone()).expect("letters come from the space"));
    }
    out
}

/// `Σ_α (a ∂/∂x^α)(∂/∂ξ^α b)` on words.
fn half_bracket(space: &Arc<GradedSpace>, a: &Word, b: &Word, out: &mut CoordOperator, c: &Scalar) {
    for &(s, _) in a.iter().filter(|(s, _)| !s.derivative) {
        let Some((na, ka, ra)) = derivative(space, a, s, true) else { continue };
        let Some((nb, kb, rb)) = derivative(space, b, s.partner(), false) else { continue };
        let mut letters = expand(&ra);
        letters.extend(expand(&rb));
        let k = Scalar::from_integer((ka * kb).into());
        out.add_letters(&letters, if na ^ nb { -(c * k) } else { c * k });
    }
}

/// The graded Poisson bracket `{E, F}`.
pub fn poisson(e: &CoordOperator, f: &CoordOperator) -> CoordOperator {
    let space = &e.space;
    let mut out = CoordOperator::zero(space);
    for (a, ca) in &e.terms {
        for (b, cb) in &f.terms {
            let c = ca * cb;
            half_bracket(space, a, b, &mut out, &c);
            let sign = if word_parity(space, a) && word_parity(space, b) { c.clone() } else { -c.clone() };
            half_bracket(space, b, a, &mut out, &sign);
        }
    }
    out
}

static EPSILON: OnceLock<i64> = OnceLock::new();

/// The sign `ε` with `translate([u, v]) = ε {translate u, translate v}`,
/// fixed once from `[e*, e]` on a one-dimensional space.
pub fn epsilon() -> i64 {
    *EPSILON.get_or_init(|| {
        let space = Arc::new(GradedSpace::ungraded(&["e"]).expect("valid name"));
        let (u, v) = (Element::dual(&space, 0), Element::primal(&space, 0));
        let lhs = translate(&big_bracket(&u, &v).expect("same space"));
        let rhs = poisson(&translate(&u), &translate(&v));
        if lhs == rhs {
            1
        } else {
            assert_eq!(lhs, rhs.scale(&int(-1)), "brackets differ by more than a sign");
            -1
        }
    })
}

/// Compares `[u, v]` with the Poisson bracket of the translations.
pub fn oracle_check(u: &Element, v: &Element) -> Result<Verdict> {
    let lhs = translate(&big_bracket(u, v)?);
    let rhs = poisson(&translate(u), &translate(v)).scale(&int(epsilon()));
    let mut verdict = Verdict::new();
    let diff = lhs.add(&rhs.scale(&int(-1)));
    verdict.check("mismatch", untranslate(&diff));
    Ok(verdict)
}
