//! The double `W = V ⊕ V*` with its induced L∞ structure, and Manin
//! (quasi-)triples.
//!
//! `W` is the length-one part of `B`, so words in `W` are the monomials of
//! `B` and `∧W` is `B` itself; the Koszul rule is the one used everywhere
//! else. The brackets of a triple built from `Q` are
//! `λ_n(w_1, …, w_n) = [[…[Q, w_1]…], w_n]` projected to `W`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;

use crate::bracket::{nested, pairing};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::homotopy::{koszul_front, subsets, words_of_length};
use crate::monomial::Monomial;
use crate::scalar::{int, Scalar};
use crate::space::{GeneratorRef, GradedSpace, Kind};
use crate::structures::{mc_defect, StructurePackage};
use crate::verdict::Verdict;

/// `W = V ⊕ V*` with the splitting `W₊ = V`, `W₋ = V*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleSpace {
    base: Arc<GradedSpace>,
}

/// One half of the splitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Half {
    Plus,
    Minus,
}

impl Half {
    fn kind(self) -> Kind {
        match self {
            Half::Plus => Kind::Primal,
            Half::Minus => Kind::Dual,
        }
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Half::Plus => "W+",
            Half::Minus => "W-",
        })
    }
}

impl DoubleSpace {
    pub fn new(base: &Arc<GradedSpace>) -> Self {
        Self { base: base.clone() }
    }

    pub fn base(&self) -> &Arc<GradedSpace> {
        &self.base
    }

    pub fn dim(&self) -> usize {
        2 * self.base.dim()
    }

    /// Basis of `W`: all duals, then all primals.
    pub fn basis(&self) -> Vec<GeneratorRef> {
        self.base.all_refs()
    }

    pub fn half_basis(&self, half: Half) -> Vec<GeneratorRef> {
        self.basis().into_iter().filter(|g| g.kind == half.kind()).collect()
    }

    pub fn vector(&self, g: GeneratorRef) -> Element {
        Element::generator(&self.base, g)
    }

    /// Canonical words of `n` letters from `letters`.
    pub fn words(&self, letters: &[GeneratorRef], n: usize) -> Vec<Monomial> {
        words_of_length(&self.base, letters, n)
    }
}

/// A family of alternating brackets `λ_n : ∧ⁿW → W`.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleStructure {
    space: DoubleSpace,
    brackets: BTreeMap<usize, BTreeMap<Monomial, Element>>,
}

impl TripleStructure {
    pub fn new(space: DoubleSpace) -> Self {
        Self { space, brackets: BTreeMap::new() }
    }

    pub fn space(&self) -> &DoubleSpace {
        &self.space
    }

    pub fn base(&self) -> &Arc<GradedSpace> {
        &self.space.base
    }

    /// Sets `λ_n(args) = value`; the word is put in canonical order and the
    /// value adjusted by the reordering sign.
    pub fn insert(&mut self, args: &[GeneratorRef], value: &Element) -> Result<()> {
        let base = &self.space.base;
        for &g in args {
            base.check(g)?;
        }
        if value.space() != base || value.terms().keys().any(|m| m.len() != 1) {
            return Err(Error::NotInSubspace("bracket values must lie in W".into()));
        }
        let Some((neg, word)) = Monomial::canonical(base, args) else {
            if value.is_zero() {
                return Ok(());
            }
            return Err(Error::NotAlternating("nonzero value on a word with a repeated odd letter".into()));
        };
        let value = if neg { -value } else { value.clone() };
        if value.is_zero() {
            if let Some(table) = self.brackets.get_mut(&args.len()) {
                table.remove(&word);
                if table.is_empty() {
                    self.brackets.remove(&args.len());
                }
            }
        } else {
            self.brackets.entry(args.len()).or_default().insert(word, value);
        }
        Ok(())
    }

    pub fn brackets(&self) -> &BTreeMap<usize, BTreeMap<Monomial, Element>> {
        &self.brackets
    }

    pub fn max_arity(&self) -> usize {
        self.brackets.iter().filter(|(_, t)| !t.is_empty()).map(|(&n, _)| n).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.brackets.values().all(BTreeMap::is_empty)
    }

    /// `λ_n` on an ordered argument list.
    pub fn eval(&self, args: &[GeneratorRef]) -> Element {
        let base = &self.space.base;
        let zero = Element::zero(base);
        let Some((neg, word)) = Monomial::canonical(base, args) else { return zero };
        match self.brackets.get(&args.len()).and_then(|t| t.get(&word)) {
            Some(v) if neg => -v,
            Some(v) => v.clone(),
            None => zero,
        }
    }

    /// `λ_n` extended as a coderivation of `∧W` and summed over `n`.
    pub fn coder_apply(&self, x: &Element) -> Element {
        let base = &self.space.base;
        let mut out = Element::zero(base);
        for (m, c) in x.terms() {
            let letters = m.expanded();
            let parities: Vec<bool> = letters.iter().map(|&g| base.is_odd(g)).collect();
            for &k in self.brackets.keys() {
                if k > letters.len() {
                    continue;
                }
                for front in subsets(letters.len(), k) {
                    let head: Vec<GeneratorRef> = front.iter().map(|&i| letters[i]).collect();
                    let value = self.eval(&head);
                    if value.is_zero() {
                        continue;
                    }
                    let rest: Vec<GeneratorRef> =
                        (0..letters.len()).filter(|i| !front.contains(i)).map(|i| letters[i]).collect();
                    let Some((neg, tail)) = Monomial::canonical(base, &rest) else { continue };
                    let sign = neg ^ koszul_front(&parities, &front);
                    let tail = Element::monomial(base, tail, int(if sign { -1 } else { 1 }));
                    out.add_scaled(&value.wedge_unchecked(&tail), c);
                }
            }
        }
        out
    }
}

/// `⟨a, b⟩`, the scalar part of `[a, b]`: `⟨e*, e⟩ = 1`, and both halves
/// are isotropic.
pub fn w_pairing(a: &Element, b: &Element) -> Result<Scalar> {
    pairing(a, b)
}

/// The brackets `λ_n` of `Q = Σ P` on `W`, for `n` up to one less than the
/// longest monomial of `Q` (longer brackets vanish on `W`).
pub fn double_from_package(p: &StructurePackage) -> Result<TripleStructure> {
    let defect = mc_defect(p);
    if !defect.is_zero() {
        return Err(Error::MaurerCartan(format!("[Q,Q] = {defect}")));
    }
    let space = DoubleSpace::new(p.space());
    let q = p.total();
    let max_len = q.terms().keys().map(Monomial::len).max().unwrap_or(0);
    let basis = space.basis();
    let mut t = TripleStructure::new(space.clone());
    for n in 1..max_len {
        for w in space.words(&basis, n) {
            let args: Vec<Element> = w.expanded().iter().map(|&g| space.vector(g)).collect();
            let value = nested(&q, &args)?.project_length(1);
            t.insert(&w.expanded(), &value)?;
        }
    }
    Ok(t)
}

fn gram_rank(space: &DoubleSpace) -> Result<usize> {
    let basis = space.basis();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for &a in &basis {
        let row = basis.iter().map(|&b| w_pairing(&space.vector(a), &space.vector(b))).collect::<Result<_>>()?;
        rows.push(row);
    }
    let n = basis.len();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, pivot);
        for r in 0..n {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &rows[rank][col];
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

fn isotropy(space: &DoubleSpace, half: Half, v: &mut Verdict) -> Result<()> {
    let base = space.base();
    for a in space.half_basis(half) {
        for b in space.half_basis(half) {
            let s = w_pairing(&space.vector(a), &space.vector(b))?;
            v.check(format!("isotropy:{half}:{},{}", base.atom(a), base.atom(b)), Element::scalar(base, s));
        }
    }
    Ok(())
}

/// `⟨λ_n(v_1…v_n), v_0⟩ = (-1)^{|v_n||v_0|} ⟨λ_n(v_1…v_{n-1} v_0), v_n⟩` on
/// every basis word, with `|·|` the total parity.
pub fn check_invariance(t: &TripleStructure) -> Result<Verdict> {
    let space = &t.space;
    let base = space.base();
    let basis = space.basis();
    let mut v = Verdict::new();
    for n in 1..=t.max_arity() {
        for prefix in space.words(&basis, n - 1) {
            let head = prefix.expanded();
            for &vn in &basis {
                for &v0 in &basis {
                    let mut args = head.clone();
                    args.push(vn);
                    let lhs = w_pairing(&t.eval(&args), &space.vector(v0))?;
                    args.pop();
                    args.push(v0);
                    let mut rhs = w_pairing(&t.eval(&args), &space.vector(vn))?;
                    if base.is_odd(vn) && base.is_odd(v0) {
                        rhs = -rhs;
                    }
                    let atoms: Vec<String> = head.iter().chain([&vn, &v0]).map(|&g| base.atom(g)).collect();
                    v.check(format!("invariance:{}", atoms.join(",")), Element::scalar(base, lhs - rhs));
                }
            }
        }
    }
    Ok(v)
}

/// `λ_n(∧ⁿ half) ⊆ half` for every `n`.
pub fn check_subalgebra(t: &TripleStructure, half: Half) -> Verdict {
    let space = &t.space;
    let base = space.base();
    let letters = space.half_basis(half);
    let mut v = Verdict::new();
    for n in 1..=t.max_arity() {
        for w in space.words(&letters, n) {
            let outside = t.eval(&w.expanded()).filter(|m| m.factors()[0].0.kind != half.kind());
            v.check(format!("subalgebra:{half}:{}", w.display(base)), outside);
        }
    }
    v
}

/// What a triple is asked to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleKind {
    /// both halves isotropic subalgebras
    Triple,
    /// `W₊` an isotropic subalgebra of half dimension
    Pair,
    /// a pair with `W₋` as marked isotropic complement
    QuasiTriple,
}

impl FromStr for TripleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triple" => Ok(Self::Triple),
            "pair" => Ok(Self::Pair),
            "quasi-triple" => Ok(Self::QuasiTriple),
            _ => Err(Error::UnknownKind(s.to_string())),
        }
    }
}

/// Word length up to which the square of the coderivation of `λ` is
/// determined: arities `a` and `b` compose to arity `a + b - 1`.
fn square_cap(t: &TripleStructure) -> usize {
    (2 * t.max_arity()).saturating_sub(1)
}

/// Checks the axioms of `kind` together with the L∞ condition on `W`.
pub fn verify_triple(t: &TripleStructure, kind: TripleKind) -> Result<Verdict> {
    let space = &t.space;
    let base = space.base();
    let mut v = Verdict::new();
    let rank = gram_rank(space)?;
    if rank != space.dim() {
        v.check("nondegenerate", Element::scalar(base, int((space.dim() - rank) as i64)));
    }
    isotropy(space, Half::Plus, &mut v)?;
    if kind != TripleKind::Pair {
        isotropy(space, Half::Minus, &mut v)?;
    }
    v.merge("", check_invariance(t)?);
    v.merge("", check_subalgebra(t, Half::Plus));
    if kind == TripleKind::Triple {
        v.merge("", check_subalgebra(t, Half::Minus));
    }
    let (plus, minus) = (space.half_basis(Half::Plus).len(), space.half_basis(Half::Minus).len());
    if plus + minus != space.dim() || plus != minus {
        v.check("splitting", Element::scalar(base, int((plus + minus) as i64 - space.dim() as i64)));
    }
    let basis = space.basis();
    for n in 1..=square_cap(t) {
        for w in space.words(&basis, n) {
            let word = Element::monomial(base, w.clone(), int(1));
            let sq = t.coder_apply(&t.coder_apply(&word));
            v.check(format!("linf:{}", w.display(base)), sq);
        }
    }
    Ok(v)
}

/// Recovers `Q` from the brackets of a verified (quasi-)triple: the
/// coefficient of a monomial `μ` with `m` letters is read off from
/// `⟨λ_{m-1}(a_1…a_{m-1}), a_m⟩` on the partners `a_i` of its letters.
pub fn package_from_triple(t: &TripleStructure) -> Result<StructurePackage> {
    let verdict = verify_triple(t, TripleKind::QuasiTriple)?;
    if let Some(label) = verdict.defects.keys().next() {
        return Err(Error::TripleInvalid(label.clone()));
    }
    let space = &t.space;
    let base = space.base();
    let basis = space.basis();
    let mut q = Element::zero(base);
    for m in 2..=t.max_arity() + 1 {
        for mu in space.words(&basis, m) {
            let partners: Vec<GeneratorRef> = mu.expanded().iter().map(|g| g.partner()).collect();
            let (head, last) = partners.split_at(m - 1);
            let target = w_pairing(&t.eval(head), &space.vector(last[0]))?;
            if target.is_zero() {
                continue;
            }
            let unit = Element::monomial(base, mu.clone(), int(1));
            let args: Vec<Element> = partners.iter().map(|&g| space.vector(g)).collect();
            let norm = nested(&unit, &args)?.scalar_part();
            q.add_term(mu, target / norm);
        }
    }
    let p = StructurePackage::from_element(&q);
    if double_from_package(&p)? != *t {
        return Err(Error::TripleInvalid("brackets do not come from a single element of B".into()));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v2() -> Arc<GradedSpace> {
        Arc::new(GradedSpace::new([("a", 0), ("b", 1)]).unwrap())
    }

    #[test]
    fn pairing_values() {
        let v = v2();
        let d = DoubleSpace::new(&v);
        let (e, es) = (d.vector(GeneratorRef::primal(0)), d.vector(GeneratorRef::dual(0)));
        assert_eq!(w_pairing(&es, &e).unwrap(), int(1));
        assert_eq!(w_pairing(&e, &d.vector(GeneratorRef::primal(1))).unwrap(), int(0));
        assert_eq!(w_pairing(&es, &d.vector(GeneratorRef::dual(1))).unwrap(), int(0));
        assert_eq!(gram_rank(&d).unwrap(), 4);
    }

    #[test]
    fn zero_structure_is_a_triple() {
        let v = v2();
        let t = double_from_package(&StructurePackage::new(&v)).unwrap();
        assert!(t.is_zero());
        for kind in [TripleKind::Triple, TripleKind::Pair, TripleKind::QuasiTriple] {
            assert!(verify_triple(&t, kind).unwrap().passed());
        }
        assert!(package_from_triple(&t).unwrap().is_empty());
    }

    #[test]
    fn insert_canonicalizes() {
        let v = Arc::new(GradedSpace::ungraded(&["x", "y"]).unwrap());
        let mut t = TripleStructure::new(DoubleSpace::new(&v));
        let (x, y) = (GeneratorRef::primal(0), GeneratorRef::primal(1));
        t.insert(&[y, x], &Element::primal(&v, 1)).unwrap();
        assert_eq!(t.eval(&[x, y]), -&Element::primal(&v, 1));
        assert!(t.insert(&[x, x], &Element::primal(&v, 0)).is_err());
    }
}
