//! Unshuffles, coderivations and the iterated adjoint action.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bracket::{big_bracket, nested, subspace_membership, Subspace};
use crate::element::{Element, Grade};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::scalar::{ratio, sign_scalar};
use crate::space::{GeneratorRef, GradedSpace};
use crate::verdict::Verdict;

/// A `k`-unshuffle of `n` letters: `perm[..k]` and `perm[k..]` increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unshuffle {
    pub perm: Vec<usize>,
    /// `true` for an odd permutation.
    pub negative: bool,
}

/// All `C(n, k)` unshuffles, in lexicographic order of the first block.
pub fn unshuffles(n: usize, k: usize) -> Result<Vec<Unshuffle>> {
    if k > n {
        return Err(Error::BadUnshuffle { n, k });
    }
    Ok(subsets(n, k)
        .into_iter()
        .map(|front| {
            let rest: Vec<usize> = (0..n).filter(|i| !front.contains(i)).collect();
            // inversions: pairs (rest j, front i) with j < i
            let inversions: usize = front.iter().map(|&i| rest.iter().filter(|&&j| j < i).count()).sum();
            let mut perm = front;
            perm.extend(rest);
            Unshuffle { perm, negative: inversions % 2 == 1 }
        })
        .collect())
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Koszul sign of moving the letters at `front` (increasing) ahead of the
/// others; `true` = negative.
pub fn koszul_front(parities: &[bool], front: &[usize]) -> bool {
    let mut negative = false;
    for &i in front {
        if !parities[i] {
            continue;
        }
        for j in 0..i {
            if parities[j] && !front.contains(&j) {
                negative = !negative;
            }
        }
    }
    negative
}

fn product(space: &Arc<GradedSpace>, factors: &[&Element]) -> Element {
    let mut acc = Element::one(space);
    for f in factors {
        acc = acc.wedge_unchecked(f);
    }
    acc
}

fn arg_parities(args: &[Element]) -> Result<Vec<bool>> {
    args.iter()
        .enumerate()
        .map(|(i, a)| {
            if !a.is_primal() {
                return Err(Error::NonPrimalArgument(i));
            }
            match a.parity() {
                Some(p) => Ok(p),
                None if a.is_zero() => Ok(false),
                None => Err(Error::InhomogeneousArgument(i)),
            }
        })
        .collect()
}

/// The iterated adjoint action of `t` on `a_1 ∧ … ∧ a_n`.
///
/// Each part of `t` with `k` dual factors contributes the nested bracket
/// `[[..[t, a_1]..], a_n]` when `k >= n`, and otherwise the Koszul-signed
/// sum over `k`-unshuffles of the nested bracket against the first block
/// wedged with the remaining arguments.
pub fn iad_apply(t: &Element, args: &[Element]) -> Result<Element> {
    for a in args {
        t.check_space(a)?;
    }
    let parities = arg_parities(args)?;
    let space = t.space();
    let n = args.len();
    let mut by_k: BTreeMap<usize, Element> = BTreeMap::new();
    for (m, c) in t.terms() {
        by_k.entry(m.bidegree().0).or_insert_with(|| Element::zero(space)).add_term(m.clone(), c.clone());
    }
    let mut out = Element::zero(space);
    for (k, part) in by_k {
        if k >= n {
            out.add_assign(&nested(&part, args)?);
            continue;
        }
        for front in subsets(n, k) {
            let chosen: Vec<Element> = front.iter().map(|&i| args[i].clone()).collect();
            let head = nested(&part, &chosen)?;
            if head.is_zero() {
                continue;
            }
            let rest: Vec<&Element> = (0..n).filter(|i| !front.contains(i)).map(|i| &args[i]).collect();
            let mut term = head.wedge_unchecked(&product(space, &rest));
            if koszul_front(&parities, &front) {
                term = -&term;
            }
            out.add_assign(&term);
        }
    }
    Ok(out)
}

/// Canonical primal words of exactly `len` letters.
pub fn words_of_length(space: &GradedSpace, gens: &[GeneratorRef], len: usize) -> Vec<Monomial> {
    fn go(
        space: &GradedSpace,
        gens: &[GeneratorRef],
        start: usize,
        left: usize,
        cur: &mut Vec<GeneratorRef>,
        out: &mut Vec<Monomial>,
    ) {
        if left == 0 {
            if let Some((_, m)) = Monomial::canonical(space, cur) {
                out.push(m);
            }
            return;
        }
        for i in start..gens.len() {
            let g = gens[i];
            cur.push(g);
            let next = if space.is_odd(g) { i + 1 } else { i };
            go(space, gens, next, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut sorted = gens.to_vec();
    sorted.sort();
    let mut out = Vec::new();
    go(space, &sorted, 0, len, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

/// Basis words of `∧^1 V ⊕ … ⊕ ∧^max_len V`.
pub fn primal_words(space: &GradedSpace, max_len: usize) -> Vec<Monomial> {
    let gens: Vec<GeneratorRef> = (0..space.dim()).map(GeneratorRef::primal).collect();
    (1..=max_len).flat_map(|n| words_of_length(space, &gens, n)).collect()
}

fn word_args(space: &Arc<GradedSpace>, word: &[GeneratorRef]) -> Vec<Element> {
    word.iter().map(|&g| Element::generator(space, g)).collect()
}

/// An alternating multilinear map `∧^k V → ∧V` stored on canonical words.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiMap {
    space: Arc<GradedSpace>,
    arity: usize,
    table: BTreeMap<Monomial, Element>,
}

impl MultiMap {
    pub fn new(space: &Arc<GradedSpace>, arity: usize) -> Self {
        Self { space: space.clone(), arity, table: BTreeMap::new() }
    }

    /// Tabulates `iad_t` on every basis word of `∧^arity V`.
    pub fn from_tensor(t: &Element, arity: usize, max_repeat_len: Option<usize>) -> Result<Self> {
        let space = t.space().clone();
        let _ = max_repeat_len;
        let gens: Vec<GeneratorRef> = (0..space.dim()).map(GeneratorRef::primal).collect();
        let mut out = Self::new(&space, arity);
        for w in words_of_length(&space, &gens, arity) {
            let v = iad_apply(t, &word_args(&space, &w.expanded()))?;
            out.insert(w, v);
        }
        Ok(out)
    }

    pub fn insert(&mut self, word: Monomial, value: Element) {
        if !value.is_zero() {
            self.table.insert(word, value);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &BTreeMap<Monomial, Element> {
        &self.table
    }

    /// Value on an arbitrary ordered argument list.
    pub fn eval(&self, args: &[GeneratorRef]) -> Element {
        match Monomial::canonical(&self.space, args) {
            Some((neg, m)) => match self.table.get(&m) {
                Some(v) if neg => -v,
                Some(v) => v.clone(),
                None => Element::zero(&self.space),
            },
            None => Element::zero(&self.space),
        }
    }

    /// `td(output) - td(inputs)` corrected by the external degree, when the
    /// same for every entry.
    pub fn degree(&self) -> Grade<i64> {
        let mut out = Grade::Any;
        for (w, v) in &self.table {
            for m in v.terms().keys() {
                let d = m.internal_degree(&self.space) - w.internal_degree(&self.space) + w.len() as i64
                    + m.len() as i64
                    - 2;
                out = match out {
                    Grade::Any => Grade::Exactly(d),
                    Grade::Exactly(e) if e == d => out,
                    _ => return Grade::Mixed,
                };
            }
        }
        out
    }
}

/// Extends `lambda` to a basis word of `∧^n V` as a coderivation of the
/// unshuffle coproduct; zero when the arity exceeds `n`.
pub fn coder_extend(lambda: &MultiMap, word: &Monomial) -> Element {
    let space = &lambda.space;
    let letters = word.expanded();
    let n = letters.len();
    let k = lambda.arity;
    let mut out = Element::zero(space);
    if k > n {
        return out;
    }
    let parities: Vec<bool> = letters.iter().map(|&g| space.is_odd(g)).collect();
    for front in subsets(n, k) {
        let chosen: Vec<GeneratorRef> = front.iter().map(|&i| letters[i]).collect();
        let head = lambda.eval(&chosen);
        if head.is_zero() {
            continue;
        }
        let rest: Vec<GeneratorRef> = (0..n).filter(|i| !front.contains(i)).map(|i| letters[i]).collect();
        let Some((neg, m)) = Monomial::canonical(space, &rest) else { continue };
        let tail = Element::monomial(space, m, sign_scalar(neg ^ koszul_front(&parities, &front)));
        out.add_assign(&head.wedge_unchecked(&tail));
    }
    out
}

/// A linear endomorphism of (a finite piece of) `∧V`, stored on basis words.
#[derive(Debug, Clone, PartialEq)]
pub struct EndoTable {
    space: Arc<GradedSpace>,
    entries: BTreeMap<Monomial, Element>,
}

impl EndoTable {
    pub fn new(space: &Arc<GradedSpace>) -> Self {
        Self { space: space.clone(), entries: BTreeMap::new() }
    }

    /// Records the image of `word` (zero images are kept as domain markers).
    pub fn insert(&mut self, word: Monomial, image: Element) {
        self.entries.insert(word, image);
    }

    pub fn entries(&self) -> &BTreeMap<Monomial, Element> {
        &self.entries
    }

    pub fn get(&self, word: &Monomial) -> Option<&Element> {
        self.entries.get(word)
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        let mut out = Element::zero(&self.space);
        for (m, c) in x.terms() {
            let image = self.entries.get(m).ok_or_else(|| Error::NotClosed(m.display(&self.space)))?;
            out.add_scaled(image, c);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(Element::is_zero)
    }

    /// Words with a nonzero image.
    pub fn support(&self) -> impl Iterator<Item = (&Monomial, &Element)> {
        self.entries.iter().filter(|(_, v)| !v.is_zero())
    }
}

/// `op ∘ op` on the domain of `op`.
pub fn operator_square(op: &EndoTable) -> Result<EndoTable> {
    let mut out = EndoTable::new(&op.space);
    for (w, image) in &op.entries {
        out.insert(w.clone(), op.apply(image)?);
    }
    Ok(out)
}

fn require_lie_type(l: &Element) -> Result<()> {
    if !subspace_membership(l).contains(&Subspace::L) {
        return Err(Error::NotInSubspace("expected an element of L = ∧V*⊗V".into()));
    }
    if !l.project_bidegree(0, 1).is_zero() {
        return Err(Error::NotInSubspace("a V-component (weak term) is not allowed".into()));
    }
    Ok(())
}

/// The coderivation `λ = Σ_k coder(iad l_k)` on all words of length at most
/// `cap`.
pub fn lambda_operator(l: &Element, cap: usize) -> Result<EndoTable> {
    require_lie_type(l)?;
    let space = l.space();
    let maps: Vec<MultiMap> = l
        .by_bidegree()
        .into_iter()
        .filter(|((k, _), _)| *k <= cap)
        .map(|((k, _), part)| MultiMap::from_tensor(&part, k, None))
        .collect::<Result<_>>()?;
    let mut out = EndoTable::new(space);
    for w in primal_words(space, cap) {
        let mut image = Element::zero(space);
        for m in &maps {
            image.add_assign(&coder_extend(m, &w));
        }
        out.insert(w, image);
    }
    Ok(out)
}

/// The largest dual count among the monomials of `x`.
pub fn max_dual_count(x: &Element) -> usize {
    x.terms().keys().map(|m| m.bidegree().0).max().unwrap_or(0)
}

/// Word length up to which `λ²` is determined: `[L, L]` has at most
/// `2k - 1` duals when `L` has at most `k`.
pub fn lambda_square_cap(l: &Element) -> usize {
    (2 * max_dual_count(l)).saturating_sub(1).max(1)
}

/// Result of a computation whose precondition may have failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Checked<T> {
    pub value: T,
    pub precondition_holds: bool,
}

/// `{a, b} = [[Q, a], b]` projected to `B^-1`.
pub fn derived_bracket(q: &Element, a: &Element, b: &Element) -> Result<Checked<Element>> {
    q.check_space(a)?;
    q.check_space(b)?;
    let qq = big_bracket(q, q)?;
    let value = nested(q, &[a.clone(), b.clone()])?.project_length(1);
    Ok(Checked { value, precondition_holds: qq.is_zero() })
}

/// The degree `+1` derived bracket `[[Q, a], b]` on all of `B`.
pub fn derived_bracket_full(q: &Element, a: &Element, b: &Element) -> Result<Element> {
    nested(q, &[a.clone(), b.clone()])
}

fn phi(space: &Arc<GradedSpace>, parts: &BTreeMap<usize, Element>, args: &[Element]) -> Result<Element> {
    match parts.get(&(args.len() + 1)) {
        Some(l) => nested(l, args),
        None => Ok(Element::zero(space)),
    }
}

/// Checks that `φ_m = iad(l_{m+1}) : ∧^m V → V*⊗V` (with `φ_0 = l_1`) is an
/// L∞-morphism into `(V*⊗V, [ , ])`: on every word `v_1…v_n`,
///
/// ```text
/// Σ_k φ(λ_k(v_1…v_n)) + ½ Σ_S ε(S) (-1)^{|v_S|} [φ(v_S), φ(v_S^c)] = 0
/// ```
///
/// where `S` runs over subsets of the positions, `ε(S)` is the Koszul sign
/// of moving `v_S` to the front and `|v_S|` the parity of `v_S`.
pub fn check_linf_morphism(l: &Element, max_len: Option<usize>) -> Result<Verdict> {
    require_lie_type(l)?;
    let space = l.space().clone();
    let mut verdict = Verdict::new();
    let qq = big_bracket(l, l)?;
    if !qq.is_zero() {
        verdict.check("precondition:[L,L]", qq);
    }
    let parts: BTreeMap<usize, Element> = l.by_bidegree().into_iter().map(|((k, _), e)| (k, e)).collect();
    let maps: Vec<MultiMap> =
        parts.iter().map(|(&k, part)| MultiMap::from_tensor(part, k, None)).collect::<Result<_>>()?;
    let cap = max_len.unwrap_or_else(|| lambda_square_cap(l).max(space.dim()).max(2));
    let half = ratio(1, 2);
    for w in primal_words(&space, cap) {
        let letters = w.expanded();
        let n = letters.len();
        let parities: Vec<bool> = letters.iter().map(|&g| space.is_odd(g)).collect();
        // left: φ after the coderivation
        let mut lhs = Element::zero(&space);
        for m in &maps {
            let image = coder_extend(m, &w);
            for (u, c) in image.terms() {
                let v = phi(&space, &parts, &word_args(&space, &u.expanded()))?;
                lhs.add_scaled(&v, c);
            }
        }
        // convolution bracket of φ with itself
        let mut rhs = Element::zero(&space);
        for k in 0..=n {
            for front in subsets(n, k) {
                let a: Vec<GeneratorRef> = front.iter().map(|&i| letters[i]).collect();
                let b: Vec<GeneratorRef> = (0..n).filter(|i| !front.contains(i)).map(|i| letters[i]).collect();
                let x = phi(&space, &parts, &word_args(&space, &a))?;
                let y = phi(&space, &parts, &word_args(&space, &b))?;
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                let odd_front = front.iter().filter(|&&i| parities[i]).count() % 2 == 1;
                let negative = koszul_front(&parities, &front) ^ odd_front;
                let term = big_bracket(&x, &y)?;
                rhs.add_scaled(&term, &(&half * sign_scalar(negative)));
            }
        }
        verdict.check(format!("morphism(n={n}, {})", w.display(&space)), &lhs + &rhs);
    }
    if verdict.passed() {
        verdict.note(format!("checked on all words of length <= {cap}"));
    }
    Ok(verdict)
}
