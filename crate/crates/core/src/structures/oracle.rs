//! Brute-force axiom checks that work from structure-constant tables alone.
//!
//! Generators of `V` carry the shifted parity used throughout (odd iff the
//! internal degree is even). With `p` that parity:
//!
//! - Jacobi: `Σ ε {{v_a, v_b}, v_c} = 0` over the three 2-unshuffles, `ε`
//!   the Koszul sign of the reordering;
//! - coJacobi: `δ(δ(x)) = 0`, `δ` extended to `∧V` as an odd derivation;
//! - cocycle: `δ{x,y} + (-1)^{p_x} D_x δ(y) + (-1)^{(1+p_x) p_y} D_y δ(x) = 0`,
//!   where `D_x` extends `{x, -}` as a derivation of parity `1 + p_x`;
//! - modified coJacobi: `δ(δ(x)) + (-1)^{p_x} D_x φ = 0`;
//! - φ closed: `δ(φ) = 0`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::int;
use crate::space::{GeneratorRef, GradedSpace};
use crate::verdict::Verdict;

use super::{StructureKind, StructurePackage};

/// Bracket, cobracket and φ of a strict structure as plain tables.
#[derive(Debug, Clone, PartialEq)]
pub struct StrictConstants {
    space: Arc<GradedSpace>,
    bracket: BTreeMap<(usize, usize), Element>,
    cobracket: BTreeMap<usize, Element>,
    phi: Element,
}

impl StrictConstants {
    /// Bracket values on listed pairs are extended by graded antisymmetry.
    pub fn new(
        space: &Arc<GradedSpace>,
        bracket: &BTreeMap<(usize, usize), Element>,
        cobracket: &BTreeMap<usize, Element>,
        phi: &Element,
    ) -> Result<Self> {
        let mut full = BTreeMap::new();
        for (&(a, b), x) in bracket {
            if a >= space.dim() || b >= space.dim() {
                return Err(Error::IndexOutOfRange(a.max(b)));
            }
            let swapped = if odd(space, a) && odd(space, b) { -x } else { x.clone() };
            for (key, val) in [((a, b), x.clone()), ((b, a), swapped)] {
                if let Some(prev) = full.get(&key) {
                    if *prev != val {
                        return Err(Error::NotAlternating(format!(
                            "pair ({}, {})",
                            space.name(key.0),
                            space.name(key.1)
                        )));
                    }
                }
                full.insert(key, val);
            }
        }
        full.retain(|_, v: &mut Element| !v.is_zero());
        let cobracket = cobracket.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (*k, v.clone())).collect();
        Ok(Self { space: space.clone(), bracket: full, cobracket, phi: phi.clone() })
    }

    /// Reads the tables off the `(2,1)`, `(1,2)` and `(0,3)` components.
    pub fn from_package(p: &StructurePackage) -> Result<Self> {
        let space = p.space();
        let (l, c) = (p.bracket_part(), p.cobracket_part());
        let mut bracket = BTreeMap::new();
        let mut cobracket = BTreeMap::new();
        for a in 0..space.dim() {
            let ea = Element::primal(space, a);
            cobracket.insert(a, crate::bracket::big_bracket(&c, &ea)?);
            for b in 0..space.dim() {
                let v = crate::bracket::nested(&l, &[ea.clone(), Element::primal(space, b)])?;
                bracket.insert((a, b), v);
            }
        }
        Self::new(space, &bracket, &cobracket, &p.phi_part())
    }

    /// The coboundary cobracket `δ(x) = D_x(r)` of `r ∈ ∧²V`.
    pub fn with_coboundary(mut self, r: &Element) -> Self {
        self.cobracket.clear();
        for a in 0..self.space.dim() {
            let d = self.ad(a, r);
            if !d.is_zero() {
                self.cobracket.insert(a, d);
            }
        }
        self
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn bracket_table(&self) -> &BTreeMap<(usize, usize), Element> {
        &self.bracket
    }

    pub fn cobracket_table(&self) -> &BTreeMap<usize, Element> {
        &self.cobracket
    }

    pub fn phi(&self) -> &Element {
        &self.phi
    }

    fn zero(&self) -> Element {
        Element::zero(&self.space)
    }

    fn lam_gen(&self, a: usize, b: usize) -> Element {
        self.bracket.get(&(a, b)).cloned().unwrap_or_else(|| self.zero())
    }

    /// `{x, y}` for elements of `V`.
    pub fn lam(&self, x: &Element, y: &Element) -> Element {
        let mut out = self.zero();
        for (m, c) in x.terms() {
            for (n, d) in y.terms() {
                let (g, h) = (m.expanded()[0], n.expanded()[0]);
                out.add_scaled(&self.lam_gen(g.index, h.index), &(c * d));
            }
        }
        out
    }

    fn delta_gen(&self, a: usize) -> Element {
        self.cobracket.get(&a).cloned().unwrap_or_else(|| self.zero())
    }

    /// `δ` extended to `∧V` as an odd derivation.
    pub fn delta(&self, x: &Element) -> Element {
        derivation(&self.space, x, true, |g| self.delta_gen(g.index))
    }

    /// `{e_a, -}` extended to `∧V` as a derivation of parity `1 + p_a`.
    pub fn ad(&self, a: usize, x: &Element) -> Element {
        derivation(&self.space, x, !odd(&self.space, a), |g| self.lam_gen(a, g.index))
    }

    fn jacobi(&self, x: usize, y: usize, z: usize) -> Element {
        let args = [x, y, z];
        let par: Vec<bool> = args.iter().map(|&i| odd(&self.space, i)).collect();
        let mut out = self.zero();
        // (ab|c) with the Koszul sign of moving c past the letters after it
        for (a, b, c) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let negative = par[c] && ((c < a && par[a]) ^ (c < b && par[b]));
            let inner = self.lam_gen(args[a], args[b]);
            let v = self.lam(&inner, &Element::primal(&self.space, args[c]));
            out.add_scaled(&v, &int(if negative { -1 } else { 1 }));
        }
        out
    }

    fn cojacobi(&self, x: usize) -> Element {
        self.delta(&self.delta_gen(x))
    }

    fn cocycle(&self, x: usize, y: usize) -> Element {
        let (px, py) = (odd(&self.space, x), odd(&self.space, y));
        let mut out = self.delta(&self.lam_gen(x, y));
        out.add_scaled(&self.ad(x, &self.delta_gen(y)), &int(if px { -1 } else { 1 }));
        out.add_scaled(&self.ad(y, &self.delta_gen(x)), &int(if !px && py { -1 } else { 1 }));
        out
    }

    fn modified_cojacobi(&self, x: usize) -> Element {
        let mut out = self.cojacobi(x);
        out.add_scaled(&self.ad(x, &self.phi), &int(if odd(&self.space, x) { -1 } else { 1 }));
        out
    }
}

fn odd(space: &GradedSpace, a: usize) -> bool {
    space.is_odd(GeneratorRef::primal(a))
}

/// Extends `f` on generators to a derivation of the given parity on `∧V`.
fn derivation(
    space: &Arc<GradedSpace>,
    x: &Element,
    odd_map: bool,
    f: impl Fn(GeneratorRef) -> Element,
) -> Element {
    let mut out = Element::zero(space);
    for (m, c) in x.terms() {
        let letters = m.expanded();
        let mut before_odd = false;
        for (i, &g) in letters.iter().enumerate() {
            let image = f(g);
            if !image.is_zero() {
                let pre = Element::canonicalize(space, &letters[..i], int(1)).expect("valid letters");
                let post = Element::canonicalize(space, &letters[i + 1..], int(1)).expect("valid letters");
                let term = pre.wedge_unchecked(&image).wedge_unchecked(&post);
                let sign = if odd_map && before_odd { -c.clone() } else { c.clone() };
                out.add_scaled(&term, &sign);
            }
            before_odd ^= space.is_odd(g);
        }
    }
    out
}

/// Evaluates the axioms of a strict structure of type `kind` on every
/// tuple of basis vectors.
pub fn oracle_axioms(kind: StructureKind, k: &StrictConstants) -> Result<Verdict> {
    if !kind.is_strict() {
        return Err(Error::UnknownKind(format!("{kind} has no brute-force oracle")));
    }
    let n = k.space.dim();
    let name = |i: usize| k.space.name(i).to_string();
    let mut v = Verdict::new();
    let with_bracket = kind != StructureKind::CoLie;
    let with_cobracket = kind != StructureKind::Lie;
    if with_bracket {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    v.check(format!("jacobi:{},{},{}", name(x), name(y), name(z)), k.jacobi(x, y, z));
                }
            }
        }
    }
    if with_cobracket {
        for x in 0..n {
            match kind {
                StructureKind::Quasi => v.check(format!("modified-cojacobi:{}", name(x)), k.modified_cojacobi(x)),
                _ => v.check(format!("cojacobi:{}", name(x)), k.cojacobi(x)),
            }
        }
    }
    if with_bracket && with_cobracket {
        for x in 0..n {
            for y in 0..n {
                v.check(format!("cocycle:{},{}", name(x), name(y)), k.cocycle(x, y));
            }
        }
    }
    if kind == StructureKind::Quasi {
        v.check("phi-closed", k.delta(&k.phi));
    }
    Ok(v)
}
