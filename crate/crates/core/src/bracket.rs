//! The big bracket on `B`.
//!
//! On generators `[e*_a, e_b] = δ_ab`, extended to monomials by the graded
//! Leibniz rule. For monomials `u`, `v` the bracket is the sum over every
//! contracted pair (factor `g` of `u`, partner `g*` of `v`) of
//!
//! ```text
//! ω(g, g*) · (u ∂/∂g from the right) ∧ (∂/∂g* v from the left)
//! ```
//!
//! with `ω(e*, e) = 1` and `ω(e, e*) = -(-1)^|e|` fixed by graded
//! antisymmetry.

use std::collections::BTreeSet;
use std::fmt;

use crate::element::Element;
use crate::error::Result;
use crate::monomial::Monomial;
use crate::scalar::{int, Scalar};
use crate::space::{GeneratorRef, GradedSpace, Kind};

/// `[g, partner(g)]` as a sign.
pub fn pairing_sign(space: &GradedSpace, g: GeneratorRef) -> i64 {
    match g.kind {
        Kind::Dual => 1,
        Kind::Primal if space.is_odd(g) => 1,
        Kind::Primal => -1,
    }
}

fn bracket_monomials(space: &GradedSpace, u: &Monomial, v: &Monomial, out: &mut Vec<(Monomial, i64)>) {
    for (pos_u, &(g, eu)) in u.factors().iter().enumerate() {
        let h = g.partner();
        let Ok(pos_v) = v.factors().binary_search_by(|(x, _)| x.cmp(&h)) else {
            continue;
        };
        let ev = v.factors()[pos_v].1;
        let odd = space.is_odd(g);
        let mut negative = pairing_sign(space, g) < 0;
        if odd {
            negative ^= u.parity_after(pos_u, space);
            negative ^= v.parity_before(pos_v, space);
        }
        let rest_u = u.without(pos_u);
        let rest_v = v.without(pos_v);
        if let Some((neg, m)) = rest_u.multiply(&rest_v, space) {
            let c = eu as i64 * ev as i64;
            out.push((m, if negative ^ neg { -c } else { c }));
        }
    }
}

/// `[u, v]`.
pub fn big_bracket(u: &Element, v: &Element) -> Result<Element> {
    u.check_space(v)?;
    Ok(bracket_unchecked(u, v))
}

pub(crate) fn bracket_unchecked(u: &Element, v: &Element) -> Element {
    let space = u.space();
    let mut out = Element::zero(space);
    let mut buf = Vec::new();
    for (a, ca) in u.terms() {
        for (b, cb) in v.terms() {
            buf.clear();
            bracket_monomials(space, a, b, &mut buf);
            if buf.is_empty() {
                continue;
            }
            let c = ca * cb;
            for (m, k) in buf.drain(..) {
                out.add_term(m, &c * int(k));
            }
        }
    }
    out
}

/// `ad_q(v) = [q, v]`.
pub fn adjoint(q: &Element, v: &Element) -> Result<Element> {
    big_bracket(q, v)
}

/// `[[..[t, a_1], ..], a_n]`.
pub fn nested(t: &Element, args: &[Element]) -> Result<Element> {
    let mut acc = t.clone();
    for a in args {
        if acc.is_zero() {
            break;
        }
        acc = big_bracket(&acc, a)?;
    }
    Ok(acc)
}

/// The bracket-closed subspaces of `B` that govern the four structure types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subspace {
    /// one primal factor per monomial
    L,
    /// one dual factor per monomial
    C,
    /// at least one dual and one primal factor
    B,
    /// at least one primal factor
    QB,
}

impl Subspace {
    pub fn contains_bidegree(self, (p, q): (usize, usize)) -> bool {
        match self {
            Subspace::L => q == 1,
            Subspace::C => p == 1,
            Subspace::B => p >= 1 && q >= 1,
            Subspace::QB => q >= 1,
        }
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Subspace::L => "L",
            Subspace::C => "C",
            Subspace::B => "B",
            Subspace::QB => "QB",
        };
        f.write_str(s)
    }
}

pub fn subspace_membership(a: &Element) -> BTreeSet<Subspace> {
    let bidegrees = a.bidegrees();
    [Subspace::L, Subspace::C, Subspace::B, Subspace::QB]
        .into_iter()
        .filter(|s| bidegrees.iter().all(|&bd| s.contains_bidegree(bd)))
        .collect()
}

/// `⟨a, b⟩` on `B^-1`, read off as the scalar `[a, b]`.
pub fn pairing(a: &Element, b: &Element) -> Result<Scalar> {
    Ok(big_bracket(a, b)?.project_length(0).scalar_part())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn v3() -> Arc<GradedSpace> {
        Arc::new(GradedSpace::ungraded(&["e1", "e2", "e3"]).unwrap())
    }

    #[test]
    fn dual_pairs_to_one() {
        let v = v3();
        assert_eq!(big_bracket(&Element::dual(&v, 0), &Element::primal(&v, 0)).unwrap(), Element::one(&v));
        assert!(big_bracket(&Element::primal(&v, 0), &Element::primal(&v, 1)).unwrap().is_zero());
        assert!(big_bracket(&Element::dual(&v, 0), &Element::primal(&v, 1)).unwrap().is_zero());
    }

    #[test]
    fn graded_pairing_signs() {
        let v = Arc::new(GradedSpace::new([("x", 1), ("y", 2)]).unwrap());
        // even generator: [x, x*] = -[x*, x]
        assert_eq!(big_bracket(&Element::primal(&v, 0), &Element::dual(&v, 0)).unwrap(), -&Element::one(&v));
        assert_eq!(big_bracket(&Element::primal(&v, 1), &Element::dual(&v, 1)).unwrap(), Element::one(&v));
    }

    #[test]
    fn leibniz_forced_value() {
        // [e1* e2, e1] = -e2 (the dual must be moved past e2 first)
        let v = v3();
        let t = Element::dual(&v, 0).wedge(&Element::primal(&v, 1)).unwrap();
        let r = big_bracket(&t, &Element::primal(&v, 0)).unwrap();
        assert_eq!(r, -&Element::primal(&v, 1));
    }

    #[test]
    fn scalars_are_central() {
        let v = v3();
        let t = Element::dual(&v, 0).wedge(&Element::primal(&v, 0)).unwrap();
        assert!(big_bracket(&t, &Element::one(&v)).unwrap().is_zero());
        assert!(adjoint(&Element::zero(&v), &t).unwrap().is_zero());
    }

    #[test]
    fn membership_examples() {
        let v = v3();
        let w = |word: &[GeneratorRef]| Element::canonicalize(&v, word, int(1)).unwrap();
        let (d, p) = (GeneratorRef::dual, GeneratorRef::primal);
        use Subspace::*;
        assert_eq!(subspace_membership(&w(&[d(0), d(1), p(2)])), [L, B, QB].into());
        assert_eq!(subspace_membership(&w(&[p(0), p(1), p(2)])), [QB].into());
        assert_eq!(subspace_membership(&w(&[d(0), p(1), p(2)])), [C, B, QB].into());
        assert_eq!(subspace_membership(&Element::zero(&v)).len(), 4);
    }
}
