//! Seeded random spaces and elements for property checks and the CLI.

use std::sync::Arc;

use rand::Rng;

use crate::element::Element;
use crate::monomial::Monomial;
use crate::scalar::{ratio, Scalar};
use crate::space::{GeneratorRef, GradedSpace};

pub fn random_space<R: Rng>(rng: &mut R, max_dim: usize, degrees: std::ops::RangeInclusive<i64>) -> Arc<GradedSpace> {
    let dim = rng.gen_range(1..=max_dim);
    let gens: Vec<(String, i64)> = (0..dim).map(|i| (format!("g{i}"), rng.gen_range(degrees.clone()))).collect();
    Arc::new(GradedSpace::new(gens).expect("generated names are valid"))
}

/// A nonzero rational with small numerator and denominator.
pub fn random_coefficient<R: Rng>(rng: &mut R) -> Scalar {
    let n = loop {
        let n = rng.gen_range(-3i64..=3);
        if n != 0 {
            break n;
        }
    };
    ratio(n, rng.gen_range(1..=2))
}

/// A random nonvanishing word with `p` duals and `q` primals.
pub fn random_monomial<R: Rng>(rng: &mut R, space: &GradedSpace, p: usize, q: usize) -> Option<Monomial> {
    let n = space.dim();
    for _ in 0..32 {
        let mut word: Vec<GeneratorRef> = Vec::with_capacity(p + q);
        word.extend((0..p).map(|_| GeneratorRef::dual(rng.gen_range(0..n))));
        word.extend((0..q).map(|_| GeneratorRef::primal(rng.gen_range(0..n))));
        if let Some((_, m)) = Monomial::canonical(space, &word) {
            return Some(m);
        }
    }
    None
}

/// A nonzero element homogeneous in bidegree and in total degree, with at
/// most `max_factors` factors per monomial.
pub fn random_homogeneous<R: Rng>(rng: &mut R, space: &Arc<GradedSpace>, max_factors: usize, max_terms: usize) -> Element {
    loop {
        let len = rng.gen_range(0..=max_factors);
        let p = rng.gen_range(0..=len);
        let q = len - p;
        let Some(first) = random_monomial(rng, space, p, q) else { continue };
        let td = first.total_degree(space);
        let mut out = Element::monomial(space, first, random_coefficient(rng));
        let extra = rng.gen_range(0..max_terms.max(1));
        for _ in 0..extra * 4 {
            if out.len() > extra {
                break;
            }
            if let Some(m) = random_monomial(rng, space, p, q) {
                if m.total_degree(space) == td {
                    out.add_term(m, random_coefficient(rng));
                }
            }
        }
        if !out.is_zero() {
            return out;
        }
    }
}

/// A sum of up to `max_terms` random monomials whose bidegree is drawn from
/// `bidegrees` and whose total degree is `td`. May be zero if no monomial
/// of that shape exists.
pub fn random_with_total_degree<R: Rng>(
    rng: &mut R,
    space: &Arc<GradedSpace>,
    bidegrees: &[(usize, usize)],
    td: i64,
    max_terms: usize,
) -> Element {
    let mut out = Element::zero(space);
    let target = rng.gen_range(1..=max_terms.max(1));
    for _ in 0..64 * target {
        if out.len() >= target {
            break;
        }
        let (p, q) = bidegrees[rng.gen_range(0..bidegrees.len())];
        if let Some(m) = random_monomial(rng, space, p, q) {
            if m.total_degree(space) == td {
                out.add_term(m, random_coefficient(rng));
            }
        }
    }
    out
}
