//! Sign-canonical basis words of `B = ∧V* ⊗ ∧V`.

use crate::space::{GeneratorRef, GradedSpace, Kind};

/// A canonically ordered word: duals before primals, ascending index.
///
/// Factors of odd total degree appear at most once; even factors carry an
/// exponent.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    factors: Vec<(GeneratorRef, u32)>,
}

/// Result of reordering a word: `None` if it vanishes, otherwise the sign
/// (`true` = negative) and the canonical monomial.
pub type Signed = Option<(bool, Monomial)>;

impl Monomial {
    /// The empty word, spanning `B^-2`.
    pub fn one() -> Self {
        Self::default()
    }

    pub fn generator(g: GeneratorRef) -> Self {
        Self { factors: vec![(g, 1)] }
    }

    pub fn factors(&self) -> &[(GeneratorRef, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factors with repetitions spelled out.
    pub fn expanded(&self) -> Vec<GeneratorRef> {
        self.factors
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat(g).take(e as usize))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.factors.iter().map(|&(_, e)| e as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `(p, q)`: dual and primal multiplicities.
    pub fn bidegree(&self) -> (usize, usize) {
        let mut p = 0;
        let mut q = 0;
        for &(g, e) in &self.factors {
            match g.kind {
                Kind::Dual => p += e as usize,
                Kind::Primal => q += e as usize,
            }
        }
        (p, q)
    }

    pub fn exponent(&self, g: GeneratorRef) -> u32 {
        self.factors
            .binary_search_by(|(h, _)| h.cmp(&g))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn internal_degree(&self, space: &GradedSpace) -> i64 {
        self.factors.iter().map(|&(g, e)| space.internal_degree(g) * e as i64).sum()
    }

    pub fn external_degree(&self) -> i64 {
        self.len() as i64 - 2
    }

    pub fn total_degree(&self, space: &GradedSpace) -> i64 {
        self.internal_degree(space) + self.external_degree()
    }

    pub fn is_odd(&self, space: &GradedSpace) -> bool {
        self.total_degree(space).rem_euclid(2) == 1
    }

    pub fn is_primal(&self) -> bool {
        self.factors.iter().all(|(g, _)| g.kind == Kind::Primal)
    }

    /// Sorts a raw word into canonical order, accumulating the Koszul sign
    /// of every transposition of two odd factors.
    pub fn canonical(space: &GradedSpace, word: &[GeneratorRef]) -> Signed {
        let mut negative = false;
        for i in 0..word.len() {
            if !space.is_odd(word[i]) {
                continue;
            }
            for j in (i + 1)..word.len() {
                if space.is_odd(word[j]) {
                    if word[i] == word[j] {
                        return None;
                    }
                    if word[i] > word[j] {
                        negative = !negative;
                    }
                }
            }
        }
        let mut sorted = word.to_vec();
        sorted.sort();
        let mut factors: Vec<(GeneratorRef, u32)> = Vec::new();
        for g in sorted {
            match factors.last_mut() {
                Some((h, e)) if *h == g => *e += 1,
                _ => factors.push((g, 1)),
            }
        }
        Some((negative, Self { factors }))
    }

    /// `self ∧ other`, with the sign of shuffling `other`'s odd factors past
    /// the larger odd factors of `self`.
    pub fn multiply(&self, other: &Monomial, space: &GradedSpace) -> Signed {
        let mut negative = false;
        for &(b, _) in &other.factors {
            if !space.is_odd(b) {
                continue;
            }
            for &(a, _) in &self.factors {
                if !space.is_odd(a) {
                    continue;
                }
                if a == b {
                    return None;
                }
                if a > b {
                    negative = !negative;
                }
            }
        }
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() || j < other.factors.len() {
            match (self.factors.get(i), other.factors.get(j)) {
                (Some(&(a, ea)), Some(&(b, eb))) if a == b => {
                    factors.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
                (Some(&(a, ea)), Some(&(b, _))) if a < b => {
                    factors.push((a, ea));
                    i += 1;
                }
                (Some(_), Some(&(b, eb))) => {
                    factors.push((b, eb));
                    j += 1;
                }
                (Some(&f), None) => {
                    factors.push(f);
                    i += 1;
                }
                (None, Some(&f)) => {
                    factors.push(f);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Some((negative, Self { factors }))
    }

    /// Removes one copy of the factor at `pos` (index into `factors`).
    pub(crate) fn without(&self, pos: usize) -> Monomial {
        let mut factors = self.factors.clone();
        if factors[pos].1 > 1 {
            factors[pos].1 -= 1;
        } else {
            factors.remove(pos);
        }
        Self { factors }
    }

    /// Parity of the factors strictly before / after position `pos`.
    pub(crate) fn parity_before(&self, pos: usize, space: &GradedSpace) -> bool {
        self.factors[..pos]
            .iter()
            .filter(|(g, e)| space.is_odd(*g) && e % 2 == 1)
            .count()
            % 2
            == 1
    }

    pub(crate) fn parity_after(&self, pos: usize, space: &GradedSpace) -> bool {
        self.factors[pos + 1..]
            .iter()
            .filter(|(g, e)| space.is_odd(*g) && e % 2 == 1)
            .count()
            % 2
            == 1
    }

    pub fn display(&self, space: &GradedSpace) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.expanded().iter().map(|&g| space.atom(g)).collect::<Vec<_>>().join("^")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd3() -> GradedSpace {
        GradedSpace::ungraded(&["a", "b", "c"]).unwrap()
    }

    #[test]
    fn odd_square_vanishes() {
        let v = odd3();
        let e = GeneratorRef::primal(0);
        assert_eq!(Monomial::canonical(&v, &[e, e]), None);
    }

    #[test]
    fn even_factor_repeats() {
        let v = GradedSpace::new([("x", 1)]).unwrap();
        let x = GeneratorRef::primal(0);
        let (neg, m) = Monomial::canonical(&v, &[x, x]).unwrap();
        assert!(!neg);
        assert_eq!(m.factors(), &[(x, 2)]);
        assert_eq!(m.total_degree(&v), 2);
    }

    #[test]
    fn one_transposition_flips_sign() {
        let v = odd3();
        let (e, f) = (GeneratorRef::primal(0), GeneratorRef::primal(1));
        let (neg, m) = Monomial::canonical(&v, &[f, e]).unwrap();
        assert!(neg);
        assert_eq!(m.expanded(), vec![e, f]);
    }

    #[test]
    fn duals_sort_first() {
        let v = odd3();
        let word = [GeneratorRef::primal(2), GeneratorRef::dual(1), GeneratorRef::dual(0)];
        let (neg, m) = Monomial::canonical(&v, &word).unwrap();
        // c b' a' -> a' b' c: reversing three odd letters is 3 transpositions
        assert!(neg);
        assert_eq!(m.bidegree(), (2, 1));
        assert_eq!(m.total_degree(&v), 1);
    }

    #[test]
    fn multiply_agrees_with_canonical() {
        let v = GradedSpace::new([("a", 0), ("x", 1), ("b", 2)]).unwrap();
        let refs = v.all_refs();
        for &g1 in &refs {
            for &g2 in &refs {
                for &g3 in &refs {
                    let left = Monomial::canonical(&v, &[g1, g3]);
                    let right = Monomial::canonical(&v, &[g2]);
                    let whole = Monomial::canonical(&v, &[g1, g3, g2]);
                    let prod = match (left, right) {
                        (Some((s1, m1)), Some((s2, m2))) => {
                            m1.multiply(&m2, &v).map(|(s, m)| (s ^ s1 ^ s2, m))
                        }
                        _ => None,
                    };
                    assert_eq!(prod, whole);
                }
            }
        }
    }
}
