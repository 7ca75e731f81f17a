mod common;

use std::collections::BTreeMap;

use bigbracket::manin::{
    check_invariance, check_subalgebra, double_from_package, package_from_triple, verify_triple, Half, TripleKind,
};
use bigbracket::random::{random_space, random_with_total_degree};
use bigbracket::structures::{mc_defect, verify, StructureKind, StructurePackage};
use bigbracket::{Element, GeneratorRef};
use common::{package_of, random_strict, sl2, sl2_bracket};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sl2_bialgebra() -> StructurePackage {
    let v = sl2();
    let r = Element::canonicalize(&v, &[GeneratorRef::primal(1), GeneratorRef::primal(2)], bigbracket::scalar::int(1))
        .unwrap();
    let k = bigbracket::structures::StrictConstants::new(&v, &sl2_bracket(&v), &BTreeMap::new(), &Element::zero(&v))
        .unwrap()
        .with_coboundary(&r);
    package_of(&k)
}

#[test]
fn sl2_double_round_trip() {
    let p = sl2_bialgebra();
    let t = double_from_package(&p).unwrap();
    assert_eq!(t.max_arity(), 2);
    assert!(verify_triple(&t, TripleKind::Triple).unwrap().passed());
    assert_eq!(package_from_triple(&t).unwrap(), p);
    // λ₂ on V×V is the original bracket
    let v = p.space();
    let (h, e) = (GeneratorRef::primal(0), GeneratorRef::primal(1));
    assert_eq!(t.eval(&[h, e]), Element::primal(v, 1).scale(&bigbracket::scalar::int(2)));
}

#[test]
fn double_of_strict_ungraded_bialgebra_is_a_lie_algebra() {
    let t = double_from_package(&sl2_bialgebra()).unwrap();
    let basis = t.space().basis();
    for &a in &basis {
        for &b in &basis {
            for &c in &basis {
                let lam = |x: &Element, y: GeneratorRef| -> Element {
                    let mut out = Element::zero(t.base());
                    for (m, k) in x.terms() {
                        out.add_scaled(&t.eval(&[m.expanded()[0], y]), k);
                    }
                    out
                };
                let j = &(&lam(&t.eval(&[a, b]), c) + &lam(&t.eval(&[b, c]), a)) + &lam(&t.eval(&[c, a]), b);
                assert!(j.is_zero());
            }
        }
    }
}

/// Verified strict and homotopy bialgebra packages over spaces of dim <= 3.
fn verified_packages(seed: u64, wanted: usize) -> Vec<StructurePackage> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..50_000 {
        if out.len() >= wanted {
            break;
        }
        let space = random_space(&mut rng, 3, -1..=1);
        let p = if i % 2 == 0 {
            package_of(&random_strict(&mut rng, &space, true, true, false, 0.3))
        } else {
            let q = random_with_total_degree(&mut rng, &space, &[(2, 1), (1, 2), (3, 1), (1, 3), (2, 2)], 1, 3);
            StructurePackage::from_element(&q)
        };
        if !p.is_empty() && verify(StructureKind::LinfBialgebra, &p).passed() {
            out.push(p);
        }
    }
    out
}

#[test]
fn random_round_trips() {
    let packages = verified_packages(3, 30);
    assert!(packages.len() >= 20);
    for p in &packages {
        let t = double_from_package(p).unwrap();
        let v = verify_triple(&t, TripleKind::Triple).unwrap();
        assert!(v.passed(), "{p:?}\n{v}");
        let back = package_from_triple(&t).unwrap();
        assert_eq!(&back, p);
        assert_eq!(double_from_package(&back).unwrap(), t);
    }
}

#[test]
fn quasi_packages_are_quasi_triples_only() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut seen = 0;
    for _ in 0..5000 {
        let space = random_space(&mut rng, 3, -1..=1);
        let with_cobracket = rng.gen_bool(0.5);
        let k = random_strict(&mut rng, &space, true, with_cobracket, true, 0.4);
        let p = package_of(&k);
        if p.phi_part().is_zero() || !verify(StructureKind::Quasi, &p).passed() {
            continue;
        }
        seen += 1;
        let t = double_from_package(&p).unwrap();
        assert!(verify_triple(&t, TripleKind::QuasiTriple).unwrap().passed());
        assert!(verify_triple(&t, TripleKind::Pair).unwrap().passed());
        assert!(check_subalgebra(&t, Half::Plus).passed());
        assert!(!check_subalgebra(&t, Half::Minus).passed());
        assert!(verify_triple(&t, TripleKind::Triple).unwrap().fails("subalgebra:W-"));
        assert_eq!(package_from_triple(&t).unwrap(), p);
        if seen >= 20 {
            break;
        }
    }
    assert!(seen >= 20, "only {seen} quasi samples");
}

#[test]
fn non_invariant_perturbation_is_located() {
    let p = sl2_bialgebra();
    let mut t = double_from_package(&p).unwrap();
    let (h, e) = (GeneratorRef::primal(0), GeneratorRef::primal(1));
    let v = p.space().clone();
    let bumped = &t.eval(&[h, e]) + &Element::primal(&v, 0);
    t.insert(&[h, e], &bumped).unwrap();
    let verdict = check_invariance(&t).unwrap();
    assert!(!verdict.passed());
    assert!(verdict.defects.contains_key("invariance:h,e,h'"));
    assert!(package_from_triple(&t).is_err());
}

#[test]
fn invariance_is_cyclic() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for p in verified_packages(31, 10) {
        let t = double_from_package(&p).unwrap();
        let basis = t.space().basis();
        let base = t.base().clone();
        for n in 1..=t.max_arity() {
            let word: Vec<GeneratorRef> = (0..=n).map(|_| basis[rng.gen_range(0..basis.len())]).collect();
            // F(w_0 … w_n) = ⟨λ(w_0 … w_{n-1}), w_n⟩ changes by the Koszul
            // sign of the rotation
            let f = |w: &[GeneratorRef]| {
                bigbracket::pairing(&t.eval(&w[..n]), &t.space().vector(w[n])).unwrap()
            };
            let mut rotated = word[1..].to_vec();
            rotated.push(word[0]);
            let odd = |g: &GeneratorRef| base.is_odd(*g);
            let flips = odd(&word[0]) && word[1..].iter().filter(|g| odd(g)).count() % 2 == 1;
            let expected = if flips { -f(&word) } else { f(&word) };
            assert_eq!(f(&rotated), expected);
        }
        assert!(mc_defect(&p).is_zero());
    }
}
