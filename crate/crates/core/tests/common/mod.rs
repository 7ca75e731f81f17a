#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use bigbracket::structures::{build_bracket_tensor, build_cobracket_tensor, StrictConstants, StructurePackage};
use bigbracket::{Element, GeneratorRef, GradedSpace};
use rand::Rng;

/// Random strict structure constants of total degree 1 with coefficients in
/// {-1, 0, 1}; `density` is the chance that an allowed slot is filled.
pub fn random_strict<R: Rng>(
    rng: &mut R,
    space: &Arc<GradedSpace>,
    bracket: bool,
    cobracket: bool,
    phi: bool,
    density: f64,
) -> StrictConstants {
    let n = space.dim();
    let deg = |i: usize| space.degree(i);
    let coeff = |rng: &mut R| -> i64 {
        if rng.gen_bool(density) {
            if rng.gen_bool(0.5) { 1 } else { -1 }
        } else {
            0
        }
    };
    let mut br = BTreeMap::new();
    if bracket {
        for a in 0..n {
            for b in a..n {
                if a == b && space.is_odd(GeneratorRef::primal(a)) {
                    continue;
                }
                let mut val = Element::zero(space);
                for c in 0..n {
                    if deg(c) == deg(a) + deg(b) {
                        let k = coeff(rng);
                        val.add_assign(&Element::primal(space, c).scale(&bigbracket::scalar::int(k)));
                    }
                }
                br.insert((a, b), val);
            }
        }
    }
    let mut co = BTreeMap::new();
    if cobracket {
        for a in 0..n {
            let mut val = Element::zero(space);
            for b in 0..n {
                for c in b..n {
                    if deg(a) == deg(b) + deg(c) {
                        let w = [GeneratorRef::primal(b), GeneratorRef::primal(c)];
                        if let Ok(m) = Element::canonicalize(space, &w, bigbracket::scalar::int(coeff(rng))) {
                            val.add_assign(&m);
                        }
                    }
                }
            }
            co.insert(a, val);
        }
    }
    let mut ph = Element::zero(space);
    if phi {
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    if deg(a) + deg(b) + deg(c) == 0 {
                        let w = [GeneratorRef::primal(a), GeneratorRef::primal(b), GeneratorRef::primal(c)];
                        if let Ok(m) = Element::canonicalize(space, &w, bigbracket::scalar::int(coeff(rng))) {
                            ph.add_assign(&m);
                        }
                    }
                }
            }
        }
    }
    StrictConstants::new(space, &br, &co, &ph).unwrap()
}

/// The package `l + c + φ` of a constants table, built through the tensor
/// constructors.
pub fn package_of(k: &StrictConstants) -> StructurePackage {
    let space = k.space();
    let l = build_bracket_tensor(space, k.bracket_table()).unwrap();
    let c = build_cobracket_tensor(space, k.cobracket_table()).unwrap();
    StructurePackage::new(space)
        .with((2, 1), &l)
        .unwrap()
        .with((1, 2), &c)
        .unwrap()
        .with((0, 3), k.phi())
        .unwrap()
}

pub fn sl2() -> Arc<GradedSpace> {
    Arc::new(GradedSpace::ungraded(&["h", "e", "f"]).unwrap())
}

/// `{h,e} = 2e`, `{h,f} = -2f`, `{e,f} = h`.
pub fn sl2_bracket(space: &Arc<GradedSpace>) -> BTreeMap<(usize, usize), Element> {
    let g = |i| Element::primal(space, i);
    let k = |n| bigbracket::scalar::int(n);
    BTreeMap::from([((0, 1), g(1).scale(&k(2))), ((0, 2), g(2).scale(&k(-2))), ((1, 2), g(0))])
}
