//! The shipped JSON fixtures are derived from structure constants and
//! confirmed by the brute-force oracles. Set `UPDATE_FIXTURES=1` to rewrite
//! them.

mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use bigbracket::io::{read_package, read_space, write_package, write_space};
use bigbracket::scalar::int;
use bigbracket::structures::{oracle_axioms, verify, StrictConstants, StructureKind, StructurePackage};
use bigbracket::{Element, GeneratorRef, GradedSpace};
use common::{package_of, sl2, sl2_bracket};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn wedge(space: &Arc<GradedSpace>, idx: &[usize]) -> Element {
    let w: Vec<GeneratorRef> = idx.iter().map(|&i| GeneratorRef::primal(i)).collect();
    Element::canonicalize(space, &w, int(1)).unwrap()
}

fn sync(name: &str, text: &str) {
    let path = dir().join(name);
    if std::env::var_os("UPDATE_FIXTURES").is_some() {
        std::fs::write(&path, text).unwrap();
    }
    let shipped = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing fixture {name}"));
    assert_eq!(shipped, text, "fixture {name} is stale");
}

fn check_package(space_file: &str, name: &str, p: &StructurePackage) {
    sync(name, &write_package(p));
    let v = read_space(&std::fs::read_to_string(dir().join(space_file)).unwrap()).unwrap();
    let back = read_package(&std::fs::read_to_string(dir().join(name)).unwrap(), &v).unwrap();
    assert_eq!(back.total().to_string(), p.total().to_string());
}

#[test]
fn sl2_fixtures() {
    let v = sl2();
    sync("sl2.space.json", &write_space(&v));
    let zero = Element::zero(&v);
    let lie = StrictConstants::new(&v, &sl2_bracket(&v), &BTreeMap::new(), &zero).unwrap();
    assert!(oracle_axioms(StructureKind::Lie, &lie).unwrap().passed());
    check_package("sl2.space.json", "sl2_lie.package.json", &package_of(&lie));

    let bi = lie.clone().with_coboundary(&wedge(&v, &[1, 2]));
    assert!(oracle_axioms(StructureKind::Bialgebra, &bi).unwrap().passed());
    let p = package_of(&bi);
    assert!(verify(StructureKind::Bialgebra, &p).passed());
    check_package("sl2.space.json", "sl2_bialgebra.package.json", &p);

    let quasi = StrictConstants::new(&v, &sl2_bracket(&v), &BTreeMap::new(), &wedge(&v, &[0, 1, 2])).unwrap();
    assert!(oracle_axioms(StructureKind::Quasi, &quasi).unwrap().passed());
    check_package("sl2.space.json", "sl2_quasi.package.json", &package_of(&quasi));

    let mut br = sl2_bracket(&v);
    br.insert((1, 2), &Element::primal(&v, 0) + &Element::primal(&v, 1));
    let bad = StrictConstants::new(&v, &br, &BTreeMap::new(), &zero).unwrap();
    assert!(!oracle_axioms(StructureKind::Lie, &bad).unwrap().passed());
    check_package("sl2.space.json", "sl2_perturbed.package.json", &package_of(&bad));
}

#[test]
fn solvable_fixture() {
    let v = Arc::new(GradedSpace::ungraded(&["x", "y"]).unwrap());
    sync("solvable2.space.json", &write_space(&v));
    let br = BTreeMap::from([((0, 1), Element::primal(&v, 1))]);
    let co = BTreeMap::from([(1, wedge(&v, &[0, 1]))]);
    let k = StrictConstants::new(&v, &br, &co, &Element::zero(&v)).unwrap();
    assert!(oracle_axioms(StructureKind::Bialgebra, &k).unwrap().passed());
    check_package("solvable2.space.json", "solvable2_bialgebra.package.json", &package_of(&k));
}

#[test]
fn graded_linf_fixture() {
    // a: degree 1 (even), b: degree 0, c: degree 1;
    // l_1(b) = c, l_2(a, b) = c, l_3(a, a, b) = c
    let v = Arc::new(GradedSpace::new([("a", 1), ("b", 0), ("c", 1)]).unwrap());
    sync("graded3.space.json", &write_space(&v));
    let (a, b, c) = (GeneratorRef::dual(0), GeneratorRef::dual(1), GeneratorRef::primal(2));
    let l1 = Element::canonicalize(&v, &[b, c], int(1)).unwrap();
    let l2 = Element::canonicalize(&v, &[a, b, c], int(1)).unwrap();
    let l3 = Element::canonicalize(&v, &[a, a, b, c], int(1)).unwrap();
    let p = StructurePackage::new(&v)
        .with((1, 1), &l1)
        .unwrap()
        .with((2, 1), &l2)
        .unwrap()
        .with((3, 1), &l3)
        .unwrap();
    let verdict = verify(StructureKind::LinfAlgebra, &p);
    assert!(verdict.passed(), "{verdict}");
    check_package("graded3.space.json", "graded3_linf.package.json", &p);
}
