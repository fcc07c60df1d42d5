//! Byte-level regression files. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use fcspherical::chevalley::ChevalleyAlgebra;
use fcspherical::RootSystem;

fn check(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "{name} changed");
}

fn sys(t: &str) -> RootSystem {
    RootSystem::new(t.parse().unwrap()).unwrap()
}

#[test]
fn g2_system() {
    let rs = sys("G2");
    let doc = rs.document();
    let roots: Vec<Vec<i32>> = vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1], vec![3, 2]];
    let mut listed = doc.positive_roots.clone();
    listed.sort();
    let mut want = roots.clone();
    want.sort();
    assert_eq!(listed, want);
    assert_eq!(doc.theta, vec![3, 2]);
    check("g2_system.json", &serde_json::to_string_pretty(&doc).unwrap());
}

#[test]
fn b2_system() {
    let rs = sys("B2");
    let doc = rs.document();
    assert_eq!(doc.positive_roots.len(), 4);
    assert_eq!(doc.theta, vec![1, 2]);
    assert_eq!(doc.theta_s, vec![1, 1]);
    check("b2_system.json", &serde_json::to_string_pretty(&doc).unwrap());
}

#[test]
fn structure_constants() {
    for t in ["G2", "B2"] {
        let rs = sys(t);
        let alg = ChevalleyAlgebra::new(&rs);
        let sc = alg.structure_constants();
        for c in &sc {
            let a = rs.root(&c.alpha).unwrap();
            let b = rs.root(&c.beta).unwrap();
            assert_eq!(c.n.unsigned_abs(), rs.root_string_p(a, b).unwrap() + 1);
        }
        let name = format!("{}_constants.json", t.to_lowercase());
        check(&name, &serde_json::to_string_pretty(&sc).unwrap());
    }
}
