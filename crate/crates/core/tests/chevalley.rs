use fcspherical::chevalley::{ChevalleyAlgebra, SignConvention};
use fcspherical::RootSystem;

const TYPES: &[&str] = &["A1", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "B4", "C4"];

fn sys(t: &str) -> RootSystem {
    RootSystem::new(t.parse().unwrap()).unwrap()
}

/// Height of a root vector from root strings alone: the longest α-string
/// through another root, and at least 2 because of `e_{−α}`.
fn string_height(rs: &RootSystem, a: fcspherical::Root) -> usize {
    rs.roots()
        .filter(|&b| b != a && b != rs.neg(a))
        .map(|b| (rs.root_string_p(a, b).unwrap() + rs.root_string_q(a, b).unwrap()) as usize)
        .max()
        .unwrap_or(0)
        .max(2)
}

#[test]
fn root_vector_heights() {
    for &t in TYPES {
        let rs = sys(t);
        let alg = ChevalleyAlgebra::new(&rs);
        for a in rs.roots() {
            let h = alg.height(&alg.e(a)).unwrap();
            assert_eq!(h, string_height(&rs, a), "{t} {a:?}");
            for i in 1..=rs.rank() {
                let b = rs.reflect_simple(i, a);
                assert_eq!(alg.height(&alg.e(b)).unwrap(), h, "{t} s{i}");
            }
            if rs.cartan_type().is_g2() && rs.is_short(a) {
                assert_eq!(h, 3);
            } else {
                assert!(h <= 3, "{t}: ad(e_α)^4 must vanish");
                assert_eq!(h, 2);
            }
        }
    }
}

#[test]
fn conventions_share_magnitudes() {
    for &t in TYPES {
        let rs = sys(t);
        let s = ChevalleyAlgebra::new(&rs);
        let a = ChevalleyAlgebra::with_convention(&rs, SignConvention::Alternate);
        let mut differ = 0;
        for x in rs.roots() {
            for y in rs.roots() {
                assert_eq!(s.n(x, y).abs(), a.n(x, y).abs());
                differ += (s.n(x, y) != a.n(x, y)) as usize;
            }
        }
        if rs.rank() >= 2 {
            assert!(differ > 0, "{t}: the alternate convention should change some signs");
        }
    }
}

#[test]
fn structure_constants_export() {
    let rs = sys("B2");
    let alg = ChevalleyAlgebra::new(&rs);
    let sc = alg.structure_constants();
    // Nonzero N over ordered pairs of roots whose sum is a root.
    let expected = rs.roots().flat_map(|a| rs.roots().map(move |b| (a, b))).filter(|&(a, b)| rs.sum(a, b).is_some()).count();
    assert_eq!(sc.len(), expected);
    assert!(sc.iter().all(|c| c.n != 0));
}
