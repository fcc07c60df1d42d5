use fcspherical::affine::{affine_inversions, element_from_biconvex_affine, is_biconvex_affine, AffineWeylWord};
use fcspherical::chevalley::{element_from_ints, ChevalleyAlgebra};
use fcspherical::ideals::CombinatorialIdeal;
use fcspherical::spherical::{is_spherical_subspace, Context};
use fcspherical::weyl::{self, element_from_biconvex, WeylElement};
use fcspherical::{PosRootSet, Root, RootSystem};
use num_bigint::BigInt;
use proptest::prelude::*;

const TYPES: &[&str] = &["A3", "B3", "C3", "G2", "D4", "F4", "B4"];

fn sys(t: &str) -> RootSystem {
    RootSystem::new(t.parse().unwrap()).unwrap()
}

fn reduce<'a>(rs: &'a RootSystem, word: &[usize]) -> WeylElement<'a> {
    word.iter()
        .fold(WeylElement::identity(rs), |w, &i| w.mul_simple(1 + i % rs.rank()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inversion_sets_determine_elements(t in prop::sample::select(TYPES), word in prop::collection::vec(0usize..8, 0..30)) {
        let rs = sys(t);
        let w = reduce(&rs, &word);
        let psi = w.inversions();
        prop_assert_eq!(psi.len(), w.length());
        prop_assert!(weyl::is_biconvex(&rs, psi));
        prop_assert_eq!(element_from_biconvex(&rs, psi).unwrap(), w.clone());
        let v = w.inverse();
        prop_assert!(v.multiply(&w).unwrap().is_identity());
    }

    #[test]
    fn fc_and_commutative_agree_with_words(t in prop::sample::select(TYPES), word in prop::collection::vec(0usize..8, 0..12)) {
        let rs = sys(t);
        let w = reduce(&rs, &word);
        let psi = w.inversions();
        prop_assert_eq!(weyl::is_fc_def(&w, 1_000_000).unwrap(), weyl::is_fc_inv(&rs, psi));
        prop_assert_eq!(weyl::is_commutative_def(&w, 1_000_000).unwrap(), weyl::is_commutative_inv(&rs, psi));
        // commutative ⟹ fully commutative
        prop_assert!(!weyl::is_commutative_inv(&rs, psi) || weyl::is_fc_inv(&rs, psi));
    }

    #[test]
    fn weak_order_prefixes(t in prop::sample::select(TYPES), word in prop::collection::vec(0usize..8, 0..20), cut in 0usize..20) {
        let rs = sys(t);
        let w = reduce(&rs, &word);
        let suffix = &w.word()[cut.min(w.length())..];
        let u = WeylElement::from_word(&rs, &suffix.iter().map(|&c| c as usize).collect::<Vec<_>>()).unwrap();
        prop_assert!(u.weak_leq(&w).unwrap());
        prop_assert!(u.bruhat_leq(&w).unwrap());
    }

    #[test]
    fn spherical_sets_are_closed_downwards(t in prop::sample::select(&["A3", "B3", "C3", "G2"][..]), bits in any::<u64>(), drop in any::<u64>()) {
        let rs = sys(t);
        let ctx = Context::new(&rs);
        let n = rs.num_positive();
        let psi = PosRootSet::from_bits(n, bits as u128 & ((1u128 << n) - 1));
        let smaller = PosRootSet::from_bits(n, psi.bits() & !(drop as u128));
        let sph = ctx.oracle.is_spherical(psi);
        prop_assert_eq!(sph, is_spherical_subspace(&ctx.alg, psi));
        if sph {
            prop_assert!(ctx.oracle.is_spherical(smaller));
        }
    }

    #[test]
    fn spherical_subspaces_have_small_heights(
        t in prop::sample::select(&["A3", "B3", "C3", "G2", "B2"][..]),
        word in prop::collection::vec(0usize..8, 0..12),
        coeffs in prop::collection::vec(-9i64..=9, 24),
    ) {
        let rs = sys(t);
        let ctx = Context::new(&rs);
        let psi = reduce(&rs, &word).inversions();
        let terms: Vec<(Root, BigInt)> = psi.iter().zip(&coeffs).map(|(r, &c)| (r, BigInt::from(c))).collect();
        let x = element_from_ints(&ctx.alg, &terms);
        let h = ctx.alg.height_capped(&x, 4).unwrap();
        if ctx.oracle.is_spherical(psi) {
            prop_assert!(h <= 3);
        }
    }

    #[test]
    fn jacobi_on_random_elements(t in prop::sample::select(&["B3", "G2", "C3"][..]), a in prop::collection::vec(-3i64..=3, 9), b in prop::collection::vec(-3i64..=3, 9), c in prop::collection::vec(-3i64..=3, 9)) {
        let rs = sys(t);
        let alg = ChevalleyAlgebra::new(&rs);
        let mk = |v: &[i64]| {
            let terms: Vec<(Root, BigInt)> = rs.roots().step_by(2).zip(v).map(|(r, &x)| (r, BigInt::from(x))).collect();
            element_from_ints(&alg, &terms)
        };
        let (x, y, z) = (mk(&a), mk(&b), mk(&c));
        let br = |p: &_, q: &_| alg.bracket(p, q).unwrap();
        let sum = br(&x, &br(&y, &z)).add(&br(&y, &br(&z, &x))).add(&br(&z, &br(&x, &y)));
        prop_assert!(sum.is_zero());
        prop_assert!(br(&x, &y).add(&br(&y, &x)).is_zero());
    }

    #[test]
    fn generators_rebuild_ideals(t in prop::sample::select(TYPES), bits in any::<u128>()) {
        let rs = sys(t);
        let n = rs.num_positive();
        let seeds: Vec<Root> = rs.positive_roots().filter(|r| bits >> (r.index() % 128) & 1 == 1 && r.index() % 3 == 0).collect();
        let ideal = CombinatorialIdeal::generated_by(&rs, &seeds).unwrap();
        let again = CombinatorialIdeal::generated_by(&rs, &ideal.generators(&rs)).unwrap();
        prop_assert_eq!(again.members(), ideal.members());
        let layers = ideal.layers();
        for pair in layers.windows(2) {
            prop_assert!(pair[1].is_subset(&pair[0]));
        }
        prop_assert!(layers.iter().all(|l| !l.is_empty() && l.width() == n));
        prop_assert_eq!(ideal.is_abelian(&rs), layers.len() <= 1);
        let hat = ideal.psi_hat(&rs);
        prop_assert_eq!(affine_inversions(&ideal.w_of_ideal(&rs)), hat);
    }

    #[test]
    fn affine_inversions_are_biconvex(t in prop::sample::select(&["A2", "B2", "C3", "G2", "A3"][..]), word in prop::collection::vec(0usize..5, 0..14)) {
        let rs = sys(t);
        let mut w = AffineWeylWord::identity(&rs);
        for &i in &word {
            let mut next = w.word().iter().map(|&c| c as usize).collect::<Vec<_>>();
            next.push(i % (rs.rank() + 1));
            if let Ok(v) = AffineWeylWord::from_word(&rs, &next) {
                w = v;
            }
        }
        let inv = affine_inversions(&w);
        prop_assert_eq!(inv.len(), w.length());
        prop_assert!(is_biconvex_affine(&rs, &inv));
        let back = element_from_biconvex_affine(&rs, &inv).unwrap();
        prop_assert_eq!(affine_inversions(&back), inv);
    }
}
