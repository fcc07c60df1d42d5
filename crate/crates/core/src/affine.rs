//! Real roots of the untwisted affine root system `Φ̂ = Φ + ℤδ`, affine Weyl
//! group words and finite biclosed subsets of `Φ̂^+`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{Rank2Kind, Root, RootSystem};

/// The real affine root `finite + level·δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    // Field order gives the (level, root index) ordering.
    pub level: i32,
    pub finite: Root,
}

impl AffineRoot {
    pub fn new(finite: Root, level: i32) -> Self {
        AffineRoot { level, finite }
    }

    pub fn from_coords(rs: &RootSystem, coords: &[i32], level: i32) -> Result<Self> {
        if coords.iter().all(|&c| c == 0) {
            return Err(Error::ImaginaryRoot);
        }
        Ok(AffineRoot::new(rs.root_checked(coords)?, level))
    }

    /// `kδ − α`.
    pub fn delta_minus(rs: &RootSystem, k: i32, alpha: Root) -> Self {
        AffineRoot::new(rs.neg(alpha), k)
    }

    pub fn is_positive(&self, rs: &RootSystem) -> bool {
        self.level > 0 || (self.level == 0 && rs.is_positive(self.finite))
    }

    pub fn neg(&self, rs: &RootSystem) -> Self {
        AffineRoot::new(rs.neg(self.finite), -self.level)
    }

    pub fn record(&self, rs: &RootSystem) -> AffineRootRecord {
        AffineRootRecord {
            level: self.level,
            coords: rs.coords(self.finite).to_vec(),
        }
    }

    pub fn format(&self, rs: &RootSystem) -> String {
        let f = rs.format_root(self.finite);
        match self.level {
            0 => f,
            l => {
                let d = if l == 1 { "d".to_string() } else { format!("{l}d") };
                if f.starts_with('-') {
                    format!("{d}{f}")
                } else {
                    format!("{d}+{f}")
                }
            }
        }
    }
}

/// JSON form of an affine root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineRootRecord {
    pub level: i32,
    pub coords: Vec<i32>,
}

/// Affine simple root `α_i`, with `α_0 = δ − θ`.
pub fn affine_simple_root(rs: &RootSystem, i: usize) -> Result<AffineRoot> {
    if i == 0 {
        Ok(AffineRoot::new(rs.neg(rs.theta()), 1))
    } else {
        Ok(AffineRoot::new(rs.simple_root(i)?, 0))
    }
}

/// `s_i(r)` for `i` in `0..=rank`.
pub fn affine_apply_simple(rs: &RootSystem, i: usize, r: AffineRoot) -> AffineRoot {
    if i == 0 {
        let theta = rs.theta();
        let p = rs.pair(r.finite, theta);
        AffineRoot::new(rs.reflect(theta, r.finite), r.level + p)
    } else {
        AffineRoot::new(rs.reflect_simple(i, r.finite), r.level)
    }
}

/// `⟨a, b⟩`, which only depends on the finite parts.
pub fn affine_pairing(rs: &RootSystem, a: AffineRoot, b: AffineRoot) -> i32 {
    rs.pair(a.finite, b.finite)
}

/// `a + b` when it is a real affine root.
pub fn affine_sum(rs: &RootSystem, a: AffineRoot, b: AffineRoot) -> Option<AffineRoot> {
    rs.sum(a.finite, b.finite)
        .map(|f| AffineRoot::new(f, a.level + b.level))
}

/// A finite set of positive real affine roots ordered by (level, root index).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AffineRootSet {
    roots: Vec<AffineRoot>,
}

impl AffineRootSet {
    pub fn new<I: IntoIterator<Item = AffineRoot>>(rs: &RootSystem, roots: I) -> Result<Self> {
        let set: BTreeSet<AffineRoot> = roots.into_iter().collect();
        for r in &set {
            rs.check(r.finite)?;
            if !r.is_positive(rs) {
                return Err(Error::NegativeAffineRoot);
            }
        }
        Ok(AffineRootSet {
            roots: set.into_iter().collect(),
        })
    }

    pub fn empty() -> Self {
        AffineRootSet::default()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, r: &AffineRoot) -> bool {
        self.roots.binary_search(r).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, AffineRoot> {
        self.roots.iter()
    }

    pub fn as_slice(&self) -> &[AffineRoot] {
        &self.roots
    }

    pub fn max_level(&self) -> i32 {
        self.roots.iter().map(|r| r.level).max().unwrap_or(0)
    }

    pub fn records(&self, rs: &RootSystem) -> Vec<AffineRootRecord> {
        self.roots.iter().map(|r| r.record(rs)).collect()
    }
}

/// An element of the affine Weyl group given by a reduced word over
/// `{0, …, rank}`. Equality compares the images of the affine simple roots.
#[derive(Clone)]
pub struct AffineWeylWord<'a> {
    rs: &'a RootSystem,
    word: Vec<u8>,
    canonical: Vec<AffineRoot>,
}

impl<'a> AffineWeylWord<'a> {
    pub fn identity(rs: &'a RootSystem) -> Self {
        Self::from_word(rs, &[]).unwrap()
    }

    /// Rejects non-reduced words.
    pub fn from_word(rs: &'a RootSystem, word: &[usize]) -> Result<Self> {
        if let Some(&bad) = word.iter().find(|&&i| i > rs.rank()) {
            return Err(Error::BadSimpleIndex(bad));
        }
        let word: Vec<u8> = word.iter().map(|&i| i as u8).collect();
        let w = AffineWeylWord {
            rs,
            canonical: (0..=rs.rank())
                .map(|j| apply_word(rs, &word, affine_simple_root(rs, j).unwrap()))
                .collect(),
            word,
        };
        if w.inversion_list().iter().any(|r| !r.is_positive(rs)) {
            return Err(Error::NotReduced(w.word));
        }
        Ok(w)
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// Images of `α_0, …, α_rank`.
    pub fn canonical(&self) -> &[AffineRoot] {
        &self.canonical
    }

    pub fn apply(&self, r: AffineRoot) -> AffineRoot {
        apply_word(self.rs, &self.word, r)
    }

    // α_{ik}, s_{ik}(α_{ik−1}), …
    fn inversion_list(&self) -> Vec<AffineRoot> {
        let k = self.word.len();
        (0..k)
            .map(|t| {
                let mut r = affine_simple_root(self.rs, self.word[t] as usize).unwrap();
                for &i in &self.word[t + 1..] {
                    r = affine_apply_simple(self.rs, i as usize, r);
                }
                r
            })
            .collect()
    }

    /// `Φ̂(w) = {α ∈ Φ̂^+ | w(α) ∈ Φ̂^-}`.
    pub fn inversions(&self) -> AffineRootSet {
        AffineRootSet::new(self.rs, self.inversion_list()).unwrap()
    }

    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            return "e".to_string();
        }
        self.word.iter().map(|i| format!("s{i}")).collect()
    }
}

fn apply_word(rs: &RootSystem, word: &[u8], mut r: AffineRoot) -> AffineRoot {
    for &i in word.iter().rev() {
        r = affine_apply_simple(rs, i as usize, r);
    }
    r
}

impl PartialEq for AffineWeylWord<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.rs.same_labeling(other.rs) && self.canonical == other.canonical
    }
}

impl Eq for AffineWeylWord<'_> {}

impl fmt::Debug for AffineWeylWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}~[{}]", self.rs.cartan_type(), self.word_string())
    }
}

impl fmt::Display for AffineWeylWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

/// `S` is closed under sums and no member of `S` is a sum of two positive
/// real roots outside `S`.
pub fn is_biclosed_affine(rs: &RootSystem, s: &AffineRootSet) -> bool {
    for a in s.iter() {
        for b in s.iter() {
            if let Some(c) = affine_sum(rs, *a, *b) {
                if !s.contains(&c) {
                    return false;
                }
            }
        }
    }
    for g in s.iter() {
        for x in rs.roots() {
            let Some(y) = rs.difference(g.finite, x) else {
                continue;
            };
            for m in 0..=g.level {
                let a = AffineRoot::new(x, m);
                let b = AffineRoot::new(y, g.level - m);
                if a.is_positive(rs) && b.is_positive(rs) && !s.contains(&a) && !s.contains(&b) {
                    return false;
                }
            }
        }
    }
    true
}

/// Biconvexity of a finite subset of `Φ̂^+`, decided through biclosedness.
pub fn is_biconvex_affine(rs: &RootSystem, s: &AffineRootSet) -> bool {
    is_biclosed_affine(rs, s)
}

/// The element `w` with `Φ̂(w) = S`, by peeling affine simple roots.
pub fn element_from_biconvex_affine<'a>(
    rs: &'a RootSystem,
    s: &AffineRootSet,
) -> Result<AffineWeylWord<'a>> {
    if !is_biconvex_affine(rs, s) {
        return Err(Error::NotBiconvex);
    }
    let simples: Vec<AffineRoot> = (0..=rs.rank())
        .map(|i| affine_simple_root(rs, i).unwrap())
        .collect();
    let mut peeled = Vec::new();
    let mut cur = s.clone();
    while !cur.is_empty() {
        let i = (0..=rs.rank())
            .find(|&i| cur.contains(&simples[i]))
            .ok_or(Error::NotBiconvex)?;
        let next: Vec<AffineRoot> = cur
            .iter()
            .filter(|&&r| r != simples[i])
            .map(|&r| affine_apply_simple(rs, i, r))
            .collect();
        cur = AffineRootSet::new(rs, next).map_err(|_| Error::NotBiconvex)?;
        peeled.push(i);
    }
    peeled.reverse();
    let w = AffineWeylWord::from_word(rs, &peeled).map_err(|_| Error::NotBiconvex)?;
    if &w.inversions() != s {
        return Err(Error::NotBiconvex);
    }
    Ok(w)
}

/// `Φ̂(w)` for the element `w` with inversion set `S`.
pub fn affine_inversions(w: &AffineWeylWord<'_>) -> AffineRootSet {
    w.inversions()
}

/// No two (not necessarily distinct) members sum to a real affine root.
pub fn is_commutative_affine(rs: &RootSystem, s: &AffineRootSet) -> bool {
    s.iter()
        .all(|a| s.iter().all(|b| rs.sum(a.finite, b.finite).is_none()))
}

/// `⟨a, b⟩ ≥ 0` for all members.
pub fn pairing_nonneg_affine(rs: &RootSystem, s: &AffineRootSet) -> bool {
    s.iter()
        .all(|&a| s.iter().all(|&b| affine_pairing(rs, a, b) >= 0))
}

/// Real affine roots in the plane spanned by `a` and `b`, whose finite parts
/// must be independent. Such a plane avoids `δ` and is a finite rank-2 system.
pub fn affine_plane(rs: &RootSystem, a: AffineRoot, b: AffineRoot) -> Vec<AffineRoot> {
    let mut out = Vec::new();
    for c in rs.roots() {
        let Some((x, y, d)) = rs.plane_coefficients(a.finite, b.finite, c) else {
            continue;
        };
        let k = x * a.level as i64 + y * b.level as i64;
        if k % d == 0 {
            out.push(AffineRoot::new(c, (k / d) as i32));
        }
    }
    out.sort();
    out
}

/// Positive systems of an affine plane, as (base, members) pairs.
fn plane_positive_systems(
    rs: &RootSystem,
    members: &[AffineRoot],
) -> Vec<((AffineRoot, AffineRoot), Vec<AffineRoot>)> {
    let mut out = Vec::new();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            if u.finite == rs.neg(v.finite) {
                continue;
            }
            let mut positive = Vec::new();
            let ok = members.iter().all(|&r| {
                let (x, y, d) = rs.plane_coefficients(u.finite, v.finite, r.finite).unwrap();
                if x % d != 0 || y % d != 0 {
                    return false;
                }
                let (x, y) = (x / d, y / d);
                if x >= 0 && y >= 0 {
                    positive.push(r);
                    true
                } else {
                    x <= 0 && y <= 0
                }
            });
            if ok {
                out.push(((u, v), positive));
            }
        }
    }
    out
}

/// Full commutativity of the affine element with inversion set `S`: no
/// irreducible rank-2 parabolic spanned by two members has a positive system
/// inside `S`. Planes through `δ` are infinite and are skipped.
pub fn is_fc_affine(rs: &RootSystem, s: &AffineRootSet) -> Result<bool> {
    if !is_biconvex_affine(rs, s) {
        return Err(Error::NotBiconvex);
    }
    let members = s.as_slice();
    let mut seen: HashSet<Vec<AffineRoot>> = HashSet::new();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if a.finite == b.finite || a.finite == rs.neg(b.finite) {
                continue;
            }
            let plane = affine_plane(rs, a, b);
            let kind = Rank2Kind::from_size(plane.len()).expect("affine plane of unexpected size");
            if !kind.is_irreducible() || !seen.insert(plane.clone()) {
                continue;
            }
            for (_, positive) in plane_positive_systems(rs, &plane) {
                if positive.iter().all(|r| s.contains(r)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanType;

    fn sys(s: &str) -> RootSystem {
        RootSystem::new(s.parse::<CartanType>().unwrap()).unwrap()
    }

    #[test]
    fn s0_action() {
        let g2 = sys("G2");
        let a0 = affine_simple_root(&g2, 0).unwrap();
        assert_eq!(affine_apply_simple(&g2, 0, a0), a0.neg(&g2));
        let theta = AffineRoot::new(g2.theta(), 0);
        assert_eq!(
            affine_apply_simple(&g2, 0, theta),
            AffineRoot::new(g2.neg(g2.theta()), 2)
        );
        let a1 = affine_simple_root(&g2, 1).unwrap();
        assert_eq!(affine_apply_simple(&g2, 0, a1), a1);
    }

    #[test]
    fn pairings() {
        let g2 = sys("G2");
        let a0 = affine_simple_root(&g2, 0).unwrap();
        let a1 = affine_simple_root(&g2, 1).unwrap();
        assert_eq!(affine_pairing(&g2, a0, a0), 2);
        assert_eq!(affine_pairing(&g2, a0, a1), 0);
        for x in g2.roots() {
            for y in g2.roots() {
                let u = AffineRoot::delta_minus(&g2, 2, x);
                let v = AffineRoot::delta_minus(&g2, 3, y);
                assert_eq!(affine_pairing(&g2, u, v), g2.pair(x, y));
            }
        }
        assert_eq!(
            AffineRoot::from_coords(&g2, &[0, 0], 1),
            Err(Error::ImaginaryRoot)
        );
    }

    #[test]
    fn reducedness() {
        let a2 = sys("A2");
        assert!(AffineWeylWord::from_word(&a2, &[0, 1, 2, 0]).is_ok());
        assert!(matches!(
            AffineWeylWord::from_word(&a2, &[1, 1]),
            Err(Error::NotReduced(_))
        ));
        assert!(AffineWeylWord::from_word(&a2, &[3]).is_err());
        // Canonical equality across a braid move.
        let u = AffineWeylWord::from_word(&a2, &[0, 1, 0]).unwrap();
        let v = AffineWeylWord::from_word(&a2, &[1, 0, 1]).unwrap();
        assert_eq!(u, v);
    }

    #[test]
    fn peeling() {
        let g2 = sys("G2");
        assert_eq!(
            element_from_biconvex_affine(&g2, &AffineRootSet::empty()).unwrap(),
            AffineWeylWord::identity(&g2)
        );
        let a0 = AffineRootSet::new(&g2, [affine_simple_root(&g2, 0).unwrap()]).unwrap();
        assert_eq!(element_from_biconvex_affine(&g2, &a0).unwrap().word(), &[0]);
        let psi0 = AffineRootSet::new(
            &g2,
            [[2, 1], [3, 1], [3, 2]].iter().map(|c| AffineRoot::delta_minus(&g2, 1, g2.root(c).unwrap())),
        )
        .unwrap();
        let w = element_from_biconvex_affine(&g2, &psi0).unwrap();
        assert_eq!(w.length(), 3);
        assert_eq!(w.inversions(), psi0);
        assert!(is_commutative_affine(&g2, &psi0));
        assert_eq!(is_fc_affine(&g2, &psi0), Ok(true));
    }

    #[test]
    fn non_biconvex_rejected() {
        let a2 = sys("A2");
        // δ − α1 and δ − α2 without δ − θ... their sum 2δ − θ must be present.
        let s = AffineRootSet::new(
            &a2,
            [1, 2].iter().map(|&i| AffineRoot::delta_minus(&a2, 1, a2.simple_root(i).unwrap())),
        )
        .unwrap();
        assert!(!is_biconvex_affine(&a2, &s));
        assert_eq!(element_from_biconvex_affine(&a2, &s).unwrap_err(), Error::NotBiconvex);
        assert_eq!(is_fc_affine(&a2, &s), Err(Error::NotBiconvex));
        assert_eq!(
            AffineRootSet::new(&a2, [AffineRoot::new(a2.neg(a2.theta()), 0)]),
            Err(Error::NegativeAffineRoot)
        );
    }

    #[test]
    fn singleton_decisions() {
        for t in ["A1", "B3", "G2"] {
            let rs = sys(t);
            let s = AffineRootSet::new(&rs, [affine_simple_root(&rs, 0).unwrap()]).unwrap();
            assert!(is_commutative_affine(&rs, &s));
            assert_eq!(is_fc_affine(&rs, &s), Ok(true));
        }
    }

    #[test]
    fn invariance_of_pairing_under_reflections() {
        let b3 = sys("B3");
        let roots: Vec<AffineRoot> = b3
            .roots()
            .flat_map(|r| (-2..=2).map(move |l| AffineRoot::new(r, l)))
            .collect();
        for i in 0..=3 {
            for &a in roots.iter().step_by(3) {
                for &b in roots.iter().step_by(5) {
                    let (sa, sb) = (affine_apply_simple(&b3, i, a), affine_apply_simple(&b3, i, b));
                    assert_eq!(affine_pairing(&b3, sa, sb), affine_pairing(&b3, a, b));
                    assert_eq!(affine_apply_simple(&b3, i, sa), a);
                }
            }
        }
    }
}
