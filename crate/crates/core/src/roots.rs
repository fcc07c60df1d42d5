//! Finite irreducible root systems built from Cartan data.
//!
//! Roots are integer coordinate vectors over the simple roots. Positive roots
//! come first, ordered by height and then by decreasing coordinates, so `α_i`
//! has index `i − 1`. The negative of the positive root with index `i` has
//! index `i + |Φ^+|`. Simple indices are 1-based throughout (Bourbaki labels),
//! leaving 0 for the affine node.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cartan::CartanType;
use crate::error::{Error, Result};
use crate::rootset::PosRootSet;

const NO_ROOT: u16 = u16::MAX;

/// Index of a root in its system's canonical enumeration.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(u16);

impl Root {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Root {
        debug_assert!(i < NO_ROOT as usize);
        Root(i as u16)
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}", self.0)
    }
}

/// Isomorphism type of a rank-2 root subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rank2Kind {
    #[serde(rename = "A1xA1")]
    A1xA1,
    A2,
    B2,
    G2,
}

impl Rank2Kind {
    pub fn from_size(n: usize) -> Option<Rank2Kind> {
        match n {
            4 => Some(Rank2Kind::A1xA1),
            6 => Some(Rank2Kind::A2),
            8 => Some(Rank2Kind::B2),
            12 => Some(Rank2Kind::G2),
            _ => None,
        }
    }

    pub fn is_irreducible(self) -> bool {
        self != Rank2Kind::A1xA1
    }
}

/// The roots lying in the plane spanned by two independent roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parabolic {
    pub members: Vec<Root>,
    pub kind: Rank2Kind,
}

/// One positive system of a rank-2 parabolic, given by its base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveSystem {
    pub base: (Root, Root),
    pub members: Vec<Root>,
}

/// Precomputed rank-2 parabolics spanned by pairs of positive roots.
#[derive(Debug)]
pub struct Plane {
    pub kind: Rank2Kind,
    pub members: Vec<Root>,
    /// Positive roots of the plane.
    pub positive: PosRootSet,
    /// Positive systems of the plane consisting of positive roots only.
    pub positive_systems: Vec<PosRootSet>,
    /// Bases of those positive systems.
    pub positive_bases: Vec<(Root, Root)>,
}

#[derive(Debug)]
pub struct PlaneTable {
    planes: Vec<Plane>,
    pair_plane: Vec<u32>,
    cone: Vec<u128>,
    npos: usize,
}

impl PlaneTable {
    pub fn planes(&self) -> &[Plane] {
        &self.planes
    }

    /// Plane spanned by two distinct positive roots.
    #[inline]
    pub fn plane_of(&self, a: Root, b: Root) -> usize {
        let id = self.pair_plane[a.index() * self.npos + b.index()];
        debug_assert_ne!(id, u32::MAX);
        id as usize
    }

    /// Positive roots that are combinations of `a` and `b` with strictly
    /// positive coefficients.
    #[inline]
    pub fn open_cone(&self, a: Root, b: Root) -> u128 {
        self.cone[a.index() * self.npos + b.index()]
    }
}

/// A finite irreducible reduced root system with precomputed tables.
pub struct RootSystem {
    cartan_type: CartanType,
    swapped: bool,
    rank: usize,
    gram: Vec<Vec<i32>>,
    coords: Vec<Vec<i32>>,
    npos: usize,
    lookup: HashMap<Vec<i32>, Root>,
    norm: Vec<i32>,
    inner: Vec<i32>,
    pair: Vec<i8>,
    sum: Vec<u16>,
    reflections: Vec<Vec<u16>>,
    theta: Root,
    theta_s: Root,
    max_norm: i32,
    sum_mask: Vec<u128>,
    negative_pair_mask: Vec<u128>,
    planes: OnceLock<PlaneTable>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootSystem")
            .field("type", &self.cartan_type)
            .field("swapped", &self.swapped)
            .field("positive_roots", &self.npos)
            .finish()
    }
}

impl RootSystem {
    /// Builds the system with Bourbaki simple-root numbering.
    pub fn new(t: CartanType) -> Result<Self> {
        Ok(Self::build(t, t.gram_matrix(), false))
    }

    /// Builds a rank-2 system with the two simple roots exchanged, e.g. `B2`
    /// with `α1` short instead of long.
    pub fn new_swapped(t: CartanType) -> Result<Self> {
        if t.rank() != 2 {
            return Err(Error::SwapNeedsRankTwo(t));
        }
        let g = t.gram_matrix();
        let swapped = vec![vec![g[1][1], g[1][0]], vec![g[0][1], g[0][0]]];
        Ok(Self::build(t, swapped, true))
    }

    fn build(t: CartanType, gram: Vec<Vec<i32>>, swapped: bool) -> Self {
        let rank = t.rank();
        let dot = |x: &[i32], y: &[i32]| -> i32 {
            let mut s = 0;
            for i in 0..rank {
                if x[i] == 0 {
                    continue;
                }
                for j in 0..rank {
                    s += x[i] * gram[i][j] * y[j];
                }
            }
            s
        };

        // Closure under simple root strings, one height at a time.
        let mut known: HashSet<Vec<i32>> = HashSet::new();
        let mut layer: BTreeSet<Vec<i32>> = (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                v
            })
            .collect();
        let mut positives: Vec<Vec<i32>> = Vec::new();
        while !layer.is_empty() {
            for v in &layer {
                known.insert(v.clone());
                positives.push(v.clone());
            }
            let mut next = BTreeSet::new();
            for beta in &layer {
                for i in 0..rank {
                    let mut p = 0;
                    let mut v = beta.clone();
                    loop {
                        v[i] -= 1;
                        if known.contains(&v) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let num = 2 * (0..rank).map(|j| beta[j] * gram[j][i]).sum::<i32>();
                    debug_assert_eq!(num % gram[i][i], 0);
                    let pairing = num / gram[i][i];
                    if p - pairing > 0 {
                        let mut w = beta.clone();
                        w[i] += 1;
                        next.insert(w);
                    }
                }
            }
            layer = next;
        }
        positives.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let npos = positives.len();
        let mut coords = positives.clone();
        coords.extend(positives.iter().map(|v| v.iter().map(|c| -c).collect::<Vec<_>>()));
        let n = coords.len();
        let lookup: HashMap<Vec<i32>, Root> = coords
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), Root::from_index(i)))
            .collect();

        let mut inner = vec![0i32; n * n];
        for a in 0..n {
            for b in a..n {
                let v = dot(&coords[a], &coords[b]);
                inner[a * n + b] = v;
                inner[b * n + a] = v;
            }
        }
        let norm: Vec<i32> = (0..n).map(|a| inner[a * n + a]).collect();
        let mut pair = vec![0i8; n * n];
        for a in 0..n {
            for b in 0..n {
                let num = 2 * inner[a * n + b];
                debug_assert_eq!(num % norm[b], 0);
                pair[a * n + b] = (num / norm[b]) as i8;
            }
        }
        let mut sum = vec![NO_ROOT; n * n];
        let mut buf = vec![0; rank];
        for a in 0..n {
            for b in 0..n {
                for k in 0..rank {
                    buf[k] = coords[a][k] + coords[b][k];
                }
                if let Some(r) = lookup.get(&buf) {
                    sum[a * n + b] = r.0;
                }
            }
        }
        let mut reflections = Vec::with_capacity(rank);
        for i in 0..rank {
            let simple = Root::from_index(i);
            debug_assert_eq!(coords[i].iter().sum::<i32>(), 1);
            let mut table = vec![0u16; n];
            for (r, slot) in table.iter_mut().enumerate() {
                let p = pair[r * n + simple.index()] as i32;
                for k in 0..rank {
                    buf[k] = coords[r][k] - p * coords[i][k];
                }
                *slot = lookup[&buf].0;
            }
            reflections.push(table);
        }
        let max_norm = *norm.iter().max().unwrap();
        let min_norm = *norm.iter().min().unwrap();
        let theta = Root::from_index(npos - 1);
        let theta_s = if max_norm == min_norm {
            theta
        } else {
            Root::from_index((0..npos).rev().find(|&i| norm[i] == min_norm).unwrap())
        };

        let mut sum_mask = vec![0u128; npos];
        let mut negative_pair_mask = vec![0u128; npos];
        for a in 0..npos {
            for b in 0..npos {
                if sum[a * n + b] != NO_ROOT {
                    sum_mask[a] |= 1 << b;
                }
                if pair[a * n + b] < 0 {
                    negative_pair_mask[a] |= 1 << b;
                }
            }
        }

        RootSystem {
            cartan_type: t,
            swapped,
            rank,
            gram,
            coords,
            npos,
            lookup,
            norm,
            inner,
            pair,
            sum,
            reflections,
            theta,
            theta_s,
            max_norm,
            sum_mask,
            negative_pair_mask,
            planes: OnceLock::new(),
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    /// Whether the two simple roots of a rank-2 system were exchanged.
    pub fn is_swapped(&self) -> bool {
        self.swapped
    }

    /// Two systems share root indices exactly when type and labeling agree.
    pub fn same_labeling(&self, other: &RootSystem) -> bool {
        self.cartan_type == other.cartan_type && self.swapped == other.swapped
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &[Vec<i32>] {
        &self.gram
    }

    /// Cartan matrix `⟨α_i, α_j⟩` (0-based rows and columns).
    pub fn cartan_matrix(&self) -> Vec<Vec<i32>> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| self.pair(Root::from_index(i), Root::from_index(j)))
                    .collect()
            })
            .collect()
    }

    pub fn num_roots(&self) -> usize {
        self.coords.len()
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn roots(&self) -> impl Iterator<Item = Root> + '_ {
        (0..self.coords.len()).map(Root::from_index)
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = Root> + '_ {
        (0..self.npos).map(Root::from_index)
    }

    /// Simple root `α_i`, `i` in `1..=rank`.
    pub fn simple_root(&self, i: usize) -> Result<Root> {
        if i == 0 || i > self.rank {
            return Err(Error::BadSimpleIndex(i));
        }
        Ok(Root::from_index(i - 1))
    }

    /// 1-based simple index of `r` if it is a simple root.
    pub fn simple_index(&self, r: Root) -> Option<usize> {
        (r.index() < self.rank).then_some(r.index() + 1)
    }

    pub fn coords(&self, r: Root) -> &[i32] {
        &self.coords[r.index()]
    }

    pub fn root(&self, coords: &[i32]) -> Option<Root> {
        self.lookup.get(coords).copied()
    }

    pub fn root_checked(&self, coords: &[i32]) -> Result<Root> {
        self.root(coords)
            .ok_or_else(|| Error::NotARoot(coords.to_vec()))
    }

    pub fn check(&self, r: Root) -> Result<Root> {
        if r.index() < self.coords.len() {
            Ok(r)
        } else {
            Err(Error::ForeignRoot(r.index()))
        }
    }

    #[inline]
    pub fn neg(&self, r: Root) -> Root {
        let i = r.index();
        Root::from_index(if i < self.npos { i + self.npos } else { i - self.npos })
    }

    #[inline]
    pub fn is_positive(&self, r: Root) -> bool {
        r.index() < self.npos
    }

    pub fn height(&self, r: Root) -> i32 {
        self.coords(r).iter().sum()
    }

    /// Squared length `(α, α)` in the normalization `(θ_s, θ_s) = 2`.
    #[inline]
    pub fn norm(&self, r: Root) -> i32 {
        self.norm[r.index()]
    }

    #[inline]
    pub fn inner(&self, a: Root, b: Root) -> i32 {
        self.inner[a.index() * self.coords.len() + b.index()]
    }

    /// Long roots; every root counts as long in a simply laced system.
    #[inline]
    pub fn is_long(&self, r: Root) -> bool {
        self.norm(r) == self.max_norm
    }

    /// Strictly shorter than the long roots; never true when simply laced.
    #[inline]
    pub fn is_short(&self, r: Root) -> bool {
        self.norm(r) < self.max_norm
    }

    /// `⟨a, b⟩ = 2(a, b)/(b, b)` without bounds checks.
    #[inline]
    pub fn pair(&self, a: Root, b: Root) -> i32 {
        self.pair[a.index() * self.coords.len() + b.index()] as i32
    }

    pub fn pairing(&self, a: Root, b: Root) -> Result<i32> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.pair(a, b))
    }

    /// `a + b` when it is a root.
    #[inline]
    pub fn sum(&self, a: Root, b: Root) -> Option<Root> {
        let s = self.sum[a.index() * self.coords.len() + b.index()];
        (s != NO_ROOT).then_some(Root(s))
    }

    pub fn root_sum(&self, a: Root, b: Root) -> Result<Option<Root>> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sum(a, b))
    }

    /// `a - b` when it is a root.
    #[inline]
    pub fn difference(&self, a: Root, b: Root) -> Option<Root> {
        self.sum(a, self.neg(b))
    }

    /// Largest `k ≥ 0` with `b − k·a` a root.
    pub fn root_string_p(&self, a: Root, b: Root) -> Result<u32> {
        self.check(a)?;
        self.check(b)?;
        if a == b || a == self.neg(b) {
            return Err(Error::Proportional);
        }
        let neg_a = self.neg(a);
        let mut k = 0;
        let mut cur = b;
        while let Some(next) = self.sum(cur, neg_a) {
            k += 1;
            cur = next;
        }
        Ok(k)
    }

    /// Largest `k ≥ 0` with `b + k·a` a root.
    pub fn root_string_q(&self, a: Root, b: Root) -> Result<u32> {
        self.root_string_p(self.neg(a), b)
    }

    /// `s_i(r)` for the simple reflection `i` in `1..=rank`.
    #[inline]
    pub fn reflect_simple(&self, i: usize, r: Root) -> Root {
        Root(self.reflections[i - 1][r.index()])
    }

    /// Permutation of root indices induced by `s_i`.
    pub fn simple_reflection_table(&self, i: usize) -> &[u16] {
        &self.reflections[i - 1]
    }

    /// `s_a(r) = r − ⟨r, a⟩ a`.
    pub fn reflect(&self, a: Root, r: Root) -> Root {
        let p = self.pair(r, a);
        let v: Vec<i32> = self
            .coords(r)
            .iter()
            .zip(self.coords(a))
            .map(|(x, y)| x - p * y)
            .collect();
        self.lookup[&v]
    }

    /// The highest root.
    pub fn theta(&self) -> Root {
        self.theta
    }

    /// The highest short root (equal to `θ` when simply laced).
    pub fn theta_s(&self) -> Root {
        self.theta_s
    }

    pub fn empty_set(&self) -> PosRootSet {
        PosRootSet::empty(self.npos)
    }

    pub fn full_set(&self) -> PosRootSet {
        PosRootSet::full(self.npos)
    }

    /// Positive roots `b` with `a + b` a root (`a` positive).
    #[inline]
    pub(crate) fn sum_mask(&self, a: Root) -> u128 {
        self.sum_mask[a.index()]
    }

    /// Positive roots `b` with `⟨a, b⟩ < 0` (`a` positive).
    #[inline]
    pub(crate) fn negative_pair_mask(&self, a: Root) -> u128 {
        self.negative_pair_mask[a.index()]
    }

    /// Writes `r = (x·a + y·b)/d` when `r` lies in the span of `a` and `b`,
    /// returning `(x, y, d)` with `d ≠ 0`.
    pub fn plane_coefficients(&self, a: Root, b: Root, r: Root) -> Option<(i64, i64, i64)> {
        plane_coefficients(self.coords(a), self.coords(b), self.coords(r))
    }

    /// All roots in `span{a, b} ∩ Φ` and the isomorphism type.
    pub fn rank2_parabolic(&self, a: Root, b: Root) -> Result<Parabolic> {
        self.check(a)?;
        self.check(b)?;
        if a == b || a == self.neg(b) {
            return Err(Error::Proportional);
        }
        let members: Vec<Root> = self
            .roots()
            .filter(|&r| self.plane_coefficients(a, b, r).is_some())
            .collect();
        let kind = Rank2Kind::from_size(members.len())
            .expect("rank-2 subsystem with unexpected number of roots");
        Ok(Parabolic { members, kind })
    }

    /// Positive systems of a rank-2 parabolic, one per base.
    pub fn positive_systems(&self, parabolic: &Parabolic) -> Vec<PositiveSystem> {
        let m = &parabolic.members;
        let mut out = Vec::new();
        for (i, &u) in m.iter().enumerate() {
            for &v in &m[i + 1..] {
                if u == self.neg(v) {
                    continue;
                }
                let mut positive = Vec::new();
                let is_base = m.iter().all(|&r| {
                    let (x, y, d) = self.plane_coefficients(u, v, r).unwrap();
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
                if is_base {
                    out.push(PositiveSystem {
                        base: (u, v),
                        members: positive,
                    });
                }
            }
        }
        out
    }

    /// Rank-2 parabolics spanned by pairs of positive roots, built on first use.
    pub fn planes(&self) -> &PlaneTable {
        self.planes.get_or_init(|| self.build_planes())
    }

    fn build_planes(&self) -> PlaneTable {
        let npos = self.npos;
        let mut pair_plane = vec![u32::MAX; npos * npos];
        let mut planes = Vec::new();
        for a in 0..npos {
            for b in a + 1..npos {
                if pair_plane[a * npos + b] != u32::MAX {
                    continue;
                }
                let par = self
                    .rank2_parabolic(Root::from_index(a), Root::from_index(b))
                    .unwrap();
                let id = planes.len() as u32;
                let pos: Vec<Root> = par
                    .members
                    .iter()
                    .copied()
                    .filter(|&r| self.is_positive(r))
                    .collect();
                for &x in &pos {
                    for &y in &pos {
                        if x != y {
                            pair_plane[x.index() * npos + y.index()] = id;
                        }
                    }
                }
                let mut positive_systems = Vec::new();
                let mut positive_bases = Vec::new();
                for ps in self.positive_systems(&par) {
                    if ps.members.iter().all(|&r| self.is_positive(r)) {
                        positive_systems.push(PosRootSet::from_roots(npos, ps.members));
                        positive_bases.push(ps.base);
                    }
                }
                planes.push(Plane {
                    kind: par.kind,
                    positive: PosRootSet::from_roots(npos, pos),
                    members: par.members,
                    positive_systems,
                    positive_bases,
                });
            }
        }
        let mut cone = vec![0u128; npos * npos];
        for a in 0..npos {
            for b in 0..npos {
                if a == b {
                    continue;
                }
                let (ra, rb) = (Root::from_index(a), Root::from_index(b));
                let plane = &planes[pair_plane[a * npos + b] as usize];
                for r in plane.positive.iter() {
                    if r == ra || r == rb {
                        continue;
                    }
                    let (x, y, d) = self.plane_coefficients(ra, rb, r).unwrap();
                    if x * d > 0 && y * d > 0 {
                        cone[a * npos + b] |= 1 << r.index();
                    }
                }
            }
        }
        PlaneTable {
            planes,
            pair_plane,
            cone,
            npos,
        }
    }

    /// Serializable description used for golden files.
    pub fn document(&self) -> RootSystemDocument {
        RootSystemDocument {
            cartan_type: self.cartan_type,
            swapped: self.swapped,
            rank: self.rank,
            gram: self.gram.clone(),
            positive_roots: self.positive_roots().map(|r| self.coords(r).to_vec()).collect(),
            theta: self.coords(self.theta).to_vec(),
            theta_s: self.coords(self.theta_s).to_vec(),
        }
    }

    /// Human-readable form such as `2a1+a2`.
    pub fn format_root(&self, r: Root) -> String {
        format_coords(self.coords(r))
    }
}

pub fn format_coords(c: &[i32]) -> String {
    let mut s = String::new();
    for (i, &x) in c.iter().enumerate() {
        if x == 0 {
            continue;
        }
        if x < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if x.abs() != 1 {
            s.push_str(&x.abs().to_string());
        }
        s.push_str(&format!("a{}", i + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn plane_coefficients(a: &[i32], b: &[i32], r: &[i32]) -> Option<(i64, i64, i64)> {
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            let d = a[i] as i64 * b[j] as i64 - a[j] as i64 * b[i] as i64;
            if d == 0 {
                continue;
            }
            let x = r[i] as i64 * b[j] as i64 - r[j] as i64 * b[i] as i64;
            let y = a[i] as i64 * r[j] as i64 - a[j] as i64 * r[i] as i64;
            let fits = (0..n).all(|k| d * r[k] as i64 == x * a[k] as i64 + y * b[k] as i64);
            return fits.then_some((x, y, d));
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemDocument {
    #[serde(rename = "type")]
    pub cartan_type: CartanType,
    pub swapped: bool,
    pub rank: usize,
    pub gram: Vec<Vec<i32>>,
    pub positive_roots: Vec<Vec<i32>>,
    pub theta: Vec<i32>,
    pub theta_s: Vec<i32>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    fn r(rs: &RootSystem, c: &[i32]) -> Root {
        rs.root(c).unwrap()
    }

    #[test]
    fn g2_positive_roots() {
        let rs = sys("G2");
        let pos: Vec<Vec<i32>> = rs.positive_roots().map(|x| rs.coords(x).to_vec()).collect();
        assert_eq!(
            pos,
            vec![
                vec![1, 0],
                vec![0, 1],
                vec![1, 1],
                vec![2, 1],
                vec![3, 1],
                vec![3, 2]
            ]
        );
        assert_eq!(rs.coords(rs.theta()), &[3, 2]);
        assert_eq!(rs.coords(rs.theta_s()), &[2, 1]);
    }

    #[test]
    fn a1_theta() {
        let rs = sys("A1");
        assert_eq!(rs.num_positive(), 1);
        assert_eq!(rs.theta(), rs.theta_s());
        assert_eq!(rs.coords(rs.theta()), &[1]);
    }

    #[test]
    fn f4_counts_and_highest_roots() {
        let rs = sys("F4");
        assert_eq!(rs.num_positive(), 24);
        assert_eq!(rs.coords(rs.theta()), &[2, 3, 4, 2]);
        assert!(rs.is_long(rs.theta()));
        assert!(rs.is_short(rs.theta_s()));
        assert_eq!(rs.coords(rs.theta_s()), &[1, 2, 3, 2]);
    }

    #[test]
    fn classical_counts() {
        for t in ["A1", "A2", "A3", "A5", "B2", "B3", "B5", "C3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2"] {
            let ct: CartanType = t.parse().unwrap();
            let rs = RootSystem::new(ct).unwrap();
            assert_eq!(rs.num_positive(), ct.num_positive_roots(), "{t}");
        }
    }

    #[test]
    fn theta_is_maximal() {
        for t in ["A3", "B3", "C3", "D4", "E6", "F4", "G2"] {
            let rs = sys(t);
            for i in 1..=rs.rank() {
                let a = rs.simple_root(i).unwrap();
                assert!(rs.sum(rs.theta(), a).is_none());
                if let Some(s) = rs.sum(rs.theta_s(), a) {
                    assert!(rs.is_long(s), "{t}: θ_s + α_{i} is a short root");
                }
            }
        }
    }

    #[test]
    fn g2_pairings() {
        let rs = sys("G2");
        let a1 = rs.simple_root(1).unwrap();
        let a2 = rs.simple_root(2).unwrap();
        assert_eq!(rs.pairing(a2, a1).unwrap(), -3);
        assert_eq!(rs.pairing(a1, a2).unwrap(), -1);
        assert_eq!(rs.pairing(rs.theta_s(), rs.theta()).unwrap(), 1);
        for x in rs.roots() {
            assert_eq!(rs.pair(x, x), 2);
        }
    }

    #[test]
    fn g2_sums() {
        let rs = sys("G2");
        let a1 = r(&rs, &[1, 0]);
        let a2 = r(&rs, &[0, 1]);
        assert_eq!(rs.root_sum(a1, a2).unwrap(), Some(r(&rs, &[1, 1])));
        assert_eq!(rs.root_sum(a1, a1).unwrap(), None);
        assert_eq!(rs.root_sum(r(&rs, &[3, 1]), a2).unwrap(), Some(rs.theta()));
        assert_eq!(rs.root_sum(a1, rs.neg(a1)).unwrap(), None);
    }

    #[test]
    fn root_strings() {
        let rs = sys("G2");
        let a1 = r(&rs, &[1, 0]);
        assert_eq!(rs.root_string_p(a1, r(&rs, &[0, 1])).unwrap(), 0);
        assert_eq!(rs.root_string_p(a1, r(&rs, &[2, 1])).unwrap(), 2);
        assert!(rs.root_string_p(a1, rs.neg(a1)).is_err());
        let b2 = sys("B2");
        assert_eq!(b2.root_string_p(r(&b2, &[0, 1]), r(&b2, &[1, 1])).unwrap(), 1);
    }

    #[test]
    fn mismatched_index_rejected() {
        let rs = sys("A2");
        assert_eq!(
            rs.pairing(Root::from_index(17), Root::from_index(0)),
            Err(Error::ForeignRoot(17))
        );
    }

    #[test]
    fn exhaustive_pairing_invariants() {
        for t in ["A4", "B4", "C4", "D5", "E6", "F4", "G2"] {
            let rs = sys(t);
            for a in rs.roots() {
                for b in rs.roots() {
                    if a == b || a == rs.neg(b) {
                        continue;
                    }
                    let prod = rs.pair(a, b) * rs.pair(b, a);
                    assert!((0..=3).contains(&prod), "{t}");
                    if rs.pair(a, b) < 0 {
                        assert!(rs.sum(a, b).is_some(), "{t}: negative pairing without sum");
                    }
                    if rs.sum(a, b).is_some() {
                        assert!(rs.pair(a, b) <= 1 || rs.norm(a) != rs.norm(b));
                        let s = rs.sum(a, b).unwrap();
                        let expect: Vec<i32> =
                            rs.coords(a).iter().zip(rs.coords(b)).map(|(x, y)| x + y).collect();
                        assert_eq!(rs.coords(s), expect.as_slice());
                    }
                    // Unbroken strings of bounded length.
                    let p = rs.root_string_p(a, b).unwrap();
                    let q = rs.root_string_q(a, b).unwrap();
                    assert_eq!(p as i32 - q as i32, rs.pair(b, a), "{t}");
                    let limit = if rs.cartan_type().is_g2() { 3 } else { 2 };
                    assert!(p + q <= limit, "{t}");
                    assert!(p <= limit);
                }
            }
        }
    }

    #[test]
    fn positive_roots_are_sign_coherent() {
        let rs = sys("E6");
        for a in rs.roots() {
            let c = rs.coords(a);
            assert!(c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0));
            assert_eq!(rs.is_positive(a), c.iter().all(|&x| x >= 0));
        }
    }

    #[test]
    fn rank2_parabolics() {
        let g2 = sys("G2");
        let par = g2
            .rank2_parabolic(g2.simple_root(1).unwrap(), g2.simple_root(2).unwrap())
            .unwrap();
        assert_eq!(par.members.len(), 12);
        assert_eq!(par.kind, Rank2Kind::G2);
        assert_eq!(g2.positive_systems(&par).len(), 12);

        // B3 in the ε-model: α1 = ε1−ε2, α2 = ε2−ε3, α3 = ε3.
        let b3 = sys("B3");
        let e12 = r(&b3, &[1, 0, 0]);
        let e23 = r(&b3, &[0, 1, 0]);
        let p = b3.rank2_parabolic(e12, e23).unwrap();
        assert_eq!((p.members.len(), p.kind), (6, Rank2Kind::A2));
        let e1 = r(&b3, &[1, 1, 1]);
        let e2 = r(&b3, &[0, 1, 1]);
        let p = b3.rank2_parabolic(e1, e2).unwrap();
        assert_eq!((p.members.len(), p.kind), (8, Rank2Kind::B2));
        assert_eq!(b3.rank2_parabolic(e1, b3.neg(e1)), Err(Error::Proportional));
    }

    #[test]
    fn swapped_b2() {
        let t = "B2".parse().unwrap();
        let rs = RootSystem::new_swapped(t).unwrap();
        let a1 = rs.simple_root(1).unwrap();
        let a2 = rs.simple_root(2).unwrap();
        assert!(rs.is_short(a1) && rs.is_long(a2));
        assert!(RootSystem::new_swapped("B3".parse().unwrap()).is_err());
    }

    #[test]
    fn planes_cover_all_pairs() {
        let rs = sys("F4");
        let planes = rs.planes();
        for a in rs.positive_roots() {
            for b in rs.positive_roots() {
                if a == b {
                    continue;
                }
                let p = &planes.planes()[planes.plane_of(a, b)];
                assert!(p.positive.contains(a) && p.positive.contains(b));
                // Exactly one positive system lies in Φ^+: the plane's own.
                assert_eq!(p.positive_systems, vec![p.positive]);
            }
        }
    }
}
