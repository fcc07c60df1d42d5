//! Finite Weyl group elements, inversion sets and the (fully) commutative
//! deciders.
//!
//! A word `s_{i1} … s_{ik}` acts right to left. Elements are stored as the
//! permutation they induce on root indices, so equality is cheap and exact.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::roots::{Rank2Kind, Root, RootSystem};
use crate::rootset::PosRootSet;

/// Default cap on reduced words explored by the word-based deciders.
pub const DEFAULT_WORD_CAP: usize = 1_000_000;

/// Default limit on `|W|` for exhaustive enumeration (admits E6, refuses E7).
pub const DEFAULT_BUDGET: u128 = 100_000;

#[derive(Clone)]
pub struct WeylElement<'a> {
    rs: &'a RootSystem,
    action: Vec<u16>,
    word: Vec<u8>,
    inv: PosRootSet,
}

impl<'a> WeylElement<'a> {
    pub fn identity(rs: &'a RootSystem) -> Self {
        let action = (0..rs.num_roots() as u16).collect();
        Self::from_action(rs, action)
    }

    /// `s_i` for `i` in `1..=rank`.
    pub fn simple(rs: &'a RootSystem, i: usize) -> Result<Self> {
        Self::from_word(rs, &[i])
    }

    /// Product of simple reflections; the word need not be reduced.
    pub fn from_word(rs: &'a RootSystem, word: &[usize]) -> Result<Self> {
        let mut action: Vec<u16> = (0..rs.num_roots() as u16).collect();
        for &i in word.iter().rev() {
            if i == 0 || i > rs.rank() {
                return Err(Error::BadSimpleIndex(i));
            }
            let t = rs.simple_reflection_table(i);
            for a in action.iter_mut() {
                *a = t[*a as usize];
            }
        }
        Ok(Self::from_action(rs, action))
    }

    /// The longest element `w0`.
    pub fn longest(rs: &'a RootSystem) -> Self {
        let mut w = Self::identity(rs);
        while let Some(i) = (1..=rs.rank()).find(|&i| !w.is_right_descent(i)) {
            w = w.mul_simple(i);
        }
        w
    }

    fn from_action(rs: &'a RootSystem, action: Vec<u16>) -> Self {
        let npos = rs.num_positive();
        let mut bits = 0u128;
        for (r, &img) in action[..npos].iter().enumerate() {
            if img as usize >= npos {
                bits |= 1 << r;
            }
        }
        let inv = PosRootSet::from_bits(npos, bits);
        let word = canonical_word(rs, &action, inv.len());
        WeylElement {
            rs,
            action,
            word,
            inv,
        }
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    /// `w(r)`.
    #[inline]
    pub fn apply(&self, r: Root) -> Root {
        Root::from_index(self.action[r.index()] as usize)
    }

    pub fn action(&self) -> &[u16] {
        &self.action
    }

    /// Lexicographically least reduced word (1-based letters).
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// `Φ(w) = {α ∈ Φ^+ | w(α) ∈ Φ^-}`.
    pub fn inversions(&self) -> PosRootSet {
        self.inv
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// `ℓ(w s_i) < ℓ(w)`.
    pub fn is_right_descent(&self, i: usize) -> bool {
        !self.rs.is_positive(self.apply(Root::from_index(i - 1)))
    }

    /// `ℓ(s_i w) < ℓ(w)`.
    pub fn is_left_descent(&self, i: usize) -> bool {
        let a = Root::from_index(i - 1);
        let pre = self.action.iter().position(|&x| x as usize == a.index()).unwrap();
        !self.rs.is_positive(Root::from_index(pre))
    }

    /// `w · s_i`.
    pub fn mul_simple(&self, i: usize) -> Self {
        let t = self.rs.simple_reflection_table(i);
        let action = t.iter().map(|&x| self.action[x as usize]).collect();
        Self::from_action(self.rs, action)
    }

    /// `s_i · w`.
    pub fn simple_mul(&self, i: usize) -> Self {
        let t = self.rs.simple_reflection_table(i);
        let action = self.action.iter().map(|&x| t[x as usize]).collect();
        Self::from_action(self.rs, action)
    }

    fn check_same(&self, other: &WeylElement<'_>) -> Result<()> {
        if self.rs.same_labeling(other.rs) {
            Ok(())
        } else {
            Err(Error::MismatchedSystems(
                self.rs.cartan_type(),
                other.rs.cartan_type(),
            ))
        }
    }

    /// `self · other`.
    pub fn multiply(&self, other: &WeylElement<'_>) -> Result<Self> {
        self.check_same(other)?;
        let action = other.action.iter().map(|&x| self.action[x as usize]).collect();
        Ok(Self::from_action(self.rs, action))
    }

    pub fn inverse(&self) -> Self {
        let mut action = vec![0u16; self.action.len()];
        for (r, &img) in self.action.iter().enumerate() {
            action[img as usize] = r as u16;
        }
        Self::from_action(self.rs, action)
    }

    /// Left weak order: `Φ(self) ⊆ Φ(other)`.
    pub fn weak_leq(&self, other: &WeylElement<'_>) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.inv.is_subset(&other.inv))
    }

    /// Bruhat order through the subword property on the canonical word of
    /// `other`.
    pub fn bruhat_leq(&self, other: &WeylElement<'_>) -> Result<bool> {
        self.check_same(other)?;
        if self.length() > other.length() {
            return Ok(false);
        }
        Ok(bruhat_lower_interval(other).contains(&self.inv.bits()))
    }

    pub fn is_commutative(&self) -> bool {
        is_commutative_inv(self.rs, self.inv)
    }

    pub fn is_fully_commutative(&self) -> bool {
        is_fc_inv(self.rs, self.inv)
    }

    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            return "e".to_string();
        }
        self.word.iter().map(|i| format!("s{i}")).collect()
    }
}

/// Inversion sets of all elements below `w` in Bruhat order.
pub fn bruhat_lower_interval(w: &WeylElement<'_>) -> HashSet<u128> {
    let rs = w.rs;
    let id = WeylElement::identity(rs);
    let mut reached: HashMap<u128, WeylElement<'_>> = HashMap::new();
    reached.insert(id.inv.bits(), id);
    for &i in &w.word {
        let new: Vec<WeylElement<'_>> = reached
            .values()
            .map(|u| u.mul_simple(i as usize))
            .filter(|u| !reached.contains_key(&u.inv.bits()))
            .collect();
        for u in new {
            reached.insert(u.inv.bits(), u);
        }
    }
    reached.into_keys().collect()
}

fn canonical_word(rs: &RootSystem, action: &[u16], len: usize) -> Vec<u8> {
    let mut winv = vec![0u16; action.len()];
    for (r, &img) in action.iter().enumerate() {
        winv[img as usize] = r as u16;
    }
    let npos = rs.num_positive();
    let mut word = Vec::with_capacity(len);
    for _ in 0..len {
        let i = (0..rs.rank())
            .find(|&i| winv[i] as usize >= npos)
            .expect("non-identity element without a left descent");
        word.push(i as u8 + 1);
        // w ← s_i w, so w^{-1} ← w^{-1} s_i.
        let t = rs.simple_reflection_table(i + 1);
        winv = t.iter().map(|&x| winv[x as usize]).collect();
    }
    word
}

impl PartialEq for WeylElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.rs.same_labeling(other.rs) && self.action == other.action
    }
}

impl Eq for WeylElement<'_> {}

impl Hash for WeylElement<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.action.hash(state);
    }
}

impl PartialOrd for WeylElement<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex on canonical words.
impl Ord for WeylElement<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl fmt::Debug for WeylElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.rs.cartan_type(), self.word_string())
    }
}

impl fmt::Display for WeylElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

/// Order `m` of `s_i s_j` (1-based indices).
pub fn braid_order(rs: &RootSystem, i: usize, j: usize) -> Result<u32> {
    let a = rs.simple_root(i)?;
    let b = rs.simple_root(j)?;
    if i == j {
        return Ok(1);
    }
    Ok(match rs.pair(a, b) * rs.pair(b, a) {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        other => unreachable!("Cartan product {other}"),
    })
}

fn braid_table(rs: &RootSystem) -> Vec<Vec<u32>> {
    let r = rs.rank();
    (1..=r)
        .map(|i| (1..=r).map(|j| braid_order(rs, i, j).unwrap()).collect())
        .collect()
}

/// All elements of `W` in shortlex order, refusing groups larger than `budget`.
pub fn enumerate_weyl(rs: &RootSystem, budget: u128) -> Result<Vec<WeylElement<'_>>> {
    let order = rs.cartan_type().weyl_order();
    if order > budget {
        return Err(Error::BudgetExceeded {
            cartan_type: rs.cartan_type(),
            order,
            budget,
        });
    }
    let mut all = vec![WeylElement::identity(rs)];
    let mut layer_start = 0;
    loop {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for w in &all[layer_start..] {
            for i in 1..=rs.rank() {
                if w.is_right_descent(i) {
                    continue;
                }
                let v = w.mul_simple(i);
                if seen.insert(v.inv.bits()) {
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        layer_start = all.len();
        all.extend(next);
    }
    assert_eq!(all.len() as u128, order, "enumeration disagrees with |W|");
    Ok(all)
}

/// Reduced words of an element together with an overflow flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedWords {
    pub words: Vec<Vec<u8>>,
    pub overflow: bool,
}

/// Explores the braid-move graph from the canonical word. The visitor returns
/// `true` to stop early; the result is `Some(true)` on an early stop,
/// `Some(false)` when the graph was exhausted and `None` past `cap` words.
fn explore_words<F>(w: &WeylElement<'_>, cap: usize, mut visit: F) -> Option<bool>
where
    F: FnMut(&[u8]) -> bool,
{
    let m = braid_table(w.rs);
    let start = w.word.clone();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(word) = queue.pop_front() {
        if visit(&word) {
            return Some(true);
        }
        let n = word.len();
        for k in 0..n.saturating_sub(1) {
            let (i, j) = (word[k], word[k + 1]);
            if i == j {
                continue;
            }
            let mij = m[i as usize - 1][j as usize - 1] as usize;
            if k + mij > n
                || !(0..mij).all(|t| word[k + t] == if t % 2 == 0 { i } else { j })
            {
                continue;
            }
            let mut moved = word.clone();
            for t in 0..mij {
                moved[k + t] = if t % 2 == 0 { j } else { i };
            }
            if !seen.contains(&moved) {
                if seen.len() >= cap {
                    return None;
                }
                seen.insert(moved.clone());
                queue.push_back(moved);
            }
        }
    }
    Some(false)
}

/// All reduced words of `w`, truncated at `cap` with `overflow` set.
pub fn reduced_words(w: &WeylElement<'_>, cap: usize) -> ReducedWords {
    let mut words = Vec::new();
    let finished = explore_words(w, cap, |word| {
        words.push(word.to_vec());
        false
    });
    words.sort();
    ReducedWords {
        words,
        overflow: finished.is_none(),
    }
}

fn has_braid_substring(word: &[u8], m: &[Vec<u32>]) -> bool {
    let n = word.len();
    for k in 0..n.saturating_sub(2) {
        let (i, j) = (word[k], word[k + 1]);
        if i == j {
            continue;
        }
        let mij = m[i as usize - 1][j as usize - 1] as usize;
        if mij < 3 || k + mij > n {
            continue;
        }
        if (0..mij).all(|t| word[k + t] == if t % 2 == 0 { i } else { j }) {
            return true;
        }
    }
    false
}

fn has_short_long_short(word: &[u8], rs: &RootSystem) -> bool {
    word.windows(3).any(|t| {
        t[0] == t[2] && t[0] != t[1] && {
            let a = Root::from_index(t[0] as usize - 1);
            let b = Root::from_index(t[1] as usize - 1);
            rs.norm(a) <= rs.norm(b)
        }
    })
}

/// Full commutativity straight from the definition: no reduced word contains
/// an alternating braid of length `m(s_i, s_j) ≥ 3`.
pub fn is_fc_def(w: &WeylElement<'_>, cap: usize) -> Result<bool> {
    let m = braid_table(w.rs);
    match explore_words(w, cap, |word| has_braid_substring(word, &m)) {
        Some(found) => Ok(!found),
        None => Err(Error::WordCapExceeded(cap)),
    }
}

/// Commutativity straight from the definition: no reduced word contains
/// `s_a s_b s_a` with `||α_a|| ≤ ||α_b||`.
pub fn is_commutative_def(w: &WeylElement<'_>, cap: usize) -> Result<bool> {
    let rs = w.rs;
    match explore_words(w, cap, |word| has_short_long_short(word, rs)) {
        Some(found) => Ok(!found),
        None => Err(Error::WordCapExceeded(cap)),
    }
}

fn assert_width(rs: &RootSystem, psi: PosRootSet) {
    assert_eq!(
        psi.width(),
        rs.num_positive(),
        "root set does not belong to {}",
        rs.cartan_type()
    );
}

/// No two (not necessarily distinct) members of `Ψ` sum to a root.
pub fn is_commutative_inv(rs: &RootSystem, psi: PosRootSet) -> bool {
    assert_width(rs, psi);
    psi.iter().all(|a| rs.sum_mask(a) & psi.bits() == 0)
}

/// `⟨α, β⟩ ≥ 0` for all `α, β ∈ Ψ`.
pub fn pairing_nonneg(rs: &RootSystem, psi: PosRootSet) -> bool {
    assert_width(rs, psi);
    psi.iter().all(|a| rs.negative_pair_mask(a) & psi.bits() == 0)
}

/// `Ψ` contains no positive system of an irreducible rank-2 parabolic,
/// testing every positive system of every plane spanned by two members.
pub fn is_fc_inv_systems(rs: &RootSystem, psi: PosRootSet) -> bool {
    assert_width(rs, psi);
    let planes = rs.planes();
    let mut done = HashSet::new();
    let members: Vec<Root> = psi.iter().collect();
    for (k, &a) in members.iter().enumerate() {
        for &b in &members[k + 1..] {
            let id = planes.plane_of(a, b);
            if !done.insert(id) {
                continue;
            }
            let plane = &planes.planes()[id];
            if plane.kind == Rank2Kind::A1xA1 {
                continue;
            }
            if plane.positive_systems.iter().any(|s| s.is_subset(&psi)) {
                return false;
            }
        }
    }
    true
}

/// Same question answered through bases: for biclosed `Ψ` a positive system
/// lies inside `Ψ` as soon as its base does.
pub fn is_fc_inv_bases(rs: &RootSystem, psi: PosRootSet) -> bool {
    assert_width(rs, psi);
    let planes = rs.planes();
    let members: Vec<Root> = psi.iter().collect();
    for (k, &a) in members.iter().enumerate() {
        for &b in &members[k + 1..] {
            let plane = &planes.planes()[planes.plane_of(a, b)];
            if plane.kind.is_irreducible()
                && plane
                    .positive_bases
                    .iter()
                    .any(|&(u, v)| psi.contains(u) && psi.contains(v))
            {
                return false;
            }
        }
    }
    true
}

/// Full commutativity of the element with inversion set `Ψ`.
pub fn is_fc_inv(rs: &RootSystem, psi: PosRootSet) -> bool {
    let by_systems = is_fc_inv_systems(rs, psi);
    debug_assert_eq!(by_systems, is_fc_inv_bases(rs, psi));
    by_systems
}

fn is_closed_bits(rs: &RootSystem, bits: u128) -> bool {
    let mut rest = bits;
    while rest != 0 {
        let a = Root::from_index(rest.trailing_zeros() as usize);
        rest &= rest - 1;
        let mut partners = rs.sum_mask(a) & bits;
        while partners != 0 {
            let b = Root::from_index(partners.trailing_zeros() as usize);
            partners &= partners - 1;
            let s = rs.sum(a, b).unwrap();
            if bits >> s.index() & 1 == 0 {
                return false;
            }
        }
    }
    true
}

fn is_convex_bits(rs: &RootSystem, bits: u128) -> bool {
    let planes = rs.planes();
    let mut outer = bits;
    while outer != 0 {
        let a = Root::from_index(outer.trailing_zeros() as usize);
        outer &= outer - 1;
        let mut inner = outer;
        while inner != 0 {
            let b = Root::from_index(inner.trailing_zeros() as usize);
            inner &= inner - 1;
            if planes.open_cone(a, b) & !bits != 0 {
                return false;
            }
        }
    }
    true
}

/// `Ψ` and `Φ^+ ∖ Ψ` are both closed under root sums.
pub fn is_biclosed(rs: &RootSystem, psi: PosRootSet) -> bool {
    assert_width(rs, psi);
    is_closed_bits(rs, psi.bits()) && is_closed_bits(rs, psi.complement().bits())
}

/// `Ψ` and `Φ^+ ∖ Ψ` are both closed under positive combinations.
pub fn is_biconvex(rs: &RootSystem, psi: PosRootSet) -> bool {
    assert_width(rs, psi);
    is_convex_bits(rs, psi.bits()) && is_convex_bits(rs, psi.complement().bits())
}

/// The unique `w` with `Φ(w) = Ψ`, found by peeling simple roots off `Ψ`.
pub fn element_from_biconvex(rs: &RootSystem, psi: PosRootSet) -> Result<WeylElement<'_>> {
    if psi.width() != rs.num_positive() || !is_biclosed(rs, psi) {
        return Err(Error::NotBiconvex);
    }
    let mut peeled = Vec::new();
    let mut cur = psi;
    while !cur.is_empty() {
        let i = (1..=rs.rank())
            .find(|&i| cur.contains(Root::from_index(i - 1)))
            .ok_or(Error::NotBiconvex)?;
        let mut next = rs.empty_set();
        for r in cur.iter() {
            if r.index() == i - 1 {
                continue;
            }
            let img = rs.reflect_simple(i, r);
            if !rs.is_positive(img) {
                return Err(Error::NotBiconvex);
            }
            next.insert(img);
        }
        peeled.push(i);
        cur = next;
    }
    // Φ(w) = Ψ and α_i ∈ Ψ give w = (w s_i) s_i with Φ(w s_i) = s_i(Ψ ∖ {α_i}).
    peeled.reverse();
    let w = WeylElement::from_word(rs, &peeled)?;
    if w.inversions() != psi || w.length() != peeled.len() {
        return Err(Error::NotBiconvex);
    }
    Ok(w)
}
