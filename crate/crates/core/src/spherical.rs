//! Sphericality of subspaces `𝔞_Ψ = ⊕_{α∈Ψ} 𝔤_α` and the verifiers built on it.
//!
//! The deterministic test expands `(ad x)^4` for `x = Σ c_γ e_γ` as a
//! polynomial in the `c_γ`. The coefficient of the monomial indexed by a
//! multiset `M` of four roots is the sum over the distinct orderings of `M` of
//! the products `ad(e_{γ1}) ad(e_{γ2}) ad(e_{γ3}) ad(e_{γ4})`. The subspace is
//! spherical exactly when every such coefficient vanishes for the multisets
//! drawn from `Ψ`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::CartanType;
use crate::chevalley::{element_from_ints, ChevalleyAlgebra, LieElement};
use crate::error::{Error, Result};
use crate::ideals;
use crate::report::Report;
use crate::roots::{Root, RootSystem};
use crate::rootset::PosRootSet;
use crate::weyl::{self, enumerate_weyl, WeylElement};

/// Coefficient range of the randomized sampler.
pub const SAMPLE_MAX: i64 = 1 << 20;

/// Default number of random samples.
pub const DEFAULT_TRIALS: usize = 5;

type Vector = BTreeMap<usize, i64>;

fn apply_ad(alg: &ChevalleyAlgebra<'_>, g: Root, v: &Vector) -> Vector {
    let i = alg.e_index(g);
    let mut out = Vector::new();
    for (&j, &c) in v {
        for &(k, n) in alg.basis_bracket(i, j) {
            let e = out.entry(k).or_insert(0);
            *e = c
                .checked_mul(n as i64)
                .and_then(|t| e.checked_add(t))
                .expect("chain coefficient overflow");
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `ad(e_{s[0]}) ⋯ ad(e_{s[3]})` applied to basis vector `b`, accumulated into `acc`.
fn accumulate_chain(alg: &ChevalleyAlgebra<'_>, seq: &[Root], b: usize, acc: &mut Vector) {
    let mut v = Vector::from([(b, 1)]);
    for &g in seq.iter().rev() {
        v = apply_ad(alg, g, &v);
        if v.is_empty() {
            return;
        }
    }
    for (k, c) in v {
        *acc.entry(k).or_insert(0) += c;
    }
}

/// Basis vectors `b` of weight `β` with `β + shift ∈ Φ ∪ {0}`.
fn starting_vectors(alg: &ChevalleyAlgebra<'_>, shift: &[i32]) -> Vec<usize> {
    let rs = alg.root_system();
    let mut out = Vec::new();
    for b in rs.roots() {
        let t: Vec<i32> = rs.coords(b).iter().zip(shift).map(|(x, y)| x + y).collect();
        if t.iter().all(|&c| c == 0) || rs.root(&t).is_some() {
            out.push(alg.e_index(b));
        }
    }
    if rs.root(shift).is_some() {
        out.extend((1..=rs.rank()).map(|i| alg.h_index(i)));
    }
    out
}

fn multiset_sum(rs: &RootSystem, m: &[Root]) -> Vec<i32> {
    let mut s = vec![0; rs.rank()];
    for &g in m {
        for (x, y) in s.iter_mut().zip(rs.coords(g)) {
            *x += y;
        }
    }
    s
}

/// Next permutation in lexicographic order; false after the last one.
fn next_permutation(v: &mut [Root]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Whether the polarization of `(ad x)^4` at the multiset `m` vanishes.
pub fn multiset_term_vanishes(alg: &ChevalleyAlgebra<'_>, m: &[Root; 4]) -> bool {
    let rs = alg.root_system();
    let starts = starting_vectors(alg, &multiset_sum(rs, m));
    if starts.is_empty() {
        return true;
    }
    let mut sorted = *m;
    sorted.sort();
    for &b in &starts {
        let mut acc = Vector::new();
        let mut seq = sorted;
        loop {
            accumulate_chain(alg, &seq, b, &mut acc);
            if !next_permutation(&mut seq) {
                break;
            }
        }
        if acc.values().any(|&c| c != 0) {
            return false;
        }
    }
    true
}

/// `p_Γ = Σ_{surjective (γ1,…,γ4) onto Γ} ad(e_{γ1}) ⋯ ad(e_{γ4})` vanishes,
/// evaluated on every basis vector without pruning.
pub fn p_gamma_vanishes(alg: &ChevalleyAlgebra<'_>, gamma: &[Root]) -> bool {
    let mut set = gamma.to_vec();
    set.sort();
    set.dedup();
    let k = set.len();
    assert!((1..=4).contains(&k), "Γ must have 1 to 4 elements");
    for b in 0..alg.dim() {
        let mut acc = Vector::new();
        for code in 0..k.pow(4) {
            let idx = [code % k, code / k % k, code / (k * k) % k, code / (k * k * k)];
            if (0..k).any(|t| !idx.contains(&t)) {
                continue;
            }
            let seq: Vec<Root> = idx.iter().map(|&t| set[t]).collect();
            accumulate_chain(alg, &seq, b, &mut acc);
        }
        if acc.values().any(|&c| c != 0) {
            return false;
        }
    }
    true
}

fn multisets4(members: &[Root]) -> impl Iterator<Item = [Root; 4]> + '_ {
    let n = members.len();
    (0..n).flat_map(move |i| {
        (i..n).flat_map(move |j| {
            (j..n).flat_map(move |k| {
                (k..n).map(move |l| [members[i], members[j], members[k], members[l]])
            })
        })
    })
}

/// A multiset whose polarization term is nonzero, if `𝔞_Ψ` is not spherical.
pub fn nonspherical_witness(alg: &ChevalleyAlgebra<'_>, psi: PosRootSet) -> Option<[Root; 4]> {
    let members: Vec<Root> = psi.iter().collect();
    let found = multisets4(&members).find(|m| !multiset_term_vanishes(alg, m));
    found
}

/// `ad(x)^4 = 0` for every `x ∈ 𝔞_Ψ`.
pub fn is_spherical_subspace(alg: &ChevalleyAlgebra<'_>, psi: PosRootSet) -> bool {
    nonspherical_witness(alg, psi).is_none()
}

#[derive(Debug, Clone)]
struct Obstruction {
    support: u128,
    multiset: [Root; 4],
}

/// All inclusion-minimal supports of nonvanishing polarization terms, so that
/// sphericality of any `𝔞_Ψ` becomes a mask test.
#[derive(Debug, Clone)]
pub struct SphericalOracle {
    npos: usize,
    obstructions: Vec<Obstruction>,
}

impl SphericalOracle {
    pub fn new(alg: &ChevalleyAlgebra<'_>) -> Self {
        let rs = alg.root_system();
        let positive: Vec<Root> = rs.positive_roots().collect();
        let n = positive.len();
        let mut found: Vec<Obstruction> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let positive = &positive;
                (i..n)
                    .flat_map(move |j| {
                        (j..n).flat_map(move |k| {
                            (k..n).map(move |l| [positive[i], positive[j], positive[k], positive[l]])
                        })
                    })
                    .filter(|m| !multiset_term_vanishes(alg, m))
                    .map(|m| Obstruction {
                        support: m.iter().fold(0u128, |acc, r| acc | 1 << r.index()),
                        multiset: m,
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        found.sort_by_key(|o| (o.support.count_ones(), o.support, o.multiset));
        let mut minimal: Vec<Obstruction> = Vec::new();
        for o in found {
            if !minimal.iter().any(|m| m.support & o.support == m.support) {
                minimal.push(o);
            }
        }
        SphericalOracle {
            npos: n,
            obstructions: minimal,
        }
    }

    /// Minimal obstructing supports with one witnessing multiset each.
    pub fn obstructions(&self) -> impl Iterator<Item = (PosRootSet, [Root; 4])> + '_ {
        self.obstructions
            .iter()
            .map(|o| (PosRootSet::from_bits(self.npos, o.support), o.multiset))
    }

    pub fn witness(&self, psi: PosRootSet) -> Option<[Root; 4]> {
        let bits = psi.bits();
        self.obstructions
            .iter()
            .find(|o| o.support & bits == o.support)
            .map(|o| o.multiset)
    }

    pub fn is_spherical(&self, psi: PosRootSet) -> bool {
        self.witness(psi).is_none()
    }
}

/// A root system with its Chevalley algebra and sphericality oracle.
pub struct Context<'a> {
    pub rs: &'a RootSystem,
    pub alg: ChevalleyAlgebra<'a>,
    pub oracle: SphericalOracle,
}

impl<'a> Context<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        let alg = ChevalleyAlgebra::new(rs);
        let oracle = SphericalOracle::new(&alg);
        Context { rs, alg, oracle }
    }
}

fn sample_element(alg: &ChevalleyAlgebra<'_>, psi: PosRootSet, rng: &mut ChaCha8Rng) -> LieElement {
    let terms: Vec<(Root, BigInt)> = psi
        .iter()
        .map(|r| (r, BigInt::from(rng.gen_range(1..=SAMPLE_MAX))))
        .collect();
    element_from_ints(alg, &terms)
}

/// What a tested root set is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubjectKind {
    Biconvex,
    Ideal,
}

/// Sphericality of one `𝔞_Ψ` with the pairing criterion beside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphericalReport {
    #[serde(rename = "type")]
    pub cartan_type: CartanType,
    pub subject: SubjectKind,
    pub roots: Vec<Vec<i32>>,
    pub pairing_ok: bool,
    pub spherical: bool,
    /// A multiset of four roots with a nonvanishing polarization term.
    pub witness: Option<Vec<Vec<i32>>>,
}

pub fn spherical_report(alg: &ChevalleyAlgebra<'_>, subject: SubjectKind, psi: PosRootSet) -> SphericalReport {
    let rs = alg.root_system();
    let witness = nonspherical_witness(alg, psi);
    SphericalReport {
        cartan_type: rs.cartan_type(),
        subject,
        roots: psi.iter().map(|r| rs.coords(r).to_vec()).collect(),
        pairing_ok: weyl::pairing_nonneg(rs, psi),
        spherical: witness.is_none(),
        witness: witness.map(|m| m.iter().map(|&r| rs.coords(r).to_vec()).collect()),
    }
}

/// Maximum height over `trials` random elements of `𝔞_Ψ`.
pub fn generic_height(alg: &ChevalleyAlgebra<'_>, psi: PosRootSet, trials: usize, seed: u64) -> usize {
    assert!(trials >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| alg.height(&sample_element(alg, psi, &mut rng)).unwrap())
        .max()
        .unwrap()
}

/// Invariants of the adjoint action of a generic element of `𝔞_Ψ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    /// `dim 𝔤 − dim ker ad(x)`.
    pub orbit_dimension: usize,
    pub height: usize,
    /// Ranks of `ad(x)^k` for `k = 1 … height`.
    pub ranks: Vec<usize>,
}

pub fn orbit_fingerprint(alg: &ChevalleyAlgebra<'_>, psi: PosRootSet, trials: usize, seed: u64) -> Fingerprint {
    assert!(trials >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let ranks = alg.power_ranks(&sample_element(alg, psi, &mut rng)).unwrap();
            Fingerprint {
                orbit_dimension: ranks.first().copied().unwrap_or(0),
                height: ranks.len(),
                ranks,
            }
        })
        .max_by(|a, b| (a.height, &a.ranks).cmp(&(b.height, &b.ranks)))
        .unwrap()
}

/// Neither `a + b` nor `a − b` is a root.
pub fn strongly_orthogonal(rs: &RootSystem, a: Root, b: Root) -> Result<bool> {
    rs.check(a)?;
    rs.check(b)?;
    if a == b || a == rs.neg(b) {
        return Err(Error::Proportional);
    }
    Ok(rs.sum(a, b).is_none() && rs.difference(a, b).is_none())
}

/// Configurations of orthogonal roots generating a non-spherical orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrthogonalPattern {
    None,
    D4,
    BF4,
    B3,
}

fn half_is_root(rs: &RootSystem, terms: &[(Root, i32)]) -> bool {
    let mut s = vec![0; rs.rank()];
    for &(r, k) in terms {
        for (x, y) in s.iter_mut().zip(rs.coords(r)) {
            *x += k * y;
        }
    }
    if s.iter().any(|c| c % 2 != 0) {
        return false;
    }
    let half: Vec<i32> = s.iter().map(|c| c / 2).collect();
    rs.root(&half).is_some()
}

/// Number of long roots of `Φ` in the span of the orthogonal roots `basis`.
fn long_roots_in_span(rs: &RootSystem, basis: &[Root]) -> usize {
    let scale: i64 = basis.iter().map(|&b| rs.norm(b) as i64).product();
    rs.roots()
        .filter(|&r| rs.is_long(r))
        .filter(|&r| {
            // r = Σ (r,b)/(b,b) b when r lies in the span
            let mut v = vec![0i64; rs.rank()];
            for &b in basis {
                let f = rs.inner(r, b) as i64 * scale / rs.norm(b) as i64;
                for (x, &y) in v.iter_mut().zip(rs.coords(b)) {
                    *x += f * y as i64;
                }
            }
            v.iter().zip(rs.coords(r)).all(|(&x, &y)| x == scale * y as i64)
        })
        .count()
}

/// First of the patterns D4, BF4, B3 realized by a subset of `Γ`. BF4 also
/// requires the roots in the span of the four to form a system of type B4 or
/// F4, told apart from C4 by its 24 long roots.
pub fn classify_nonspherical_orthogonal(rs: &RootSystem, gamma: &[Root]) -> Result<OrthogonalPattern> {
    let mut g = gamma.to_vec();
    for &r in &g {
        rs.check(r)?;
    }
    g.sort();
    g.dedup();
    for (i, &a) in g.iter().enumerate() {
        if g[i + 1..].iter().any(|&b| rs.inner(a, b) != 0) {
            return Err(Error::NotOrthogonal);
        }
    }
    let n = g.len();
    let quads = || {
        (0..n).flat_map(move |i| {
            (i + 1..n).flat_map(move |j| {
                (j + 1..n).flat_map(move |k| (k + 1..n).map(move |l| [i, j, k, l]))
            })
        })
    };
    if quads().any(|q| half_is_root(rs, &q.map(|t| (g[t], 1)))) {
        return Ok(OrthogonalPattern::D4);
    }
    let bf4 = quads().any(|q| {
        q.iter().all(|&t| rs.is_long(g[t]))
            && long_roots_in_span(rs, &q.map(|t| g[t])) == 24
            && [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]].iter().any(|p| {
                half_is_root(rs, &[(g[q[p[0]]], 1), (g[q[p[1]]], 1)])
                    && half_is_root(rs, &[(g[q[p[2]]], 1), (g[q[p[3]]], 1)])
            })
    });
    if bf4 {
        return Ok(OrthogonalPattern::BF4);
    }
    for i in 0..n {
        for j in i + 1..n {
            if !rs.is_long(g[i]) || !rs.is_long(g[j]) {
                continue;
            }
            for k in 0..n {
                if rs.is_short(g[k]) && half_is_root(rs, &[(g[i], 1), (g[j], 1), (g[k], 2)]) {
                    return Ok(OrthogonalPattern::B3);
                }
            }
        }
    }
    Ok(OrthogonalPattern::None)
}

/// Four positive roots with `γ1 + γ2 + γ3 + γ4 = α − β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadruple {
    pub gammas: [Root; 4],
    pub alpha: Root,
    pub beta: Root,
}

fn is_orthogonal_set(rs: &RootSystem, m: &[Root]) -> bool {
    m.iter()
        .all(|&a| m.iter().all(|&b| a == b || rs.inner(a, b) == 0))
}

/// Every multiset of four positive roots with pairwise pairings `≥ 0`, not
/// orthogonal as a set, and with sum `α − β` for roots `α, β`; one entry per
/// decomposition.
pub fn lemma_configurations(rs: &RootSystem) -> Vec<Quadruple> {
    let positive: Vec<Root> = rs.positive_roots().collect();
    let mut out = Vec::new();
    for m in multisets4(&positive) {
        if m.iter().any(|&a| m.iter().any(|&b| rs.pair(a, b) < 0)) || is_orthogonal_set(rs, &m) {
            continue;
        }
        let s = multiset_sum(rs, &m);
        for alpha in rs.roots() {
            let b: Vec<i32> = rs.coords(alpha).iter().zip(&s).map(|(x, y)| x - y).collect();
            if let Some(beta) = rs.root(&b) {
                out.push(Quadruple {
                    gammas: m,
                    alpha,
                    beta,
                });
            }
        }
    }
    out
}

fn roots_strings(rs: &RootSystem, m: &[Root]) -> Vec<String> {
    m.iter().map(|&r| rs.format_root(r)).collect()
}

fn pairs_to_equal_sums(rs: &RootSystem, m: &[Root; 4]) -> bool {
    [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]].iter().any(|p| {
        let a = multiset_sum(rs, &[m[p[0]], m[p[1]]]);
        let b = multiset_sum(rs, &[m[p[2]], m[p[3]]]);
        a == b
    })
}

/// Checks the conclusions on every configuration from [`lemma_configurations`]:
/// the type is doubly laced, `α = −β` is long, at most one `γ_i` is long and it
/// is orthogonal to the others; and all-short configurations with `Σγ_i = 2α`
/// split as `γ1 + γ2 = γ3 + γ4`.
pub fn verify_lemma_quadruples(rs: &RootSystem) -> Report {
    let mut report = Report::new(rs.cartan_type(), "lemma-quadruples");
    report.declare(&["configurations", "long_member", "all_short", "balanced_pairs"]);
    if rs.cartan_type().is_g2() {
        return report;
    }
    let configs = lemma_configurations(rs);
    report.subject_count = configs.len();
    for q in &configs {
        let g = &q.gammas;
        let names = roots_strings(rs, g);
        let subject = format!("{{{}}}", names.join(", "));
        report.bump("configurations", 1);
        if !rs.cartan_type().is_doubly_laced() {
            report.mismatch(&subject, "configuration in a type that is not doubly laced");
        }
        if q.beta != rs.neg(q.alpha) || !rs.is_long(q.alpha) {
            report.mismatch(
                &subject,
                format!(
                    "α = {}, β = {} violates α = −β long",
                    rs.format_root(q.alpha),
                    rs.format_root(q.beta)
                ),
            );
        }
        let long: Vec<usize> = (0..4).filter(|&i| rs.is_long(g[i])).collect();
        if long.len() > 1 {
            report.mismatch(&subject, "more than one long member");
        }
        if let Some(&i0) = long.first() {
            report.bump("long_member", 1);
            if (0..4).any(|j| g[j] != g[i0] && rs.pair(g[i0], g[j]) != 0) {
                report.mismatch(&subject, "long member not orthogonal to the rest");
            }
        } else {
            report.bump("all_short", 1);
            if pairs_to_equal_sums(rs, g) {
                report.bump("balanced_pairs", 1);
            } else {
                report.mismatch(&subject, "all-short configuration without γ1 + γ2 = γ3 + γ4");
            }
        }
        let mut note = format!("α = {}", rs.format_root(q.alpha));
        if !long.is_empty() {
            note.push_str(", long member");
        }
        report.witness(subject, names, note);
    }
    report
}

/// The F4 configuration with a long member: `γ = α1, 1221, 1231, 1232` and
/// `α = θ`.
pub fn f4_long_member_example(rs: &RootSystem) -> Option<Quadruple> {
    let r = |c: &[i32]| rs.root(c);
    Some(Quadruple {
        gammas: [
            r(&[1, 0, 0, 0])?,
            r(&[1, 2, 2, 1])?,
            r(&[1, 2, 3, 1])?,
            r(&[1, 2, 3, 2])?,
        ],
        alpha: r(&[2, 3, 4, 2])?,
        beta: r(&[-2, -3, -4, -2])?,
    })
}

/// Biconvex sets and ideals with pairwise nonnegative pairings.
fn pairing_nonneg_containers(rs: &RootSystem, budget: u128) -> Result<Vec<(String, PosRootSet)>> {
    let mut out: Vec<(String, PosRootSet)> = enumerate_weyl(rs, budget)?
        .iter()
        .filter(|w| weyl::pairing_nonneg(rs, w.inversions()))
        .map(|w| (format!("Φ({})", w.word_string()), w.inversions()))
        .collect();
    out.extend(
        ideals::enumerate_ideals(rs)
            .into_iter()
            .filter(|i| weyl::pairing_nonneg(rs, i.members()))
            .map(|i| (format!("ideal {}", i.describe(rs)), i.members())),
    );
    Ok(out)
}

fn orthogonal_subsets(rs: &RootSystem, members: &[Root], max: usize) -> Vec<Vec<Root>> {
    fn grow(rs: &RootSystem, members: &[Root], from: usize, cur: &mut Vec<Root>, max: usize, out: &mut Vec<Vec<Root>>) {
        if cur.len() >= 3 {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for t in from..members.len() {
            let r = members[t];
            if cur.iter().all(|&c| rs.inner(c, r) == 0) {
                cur.push(r);
                grow(rs, members, t + 1, cur, max, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(rs, members, 0, &mut Vec::new(), max, &mut out);
    out
}

/// Lemma sweep: negative pairings give height ≥ 4; the quadruple conclusions;
/// pairing-nonnegative ideals and biconvex sets contain no orthogonal
/// non-spherical pattern and no configuration with a long member whose half
/// sum is a root.
pub fn verify_lemmas(ctx: &Context<'_>, budget: u128) -> Result<Report> {
    let rs = ctx.rs;
    let mut report = verify_lemma_quadruples(rs);
    report.check = "lemmas".to_string();
    report.declare(&[
        "negative_pairs",
        "containers",
        "orthogonal_subsets",
        "long_half_root_configurations",
    ]);

    let positive: Vec<Root> = rs.positive_roots().collect();
    for (i, &a) in positive.iter().enumerate() {
        for &b in &positive[i + 1..] {
            if rs.pair(a, b) >= 0 {
                continue;
            }
            report.bump("negative_pairs", 1);
            let x = ctx.alg.e(a).add(&ctx.alg.e(b));
            if ctx.alg.height_capped(&x, 4)? < 4 {
                let subject = format!("e_{} + e_{}", rs.format_root(a), rs.format_root(b));
                if rs.cartan_type().is_g2() {
                    // Outside the lemma's hypothesis; recorded, not asserted.
                    report.bump("g2_negative_pairs_spherical", 1);
                    report.witness(subject, roots_strings(rs, &[a, b]), "negative pairing, height ≤ 3");
                } else {
                    report.mismatch(subject, "negative pairing but ad(x)^4 = 0");
                }
            }
        }
    }

    if rs.cartan_type().is_g2() {
        return Ok(report);
    }
    let containers = pairing_nonneg_containers(rs, budget)?;
    report.bump("containers", containers.len());
    let orth: Vec<(String, usize)> = containers
        .par_iter()
        .map(|(name, psi)| {
            let members: Vec<Root> = psi.iter().collect();
            let subsets = orthogonal_subsets(rs, &members, 4);
            let bad = subsets.iter().find_map(|s| {
                match classify_nonspherical_orthogonal(rs, s).unwrap() {
                    OrthogonalPattern::None => None,
                    p => Some(format!("orthogonal pattern {p:?} on {:?}", roots_strings(rs, s))),
                }
            });
            (bad.map(|b| format!("{name}: {b}")).unwrap_or_default(), subsets.len())
        })
        .collect();
    for (bad, n) in orth {
        report.bump("orthogonal_subsets", n);
        if !bad.is_empty() {
            report.mismatch("orthogonal subset", bad);
        }
    }

    let masks: Vec<u128> = containers.iter().map(|(_, p)| p.bits()).collect();
    let mut seen = std::collections::BTreeSet::new();
    for q in lemma_configurations(rs) {
        let g = q.gammas;
        if q.beta != rs.neg(q.alpha) || !g.iter().any(|&r| rs.is_long(r)) || !seen.insert(g) {
            continue;
        }
        report.bump("long_half_root_configurations", 1);
        let mask = g.iter().fold(0u128, |acc, r| acc | 1 << r.index());
        if let Some(t) = masks.iter().position(|m| m & mask == mask) {
            report.mismatch(
                containers[t].0.clone(),
                format!("contains the long-member configuration {:?}", roots_strings(rs, &g)),
            );
        }
    }
    if rs.cartan_type().to_string() == "F4" {
        let ex = f4_long_member_example(rs).expect("F4 roots");
        if !lemma_configurations(rs).contains(&ex) {
            report.mismatch("F4 example", "long-member configuration not found");
        }
    }
    Ok(report)
}

fn element_subject(w: &WeylElement<'_>) -> String {
    w.word_string()
}

/// Per element `w`: non-G2 types require `fc(w) ⟺ 𝔞_w spherical` (and also
/// `commutative ⟺ spherical` when simply laced); G2 requires
/// `commutative(w) ⟺ 𝔞_w spherical`.
pub fn verify_theorem1(ctx: &Context<'_>, budget: u128) -> Result<Report> {
    let rs = ctx.rs;
    let t = rs.cartan_type();
    let elements = enumerate_weyl(rs, budget)?;
    let rows: Vec<(bool, bool, bool, Option<String>)> = elements
        .par_iter()
        .map(|w| {
            let psi = w.inversions();
            let fc = weyl::is_fc_inv(rs, psi);
            let comm = weyl::is_commutative_inv(rs, psi);
            let sph = ctx.oracle.is_spherical(psi);
            let bad = if t.is_g2() {
                comm != sph
            } else {
                fc != sph || (t.is_simply_laced() && comm != sph)
            };
            let detail = bad.then(|| {
                format!("fc = {fc}, commutative = {comm}, spherical = {sph}")
            });
            (fc, comm, sph, detail)
        })
        .collect();
    let mut report = Report::new(t, "theorem1");
    report.declare(&["elements", "fc", "commutative", "spherical"]);
    report.subject_count = elements.len();
    report.bump("elements", elements.len());
    for (w, (fc, comm, sph, detail)) in elements.iter().zip(rows) {
        report.bump("fc", fc as usize);
        report.bump("commutative", comm as usize);
        report.bump("spherical", sph as usize);
        if let Some(d) = detail {
            report.mismatch(element_subject(w), d);
        }
    }
    Ok(report)
}

/// Sphericality against the pairing criterion over all biconvex sets and all
/// ideals. For G2 the criterion is replaced by commutativity (biconvex sets)
/// and abelianness (ideals). With `cross_check = Some((trials, seed))` the
/// sampled height must agree with the deterministic oracle.
pub fn verify_subspace_theorem(ctx: &Context<'_>, budget: u128, cross_check: Option<(usize, u64)>) -> Result<Report> {
    let rs = ctx.rs;
    let t = rs.cartan_type();
    let mut subjects: Vec<(String, PosRootSet, bool)> = enumerate_weyl(rs, budget)?
        .iter()
        .map(|w| {
            let psi = w.inversions();
            let g2_side = weyl::is_commutative_inv(rs, psi);
            (format!("Φ({})", w.word_string()), psi, g2_side)
        })
        .collect();
    for ideal in ideals::enumerate_ideals(rs) {
        subjects.push((format!("ideal {}", ideal.describe(rs)), ideal.members(), ideal.is_abelian(rs)));
    }
    let rows: Vec<(bool, bool, Option<String>)> = subjects
        .par_iter()
        .map(|(_, psi, g2_side)| {
            let sph = ctx.oracle.is_spherical(*psi);
            let pairing = weyl::pairing_nonneg(rs, *psi);
            let expected = if t.is_g2() { *g2_side } else { pairing };
            let mut detail = (expected != sph).then(|| {
                format!("spherical = {sph}, pairing_nonneg = {pairing}")
            });
            if let Some((trials, seed)) = cross_check {
                let h = generic_height(&ctx.alg, *psi, trials, seed);
                if (h <= 3) != sph && detail.is_none() {
                    detail = Some(format!("sampled height {h} disagrees with spherical = {sph}"));
                }
            }
            (sph, pairing, detail)
        })
        .collect();
    let mut report = Report::new(t, "subspaces");
    report.declare(&["subjects", "spherical", "pairing_nonneg"]);
    report.subject_count = subjects.len();
    report.bump("subjects", subjects.len());
    for ((name, _, _), (sph, pairing, detail)) in subjects.iter().zip(rows) {
        report.bump("spherical", sph as usize);
        report.bump("pairing_nonneg", pairing as usize);
        if let Some(d) = detail {
            report.mismatch(name.clone(), d);
        }
    }
    Ok(report)
}

/// For every element, the height component of the generic fingerprint of
/// `𝔞_w` decides sphericality.
pub fn verify_fingerprints(ctx: &Context<'_>, budget: u128, trials: usize, seed: u64) -> Result<Report> {
    let rs = ctx.rs;
    let elements = enumerate_weyl(rs, budget)?;
    let rows: Vec<Fingerprint> = elements
        .par_iter()
        .map(|w| orbit_fingerprint(&ctx.alg, w.inversions(), trials, seed))
        .collect();
    let mut report = Report::new(rs.cartan_type(), "fingerprints");
    report.declare(&["elements", "classes"]);
    report.subject_count = elements.len();
    report.bump("elements", elements.len());
    let mut classes: BTreeMap<Fingerprint, bool> = BTreeMap::new();
    for (w, f) in elements.iter().zip(rows) {
        let sph = ctx.oracle.is_spherical(w.inversions());
        if (f.height <= 3) != sph {
            report.mismatch(element_subject(w), format!("height {} but spherical = {sph}", f.height));
        }
        if let Some(&prev) = classes.get(&f) {
            if prev != sph {
                report.mismatch(element_subject(w), "fingerprint class mixes spherical and non-spherical");
            }
        }
        classes.insert(f, sph);
    }
    report.bump("classes", classes.len());
    Ok(report)
}

/// The G2 statements: sphericality versus commutativity on `W` and on the
/// ideals, the two non-spherical pairs, the one-parameter reduction of
/// `e_{α1} + e_{2α1+α2}` and the `s_2`-conjugation of `{α1+α2, 2α1+α2}`.
pub fn verify_g2(ctx: &Context<'_>) -> Result<Report> {
    use num_rational::BigRational;
    use num_traits::Zero;

    let rs = ctx.rs;
    if !rs.cartan_type().is_g2() {
        return Err(Error::Invalid(format!("{} is not G2", rs.cartan_type())));
    }
    let alg = &ctx.alg;
    let r = |c: &[i32]| rs.root(c).unwrap();
    let (a1, a2) = (r(&[1, 0]), r(&[0, 1]));
    let (g, b, theta) = (r(&[1, 1]), r(&[2, 1]), r(&[3, 2]));

    let mut report = verify_theorem1(ctx, weyl::DEFAULT_BUDGET)?;
    report.check = "g2".to_string();
    let t2 = ideals::verify_theorem2(ctx);
    report.bump("ideals", t2.subject_count);
    report.bump("spherical_ideals", t2.count("spherical"));
    report.mismatches.extend(t2.mismatches);

    let mut check = |name: &str, ok: bool| {
        report.bump("checks", 1);
        if !ok {
            report.mismatch(name.to_string(), "failed");
        }
    };

    let orth = alg.e(a2).add(&alg.e(b));
    check("height(e_a2 + e_2a1+a2) = 4", alg.height(&orth)? == 4);

    let x = alg.e(a1).add(&alg.e(b));
    let series = alg.exp_root_series(g, &x)?;
    let (nga, ngb) = (alg.n(g, a1), alg.n(g, b));
    let q = |v: i64| BigRational::from_integer(v.into());
    let coeff = |k: usize, root: Root| -> BigRational {
        series.get(k).map_or_else(BigRational::zero, |e| e.coeff(alg.e_index(root)).clone())
    };
    // e_{α1} + (1 + N_{γ,α} ξ) e_{2α1+α2} + ½ N_{γ,β} ξ (2 + N_{γ,α} ξ) e_θ
    let poly_ok = series.len() == 3
        && coeff(0, a1) == q(1)
        && coeff(0, b) == q(1)
        && coeff(1, b) == q(nga as i64)
        && coeff(1, theta) == q(ngb as i64)
        && coeff(2, theta) == BigRational::new((ngb * nga).into(), 2.into())
        && series.iter().enumerate().all(|(k, e)| {
            e.coeffs().iter().enumerate().all(|(i, c)| {
                c.is_zero()
                    || (k == 0 && (i == alg.e_index(a1) || i == alg.e_index(b)))
                    || (k == 1 && (i == alg.e_index(b) || i == alg.e_index(theta)))
                    || (k == 2 && i == alg.e_index(theta))
            })
        });
    check("u_γ(ξ) polynomial", poly_ok);

    let xi0 = BigRational::new(BigInt::from(-1), nga.into());
    let y = alg.exp_root_action(g, &xi0, &x)?;
    let c = y.coeff(alg.e_index(theta)).clone();
    let reduced_ok = !c.is_zero() && y == alg.e(a1).add(&alg.e(theta).scale(&c));
    check("ξ0 reaches e_a1 + c e_θ", reduced_ok);
    check("e_a1 + c e_θ is not spherical", alg.height(&y)? >= 4);
    check("e_a1 + e_2a1+a2 is not spherical", alg.height(&x)? >= 4);
    check("orthogonality of α1 and θ", rs.inner(a1, theta) == 0);
    check(
        "s_2 maps {α1+α2, 2α1+α2} to {α1, 2α1+α2}",
        rs.reflect_simple(2, g) == a1 && rs.reflect_simple(2, b) == b,
    );

    let psi0 = PosRootSet::from_roots(rs.num_positive(), [b, r(&[3, 1]), theta]);
    check("Ψ0 spherical", ctx.oracle.is_spherical(psi0));
    let commutative_top = WeylElement::from_word(rs, &[2, 1, 2])?;
    let s121 = WeylElement::from_word(rs, &[1, 2, 1])?;
    let s1212 = WeylElement::from_word(rs, &[1, 2, 1, 2])?;
    let mut dichotomy = true;
    for w in enumerate_weyl(rs, weyl::DEFAULT_BUDGET)? {
        let commutative = w.bruhat_leq(&commutative_top)?;
        if commutative != weyl::is_commutative_inv(rs, w.inversions()) {
            dichotomy = false;
        }
        if !commutative && !(s121.weak_leq(&w)? || s1212.weak_leq(&w)?) {
            dichotomy = false;
        }
        if (w.length() <= 5) != weyl::is_fc_inv(rs, w.inversions()) {
            dichotomy = false;
        }
    }
    check("commutative ⟺ w ≤ s2s1s2, with the weak-order dichotomy", dichotomy);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    fn set(rs: &RootSystem, roots: &[&[i32]]) -> PosRootSet {
        PosRootSet::from_roots(rs.num_positive(), roots.iter().map(|c| rs.root(c).unwrap()))
    }

    #[test]
    fn g2_examples() {
        let rs = sys("G2");
        let ctx = Context::new(&rs);
        let psi0 = set(&rs, &[&[2, 1], &[3, 1], &[3, 2]]);
        assert!(is_spherical_subspace(&ctx.alg, psi0));
        assert!(ctx.oracle.is_spherical(psi0));
        let s121 = set(&rs, &[&[1, 0], &[2, 1], &[3, 1]]);
        assert!(!is_spherical_subspace(&ctx.alg, s121));
        assert!(!ctx.oracle.is_spherical(s121));
        assert_eq!(
            s121,
            WeylElement::from_word(&rs, &[1, 2, 1]).unwrap().inversions()
        );
        assert!(ctx.oracle.is_spherical(set(&rs, &[&[1, 0]])));
    }

    #[test]
    fn negative_pairing_pairs_are_not_spherical() {
        for t in ["A2", "B2", "C3", "G2"] {
            let rs = sys(t);
            let alg = ChevalleyAlgebra::new(&rs);
            let mut exceptions = Vec::new();
            for a in rs.positive_roots() {
                for b in rs.positive_roots() {
                    if rs.pair(a, b) < 0 {
                        let psi = PosRootSet::from_roots(rs.num_positive(), [a, b]);
                        if is_spherical_subspace(&alg, psi) {
                            exceptions.push(psi);
                        }
                    }
                }
            }
            if t == "G2" {
                // The short pair α1, α1+α2 spans a spherical subspace.
                let pair = PosRootSet::from_roots(6, [rs.root(&[1, 0]).unwrap(), rs.root(&[1, 1]).unwrap()]);
                assert_eq!(exceptions, vec![pair, pair]);
            } else {
                assert!(exceptions.is_empty(), "{t}");
            }
        }
    }

    #[test]
    fn oracle_matches_direct_and_literal_polarization() {
        for t in ["A2", "B2", "G2", "A3", "B3"] {
            let rs = sys(t);
            let ctx = Context::new(&rs);
            for w in enumerate_weyl(&rs, 10_000).unwrap() {
                let psi = w.inversions();
                let direct = is_spherical_subspace(&ctx.alg, psi);
                assert_eq!(ctx.oracle.is_spherical(psi), direct, "{t} {w}");
                let members: Vec<Root> = psi.iter().collect();
                let literal = subsets_upto4(&members)
                    .iter()
                    .all(|g| p_gamma_vanishes(&ctx.alg, g));
                assert_eq!(literal, direct, "{t} {w}");
            }
        }
    }

    fn subsets_upto4(m: &[Root]) -> Vec<Vec<Root>> {
        let mut out = Vec::new();
        for mask in 1u32..(1 << m.len()) {
            if mask.count_ones() <= 4 {
                out.push((0..m.len()).filter(|i| mask >> i & 1 == 1).map(|i| m[i]).collect());
            }
        }
        out
    }

    #[test]
    fn generic_height_examples() {
        let rs = sys("A2");
        let alg = ChevalleyAlgebra::new(&rs);
        assert_eq!(generic_height(&alg, rs.full_set(), 3, 0), 4);
        assert_eq!(generic_height(&alg, set(&rs, &[&[1, 1]]), 1, 7), 2);
        let g2 = sys("G2");
        let alg = ChevalleyAlgebra::new(&g2);
        let psi0 = set(&g2, &[&[2, 1], &[3, 1], &[3, 2]]);
        assert!(generic_height(&alg, psi0, DEFAULT_TRIALS, 0) <= 3);
        let h1 = generic_height(&alg, g2.full_set(), 1, 3);
        assert!(generic_height(&alg, g2.full_set(), 4, 3) >= h1);
    }

    #[test]
    fn fingerprint_examples() {
        let g2 = sys("G2");
        let alg = ChevalleyAlgebra::new(&g2);
        let empty = orbit_fingerprint(&alg, g2.empty_set(), 2, 0);
        assert_eq!(empty, Fingerprint { orbit_dimension: 0, height: 0, ranks: vec![] });
        let top = orbit_fingerprint(&alg, set(&g2, &[&[3, 2]]), 2, 0);
        assert_eq!(top.orbit_dimension, 6);
        assert_eq!(top.height, 2);
        let a2 = sys("A2");
        let alg = ChevalleyAlgebra::new(&a2);
        let reg = orbit_fingerprint(&alg, a2.full_set(), 3, 1);
        assert_eq!(reg.orbit_dimension, 6);
        assert_eq!(reg, orbit_fingerprint(&alg, a2.full_set(), 3, 1));
    }

    #[test]
    fn strong_orthogonality() {
        let g2 = sys("G2");
        let r = |c: &[i32]| g2.root(c).unwrap();
        assert!(strongly_orthogonal(&g2, r(&[0, 1]), r(&[2, 1])).unwrap());
        let b2 = sys("B2");
        let r2 = |c: &[i32]| b2.root(c).unwrap();
        assert!(!strongly_orthogonal(&b2, r2(&[0, 1]), r2(&[1, 1])).unwrap());
        assert_eq!(
            strongly_orthogonal(&b2, r2(&[0, 1]), r2(&[0, -1])),
            Err(Error::Proportional)
        );
    }

    #[test]
    fn orthogonal_patterns() {
        use crate::model::from_epsilon;
        let b3 = sys("B3");
        let e = |rs: &RootSystem, v: &[i32]| from_epsilon(rs, v).unwrap();
        let g = [e(&b3, &[1, 1, 0]), e(&b3, &[1, -1, 0]), e(&b3, &[0, 0, 1])];
        assert_eq!(classify_nonspherical_orthogonal(&b3, &g).unwrap(), OrthogonalPattern::B3);
        let d4 = sys("D4");
        let g = [
            e(&d4, &[1, 1, 0, 0]),
            e(&d4, &[1, -1, 0, 0]),
            e(&d4, &[0, 0, 1, 1]),
            e(&d4, &[0, 0, 1, -1]),
        ];
        assert_eq!(classify_nonspherical_orthogonal(&d4, &g).unwrap(), OrthogonalPattern::D4);
        assert_eq!(classify_nonspherical_orthogonal(&d4, &g[..1]).unwrap(), OrthogonalPattern::None);
        // The long roots 2ε_i of C4 span a C4, not a B4 or F4.
        let c4 = sys("C4");
        let g: Vec<Root> = (0..4)
            .map(|i| {
                let mut v = [0; 4];
                v[i] = 2;
                e(&c4, &v)
            })
            .collect();
        assert_eq!(classify_nonspherical_orthogonal(&c4, &g).unwrap(), OrthogonalPattern::None);
        let psi = PosRootSet::from_roots(c4.num_positive(), g.iter().copied());
        assert!(is_spherical_subspace(&ChevalleyAlgebra::new(&c4), psi));
        let non = [e(&d4, &[1, 1, 0, 0]), e(&d4, &[1, 0, 1, 0])];
        assert_eq!(classify_nonspherical_orthogonal(&d4, &non), Err(Error::NotOrthogonal));
    }

    #[test]
    fn f4_long_member_configuration() {
        let f4 = sys("F4");
        let ex = f4_long_member_example(&f4).unwrap();
        assert_eq!(multiset_sum(&f4, &ex.gammas), vec![4, 6, 8, 4]);
        assert!(f4.is_long(ex.gammas[0]));
        assert!(ex.gammas[1..].iter().all(|&g| f4.is_short(g) && f4.pair(ex.gammas[0], g) == 0));
        assert!(lemma_configurations(&f4).contains(&ex));
        let rep = verify_lemma_quadruples(&f4);
        assert!(rep.is_success());
        assert!(rep.witnesses.iter().any(|w| w.roots == vec!["a1", "a1+2a2+2a3+a4", "a1+2a2+3a3+a4", "a1+2a2+3a3+2a4"]));
    }

    #[test]
    fn quadruple_counts_follow_lacing() {
        assert_eq!(lemma_configurations(&sys("A3")).len(), 0);
        let rep = verify_lemma_quadruples(&sys("C3"));
        assert!(rep.is_success(), "{:?}", rep.mismatches);
        assert!(rep.count("configurations") > 0);
    }

    #[test]
    fn lemmas_in_rank_three() {
        for t in ["A3", "B3", "C3"] {
            let rs = sys(t);
            let ctx = Context::new(&rs);
            let rep = verify_lemmas(&ctx, weyl::DEFAULT_BUDGET).unwrap();
            assert!(rep.is_success(), "{t}: {:?}", rep.mismatches);
            assert!(rep.count("negative_pairs") > 0);
        }
    }

    #[test]
    fn theorem1_small_types() {
        let expect = [("A2", 6, 5), ("B2", 8, 7), ("A3", 24, 14)];
        for (t, n, fc) in expect {
            let rs = sys(t);
            let ctx = Context::new(&rs);
            let rep = verify_theorem1(&ctx, weyl::DEFAULT_BUDGET).unwrap();
            assert!(rep.is_success(), "{t}: {:?}", rep.mismatches);
            assert_eq!(rep.count("elements"), n);
            assert_eq!(rep.count("fc"), fc);
            assert_eq!(rep.count("spherical"), fc);
        }
        let g2 = sys("G2");
        let rep = verify_theorem1(&Context::new(&g2), weyl::DEFAULT_BUDGET).unwrap();
        assert!(rep.is_success());
        assert_eq!(rep.count("commutative"), 6);
        assert_eq!(rep.count("spherical"), 6);
        assert_eq!(rep.count("fc"), 11);
    }

    #[test]
    fn g2_verifier_passes() {
        let rs = sys("G2");
        let rep = verify_g2(&Context::new(&rs)).unwrap();
        assert!(rep.is_success(), "{:?}", rep.mismatches);
        assert_eq!(rep.count("ideals"), 8);
        assert_eq!(rep.count("spherical_ideals"), 4);
        assert!(verify_g2(&Context::new(&sys("B2"))).is_err());
    }
}
