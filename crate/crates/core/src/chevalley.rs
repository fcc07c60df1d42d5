//! Chevalley bases with integral structure constants.
//!
//! Basis order: `e_α` for every root in root-index order, then `h_1 … h_r`.
//! Signs are fixed by extraspecial pairs: for each non-simple positive `ξ` one
//! special pair `(α, β)` with `α + β = ξ` gets `N_{α,β} = ±(p + 1)` and every
//! other constant follows from the standard identities, with
//! `N_{−α,−β} = −N_{α,β}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::roots::{Root, RootSystem};
use crate::rootset::PosRootSet;

/// Choice of extraspecial pairs and their signs. Both give isomorphic
/// algebras; heights and the vanishing of polarizations agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    /// First root of each extraspecial pair is the earliest in root order and
    /// `N_{α,β} = p + 1`.
    #[default]
    Standard,
    /// First root is the latest admissible one and the sign alternates with the
    /// height of `ξ`.
    Alternate,
}

/// A vector of the Lie algebra in the Chevalley basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    coeffs: Vec<BigRational>,
}

impl LieElement {
    pub fn zero(dim: usize) -> Self {
        LieElement {
            coeffs: vec![BigRational::zero(); dim],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        LieElement { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        LieElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> LieElement {
        LieElement {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    fn add_basis(&mut self, i: usize, c: BigRational) {
        self.coeffs[i] += c;
    }
}

/// An element `x = Σ c_α e_α` of `𝔫` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NilpotentElement {
    coeffs: BTreeMap<Root, BigRational>,
}

impl NilpotentElement {
    pub fn new<I>(rs: &RootSystem, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Root, BigRational)>,
    {
        let mut coeffs: BTreeMap<Root, BigRational> = BTreeMap::new();
        for (r, c) in terms {
            rs.check(r)?;
            if !rs.is_positive(r) {
                return Err(Error::NotNilpotentSupport);
            }
            *coeffs.entry(r).or_insert_with(BigRational::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(NilpotentElement { coeffs })
    }

    /// Sum of root vectors with integer coefficients.
    pub fn from_ints(rs: &RootSystem, terms: &[(Root, i64)]) -> Result<Self> {
        Self::new(
            rs,
            terms
                .iter()
                .map(|&(r, c)| (r, BigRational::from_integer(c.into()))),
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (Root, &BigRational)> {
        self.coeffs.iter().map(|(r, c)| (*r, c))
    }

    /// `supp(x) = {α ∈ Φ^+ | c_α ≠ 0}`.
    pub fn support(&self, rs: &RootSystem) -> PosRootSet {
        PosRootSet::from_roots(rs.num_positive(), self.coeffs.keys().copied())
    }
}

/// One nonzero structure constant `[e_α, e_β] = n e_{α+β}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstant {
    pub alpha: Vec<i32>,
    pub beta: Vec<i32>,
    pub n: i32,
}

type Sparse = Vec<(usize, i32)>;

pub struct ChevalleyAlgebra<'a> {
    rs: &'a RootSystem,
    convention: SignConvention,
    nroots: usize,
    n_table: Vec<i32>,
    coroots: Vec<Vec<i32>>,
    brackets: Vec<Sparse>,
}

impl<'a> ChevalleyAlgebra<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        Self::with_convention(rs, SignConvention::Standard)
    }

    pub fn with_convention(rs: &'a RootSystem, convention: SignConvention) -> Self {
        let nroots = rs.num_roots();
        let n_table = structure_constants(rs, convention);
        let coroots: Vec<Vec<i32>> = rs
            .roots()
            .map(|a| {
                (0..rs.rank())
                    .map(|i| {
                        let num = rs.coords(a)[i] * rs.gram()[i][i];
                        debug_assert_eq!(num % rs.norm(a), 0);
                        num / rs.norm(a)
                    })
                    .collect()
            })
            .collect();
        let mut alg = ChevalleyAlgebra {
            rs,
            convention,
            nroots,
            n_table,
            coroots,
            brackets: Vec::new(),
        };
        let dim = alg.dim();
        let mut brackets = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                brackets.push(alg.compute_basis_bracket(i, j));
            }
        }
        alg.brackets = brackets;
        alg
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn convention(&self) -> SignConvention {
        self.convention
    }

    /// `|Φ| + rank`.
    pub fn dim(&self) -> usize {
        self.nroots + self.rs.rank()
    }

    /// Basis index of `e_α`.
    pub fn e_index(&self, r: Root) -> usize {
        r.index()
    }

    /// Basis index of `h_i`, `i` in `1..=rank`.
    pub fn h_index(&self, i: usize) -> usize {
        self.nroots + i - 1
    }

    /// `N_{α,β}`, zero when `α + β` is not a root.
    pub fn n(&self, a: Root, b: Root) -> i32 {
        self.n_table[a.index() * self.nroots + b.index()]
    }

    /// Coefficients of `h_α = [e_α, e_{−α}]` over `h_1 … h_r`.
    pub fn coroot(&self, a: Root) -> &[i32] {
        &self.coroots[a.index()]
    }

    fn compute_basis_bracket(&self, i: usize, j: usize) -> Sparse {
        let rs = self.rs;
        match (i < self.nroots, j < self.nroots) {
            (true, true) => {
                let (a, b) = (Root::from_index(i), Root::from_index(j));
                if b == rs.neg(a) {
                    self.coroots[i]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(k, &c)| (self.nroots + k, c))
                        .collect()
                } else if let Some(s) = rs.sum(a, b) {
                    vec![(s.index(), self.n(a, b))]
                } else {
                    Vec::new()
                }
            }
            (false, true) => {
                let hi = Root::from_index(i - self.nroots);
                let c = rs.pair(Root::from_index(j), hi);
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(j, c)]
                }
            }
            (true, false) => {
                let hj = Root::from_index(j - self.nroots);
                let c = -rs.pair(Root::from_index(i), hj);
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(i, c)]
                }
            }
            (false, false) => Vec::new(),
        }
    }

    /// `[b_i, b_j]` on basis indices.
    #[inline]
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, i32)] {
        &self.brackets[i * self.dim() + j]
    }

    fn check_dim(&self, x: &LieElement) -> Result<()> {
        if x.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::Invalid(format!(
                "element of dimension {} used with an algebra of dimension {}",
                x.dim(),
                self.dim()
            )))
        }
    }

    pub fn e(&self, r: Root) -> LieElement {
        let mut x = LieElement::zero(self.dim());
        x.add_basis(self.e_index(r), BigRational::one());
        x
    }

    pub fn h(&self, i: usize) -> LieElement {
        let mut x = LieElement::zero(self.dim());
        x.add_basis(self.h_index(i), BigRational::one());
        x
    }

    pub fn embed(&self, x: &NilpotentElement) -> LieElement {
        let mut y = LieElement::zero(self.dim());
        for (r, c) in x.terms() {
            y.add_basis(self.e_index(r), c.clone());
        }
        y
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let mut out = LieElement::zero(self.dim());
        for (i, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for &(k, n) in self.basis_bracket(i, j) {
                    out.add_basis(k, &ab * BigRational::from_integer(n.into()));
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad x` (column `j` holds `[x, b_j]`).
    pub fn ad_matrix(&self, x: &LieElement) -> Result<Vec<Vec<BigRational>>> {
        self.check_dim(x)?;
        let dim = self.dim();
        let mut m = vec![vec![BigRational::zero(); dim]; dim];
        for (i, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..dim {
                for &(k, n) in self.basis_bracket(i, j) {
                    m[k][j] += a * BigRational::from_integer(n.into());
                }
            }
        }
        Ok(m)
    }

    /// Integral sparse columns of `ad(λx)` where `λ` clears denominators.
    fn integral_ad_columns(&self, x: &LieElement) -> Vec<Vec<(usize, BigInt)>> {
        let denom = x
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<(usize, BigInt)> = x
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, (c * BigRational::from_integer(denom.clone())).to_integer()))
            .collect();
        let dim = self.dim();
        (0..dim)
            .map(|j| {
                let mut col: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (i, a) in &ints {
                    for &(k, n) in self.basis_bracket(*i, j) {
                        *col.entry(k).or_insert_with(BigInt::zero) += a * n;
                    }
                }
                col.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect()
    }

    /// Nonzero columns of `A^k` for `k = 1, 2, …` until `A^k = 0` or `cap`.
    fn power_columns<F>(&self, x: &LieElement, cap: usize, mut each: F)
    where
        F: FnMut(usize, &[Vec<BigInt>]) -> bool,
    {
        let cols = self.integral_ad_columns(x);
        let dim = self.dim();
        let mut current: Vec<Vec<BigInt>> = cols
            .iter()
            .filter(|c| !c.is_empty())
            .map(|c| {
                let mut v = vec![BigInt::zero(); dim];
                for (k, a) in c {
                    v[*k] = a.clone();
                }
                v
            })
            .collect();
        let mut k = 1;
        while !current.is_empty() && k <= cap {
            if !each(k, &current) {
                return;
            }
            if k == cap {
                return;
            }
            current = current
                .iter()
                .map(|v| {
                    let mut out = vec![BigInt::zero(); dim];
                    for (m, vm) in v.iter().enumerate() {
                        if vm.is_zero() {
                            continue;
                        }
                        for (t, a) in &cols[m] {
                            out[*t] += vm * a;
                        }
                    }
                    out
                })
                .filter(|v| v.iter().any(|c| !c.is_zero()))
                .collect();
            k += 1;
        }
    }

    /// `max{n | ad(x)^n ≠ 0}`, with `height(0) = 0`.
    pub fn height(&self, x: &LieElement) -> Result<usize> {
        self.height_capped(x, usize::MAX)
    }

    /// `min(height(x), cap)`; `cap = 4` decides `ad(x)^4 = 0`.
    pub fn height_capped(&self, x: &LieElement, cap: usize) -> Result<usize> {
        self.check_dim(x)?;
        let mut h = 0;
        self.power_columns(x, cap, |k, _| {
            h = k;
            true
        });
        Ok(h)
    }

    pub fn nilpotent_height(&self, x: &NilpotentElement) -> usize {
        self.height(&self.embed(x)).unwrap()
    }

    /// Ranks of `ad(x)^k` for `k = 1 … height(x)`.
    pub fn power_ranks(&self, x: &LieElement) -> Result<Vec<usize>> {
        self.check_dim(x)?;
        let mut ranks = Vec::new();
        self.power_columns(x, usize::MAX, |_, cols| {
            ranks.push(linalg::rank(cols.to_vec()));
            true
        });
        Ok(ranks)
    }

    /// `u_a(ξ).x = Σ_k ξ^k/k! ad(e_a)^k x`.
    pub fn exp_root_action(&self, a: Root, xi: &BigRational, x: &LieElement) -> Result<LieElement> {
        let series = self.exp_root_series(a, x)?;
        let mut out = LieElement::zero(self.dim());
        let mut power = BigRational::one();
        for term in &series {
            out = out.add(&term.scale(&power));
            power *= xi;
        }
        Ok(out)
    }

    /// Coefficients of `u_a(ξ).x` as a polynomial in `ξ`: entry `k` is
    /// `ad(e_a)^k x / k!`.
    pub fn exp_root_series(&self, a: Root, x: &LieElement) -> Result<Vec<LieElement>> {
        self.check_dim(x)?;
        self.rs.check(a)?;
        let ea = self.e(a);
        let mut out = vec![x.clone()];
        let mut term = x.clone();
        let mut k = 1i64;
        loop {
            term = self
                .bracket(&ea, &term)?
                .scale(&BigRational::new(BigInt::one(), k.into()));
            if term.is_zero() {
                break;
            }
            out.push(term.clone());
            k += 1;
        }
        Ok(out)
    }

    /// All nonzero `N_{α,β}` in root-index order.
    pub fn structure_constants(&self) -> Vec<StructureConstant> {
        let mut out = Vec::new();
        for a in self.rs.roots() {
            for b in self.rs.roots() {
                let n = self.n(a, b);
                if n != 0 {
                    out.push(StructureConstant {
                        alpha: self.rs.coords(a).to_vec(),
                        beta: self.rs.coords(b).to_vec(),
                        n,
                    });
                }
            }
        }
        out
    }
}

fn structure_constants(rs: &RootSystem, convention: SignConvention) -> Vec<i32> {
    let n = rs.num_roots();
    let npos = rs.num_positive();
    let mut table = vec![0i32; n * n];

    for xi in rs.positive_roots() {
        let special: Vec<Root> = rs
            .positive_roots()
            .filter(|&r| {
                rs.difference(xi, r)
                    .is_some_and(|s| rs.is_positive(s) && r.index() < s.index())
            })
            .collect();
        if special.is_empty() {
            continue;
        }
        let a = match convention {
            SignConvention::Standard => special[0],
            SignConvention::Alternate => *special.last().unwrap(),
        };
        let b = rs.difference(xi, a).unwrap();
        let p = rs.root_string_p(a, b).unwrap() as i32;
        let sign = match convention {
            SignConvention::Standard => 1,
            SignConvention::Alternate if rs.height(xi) % 2 == 0 => -1,
            SignConvention::Alternate => 1,
        };
        let nab = sign * (p + 1);
        set_pair(&mut table, n, npos, a, b, nab);

        let xi_norm = rs.norm(xi);
        for r in rs.positive_roots() {
            let Some(s) = rs.difference(xi, r) else {
                continue;
            };
            if !rs.is_positive(s) || r.index() > s.index() || r == a {
                continue;
            }
            // Four-root identity applied to r, s, −a, −b.
            let mut acc = BigRational::zero();
            let na = rs.neg(a);
            let nb = rs.neg(b);
            if let Some(sa) = rs.sum(s, na) {
                let num = lookup(rs, &table, s, na) * lookup(rs, &table, r, nb);
                acc += BigRational::new(num.into(), rs.norm(sa).into());
            }
            if let Some(ra) = rs.sum(r, na) {
                let num = lookup(rs, &table, na, r) * lookup(rs, &table, s, nb);
                acc += BigRational::new(num.into(), rs.norm(ra).into());
            }
            let val = acc * BigRational::new(xi_norm.into(), nab.into());
            assert!(val.is_integer(), "non-integral structure constant");
            let v: i32 = val.to_integer().try_into().unwrap();
            set_pair(&mut table, n, npos, r, s, v);
        }
    }

    for r in rs.roots() {
        for s in rs.roots() {
            if rs.is_positive(r) == rs.is_positive(s) || rs.sum(r, s).is_none() {
                continue;
            }
            table[r.index() * n + s.index()] = lookup(rs, &table, r, s);
        }
    }
    table
}

/// Records `N_{a,b} = v` for positive `a, b` with the antisymmetric and
/// negated entries.
fn set_pair(table: &mut [i32], n: usize, npos: usize, a: Root, b: Root, v: i32) {
    let (a, b) = (a.index(), b.index());
    table[a * n + b] = v;
    table[b * n + a] = -v;
    table[(a + npos) * n + b + npos] = -v;
    table[(b + npos) * n + a + npos] = v;
}

/// `N_{r,s}` reduced to a same-sign pair through `N_{r,s}/(t,t) = N_{s,t}/(r,r)
/// = N_{t,r}/(s,s)` for `r + s + t = 0`.
fn lookup(rs: &RootSystem, table: &[i32], r: Root, s: Root) -> i32 {
    let n = rs.num_roots();
    let Some(sum) = rs.sum(r, s) else {
        return 0;
    };
    if rs.is_positive(r) == rs.is_positive(s) {
        return table[r.index() * n + s.index()];
    }
    let t = rs.neg(sum);
    let (num, den, known) = if rs.is_positive(t) == rs.is_positive(r) {
        // N_{r,s} = (t,t)/(s,s) · N_{t,r}
        (rs.norm(t), rs.norm(s), table[t.index() * n + r.index()])
    } else {
        // N_{r,s} = (t,t)/(r,r) · N_{s,t}
        (rs.norm(t), rs.norm(r), table[s.index() * n + t.index()])
    };
    debug_assert_ne!(known, 0);
    let v = known * num;
    debug_assert_eq!(v % den, 0);
    v / den
}

/// `Σ c_α e_α` with integer coefficients.
pub fn element_from_ints(alg: &ChevalleyAlgebra<'_>, terms: &[(Root, BigInt)]) -> LieElement {
    let mut x = LieElement::zero(alg.dim());
    for (r, c) in terms {
        x.add_basis(alg.e_index(*r), BigRational::from_integer(c.clone()));
    }
    x
}
