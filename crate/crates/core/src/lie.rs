//! Simple factors, highest weights and the Weyl dimension formula.
//!
//! Every simple factor is described by its Cartan type `(family, rank)` with
//! Bourbaki node labelling. Irreducible representations are given by their
//! highest weight in fundamental-weight coordinates; their dimensions are
//! computed exactly with
//!
//! ```text
//! dim V(λ) = ∏_{α > 0} ⟨λ + ρ, α^∨⟩ / ⟨ρ, α^∨⟩
//! ```
//!
//! over the positive coroots of the factor. Since `⟨ω_i, α_j^∨⟩ = δ_ij`, a
//! coroot `α^∨ = Σ c_i α_i^∨` contributes `Σ c_i (m_i + 1)` to the numerator
//! and `Σ c_i` to the denominator.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank of a non-`A` factor. Their positive-root tables grow
/// quadratically and nothing in the castling calculus enlarges them.
pub const MAX_CLASSICAL_RANK: u64 = 64;

/// Above this rank, `A`-type dimensions use the hook-content formula instead
/// of the coroot table.
const A_ROOT_TABLE_RANK: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl Family {
    pub fn fixed_rank(self) -> Option<u64> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 => Some(4),
            Family::G2 => Some(2),
            _ => None,
        }
    }

    pub fn min_rank(self) -> u64 {
        match self {
            Family::A | Family::C => 1,
            Family::B => 2,
            Family::D => 3,
            f => f.fixed_rank().unwrap(),
        }
    }
}

/// One simple factor of a reductive group, as a root datum `(family, rank)`.
///
/// `A_n` is `SL_{n+1}`, `B_n` is `Spin_{2n+1}`, `C_n` is `Sp_n` (standard
/// representation of dimension `2n`) and `D_n` is `Spin_{2n}`. Isogeny is
/// ignored throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SimpleFactor {
    family: Family,
    rank: u64,
}

impl SimpleFactor {
    pub fn new(family: Family, rank: u64) -> Result<Self> {
        if let Some(expected) = family.fixed_rank() {
            if rank != expected {
                return Err(Error::FixedRank {
                    family,
                    rank,
                    expected,
                });
            }
        }
        let min = family.min_rank();
        if rank < min {
            return Err(Error::RankTooSmall { family, rank, min });
        }
        if family != Family::A && rank > MAX_CLASSICAL_RANK {
            return Err(Error::RankTooLarge {
                family,
                rank,
                max: MAX_CLASSICAL_RANK,
            });
        }
        Ok(SimpleFactor { family, rank })
    }

    /// `SL_n` for `n ≥ 2`.
    pub fn sl(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall {
                family: Family::A,
                rank: n.saturating_sub(1),
                min: 1,
            });
        }
        SimpleFactor::new(Family::A, n - 1)
    }

    /// `Sp_n`, the symplectic group of `C^{2n}`.
    pub fn sp(n: u64) -> Result<Self> {
        SimpleFactor::new(Family::C, n)
    }

    /// `SO_n` / `Spin_n`: odd `n` gives `B_{(n-1)/2}`, even `n` gives `D_{n/2}`.
    pub fn spin(n: u64) -> Result<Self> {
        if n % 2 == 1 {
            SimpleFactor::new(Family::B, (n - 1) / 2)
        } else {
            SimpleFactor::new(Family::D, n / 2)
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    /// `n` for `SL_n`, `None` for other families.
    pub fn sl_degree(&self) -> Option<u64> {
        (self.family == Family::A).then_some(self.rank + 1)
    }

    pub fn is_type_a(&self) -> bool {
        self.family == Family::A
    }

    /// Dimension of the group.
    pub fn dim(&self) -> BigUint {
        let n = BigUint::from(self.rank);
        match self.family {
            Family::A => &n * (&n + 2u32),
            Family::B | Family::C => &n * (&n * 2u32 + 1u32),
            Family::D => &n * (&n * 2u32 - 1u32),
            Family::G2 => BigUint::from(14u32),
            Family::F4 => BigUint::from(52u32),
            Family::E6 => BigUint::from(78u32),
            Family::E7 => BigUint::from(133u32),
            Family::E8 => BigUint::from(248u32),
        }
    }

    /// Whether the Dynkin diagram has a (non-identity) automorphism that we
    /// act with: `A_n` for `n ≥ 2`, `D_n`, and `E6`.
    pub fn has_diagram_automorphism(&self) -> bool {
        match self.family {
            Family::A => self.rank >= 2,
            Family::D | Family::E6 => true,
            _ => false,
        }
    }

    /// Image of the 0-based node `i` under the diagram automorphism.
    pub fn automorphism_node(&self, i: u64) -> u64 {
        let r = self.rank;
        match self.family {
            Family::A => r - 1 - i,
            Family::D if i + 2 == r => r - 1,
            Family::D if i + 1 == r => r - 2,
            Family::E6 => [5, 1, 4, 3, 2, 0][i as usize],
            _ => i,
        }
    }

    /// The weight of the dual representation.
    pub fn dual_weight(&self, w: &HighestWeight) -> HighestWeight {
        if !self.has_diagram_automorphism() {
            return w.clone();
        }
        let mut terms: Vec<(u64, u32)> = w
            .terms
            .iter()
            .map(|&(i, c)| (self.automorphism_node(i), c))
            .collect();
        terms.sort_unstable();
        HighestWeight {
            rank: w.rank,
            terms,
        }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "SL{}", self.rank + 1),
            Family::B => write!(f, "Spin{}", 2 * self.rank + 1),
            Family::C => write!(f, "Sp{}", self.rank),
            Family::D => write!(f, "Spin{}", 2 * self.rank),
            fam => write!(f, "{fam:?}"),
        }
    }
}

/// A dominant weight `Σ m_i ω_i`, stored sparsely.
///
/// Castling produces factors like `SL_17291` acting by `ω_1`, so only the
/// nonzero coordinates are kept. Node indices are 0-based internally; the
/// textual form `w1` refers to node 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HighestWeight {
    rank: u64,
    terms: Vec<(u64, u32)>,
}

impl HighestWeight {
    /// The trivial representation.
    pub fn zero(rank: u64) -> Self {
        HighestWeight {
            rank,
            terms: Vec::new(),
        }
    }

    /// `ω_i`, with `i` 1-based.
    pub fn fundamental(rank: u64, i: u64) -> Result<Self> {
        HighestWeight::from_terms(rank, [(i - 1, 1)])
    }

    pub fn from_coefficients(coefficients: &[u32]) -> Self {
        HighestWeight {
            rank: coefficients.len() as u64,
            terms: coefficients
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i as u64, c))
                .collect(),
        }
    }

    /// Builds from 0-based `(node, coefficient)` pairs; repeated nodes add up.
    pub fn from_terms(rank: u64, terms: impl IntoIterator<Item = (u64, u32)>) -> Result<Self> {
        let mut acc: Vec<(u64, u32)> = Vec::new();
        for (i, c) in terms {
            if i >= rank {
                return Err(Error::WeightLength {
                    expected: rank,
                    got: i + 1,
                });
            }
            acc.push((i, c));
        }
        acc.sort_unstable();
        let mut merged: Vec<(u64, u32)> = Vec::with_capacity(acc.len());
        for (i, c) in acc {
            match merged.last_mut() {
                Some(last) if last.0 == i => last.1 += c,
                _ => merged.push((i, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0);
        Ok(HighestWeight {
            rank,
            terms: merged,
        })
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    /// Nonzero `(node, coefficient)` pairs in node order, 0-based.
    pub fn terms(&self) -> &[(u64, u32)] {
        &self.terms
    }

    pub fn coefficient(&self, i: u64) -> u32 {
        self.terms
            .iter()
            .find(|&&(j, _)| j == i)
            .map_or(0, |&(_, c)| c)
    }

    pub fn to_coefficients(&self) -> Vec<u32> {
        let mut out = vec![0; self.rank as usize];
        for &(i, c) in &self.terms {
            out[i as usize] = c;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for `ω_i` (1-based).
    pub fn is_fundamental(&self, i: u64) -> bool {
        self.terms.len() == 1 && self.terms[0] == (i - 1, 1)
    }

    pub fn coefficient_sum(&self) -> u64 {
        self.terms.iter().map(|&(_, c)| c as u64).sum()
    }
}

/// Cartan matrix with entries `a_ij = 2(α_i, α_j) / (α_i, α_i)`, Bourbaki
/// labelling, 0-based.
pub fn cartan_matrix(f: &SimpleFactor) -> Vec<Vec<i64>> {
    let r = f.rank as usize;
    let mut a = vec![vec![0i64; r]; r];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match f.family {
        Family::A => (1..r).for_each(|i| link(i - 1, i, -1, -1)),
        Family::B | Family::C if r == 1 => {}
        Family::B => {
            (1..r - 1).for_each(|i| link(i - 1, i, -1, -1));
            link(r - 2, r - 1, -1, -2);
        }
        Family::C => {
            (1..r - 1).for_each(|i| link(i - 1, i, -1, -1));
            link(r - 2, r - 1, -2, -1);
        }
        Family::D => {
            (1..r - 1).for_each(|i| link(i - 1, i, -1, -1));
            link(r - 3, r - 1, -1, -1);
        }
        Family::E6 | Family::E7 | Family::E8 => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            (3..r).for_each(|i| link(i - 1, i, -1, -1));
        }
        Family::F4 => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        Family::G2 => link(0, 1, -3, -1),
    }
    a
}

/// Positive roots in simple-root coordinates, generated by root strings.
///
/// For a positive root `β` and simple root `α_i`, with `p` the largest integer
/// such that `β - pα_i` is a root, `β + α_i` is a root iff
/// `p - ⟨β, α_i^∨⟩ > 0`. Roots are produced height by height.
pub fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<u32>> {
    let r = cartan.len();
    let simple: Vec<Vec<u32>> = (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect();
    let mut seen: HashSet<Vec<u32>> = simple.iter().cloned().collect();
    let mut roots = simple.clone();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for (i, row) in cartan.iter().enumerate() {
                let mut p = 0i64;
                let mut probe = beta.clone();
                while probe[i] > 0 {
                    probe[i] -= 1;
                    if seen.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = beta.iter().zip(row).map(|(&b, &a)| b as i64 * a).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if seen.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots
}

type RootTable = Arc<Vec<Vec<u32>>>;

/// Positive coroots `α^∨` in simple-coroot coordinates (cached per factor).
/// They are the positive roots of the dual system, whose Cartan matrix is
/// the transpose.
pub fn positive_coroots(f: &SimpleFactor) -> RootTable {
    static CACHE: OnceLock<Mutex<HashMap<SimpleFactor, RootTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(f) {
        return t.clone();
    }
    let a = cartan_matrix(f);
    let r = a.len();
    let transposed: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| a[j][i]).collect()).collect();
    let table = Arc::new(positive_roots(&transposed));
    cache.lock().unwrap().insert(*f, table.clone());
    table
}

/// Dimension of the irreducible representation of `f` with highest weight `w`.
pub fn irrep_dim(f: &SimpleFactor, w: &HighestWeight) -> Result<BigUint> {
    if w.rank != f.rank {
        return Err(Error::WeightLength {
            expected: f.rank,
            got: w.rank,
        });
    }
    if w.is_zero() {
        return Ok(BigUint::one());
    }
    if f.family == Family::A {
        if w.is_fundamental(1) || w.is_fundamental(f.rank) {
            return Ok(BigUint::from(f.rank) + 1u32);
        }
        if f.rank > A_ROOT_TABLE_RANK {
            return Ok(hook_content_dim(f.rank, w));
        }
    }
    Ok(weyl_dim(f, w))
}

pub(crate) fn weyl_dim(f: &SimpleFactor, w: &HighestWeight) -> BigUint {
    let shifted: Vec<u64> = w.to_coefficients().iter().map(|&c| c as u64 + 1).collect();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for coroot in positive_coroots(f).iter() {
        let top: u64 = coroot.iter().zip(&shifted).map(|(&c, &m)| c as u64 * m).sum();
        let bottom: u64 = coroot.iter().map(|&c| c as u64).sum();
        num *= top;
        den *= bottom;
    }
    debug_assert!((&num % &den) == BigUint::default());
    num / den
}

/// `SL_N` dimension via the hook-content formula on the partition of `w`,
/// using whichever of `w`, `w*` has fewer boxes.
pub(crate) fn hook_content_dim(rank: u64, w: &HighestWeight) -> BigUint {
    let n = rank + 1;
    let boxes: u128 = w.terms.iter().map(|&(i, c)| (i as u128 + 1) * c as u128).sum();
    let dual_boxes: u128 = w
        .terms
        .iter()
        .map(|&(i, c)| (rank - i) as u128 * c as u128)
        .sum();
    // row lengths λ_1 ≥ λ_2 ≥ ... from column heights (node i+1, multiplicity c)
    let mut columns: Vec<(u64, u32)> = if dual_boxes < boxes {
        w.terms.iter().map(|&(i, c)| (rank - i, c)).collect()
    } else {
        w.terms.iter().map(|&(i, c)| (i + 1, c)).collect()
    };
    columns.sort_unstable();
    let rows = columns.last().map_or(0, |&(h, _)| h) as usize;
    let mut lambda = vec![0u64; rows];
    for &(h, c) in &columns {
        for l in lambda.iter_mut().take(h as usize) {
            *l += c as u64;
        }
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row {
            // conjugate length of column j
            let col = lambda.iter().take_while(|&&l| l > j).count() as u64;
            let hook = (row - j - 1) + (col - i as u64 - 1) + 1;
            num *= n + j - i as u64;
            den *= hook;
        }
    }
    num / den
}
