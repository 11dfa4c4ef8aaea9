//! Castling transforms, promotions, reduction and bounded orbits.
//!
//! For `m > n ≥ 1` and a representation `ϱ` of dimension `m`, the modules
//! `(G × SL_n, (σ ⊗ 1) ⊕ (ϱ ⊗ ω_1))` and `(G × SL_{m-n}, (σ* ⊗ 1) ⊕ (ϱ ⊗ ω_1))`
//! are castling transforms of each other. A promotion is the case `n = 1`,
//! which adds a new factor `SL_{m-1}`.
//!
//! Both sides satisfy `dim G - dim V` equal, since
//! `(m-n)^2 - n^2 = m(m-2n) = m(m-n) - mn`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::lie::{HighestWeight, SimpleFactor};
use crate::module::{GroupShape, Module, Summand};

/// Which summand subsets promotions may act on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsetPolicy {
    /// Each single summand, and the whole module.
    #[default]
    SingletonsAndFull,
    /// Every nonempty subset (exponential in the number of summands).
    AllSubsets,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MoveKind {
    /// Replace the `SL_n` factor at this index by `SL_{m-n}`.
    Castle { factor: usize },
    /// Add a new factor `SL_{m-1}`.
    Promote,
}

/// One applicable castling transform.
///
/// `summands` lists (0-based, sorted) the summands the old or new `SL` factor
/// acts on by `ω_1`; `m` is the cofactor dimension on those summands.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CastlingMove {
    pub kind: MoveKind,
    pub summands: Vec<usize>,
    pub n: u64,
    pub m: u64,
}

impl CastlingMove {
    /// Change in `dim V` (and in `dim G`): `m(m - 2n)`.
    pub fn dim_change(&self) -> BigInt {
        let m = BigInt::from(self.m);
        let n = BigInt::from(self.n);
        &m * (&m - n * 2)
    }

    pub fn decreases_dim(&self) -> bool {
        self.m < 2 * self.n
    }
}

impl fmt::Display for CastlingMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let on: Vec<String> = self.summands.iter().map(|s| (s + 1).to_string()).collect();
        match self.kind {
            MoveKind::Castle { factor } => write!(
                f,
                "castle factor {} on summands {} (SL{} -> SL{})",
                factor + 1,
                on.join(","),
                self.n,
                self.m - self.n
            ),
            MoveKind::Promote => write!(
                f,
                "promote summands {} (adds SL{})",
                on.join(","),
                self.m - 1
            ),
        }
    }
}

/// Bounds for orbit enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitLimits {
    pub max_steps: usize,
    pub max_dim: BigUint,
    pub max_nodes: usize,
    pub policy: SubsetPolicy,
}

impl OrbitLimits {
    pub fn new(max_steps: usize, max_dim: u64) -> Self {
        OrbitLimits {
            max_steps,
            max_dim: BigUint::from(max_dim),
            ..Default::default()
        }
    }

    pub fn with_max_nodes(mut self, max_nodes: usize) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn with_policy(mut self, policy: SubsetPolicy) -> Self {
        self.policy = policy;
        self
    }
}

impl Default for OrbitLimits {
    fn default() -> Self {
        OrbitLimits {
            max_steps: 4,
            max_dim: BigUint::from(1_000_000u32),
            max_nodes: 100_000,
            policy: SubsetPolicy::SingletonsAndFull,
        }
    }
}

enum Orientation {
    Standard,
    Dual,
}

/// The castle move on factor `i`, if that factor is an `SL_n` acting by
/// `ω_1` (or uniformly by `ω_1^*`) on some summands and trivially elsewhere,
/// with cofactor `m > n`.
fn castle_candidate(module: &Module, i: usize) -> Option<(CastlingMove, Orientation)> {
    let f = module.factors()[i];
    let n = f.sl_degree()?;
    let r = f.rank();
    let (mut standard, mut dual) = (false, false);
    let mut set = Vec::new();
    for (s, summand) in module.summands().iter().enumerate() {
        let w = &summand.weights()[i];
        if w.is_zero() {
            continue;
        }
        let (is_std, is_dual) = (w.is_fundamental(1), w.is_fundamental(r));
        if !is_std && !is_dual {
            return None;
        }
        standard |= is_std && !is_dual;
        dual |= is_dual && !is_std;
        set.push(s);
    }
    if set.is_empty() || (standard && dual) {
        return None;
    }
    let cofactor: BigUint = set
        .iter()
        .map(|&s| module.summand_dim(s) / BigUint::from(n))
        .sum();
    let m: u64 = cofactor.try_into().ok()?;
    if m <= n {
        return None;
    }
    let orientation = if dual {
        Orientation::Dual
    } else {
        Orientation::Standard
    };
    Some((
        CastlingMove {
            kind: MoveKind::Castle { factor: i },
            summands: set,
            n,
            m,
        },
        orientation,
    ))
}

fn promote_candidate(module: &Module, summands: Vec<usize>) -> Option<CastlingMove> {
    let total: BigUint = summands.iter().map(|&s| module.summand_dim(s)).sum();
    let m: u64 = total.try_into().ok()?;
    (m >= 3).then_some(CastlingMove {
        kind: MoveKind::Promote,
        summands,
        n: 1,
        m,
    })
}

fn promotion_subsets(count: usize, policy: SubsetPolicy) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = match policy {
        SubsetPolicy::SingletonsAndFull => {
            let mut v: Vec<Vec<usize>> = (0..count).map(|s| vec![s]).collect();
            if count > 1 {
                v.push((0..count).collect());
            }
            v
        }
        SubsetPolicy::AllSubsets => (1u64..(1u64 << count))
            .map(|mask| (0..count).filter(|&s| mask >> s & 1 == 1).collect())
            .collect(),
    };
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
}

/// All applicable moves: castles by factor index, then promotions by
/// (subset size, subset).
pub fn castling_moves(module: &Module, policy: SubsetPolicy) -> Vec<CastlingMove> {
    let mut moves: Vec<CastlingMove> = (0..module.factors().len())
        .filter_map(|i| castle_candidate(module, i).map(|(mv, _)| mv))
        .collect();
    moves.extend(
        promotion_subsets(module.summands().len(), policy)
            .into_iter()
            .filter_map(|set| promote_candidate(module, set)),
    );
    moves
}

/// Result of applying a move without canonicalizing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CastleOutcome {
    pub module: Module,
    /// Index of the newly created `SL_{m-n}` factor (absent when `m - n = 1`).
    pub fresh_factor: Option<usize>,
}

/// Applies `mv` keeping factor positions: a castled factor stays in place, a
/// promotion appends its factor. Complement summands have every other factor
/// dualized.
pub fn apply_move(module: &Module, mv: &CastlingMove) -> Result<CastleOutcome> {
    let not_applicable = |why: &str| Error::MoveNotApplicable(format!("{mv}: {why}"));
    let r = module.factors().len();
    let (base, castled, new_degree) = match mv.kind {
        MoveKind::Castle { factor } => {
            if factor >= r {
                return Err(not_applicable("no such factor"));
            }
            let (found, orientation) = castle_candidate(module, factor)
                .ok_or_else(|| not_applicable("factor is not castlable"))?;
            if found != *mv {
                return Err(not_applicable("summand set or parameters differ"));
            }
            let base = match orientation {
                Orientation::Standard => module.clone(),
                Orientation::Dual => module.dualize_factor(factor)?,
            };
            (base, Some(factor), mv.m - mv.n)
        }
        MoveKind::Promote => {
            let count = module.summands().len();
            let valid_set = !mv.summands.is_empty()
                && mv.summands.windows(2).all(|w| w[0] < w[1])
                && mv.summands.iter().all(|&s| s < count);
            if !valid_set {
                return Err(not_applicable("invalid summand set"));
            }
            let found = promote_candidate(module, mv.summands.clone())
                .ok_or_else(|| not_applicable("promotion needs m ≥ 3"))?;
            if found != *mv {
                return Err(not_applicable("parameters differ"));
            }
            (module.clone(), None, mv.m - 1)
        }
    };

    let new_factor = (new_degree >= 2).then(|| SimpleFactor::sl(new_degree)).transpose()?;
    let mut factors: Vec<SimpleFactor> = base.factors().to_vec();
    let fresh_factor = match (castled, new_factor) {
        (Some(i), Some(f)) => {
            factors[i] = f;
            Some(i)
        }
        (Some(i), None) => {
            factors.remove(i);
            None
        }
        (None, Some(f)) => {
            factors.push(f);
            Some(r)
        }
        (None, None) => unreachable!("promotions create SL_(m-1) with m ≥ 3"),
    };

    let summands: Vec<Summand> = base
        .summands()
        .iter()
        .enumerate()
        .map(|(s, summand)| {
            let inside = mv.summands.binary_search(&s).is_ok();
            let mut weights: Vec<HighestWeight> = Vec::with_capacity(factors.len());
            for (j, (f, w)) in base.factors().iter().zip(summand.weights()).enumerate() {
                if Some(j) == castled {
                    if let Some(nf) = new_factor {
                        weights.push(if inside {
                            HighestWeight::fundamental(nf.rank(), 1).unwrap()
                        } else {
                            HighestWeight::zero(nf.rank())
                        });
                    }
                } else if inside {
                    weights.push(w.clone());
                } else {
                    weights.push(f.dual_weight(w));
                }
            }
            if castled.is_none() {
                let nf = new_factor.unwrap();
                weights.push(if inside {
                    HighestWeight::fundamental(nf.rank(), 1).unwrap()
                } else {
                    HighestWeight::zero(nf.rank())
                });
            }
            Summand::new(weights, summand.scalar_slots().iter().copied())
        })
        .collect();

    let group = GroupShape::new(base.torus_dim(), factors)?;
    Ok(CastleOutcome {
        module: Module::new(group, summands)?,
        fresh_factor,
    })
}

/// Applies `mv` and returns the canonical form of the result.
pub fn castle(module: &Module, mv: &CastlingMove) -> Result<Module> {
    Ok(canonical_form(&apply_move(module, mv)?.module))
}

/// No castling transform strictly lowers `dim V`. Promotions raise it by
/// `m(m-2) > 0`, so only castles on existing factors are examined.
pub fn is_reduced(module: &Module) -> bool {
    (0..module.factors().len())
        .filter_map(|i| castle_candidate(module, i))
        .all(|(mv, _)| !mv.decreases_dim())
}

/// Greedily applies the first dimension-lowering move until none is left.
pub fn reduce(module: &Module) -> Module {
    let mut current = canonical_form(module);
    while let Some(mv) = castling_moves(&current, SubsetPolicy::SingletonsAndFull)
        .into_iter()
        .find(CastlingMove::decreases_dim)
    {
        current = castle(&current, &mv).expect("move taken from castling_moves");
    }
    current
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitMember {
    pub module: Module,
    /// One shortest path from the canonical seed; every move refers to the
    /// canonical form of the previous module.
    pub path: Vec<CastlingMove>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    /// Sorted by `(dim V, canonical module)`.
    pub members: Vec<OrbitMember>,
    /// Some member at the step bound still had unexplored neighbours.
    pub truncated_steps: bool,
    /// Some neighbour was skipped for exceeding `max_dim`.
    pub truncated_dim: bool,
    /// The node budget ran out.
    pub truncated_nodes: bool,
}

impl Orbit {
    pub fn contains(&self, module: &Module) -> bool {
        let key = canonical_form(module);
        self.members.iter().any(|m| m.module == key)
    }

    pub fn min_dim(&self) -> BigUint {
        self.members[0].module.module_dim()
    }
}

/// Neighbours within the dimension bound, plus whether any were cut off.
fn neighbours(module: &Module, limits: &OrbitLimits) -> (Vec<(CastlingMove, Module)>, bool) {
    let dim = BigInt::from(module.module_dim());
    let max = BigInt::from(limits.max_dim.clone());
    let mut over = false;
    let mut out = Vec::new();
    for mv in castling_moves(module, limits.policy) {
        if &dim + mv.dim_change() > max {
            over = true;
            continue;
        }
        let next = castle(module, &mv).expect("move taken from castling_moves");
        out.push((mv, next));
    }
    (out, over)
}

/// Breadth-first closure of `seed` under castling, within `limits`.
///
/// Layers are expanded in parallel and merged in a fixed order, so the
/// result does not depend on scheduling.
pub fn enumerate_orbit(seed: &Module, limits: &OrbitLimits) -> Result<Orbit> {
    let start = canonical_form(seed);
    if start.module_dim() > limits.max_dim {
        return Err(Error::Precondition(format!(
            "seed dimension {} exceeds max_dim {}",
            start.module_dim(),
            limits.max_dim
        )));
    }
    let mut index: HashMap<Module, usize> = HashMap::new();
    let mut members = vec![OrbitMember {
        module: start.clone(),
        path: Vec::new(),
    }];
    index.insert(start, 0);
    let (mut truncated_dim, mut truncated_nodes) = (false, false);
    let mut frontier = vec![0usize];
    let mut depth = 0;
    while depth < limits.max_steps && !frontier.is_empty() {
        let expansions: Vec<(Vec<(CastlingMove, Module)>, bool)> = frontier
            .par_iter()
            .map(|&k| neighbours(&members[k].module, limits))
            .collect();
        let mut next_frontier = Vec::new();
        for (&parent, (found, over)) in frontier.iter().zip(expansions) {
            truncated_dim |= over;
            for (mv, module) in found {
                if index.contains_key(&module) {
                    continue;
                }
                if members.len() >= limits.max_nodes {
                    truncated_nodes = true;
                    continue;
                }
                let mut path = members[parent].path.clone();
                path.push(mv);
                index.insert(module.clone(), members.len());
                next_frontier.push(members.len());
                members.push(OrbitMember { module, path });
            }
        }
        frontier = next_frontier;
        depth += 1;
    }
    let truncated_steps = !frontier.is_empty()
        && depth == limits.max_steps
        && frontier.par_iter().any(|&k| {
            let (found, _) = neighbours(&members[k].module, limits);
            found.iter().any(|(_, m)| !index.contains_key(m))
        });

    let mut keyed: Vec<(BigUint, OrbitMember)> = members
        .into_iter()
        .map(|m| (m.module.module_dim(), m))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.module.cmp(&b.1.module)));
    Ok(Orbit {
        members: keyed.into_iter().map(|(_, m)| m).collect(),
        truncated_steps,
        truncated_dim,
        truncated_nodes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Equivalence {
    /// Canonical modules from `a` to `b`; consecutive entries are castling
    /// transforms of each other.
    Yes { path: Vec<Module> },
    /// Nothing found within the limits; not a proof of inequivalence.
    NotFoundWithinLimits { truncated: bool },
}

impl Equivalence {
    pub fn is_yes(&self) -> bool {
        matches!(self, Equivalence::Yes { .. })
    }

    /// Number of castling steps in a positive answer.
    pub fn steps(&self) -> Option<usize> {
        match self {
            Equivalence::Yes { path } => Some(path.len() - 1),
            _ => None,
        }
    }
}

/// Bidirectional bounded search for a castling chain from `a` to `b`.
pub fn castling_equivalent(a: &Module, b: &Module, limits: &OrbitLimits) -> Equivalence {
    let (ca, cb) = (canonical_form(a), canonical_form(b));
    if ca == cb {
        return Equivalence::Yes { path: vec![ca] };
    }
    // parent links per side
    let mut sides: [HashMap<Module, Option<Module>>; 2] = [HashMap::new(), HashMap::new()];
    sides[0].insert(ca.clone(), None);
    sides[1].insert(cb.clone(), None);
    let mut frontiers = [vec![ca], vec![cb]];
    let mut truncated = false;

    let trace = |side: &HashMap<Module, Option<Module>>, from: &Module| -> Vec<Module> {
        let mut out = vec![from.clone()];
        let mut cur = from;
        while let Some(Some(p)) = side.get(cur) {
            out.push(p.clone());
            cur = p;
        }
        out
    };

    for _ in 0..limits.max_steps {
        let s = if frontiers[0].len() <= frontiers[1].len() { 0 } else { 1 };
        if frontiers[s].is_empty() {
            break;
        }
        let expansions: Vec<(Vec<(CastlingMove, Module)>, bool)> = frontiers[s]
            .par_iter()
            .map(|m| neighbours(m, limits))
            .collect();
        let mut next = Vec::new();
        for (parent, (found, over)) in frontiers[s].iter().zip(expansions) {
            truncated |= over;
            for (_, module) in found {
                if sides[s].contains_key(&module) {
                    continue;
                }
                if sides[s].len() >= limits.max_nodes {
                    truncated = true;
                    continue;
                }
                sides[s].insert(module.clone(), Some(parent.clone()));
                if sides[1 - s].contains_key(&module) {
                    let mut left = trace(&sides[0], &module);
                    left.reverse();
                    let right = trace(&sides[1], &module);
                    left.extend(right.into_iter().skip(1));
                    return Equivalence::Yes { path: left };
                }
                next.push(module);
            }
        }
        frontiers[s] = next;
    }
    truncated |= frontiers.iter().any(|f| !f.is_empty());
    Equivalence::NotFoundWithinLimits { truncated }
}
