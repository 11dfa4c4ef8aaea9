//! The central value type: a reductive group `GL_1^k × S_1 × ... × S_r`
//! together with a direct sum of irreducible summands.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{irrep_dim, HighestWeight, SimpleFactor};

/// Canonicalization enumerates factor permutations; beyond this it refuses.
pub const MAX_FACTORS: usize = 16;

/// `GL_1^k × S_1 × ... × S_r`. `GL_n` is always split as one torus slot plus
/// `SL_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupShape {
    torus_dim: usize,
    factors: Vec<SimpleFactor>,
}

impl GroupShape {
    pub fn new(torus_dim: usize, factors: Vec<SimpleFactor>) -> Result<Self> {
        if factors.len() > MAX_FACTORS {
            return Err(Error::TooManyFactors {
                count: factors.len(),
                max: MAX_FACTORS,
            });
        }
        Ok(GroupShape { torus_dim, factors })
    }

    pub fn torus_dim(&self) -> usize {
        self.torus_dim
    }

    pub fn factors(&self) -> &[SimpleFactor] {
        &self.factors
    }

    pub fn dim(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::from(self.torus_dim), |acc, f| acc + f.dim())
    }
}

/// One irreducible summand: a highest weight per simple factor, plus the
/// torus slots that act on it by scalar multiplication.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Summand {
    weights: Vec<HighestWeight>,
    scalar_slots: BTreeSet<usize>,
}

impl Summand {
    pub fn new(weights: Vec<HighestWeight>, scalar_slots: impl IntoIterator<Item = usize>) -> Self {
        Summand {
            weights,
            scalar_slots: scalar_slots.into_iter().collect(),
        }
    }

    pub fn weights(&self) -> &[HighestWeight] {
        &self.weights
    }

    /// 0-based torus slot indices.
    pub fn scalar_slots(&self) -> &BTreeSet<usize> {
        &self.scalar_slots
    }

    pub fn is_trivial_on(&self, factor: usize) -> bool {
        self.weights[factor].is_zero()
    }

    fn dim(&self, factors: &[SimpleFactor]) -> BigUint {
        factors
            .iter()
            .zip(&self.weights)
            .map(|(f, w)| irrep_dim(f, w).expect("validated weight"))
            .product()
    }
}

/// A module `(G, ϱ, V)` for a reductive group `G`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Module {
    group: GroupShape,
    summands: Vec<Summand>,
}

impl Module {
    pub fn new(group: GroupShape, summands: Vec<Summand>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::NoSummands);
        }
        for (s, summand) in summands.iter().enumerate() {
            if summand.weights.len() != group.factors.len() {
                return Err(Error::Arity {
                    summand: s,
                    expected: group.factors.len(),
                    got: summand.weights.len(),
                });
            }
            for (f, w) in group.factors.iter().zip(&summand.weights) {
                if f.rank() != w.rank() {
                    return Err(Error::WeightLength {
                        expected: f.rank(),
                        got: w.rank(),
                    });
                }
            }
            if let Some(&slot) = summand.scalar_slots.iter().find(|&&t| t >= group.torus_dim) {
                return Err(Error::SlotOutOfRange {
                    summand: s,
                    slot,
                    torus_dim: group.torus_dim,
                });
            }
        }
        Ok(Module { group, summands })
    }

    pub fn group(&self) -> &GroupShape {
        &self.group
    }

    pub fn factors(&self) -> &[SimpleFactor] {
        &self.group.factors
    }

    pub fn torus_dim(&self) -> usize {
        self.group.torus_dim
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn is_irreducible(&self) -> bool {
        self.summands.len() == 1
    }

    pub fn summand_dim(&self, s: usize) -> BigUint {
        self.summands[s].dim(&self.group.factors)
    }

    /// `dim V`.
    pub fn module_dim(&self) -> BigUint {
        (0..self.summands.len()).map(|s| self.summand_dim(s)).sum()
    }

    /// `dim G`.
    pub fn group_dim(&self) -> BigUint {
        self.group.dim()
    }

    /// `dim G - dim V`, the generic isotropy dimension when prehomogeneous.
    pub fn dim_defect(&self) -> BigInt {
        BigInt::from(self.group_dim()) - BigInt::from(self.module_dim())
    }

    /// `dim G = dim V` and a nontrivial character group (`k ≥ 1`).
    /// Prehomogeneity itself is not decided here.
    pub fn is_etale_candidate(&self) -> bool {
        self.group.torus_dim >= 1 && self.group_dim() == self.module_dim()
    }

    /// Applies the diagram automorphism of factor `i` in every summand.
    pub fn dualize_factor(&self, i: usize) -> Result<Module> {
        let len = self.group.factors.len();
        let f = *self
            .group
            .factors
            .get(i)
            .ok_or(Error::IndexOutOfRange { index: i, len })?;
        let mut out = self.clone();
        for s in &mut out.summands {
            s.weights[i] = f.dual_weight(&s.weights[i]);
        }
        Ok(out)
    }

    /// The submodule spanned by the given summands (same group).
    pub fn submodule(&self, summands: &[usize]) -> Result<Module> {
        let picked = summands
            .iter()
            .map(|&s| {
                self.summands.get(s).cloned().ok_or(Error::IndexOutOfRange {
                    index: s,
                    len: self.summands.len(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Module::new(self.group.clone(), picked)
    }

    /// Drops simple factors that act trivially on every summand.
    pub fn without_trivial_factors(&self) -> Module {
        let keep: Vec<usize> = (0..self.group.factors.len())
            .filter(|&i| self.summands.iter().any(|s| !s.is_trivial_on(i)))
            .collect();
        let group = GroupShape {
            torus_dim: self.group.torus_dim,
            factors: keep.iter().map(|&i| self.group.factors[i]).collect(),
        };
        let summands = self
            .summands
            .iter()
            .map(|s| Summand {
                weights: keep.iter().map(|&i| s.weights[i].clone()).collect(),
                scalar_slots: s.scalar_slots.clone(),
            })
            .collect();
        Module { group, summands }
    }

    /// Drops torus slots that act on no summand, renumbering the rest.
    pub fn without_idle_torus(&self) -> Module {
        let used: BTreeSet<usize> = self
            .summands
            .iter()
            .flat_map(|s| s.scalar_slots.iter().copied())
            .collect();
        let relabel: Vec<usize> = used.iter().copied().collect();
        let group = GroupShape {
            torus_dim: used.len(),
            factors: self.group.factors.clone(),
        };
        let summands = self
            .summands
            .iter()
            .map(|s| Summand {
                weights: s.weights.clone(),
                scalar_slots: s
                    .scalar_slots
                    .iter()
                    .map(|t| relabel.binary_search(t).unwrap())
                    .collect(),
            })
            .collect();
        Module { group, summands }
    }

    pub(crate) fn from_parts_unchecked(group: GroupShape, summands: Vec<Summand>) -> Module {
        debug_assert!(Module::new(group.clone(), summands.clone()).is_ok());
        Module { group, summands }
    }

    pub(crate) fn into_parts(self) -> (GroupShape, Vec<Summand>) {
        (self.group, self.summands)
    }
}

/// Convenience builder used by the catalog and tests.
///
/// ```
/// use phv::{ModuleBuilder, SimpleFactor};
/// // (GL_2, 3ω_1, Sym^3 C^2)
/// let m = ModuleBuilder::new(1)
///     .factor(SimpleFactor::sl(2).unwrap())
///     .summand(&[&[3]], &[0])
///     .build()
///     .unwrap();
/// assert!(m.is_etale_candidate());
/// ```
#[derive(Clone, Debug, Default)]
pub struct ModuleBuilder {
    torus_dim: usize,
    factors: Vec<SimpleFactor>,
    summands: Vec<(Vec<Vec<u32>>, Vec<usize>)>,
}

impl ModuleBuilder {
    pub fn new(torus_dim: usize) -> Self {
        ModuleBuilder {
            torus_dim,
            ..Default::default()
        }
    }

    pub fn factor(mut self, f: SimpleFactor) -> Self {
        self.factors.push(f);
        self
    }

    /// Dense weights per factor (an empty slice means trivial) and 0-based
    /// torus slots.
    pub fn summand(mut self, weights: &[&[u32]], slots: &[usize]) -> Self {
        self.summands.push((
            weights.iter().map(|w| w.to_vec()).collect(),
            slots.to_vec(),
        ));
        self
    }

    pub fn build(self) -> Result<Module> {
        let group = GroupShape::new(self.torus_dim, self.factors)?;
        let summands = self
            .summands
            .into_iter()
            .enumerate()
            .map(|(s, (weights, slots))| {
                if weights.len() != group.factors.len() {
                    return Err(Error::Arity {
                        summand: s,
                        expected: group.factors.len(),
                        got: weights.len(),
                    });
                }
                let weights = group
                    .factors
                    .iter()
                    .zip(weights)
                    .map(|(f, w)| {
                        if w.is_empty() {
                            Ok(HighestWeight::zero(f.rank()))
                        } else if w.len() as u64 != f.rank() {
                            Err(Error::WeightLength {
                                expected: f.rank(),
                                got: w.len() as u64,
                            })
                        } else {
                            Ok(HighestWeight::from_coefficients(&w))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Summand::new(weights, slots))
            })
            .collect::<Result<Vec<_>>>()?;
        Module::new(group, summands)
    }
}
