//! Seeded random modules and random module symmetries.

use phv::{Family, GroupShape, HighestWeight, Module, SimpleFactor, Summand};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

const POOL: &[(Family, u64)] = &[
    (Family::A, 1),
    (Family::A, 2),
    (Family::A, 3),
    (Family::A, 4),
    (Family::B, 2),
    (Family::B, 3),
    (Family::C, 1),
    (Family::C, 2),
    (Family::C, 3),
    (Family::D, 3),
    (Family::D, 4),
    (Family::D, 5),
    (Family::G2, 2),
    (Family::F4, 4),
];

pub fn factor(r: &mut Rng8) -> SimpleFactor {
    let (f, n) = *POOL.choose(r).unwrap();
    SimpleFactor::new(f, n).unwrap()
}

/// A weight with coefficient sum at most `max_sum`, zero with probability
/// `p_zero`.
pub fn weight(r: &mut Rng8, f: &SimpleFactor, max_sum: u32, p_zero: f64) -> HighestWeight {
    let rank = f.rank();
    if r.gen_bool(p_zero) {
        return HighestWeight::zero(rank);
    }
    let total = r.gen_range(1..=max_sum);
    let terms: Vec<(u64, u32)> = (0..total).map(|_| (r.gen_range(0..rank), 1)).collect();
    HighestWeight::from_terms(rank, terms).unwrap()
}

fn slots(r: &mut Rng8, torus_dim: usize) -> Vec<usize> {
    (0..torus_dim).filter(|_| r.gen_bool(0.5)).collect()
}

/// Up to three factors of any family, up to three summands.
pub fn module(r: &mut Rng8) -> Module {
    let torus = r.gen_range(0..=3);
    let factors: Vec<SimpleFactor> = (0..r.gen_range(0..=3)).map(|_| factor(r)).collect();
    let count = r.gen_range(1..=3);
    let summands = (0..count)
        .map(|_| {
            let w = factors.iter().map(|f| weight(r, f, 2, 0.35)).collect();
            Summand::new(w, slots(r, torus))
        })
        .collect();
    Module::new(GroupShape::new(torus, factors).unwrap(), summands).unwrap()
}

/// Modules with `SL` factors acting by `ω_1` or `ω_1^*` on some summands, so
/// that castling transforms are usually available.
pub fn castlable_module(r: &mut Rng8) -> Module {
    let torus = r.gen_range(1..=2);
    let mut factors: Vec<SimpleFactor> = (0..r.gen_range(1..=3))
        .map(|_| SimpleFactor::sl(r.gen_range(2..=5)).unwrap())
        .collect();
    let sl_count = factors.len();
    if r.gen_bool(0.4) {
        factors.push(factor(r));
    }
    let dual: Vec<bool> = (0..sl_count).map(|_| r.gen_bool(0.3)).collect();
    let count = r.gen_range(1..=3);
    let summands = (0..count)
        .map(|_| {
            let w = factors
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    if i < sl_count {
                        if r.gen_bool(0.65) {
                            let node = if dual[i] { f.rank() } else { 1 };
                            HighestWeight::fundamental(f.rank(), node).unwrap()
                        } else {
                            HighestWeight::zero(f.rank())
                        }
                    } else {
                        weight(r, f, 1, 0.3)
                    }
                })
                .collect();
            Summand::new(w, slots(r, torus))
        })
        .collect();
    Module::new(GroupShape::new(torus, factors).unwrap(), summands).unwrap()
}

/// Applies a random factor permutation, summand permutation, per-factor
/// dualization and torus relabelling.
pub fn scramble(r: &mut Rng8, m: &Module) -> Module {
    let mut fperm: Vec<usize> = (0..m.factors().len()).collect();
    fperm.shuffle(r);
    let mut sperm: Vec<usize> = (0..m.summands().len()).collect();
    sperm.shuffle(r);
    let mut tperm: Vec<usize> = (0..m.torus_dim()).collect();
    tperm.shuffle(r);
    let flip: Vec<bool> = (0..m.factors().len()).map(|_| r.gen_bool(0.5)).collect();

    let factors: Vec<SimpleFactor> = fperm.iter().map(|&i| m.factors()[i]).collect();
    let summands = sperm
        .iter()
        .map(|&s| {
            let old = &m.summands()[s];
            let weights = fperm
                .iter()
                .map(|&i| {
                    let w = &old.weights()[i];
                    if flip[i] {
                        m.factors()[i].dual_weight(w)
                    } else {
                        w.clone()
                    }
                })
                .collect();
            Summand::new(weights, old.scalar_slots().iter().map(|&t| tperm[t]))
        })
        .collect();
    Module::new(GroupShape::new(m.torus_dim(), factors).unwrap(), summands).unwrap()
}
