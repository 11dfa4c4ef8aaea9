mod common;

use common::freudenthal;
use num_bigint::BigUint;
use phv::lie::positive_coroots;
use phv::{irrep_dim, Family, HighestWeight, SimpleFactor};

fn dim(family: Family, rank: u64, w: &[u32]) -> BigUint {
    let f = SimpleFactor::new(family, rank).unwrap();
    irrep_dim(&f, &HighestWeight::from_coefficients(w)).unwrap()
}

fn fundamental(rank: u64, i: u64) -> Vec<u32> {
    let mut w = vec![0; rank as usize];
    w[i as usize - 1] = 1;
    w
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

/// Every weight of the given rank with coefficient sum at most `max`.
fn weights_up_to(rank: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|w: Vec<u32>| {
                let used: u32 = w.iter().sum();
                (0..=max - used).map(move |c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

fn freudenthal_families() -> Vec<(Family, u64)> {
    let mut v = Vec::new();
    for r in 1..=5 {
        v.push((Family::A, r));
        v.push((Family::C, r));
    }
    for r in 2..=5 {
        v.push((Family::B, r));
    }
    for r in 3..=5 {
        v.push((Family::D, r));
    }
    v.push((Family::G2, 2));
    v.push((Family::F4, 4));
    v
}

#[test]
fn oracle_basics() {
    assert_eq!(freudenthal::dimension(Family::A, 1, &[3]), 4);
    assert_eq!(freudenthal::dimension(Family::G2, 2, &[1, 0]), 7);
    assert_eq!(freudenthal::dimension(Family::F4, 4, &[0, 0, 0, 1]), 26);
    assert_eq!(freudenthal::positive_root_count(Family::F4, 4), 24);
}

#[test]
fn spot_values() {
    assert_eq!(dim(Family::A, 1, &[3]), 4u32.into());
    assert_eq!(dim(Family::A, 2, &[2, 0]), 6u32.into());
    assert_eq!(dim(Family::A, 4, &[0, 1, 0, 0]), 10u32.into());
    assert_eq!(dim(Family::C, 2, &[0, 1]), 5u32.into());
    assert_eq!(dim(Family::D, 5, &[0, 0, 0, 0, 1]), 16u32.into());
    assert_eq!(dim(Family::D, 5, &[0, 0, 0, 1, 0]), 16u32.into());
}

#[test]
fn closed_forms_up_to_rank_8() {
    for rank in 1..=8u64 {
        let n = rank + 1;
        for k in 1..=rank {
            assert_eq!(dim(Family::A, rank, &fundamental(rank, k)), binomial(n, k), "A{rank} w{k}");
        }
        for k in 1..=4u32 {
            let mut w = vec![0; rank as usize];
            w[0] = k;
            assert_eq!(dim(Family::A, rank, &w), binomial(n + k as u64 - 1, k as u64));
        }
        assert_eq!(dim(Family::C, rank, &fundamental(rank, 1)), (2 * rank).into());
        if rank >= 2 {
            assert_eq!(dim(Family::B, rank, &fundamental(rank, 1)), (2 * rank + 1).into());
            assert_eq!(
                dim(Family::B, rank, &fundamental(rank, rank)),
                BigUint::from(1u32) << rank
            );
        }
        if rank >= 3 {
            let half = BigUint::from(1u32) << (rank - 1);
            assert_eq!(dim(Family::D, rank, &fundamental(rank, rank)), half);
            assert_eq!(dim(Family::D, rank, &fundamental(rank, rank - 1)), half);
            assert_eq!(dim(Family::D, rank, &fundamental(rank, 1)), (2 * rank).into());
        }
    }
    for k in 0..=60u32 {
        assert_eq!(dim(Family::A, 1, &[k]), (k + 1).into());
    }
}

#[test]
fn adjoint_dimensions_match_group_dimensions() {
    for rank in 1..=8u64 {
        let a = SimpleFactor::new(Family::A, rank).unwrap();
        let mut w = vec![0u32; rank as usize];
        w[0] += 1;
        w[rank as usize - 1] += 1;
        assert_eq!(dim(Family::A, rank, &w), a.dim());
        if rank >= 2 {
            let mut c = vec![0u32; rank as usize];
            c[0] = 2;
            assert_eq!(dim(Family::C, rank, &c), SimpleFactor::new(Family::C, rank).unwrap().dim());
        }
        if rank >= 3 {
            assert_eq!(
                dim(Family::B, rank, &fundamental(rank, 2)),
                SimpleFactor::new(Family::B, rank).unwrap().dim()
            );
        }
        if rank >= 4 {
            assert_eq!(
                dim(Family::D, rank, &fundamental(rank, 2)),
                SimpleFactor::new(Family::D, rank).unwrap().dim()
            );
        }
    }
}

#[test]
fn root_counts_agree_with_reflection_closure() {
    for (family, rank) in freudenthal_families() {
        let f = SimpleFactor::new(family, rank).unwrap();
        assert_eq!(
            positive_coroots(&f).len(),
            freudenthal::positive_root_count(family, rank as usize),
            "{f}"
        );
    }
}

#[test]
fn freudenthal_agrees_up_to_rank_5() {
    let mut checked = 0;
    for (family, rank) in freudenthal_families() {
        for w in weights_up_to(rank as usize, 3) {
            let expected = freudenthal::dimension(family, rank as usize, &w);
            assert_eq!(dim(family, rank, &w), BigUint::from(expected), "{family:?}{rank} {w:?}");
            checked += 1;
        }
    }
    assert!(checked > 500);
}

#[test]
fn duality_preserves_dimension() {
    let factors = [
        SimpleFactor::new(Family::A, 5).unwrap(),
        SimpleFactor::new(Family::D, 5).unwrap(),
        SimpleFactor::new(Family::E6, 6).unwrap(),
    ];
    for f in factors {
        for w in weights_up_to(f.rank() as usize, 2) {
            let w = HighestWeight::from_coefficients(&w);
            assert_eq!(
                irrep_dim(&f, &w).unwrap(),
                irrep_dim(&f, &f.dual_weight(&w)).unwrap()
            );
        }
    }
}
