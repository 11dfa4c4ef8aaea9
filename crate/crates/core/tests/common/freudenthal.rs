//! Weight multiplicities by Freudenthal's recursion, built from explicit
//! Euclidean realizations of the simple roots. Shares nothing with the
//! library's root tables.

use std::collections::{HashMap, HashSet};

use phv::Family;

/// Simple roots as rows, doubled so that every coordinate is an integer.
fn simple_roots(family: Family, rank: usize) -> Vec<Vec<i64>> {
    let unit = |dim: usize, terms: &[(usize, i64)]| {
        let mut v = vec![0i64; dim];
        for &(i, c) in terms {
            v[i] += 2 * c;
        }
        v
    };
    let chain = |dim: usize, count: usize| -> Vec<Vec<i64>> {
        (0..count).map(|i| unit(dim, &[(i, 1), (i + 1, -1)])).collect()
    };
    match family {
        Family::A => chain(rank + 1, rank),
        Family::B => {
            let mut r = chain(rank, rank - 1);
            r.push(unit(rank, &[(rank - 1, 1)]));
            r
        }
        Family::C => {
            let mut r = chain(rank, rank - 1);
            r.push(unit(rank, &[(rank - 1, 2)]));
            r
        }
        Family::D => {
            let mut r = chain(rank, rank - 1);
            r.push(unit(rank, &[(rank - 2, 1), (rank - 1, 1)]));
            r
        }
        Family::G2 => vec![unit(3, &[(0, 1), (1, -1)]), unit(3, &[(0, -2), (1, 1), (2, 1)])],
        Family::F4 => vec![
            unit(4, &[(1, 1), (2, -1)]),
            unit(4, &[(2, 1), (3, -1)]),
            unit(4, &[(3, 1)]),
            vec![1, -1, -1, -1],
        ],
        other => panic!("no realization for {other:?} in the oracle"),
    }
}

struct RootSystem {
    /// Gram matrix of the simple roots.
    gram: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates.
    positive: Vec<Vec<i64>>,
}

impl RootSystem {
    fn new(family: Family, rank: usize) -> Self {
        let s = simple_roots(family, rank);
        let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
        let gram: Vec<Vec<i64>> = s.iter().map(|a| s.iter().map(|b| dot(a, b)).collect()).collect();
        let n = s.len();
        // close the simple roots under simple reflections
        let mut roots: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect();
        let mut seen: HashSet<Vec<i64>> = roots.iter().cloned().collect();
        let mut k = 0;
        while k < roots.len() {
            let beta = roots[k].clone();
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| beta[j] * gram[j][i]).sum();
                let c = 2 * pairing / gram[i][i];
                assert_eq!(2 * pairing % gram[i][i], 0);
                let mut r = beta.clone();
                r[i] -= c;
                if seen.insert(r.clone()) {
                    roots.push(r);
                }
            }
            k += 1;
        }
        let positive = roots.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
        RootSystem { gram, positive }
    }

    fn ip(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| a[i] * self.gram[i][j] * b[j]).sum::<i64>())
            .sum()
    }

    /// `(μ, β)` for `μ` in fundamental-weight coordinates and `β` in
    /// simple-root coordinates; `(ω_i, α_j) = δ_ij (α_j, α_j) / 2`.
    fn pair(&self, mu: &[i64], beta: &[i64]) -> i64 {
        (0..mu.len()).map(|j| mu[j] * beta[j] * self.gram[j][j] / 2).sum()
    }
}

pub fn positive_root_count(family: Family, rank: usize) -> usize {
    RootSystem::new(family, rank).positive.len()
}

impl RootSystem {
    /// `<α_i, α_j^∨>`.
    fn cartan(&self, i: usize, j: usize) -> i64 {
        2 * self.gram[i][j] / self.gram[j][j]
    }

    /// Fundamental-weight coordinates of `λ - κ`.
    fn weight(&self, lambda: &[i64], kappa: &[i64]) -> Vec<i64> {
        let n = lambda.len();
        (0..n)
            .map(|i| lambda[i] - (0..n).map(|j| kappa[j] * self.cartan(j, i)).sum::<i64>())
            .collect()
    }

    /// `κ'` with `λ - κ'` the dominant Weyl conjugate of `λ - κ`, or `None`
    /// when that conjugate is not below `λ` (so `λ - κ` is not a weight).
    fn dominant(&self, lambda: &[i64], kappa: &[i64]) -> Option<Vec<i64>> {
        let mut kappa = kappa.to_vec();
        loop {
            let mu = self.weight(lambda, &kappa);
            match mu.iter().position(|&c| c < 0) {
                None => return Some(kappa),
                Some(i) => {
                    kappa[i] += mu[i];
                    if kappa[i] < 0 {
                        return None;
                    }
                }
            }
        }
    }

    /// Size of the Weyl orbit of `μ` (fundamental-weight coordinates).
    fn orbit_size(&self, mu: Vec<i64>) -> u128 {
        let n = mu.len();
        let mut seen = HashSet::from([mu.clone()]);
        let mut stack = vec![mu];
        while let Some(v) = stack.pop() {
            for i in 0..n {
                if v[i] == 0 {
                    continue;
                }
                let w: Vec<i64> = (0..n).map(|j| v[j] - v[i] * self.cartan(i, j)).collect();
                if seen.insert(w.clone()) {
                    stack.push(w);
                }
            }
        }
        seen.len() as u128
    }
}

/// Dimension of the irreducible module with highest weight `lambda`
/// (fundamental-weight coordinates): Freudenthal multiplicities of the
/// dominant weights, weighted by their Weyl orbit sizes.
pub fn dimension(family: Family, rank: usize, lambda: &[u32]) -> u128 {
    let rs = RootSystem::new(family, rank);
    let n = lambda.len();
    let lambda: Vec<i64> = lambda.iter().map(|&x| x as i64).collect();
    let lambda_rho: Vec<i64> = lambda.iter().map(|&x| x + 1).collect();

    // dominant weights below λ, reached by subtracting positive roots
    let mut dominant: Vec<Vec<i64>> = vec![vec![0; n]];
    let mut seen: HashSet<Vec<i64>> = dominant.iter().cloned().collect();
    let mut k = 0;
    while k < dominant.len() {
        let kappa = dominant[k].clone();
        for beta in &rs.positive {
            let next: Vec<i64> = kappa.iter().zip(beta).map(|(a, b)| a + b).collect();
            if rs.weight(&lambda, &next).iter().all(|&c| c >= 0) && seen.insert(next.clone()) {
                dominant.push(next);
            }
        }
        k += 1;
    }
    dominant.sort_by_key(|kappa| kappa.iter().sum::<i64>());

    let mut mult: HashMap<Vec<i64>, u128> = HashMap::new();
    let mut total: u128 = 0;
    for kappa in dominant {
        let m = if kappa.iter().all(|&c| c == 0) {
            1
        } else {
            // (λ+ρ)² - (μ+ρ)² = 2(λ+ρ, κ) - (κ, κ)
            let denom = 2 * rs.pair(&lambda_rho, &kappa) - rs.ip(&kappa, &kappa);
            assert!(denom > 0, "a dominant weight below λ has positive denominator");
            let mut num: i128 = 0;
            for alpha in &rs.positive {
                for k in 1.. {
                    let shifted: Vec<i64> = kappa.iter().zip(alpha).map(|(a, b)| a - k * b).collect();
                    let Some(rep) = rs.dominant(&lambda, &shifted) else {
                        break;
                    };
                    let Some(&m) = mult.get(&rep) else {
                        break;
                    };
                    // (μ + kα, α) with μ = λ - κ
                    let ip = rs.pair(&lambda, alpha) - rs.ip(&kappa, alpha) + k * rs.ip(alpha, alpha);
                    num += 2 * ip as i128 * m as i128;
                }
            }
            assert_eq!(num % denom as i128, 0, "multiplicity must be integral");
            let m = num / denom as i128;
            assert!(m > 0, "every dominant weight below λ occurs");
            m as u128
        };
        total += m * rs.orbit_size(rs.weight(&lambda, &kappa));
        mult.insert(kappa, m);
    }
    total
}
