//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's wall-relation or linear-algebra code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

pub type Q = BigRational;

pub fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

/// Gauss-Jordan solve of `rows * x = rhs`; returns `None` unless the system
/// is consistent with a unique solution.
pub fn solve_unique(mut rows: Vec<Vec<Q>>, mut rhs: Vec<Q>, n: usize) -> Option<Vec<Q>> {
    let m = rows.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let p = (pivot_row..m).find(|&i| !rows[i][col].is_zero())?;
        rows.swap(pivot_row, p);
        rhs.swap(pivot_row, p);
        let lead = rows[pivot_row][col].clone();
        for x in rows[pivot_row].iter_mut() {
            *x = x.clone() / lead.clone();
        }
        rhs[pivot_row] = rhs[pivot_row].clone() / lead;
        for i in 0..m {
            if i == pivot_row || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in 0..n {
                let d = f.clone() * rows[pivot_row][j].clone();
                rows[i][j] = rows[i][j].clone() - d;
            }
            let d = f * rhs[pivot_row].clone();
            rhs[i] = rhs[i].clone() - d;
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rhs[pivot_row..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(rhs[..n].to_vec())
}

/// For each pair of maximal cones sharing `d - 1` rays, keyed by the sorted
/// shared rays, solve every intersection number `D_rho . C_tau` from
///
/// * `sum_rho <m, u_rho> D_rho ~ 0` for `m = e_1..e_d`,
/// * `D_rho . C_tau = 0` when `rho` is not a ray of either cone,
/// * `D_rho . C_tau = 1` when `rho` is one of the two non-shared rays.
pub fn toric_intersection_oracle(
    dim: usize,
    rays: &[Vec<i64>],
    cones: &[Vec<usize>],
) -> BTreeMap<Vec<usize>, Vec<Q>> {
    let mut out = BTreeMap::new();
    for a in 0..cones.len() {
        for b in a + 1..cones.len() {
            let mut shared: Vec<usize> = cones[a]
                .iter()
                .copied()
                .filter(|r| cones[b].contains(r))
                .collect();
            if shared.len() + 1 != dim {
                continue;
            }
            shared.sort_unstable();
            let n = rays.len();
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for k in 0..dim {
                rows.push(rays.iter().map(|u| q(u[k])).collect());
                rhs.push(Q::zero());
            }
            for rho in 0..n {
                let in_a = cones[a].contains(&rho);
                let in_b = cones[b].contains(&rho);
                let mut row = vec![Q::zero(); n];
                row[rho] = Q::one();
                if !in_a && !in_b {
                    rows.push(row);
                    rhs.push(Q::zero());
                } else if !shared.contains(&rho) {
                    rows.push(row);
                    rhs.push(Q::one());
                }
            }
            let sol = solve_unique(rows, rhs, n).expect("oracle system has a unique solution");
            out.insert(shared, sol);
        }
    }
    out
}

pub fn p2() -> (usize, Vec<Vec<i64>>, Vec<Vec<usize>>) {
    (
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
        vec![vec![0, 1], vec![1, 2], vec![0, 2]],
    )
}

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// Basis of `{x : rows * x = 0}` from the reduced row echelon form.
pub fn null_space(rows: &[Vec<Q>], n: usize) -> Vec<Vec<Q>> {
    let mut a: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let lead = a[r][col].clone();
        for x in a[r].iter_mut() {
            *x = x.clone() / lead.clone();
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..n {
                    let d = f.clone() * a[r][j].clone();
                    a[i][j] = a[i][j].clone() - d;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); n];
            v[free] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            v
        })
        .collect()
}

/// Scales a nonzero rational vector to a primitive integer vector.
pub fn primitive_ray(v: &[Q]) -> Vec<BigInt> {
    use num::Integer;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x.clone() * Q::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / g.clone()).collect()
}

/// Extreme rays of the pointed cone `{y : g . y >= 0 for all g}` by trying
/// every `(m-1)`-subset of the inequalities.
pub fn extreme_rays_brute_force(gens: &[Vec<i64>], m: usize) -> Vec<Vec<BigInt>> {
    let rows: Vec<Vec<Q>> = gens
        .iter()
        .map(|g| g.iter().map(|&x| q(x)).collect())
        .collect();
    let mut found = std::collections::BTreeSet::new();
    let k = m - 1;
    let mut idx: Vec<usize> = (0..k).collect();
    if k == 0 {
        return Vec::new();
    }
    loop {
        let sub: Vec<Vec<Q>> = idx.iter().map(|&i| rows[i].clone()).collect();
        let ns = null_space(&sub, m);
        if ns.len() == 1 {
            for sign in [1i64, -1] {
                let y: Vec<Q> = ns[0].iter().map(|x| x.clone() * q(sign)).collect();
                let feasible = rows.iter().all(|g| {
                    g.iter()
                        .zip(&y)
                        .map(|(a, b)| a.clone() * b.clone())
                        .sum::<Q>()
                        >= Q::zero()
                });
                if feasible {
                    found.insert(primitive_ray(&y));
                }
            }
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return found.into_iter().collect();
            }
            i -= 1;
            if idx[i] < rows.len() - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}
