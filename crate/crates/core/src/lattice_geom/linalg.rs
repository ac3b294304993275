//! Exact linear algebra over ℚ on small dense matrices.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

pub type QMatrix = Vec<Vec<Rational>>;

pub fn q(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

pub fn to_q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn dot_int(a: &[Rational], b: &[i64]) -> Rational {
    a.iter().zip(b).map(|(x, &y)| x * q(y)).sum()
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(mut rows: QMatrix, ncols: usize) -> (QMatrix, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &QMatrix, ncols: usize) -> usize {
    rref(rows.clone(), ncols).1.len()
}

/// Some solution of `a x = b`, with free variables set to zero.
pub fn solve(a: &QMatrix, b: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let aug: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &c) in red.iter().zip(&pivots) {
        x[c] = row[ncols].clone();
    }
    Some(x)
}

/// Basis of the right null space `{x : a x = 0}`.
pub fn nullspace(a: &QMatrix, ncols: usize) -> QMatrix {
    let (red, pivots) = rref(a.clone(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Scales a rational vector to the primitive integer vector on its ray.
pub fn primitive_integer(v: &[Rational]) -> Option<Vec<i64>> {
    let lcm = v
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    ints.iter().map(|x| i64::try_from(x / &g).ok()).collect()
}

/// Decides whether `{z ≥ 0 : a z = b}` is nonempty with an exact phase-one
/// simplex. Bland's rule guarantees termination.
pub fn nonneg_feasible(a: &QMatrix, b: &[Rational], ncols: usize) -> bool {
    let m = a.len();
    // tableau rows: [a | I | b] with rows negated so that b ≥ 0
    let width = ncols + m + 1;
    let mut t: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, bi))| {
            let flip = bi.is_negative();
            let mut r: Vec<Rational> = row[..ncols]
                .iter()
                .map(|x| if flip { -x } else { x.clone() })
                .collect();
            r.extend((0..m).map(|k| {
                if k == i {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r.push(if flip { -bi } else { bi.clone() });
            r
        })
        .collect();
    let mut basis: Vec<usize> = (ncols..ncols + m).collect();
    // reduced costs of the phase-one objective `min Σ artificials`
    let mut cost: Vec<Rational> = (0..width)
        .map(|c| {
            if (ncols..ncols + m).contains(&c) {
                Rational::zero()
            } else {
                -t.iter().map(|r| r[c].clone()).sum::<Rational>()
            }
        })
        .collect();
    while let Some(enter) = (0..ncols + m).find(|&c| cost[c].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // the phase-one objective is bounded below by zero
        let (l, _) = leave.expect("phase-one simplex is bounded");
        let piv = t[l][enter].clone();
        for v in t[l].iter_mut() {
            *v /= &piv;
        }
        let pivot_row = t[l].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != l && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        let f = cost[enter].clone();
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            *v -= &f * p;
        }
        basis[l] = enter;
    }
    // optimum is `−cost[rhs]`; feasible iff it is zero
    cost[width - 1].is_zero()
}
