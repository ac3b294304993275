//! Rational equivalence on torus-invariant cycles.
//!
//! For a cone `τ` of dimension `n−k−1` and `m ∈ τ^⊥ ∩ ℤⁿ`, the rational
//! function `χ^m` on `V_τ` has divisor `Σ_{σ ⊃ τ} ⟨m, u_{σ,τ}⟩ [V_σ]` over the
//! cones `σ` one dimension up. These relations span all of rational
//! equivalence among invariant cycles of dimension `k`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::lattice_geom::linalg::{self, QMatrix};
use crate::lattice_geom::{smith_normal_form, ConeId, Fan};
use crate::{Error, Rational, Result};

use super::coeff::CoeffElem;

/// One relation: an integer combination of cones of a fixed dimension.
pub type Relation = BTreeMap<ConeId, BigInt>;

/// Relations among the `k`-dimensional orbit closures `[V_σ]`,
/// `dim σ = n − k`.
pub fn relation_basis(fan: &Fan, k: usize) -> Result<Vec<Relation>> {
    fan.require_smooth_complete()?;
    let n = fan.rank();
    if k > n {
        return Err(Error::InvalidInput(format!("grading {k} exceeds rank {n}")));
    }
    if k == n {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for &tau in fan.cones_of_dim(n - k - 1) {
        // lattice basis of τ^⊥ from the Smith form of the ray rows
        let b = fan.cone_matrix(tau).transpose();
        let s = smith_normal_form(&b);
        let r = s.rank();
        for col in r..n {
            let m: Vec<BigInt> = (0..n).map(|i| s.v.get(i, col).clone()).collect();
            let mut rel = Relation::new();
            for &(sigma, rho) in fan.cofaces(tau) {
                let pairing: BigInt = m
                    .iter()
                    .zip(fan.ray(rho))
                    .map(|(a, &b)| a * BigInt::from(b))
                    .sum();
                if !pairing.is_zero() {
                    rel.insert(sigma, pairing);
                }
            }
            if !rel.is_empty() {
                out.push(rel);
            }
        }
    }
    Ok(out)
}

/// Row-reduced relations for one grading.
#[derive(Clone, Debug)]
pub(crate) struct GradingReducer {
    pub cones: Vec<ConeId>,
    rows: QMatrix,
    pivots: Vec<usize>,
}

impl GradingReducer {
    fn new(fan: &Fan, k: usize) -> Result<Self> {
        let n = fan.rank();
        let cones = fan.cones_of_dim(n - k).to_vec();
        let position: HashMap<ConeId, usize> =
            cones.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let rels = relation_basis(fan, k)?;
        let dense: QMatrix = rels
            .iter()
            .map(|rel| {
                let mut row = vec![Rational::zero(); cones.len()];
                for (c, v) in rel {
                    row[position[c]] = Rational::from_integer(v.clone());
                }
                row
            })
            .collect();
        let (rows, pivots) = linalg::rref(dense, cones.len());
        Ok(GradingReducer {
            cones,
            rows,
            pivots,
        })
    }

    /// Number of independent classes in this grading.
    pub fn quotient_rank(&self) -> usize {
        self.cones.len() - self.pivots.len()
    }

    /// Clears every pivot coordinate, giving the unique representative
    /// supported on non-pivot cones.
    pub fn reduce(&self, v: &mut [CoeffElem]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (j, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    v[j] = &v[j] - &f.scale(r);
                }
            }
        }
    }
}

/// `dim_ℚ A_k(X) ⊗ ℚ` for `k = 0..=n`.
pub fn chow_ranks(fan: &Fan) -> Result<Vec<usize>> {
    Ok(reducers(fan)?
        .per_grading
        .iter()
        .map(GradingReducer::quotient_rank)
        .collect())
}

/// Reducers for all gradings `0..=n`, cached on the fan.
#[derive(Clone, Debug)]
pub(crate) struct Reducers {
    pub per_grading: Vec<GradingReducer>,
}

pub(crate) fn reducers(fan: &Fan) -> Result<&Reducers> {
    fan.reducers
        .get_or_init(|| {
            fan.require_smooth_complete()?;
            let per_grading = (0..=fan.rank())
                .map(|k| GradingReducer::new(fan, k))
                .collect::<Result<_>>()?;
            Ok(Reducers { per_grading })
        })
        .as_ref()
        .map_err(Clone::clone)
}
