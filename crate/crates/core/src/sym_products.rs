//! Symmetric products at the level of E-polynomials and Hodge tables.
//!
//! `Σ_n e(M^{(n)}) t^n = exp(Σ_r e(M; y^r, x^r) t^r / r)`, and in refined
//! form `Σ_n Σ h^{p,q,k}(M^{(n)}) y^p x^q (−z)^k t^n` equals
//! `∏_{p,q,k} (1 − y^p x^q z^k t)^{−(−1)^k h^{p,q,k}}`. Setting `z = 1`
//! recovers the E-polynomial series.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::char_classes::TruncSeries;
use crate::genera::{chi_from_e, EPolynomial, GenusPoly, HodgeTable};
use crate::poly::LaurentPoly;
use crate::{Error, Rational, Result};

/// Largest total dimension accepted by [`signed_sym_power_oracle`].
pub const ORACLE_MAX_DIMENSION: u64 = 6;
/// Largest symmetric power accepted by [`signed_sym_power_oracle`].
pub const ORACLE_MAX_POWER: usize = 5;

/// Variable names of refined coefficients, exponents `[p, q, k]`.
pub const REFINED_VARS: [&str; 3] = ["y", "x", "z"];

/// Polynomial in `y, x, z`.
pub type RefinedPoly = LaurentPoly<3>;

/// `y ↦ y^r, x ↦ x^r`.
pub fn adams(e: &EPolynomial, r: i64) -> Result<EPolynomial> {
    if r < 1 {
        return Err(Error::InvalidInput(format!(
            "Adams index {r} must be at least 1"
        )));
    }
    Ok(e.map_exponents(|[p, q]| [p * r, q * r]))
}

/// Coefficients `e(M^{(n)})` for `n ≤ order`, via `n c_n = Σ_r ψ^r(e) c_{n−r}`.
pub fn symprod_e_series(e: &EPolynomial, order: usize) -> Result<TruncSeries<EPolynomial>> {
    let psi: Vec<EPolynomial> = (1..=order as i64)
        .map(|r| adams(e, r))
        .collect::<Result<_>>()?;
    let mut c = vec![EPolynomial::one()];
    for n in 1..=order {
        let mut acc = EPolynomial::zero();
        for r in 1..=n {
            acc = &acc + &(&psi[r - 1] * &c[n - r]);
        }
        let cn = acc
            .div_exact(&BigInt::from(n))
            .ok_or_else(|| Error::Consistency(format!("coefficient of t^{n} is not integral")))?;
        c.push(cn);
    }
    TruncSeries::new("t", c)
}

fn binomial(n: &BigInt, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

/// `∏_{p,q,k} (1 − y^p x^q z^k t)^{−(−1)^k h^{p,q,k}}` through `t^order`.
pub fn symprod_product_form(t: &HodgeTable, order: usize) -> TruncSeries<RefinedPoly> {
    let mut acc = TruncSeries::constant_in("t", RefinedPoly::one(), order);
    for ((p, q, k), h) in t.entries() {
        let m = RefinedPoly::monomial([p, q, k], BigInt::one());
        let h = BigInt::from(h);
        let factor: Vec<RefinedPoly> = (0..=order)
            .map(|j| {
                let mj = m.pow(j as u32);
                if k.rem_euclid(2) == 0 {
                    // (1 − m t)^{−h} = Σ C(h+j−1, j) m^j t^j
                    mj.scale(&binomial(&(&h + BigInt::from(j) - 1), j))
                } else {
                    // (1 − m t)^{h} = Σ C(h, j) (−m)^j t^j
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    mj.scale(&(binomial(&h, j) * sign))
                }
            })
            .collect();
        acc = acc.mul(&TruncSeries::new("t", factor).expect("nonempty"));
    }
    acc
}

/// Substitutes `z = z0` into refined coefficients.
pub fn specialize_z(s: &TruncSeries<RefinedPoly>, z0: i64) -> TruncSeries<EPolynomial> {
    let coeffs = s
        .coeffs()
        .iter()
        .map(|c| {
            EPolynomial::from_terms(c.terms().map(|([p, q, k], v)| {
                ([*p, *q], v * num_traits::pow(BigInt::from(z0), *k as usize))
            }))
        })
        .collect();
    TruncSeries::new("t", coeffs).expect("nonempty")
}

/// `Σ h^{p,q,k} y^p x^q (−z)^k`.
pub fn refined_from_table(t: &HodgeTable) -> RefinedPoly {
    RefinedPoly::from_terms(t.entries().map(|((p, q, k), h)| {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        ([p, q, k], BigInt::from(h) * sign)
    }))
}

/// Koszul-signed action of a permutation on a basis tensor: position `i`
/// of the result holds factor `perm[i]` of `seq`.
fn permute_with_sign(seq: &[usize], perm: &[usize], degrees: &[i64]) -> (Vec<usize>, bool) {
    // bubble-sort the target order into place, one adjacent swap at a time
    let mut order: Vec<usize> = (0..seq.len()).collect();
    let mut current: Vec<usize> = seq.to_vec();
    let mut negative = false;
    let target_pos: Vec<usize> = {
        let mut pos = vec![0; perm.len()];
        for (i, &src) in perm.iter().enumerate() {
            pos[src] = i;
        }
        pos
    };
    let n = seq.len();
    for pass in 0..n {
        for i in 0..n - 1 - pass {
            if target_pos[order[i]] > target_pos[order[i + 1]] {
                let (a, b) = (current[i], current[i + 1]);
                if degrees[a].rem_euclid(2) == 1 && degrees[b].rem_euclid(2) == 1 {
                    negative = !negative;
                }
                current.swap(i, i + 1);
                order.swap(i, i + 1);
            }
        }
    }
    (current, negative)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// Vector in the tensor power, keyed by basis sequence.
type SparseVec = BTreeMap<Vec<usize>, Rational>;

/// Rank of a set of sparse vectors over ℚ.
fn sparse_rank(mut vecs: Vec<SparseVec>) -> usize {
    let mut rank = 0;
    while let Some(pivot_vec) = vecs.pop() {
        let Some((key, lead)) = pivot_vec.iter().next().map(|(k, v)| (k.clone(), v.clone())) else {
            continue;
        };
        rank += 1;
        for v in vecs.iter_mut() {
            if let Some(f) = v.get(&key).cloned() {
                let f = f / &lead;
                for (k, c) in &pivot_vec {
                    let e = v.entry(k.clone()).or_insert_with(Rational::zero);
                    *e -= &f * c;
                    if e.is_zero() {
                        v.remove(k);
                    }
                }
            }
        }
    }
    rank
}

/// Hodge table of the `Σ_n`-invariants of `V^{⊗n}`, where transposing
/// factors of degrees `k₁, k₂` carries the sign `(−1)^{k₁k₂}`. Brute force
/// over the tensor basis.
pub fn signed_sym_power_oracle(t: &HodgeTable, n: usize) -> Result<HodgeTable> {
    if t.total_dimension() > ORACLE_MAX_DIMENSION || n > ORACLE_MAX_POWER {
        return Err(Error::GuardExceeded(format!(
            "oracle accepts total dimension ≤ {ORACLE_MAX_DIMENSION} and n ≤ {ORACLE_MAX_POWER}; \
             got {} and {n}",
            t.total_dimension()
        )));
    }
    let basis: Vec<(i64, i64, i64)> = t
        .entries()
        .flat_map(|(key, h)| std::iter::repeat_n(key, h as usize))
        .collect();
    let degrees: Vec<i64> = basis.iter().map(|b| b.2).collect();
    let d = basis.len();
    if d == 0 && n > 0 {
        return Ok(HodgeTable::new());
    }
    let perms = permutations(n);

    // images of the symmetrizer, grouped by tridegree; a tensor and its
    // permutations have the same image up to sign, so one non-decreasing
    // representative per orbit spans
    let mut images: HashMap<(i64, i64, i64), Vec<SparseVec>> = HashMap::new();
    let mut seq = vec![0usize; n];
    loop {
        let grade = seq.iter().fold((0, 0, 0), |(p, q, k), &i| {
            (p + basis[i].0, q + basis[i].1, k + basis[i].2)
        });
        let mut img: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        for perm in &perms {
            let (s, neg) = permute_with_sign(&seq, perm, &degrees);
            let e = img.entry(s).or_insert(0);
            *e += if neg { -1 } else { 1 };
        }
        img.retain(|_, v| *v != 0);
        if !img.is_empty() {
            let img = img
                .into_iter()
                .map(|(k, v)| (k, Rational::from_integer(v.into())))
                .collect();
            images.entry(grade).or_default().push(img);
        }
        // next non-decreasing sequence over 0..d
        let Some(i) = (0..n).rev().find(|&i| seq[i] + 1 < d) else {
            break;
        };
        let v = seq[i] + 1;
        seq[i..].iter_mut().for_each(|x| *x = v);
    }
    let mut out = HodgeTable::new();
    for (grade, vecs) in images {
        out.add(grade, sparse_rank(vecs) as u64);
    }
    Ok(out)
}

/// Multiplicities `(k_1, k_2, …)` of a permutation's cycles, `Σ r·k_r = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    counts: Vec<usize>,
}

impl CycleType {
    /// `counts[r − 1] = k_r`; trailing zeros are dropped.
    pub fn new(mut counts: Vec<usize>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        CycleType { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn size(&self) -> usize {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, k)| (i + 1) * k)
            .sum()
    }

    /// `n! / ∏_r r^{k_r} k_r!`.
    pub fn num_permutations(&self) -> BigInt {
        let mut denom = BigInt::one();
        for (i, &k) in self.counts.iter().enumerate() {
            denom *= num_traits::pow(BigInt::from(i + 1), k) * factorial(k);
        }
        factorial(self.size()) / denom
    }

    /// `∏_r ψ^r(e)^{k_r}`, the trace of a permutation of this type on the
    /// tensor power.
    pub fn trace(&self, e: &EPolynomial) -> EPolynomial {
        self.counts
            .iter()
            .enumerate()
            .fold(EPolynomial::one(), |acc, (i, &k)| {
                let psi = adams(e, i as i64 + 1).expect("index ≥ 1");
                &acc * &psi.pow(k as u32)
            })
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// All cycle types of size `n`, as partitions in lexicographic order of
/// their non-increasing part lists.
pub fn partitions(n: usize) -> Vec<CycleType> {
    fn go(rem: usize, max: usize, parts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(parts.clone());
            return;
        }
        for p in 1..=rem.min(max) {
            parts.push(p);
            go(rem - p, p, parts, out);
            parts.pop();
        }
    }
    let mut lists = Vec::new();
    go(n, n, &mut Vec::new(), &mut lists);
    lists
        .into_iter()
        .map(|parts| {
            let mut counts = vec![0; n];
            for p in parts {
                counts[p - 1] += 1;
            }
            CycleType::new(counts)
        })
        .collect()
}

/// `(1/n!) Σ_λ #λ · ∏_r ψ^r(e)^{k_r}`.
pub fn average_over_cycle_types(e: &EPolynomial, n: usize) -> Result<EPolynomial> {
    let sum = partitions(n).iter().fold(EPolynomial::zero(), |acc, ct| {
        &acc + &ct.trace(e).scale(&ct.num_permutations())
    });
    sum.div_exact(&factorial(n))
        .ok_or_else(|| Error::Consistency(format!("average over S_{n} is not integral")))
}

/// χ_y-trace of an `r`-cycle on `M^r`: Adams first, then `y ↦ −y, x ↦ 1`.
pub fn chi_trace_of_cycle(e: &EPolynomial, r: i64) -> Result<GenusPoly> {
    Ok(chi_from_e(&adams(e, r)?))
}

/// `(1/|G|) Σ_g χ_y(X; g)` for a caller-supplied list of traces, one per
/// group element.
pub fn average_traces(traces: &[GenusPoly]) -> Result<GenusPoly> {
    if traces.is_empty() {
        return Err(Error::InvalidInput(
            "a group has at least one element".into(),
        ));
    }
    let sum = traces.iter().fold(GenusPoly::zero(), |a, t| &a + t);
    Ok(sum.scale(&Rational::new(BigInt::one(), BigInt::from(traces.len()))))
}
