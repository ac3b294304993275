use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::fan::Fan;
use super::linalg::{self, dot_int, q, to_q, QMatrix};
use crate::{Error, Rational, Result};

/// Largest bounding box [`enumerate_lattice_points`] will scan.
pub const ENUMERATION_GUARD: u128 = 10_000_000;

/// Facet inequality `⟨m, normal⟩ ≥ −offset` with a primitive inner normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn contains(&self, m: &[i64]) -> bool {
        let s: i128 = self
            .normal
            .iter()
            .zip(m)
            .map(|(&a, &b)| i128::from(a) * i128::from(b))
            .sum();
        s >= -i128::from(self.offset)
    }

    fn is_tight(&self, m: &[i64]) -> bool {
        let s: i128 = self
            .normal
            .iter()
            .zip(m)
            .map(|(&a, &b)| i128::from(a) * i128::from(b))
            .sum();
        s == -i128::from(self.offset)
    }
}

/// Full-dimensional lattice polytope given by its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    rank: usize,
    vertices: Vec<Vec<i64>>,
    facets: Vec<Facet>,
}

impl Polytope {
    /// Accepts exactly the vertex set of a full-dimensional polytope.
    pub fn new(rank: usize, vertices: Vec<Vec<i64>>) -> Result<Self> {
        let hull = Self::convex_hull(rank, vertices.clone())?;
        let given: BTreeSet<_> = vertices.iter().collect();
        if given.len() != vertices.len() {
            return Err(Error::InvalidInput("repeated vertex".into()));
        }
        if let Some(v) = vertices.iter().find(|v| !hull.vertices.contains(v)) {
            return Err(Error::InvalidInput(format!("{v:?} is not a vertex")));
        }
        Ok(hull)
    }

    /// Convex hull of a point set; interior and repeated points are dropped.
    pub fn convex_hull(rank: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != rank) {
            return Err(Error::InvalidInput(format!(
                "point {p:?} does not have {rank} coordinates"
            )));
        }
        let points: Vec<Vec<i64>> = points
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if points.is_empty() {
            return Err(Error::InvalidInput("empty polytope".into()));
        }
        let diffs: QMatrix = points
            .iter()
            .map(|p| p.iter().zip(&points[0]).map(|(a, b)| q(a - b)).collect())
            .collect();
        if linalg::rank(&diffs, rank) != rank {
            return Err(Error::InvalidInput(
                "polytope is not full-dimensional".into(),
            ));
        }
        let facets = facets_of(rank, &points);
        let vertices = points
            .into_iter()
            .filter(|p| {
                let normals: QMatrix = facets
                    .iter()
                    .filter(|f| f.is_tight(p))
                    .map(|f| to_q(&f.normal))
                    .collect();
                linalg::rank(&normals, rank) == rank
            })
            .collect();
        Ok(Polytope {
            rank,
            vertices,
            facets,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// Facets sorted by normal in decreasing lexicographic order.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        self.facets.iter().all(|f| f.contains(m))
    }

    /// The dilation `k·P`.
    pub fn dilate(&self, k: i64) -> Result<Self> {
        if k <= 0 {
            return Err(Error::InvalidInput(
                "dilation factor must be positive".into(),
            ));
        }
        Polytope::new(
            self.rank,
            self.vertices
                .iter()
                .map(|v| v.iter().map(|x| x * k).collect())
                .collect(),
        )
    }

    /// The unit simplex conv{0, e_1, …, e_n}.
    pub fn unit_simplex(n: usize) -> Self {
        let mut vs = vec![vec![0; n]];
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            vs.push(e);
        }
        Polytope::new(n, vs).expect("unit simplex")
    }

    /// The box `[0, s_1] × … × [0, s_n]`.
    pub fn lattice_box(sides: &[i64]) -> Result<Self> {
        let n = sides.len();
        let vs = (0..1u64 << n)
            .map(|mask| {
                (0..n)
                    .map(|i| if mask & (1 << i) != 0 { sides[i] } else { 0 })
                    .collect()
            })
            .collect();
        Polytope::new(n, vs)
    }
}

fn facets_of(rank: usize, points: &[Vec<i64>]) -> Vec<Facet> {
    let mut found = BTreeSet::new();
    let mut subset = Vec::with_capacity(rank);
    choose(points.len(), rank, 0, &mut subset, &mut |idx| {
        let base = &points[idx[0]];
        let rows: QMatrix = idx[1..]
            .iter()
            .map(|&i| points[i].iter().zip(base).map(|(a, b)| q(a - b)).collect())
            .collect();
        let ns = linalg::nullspace(&rows, rank);
        if ns.len() != 1 {
            return;
        }
        let Some(mut normal) = linalg::primitive_integer(&ns[0]) else {
            return;
        };
        let level = dot_int(&to_q(&normal), base);
        let mut above = false;
        let mut below = false;
        for p in points {
            let s = dot_int(&to_q(&normal), p) - &level;
            above |= s.is_positive();
            below |= s.is_negative();
        }
        if above && below {
            return;
        }
        if below {
            normal.iter_mut().for_each(|x| *x = -*x);
        }
        let min = points
            .iter()
            .map(|p| dot_int(&to_q(&normal), p))
            .min()
            .unwrap_or_else(Rational::zero);
        let offset = i64::try_from(-min.to_integer()).expect("facet offset fits i64");
        found.insert(Facet { normal, offset });
    });
    let mut facets: Vec<Facet> = found.into_iter().collect();
    facets.sort_by(|a, b| b.normal.cmp(&a.normal));
    facets
}

fn choose(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        if k == 0 {
            return;
        }
        f(cur);
        return;
    }
    for i in start..n {
        cur.push(i);
        choose(n, k, i + 1, cur, f);
        cur.pop();
    }
}

/// Inner normal fan of a simple polytope, with the support numbers `a_ρ` of
/// `P = {m : ⟨m, u_ρ⟩ ≥ −a_ρ}`. Rays follow the facet order of
/// [`Polytope::facets`]; maximal cones are the facet sets at each vertex.
pub fn normal_fan(p: &Polytope) -> Result<(Fan, Vec<i64>)> {
    let n = p.rank();
    let facets = p.facets();
    let rays: Vec<Vec<i64>> = facets.iter().map(|f| f.normal.clone()).collect();
    let offsets = facets.iter().map(|f| f.offset).collect();
    let mut maximal = Vec::with_capacity(p.vertices().len());
    for v in p.vertices() {
        let tight: Vec<usize> = (0..facets.len())
            .filter(|&i| facets[i].is_tight(v))
            .collect();
        if tight.len() != n {
            return Err(Error::Precondition(format!(
                "vertex {v:?} lies on {} facets; only simple polytopes have simplicial normal fans",
                tight.len()
            )));
        }
        maximal.push(tight);
    }
    let fan = Fan::from_maximal_cones(n, rays, maximal)?;
    Ok((fan, offsets))
}

/// Lattice points of `P`, counted by scanning its bounding box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCount {
    pub count: u64,
    pub points: Option<Vec<Vec<i64>>>,
}

/// Counts `P ∩ ℤⁿ` by half-space membership over the bounding box. Refuses
/// boxes with more than [`ENUMERATION_GUARD`] candidates.
pub fn enumerate_lattice_points(p: &Polytope, collect: bool) -> Result<LatticeCount> {
    let n = p.rank();
    let lo: Vec<i64> = (0..n)
        .map(|i| p.vertices().iter().map(|v| v[i]).min().unwrap_or(0))
        .collect();
    let hi: Vec<i64> = (0..n)
        .map(|i| p.vertices().iter().map(|v| v[i]).max().unwrap_or(0))
        .collect();
    let mut volume: u128 = 1;
    for i in 0..n {
        volume = volume.saturating_mul((hi[i] - lo[i] + 1) as u128);
    }
    if volume > ENUMERATION_GUARD {
        return Err(Error::GuardExceeded(format!(
            "bounding box has {volume} candidate points (limit {ENUMERATION_GUARD}); use a smaller polytope"
        )));
    }
    let mut count = 0u64;
    let mut points = collect.then(Vec::new);
    let mut m = lo.clone();
    loop {
        if p.contains(&m) {
            count += 1;
            if let Some(ps) = points.as_mut() {
                ps.push(m.clone());
            }
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == n {
                return Ok(LatticeCount { count, points });
            }
            if m[i] < hi[i] {
                m[i] += 1;
                break;
            }
            m[i] = lo[i];
            i += 1;
        }
    }
}
