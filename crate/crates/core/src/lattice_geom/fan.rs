use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::linalg::{self, q, QMatrix};
use super::matrix::{smith_normal_form, IntMatrix};
use crate::toric_cycles::chow::Reducers;
use crate::{Error, Rational, Result};

/// Index of a cone in [`Fan::cones`]. Cones are sorted by dimension and then
/// lexicographically by ray indices, so the zero cone of a valid fan is
/// always `ConeId(0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConeId(pub usize);

impl fmt::Display for ConeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A violated fan invariant, as reported by [`Fan::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ZeroRay(usize),
    RayNotPrimitive(usize),
    DuplicateRay(usize, usize),
    MissingZeroCone,
    DuplicateCone(Vec<usize>),
    NotSimplicial(Vec<usize>),
    MissingFace { cone: Vec<usize>, face: Vec<usize> },
    IntersectionNotFace(Vec<usize>, Vec<usize>),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroRay(i) => write!(f, "ray {i} is zero"),
            Violation::RayNotPrimitive(i) => write!(f, "ray {i} not primitive"),
            Violation::DuplicateRay(i, j) => write!(f, "rays {i} and {j} coincide"),
            Violation::MissingZeroCone => write!(f, "zero cone missing"),
            Violation::DuplicateCone(c) => write!(f, "cone {} listed twice", cone_label(c)),
            Violation::NotSimplicial(c) => {
                write!(f, "cone {} not simplicial", cone_label(c))
            }
            Violation::MissingFace { cone, face } => write!(
                f,
                "face {} of cone {} missing",
                cone_label(face),
                cone_label(cone)
            ),
            Violation::IntersectionNotFace(a, b) => write!(
                f,
                "cones {} and {}: intersection not a face",
                cone_label(a),
                cone_label(b)
            ),
        }
    }
}

/// Renders a ray-index set as `{0,2}`.
pub fn cone_label(rays: &[usize]) -> String {
    let parts: Vec<String> = rays.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// A rational polyhedral fan given by integer rays and simplicial cones.
///
/// Construction only checks shape (ray lengths, index ranges). The remaining
/// invariants are checked by [`Fan::validate`], which reports every
/// violation instead of failing on the first.
#[derive(Clone)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, ConeId>,
    by_dim: Vec<Vec<ConeId>>,
    // (coface, the extra ray) for every cone of one more dimension
    cofaces: Vec<Vec<(ConeId, usize)>>,
    violations: OnceLock<Vec<Violation>>,
    pub(crate) reducers: OnceLock<Result<Reducers>>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.cones == other.cones
    }
}

impl Eq for Fan {}

impl fmt::Debug for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fan")
            .field("rank", &self.rank)
            .field("rays", &self.rays)
            .field("cones", &self.cones)
            .finish()
    }
}

impl Fan {
    /// Builds a fan from the complete list of its cones.
    pub fn new(rank: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Self> {
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::InvalidInput(format!(
                    "ray {i} has length {}, expected {rank}",
                    r.len()
                )));
            }
        }
        let mut sorted = Vec::with_capacity(cones.len());
        for c in cones {
            let mut c = c;
            c.sort_unstable();
            if c.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!(
                    "cone {} repeats a ray",
                    cone_label(&c)
                )));
            }
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidInput(format!(
                    "cone {} references missing ray {bad}",
                    cone_label(&c)
                )));
            }
            sorted.push(c);
        }
        sorted.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

        let max_dim = sorted.iter().map(Vec::len).max().unwrap_or(0);
        let mut index = HashMap::new();
        let mut by_dim = vec![Vec::new(); max_dim.max(rank) + 1];
        for (i, c) in sorted.iter().enumerate() {
            index.entry(c.clone()).or_insert(ConeId(i));
            by_dim[c.len()].push(ConeId(i));
        }
        let mut cofaces = vec![Vec::new(); sorted.len()];
        for (i, c) in sorted.iter().enumerate() {
            for (k, &r) in c.iter().enumerate() {
                let mut face = c.clone();
                face.remove(k);
                if let Some(&f) = index.get(&face) {
                    cofaces[f.0].push((ConeId(i), r));
                }
            }
        }
        Ok(Fan {
            rank,
            rays,
            cones: sorted,
            index,
            by_dim,
            cofaces,
            violations: OnceLock::new(),
            reducers: OnceLock::new(),
        })
    }

    /// Builds a fan from generating cones, adding every face (all subsets of
    /// each simplicial cone, including the zero cone).
    pub fn from_maximal_cones(
        rank: usize,
        rays: Vec<Vec<i64>>,
        maximal: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let mut all = BTreeSet::new();
        all.insert(Vec::new());
        for c in maximal {
            let mut c = c;
            c.sort_unstable();
            c.dedup();
            if c.len() > 20 {
                return Err(Error::InvalidInput("cone with more than 20 rays".into()));
            }
            for mask in 0u32..(1 << c.len()) {
                let face: Vec<usize> = c
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) != 0)
                    .map(|(_, &r)| r)
                    .collect();
                all.insert(face);
            }
        }
        Fan::new(rank, rays, all.into_iter().collect())
    }

    /// The fan of a point: rank 0, only the zero cone.
    pub fn point() -> Self {
        Fan::new(0, Vec::new(), vec![Vec::new()]).expect("point fan")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[i64] {
        &self.rays[i]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn num_cones(&self) -> usize {
        self.cones.len()
    }

    pub fn cone_ids(&self) -> impl Iterator<Item = ConeId> {
        (0..self.cones.len()).map(ConeId)
    }

    pub fn cone_rays(&self, c: ConeId) -> &[usize] {
        &self.cones[c.0]
    }

    pub fn cone_dim(&self, c: ConeId) -> usize {
        self.cones[c.0].len()
    }

    pub fn contains_cone(&self, c: ConeId) -> bool {
        c.0 < self.cones.len()
    }

    pub fn check_cone(&self, c: ConeId) -> Result<()> {
        if self.contains_cone(c) {
            Ok(())
        } else {
            Err(Error::UnknownCone(c.to_string()))
        }
    }

    /// Looks up the cone with exactly these rays (in any order).
    pub fn cone_id(&self, rays: &[usize]) -> Option<ConeId> {
        let mut key = rays.to_vec();
        key.sort_unstable();
        self.index.get(&key).copied()
    }

    pub fn zero_cone(&self) -> Option<ConeId> {
        self.cone_id(&[])
    }

    pub fn cones_of_dim(&self, d: usize) -> &[ConeId] {
        self.by_dim.get(d).map_or(&[], Vec::as_slice)
    }

    /// Cones of one more dimension containing `c`, with the ray they add.
    pub fn cofaces(&self, c: ConeId) -> &[(ConeId, usize)] {
        &self.cofaces[c.0]
    }

    /// Every cone containing `c` (including `c`).
    pub fn star_cones(&self, c: ConeId) -> Vec<ConeId> {
        let base = &self.cones[c.0];
        self.cone_ids()
            .filter(|&t| is_subset(base, &self.cones[t.0]))
            .collect()
    }

    pub fn maximal_cones(&self) -> Vec<ConeId> {
        self.cone_ids()
            .filter(|&c| self.cofaces[c.0].is_empty())
            .collect()
    }

    pub fn label(&self, c: ConeId) -> String {
        cone_label(&self.cones[c.0])
    }

    /// Ray matrix of a cone, one column per ray.
    pub fn cone_matrix(&self, c: ConeId) -> IntMatrix {
        let cols: Vec<&[i64]> = self.cones[c.0].iter().map(|&r| self.ray(r)).collect();
        IntMatrix::from_columns(self.rank, &cols)
    }

    /// All violated invariants; empty iff the fan is valid.
    pub fn validate(&self) -> &[Violation] {
        self.violations.get_or_init(|| self.compute_violations())
    }

    pub fn require_valid(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidFan(v.to_string())),
        }
    }

    /// Every cone is generated by part of a lattice basis.
    pub fn is_smooth(&self) -> Result<bool> {
        self.require_valid()?;
        Ok(self.maximal_cones().into_iter().all(|c| {
            let s = smith_normal_form(&self.cone_matrix(c));
            let f = s.invariant_factors();
            f.len() == self.cone_dim(c) && f.iter().all(One::is_one)
        }))
    }

    /// Completeness by facet pairing: the fan is pure of full dimension,
    /// every (n−1)-cone lies in exactly two n-cones, and the maximal cones are
    /// connected through shared facets.
    pub fn is_complete(&self) -> Result<bool> {
        self.require_valid()?;
        let n = self.rank;
        if n == 0 {
            return Ok(self.cones.len() == 1);
        }
        let maximal = self.maximal_cones();
        if maximal.iter().any(|&c| self.cone_dim(c) != n) {
            return Ok(false);
        }
        for &f in self.cones_of_dim(n - 1) {
            if self.cofaces(f).len() != 2 {
                return Ok(false);
            }
        }
        // connectivity of the dual graph
        let top = self.cones_of_dim(n);
        if top.is_empty() {
            return Ok(false);
        }
        let pos: HashMap<ConeId, usize> = top.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut seen = vec![false; top.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            let c = top[i];
            for k in 0..n {
                let mut facet = self.cones[c.0].clone();
                facet.remove(k);
                let fid = self.index[&facet];
                for &(other, _) in self.cofaces(fid) {
                    let j = pos[&other];
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        Ok(seen.into_iter().all(|s| s))
    }

    pub fn require_smooth_complete(&self) -> Result<()> {
        if !self.is_smooth()? {
            return Err(Error::NotSmooth);
        }
        if !self.is_complete()? {
            return Err(Error::NotComplete);
        }
        Ok(())
    }

    fn compute_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, r) in self.rays.iter().enumerate() {
            let g = r.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            if g == 0 {
                out.push(Violation::ZeroRay(i));
            } else if g != 1 {
                out.push(Violation::RayNotPrimitive(i));
            }
            for j in 0..i {
                if self.rays[j] == *r {
                    out.push(Violation::DuplicateRay(j, i));
                }
            }
        }
        if self.cones.first().is_none_or(|c| !c.is_empty()) {
            out.push(Violation::MissingZeroCone);
        }
        for w in self.cones.windows(2) {
            if w[0] == w[1] {
                out.push(Violation::DuplicateCone(w[0].clone()));
            }
        }
        for c in self.cone_ids() {
            let rays = &self.cones[c.0];
            let rows = self.cone_matrix(c).transpose().to_rational_rows();
            if rays.len() > self.rank || linalg::rank(&rows, self.rank) != rays.len() {
                out.push(Violation::NotSimplicial(rays.clone()));
            }
            for k in 0..rays.len() {
                let mut face = rays.clone();
                face.remove(k);
                if !self.index.contains_key(&face) {
                    out.push(Violation::MissingFace {
                        cone: rays.clone(),
                        face,
                    });
                }
            }
        }
        if out.iter().any(|v| matches!(v, Violation::NotSimplicial(_))) {
            return out;
        }
        let maximal = self.maximal_cones();
        for (a_pos, &a) in maximal.iter().enumerate() {
            for &b in &maximal[a_pos + 1..] {
                if !self.meets_in_face(a, b) {
                    out.push(Violation::IntersectionNotFace(
                        self.cones[a.0].clone(),
                        self.cones[b.0].clone(),
                    ));
                }
            }
        }
        out
    }

    /// Whether the intersection of two simplicial cones is the cone on their
    /// common rays. A point of `a ∩ b` outside that face is a solution of
    /// `Σ s_i u_i − Σ t_j v_j = 0` with `s, t ≥ 0` and positive weight on
    /// some non-shared ray; feasibility is decided exactly.
    fn meets_in_face(&self, a: ConeId, b: ConeId) -> bool {
        let ra = &self.cones[a.0];
        let rb = &self.cones[b.0];
        let cols: Vec<(Vec<i64>, bool)> = ra
            .iter()
            .map(|&r| (self.rays[r].clone(), !rb.contains(&r)))
            .chain(
                rb.iter()
                    .map(|&r| (self.rays[r].iter().map(|x| -x).collect(), !ra.contains(&r))),
            )
            .collect();
        if cols.iter().all(|(_, outside)| !outside) {
            return true;
        }
        let ncols = cols.len();
        let mut a_mat: QMatrix = (0..self.rank)
            .map(|i| cols.iter().map(|(v, _)| q(v[i])).collect())
            .collect();
        a_mat.push(
            cols.iter()
                .map(|(_, outside)| if *outside { q(1) } else { q(0) })
                .collect(),
        );
        let mut rhs = vec![Rational::zero(); self.rank];
        rhs.push(Rational::one());
        !linalg::nonneg_feasible(&a_mat, &rhs, ncols)
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.contains(x))
}

/// Makes a primitive integer vector out of an arbitrary-precision one.
pub(crate) fn primitivize(v: &[BigInt]) -> Option<Vec<i64>> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    v.iter().map(|x| i64::try_from(x / &g).ok()).collect()
}

/// Fans used throughout tests, examples and the acceptance suite.
pub mod standard {
    use super::Fan;

    /// ℙⁿ: rays e_1..e_n and −(e_1+…+e_n); every n-subset spans a cone.
    pub fn projective_space(n: usize) -> Fan {
        if n == 0 {
            return Fan::point();
        }
        let mut rays: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        rays.push(vec![-1; n]);
        let maximal = (0..=n)
            .map(|skip| (0..=n).filter(|&i| i != skip).collect())
            .collect();
        Fan::from_maximal_cones(n, rays, maximal).expect("projective space fan")
    }

    /// Hirzebruch surface F_a: rays (1,0), (0,1), (−1,a), (0,−1).
    pub fn hirzebruch_surface(a: i64) -> Fan {
        Fan::from_maximal_cones(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .expect("hirzebruch surface fan")
    }

    /// Affine plane ℂ²: a single maximal cone.
    pub fn affine_plane() -> Fan {
        Fan::from_maximal_cones(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1]])
            .expect("affine plane fan")
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;

    #[test]
    fn p1_is_valid() {
        let f = Fan::new(1, vec![vec![1], vec![-1]], vec![vec![], vec![0], vec![1]]).unwrap();
        assert!(f.validate().is_empty());
        assert!(f.is_smooth().unwrap());
        assert!(f.is_complete().unwrap());
    }

    #[test]
    fn non_primitive_ray_is_reported() {
        let f = Fan::new(1, vec![vec![2], vec![-1]], vec![vec![], vec![0], vec![1]]).unwrap();
        let report: Vec<String> = f.validate().iter().map(ToString::to_string).collect();
        assert_eq!(report, vec!["ray 0 not primitive"]);
        assert!(f.is_smooth().is_err());
    }

    #[test]
    fn overlapping_cones_are_reported() {
        // cone((1,0),(0,1)) and cone((1,1),(-1,2)) overlap in a full sector
        let f = Fan::from_maximal_cones(
            2,
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![-1, 2]],
            vec![vec![0, 1], vec![2, 3]],
        )
        .unwrap();
        let v = f.validate();
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().ends_with("intersection not a face"));
    }

    #[test]
    fn touching_cones_are_fine() {
        // only the origin is shared
        let f = Fan::from_maximal_cones(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            vec![vec![0, 1], vec![2, 3]],
        )
        .unwrap();
        assert!(f.validate().is_empty());
        assert!(!f.is_complete().unwrap());
    }

    #[test]
    fn missing_faces_and_zero_cone() {
        let f = Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1]]).unwrap();
        let v = f.validate();
        assert!(v.contains(&Violation::MissingZeroCone));
        assert!(v.iter().any(|x| matches!(x, Violation::MissingFace { .. })));
    }

    #[test]
    fn p2_smooth_and_complete() {
        let f = projective_space(2);
        assert_eq!(f.rays(), &[vec![1, 0], vec![0, 1], vec![-1, -1]]);
        assert_eq!(f.num_cones(), 7);
        assert!(f.is_smooth().unwrap());
        assert!(f.is_complete().unwrap());
    }

    #[test]
    fn quadric_cone_is_singular() {
        let f = Fan::from_maximal_cones(2, vec![vec![1, 0], vec![1, 2]], vec![vec![0, 1]]).unwrap();
        assert!(f.validate().is_empty());
        assert!(!f.is_smooth().unwrap());
    }

    #[test]
    fn affine_plane_is_incomplete() {
        let f = affine_plane();
        assert!(f.is_smooth().unwrap());
        assert!(!f.is_complete().unwrap());
    }

    #[test]
    fn two_copies_of_p1_are_not_complete() {
        // two disconnected full sectors in rank 2 pass the local pairing test
        // nowhere; check the pure-but-boundary case instead
        let f = Fan::from_maximal_cones(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0]],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        assert!(!f.is_complete().unwrap());
    }

    #[test]
    fn hirzebruch_surfaces() {
        for a in 0..4 {
            let f = hirzebruch_surface(a);
            assert!(f.validate().is_empty(), "F_{a}");
            assert!(f.is_smooth().unwrap());
            assert!(f.is_complete().unwrap());
        }
    }

    #[test]
    fn point_fan() {
        let f = Fan::point();
        assert!(f.validate().is_empty());
        assert!(f.is_smooth().unwrap());
        assert!(f.is_complete().unwrap());
        assert_eq!(f.zero_cone(), Some(ConeId(0)));
    }

    #[test]
    fn shape_errors() {
        assert!(Fan::new(2, vec![vec![1]], vec![]).is_err());
        assert!(Fan::new(1, vec![vec![1]], vec![vec![3]]).is_err());
        assert!(Fan::new(1, vec![vec![1]], vec![vec![0, 0]]).is_err());
    }
}
