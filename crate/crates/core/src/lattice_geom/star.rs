use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::fan::{primitivize, ConeId, Fan};
use super::matrix::{smith_normal_form, IntMatrix};
use crate::{Error, Result};

/// The fan of an orbit closure `V_σ`, living in `N / (N ∩ span σ)`.
#[derive(Clone, Debug)]
pub struct StarData {
    pub base: ConeId,
    pub quotient: Arc<Fan>,
    /// `cone_map[i]` is the ambient cone corresponding to quotient cone `i`.
    pub cone_map: Vec<ConeId>,
    /// Rows of the projection `N → N/(N ∩ span σ)`.
    pub projection: IntMatrix,
}

impl StarData {
    pub fn ambient_cone(&self, c: ConeId) -> Option<ConeId> {
        self.cone_map.get(c.0).copied()
    }
}

/// Quotient fan of the cones containing `sigma`.
///
/// The projection is read off the Smith form `U·A·V = D` of the ray matrix
/// `A` of `sigma`: the last `n − dim σ` rows of `U` map `N` onto the
/// quotient lattice with kernel exactly `N ∩ span σ`.
pub fn star_fan(fan: &Fan, sigma: ConeId) -> Result<StarData> {
    fan.check_cone(sigma)?;
    let n = fan.rank();
    let d = fan.cone_dim(sigma);
    let smith = smith_normal_form(&fan.cone_matrix(sigma));
    if smith.rank() != d {
        return Err(Error::InvalidFan(format!(
            "cone {} is not simplicial",
            fan.label(sigma)
        )));
    }
    let mut proj = IntMatrix::zeros(n - d, n);
    for i in d..n {
        for j in 0..n {
            proj.set(i - d, j, smith.u.get(i, j).clone());
        }
    }

    let base = fan.cone_rays(sigma).to_vec();
    let star = fan.star_cones(sigma);

    // ambient ray -> quotient ray index, ordered by ambient index
    let mut ray_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut qrays: Vec<Vec<i64>> = Vec::new();
    for &(_, r) in fan.cofaces(sigma) {
        ray_of.insert(r, usize::MAX);
    }
    for (r, slot) in ray_of.iter_mut() {
        let image: Vec<BigInt> = (0..n - d)
            .map(|i| {
                proj.row(i)
                    .iter()
                    .zip(fan.ray(*r))
                    .map(|(p, &x)| p * BigInt::from(x))
                    .sum()
            })
            .collect();
        let prim = primitivize(&image).ok_or_else(|| {
            Error::InvalidFan(format!(
                "ray {r} projects to zero in star of {}",
                fan.label(sigma)
            ))
        })?;
        if let Some(pos) = qrays.iter().position(|q| *q == prim) {
            return Err(Error::InvalidFan(format!(
                "rays {r} and another project to the same quotient ray (quotient ray {pos})"
            )));
        }
        *slot = qrays.len();
        qrays.push(prim);
    }

    let mut qcones = Vec::with_capacity(star.len());
    let mut provenance = BTreeMap::new();
    for &t in &star {
        let mut c: Vec<usize> = fan
            .cone_rays(t)
            .iter()
            .filter(|r| !base.contains(r))
            .map(|r| {
                ray_of.get(r).copied().ok_or_else(|| {
                    Error::InvalidFan(format!(
                        "cone {} contains {} without a one-step coface through ray {r}",
                        fan.label(t),
                        fan.label(sigma)
                    ))
                })
            })
            .collect::<Result<_>>()?;
        c.sort_unstable();
        provenance.insert(c.clone(), t);
        qcones.push(c);
    }
    let quotient = Fan::new(n - d, qrays, qcones)?;
    let cone_map = quotient
        .cone_ids()
        .map(|c| provenance[quotient.cone_rays(c)])
        .collect();
    Ok(StarData {
        base: sigma,
        quotient: Arc::new(quotient),
        cone_map,
        projection: proj,
    })
}

/// Product fan: rays block-embedded, cones all unions `σ₁ × σ₂`.
pub fn fan_product(f1: &Fan, f2: &Fan) -> Fan {
    let (n1, n2) = (f1.rank(), f2.rank());
    let r1 = f1.num_rays();
    let rays: Vec<Vec<i64>> = f1
        .rays()
        .iter()
        .map(|r| {
            r.iter()
                .copied()
                .chain(std::iter::repeat_n(0, n2))
                .collect()
        })
        .chain(f2.rays().iter().map(|r| {
            std::iter::repeat_n(0, n1)
                .chain(r.iter().copied())
                .collect()
        }))
        .collect();
    let mut cones = Vec::with_capacity(f1.num_cones() * f2.num_cones());
    for a in f1.cone_ids() {
        for b in f2.cone_ids() {
            let c: Vec<usize> = f1
                .cone_rays(a)
                .iter()
                .copied()
                .chain(f2.cone_rays(b).iter().map(|r| r + r1))
                .collect();
            cones.push(c);
        }
    }
    Fan::new(n1 + n2, rays, cones).expect("product of well-formed fans")
}

/// The cone `σ₁ × σ₂` of `fan_product(f1, f2)`.
pub fn product_cone(f1: &Fan, product: &Fan, a: ConeId, b_rays: &[usize]) -> Option<ConeId> {
    let r1 = f1.num_rays();
    let rays: Vec<usize> = f1
        .cone_rays(a)
        .iter()
        .copied()
        .chain(b_rays.iter().map(|r| r + r1))
        .collect();
    product.cone_id(&rays)
}

#[cfg(test)]
mod tests {
    use super::super::fan::standard::*;
    use super::*;

    #[test]
    fn star_of_zero_cone_is_identity() {
        let f = projective_space(2);
        let s = star_fan(&f, ConeId(0)).unwrap();
        assert_eq!(*s.quotient, f);
        assert!(s.cone_map.iter().enumerate().all(|(i, c)| c.0 == i));
    }

    #[test]
    fn star_of_maximal_cone_is_point() {
        let f = projective_space(2);
        let top = f.cones_of_dim(2)[0];
        let s = star_fan(&f, top).unwrap();
        assert_eq!(*s.quotient, Fan::point());
        assert_eq!(s.cone_map, vec![top]);
    }

    #[test]
    fn star_of_ray_in_p2_is_p1() {
        let f = projective_space(2);
        let rho = f.cone_id(&[0]).unwrap();
        let s = star_fan(&f, rho).unwrap();
        let q = &s.quotient;
        assert_eq!(q.rank(), 1);
        let mut rays = q.rays().to_vec();
        rays.sort();
        assert_eq!(rays, vec![vec![-1], vec![1]]);
        assert!(q.is_smooth().unwrap() && q.is_complete().unwrap());
        // each quotient ray maps to a maximal cone containing ray 0
        for c in q.cones_of_dim(1) {
            let amb = s.ambient_cone(*c).unwrap();
            assert_eq!(f.cone_dim(amb), 2);
            assert!(f.cone_rays(amb).contains(&0));
        }
    }

    #[test]
    fn star_of_hirzebruch_ray() {
        // the ray (0,1) of F_2 has neighbours (1,0) and (-1,2)
        let f = hirzebruch_surface(2);
        let s = star_fan(&f, f.cone_id(&[1]).unwrap()).unwrap();
        assert!(s.quotient.is_complete().unwrap());
        assert_eq!(s.quotient.num_rays(), 2);
    }

    #[test]
    fn products() {
        let p1 = projective_space(1);
        let sq = fan_product(&p1, &p1);
        assert_eq!(sq.num_rays(), 4);
        assert_eq!(sq.cones_of_dim(2).len(), 4);
        assert!(sq.is_smooth().unwrap() && sq.is_complete().unwrap());

        assert_eq!(fan_product(&p1, &Fan::point()), p1);

        let p1p2 = fan_product(&p1, &projective_space(2));
        assert_eq!(p1p2.rank(), 3);
        assert_eq!(p1p2.cones_of_dim(3).len(), 6);
        assert!(p1p2.is_complete().unwrap());
    }

    #[test]
    fn unknown_cone() {
        let f = projective_space(1);
        assert!(matches!(
            star_fan(&f, ConeId(99)),
            Err(Error::UnknownCone(_))
        ));
    }
}
