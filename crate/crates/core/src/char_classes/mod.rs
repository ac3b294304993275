//! Characteristic power series and the characteristic classes of smooth
//! complete toric varieties they produce.
//!
//! Every class is returned in canonical form. The unnormalized Hirzebruch
//! class is available through two independent routes, a sum over orbit
//! closures and a product over toric divisors, and the two must agree.

mod series;

use std::str::FromStr;
use std::sync::Arc;

pub use series::{
    polynomial_coefficients, relation_check_qyhat, relation_holds, series_coefficients, CoeffRing,
    SeriesKind, TruncSeries,
};

use crate::lattice_geom::{normal_fan, star_fan, Fan, Polytope};
use crate::toric_cycles::{
    cap_series, degree, pushforward_from_star, CoeffElem, CycleClass, TDivisor,
};
use crate::{Error, Rational, Result};

/// `∏_ρ s(D_ρ) · s(0)^{n − r} ∩ [X]` for `r` rays: the toric Euler sequence
/// `0 → O^{r−n} → ⊕_ρ O(D_ρ) → T_X → 0` turns a multiplicative class of
/// `T_X` into a product over the rays divided by the trivial factors.
pub(crate) fn tangent_class(fan: &Arc<Fan>, kind: SeriesKind) -> Result<CycleClass> {
    fan.require_smooth_complete()?;
    let s = series_coefficients(kind, fan.rank());
    let trivial = s.coeff(0).try_inverse().ok_or_else(|| {
        Error::Precondition(format!("{} has no invertible constant term", kind.name()))
    })?;
    let extra = fan.num_rays() - fan.rank();
    let mut c = CycleClass::fundamental(fan).scale(&pow(&trivial, extra));
    for rho in 0..fan.num_rays() {
        c = cap_series(&s, &TDivisor::ray(fan, rho)?, &c)?;
    }
    c.canonical_form()
}

fn pow(c: &CoeffElem, e: usize) -> CoeffElem {
    (0..e).fold(CoeffElem::one(), |acc, _| &acc * c)
}

/// `td_*(X) = ∏_ρ Todd(D_ρ) ∩ [X]`.
pub fn todd_class(fan: &Arc<Fan>) -> Result<CycleClass> {
    tangent_class(fan, SeriesKind::Todd)
}

/// `td_*(ω_X) = ∏_ρ ToddDual(D_ρ) ∩ [X]`.
pub fn omega_todd_class(fan: &Arc<Fan>) -> Result<CycleClass> {
    tangent_class(fan, SeriesKind::ToddDual)
}

/// `Σ_σ [V_σ]`. Reduced to canonical form when the fan is smooth and
/// complete, otherwise returned as the raw orbit sum.
pub fn chern_class_ehler(fan: &Arc<Fan>) -> Result<CycleClass> {
    fan.require_valid()?;
    let c = CycleClass::from_terms(fan, fan.cone_ids().map(|s| (s, CoeffElem::one())))?;
    if fan.is_smooth()? && fan.is_complete()? {
        c.canonical_form()
    } else {
        Ok(c)
    }
}

/// `Σ_σ (1+y)^{n − dim σ} (k_σ)_* td_*(ω_{V_σ})`.
pub fn hirzebruch_unnormalized(fan: &Arc<Fan>) -> Result<CycleClass> {
    fan.require_smooth_complete()?;
    let n = fan.rank() as i64;
    let mut total = CycleClass::zero(fan);
    for sigma in fan.cone_ids() {
        let star = star_fan(fan, sigma)?;
        let local = omega_todd_class(&star.quotient)?;
        let pushed = pushforward_from_star(&star, fan, &local)?;
        let codim = n - fan.cone_dim(sigma) as i64;
        total = &total + &pushed.scale(&CoeffElem::one_plus_y_pow(codim));
    }
    total.canonical_form()
}

/// `T_y^*(T_X) ∩ [X] = ∏_ρ Q_y(D_ρ) · (1+y)^{n − r} ∩ [X]`.
pub fn hirzebruch_via_cotangent(fan: &Arc<Fan>) -> Result<CycleClass> {
    tangent_class(fan, SeriesKind::Qy)
}

/// Multiplies the grading-`k` part by `(1+y)^{−k}`.
pub fn normalize_class(c: &CycleClass) -> CycleClass {
    c.map_coeffs(|k, v| Ok(v.shift(-(k as i64))))
        .expect("normalization is total")
}

/// The normalized class `T̂_{y*}(X)`; fails if a `(1+y)` denominator
/// survives.
pub fn hirzebruch_normalized(fan: &Arc<Fan>) -> Result<CycleClass> {
    let c = normalize_class(&hirzebruch_unnormalized(fan)?);
    require_polynomial(&c, "normalized Hirzebruch class")?;
    Ok(c)
}

/// Consistency check that every coefficient is a polynomial in `y`.
pub fn require_polynomial(c: &CycleClass, what: &str) -> Result<()> {
    match c.coeffs().iter().find(|(_, v)| !v.is_polynomial()) {
        None => Ok(()),
        Some((&cone, v)) => Err(Error::Consistency(format!(
            "{what}: coefficient {v} on {} is not polynomial",
            c.fan().label(cone)
        ))),
    }
}

/// Substitutes `y = y0`; at `y0 = −1` every coefficient must be polynomial.
pub fn specialize(c: &CycleClass, y0: &Rational) -> Result<CycleClass> {
    c.map_coeffs(|_, v| Ok(CoeffElem::rational(v.eval(y0)?)))
}

/// `#(P ∩ ℤⁿ) = ∫ e^{D_P} ∩ td_*(X_P)` for a full-dimensional lattice
/// polytope with smooth normal fan.
pub fn todd_riemann_roch_count(p: &Polytope) -> Result<Rational> {
    let (fan, offsets) = normal_fan(p)?;
    let fan = Arc::new(fan);
    let td = todd_class(&fan)?;
    let d = TDivisor::from_ints(&fan, &offsets)?;
    let c = cap_series(&series_coefficients(SeriesKind::Exp, fan.rank()), &d, &td)?;
    degree(&c)?
        .as_polynomial()
        .filter(|p| p.degree().unwrap_or(0) == 0)
        .map(|p| p.coeff(0))
        .ok_or_else(|| Error::Consistency("lattice point count depends on y".into()))
}

/// The classes offered on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKind {
    Hirzebruch,
    HirzebruchNormalized,
    Todd,
    Chern,
    OmegaTodd,
}

impl ClassKind {
    pub fn name(self) -> &'static str {
        match self {
            ClassKind::Hirzebruch => "hirzebruch",
            ClassKind::HirzebruchNormalized => "hirzebruch-normalized",
            ClassKind::Todd => "todd",
            ClassKind::Chern => "chern",
            ClassKind::OmegaTodd => "omega-todd",
        }
    }

    pub fn compute(self, fan: &Arc<Fan>) -> Result<CycleClass> {
        match self {
            ClassKind::Hirzebruch => hirzebruch_unnormalized(fan),
            ClassKind::HirzebruchNormalized => hirzebruch_normalized(fan),
            ClassKind::Todd => todd_class(fan),
            ClassKind::Chern => chern_class_ehler(fan),
            ClassKind::OmegaTodd => omega_todd_class(fan),
        }
    }
}

impl FromStr for ClassKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            ClassKind::Hirzebruch,
            ClassKind::HirzebruchNormalized,
            ClassKind::Todd,
            ClassKind::Chern,
            ClassKind::OmegaTodd,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| Error::InvalidInput(format!("unknown class {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_geom::standard::*;
    use crate::lattice_geom::{fan_product, ConeId};
    use crate::poly::UniPoly;
    use crate::toric_cycles::{degree, external_product, orbit_closure_class};

    fn arc(f: Fan) -> Arc<Fan> {
        Arc::new(f)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn p(c: &[i64]) -> CoeffElem {
        CoeffElem::poly(UniPoly::from_ints(c))
    }

    fn rat(n: i64, d: i64) -> CoeffElem {
        CoeffElem::rational(q(n, d))
    }

    /// `a[X] + b[line or ray class] + c[pt]` on a fan whose gradings each
    /// have a single class (ℙ¹, ℙ²).
    fn graded(fan: &Arc<Fan>, parts: &[CoeffElem]) -> CycleClass {
        let n = fan.rank();
        let mut c = CycleClass::zero(fan);
        for (k, v) in parts.iter().enumerate() {
            let sigma = fan.cones_of_dim(n - k)[0];
            c = &c + &orbit_closure_class(fan, sigma).unwrap().scale(v);
        }
        c.canonical_form().unwrap()
    }

    fn test_fans() -> Vec<Arc<Fan>> {
        let p1 = projective_space(1);
        vec![
            arc(Fan::point()),
            arc(p1.clone()),
            arc(projective_space(2)),
            arc(fan_product(&p1, &p1)),
            arc(projective_space(3)),
            arc(hirzebruch_surface(1)),
            arc(hirzebruch_surface(2)),
        ]
    }

    #[test]
    fn todd_classes() {
        let p1 = arc(projective_space(1));
        assert_eq!(
            todd_class(&p1).unwrap(),
            graded(&p1, &[rat(1, 1), rat(1, 1)])
        );
        let p2 = arc(projective_space(2));
        assert_eq!(
            todd_class(&p2).unwrap(),
            graded(&p2, &[rat(1, 1), rat(3, 2), rat(1, 1)])
        );
        let pt = arc(Fan::point());
        assert_eq!(todd_class(&pt).unwrap(), CycleClass::fundamental(&pt));
    }

    #[test]
    fn omega_todd_classes() {
        let p1 = arc(projective_space(1));
        assert_eq!(
            omega_todd_class(&p1).unwrap(),
            graded(&p1, &[rat(-1, 1), rat(1, 1)])
        );
        let p2 = arc(projective_space(2));
        assert_eq!(
            omega_todd_class(&p2).unwrap(),
            graded(&p2, &[rat(1, 1), rat(-3, 2), rat(1, 1)])
        );
        let pt = arc(Fan::point());
        assert_eq!(omega_todd_class(&pt).unwrap(), CycleClass::fundamental(&pt));
    }

    #[test]
    fn ehler_classes() {
        let p1 = arc(projective_space(1));
        assert_eq!(
            chern_class_ehler(&p1).unwrap(),
            graded(&p1, &[rat(2, 1), rat(1, 1)])
        );
        let p2 = arc(projective_space(2));
        assert_eq!(
            chern_class_ehler(&p2).unwrap(),
            graded(&p2, &[rat(3, 1), rat(3, 1), rat(1, 1)])
        );
        let pt = arc(Fan::point());
        assert_eq!(
            chern_class_ehler(&pt).unwrap(),
            CycleClass::fundamental(&pt)
        );
        // incomplete fans keep the raw orbit sum
        assert_eq!(
            chern_class_ehler(&arc(affine_plane()))
                .unwrap()
                .coeffs()
                .len(),
            4
        );
    }

    #[test]
    fn hirzebruch_p1() {
        let p1 = arc(projective_space(1));
        let want = graded(&p1, &[p(&[1, -1]), p(&[1, 1])]);
        assert_eq!(hirzebruch_unnormalized(&p1).unwrap(), want);
        assert_eq!(hirzebruch_via_cotangent(&p1).unwrap(), want);
        let normalized = normalize_class(&want);
        assert_eq!(normalized, graded(&p1, &[p(&[1, -1]), p(&[1])]));
    }

    #[test]
    fn hirzebruch_p2_degree() {
        let p2 = arc(projective_space(2));
        let t = hirzebruch_via_cotangent(&p2).unwrap();
        assert_eq!(degree(&t).unwrap(), p(&[1, -1, 1]));
    }

    #[test]
    fn both_routes_agree() {
        for f in test_fans() {
            assert_eq!(
                hirzebruch_unnormalized(&f).unwrap(),
                hirzebruch_via_cotangent(&f).unwrap()
            );
        }
    }

    #[test]
    fn riemann_roch_counts_lattice_points() {
        // kΔ_n has C(k+n, n) points; a box with sides a_i has ∏(a_i + 1)
        for (n, k, expected) in [(1, 3, 4), (2, 1, 3), (2, 2, 6), (2, 4, 15), (3, 2, 10)] {
            let p = Polytope::unit_simplex(n).dilate(k).unwrap();
            assert_eq!(todd_riemann_roch_count(&p).unwrap(), q(expected, 1));
        }
        for (sides, expected) in [(vec![1, 1], 4), (vec![2, 3], 12), (vec![1, 1, 1], 8)] {
            let p = Polytope::lattice_box(&sides).unwrap();
            assert_eq!(todd_riemann_roch_count(&p).unwrap(), q(expected, 1));
        }
    }

    #[test]
    fn riemann_roch_rejects_singular_normal_fans() {
        // the corner at (0,1) has normals (1,0), (−1,−2) of determinant −2
        let p = Polytope::convex_hull(2, vec![vec![0, 0], vec![2, 0], vec![0, 1]]).unwrap();
        assert!(matches!(todd_riemann_roch_count(&p), Err(Error::NotSmooth)));
    }

    #[test]
    fn specializations() {
        for f in test_fans() {
            let t = hirzebruch_unnormalized(&f).unwrap();
            let hat = hirzebruch_normalized(&f).unwrap();
            assert!(hat.is_polynomial());
            assert_eq!(
                specialize(&hat, &q(-1, 1)).unwrap(),
                chern_class_ehler(&f).unwrap()
            );
            let todd = todd_class(&f).unwrap();
            assert_eq!(specialize(&hat, &q(0, 1)).unwrap(), todd);
            assert_eq!(specialize(&t, &q(0, 1)).unwrap(), todd);
        }
    }

    #[test]
    fn specialize_needs_polynomial_at_minus_one() {
        let p1 = arc(projective_space(1));
        let c = CycleClass::fundamental(&p1).scale(&CoeffElem::one_plus_y_pow(-1));
        assert_eq!(specialize(&c, &q(-1, 1)), Err(Error::NotPolynomial));
        assert!(specialize(&c, &q(1, 1)).is_ok());
    }

    #[test]
    fn normalization_cancels_exactly() {
        let p2 = arc(projective_space(2));
        let c = CycleClass::fundamental(&p2).scale(&CoeffElem::one_plus_y_pow(2));
        assert_eq!(normalize_class(&c), CycleClass::fundamental(&p2));
        let pt = orbit_closure_class(&p2, p2.cones_of_dim(2)[0]).unwrap();
        assert_eq!(normalize_class(&pt), pt);
    }

    #[test]
    fn multiplicative_under_products() {
        let p1 = arc(projective_space(1));
        let t = hirzebruch_unnormalized(&p1).unwrap();
        let prod = external_product(&t, &t).unwrap();
        let sq = Arc::clone(prod.fan());
        assert!(prod
            .equivalent(&hirzebruch_unnormalized(&sq).unwrap())
            .unwrap());

        let p2 = arc(projective_space(2));
        let t2 = hirzebruch_unnormalized(&p2).unwrap();
        let prod = external_product(&t, &t2).unwrap();
        let f = Arc::clone(prod.fan());
        assert!(prod
            .equivalent(&hirzebruch_unnormalized(&f).unwrap())
            .unwrap());
    }

    #[test]
    fn class_kind_names() {
        for k in [
            "hirzebruch",
            "hirzebruch-normalized",
            "todd",
            "chern",
            "omega-todd",
        ] {
            assert_eq!(k.parse::<ClassKind>().unwrap().name(), k);
        }
        assert!("pontryagin".parse::<ClassKind>().is_err());
    }

    #[test]
    fn point_class_is_zero_cone() {
        let pt = arc(Fan::point());
        let t = hirzebruch_unnormalized(&pt).unwrap();
        assert_eq!(t.coeff(ConeId(0)), CoeffElem::one());
    }
}
