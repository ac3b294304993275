//! Virtual Hirzebruch classes of hypersurfaces `X ⊂ M` cut out by a section
//! of `O(D)` on a smooth complete toric `M`, and the correction by
//! Milnor-fiber data.
//!
//! The virtual tangent bundle `T_M|_X − O(D)|_X` gives
//! `i_* T^vir_{y*}(X) = T_y^*(T_M) · (D / Q_y(D)) ∩ [M]`, with `T_y^*(T_M)`
//! the product of `Q_y(D_ρ)` over the rays corrected by the trivial factors
//! of the Euler sequence. The classical setting is a global function, where
//! the normal bundle is trivial; here the normal bundle is the restriction
//! of `O(D)`.
//!
//! The correction is `T̂^vir − T̂ = Σ_S (T̂(S̄) − T̂(S̄∖S)) · χ_y(H̃*(F_S))`,
//! assuming constant cohomology sheaves along each stratum. Milnor-fiber data
//! is input, never computed.

use std::sync::Arc;

use crate::char_classes::{
    hirzebruch_via_cotangent, normalize_class, series_coefficients, SeriesKind, TruncSeries,
};
use crate::genera::{genus_of_degree, GenusPoly};
use crate::lattice_geom::Fan;
use crate::toric_cycles::{cap_series, degree, CoeffElem, CycleClass, TDivisor};
use crate::{Error, Result};

/// A hypersurface given by its divisor class on a smooth complete ambient.
#[derive(Clone, Debug)]
pub struct HypersurfaceSpec {
    divisor: TDivisor,
}

impl HypersurfaceSpec {
    pub fn new(divisor: TDivisor) -> Result<Self> {
        divisor.fan().require_smooth_complete()?;
        Ok(HypersurfaceSpec { divisor })
    }

    pub fn ambient(&self) -> &Arc<Fan> {
        self.divisor.fan()
    }

    pub fn divisor(&self) -> &TDivisor {
        &self.divisor
    }
}

/// `α / Q_y(α) = (1 − e^{−α}) / (1 + y e^{−α})`.
pub fn normal_series(order: usize) -> TruncSeries<CoeffElem> {
    let one = TruncSeries::constant(CoeffElem::one(), order);
    let num = one.sub(&TruncSeries::exp_scaled(&CoeffElem::int(-1), order));
    num.div(&series_coefficients(SeriesKind::LambdaYFactor, order))
        .expect("constant term 1+y is a unit")
}

/// `i_* T^vir_{y*}(X)` on the ambient, in canonical form. Every coefficient
/// must come out polynomial in `y`.
pub fn virtual_class_pushforward(h: &HypersurfaceSpec) -> Result<CycleClass> {
    let fan = h.ambient();
    let tangent = hirzebruch_via_cotangent(fan)?;
    let c = cap_series(&normal_series(fan.rank()), &h.divisor, &tangent)?;
    let d = degree(&c)?;
    if !d.is_polynomial() {
        return Err(Error::Consistency(format!(
            "virtual degree {d} is not polynomial"
        )));
    }
    if let Some((cone, v)) = c.coeffs().iter().find(|(_, v)| !v.is_polynomial()) {
        return Err(Error::Consistency(format!(
            "virtual class coefficient {v} on {} is not polynomial",
            fan.label(*cone)
        )));
    }
    Ok(c)
}

/// A normalized Hirzebruch class, either as a cycle class on the ambient or
/// through its degree.
#[derive(Clone, Debug, PartialEq)]
pub enum HodgeValue {
    Class(CycleClass),
    Genus(GenusPoly),
}

impl HodgeValue {
    /// Degree-zero polynomial of the value.
    pub fn genus(&self) -> Result<GenusPoly> {
        match self {
            HodgeValue::Class(c) => genus_of_degree(&degree(c)?),
            HodgeValue::Genus(g) => Ok(g.clone()),
        }
    }
}

/// One stratum `S` of the singular locus.
#[derive(Clone, Debug, PartialEq)]
pub struct StratumDatum {
    pub label: String,
    /// `T̂_{y*}(S̄)`.
    pub closure: HodgeValue,
    /// `T̂_{y*}(S̄ ∖ S)`.
    pub boundary: HodgeValue,
    /// `χ_y(H̃*(F_s))` for a point `s ∈ S`.
    pub milnor: GenusPoly,
}

/// Class-mode correction on `ambient`; every stratum must carry classes.
pub fn milnor_correction_class(ambient: &Arc<Fan>, strata: &[StratumDatum]) -> Result<CycleClass> {
    let mut total = CycleClass::zero(ambient);
    for s in strata {
        let (HodgeValue::Class(a), HodgeValue::Class(b)) = (&s.closure, &s.boundary) else {
            return Err(Error::InvalidInput(format!(
                "stratum {} lacks class data",
                s.label
            )));
        };
        for c in [a, b] {
            if **c.fan() != **ambient {
                return Err(Error::FanMismatch(format!(
                    "stratum {} lives on another ambient",
                    s.label
                )));
            }
        }
        let m = s.milnor.to_coeff().ok_or_else(|| {
            Error::Precondition(format!(
                "Milnor polynomial of {} has negative powers of y",
                s.label
            ))
        })?;
        total = &total + &(a - b).scale(&m);
    }
    total.canonical_form()
}

/// Genus-mode correction: degrees of the stratum classes times the Milnor
/// polynomials.
pub fn milnor_correction_genus(strata: &[StratumDatum]) -> Result<GenusPoly> {
    let mut total = GenusPoly::zero();
    for s in strata {
        let diff = &s.closure.genus()? - &s.boundary.genus()?;
        total = &total + &(&diff * &s.milnor);
    }
    Ok(total)
}

/// Outcome of comparing the virtual class, the actual class and the
/// correction.
#[derive(Clone, Debug, PartialEq)]
pub struct MilnorReport {
    /// `T̂^vir`, normalized, or its degree.
    pub virtual_value: HodgeValue,
    /// `T̂^vir − T̂(X)`.
    pub difference: HodgeValue,
    /// The weighted sum over strata.
    pub correction: HodgeValue,
    pub consistent: bool,
}

/// Checks `T̂^vir − actual = correction`, in the mode of `actual`.
pub fn hirzebruch_milnor_difference(
    h: &HypersurfaceSpec,
    actual: &HodgeValue,
    strata: &[StratumDatum],
) -> Result<MilnorReport> {
    let virt = normalize_class(&virtual_class_pushforward(h)?);
    match actual {
        HodgeValue::Class(a) => {
            let diff = (&virt - a).canonical_form()?;
            let corr = milnor_correction_class(h.ambient(), strata)?;
            let consistent = diff.equivalent(&corr)?;
            Ok(MilnorReport {
                virtual_value: HodgeValue::Class(virt),
                difference: HodgeValue::Class(diff),
                correction: HodgeValue::Class(corr),
                consistent,
            })
        }
        HodgeValue::Genus(a) => {
            let v = genus_of_degree(&degree(&virt)?)?;
            let diff = &v - a;
            let corr = milnor_correction_genus(strata)?;
            let consistent = diff == corr;
            Ok(MilnorReport {
                virtual_value: HodgeValue::Genus(v),
                difference: HodgeValue::Genus(diff),
                correction: HodgeValue::Genus(corr),
                consistent,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::char_classes::{hirzebruch_normalized, hirzebruch_unnormalized};
    use crate::genera::{chi_from_e, parse_e_polynomial};
    use crate::lattice_geom::standard::*;
    use crate::lattice_geom::star_fan;
    use crate::poly::UniPoly;
    use crate::toric_cycles::{orbit_closure_class, pushforward_from_star};
    use crate::Rational;

    fn arc(f: Fan) -> Arc<Fan> {
        Arc::new(f)
    }

    fn g(s: &str) -> GenusPoly {
        GenusPoly::parse(s).unwrap()
    }

    fn hyperplane_class(pn: &Arc<Fan>, normalized: bool) -> CycleClass {
        let rho = pn.cone_id(&[0]).unwrap();
        let star = star_fan(pn, rho).unwrap();
        let t = if normalized {
            hirzebruch_normalized(&star.quotient).unwrap()
        } else {
            hirzebruch_unnormalized(&star.quotient).unwrap()
        };
        pushforward_from_star(&star, pn, &t)
            .unwrap()
            .canonical_form()
            .unwrap()
    }

    fn nodal_strata(milnor: &str) -> Vec<StratumDatum> {
        vec![StratumDatum {
            label: "node".into(),
            closure: HodgeValue::Genus(GenusPoly::one()),
            boundary: HodgeValue::Genus(GenusPoly::zero()),
            milnor: g(milnor),
        }]
    }

    #[test]
    fn normal_series_terms() {
        let s = normal_series(3);
        assert!(s.coeff(0).is_zero());
        assert_eq!(s.coeff(1), CoeffElem::one_plus_y_pow(-1));
    }

    #[test]
    fn hyperplanes_are_projective_spaces() {
        for n in 1..=3 {
            let pn = arc(projective_space(n));
            let h = HypersurfaceSpec::new(TDivisor::ray(&pn, 0).unwrap()).unwrap();
            assert_eq!(
                virtual_class_pushforward(&h).unwrap(),
                hyperplane_class(&pn, false)
            );
        }
    }

    #[test]
    fn hyperplane_in_p2_explicit() {
        let p2 = arc(projective_space(2));
        let h = HypersurfaceSpec::new(TDivisor::ray(&p2, 1).unwrap()).unwrap();
        let v = virtual_class_pushforward(&h).unwrap();
        let line = orbit_closure_class(&p2, p2.cone_id(&[2]).unwrap()).unwrap();
        let pt = orbit_closure_class(&p2, p2.cone_id(&[1, 2]).unwrap()).unwrap();
        let want = &line.scale(&CoeffElem::one_plus_y())
            + &pt.scale(&CoeffElem::poly(UniPoly::from_ints(&[1, -1])));
        assert!(v.equivalent(&want).unwrap());
    }

    #[test]
    fn smooth_cubic_has_vanishing_genus() {
        let p2 = arc(projective_space(2));
        let h = HypersurfaceSpec::new(TDivisor::from_ints(&p2, &[3, 0, 0]).unwrap()).unwrap();
        assert!(degree(&virtual_class_pushforward(&h).unwrap())
            .unwrap()
            .is_zero());
        // conic: χ_y(ℙ¹) = 1 − y
        let h = HypersurfaceSpec::new(TDivisor::from_ints(&p2, &[1, 1, 0]).unwrap()).unwrap();
        assert_eq!(
            degree(&virtual_class_pushforward(&h).unwrap()).unwrap(),
            CoeffElem::poly(UniPoly::from_ints(&[1, -1]))
        );
    }

    #[test]
    fn empty_hypersurface() {
        let p1 = arc(projective_space(1));
        let h = HypersurfaceSpec::new(TDivisor::from_ints(&p1, &[0, 0]).unwrap()).unwrap();
        assert!(virtual_class_pushforward(&h).unwrap().is_zero());
    }

    #[test]
    fn corrections() {
        assert!(milnor_correction_genus(&[]).unwrap().is_zero());
        let p2 = arc(projective_space(2));
        assert!(milnor_correction_class(&p2, &[]).unwrap().is_zero());

        // isolated point: the Milnor polynomial times [pt]
        let pt = orbit_closure_class(&p2, p2.cones_of_dim(2)[0]).unwrap();
        let strata = vec![StratumDatum {
            label: "x".into(),
            closure: HodgeValue::Class(pt.clone()),
            boundary: HodgeValue::Class(CycleClass::zero(&p2)),
            milnor: g("2y"),
        }];
        let c = milnor_correction_class(&p2, &strata).unwrap();
        assert!(c
            .equivalent(&pt.scale(&CoeffElem::poly(UniPoly::from_ints(&[0, 2]))))
            .unwrap());
        assert_eq!(milnor_correction_genus(&strata).unwrap(), g("2y"));

        assert_eq!(milnor_correction_genus(&nodal_strata("y")).unwrap(), g("y"));
    }

    #[test]
    fn nodal_cubic() {
        let p2 = arc(projective_space(2));
        let h = HypersurfaceSpec::new(TDivisor::from_ints(&p2, &[3, 0, 0]).unwrap()).unwrap();
        // nodal cubic = ℂ* ⊔ point
        let actual = &chi_from_e(&parse_e_polynomial("yx-1").unwrap()) + &GenusPoly::one();
        assert_eq!(actual, g("-y"));
        let r = hirzebruch_milnor_difference(
            &h,
            &HodgeValue::Genus(actual.clone()),
            &nodal_strata("y"),
        )
        .unwrap();
        assert!(r.consistent);
        assert_eq!(r.difference, HodgeValue::Genus(g("y")));
        assert_eq!(r.virtual_value, HodgeValue::Genus(GenusPoly::zero()));

        let bad = hirzebruch_milnor_difference(&h, &HodgeValue::Genus(actual), &nodal_strata("2y"))
            .unwrap();
        assert!(!bad.consistent);
    }

    #[test]
    fn euler_characteristic_specialization() {
        // at y = −1 the difference is the reduced Euler characteristic of
        // the Milnor fiber of the node, ℂ* with χ̃ = −1
        let p2 = arc(projective_space(2));
        let h = HypersurfaceSpec::new(TDivisor::from_ints(&p2, &[3, 0, 0]).unwrap()).unwrap();
        let r = hirzebruch_milnor_difference(&h, &HodgeValue::Genus(g("-y")), &nodal_strata("y"))
            .unwrap();
        let HodgeValue::Genus(d) = r.difference else {
            panic!("genus mode")
        };
        assert_eq!(
            d.eval(&-Rational::from_integer(1.into())).unwrap(),
            -Rational::from_integer(1.into())
        );
    }

    #[test]
    fn smooth_hyperplane_class_mode() {
        let p2 = arc(projective_space(2));
        let h = HypersurfaceSpec::new(TDivisor::ray(&p2, 0).unwrap()).unwrap();
        let actual = HodgeValue::Class(hyperplane_class(&p2, true));
        let r = hirzebruch_milnor_difference(&h, &actual, &[]).unwrap();
        assert!(r.consistent);
    }

    #[test]
    fn mixed_ambients_rejected() {
        let p2 = arc(projective_space(2));
        let p1 = arc(projective_space(1));
        let strata = vec![StratumDatum {
            label: "s".into(),
            closure: HodgeValue::Class(CycleClass::fundamental(&p1)),
            boundary: HodgeValue::Class(CycleClass::zero(&p1)),
            milnor: GenusPoly::one(),
        }];
        assert!(matches!(
            milnor_correction_class(&p2, &strata),
            Err(Error::FanMismatch(_))
        ));
    }
}
