use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;

use super::chow::reducers;
use super::coeff::CoeffElem;
use crate::char_classes::TruncSeries;
use crate::lattice_geom::linalg::{self, to_q, QMatrix};
use crate::lattice_geom::{fan_product, product_cone, ConeId, Fan, StarData};
use crate::{Error, Rational, Result};

/// Formal sum `Σ c_σ [V_σ]` on a fixed fan. Zero coefficients are never
/// stored.
#[derive(Clone, Debug)]
pub struct CycleClass {
    fan: Arc<Fan>,
    coeffs: BTreeMap<ConeId, CoeffElem>,
}

impl PartialEq for CycleClass {
    /// Compares representatives; use [`CycleClass::equivalent`] for classes.
    fn eq(&self, other: &Self) -> bool {
        same_fan(&self.fan, &other.fan) && self.coeffs == other.coeffs
    }
}

fn same_fan(a: &Arc<Fan>, b: &Arc<Fan>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl CycleClass {
    pub fn zero(fan: &Arc<Fan>) -> Self {
        CycleClass {
            fan: Arc::clone(fan),
            coeffs: BTreeMap::new(),
        }
    }

    /// `[X]`, the class of the zero cone.
    pub fn fundamental(fan: &Arc<Fan>) -> Self {
        let zero = fan.zero_cone().expect("every fan has a zero cone");
        Self::zero(fan).with_term(zero, CoeffElem::one())
    }

    pub fn from_terms(
        fan: &Arc<Fan>,
        terms: impl IntoIterator<Item = (ConeId, CoeffElem)>,
    ) -> Result<Self> {
        let mut c = Self::zero(fan);
        for (sigma, v) in terms {
            fan.check_cone(sigma)?;
            c.add_term(sigma, &v);
        }
        Ok(c)
    }

    fn with_term(mut self, sigma: ConeId, v: CoeffElem) -> Self {
        self.add_term(sigma, &v);
        self
    }

    fn add_term(&mut self, sigma: ConeId, v: &CoeffElem) {
        if v.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(sigma).or_default();
        *entry = &*entry + v;
        if entry.is_zero() {
            self.coeffs.remove(&sigma);
        }
    }

    pub fn fan(&self) -> &Arc<Fan> {
        &self.fan
    }

    pub fn coeffs(&self) -> &BTreeMap<ConeId, CoeffElem> {
        &self.coeffs
    }

    pub fn coeff(&self, sigma: ConeId) -> CoeffElem {
        self.coeffs.get(&sigma).cloned().unwrap_or_default()
    }

    /// True iff the representative has no terms.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Complex dimension of `[V_σ]`.
    pub fn grading_of(&self, sigma: ConeId) -> usize {
        self.fan.rank() - self.fan.cone_dim(sigma)
    }

    pub fn graded_part(&self, k: usize) -> Self {
        self.filter(|c| self.grading_of(c) == k)
    }

    fn filter(&self, keep: impl Fn(ConeId) -> bool) -> Self {
        CycleClass {
            fan: Arc::clone(&self.fan),
            coeffs: self
                .coeffs
                .iter()
                .filter(|(c, _)| keep(**c))
                .map(|(c, v)| (*c, v.clone()))
                .collect(),
        }
    }

    /// Highest grading carrying a nonzero coefficient.
    pub fn top_grading(&self) -> Option<usize> {
        self.coeffs.keys().map(|&c| self.grading_of(c)).max()
    }

    /// Applies `f(grading, coefficient)` to every term.
    pub fn map_coeffs(&self, f: impl Fn(usize, &CoeffElem) -> Result<CoeffElem>) -> Result<Self> {
        let mut out = Self::zero(&self.fan);
        for (&c, v) in &self.coeffs {
            out.add_term(c, &f(self.grading_of(c), v)?);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &CoeffElem) -> Self {
        self.map_coeffs(|_, v| Ok(v * s)).expect("scaling is total")
    }

    pub fn is_polynomial(&self) -> bool {
        self.coeffs.values().all(CoeffElem::is_polynomial)
    }

    /// The unique representative whose support avoids the pivot cones of
    /// the row-reduced relations, grading by grading.
    pub fn canonical_form(&self) -> Result<Self> {
        let red = reducers(&self.fan)?;
        let mut out = Self::zero(&self.fan);
        for (k, g) in red.per_grading.iter().enumerate() {
            if !self.coeffs.keys().any(|&c| self.grading_of(c) == k) {
                continue;
            }
            let mut dense: Vec<CoeffElem> = g.cones.iter().map(|&c| self.coeff(c)).collect();
            g.reduce(&mut dense);
            for (c, v) in g.cones.iter().zip(dense) {
                out.add_term(*c, &v);
            }
        }
        Ok(out)
    }

    /// Equality modulo rational equivalence.
    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        self.check_fan(other)?;
        Ok((self - other).canonical_form()?.is_zero())
    }

    fn check_fan(&self, other: &Self) -> Result<()> {
        if same_fan(&self.fan, &other.fan) {
            Ok(())
        } else {
            Err(Error::FanMismatch("classes live on different fans".into()))
        }
    }

    /// `(label, coefficient)` pairs in cone order.
    pub fn labeled_terms(&self) -> Vec<(String, &CoeffElem)> {
        self.coeffs
            .iter()
            .map(|(&c, v)| (self.fan.label(c), v))
            .collect()
    }
}

impl Add for &CycleClass {
    type Output = CycleClass;
    /// Panics if the fans differ.
    fn add(self, rhs: &CycleClass) -> CycleClass {
        self.check_fan(rhs)
            .expect("adding classes on different fans");
        let mut out = self.clone();
        for (&c, v) in &rhs.coeffs {
            out.add_term(c, v);
        }
        out
    }
}

impl Sub for &CycleClass {
    type Output = CycleClass;
    /// Panics if the fans differ.
    fn sub(self, rhs: &CycleClass) -> CycleClass {
        self + &(-rhs)
    }
}

impl Neg for &CycleClass {
    type Output = CycleClass;
    fn neg(self) -> CycleClass {
        self.scale(&CoeffElem::int(-1))
    }
}

impl fmt::Display for CycleClass {
    /// `(1+y)*[{}] + (1-y)*[{1}]`, cones in id order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&c, v)| format!("({v})*[{}]", self.fan.label(c)))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A torus-invariant ℚ-divisor `Σ a_ρ D_ρ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TDivisor {
    fan: Arc<Fan>,
    coeffs: Vec<Rational>,
}

impl TDivisor {
    pub fn new(fan: &Arc<Fan>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != fan.num_rays() {
            return Err(Error::InvalidInput(format!(
                "divisor has {} coefficients, fan has {} rays",
                coeffs.len(),
                fan.num_rays()
            )));
        }
        Ok(TDivisor {
            fan: Arc::clone(fan),
            coeffs,
        })
    }

    pub fn from_ints(fan: &Arc<Fan>, coeffs: &[i64]) -> Result<Self> {
        Self::new(fan, to_q(coeffs))
    }

    /// `D_ρ`.
    pub fn ray(fan: &Arc<Fan>, rho: usize) -> Result<Self> {
        if rho >= fan.num_rays() {
            return Err(Error::InvalidInput(format!("fan has no ray {rho}")));
        }
        let mut a = vec![Rational::zero(); fan.num_rays()];
        a[rho] = Rational::from_integer(1.into());
        Self::new(fan, a)
    }

    /// `div(χ^m) = Σ ⟨m, u_ρ⟩ D_ρ`.
    pub fn principal(fan: &Arc<Fan>, m: &[i64]) -> Result<Self> {
        if m.len() != fan.rank() {
            return Err(Error::InvalidInput("character has wrong length".into()));
        }
        let a = fan
            .rays()
            .iter()
            .map(|u| {
                Rational::from_integer(u.iter().zip(m).map(|(x, y)| x * y).sum::<i64>().into())
            })
            .collect();
        Self::new(fan, a)
    }

    pub fn fan(&self) -> &Arc<Fan> {
        &self.fan
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }
}

/// `[V_σ]`.
pub fn orbit_closure_class(fan: &Arc<Fan>, sigma: ConeId) -> Result<CycleClass> {
    CycleClass::from_terms(fan, [(sigma, CoeffElem::one())])
}

/// Solves `⟨m, u_ρ⟩ = a_ρ` for the rays of `σ`; any solution is admissible.
fn local_character(fan: &Fan, sigma: ConeId, a: &[Rational]) -> Result<Vec<Rational>> {
    let rows: QMatrix = fan
        .cone_rays(sigma)
        .iter()
        .map(|&r| to_q(fan.ray(r)))
        .collect();
    let rhs: Vec<Rational> = fan.cone_rays(sigma).iter().map(|&r| a[r].clone()).collect();
    linalg::solve(&rows, &rhs, fan.rank()).ok_or_else(|| {
        Error::Precondition(format!("no local character on cone {}", fan.label(sigma)))
    })
}

/// `D · c` in canonical form.
pub fn intersect_divisor(d: &TDivisor, c: &CycleClass) -> Result<CycleClass> {
    intersect_divisor_using(d, c, |_, m| m)
}

/// As [`intersect_divisor`], letting `choose` replace each local character
/// by another admissible one.
pub(crate) fn intersect_divisor_using(
    d: &TDivisor,
    c: &CycleClass,
    choose: impl Fn(ConeId, Vec<Rational>) -> Vec<Rational>,
) -> Result<CycleClass> {
    if !same_fan(&d.fan, &c.fan) {
        return Err(Error::FanMismatch(
            "divisor and class live on different fans".into(),
        ));
    }
    let fan = &c.fan;
    fan.require_smooth_complete()?;
    let mut out = CycleClass::zero(fan);
    for (&sigma, v) in &c.coeffs {
        let m = choose(sigma, local_character(fan, sigma, &d.coeffs)?);
        for &(gamma, rho) in fan.cofaces(sigma) {
            let w = &d.coeffs[rho] - linalg::dot_int(&m, fan.ray(rho));
            if !w.is_zero() {
                out.add_term(gamma, &v.scale(&w));
            }
        }
    }
    out.canonical_form()
}

/// `Σ_j s_j D^j ∩ c`.
pub fn cap_series(s: &TruncSeries<CoeffElem>, d: &TDivisor, c: &CycleClass) -> Result<CycleClass> {
    let n = c.fan.rank();
    if s.order() < n {
        return Err(Error::InsufficientOrder {
            order: s.order(),
            needed: n,
        });
    }
    let mut acc = CycleClass::zero(&c.fan);
    let mut power = c.clone();
    for sj in s.coeffs() {
        if power.is_zero() {
            break;
        }
        acc = &acc + &power.scale(sj);
        power = intersect_divisor(d, &power)?;
    }
    acc.canonical_form()
}

/// `c1 ⊠ c2` on `fan_product(c1.fan, c2.fan)`.
pub fn external_product(c1: &CycleClass, c2: &CycleClass) -> Result<CycleClass> {
    let target = Arc::new(fan_product(&c1.fan, &c2.fan));
    external_product_on(&target, c1, c2)
}

/// `c1 ⊠ c2` on a caller-supplied product fan, which must equal
/// `fan_product(c1.fan, c2.fan)`.
pub fn external_product_on(
    target: &Arc<Fan>,
    c1: &CycleClass,
    c2: &CycleClass,
) -> Result<CycleClass> {
    if **target != fan_product(&c1.fan, &c2.fan) {
        return Err(Error::FanMismatch(
            "target is not the product of the factor fans".into(),
        ));
    }
    let mut out = CycleClass::zero(target);
    for (&a, va) in &c1.coeffs {
        for (&b, vb) in &c2.coeffs {
            let ab = product_cone(&c1.fan, target, a, c2.fan.cone_rays(b))
                .ok_or_else(|| Error::FanMismatch("product cone missing".into()))?;
            out.add_term(ab, &(va * vb));
        }
    }
    Ok(out)
}

/// Relabels a class on the star fan of `σ` as a class on the ambient fan.
pub fn pushforward_from_star(
    star: &StarData,
    ambient: &Arc<Fan>,
    c: &CycleClass,
) -> Result<CycleClass> {
    if !same_fan(&star.quotient, &c.fan) {
        return Err(Error::FanMismatch(
            "class does not live on the star fan".into(),
        ));
    }
    ambient.check_cone(star.base)?;
    let mut out = CycleClass::zero(ambient);
    for (&q, v) in &c.coeffs {
        let amb = star
            .ambient_cone(q)
            .ok_or_else(|| Error::UnknownCone(format!("quotient cone {q} has no ambient image")))?;
        ambient.check_cone(amb)?;
        out.add_term(amb, v);
    }
    Ok(out)
}

/// Sum of the grading-zero coefficients.
pub fn degree(c: &CycleClass) -> Result<CoeffElem> {
    c.fan.require_smooth_complete()?;
    Ok(c.graded_part(0)
        .coeffs
        .values()
        .fold(CoeffElem::zero(), |acc, v| &acc + v))
}
