//! χ_y-genera and E-polynomials.
//!
//! The E-polynomial of a tri-graded table is `e = Σ (−1)^k h^{p,q,k} y^p x^q`
//! and the χ_y-genus is `e(−y, 1)`. Both are additive over stratifications
//! and multiplicative over products.
//!
//! For a toric variety the orbit `O_σ ≅ (ℂ*)^{n − dim σ}` has compactly
//! supported E-polynomial `(yx − 1)^{n − dim σ}`, whose χ_y is
//! `(−1 − y)^{n − dim σ}`. Additivity over the orbit decomposition gives
//! `χ_y(X_Σ) = Σ_σ (−1 − y)^{n − dim σ}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::char_classes::hirzebruch_unnormalized;
use crate::lattice_geom::Fan;
use crate::poly::{forward_owned_binops, join_terms, monomial, parse_sparse, LaurentPoly, UniPoly};
use crate::toric_cycles::{degree, CoeffElem};
use crate::{Error, Rational, Result};

/// Variable names of an [`EPolynomial`].
pub const E_VARS: [&str; 2] = ["y", "x"];

/// `Σ e^{p,q} y^p x^q`, exponents `[p, q]`.
pub type EPolynomial = LaurentPoly<2>;

/// Sparse `(p, q, k) → h^{p,q,k}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HodgeTable {
    entries: BTreeMap<(i64, i64, i64), u64>,
}

impl HodgeTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(it: impl IntoIterator<Item = ((i64, i64, i64), u64)>) -> Self {
        let mut t = Self::new();
        for (key, h) in it {
            t.add(key, h);
        }
        t
    }

    pub fn add(&mut self, key: (i64, i64, i64), h: u64) {
        if h == 0 {
            return;
        }
        *self.entries.entry(key).or_insert(0) += h;
    }

    pub fn get(&self, key: (i64, i64, i64)) -> u64 {
        self.entries.get(&key).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((i64, i64, i64), u64)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ h^{p,q,k}`.
    pub fn total_dimension(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn has_odd_class(&self) -> bool {
        self.entries.keys().any(|&(_, _, k)| k.rem_euclid(2) == 1)
    }
}

/// `e^{p,q} = Σ_k (−1)^k h^{p,q,k}`.
pub fn e_from_table(t: &HodgeTable) -> EPolynomial {
    EPolynomial::from_terms(t.entries().map(|((p, q, k), h)| {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        ([p, q], BigInt::from(h) * sign)
    }))
}

pub fn parse_e_polynomial(s: &str) -> Result<EPolynomial> {
    EPolynomial::parse_with(s, &E_VARS)
}

pub fn format_e_polynomial(e: &EPolynomial) -> String {
    e.format_with(&E_VARS)
}

/// Laurent polynomial in `y` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GenusPoly {
    terms: BTreeMap<i64, Rational>,
}

impl GenusPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    pub fn y() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn monomial(e: i64, c: Rational) -> Self {
        let mut g = Self::zero();
        g.add_term(e, c);
        g
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(0, Rational::from_integer(c.into()))
    }

    fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn from_unipoly(p: &UniPoly) -> Self {
        let mut g = Self::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            g.add_term(i as i64, c.clone());
        }
        g
    }

    /// Defined when `c` has no `(1+y)` denominator.
    pub fn from_coeff(c: &CoeffElem) -> Option<Self> {
        c.as_polynomial().map(Self::from_unipoly)
    }

    /// The polynomial as a coefficient, if it has no negative powers.
    pub fn to_coeff(&self) -> Option<CoeffElem> {
        let lo = self.terms.keys().next().copied().unwrap_or(0);
        if lo < 0 {
            return None;
        }
        let hi = self.terms.keys().last().copied().unwrap_or(0);
        let coeffs = (0..=hi).map(|i| self.coeff(i)).collect();
        Some(CoeffElem::poly(UniPoly::from_coeffs(coeffs)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut g = Self::zero();
        for (e, v) in &self.terms {
            g.add_term(*e, v * c);
        }
        g
    }

    /// Value at `y = y0`; `None` at `y0 = 0` when negative powers occur.
    pub fn eval(&self, y0: &Rational) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (&e, c) in &self.terms {
            if e < 0 && y0.is_zero() {
                return None;
            }
            let base = if e < 0 { y0.recip() } else { y0.clone() };
            acc += c * num_traits::pow(base, e.unsigned_abs() as usize);
        }
        Some(acc)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut g = Self::zero();
        for (e, c) in parse_sparse(s, &["y"])? {
            g.add_term(e[0], c);
        }
        Ok(g)
    }
}

impl Add for &GenusPoly {
    type Output = GenusPoly;
    fn add(self, rhs: &GenusPoly) -> GenusPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &GenusPoly {
    type Output = GenusPoly;
    fn sub(self, rhs: &GenusPoly) -> GenusPoly {
        self + &(-rhs)
    }
}

impl Mul for &GenusPoly {
    type Output = GenusPoly;
    fn mul(self, rhs: &GenusPoly) -> GenusPoly {
        let mut out = GenusPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Neg for &GenusPoly {
    type Output = GenusPoly;
    fn neg(self) -> GenusPoly {
        self.scale(&-Rational::one())
    }
}

forward_owned_binops!(GenusPoly,);

impl fmt::Display for GenusPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (c.clone(), monomial(&["y"], &[*e])));
        f.write_str(&join_terms(terms))
    }
}

/// `χ_y = e(−y, 1)`.
pub fn chi_from_e(e: &EPolynomial) -> GenusPoly {
    let mut g = GenusPoly::zero();
    for ([p, _], c) in e.terms() {
        let sign = if p.rem_euclid(2) == 0 { 1 } else { -1 };
        g.add_term(*p, Rational::from_integer(c * sign));
    }
    g
}

/// `Σ_σ (−1 − y)^{n − dim σ}`.
pub fn chi_y_of_toric(fan: &Fan) -> Result<GenusPoly> {
    fan.require_valid()?;
    let base = GenusPoly::from_int(-1) - GenusPoly::y();
    let n = fan.rank();
    let mut powers = vec![GenusPoly::one()];
    for k in 1..=n {
        powers.push(&powers[k - 1] * &base);
    }
    Ok(fan.cone_ids().fold(GenusPoly::zero(), |acc, c| {
        &acc + &powers[n - fan.cone_dim(c)]
    }))
}

/// Disjoint union of strata.
pub fn scissor_add(e1: &EPolynomial, e2: &EPolynomial) -> EPolynomial {
    e1 + e2
}

/// Product of varieties.
pub fn product(e1: &EPolynomial, e2: &EPolynomial) -> EPolynomial {
    e1 * e2
}

/// Compares the degree of the Hirzebruch class with the cone-counting genus.
pub fn genus_degree_bridge(fan: &Arc<Fan>) -> Result<bool> {
    let d = degree(&hirzebruch_unnormalized(fan)?)?;
    let chi = chi_y_of_toric(fan)?;
    Ok(GenusPoly::from_coeff(&d).is_some_and(|g| g == chi))
}

/// Degree-zero part of a class as a genus polynomial; must be polynomial.
pub fn genus_of_degree(d: &CoeffElem) -> Result<GenusPoly> {
    GenusPoly::from_coeff(d)
        .ok_or_else(|| Error::Consistency(format!("degree {d} is not a polynomial in y")))
}
