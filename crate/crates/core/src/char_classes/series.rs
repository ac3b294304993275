use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::poly::{LaurentPoly, UniPoly};
use crate::toric_cycles::CoeffElem;
use crate::{Error, Rational, Result};

/// Commutative ring operations needed for truncated series arithmetic.
pub trait CoeffRing: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl CoeffRing for CoeffElem {
    fn zero() -> Self {
        CoeffElem::zero()
    }
    fn one() -> Self {
        CoeffElem::one()
    }
    fn is_zero(&self) -> bool {
        CoeffElem::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl<const N: usize> CoeffRing for LaurentPoly<N> {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// `Σ_{i ≤ order} c_i v^i`, exact modulo `v^{order+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C> {
    var: &'static str,
    coeffs: Vec<C>,
}

impl<C: CoeffRing> TruncSeries<C> {
    /// Series in `var` truncated at `coeffs.len() − 1`; `coeffs` must be
    /// nonempty.
    pub fn new(var: &'static str, coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "series needs at least one coefficient".into(),
            ));
        }
        Ok(TruncSeries { var, coeffs })
    }

    pub fn zero_in(var: &'static str, order: usize) -> Self {
        TruncSeries {
            var,
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn constant_in(var: &'static str, c: C, order: usize) -> Self {
        let mut s = Self::zero_in(var, order);
        s.coeffs[0] = c;
        s
    }

    pub fn var(&self) -> &'static str {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, C::zero());
        TruncSeries {
            var: self.var,
            coeffs,
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let order = self.order().min(other.order());
        TruncSeries {
            var: self.var,
            coeffs: (0..=order)
                .map(|i| f(&self.coeffs[i], &other.coeffs[i]))
                .collect(),
        }
    }

    /// Sum, truncated at the smaller order.
    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, C::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, C::sub)
    }

    /// Cauchy product, truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![C::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        TruncSeries {
            var: self.var,
            coeffs,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        TruncSeries {
            var: self.var,
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    /// Substitution `v ↦ c·v`.
    pub fn scale_variable(&self, c: &C) -> Self {
        let mut p = C::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            coeffs.push(x.mul(&p));
            p = p.mul(c);
        }
        TruncSeries {
            var: self.var,
            coeffs,
        }
    }

    /// Division by the variable; the constant term must vanish. The order
    /// drops by one.
    pub fn div_var(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() || self.coeffs.len() < 2 {
            return Err(Error::Precondition(format!(
                "series is not divisible by {}",
                self.var
            )));
        }
        Ok(TruncSeries {
            var: self.var,
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Multiplication by the variable at the same order.
    pub fn mul_var(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(C::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.coeffs.len() - 1]);
        TruncSeries {
            var: self.var,
            coeffs,
        }
    }
}

impl TruncSeries<CoeffElem> {
    /// Constant series in `α`.
    pub fn constant(c: CoeffElem, order: usize) -> Self {
        Self::constant_in("α", c, order)
    }

    /// The series `α`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero_in("α", order);
        if order >= 1 {
            s.coeffs[1] = CoeffElem::one();
        }
        s
    }

    /// `e^{cα}`.
    pub fn exp_scaled(c: &CoeffElem, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = CoeffElem::one();
        for i in 0..=order {
            coeffs.push(term.clone());
            term = (&term * c).scale(&Rational::new(BigInt::one(), BigInt::from(i + 1)));
        }
        TruncSeries { var: "α", coeffs }
    }

    /// Multiplicative inverse; the constant term must be a unit
    /// `c·(1+y)^j`.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].try_inverse().ok_or_else(|| {
            Error::Precondition(format!("constant term {} is not a unit", self.coeffs[0]))
        })?;
        let mut out: Vec<CoeffElem> = vec![inv0.clone()];
        for k in 1..self.coeffs.len() {
            let mut acc = CoeffElem::zero();
            for j in 1..=k {
                acc = &acc + &(&self.coeffs[j] * &out[k - j]);
            }
            out.push(-(&acc * &inv0));
        }
        Ok(TruncSeries {
            var: self.var,
            coeffs: out,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Substitutes `y = y0` into every coefficient.
    pub fn eval_y(&self, y0: &Rational) -> Result<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.eval(y0)).collect()
    }
}

impl<C: fmt::Display> fmt::Display for TruncSeries<C> {
    /// `[c_0; c_1; …]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join("; "))
    }
}

/// The characteristic power series in `α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    /// `α(1 + y e^{−α})/(1 − e^{−α})`
    Qy,
    /// `α(1 + y e^{−α(1+y)})/(1 − e^{−α(1+y)})`
    QyHat,
    /// `α/(1 − e^{−α})`
    Todd,
    /// `α e^{−α}/(1 − e^{−α}) = α/(e^α − 1)`
    ToddDual,
    /// `e^α`
    Exp,
    /// `1 + y e^{−α}`
    LambdaYFactor,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 6] = [
        SeriesKind::Qy,
        SeriesKind::QyHat,
        SeriesKind::Todd,
        SeriesKind::ToddDual,
        SeriesKind::Exp,
        SeriesKind::LambdaYFactor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::Qy => "Qy",
            SeriesKind::QyHat => "QyHat",
            SeriesKind::Todd => "Todd",
            SeriesKind::ToddDual => "ToddDual",
            SeriesKind::Exp => "Exp",
            SeriesKind::LambdaYFactor => "LambdaYFactor",
        }
    }
}

/// `(1 − e^{−cα})/α` to the given order.
fn one_minus_exp_over_alpha(c: &CoeffElem, order: usize) -> TruncSeries<CoeffElem> {
    let e = TruncSeries::exp_scaled(&-c, order + 1);
    let num = TruncSeries::constant(CoeffElem::one(), order + 1).sub(&e);
    num.div_var().expect("constant term cancels")
}

/// `α/(1 − e^{−cα})`; `c` must be a unit.
fn todd_scaled(c: &CoeffElem, order: usize) -> TruncSeries<CoeffElem> {
    one_minus_exp_over_alpha(c, order)
        .inverse()
        .expect("leading coefficient is c")
}

/// `1 + y e^{−cα}`.
fn lambda_factor(c: &CoeffElem, order: usize) -> TruncSeries<CoeffElem> {
    TruncSeries::constant(CoeffElem::one(), order)
        .add(&TruncSeries::exp_scaled(&-c, order).scale(&CoeffElem::y()))
}

/// Exact expansion of `kind` through `α^order`.
pub fn series_coefficients(kind: SeriesKind, order: usize) -> TruncSeries<CoeffElem> {
    let one = CoeffElem::one();
    match kind {
        SeriesKind::Exp => TruncSeries::exp_scaled(&one, order),
        SeriesKind::Todd => todd_scaled(&one, order),
        SeriesKind::ToddDual => {
            todd_scaled(&one, order).mul(&TruncSeries::exp_scaled(&-&one, order))
        }
        SeriesKind::LambdaYFactor => lambda_factor(&one, order),
        SeriesKind::Qy => lambda_factor(&one, order).mul(&todd_scaled(&one, order)),
        SeriesKind::QyHat => {
            let c = CoeffElem::one_plus_y();
            lambda_factor(&c, order).mul(&todd_scaled(&c, order))
        }
    }
}

/// Checks `Q̂_y(α) = (1+y)^{−1} Q_y((1+y)α)` through `α^order`.
pub fn relation_check_qyhat(order: usize) -> bool {
    relation_holds(
        &series_coefficients(SeriesKind::Qy, order),
        &series_coefficients(SeriesKind::QyHat, order),
    )
}

/// The same identity for caller-supplied expansions.
pub fn relation_holds(qy: &TruncSeries<CoeffElem>, qyhat: &TruncSeries<CoeffElem>) -> bool {
    let rhs = qy
        .scale_variable(&CoeffElem::one_plus_y())
        .scale(&CoeffElem::one_plus_y_pow(-1));
    qy.order() == qyhat.order() && rhs == *qyhat
}

/// `UniPoly` coefficients of a series whose coefficients are polynomials.
pub fn polynomial_coefficients(s: &TruncSeries<CoeffElem>) -> Option<Vec<UniPoly>> {
    s.coeffs()
        .iter()
        .map(|c| c.as_polynomial().cloned())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn rat(n: i64, d: i64) -> CoeffElem {
        CoeffElem::rational(q(n, d))
    }

    /// `B_k` with `B_1 = −1/2`, from `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
    fn bernoulli(n: usize) -> Vec<Rational> {
        let mut b: Vec<Rational> = vec![q(1, 1)];
        for m in 1..=n {
            let mut acc = Rational::zero();
            let mut binom = BigInt::one();
            for (j, bj) in b.iter().enumerate() {
                acc += bj * &binom;
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
        }
        b
    }

    fn factorial(n: usize) -> BigInt {
        (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
    }

    #[test]
    fn initial_terms() {
        assert_eq!(
            series_coefficients(SeriesKind::Qy, 0).coeffs(),
            &[CoeffElem::one_plus_y()]
        );
        assert_eq!(
            series_coefficients(SeriesKind::QyHat, 0).coeffs(),
            &[CoeffElem::one()]
        );
        assert_eq!(
            series_coefficients(SeriesKind::Todd, 2).coeffs(),
            &[rat(1, 1), rat(1, 2), rat(1, 12)]
        );
    }

    #[test]
    fn todd_matches_bernoulli_numbers() {
        // α/(1−e^{−α}) = Σ B⁺_k α^k / k!, α/(e^α−1) = Σ B⁻_k α^k / k!
        let n = 12;
        let b = bernoulli(n);
        let todd = series_coefficients(SeriesKind::Todd, n);
        let dual = series_coefficients(SeriesKind::ToddDual, n);
        for (k, bk) in b.iter().enumerate().take(n + 1) {
            let minus = bk / Rational::from_integer(factorial(k));
            let plus = if k == 1 {
                -minus.clone()
            } else {
                minus.clone()
            };
            assert_eq!(todd.coeff(k), CoeffElem::rational(plus), "Todd k={k}");
            assert_eq!(dual.coeff(k), CoeffElem::rational(minus), "dual k={k}");
        }
    }

    #[test]
    fn qy_low_orders() {
        let s = series_coefficients(SeriesKind::Qy, 2);
        assert_eq!(
            s.coeff(1),
            CoeffElem::poly(UniPoly::from_coeffs(vec![q(1, 2), q(-1, 2)]))
        );
        // Q_y at y = 0 is Todd, at y = −1 it is 1 + α
        assert_eq!(
            s.eval_y(&q(0, 1)).unwrap(),
            vec![q(1, 1), q(1, 2), q(1, 12)]
        );
        assert_eq!(
            s.eval_y(&q(-1, 1)).unwrap(),
            vec![q(0, 1), q(1, 1), q(0, 1)]
        );
    }

    #[test]
    fn qyhat_is_polynomial_and_specializes() {
        let s = series_coefficients(SeriesKind::QyHat, 6);
        assert!(polynomial_coefficients(&s).is_some());
        // y = −1 gives 1 + α, y = 0 gives Todd
        let at_minus_one = s.eval_y(&q(-1, 1)).unwrap();
        assert_eq!(at_minus_one[..3], [q(1, 1), q(1, 1), q(0, 1)]);
        assert!(at_minus_one[2..].iter().all(Zero::is_zero));
        assert_eq!(
            s.eval_y(&q(0, 1)).unwrap(),
            series_coefficients(SeriesKind::Todd, 6)
                .eval_y(&q(0, 1))
                .unwrap()
        );
    }

    #[test]
    fn qyhat_relation() {
        assert!(relation_check_qyhat(0));
        assert!(relation_check_qyhat(5));
        let mut bad = series_coefficients(SeriesKind::Qy, 1);
        bad.coeffs[1] = &bad.coeffs[1] + &CoeffElem::one();
        assert!(!relation_holds(
            &bad,
            &series_coefficients(SeriesKind::QyHat, 1)
        ));
    }

    #[test]
    fn inverse_and_exp() {
        let e = series_coefficients(SeriesKind::Exp, 5);
        let inv = e.inverse().unwrap();
        assert_eq!(inv, TruncSeries::exp_scaled(&CoeffElem::int(-1), 5));
        assert_eq!(e.mul(&inv), TruncSeries::constant(CoeffElem::one(), 5));
        assert!(TruncSeries::variable(2).inverse().is_err());
    }

    #[test]
    fn variable_scaling() {
        let e = series_coefficients(SeriesKind::Exp, 4);
        assert_eq!(
            e.scale_variable(&CoeffElem::int(2)),
            TruncSeries::exp_scaled(&CoeffElem::int(2), 4)
        );
    }
}
