use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::poly::{forward_owned_binops, UniPoly};
use crate::{Error, Rational, Result};

/// Element of ℚ[y] localized at (1+y): `numerator / (1+y)^k`.
///
/// Kept in lowest terms: when `k > 0` the numerator does not vanish at
/// `y = −1`, and zero always has `k = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CoeffElem {
    num: UniPoly,
    den_exp: u32,
}

impl CoeffElem {
    pub fn new(num: UniPoly, den_exp: u32) -> Self {
        let mut c = CoeffElem { num, den_exp };
        c.reduce();
        c
    }

    pub fn zero() -> Self {
        CoeffElem::default()
    }

    pub fn one() -> Self {
        Self::poly(UniPoly::one())
    }

    pub fn poly(p: UniPoly) -> Self {
        CoeffElem { num: p, den_exp: 0 }
    }

    pub fn rational(r: Rational) -> Self {
        Self::poly(UniPoly::constant(r))
    }

    pub fn int(n: i64) -> Self {
        Self::poly(UniPoly::from_int(n))
    }

    pub fn y() -> Self {
        Self::poly(UniPoly::y())
    }

    pub fn one_plus_y() -> Self {
        Self::poly(UniPoly::one_plus_y())
    }

    /// `(1+y)^e` for any integer `e`.
    pub fn one_plus_y_pow(e: i64) -> Self {
        if e >= 0 {
            Self::poly(UniPoly::one_plus_y().pow(e as u32))
        } else {
            CoeffElem {
                num: UniPoly::one(),
                den_exp: (-e) as u32,
            }
        }
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn den_exp(&self) -> u32 {
        self.den_exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den_exp == 0
    }

    pub fn as_polynomial(&self) -> Option<&UniPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den_exp = 0;
            return;
        }
        while self.den_exp > 0 {
            match self.num.div_one_plus_y() {
                Some(q) => {
                    self.num = q;
                    self.den_exp -= 1;
                }
                None => break,
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CoeffElem::new(self.num.scale(r), self.den_exp)
    }

    /// Multiplies by `(1+y)^e`.
    pub fn shift(&self, e: i64) -> Self {
        self * &Self::one_plus_y_pow(e)
    }

    /// Multiplicative inverse; only units `c·(1+y)^j` have one.
    pub fn try_inverse(&self) -> Option<Self> {
        let mut num = self.num.clone();
        let mut j: i64 = -i64::from(self.den_exp);
        while num.degree()? > 0 {
            num = num.div_one_plus_y()?;
            j += 1;
        }
        let c = num.coeff(0);
        Some(CoeffElem::rational(c.recip()).shift(-j))
    }

    /// Substitutes `y = y0`. At `y0 = −1` the element must be a polynomial.
    pub fn eval(&self, y0: &Rational) -> Result<Rational> {
        let base = y0 + Rational::one();
        if self.den_exp > 0 && base.is_zero() {
            return Err(Error::NotPolynomial);
        }
        let mut v = self.num.eval(y0);
        for _ in 0..self.den_exp {
            v /= &base;
        }
        Ok(v)
    }
}

impl Add for &CoeffElem {
    type Output = CoeffElem;
    fn add(self, rhs: &CoeffElem) -> CoeffElem {
        let k = self.den_exp.max(rhs.den_exp);
        let a = &self.num * &UniPoly::one_plus_y().pow(k - self.den_exp);
        let b = &rhs.num * &UniPoly::one_plus_y().pow(k - rhs.den_exp);
        CoeffElem::new(&a + &b, k)
    }
}

impl Sub for &CoeffElem {
    type Output = CoeffElem;
    fn sub(self, rhs: &CoeffElem) -> CoeffElem {
        self + &(-rhs)
    }
}

impl Mul for &CoeffElem {
    type Output = CoeffElem;
    fn mul(self, rhs: &CoeffElem) -> CoeffElem {
        CoeffElem::new(&self.num * &rhs.num, self.den_exp + rhs.den_exp)
    }
}

impl Neg for &CoeffElem {
    type Output = CoeffElem;
    fn neg(self) -> CoeffElem {
        CoeffElem {
            num: -&self.num,
            den_exp: self.den_exp,
        }
    }
}

forward_owned_binops!(CoeffElem,);

impl Zero for CoeffElem {
    fn zero() -> Self {
        CoeffElem::zero()
    }
    fn is_zero(&self) -> bool {
        CoeffElem::is_zero(self)
    }
}

impl One for CoeffElem {
    fn one() -> Self {
        CoeffElem::one()
    }
}

impl From<UniPoly> for CoeffElem {
    fn from(p: UniPoly) -> Self {
        CoeffElem::poly(p)
    }
}

impl fmt::Display for CoeffElem {
    /// Polynomials print as `1-y+y^2`; fractions as `(2-y)/(1+y)^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den_exp {
            0 => write!(f, "{}", self.num),
            1 => write!(f, "({})/(1+y)", self.num),
            k => write!(f, "({})/(1+y)^{k}", self.num),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn lowest_terms() {
        let c = CoeffElem::new(UniPoly::from_ints(&[1, 2, 1]), 1);
        assert_eq!(c, CoeffElem::one_plus_y());
        let d = CoeffElem::new(UniPoly::from_ints(&[1, 0, 1]), 2);
        assert_eq!(d.den_exp(), 2);
        assert_eq!(CoeffElem::new(UniPoly::zero(), 4).den_exp(), 0);
    }

    #[test]
    fn arithmetic_cancels_denominators() {
        let a = CoeffElem::one_plus_y_pow(-1);
        let b = CoeffElem::y().shift(-1);
        // 1/(1+y) + y/(1+y) = 1
        assert_eq!(&a + &b, CoeffElem::one());
        assert_eq!(&a * &CoeffElem::one_plus_y(), CoeffElem::one());
    }

    #[test]
    fn inverses() {
        let u = CoeffElem::int(3).shift(2);
        assert_eq!(&u * &u.try_inverse().unwrap(), CoeffElem::one());
        assert!(CoeffElem::poly(UniPoly::from_ints(&[1, -1]))
            .try_inverse()
            .is_none());
        assert!(CoeffElem::zero().try_inverse().is_none());
    }

    #[test]
    fn evaluation() {
        let c = CoeffElem::new(UniPoly::from_ints(&[1, -1]), 1);
        assert_eq!(c.eval(&q(1, 1)).unwrap(), q(0, 1));
        assert_eq!(c.eval(&q(0, 1)).unwrap(), q(1, 1));
        assert_eq!(c.eval(&q(-1, 1)), Err(Error::NotPolynomial));
        assert_eq!(
            CoeffElem::poly(UniPoly::from_ints(&[1, -1]))
                .eval(&q(-1, 1))
                .unwrap(),
            q(2, 1)
        );
    }

    #[test]
    fn display() {
        assert_eq!(CoeffElem::one_plus_y().to_string(), "1+y");
        assert_eq!(
            CoeffElem::new(UniPoly::from_ints(&[1, -1]), 2).to_string(),
            "(1-y)/(1+y)^2"
        );
    }
}
