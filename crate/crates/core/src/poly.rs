//! Polynomial building blocks shared by the coefficient rings.
//!
//! [`UniPoly`] is a dense univariate polynomial in `y` over ℚ. [`LaurentPoly`]
//! is a sparse Laurent polynomial in `N` variables with integer coefficients,
//! used for E-polynomials `(y, x)` and refined Hodge series `(y, x, z)`.
//! Both render to a canonical ASCII form that [`parse_sparse`] reads back.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Rational, Result};

/// Dense polynomial in `y` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    /// The polynomial `y`.
    pub fn y() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// The polynomial `1 + y`.
    pub fn one_plus_y() -> Self {
        Self::from_coeffs(vec![Rational::one(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, y: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * y + c)
    }

    /// Exact quotient by `1 + y`, or `None` when `-1` is not a root.
    pub fn div_one_plus_y(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // synthetic division by (y - (-1))
        let n = self.coeffs.len();
        let mut quot = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for i in (0..n).rev() {
            let v = &self.coeffs[i] + &carry;
            if i == 0 {
                return v.is_zero().then(|| Self::from_coeffs(quot));
            }
            carry = -v.clone();
            quot[i - 1] = v;
        }
        unreachable!()
    }

    /// Substitute `y ↦ c·y`.
    pub fn scale_variable(&self, c: &Rational) -> Self {
        let mut pow = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Self::from_coeffs(out)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), monomial(&["y"], &[i as i64])));
        f.write_str(&join_terms(terms))
    }
}

/// Renders a rational as `n` or `n/d`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn monomial(vars: &[&str], exps: &[i64]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e != 0)
        .map(|(v, &e)| {
            if e == 1 {
                v.to_string()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    parts.join("*")
}

/// Joins `(coefficient, monomial)` pairs into `a+b*y-c*y^2` form.
pub(crate) fn join_terms(terms: impl Iterator<Item = (Rational, String)>) -> String {
    let mut out = String::new();
    for (c, m) in terms {
        let body = if m.is_empty() {
            fmt_rational(&c)
        } else if c.is_one() {
            m
        } else if (-&c).is_one() {
            format!("-{m}")
        } else {
            format!("{}*{m}", fmt_rational(&c))
        };
        if !out.is_empty() && !body.starts_with('-') {
            out.push('+');
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Sparse Laurent polynomial in `N` variables with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly<const N: usize> {
    terms: BTreeMap<[i64; N], BigInt>,
}

impl<const N: usize> Default for LaurentPoly<N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const N: usize> LaurentPoly<N> {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial([0; N], c)
    }

    pub fn monomial(exps: [i64; N], c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = ([i64; N], BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: [i64; N], c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64; N], &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64; N]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a * c)))
    }

    /// Divides every coefficient by `d`, failing unless all are multiples.
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            let (q, r) = a.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.add_term(*e, q);
        }
        Some(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Applies `f` to every exponent vector (a monomial substitution).
    pub fn map_exponents(&self, f: impl Fn([i64; N]) -> [i64; N]) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (f(*e), c.clone())))
    }

    pub fn format_with(&self, vars: &[&str; N]) -> String {
        join_terms(self.terms.iter().map(|(e, c)| {
            (
                Rational::from_integer(c.clone()),
                monomial(vars.as_slice(), e.as_slice()),
            )
        }))
    }

    /// Parses a polynomial in the given variable names; rejects non-integer
    /// coefficients.
    pub fn parse_with(s: &str, vars: &[&str; N]) -> Result<Self> {
        let sparse = parse_sparse(s, vars.as_slice())?;
        let mut out = Self::zero();
        for (e, c) in sparse {
            if !c.is_integer() {
                return Err(Error::Parse(format!(
                    "non-integer coefficient {} in {s:?}",
                    fmt_rational(&c)
                )));
            }
            let mut exps = [0i64; N];
            exps.copy_from_slice(&e);
            out.add_term(exps, c.to_integer());
        }
        Ok(out)
    }
}

impl<const N: usize> Add for &LaurentPoly<N> {
    type Output = LaurentPoly<N>;
    fn add(self, rhs: &LaurentPoly<N>) -> LaurentPoly<N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<const N: usize> Sub for &LaurentPoly<N> {
    type Output = LaurentPoly<N>;
    fn sub(self, rhs: &LaurentPoly<N>) -> LaurentPoly<N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<const N: usize> Mul for &LaurentPoly<N> {
    type Output = LaurentPoly<N>;
    fn mul(self, rhs: &LaurentPoly<N>) -> LaurentPoly<N> {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = [0i64; N];
                for i in 0..N {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl<const N: usize> Neg for &LaurentPoly<N> {
    type Output = LaurentPoly<N>;
    fn neg(self) -> LaurentPoly<N> {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned_binops {
    ($ty:ty, $($gen:tt)*) => {
        impl<$($gen)*> Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl<$($gen)*> Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl<$($gen)*> Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl<$($gen)*> Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}
pub(crate) use forward_owned_binops;

forward_owned_binops!(UniPoly,);
forward_owned_binops!(LaurentPoly<N>, const N: usize);

/// A sparse polynomial as exponent vector → rational coefficient.
pub type SparsePoly = BTreeMap<Vec<i64>, Rational>;

/// Parses an ASCII polynomial over the named single-identifier variables.
///
/// Grammar: sums and differences of products; factors are rationals `a` or
/// `a/b`, variables with optional integer exponent `y^-2`, or parenthesised
/// subexpressions with a nonnegative exponent. `*` between factors is
/// optional, so `yx` and `y*x` are the same monomial.
pub fn parse_sparse(s: &str, vars: &[&str]) -> Result<SparsePoly> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser {
        chars,
        pos: 0,
        vars,
    };
    let out = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!(
            "unexpected {:?} at offset {} in {s:?}",
            p.chars[p.pos], p.pos
        )));
    }
    Ok(out)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [&'a str],
}

fn sp_add(a: &mut SparsePoly, b: SparsePoly, sign: bool) {
    for (e, c) in b {
        let entry = a.entry(e.clone()).or_insert_with(Rational::zero);
        if sign {
            *entry += c;
        } else {
            *entry -= c;
        }
        if entry.is_zero() {
            a.remove(&e);
        }
    }
}

fn sp_mul(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    let mut out = SparsePoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let mut term = SparsePoly::new();
            term.insert(e, ca * cb);
            sp_add(&mut out, term, true);
        }
    }
    out
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn unit(&self) -> SparsePoly {
        let mut p = SparsePoly::new();
        p.insert(vec![0; self.vars.len()], Rational::one());
        p
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        let mut acc = SparsePoly::new();
        let mut sign = true;
        match self.peek() {
            Some('-') => {
                sign = false;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            sp_add(&mut acc, t, sign);
            match self.peek() {
                Some('+') => sign = true,
                Some('-') => sign = false,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = sp_mul(&acc, &f);
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                    let f = self.factor()?;
                    acc = sp_mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected integer at offset {start}")));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {digits:?}")))
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = self.integer()?;
        let e: i64 = e
            .try_into()
            .map_err(|_| Error::Parse("exponent out of range".into()))?;
        Ok(if neg { -e } else { e })
    }

    fn factor(&mut self) -> Result<SparsePoly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut value = Rational::from_integer(n);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(Error::Parse("division by zero".into()));
                    }
                    value /= Rational::from_integer(d);
                }
                let mut p = SparsePoly::new();
                if !value.is_zero() {
                    p.insert(vec![0; self.vars.len()], value);
                }
                Ok(p)
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse(format!("expected ')' at offset {}", self.pos)));
                }
                self.pos += 1;
                let e = self.exponent()?;
                if e < 0 {
                    return Err(Error::Parse("negative power of a sum".into()));
                }
                let mut acc = self.unit();
                for _ in 0..e {
                    acc = sp_mul(&acc, &inner);
                }
                Ok(acc)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let rest: String = self.chars[self.pos..].iter().collect();
                let (idx, name) = self
                    .vars
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| rest.starts_with(**v))
                    .max_by_key(|(_, v)| v.len())
                    .ok_or_else(|| Error::Parse(format!("unknown variable at {rest:?}")))?;
                self.pos += name.chars().count();
                let e = self.exponent()?;
                let mut exps = vec![0; self.vars.len()];
                exps[idx] = e;
                let mut p = SparsePoly::new();
                p.insert(exps, Rational::one());
                Ok(p)
            }
            other => Err(Error::Parse(format!(
                "unexpected {:?} at offset {}",
                other, self.pos
            ))),
        }
    }
}

/// Parses a rational literal `a`, `-a` or `a/b`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, t),
    };
    let parse_int = |x: &str| -> Result<BigInt> {
        if x.is_empty() || !x.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad rational {s:?}")));
        }
        x.parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
    };
    let value = match body.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Rational::new(parse_int(n)?, d)
        }
        None => Rational::from_integer(parse_int(body)?),
    };
    Ok(if neg { -value } else { value })
}

/// Parses a univariate polynomial in `y` (no negative powers).
pub fn parse_unipoly(s: &str) -> Result<UniPoly> {
    let sparse = parse_sparse(s, &["y"])?;
    let mut coeffs = Vec::new();
    for (e, c) in sparse {
        let d = usize::try_from(e[0])
            .map_err(|_| Error::Parse(format!("negative power of y in {s:?}")))?;
        if coeffs.len() <= d {
            coeffs.resize(d + 1, Rational::zero());
        }
        coeffs[d] = c;
    }
    Ok(UniPoly::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn unipoly_display() {
        assert_eq!(UniPoly::from_ints(&[1, -1, 1]).to_string(), "1-y+y^2");
        assert_eq!(UniPoly::zero().to_string(), "0");
        assert_eq!(
            UniPoly::from_coeffs(vec![q(3, 2), q(-1, 2)]).to_string(),
            "3/2-1/2*y"
        );
    }

    #[test]
    fn divide_by_one_plus_y() {
        let p = UniPoly::from_ints(&[1, 2, 1]);
        assert_eq!(p.div_one_plus_y(), Some(UniPoly::one_plus_y()));
        assert_eq!(UniPoly::from_ints(&[1, -1]).div_one_plus_y(), None);
        assert_eq!(
            UniPoly::from_ints(&[1, 0, 0, 1]).div_one_plus_y(),
            Some(UniPoly::from_ints(&[1, -1, 1]))
        );
    }

    #[test]
    fn parse_round_trip() {
        let p = parse_unipoly("1 - y + y^2").unwrap();
        assert_eq!(p, UniPoly::from_ints(&[1, -1, 1]));
        assert_eq!(parse_unipoly(&p.to_string()).unwrap(), p);
        assert_eq!(
            parse_unipoly("(1+y)^2").unwrap(),
            UniPoly::from_ints(&[1, 2, 1])
        );
        assert_eq!(parse_unipoly("3/2*y").unwrap().coeff(1), q(3, 2));
        assert!(parse_unipoly("y^-1").is_err());
        assert!(parse_unipoly("1+").is_err());
    }

    #[test]
    fn laurent_implicit_products() {
        let a = LaurentPoly::<2>::parse_with("1+yx", &["y", "x"]).unwrap();
        let b = LaurentPoly::<2>::parse_with("1 + y*x", &["y", "x"]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.format_with(&["y", "x"]), "1+y*x");
        let c = LaurentPoly::<2>::parse_with("y^-1*x^2 - 3", &["y", "x"]).unwrap();
        assert_eq!(c.coeff(&[-1, 2]), BigInt::one());
        assert!(LaurentPoly::<2>::parse_with("1/2", &["y", "x"]).is_err());
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-3/6").unwrap(), q(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
    }
}
