//! Exact rational functions over the rationals in named indeterminates.

mod gcd;
mod parse;
mod poly;
pub mod qcomb;
pub mod vars;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use gcd::gcd;
pub use parse::parse_scalar;
pub use poly::{Monomial, Poly};

use crate::error::{Error, Result};

/// Element of the field of rational functions.
///
/// Always canonical: numerator and denominator are coprime and the
/// denominator's leading coefficient is 1, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn integer(n: i64) -> Self {
        Self::from_poly(Poly::integer(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_poly(Poly::constant(r))
    }

    /// `n / d` for integers, `d != 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_poly(num: Poly) -> Self {
        Scalar {
            num,
            den: Poly::one(),
        }
    }

    /// The indeterminate with the given index.
    pub fn var_index(v: usize) -> Self {
        Self::from_poly(Poly::var(v))
    }

    /// A declared indeterminate by name.
    pub fn var(name: &str) -> Result<Self> {
        vars::lookup(name)
            .map(Self::var_index)
            .ok_or_else(|| Error::UndeclaredIndeterminate(name.to_string()))
    }

    pub fn q() -> Self {
        Self::var_index(vars::builtin("q"))
    }

    pub fn hbar() -> Self {
        Self::var_index(vars::builtin("hbar"))
    }

    /// `q - 1/q`.
    pub fn lambda() -> Self {
        let q = Self::q();
        &q - &q.inv().unwrap()
    }

    /// Canonical form of `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.constant_value() {
            return Self::from_poly(num.scale(&c.recip()));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize_lc(num, den)
    }

    fn normalize_lc(num: Poly, den: Poly) -> Self {
        let lc = den.lc();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Rational value if the scalar is constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// True when the denominator is a single monomial (Laurent polynomial).
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial()
    }

    /// Indeterminates occurring in numerator or denominator, ascending.
    pub fn variables(&self) -> Vec<usize> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_lc(self.den.clone(), self.num.clone()))
    }

    pub fn add_ref(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return Self::canonical(num, self.den.clone());
        }
        if self.den.is_one() {
            return Self::canonical(self.num.mul(&other.den).add(&other.num), other.den.clone());
        }
        if other.den.is_one() {
            return Self::canonical(other.num.mul(&self.den).add(&self.num), self.den.clone());
        }
        let g = gcd(&self.den, &other.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = other.den.div_exact(&g).unwrap();
        let num = self.num.mul(&b).add(&other.num.mul(&a));
        let den = self.den.mul(&b);
        Self::canonical(num, den)
    }

    pub fn sub_ref(&self, other: &Scalar) -> Scalar {
        self.add_ref(&other.neg())
    }

    pub fn mul_ref(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let n2 = other.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        Self::normalize_lc(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i32) -> Result<Scalar> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        Ok(Scalar {
            num: self.num.pow(e),
            den: self.den.pow(e),
        })
    }

    /// Substitute indeterminates. Cancellation has already happened in the
    /// canonical form, so only genuine poles are reported.
    pub fn substitute(&self, bindings: &Bindings) -> Result<Scalar> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let num = eval_poly(&self.num, bindings);
        let den = eval_poly(&self.den, bindings);
        if den.is_zero() {
            return Err(Error::Pole(bindings.to_string()));
        }
        num.checked_div(&den)
    }
}

/// Assignment of values to indeterminates.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Bindings {
    values: BTreeMap<usize, Scalar>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    /// Bind a declared indeterminate; panics on unknown names, which is a
    /// programming error for the built-in names used internally.
    pub fn with(mut self, name: &str, value: Scalar) -> Self {
        let v = vars::lookup(name).unwrap_or_else(|| panic!("undeclared indeterminate {name}"));
        self.values.insert(v, value);
        self
    }

    pub fn bind(&mut self, name: &str, value: Scalar) -> Result<()> {
        let v = vars::lookup(name).ok_or_else(|| Error::UndeclaredIndeterminate(name.into()))?;
        self.values.insert(v, value);
        Ok(())
    }

    pub fn bind_index(&mut self, v: usize, value: Scalar) {
        self.values.insert(v, value);
    }

    pub fn get(&self, v: usize) -> Option<&Scalar> {
        self.values.get(&v)
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.values.iter().map(|(k, v)| (*k, v))
    }
}

impl fmt::Display for Bindings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(v, s)| format!("{} -> {}", vars::name(*v), s))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Evaluate a polynomial under bindings over a common denominator, so only a
/// single gcd is needed at the end.
fn eval_poly(p: &Poly, bindings: &Bindings) -> Scalar {
    let touched: Vec<usize> = p
        .variables()
        .into_iter()
        .filter(|v| bindings.get(*v).is_some())
        .collect();
    if touched.is_empty() {
        return Scalar::from_poly(p.clone());
    }
    let max_deg: HashMap<usize, u32> = touched.iter().map(|&v| (v, p.degree_in(v))).collect();
    let mut pow_cache: HashMap<(usize, u32, bool), Poly> = HashMap::new();
    let mut power = |v: usize, e: u32, numer: bool| -> Poly {
        pow_cache
            .entry((v, e, numer))
            .or_insert_with(|| {
                let s = bindings.get(v).unwrap();
                let base = if numer {
                    s.numerator()
                } else {
                    s.denominator()
                };
                base.pow(e)
            })
            .clone()
    };
    let mut common_den = Poly::one();
    for &v in &touched {
        common_den = common_den.mul(&power(v, max_deg[&v], false));
    }
    let mut num = Poly::zero();
    for (m, c) in p.terms() {
        let mut rest = Vec::new();
        let mut term = Poly::one();
        let mut exps: HashMap<usize, u32> = HashMap::new();
        for (v, e) in m.pairs() {
            if bindings.get(v).is_some() {
                exps.insert(v, e);
            } else {
                rest.push((v, e));
            }
        }
        for &v in &touched {
            let e = exps.get(&v).copied().unwrap_or(0);
            if e > 0 {
                term = term.mul(&power(v, e, true));
            }
            let d = max_deg[&v] - e;
            if d > 0 {
                term = term.mul(&power(v, d, false));
            }
        }
        let rest = Poly::term(Monomial::from_pairs(rest), c.clone());
        num = num.add(&term.mul(&rest));
    }
    Scalar::canonical(num, common_den)
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$impl_fn(rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$impl_fn(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$impl_fn(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$impl_fn(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] otherwise.
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::integer(n)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn lambda_canonical_form() {
        let l = Scalar::lambda();
        assert_eq!(l.numerator().to_string(), "q^2 - 1");
        assert_eq!(l.denominator().to_string(), "q");
        assert_eq!(&l * &l.inv().unwrap(), Scalar::one());
    }

    #[test]
    fn cancellation() {
        assert_eq!(s("(q^2-1)/(q-1)"), s("q+1"));
        assert_eq!(s("q") + s("-q"), Scalar::zero());
        assert_eq!(s("(q^2 - 1)/(2*q - 2)").to_string(), "1/2*q + 1/2");
    }

    #[test]
    fn lambda_times_two_q() {
        // (q - 1/q)(q + 1/q) = q^2 - q^-2, expanded by hand.
        let lhs = Scalar::lambda() * s("q + 1/q");
        assert_eq!(lhs, s("q^2 - q^-2"));
        assert_eq!(lhs.numerator().to_string(), "q^4 - 1");
        assert_eq!(lhs.denominator().to_string(), "q^2");
    }

    #[test]
    fn denominators_are_monic() {
        let x = s("1/(2*q + 4)");
        assert_eq!(x.denominator().to_string(), "q + 2");
        assert_eq!(x.numerator().to_string(), "1/2");
    }

    #[test]
    fn substitution_and_poles() {
        let three_q = s("q^2 + 1 + q^-2");
        let at_one = Bindings::new().with("q", Scalar::one());
        assert_eq!(three_q.substitute(&at_one).unwrap(), Scalar::integer(3));
        assert_eq!(
            Scalar::lambda().substitute(&at_one).unwrap(),
            Scalar::zero()
        );
        let inv = Scalar::lambda().inv().unwrap();
        assert!(matches!(inv.substitute(&at_one), Err(Error::Pole(_))));
        // removable singularity cancels before substitution
        let r = s("(q^3 - q^-3)/(q - q^-1)");
        assert_eq!(r.substitute(&at_one).unwrap(), Scalar::integer(3));
    }

    #[test]
    fn substitute_rational_function_values() {
        let e = s("(q + hbar)/(q - 2)");
        let b = Bindings::new().with("q", s("1/hbar"));
        assert_eq!(e.substitute(&b).unwrap(), s("(1 + hbar^2)/(1 - 2*hbar)"));
    }

    #[test]
    fn display_roundtrip() {
        for text in [
            "q - 1/q",
            "0",
            "-3/2*q^2*mu1 + 7",
            "(hbar + q)/(q^3 - 2*mu2)",
            "1/q^5",
        ] {
            let a = s(text);
            assert_eq!(s(&a.to_string()), a, "{text}");
        }
    }
}
