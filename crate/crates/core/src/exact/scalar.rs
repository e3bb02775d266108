//! Gaussian rationals `ℚ(i)` with complex conjugation.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use super::rational::Rational;
use crate::error::ExactError;

/// An element `re + im·i` of `ℚ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar { re: Rational::ZERO, im: Rational::ZERO };
    pub const ONE: Scalar = Scalar { re: Rational::ONE, im: Rational::ZERO };
    pub const I: Scalar = Scalar { re: Rational::ZERO, im: Rational::ONE };

    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Scalar { re, im: Rational::ZERO }
    }

    pub fn int(n: i64) -> Self {
        Scalar::real(Rational::from_int(n))
    }

    /// `a + b·i` with integer parts.
    pub fn gauss(a: i64, b: i64) -> Self {
        Scalar::new(Rational::from_int(a), Rational::from_int(b))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::real(Rational::new(n, d))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Scalar {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|²`
    pub fn norm_sqr(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inv(&self) -> Result<Scalar, ExactError> {
        let n = self.norm_sqr();
        let ninv = n.inv().ok_or(ExactError::DivisionByZero)?;
        Ok(Scalar { re: &self.re * &ninv, im: -(&self.im * &ninv) })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ExactError> {
        Ok(self * &rhs.inv()?)
    }

    /// Parses the scalar literal grammar: `rat`, `rat i`, `rat + rat i`,
    /// `rat - rat i`, with `i`/`-i` shorthands. Interior whitespace is ignored.
    pub fn parse(src: &str) -> Result<Scalar, ExactError> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ExactError::BadScalar(src.to_string());
        if s.is_empty() {
            return Err(bad());
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Scalar::real(Rational::parse(&s).ok_or_else(bad)?));
        };
        // split real and imaginary parts at the last sign that is not leading
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .last();
        let (re_part, im_part) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() {
            Rational::ZERO
        } else {
            Rational::parse(re_part).ok_or_else(bad)?
        };
        let im_txt = im_part.strip_prefix('+').unwrap_or(im_part);
        let im = match im_txt {
            "" => Rational::ONE,
            "-" => -Rational::ONE,
            t => Rational::parse(t).ok_or_else(bad)?,
        };
        if im_part.starts_with('+') && im_txt.starts_with('-') {
            return Err(bad());
        }
        Ok(Scalar { re, im })
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::real(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_txt = |im: &Rational| -> String {
            if im.is_one() {
                String::new()
            } else {
                im.to_string()
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im == -Rational::ONE {
                    write!(f, "-i")
                } else {
                    write!(f, "{}i", im_txt(&self.im))
                }
            }
            (false, false) => {
                if self.im.signum() < 0 {
                    write!(f, "{}-{}i", self.re, im_txt(&self.im.abs()))
                } else {
                    write!(f, "{}+{}i", self.re, im_txt(&self.im))
                }
            }
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::real(&self.re * &rhs.re);
        }
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        Scalar { re, im }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(self.clone())
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        Scalar::parse(t).unwrap()
    }

    #[test]
    fn modulus_identity() {
        // (1/2 + i)(1/2 - i) = 5/4
        let a = s("1/2+i");
        let b = s("1/2-i");
        assert_eq!(&a * &b, Scalar::frac(5, 4));
        assert_eq!(b, a.conj());
    }

    #[test]
    fn conj_and_inverse() {
        assert_eq!(s("2+3i").conj(), s("2-3i"));
        assert_eq!(s("2+3i").conj().conj(), s("2+3i"));
        assert_eq!(s("1+i").inv().unwrap(), s("1/2-1/2i"));
        assert_eq!(Scalar::ZERO.inv(), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn literal_grammar() {
        assert_eq!(s("3/2"), Scalar::frac(3, 2));
        assert_eq!(s("-i"), Scalar::gauss(0, -1));
        assert_eq!(s("i"), Scalar::I);
        assert_eq!(s("2-1/3i"), Scalar::new(Rational::from_int(2), Rational::new(-1, 3)));
        assert_eq!(s("2 + 1/3 i"), Scalar::new(Rational::from_int(2), Rational::new(1, 3)));
        assert_eq!(s("-5/7i"), Scalar::new(Rational::ZERO, Rational::new(-5, 7)));
        assert_eq!(s("-1-i"), Scalar::gauss(-1, -1));
        assert!(Scalar::parse("").is_err());
        assert!(Scalar::parse("1/0").is_err());
        assert!(Scalar::parse("abc").is_err());
        assert!(Scalar::parse("1+-2i").is_err());
    }

    #[test]
    fn display_round_trip() {
        for t in ["0", "3/2", "-i", "i", "2-1/3i", "-1+i", "7/5i", "-2-5i"] {
            let v = s(t);
            assert_eq!(v.to_string(), t);
            assert_eq!(s(&v.to_string()), v);
        }
    }
}
