//! Gaussian rational scalars: the coefficient field for every computation.
//!
//! Complex coefficients are realized as `re + im*i` with both parts
//! arbitrary-precision rationals, so arithmetic is exact and division is
//! always defined for nonzero scalars. `num_rational::BigRational` keeps
//! numerator/denominator reduced with a positive denominator, which makes the
//! representation canonical.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// Reference product, kept inherent so callers need no trait import.
    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero scalar");
        let norm = &self.re * &self.re + &self.im * &self.im;
        Scalar {
            re: &self.re / &norm,
            im: -(&self.im / &norm),
        }
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<'a> Add<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        Scalar {
            re: self.re + &rhs.re,
            im: self.im + &rhs.im,
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        Scalar::mul(&self, &rhs)
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = Scalar::mul(&*self, rhs);
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        Scalar::mul(&self, &rhs.inv())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl<'a> Neg for &'a Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Canonical text form, accepted back by the presentation parser:
    /// `3/2`, `-1`, `i`, `-2/3*i`, `1/2+i`, `1-1/3*i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        if !self.re.is_zero() {
            out.push_str(&fmt_rational(&self.re));
        }
        if !self.im.is_zero() {
            let mag = self.im.abs();
            let sign = if self.im.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if self.im.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(sign);
            }
            if mag.is_one() {
                out.push('i');
            } else {
                out.push_str(&fmt_rational(&mag));
                out.push_str("*i");
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_on_samples() {
        let a = Scalar::from_ratio(3, 2);
        let b = Scalar::new(
            BigRational::new(BigInt::from(-1), BigInt::from(2)),
            BigRational::new(BigInt::from(1), BigInt::from(3)),
        );
        let prod = (&a).mul(&b);
        let back = prod / a.clone();
        assert_eq!(back, b);
        assert!((b.clone() - b).is_zero());
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = Scalar::i();
        assert_eq!((&i).mul(&i), Scalar::from_int(-1));
    }

    #[test]
    fn inverse_is_exact() {
        let s = Scalar::new(
            BigRational::new(BigInt::from(7), BigInt::from(5)),
            BigRational::new(BigInt::from(-2), BigInt::from(3)),
        );
        assert!(((&s).mul(&s.inv()) - Scalar::one()).is_zero());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::from_int(-1).to_string(), "-1");
        assert_eq!(Scalar::i().to_string(), "i");
        assert_eq!((Scalar::from_int(0) - Scalar::i()).to_string(), "-i");
        let s = Scalar::new(
            BigRational::new(BigInt::from(-1), BigInt::from(2)),
            BigRational::new(BigInt::from(1), BigInt::from(3)),
        );
        assert_eq!(s.to_string(), "-1/2+1/3*i");
    }
}
