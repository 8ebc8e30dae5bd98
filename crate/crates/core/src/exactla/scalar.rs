use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Exact field arithmetic used by the sparse elimination routines.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Field conjugation (identity on the rationals).
    fn conj(&self) -> Self;

    fn div_ref(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul_ref(&i))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    /// The value as a rational, if it is one.
    fn as_rational(&self) -> Option<Rational>;
    fn from_rational(r: Rational) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
}

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A Gaussian rational `re + im·i`, always kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Scalar { re, im: Zero::zero() }
    }

    pub fn int(n: i64) -> Self {
        Scalar::real(rat(n))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar { re: Zero::zero(), im: One::one() }
    }

    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }

    /// `|z|²`, always a non-negative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Real part if the value is a real integer.
    pub fn as_integer(&self) -> Option<i64> {
        if self.is_real() && self.re.is_integer() {
            self.re.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// True for a strictly positive real number.
    pub fn is_positive_real(&self) -> bool {
        self.is_real() && self.re.is_positive()
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::default()
    }
    fn one() -> Self {
        Scalar::int(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add_ref(&self, o: &Self) -> Self {
        Scalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Scalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_real() && o.is_real() {
            return Scalar::real(&self.re * &o.re);
        }
        Scalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn neg_ref(&self) -> Self {
        Scalar { re: -&self.re, im: -&self.im }
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        if self.is_real() {
            return Some(Scalar::real(self.re.recip()));
        }
        let n = self.norm_sqr();
        Some(Scalar { re: &self.re / &n, im: -(&self.im / &n) })
    }
    fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -&self.im }
    }
    fn as_rational(&self) -> Option<Rational> {
        self.is_real().then(|| self.re.clone())
    }
    fn from_rational(r: Rational) -> Self {
        Scalar::real(r)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::real(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                self.$f(rhs)
            }
        }
    };
}
scalar_binop!(Add, add, add_ref);
scalar_binop!(Sub, sub, sub_ref);
scalar_binop!(Mul, mul, mul_ref);

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.div_ref(&rhs).expect("division by zero")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // `i`, `-i`, `2/3i`
        let imag = |x: &Rational| -> String {
            if One::is_one(x) {
                "i".into()
            } else if One::is_one(&-x) {
                "-i".into()
            } else {
                format!("{x}i")
            }
        };
        match (Zero::is_zero(&self.re), Zero::is_zero(&self.im)) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", imag(&self.im)),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}", self.re, imag(&-&self.im))
                } else {
                    write!(f, "{}+{}", self.re, imag(&self.im))
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_inverse() {
        let z = Scalar::new(rat(3), rat(4));
        let w = z.inv().unwrap();
        assert_eq!(z.mul_ref(&w), Scalar::one());
        assert_eq!(w, Scalar::new(ratio(3, 25), ratio(-4, 25)));
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn i_squared() {
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::int(-1));
        assert_eq!(Scalar::i().conj(), Scalar::i().neg_ref());
        assert_eq!(format!("{}", Scalar::new(ratio(1, 2), rat(-1))), "1/2-i");
    }

    #[test]
    fn reduced_form() {
        let r = ratio(6, -4);
        assert_eq!(r, ratio(-3, 2));
        assert_eq!(r.denom(), &BigInt::from(2));
    }
}
