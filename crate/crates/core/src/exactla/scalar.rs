//! Gaussian rationals `a/b + (c/d) i` with arbitrary-precision integers.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// An element of the field `Q(i)`.
///
/// Both parts are kept as reduced fractions with positive denominators
/// (`BigRational` normalizes on construction), so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(v: i64) -> Self {
        Scalar { re: BigRational::from_integer(BigInt::from(v)), im: BigRational::zero() }
    }

    /// `re_num/re_den + (im_num/im_den) i`. Panics on a zero denominator.
    pub fn new(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Scalar {
            re: BigRational::new(re_num.into(), re_den.into()),
            im: BigRational::new(im_num.into(), im_den.into()),
        }
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar::new(re, 1, im, 1)
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::new(num, den, 0, 1)
    }

    pub fn from_parts(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|^2 = re^2 + im^2`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Scalar { re: &self.re / &n, im: -(&self.im / &n) })
    }

    /// Image under `Z[i]_(p) -> F_p`, `i -> iota`. `None` when a denominator
    /// is divisible by `p`.
    pub fn to_mod(&self, p: u64, iota: u64) -> Option<u64> {
        let re = rational_mod(&self.re, p)?;
        if self.im.is_zero() {
            return Some(re);
        }
        let im = rational_mod(&self.im, p)?;
        Some((re + mul_mod(im, iota, p)) % p)
    }

    /// Fixed text form `a/b+c/d i` used by the matrix cache.
    pub fn to_cache_string(&self) -> String {
        let (c, sign) = if self.im.is_negative() { (-self.im.numer(), '-') } else { (self.im.numer().clone(), '+') };
        format!("{}/{}{}{}/{} i", self.re.numer(), self.re.denom(), sign, c, self.im.denom())
    }

    pub fn parse_cache_string(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("bad scalar literal {s:?}"));
        let body = s.trim().strip_suffix(" i").ok_or_else(bad)?;
        // The separator is the first sign after the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .ok_or_else(bad)?;
        let (re, rest) = body.split_at(split);
        let neg = rest.starts_with('-');
        let re = parse_fraction(re).ok_or_else(bad)?;
        let mut im = parse_fraction(&rest[1..]).ok_or_else(bad)?;
        if neg {
            im = -im;
        }
        Ok(Scalar { re, im })
    }

    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        if !self.re.is_integer() || !self.im.is_integer() {
            return None;
        }
        Some((self.re.numer().to_i64()?, self.im.numer().to_i64()?))
    }
}

fn parse_fraction(s: &str) -> Option<BigRational> {
    let (n, d) = s.split_once('/')?;
    let n = BigInt::from_str(n).ok()?;
    let d = BigInt::from_str(d).ok()?;
    if d.is_zero() {
        return None;
    }
    let q = BigRational::new(n.clone(), d.clone());
    // Only reduced forms with positive denominators are valid cache entries.
    if q.numer() != &n || q.denom() != &d {
        return None;
    }
    Some(q)
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn rational_mod(q: &BigRational, p: u64) -> Option<u64> {
    let n = bigint_mod(q.numer(), p);
    let d = inv_mod(bigint_mod(q.denom(), p), p)?;
    Some(mul_mod(n, d, p))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-self.im.clone()).is_one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}i", self.im)
                }
            }
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, -self.im.clone())
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(re: BigRational) -> Self {
        Scalar { re, im: BigRational::zero() }
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
            return Scalar { re: &self.re * &rhs.re, im: BigRational::zero() };
        }
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
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
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_zero() {
        let z = Scalar::new(0, 7, 0, -3);
        assert_eq!(z, Scalar::zero());
        assert_eq!(z.re().denom(), &BigInt::from(1));
    }

    #[test]
    fn lowest_terms_and_positive_denominators() {
        let s = Scalar::new(4, -6, 10, 4);
        assert_eq!(s.re().numer(), &BigInt::from(-2));
        assert_eq!(s.re().denom(), &BigInt::from(3));
        assert_eq!(s.im().numer(), &BigInt::from(5));
        assert_eq!(s.im().denom(), &BigInt::from(2));
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn inverse_of_gaussian() {
        let z = Scalar::gaussian(1, 1);
        assert_eq!(z.inv().unwrap(), Scalar::new(1, 2, -1, 2));
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn cache_string_round_trip() {
        for s in [Scalar::new(-3, 4, -1, 7), Scalar::zero(), Scalar::i(), Scalar::ratio(5, 2)] {
            let t = s.to_cache_string();
            assert_eq!(Scalar::parse_cache_string(&t).unwrap(), s, "{t}");
        }
        assert_eq!(Scalar::new(1, 2, -3, 1).to_cache_string(), "1/2-3/1 i");
    }

    #[test]
    fn cache_string_rejects_garbage() {
        for bad in ["", "1/2", "1/0+0/1 i", "2/4+0/1 i", "x/1+0/1 i", "1/-2+0/1 i"] {
            assert!(Scalar::parse_cache_string(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn modular_image_is_a_ring_map() {
        let p = 13u64;
        let iota = 5u64; // 5^2 = 25 = -1 mod 13
        let a = Scalar::new(3, 2, -1, 1);
        let b = Scalar::new(-2, 5, 7, 3);
        let pa = a.to_mod(p, iota).unwrap();
        let pb = b.to_mod(p, iota).unwrap();
        assert_eq!((&a * &b).to_mod(p, iota).unwrap(), mul_mod(pa, pb, p));
        assert_eq!((&a + &b).to_mod(p, iota).unwrap(), (pa + pb) % p);
        assert!(Scalar::ratio(1, 13).to_mod(p, iota).is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::i().to_string(), "i");
        assert_eq!(Scalar::gaussian(0, -1).to_string(), "-i");
        assert_eq!(Scalar::new(1, 2, -3, 1).to_string(), "1/2-3i");
        assert_eq!(Scalar::ratio(-7, 3).to_string(), "-7/3");
    }
}
