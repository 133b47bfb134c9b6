//! Exact scalars: the Gaussian rationals Q(i).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// An element `re + im*i` of Q(i) with arbitrary-precision rational parts.
///
/// Both parts stay fully reduced with positive denominators (maintained by
/// `BigRational`), so structural equality coincides with mathematical
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// The rational `num/den`. Panics if `den` is zero.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
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
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`, the field norm down to Q.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn powu(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        if exp >= 0 {
            Ok(self.powu(exp as u32))
        } else {
            Ok(self.inverse()?.powu((-exp) as u32))
        }
    }

    /// Exact square root in Q(i), if one exists.
    ///
    /// Of the two roots `±w` the canonical representative is returned: the
    /// one with `re > 0`, or `re = 0` and `im >= 0`.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.im.is_zero() {
            return if self.re.is_positive() {
                rational_sqrt(&self.re).map(|r| Self::new(r, BigRational::zero()))
            } else {
                // (i*r)^2 = -r^2
                rational_sqrt(&(-self.re.clone())).map(|r| Self::new(BigRational::zero(), r))
            };
        }
        // w = c + d*i with c^2 - d^2 = re, 2cd = im; then (c^2 + d^2)^2 = |z|^2,
        // so both the norm and (re + norm)/2 must be rational squares.
        let norm = rational_sqrt(&self.norm_sqr())?;
        let two = BigRational::from_integer(BigInt::from(2));
        let c = rational_sqrt(&((&self.re + &norm) / &two))?;
        let d = &self.im / (&two * &c);
        let w = Self::new(c, d);
        debug_assert_eq!(&w * &w, *self);
        Some(w)
    }

    /// Exact `d`-th root, restricted to rational (real) arguments for `d > 2`.
    ///
    /// For even `d` the positive root is returned; for odd `d` the unique
    /// real root. Complex arguments with `d > 2` yield `None`.
    pub fn nth_root(&self, d: u32) -> Option<Self> {
        match d {
            0 => None,
            1 => Some(self.clone()),
            2 => self.sqrt(),
            _ => {
                if !self.im.is_zero() {
                    return None;
                }
                rational_nth_root(&self.re, d).map(|r| Self::new(r, BigRational::zero()))
            }
        }
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    rational_nth_root(q, 2)
}

/// Exact `d`-th root of a rational via integer root extraction on the
/// reduced numerator and denominator.
pub(crate) fn rational_nth_root(q: &BigRational, d: u32) -> Option<BigRational> {
    if q.is_zero() {
        return Some(BigRational::zero());
    }
    let negative = q.is_negative();
    if negative && d % 2 == 0 {
        return None;
    }
    let num = int_nth_root(&q.numer().abs(), d)?;
    let den = int_nth_root(q.denom(), d)?;
    let root = BigRational::new(num, den);
    Some(if negative { -root } else { root })
}

fn int_nth_root(n: &BigInt, d: u32) -> Option<BigInt> {
    let r = n.nth_root(d);
    if num::pow(r.clone(), d as usize) == *n {
        Some(r)
    } else {
        None
    }
}

macro_rules! forward_value_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
        impl $trait<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}
forward_value_binop!(Add, add);

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}
forward_value_binop!(Sub, sub);

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}
forward_value_binop!(Mul, mul);

/// Panics on a zero divisor; use [`GaussianRational::checked_div`] when the
/// divisor may vanish.
impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("division by zero Gaussian rational")
    }
}
forward_value_binop!(Div, div);

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
