//! Canonical-form rational functions in x and y.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::gaussian::GaussianRational;
use crate::field::poly::{Polynomial2, Var};

/// A reduced fraction of bivariate polynomials.
///
/// Invariants: the denominator is nonzero, shares no factor with the
/// numerator, and its lexicographically greatest term has coefficient 1.
/// Every constructor and operation restores this form, so `==` on the
/// representation decides mathematical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial2,
    den: Polynomial2,
}

impl RationalFunction {
    /// Canonicalize `num/den`.
    pub fn new(num: Polynomial2, den: Polynomial2) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Polynomial2::gcd(&num, &den).expect("denominator is nonzero");
        let num = num.try_exact_div(&g).expect("gcd divides numerator");
        let den = den.try_exact_div(&g).expect("gcd divides denominator");
        let (_, lead) = den.lex_lead().expect("denominator is nonzero");
        let inv = lead.inverse().expect("leading coefficient is nonzero");
        Ok(Self {
            num: num.mul_scalar(&inv),
            den: den.mul_scalar(&inv),
        })
    }

    pub fn from_poly(p: Polynomial2) -> Self {
        Self {
            num: p,
            den: Polynomial2::one(),
        }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(Polynomial2::constant(c))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::constant(GaussianRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial2::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial2::one())
    }

    pub fn x() -> Self {
        Self::from_poly(Polynomial2::var_x())
    }

    pub fn y() -> Self {
        Self::from_poly(Polynomial2::var_y())
    }

    pub fn num(&self) -> &Polynomial2 {
        &self.num
    }

    pub fn den(&self) -> &Polynomial2 {
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

    /// The underlying polynomial, when the denominator is 1.
    pub fn as_poly(&self) -> Option<&Polynomial2> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        self.as_poly().and_then(Polynomial2::as_constant)
    }

    pub fn is_univariate(&self, var: Var) -> bool {
        self.num.is_univariate(var) && self.den.is_univariate(var)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // numerator and denominator are already coprime
        Ok(normalize_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.inverse()?)
    }

    pub fn powu(&self, exp: u32) -> Self {
        if self.is_zero() && exp > 0 {
            return Self::zero();
        }
        // coprime factors stay coprime under powers, and the monic
        // denominator stays monic
        Self {
            num: self.num.powu(exp),
            den: self.den.powu(exp),
        }
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        if exp >= 0 {
            Ok(self.powu(exp as u32))
        } else {
            Ok(self.inverse()?.powu((-exp) as u32))
        }
    }

    /// Quotient-rule partial derivative.
    pub fn partial(&self, var: Var) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.partial(var));
        }
        let dn = self.num.partial(var);
        let dd = self.den.partial(var);
        if dd.is_zero() {
            return Self::new(dn, self.den.clone()).expect("nonzero denominator");
        }
        // with g = gcd(d, d'), d = g*u and d' = g*v, the derivative is
        // (n'u - nv)/(g u^2); this keeps the final reduction small when the
        // denominator carries repeated factors
        let g = Polynomial2::gcd(&self.den, &dd).expect("nonzero denominator");
        let u = self.den.try_exact_div(&g).expect("gcd divides");
        let v = dd.try_exact_div(&g).expect("gcd divides");
        let num = &(&dn * &u) - &(&self.num * &v);
        let den = &(&g * &u) * &u;
        Self::new(num, den).expect("nonzero denominator")
    }

    /// Substitute `x -> sx`, `y -> sy`.
    ///
    /// Fails with `UndefinedComposition` when the substituted denominator
    /// vanishes identically.
    pub fn substitute(&self, sx: &Self, sy: &Self) -> Result<Self> {
        let num = eval_poly_at(&self.num, sx, sy);
        let den = eval_poly_at(&self.den, sx, sy);
        if den.is_zero() {
            return Err(Error::UndefinedComposition);
        }
        num.checked_div(&den)
    }

    /// Evaluate at a point; `None` when the denominator vanishes there.
    pub fn eval(&self, x: &GaussianRational, y: &GaussianRational) -> Option<GaussianRational> {
        let d = self.den.eval(x, y);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(x, y) / &d)
    }
}

/// Unit normalization for an already reduced fraction: scale so the
/// denominator's lexicographically greatest term has coefficient 1.
fn normalize_coprime(num: Polynomial2, den: Polynomial2) -> RationalFunction {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return RationalFunction::zero();
    }
    let (_, lead) = den.lex_lead().expect("denominator is nonzero");
    if lead.is_one() {
        return RationalFunction { num, den };
    }
    let inv = lead.inverse().expect("leading coefficient is nonzero");
    RationalFunction {
        num: num.mul_scalar(&inv),
        den: den.mul_scalar(&inv),
    }
}

/// Evaluate a polynomial at rational-function arguments.
fn eval_poly_at(p: &Polynomial2, sx: &RationalFunction, sy: &RationalFunction) -> RationalFunction {
    let mut xp = vec![RationalFunction::one()];
    for _ in 0..p.degree(Var::X) {
        xp.push(&xp[xp.len() - 1] * sx);
    }
    let mut yp = vec![RationalFunction::one()];
    for _ in 0..p.degree(Var::Y) {
        yp.push(&yp[yp.len() - 1] * sy);
    }
    let mut acc = RationalFunction::zero();
    for (&(dx, dy), c) in p.terms() {
        let term = &(&xp[dx as usize] * &yp[dy as usize])
            * &RationalFunction::constant(c.clone());
        acc = &acc + &term;
    }
    acc
}

macro_rules! forward_rf_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$method(rhs)
            }
        }
        impl $trait<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // Henrici's scheme: with b, d the denominators and g = gcd(b, d),
        // the sum is t/(b' d' g) for t = a d' + c b', and the only factor
        // still shared is h = gcd(t, g). Keeps the gcd calls on small inputs.
        let g = Polynomial2::gcd(&self.den, &rhs.den).expect("nonzero denominators");
        let b_red = self.den.try_exact_div(&g).expect("gcd divides");
        let d_red = rhs.den.try_exact_div(&g).expect("gcd divides");
        let t = &(&self.num * &d_red) + &(&rhs.num * &b_red);
        if t.is_zero() {
            return RationalFunction::zero();
        }
        let h = Polynomial2::gcd(&t, &g).expect("t is nonzero");
        let num = t.try_exact_div(&h).expect("gcd divides");
        let den = &(&b_red * &d_red) * &g.try_exact_div(&h).expect("gcd divides");
        normalize_coprime(num, den)
    }
}
forward_rf_binop!(Add, add);

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}
forward_rf_binop!(Sub, sub);

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        // cross-cancel before multiplying; the factors stay coprime
        let g1 = Polynomial2::gcd(&self.num, &rhs.den).expect("nonzero");
        let g2 = Polynomial2::gcd(&rhs.num, &self.den).expect("nonzero");
        let num = &self.num.try_exact_div(&g1).expect("gcd divides")
            * &rhs.num.try_exact_div(&g2).expect("gcd divides");
        let den = &self.den.try_exact_div(&g2).expect("gcd divides")
            * &rhs.den.try_exact_div(&g1).expect("gcd divides");
        normalize_coprime(num, den)
    }
}
forward_rf_binop!(Mul, mul);

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl From<Polynomial2> for RationalFunction {
    fn from(p: Polynomial2) -> Self {
        Self::from_poly(p)
    }
}

impl std::fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}
