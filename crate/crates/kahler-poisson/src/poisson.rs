//! Poisson brackets for linear structures `{x, y} = lambda*x + mu*y` and
//! their normalization to the canonical structure `{x, y} = x`.

use crate::error::{Error, Result};
use crate::field::gaussian::GaussianRational;
use crate::field::poly::{Polynomial2, Var};
use crate::field::ratfunc::RationalFunction;

/// The linear Poisson structure `{x, y} = lambda*x + mu*y`.
///
/// At least one of the two coefficients is nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PoissonStructure {
    lambda: GaussianRational,
    mu: GaussianRational,
}

impl PoissonStructure {
    pub fn new(lambda: GaussianRational, mu: GaussianRational) -> Result<Self> {
        if lambda.is_zero() && mu.is_zero() {
            return Err(Error::ZeroPoissonStructure);
        }
        Ok(Self { lambda, mu })
    }

    /// The canonical structure `{x, y} = x`.
    pub fn canonical() -> Self {
        Self {
            lambda: GaussianRational::one(),
            mu: GaussianRational::zero(),
        }
    }

    pub fn lambda(&self) -> &GaussianRational {
        &self.lambda
    }

    pub fn mu(&self) -> &GaussianRational {
        &self.mu
    }

    pub fn is_canonical(&self) -> bool {
        self.lambda.is_one() && self.mu.is_zero()
    }

    /// `lambda*x + mu*y` as a rational function.
    pub fn bracket_of_generators(&self) -> RationalFunction {
        RationalFunction::from_poly(Polynomial2::from_terms([
            ((1, 0), self.lambda.clone()),
            ((0, 1), self.mu.clone()),
        ]))
    }

    /// The Poisson bracket `{f, g}`, extended to rational functions.
    ///
    /// Computed by the closed Jacobian formula
    /// `(df/dx * dg/dy - df/dy * dg/dx) * (lambda*x + mu*y)`,
    /// which agrees with the Leibniz extension of the bracket on
    /// generators and is total on rational functions.
    pub fn bracket(&self, f: &RationalFunction, g: &RationalFunction) -> RationalFunction {
        let jac = &(&f.partial(Var::X) * &g.partial(Var::Y))
            - &(&f.partial(Var::Y) * &g.partial(Var::X));
        &jac * &self.bracket_of_generators()
    }

    /// A Poisson isomorphism from this structure onto the canonical one.
    ///
    /// The map is linear on generators and satisfies
    /// `{phi(x), phi(y)}_canonical = phi(lambda*x + mu*y)` exactly:
    /// for `lambda = 0` it is `phi(x) = -mu*y`, `phi(y) = x`; otherwise
    /// `phi(x) = x - mu*y`, `phi(y) = lambda*y`.
    pub fn normalize_to_canonical(&self) -> LinearMap {
        let zero = GaussianRational::zero();
        let one = GaussianRational::one();
        if self.lambda.is_zero() {
            LinearMap::new(
                zero.clone(),
                -&self.mu,
                zero.clone(),
                one,
                zero.clone(),
                zero,
            )
            .expect("mu is nonzero")
        } else {
            LinearMap::new(
                one,
                -&self.mu,
                zero.clone(),
                zero.clone(),
                self.lambda.clone(),
                zero,
            )
            .expect("lambda is nonzero")
        }
    }
}

/// An affine map on generators:
/// `phi(x) = a11*x + a12*y + a13`, `phi(y) = a21*x + a22*y + a23`,
/// with invertible linear part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMap {
    a11: GaussianRational,
    a12: GaussianRational,
    a13: GaussianRational,
    a21: GaussianRational,
    a22: GaussianRational,
    a23: GaussianRational,
}

impl LinearMap {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        a11: GaussianRational,
        a12: GaussianRational,
        a13: GaussianRational,
        a21: GaussianRational,
        a22: GaussianRational,
        a23: GaussianRational,
    ) -> Result<Self> {
        if (&a11 * &a22 - &a12 * &a21).is_zero() {
            return Err(Error::InvalidAutomorphism(
                "linear part must be invertible".to_string(),
            ));
        }
        Ok(Self {
            a11,
            a12,
            a13,
            a21,
            a22,
            a23,
        })
    }

    pub fn identity() -> Self {
        let zero = GaussianRational::zero;
        Self::new(
            GaussianRational::one(),
            zero(),
            zero(),
            zero(),
            GaussianRational::one(),
            zero(),
        )
        .expect("identity is invertible")
    }

    pub fn det(&self) -> GaussianRational {
        &self.a11 * &self.a22 - &self.a12 * &self.a21
    }

    pub fn phi_x(&self) -> RationalFunction {
        RationalFunction::from_poly(Polynomial2::from_terms([
            ((1, 0), self.a11.clone()),
            ((0, 1), self.a12.clone()),
            ((0, 0), self.a13.clone()),
        ]))
    }

    pub fn phi_y(&self) -> RationalFunction {
        RationalFunction::from_poly(Polynomial2::from_terms([
            ((1, 0), self.a21.clone()),
            ((0, 1), self.a22.clone()),
            ((0, 0), self.a23.clone()),
        ]))
    }

    /// Apply the map to a rational function by substitution.
    pub fn apply(&self, f: &RationalFunction) -> RationalFunction {
        f.substitute(&self.phi_x(), &self.phi_y())
            .expect("invertible affine substitution is defined everywhere")
    }
}
