//! The classified Poisson automorphisms of the canonical algebra.
//!
//! Two families cover everything the deciders need:
//!
//! - scale-shear maps `phi(x) = alpha*x`, `phi(y) = y + p(x)` with
//!   `alpha != 0` and polynomial `p`; these are closed under composition
//!   and inversion;
//! - Möbius-type maps `phi(x) = (alpha*x + beta)/(gamma*x + delta)`,
//!   `phi(y) = (alpha*x + beta)(gamma*x + delta)*y/((alpha*delta - beta*gamma)*x) + r(x)`
//!   with `alpha*delta != beta*gamma` and rational `r`.

use crate::error::{Error, Result};
use crate::field::gaussian::GaussianRational;
use crate::field::poly::{Polynomial2, Var};
use crate::field::ratfunc::RationalFunction;
use crate::matrix::Mat2;
use crate::poisson::PoissonStructure;

/// A Poisson automorphism from the classified families.
///
/// Fields are public so certificates and tests can pattern match; use
/// [`Automorphism::scale_shear`] and [`Automorphism::mobius`] to construct
/// validated values.
#[derive(Clone, PartialEq, Eq)]
pub enum Automorphism {
    /// `phi(x) = alpha*x`, `phi(y) = y + p(x)`.
    ScaleShear {
        alpha: GaussianRational,
        p: Polynomial2,
    },
    /// `phi(x) = (alpha*x + beta)/(gamma*x + delta)` with the induced
    /// `phi(y)` and an arbitrary rational shift `r(x)`.
    Mobius {
        alpha: GaussianRational,
        beta: GaussianRational,
        gamma: GaussianRational,
        delta: GaussianRational,
        r: RationalFunction,
    },
}

impl Automorphism {
    pub fn scale_shear(alpha: GaussianRational, p: Polynomial2) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::InvalidAutomorphism("alpha must be nonzero".into()));
        }
        if !p.is_univariate(Var::X) {
            return Err(Error::InvalidAutomorphism(
                "shear polynomial must not depend on y".into(),
            ));
        }
        Ok(Self::ScaleShear { alpha, p })
    }

    /// Pure scaling `phi(x) = alpha*x`, `phi(y) = y`.
    pub fn scaling(alpha: GaussianRational) -> Result<Self> {
        Self::scale_shear(alpha, Polynomial2::zero())
    }

    pub fn mobius(
        alpha: GaussianRational,
        beta: GaussianRational,
        gamma: GaussianRational,
        delta: GaussianRational,
        r: RationalFunction,
    ) -> Result<Self> {
        if (&alpha * &delta - &beta * &gamma).is_zero() {
            return Err(Error::InvalidAutomorphism(
                "alpha*delta - beta*gamma must be nonzero".into(),
            ));
        }
        if !r.is_univariate(Var::X) {
            return Err(Error::InvalidAutomorphism(
                "r must not depend on y".into(),
            ));
        }
        Ok(Self::Mobius {
            alpha,
            beta,
            gamma,
            delta,
            r,
        })
    }

    pub fn identity() -> Self {
        Self::ScaleShear {
            alpha: GaussianRational::one(),
            p: Polynomial2::zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Self::ScaleShear { alpha, p } if alpha.is_one() && p.is_zero())
    }

    /// The image of the generator x.
    pub fn phi_x(&self) -> RationalFunction {
        match self {
            Self::ScaleShear { alpha, .. } => {
                RationalFunction::from_poly(Polynomial2::monomial(alpha.clone(), 1, 0))
            }
            Self::Mobius {
                alpha,
                beta,
                gamma,
                delta,
                ..
            } => {
                let num = Polynomial2::from_terms([((1, 0), alpha.clone()), ((0, 0), beta.clone())]);
                let den = Polynomial2::from_terms([((1, 0), gamma.clone()), ((0, 0), delta.clone())]);
                RationalFunction::new(num, den).expect("gamma*x + delta is nonzero")
            }
        }
    }

    /// The image of the generator y.
    pub fn phi_y(&self) -> RationalFunction {
        match self {
            Self::ScaleShear { p, .. } => {
                RationalFunction::from_poly(&Polynomial2::var_y() + p)
            }
            Self::Mobius {
                alpha,
                beta,
                gamma,
                delta,
                r,
            } => {
                let up = Polynomial2::from_terms([((1, 0), alpha.clone()), ((0, 0), beta.clone())]);
                let lo = Polynomial2::from_terms([((1, 0), gamma.clone()), ((0, 0), delta.clone())]);
                let det = alpha * delta - beta * gamma;
                let num = &(&up * &lo) * &Polynomial2::var_y();
                let den = Polynomial2::monomial(det, 1, 0);
                let linear = RationalFunction::new(num, den).expect("det * x is nonzero");
                &linear + r
            }
        }
    }

    /// Apply by substitution: `f(phi(x), phi(y))`.
    pub fn apply(&self, f: &RationalFunction) -> Result<RationalFunction> {
        f.substitute(&self.phi_x(), &self.phi_y())
    }

    /// Whether the map respects the canonical bracket,
    /// i.e. `{phi(x), phi(y)} = phi(x)`.
    pub fn is_poisson(&self) -> bool {
        is_poisson_pair(&self.phi_x(), &self.phi_y())
    }

    /// Composition `self . other`: apply `other` first, so
    /// `compose(f) = self(other(f))` on algebra elements.
    ///
    /// Only scale-shear maps compose within the classified families; the
    /// deciders never need Möbius compositions.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (
                Self::ScaleShear { alpha: a1, p: p1 },
                Self::ScaleShear { alpha: a2, p: p2 },
            ) => Ok(Self::ScaleShear {
                alpha: a1 * a2,
                p: p1 + &p2.scale_x(a1),
            }),
            _ => Err(Error::UnsupportedAutomorphism),
        }
    }

    /// Two-sided inverse of a scale-shear map:
    /// `(alpha, p(x)) -> (1/alpha, -p(x/alpha))`.
    pub fn inverse(&self) -> Result<Self> {
        match self {
            Self::ScaleShear { alpha, p } => {
                let alpha_inv = alpha.inverse().expect("alpha is nonzero");
                Ok(Self::ScaleShear {
                    alpha: alpha_inv.clone(),
                    p: -p.scale_x(&alpha_inv),
                })
            }
            Self::Mobius { .. } => Err(Error::UnsupportedAutomorphism),
        }
    }

    /// Jacobian of the substitution,
    /// `[[d(phi x)/dx, d(phi x)/dy], [d(phi y)/dx, d(phi y)/dy]]`.
    pub fn jacobian(&self) -> Mat2 {
        let fx = self.phi_x();
        let fy = self.phi_y();
        Mat2::new([
            [fx.partial(Var::X), fx.partial(Var::Y)],
            [fy.partial(Var::X), fy.partial(Var::Y)],
        ])
    }
}

/// The morphism criterion for an arbitrary generator pair:
/// `{fx, fy} = fx` under the canonical bracket.
pub fn is_poisson_pair(fx: &RationalFunction, fy: &RationalFunction) -> bool {
    PoissonStructure::canonical().bracket(fx, fy) == *fx
}

impl std::fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::ScaleShear { alpha, p } => {
                write!(f, "ScaleShear(alpha = {alpha}, p = {p})")
            }
            Self::Mobius {
                alpha,
                beta,
                gamma,
                delta,
                r,
            } => write!(
                f,
                "Mobius(alpha = {alpha}, beta = {beta}, gamma = {gamma}, delta = {delta}, r = {r})"
            ),
        }
    }
}
