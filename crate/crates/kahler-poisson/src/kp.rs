//! Metrics, the Poisson matrix P, and verification of the defining
//! Kähler–Poisson identity `eta*P*g*P*g*P = -P`.

use crate::error::{Error, Result};
use crate::field::poly::Polynomial2;
use crate::field::ratfunc::RationalFunction;
use crate::matrix::Mat2;
use crate::poisson::PoissonStructure;

/// A symmetric 2x2 metric `[[a, b], [b, c]]` of rational functions.
///
/// Symmetry is structural; nondegeneracy (`det != 0`) is checked by the
/// operations that require it, not assumed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Metric {
    a: RationalFunction,
    b: RationalFunction,
    c: RationalFunction,
}

impl Metric {
    pub fn new(a: RationalFunction, b: RationalFunction, c: RationalFunction) -> Self {
        Self { a, b, c }
    }

    pub fn diagonal(a: RationalFunction, c: RationalFunction) -> Self {
        Self::new(a, RationalFunction::zero(), c)
    }

    pub fn identity() -> Self {
        Self::diagonal(RationalFunction::one(), RationalFunction::one())
    }

    pub fn a(&self) -> &RationalFunction {
        &self.a
    }

    pub fn b(&self) -> &RationalFunction {
        &self.b
    }

    pub fn c(&self) -> &RationalFunction {
        &self.c
    }

    pub fn det(&self) -> RationalFunction {
        &(&self.a * &self.c) - &(&self.b * &self.b)
    }

    pub fn is_degenerate(&self) -> bool {
        self.det().is_zero()
    }

    pub fn is_diagonal(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_mat2(&self) -> Mat2 {
        Mat2::new([
            [self.a.clone(), self.b.clone()],
            [self.b.clone(), self.c.clone()],
        ])
    }
}

/// The Poisson matrix `P = [[{x,x}, {x,y}], [{y,x}, {y,y}]] = [[0, x], [-x, 0]]`
/// of the canonical structure.
pub fn poisson_matrix() -> Mat2 {
    Mat2::new([
        [RationalFunction::zero(), RationalFunction::x()],
        [-RationalFunction::x(), RationalFunction::zero()],
    ])
}

/// A verified Kähler–Poisson algebra: the canonical structure, a
/// nondegenerate metric, and the scalar eta with
/// `eta * x^2 * det(g) = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KPAlgebra {
    structure: PoissonStructure,
    metric: Metric,
    eta: RationalFunction,
}

impl KPAlgebra {
    pub fn structure(&self) -> &PoissonStructure {
        &self.structure
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn eta(&self) -> &RationalFunction {
        &self.eta
    }
}

/// Check the Kähler–Poisson condition for a metric over the canonical
/// structure.
///
/// For nondegenerate `g` the scalar is `eta = 1/(x^2 det(g))`. The full
/// matrix identity `eta*P*g*P*g*P = -P` is re-verified by direct symbolic
/// multiplication rather than trusted from the closed form; 2x2 products
/// are cheap and the check guards the arithmetic kernel.
pub fn kp_check(metric: &Metric) -> Result<KPAlgebra> {
    let det = metric.det();
    if det.is_zero() {
        return Err(Error::DegenerateMetric);
    }
    let x_sq = RationalFunction::from_poly(Polynomial2::var_x().powu(2));
    let eta = (&x_sq * &det).inverse().expect("nonzero by construction");

    let p = poisson_matrix();
    let g = metric.as_mat2();
    let pgpgp = p.mul(&g).mul(&p).mul(&g).mul(&p);
    assert_eq!(
        pgpgp.scale(&eta),
        p.neg(),
        "Kähler–Poisson identity must hold for nondegenerate metrics"
    );
    assert!(
        (&(&eta * &x_sq) * &det).is_one(),
        "eta * x^2 * det(g) = 1 must hold"
    );

    Ok(KPAlgebra {
        structure: PoissonStructure::canonical(),
        metric: metric.clone(),
        eta,
    })
}
