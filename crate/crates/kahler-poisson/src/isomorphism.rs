//! Metric transport, the eta obstruction, and certificate-producing
//! deciders for the classified metric families, plus a brute-force oracle.
//!
//! Deciders return an [`IsoCertificate`] instead of a bare boolean: an
//! `Isomorphic` verdict carries an explicit automorphism witness that
//! [`verify_iso`] accepts, a `NotIsomorphic` verdict carries a reason code,
//! and `Undecided` carries the residual algebraic constraint (always of the
//! form `alpha^d = q`) that has no solution in Q(i). The last case is the
//! honest answer when the witness scale exists over the complex numbers but
//! not in the computable coefficient field.

use std::collections::BTreeMap;
use std::fmt;

use crate::automorphism::Automorphism;
use crate::error::{Error, Result};
use crate::field::gaussian::GaussianRational;
use crate::field::poly::{Polynomial2, Var};
use crate::field::ratfunc::RationalFunction;
use crate::kp::{kp_check, Metric};

/// Decider outcome.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic,
    Undecided,
}

/// Machine-readable reason codes for negative verdicts.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Reason {
    /// Constant metrics with different lower-right entries (a hard
    /// obstruction).
    CMismatch,
    /// Diagonal x-dependent metrics whose coefficient supports differ.
    SupportMismatch,
    /// The coefficient equations impose inconsistent scale constraints.
    NoScaleRelation,
    /// A sufficient-only test failed; no global non-isomorphism claim.
    SufficientFail,
}

impl Reason {
    pub fn code(&self) -> &'static str {
        match self {
            Reason::CMismatch => "C_MISMATCH",
            Reason::SupportMismatch => "SUPPORT_MISMATCH",
            Reason::NoScaleRelation => "NO_SCALE_RELATION",
            Reason::SufficientFail => "SUFFICIENT_FAIL",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// A residual constraint `alpha^degree = value` with no solution in Q(i)
/// under the root-extraction policy.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Constraint {
    pub degree: u32,
    pub value: GaussianRational,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha^{} = {}", self.degree, self.value)
    }
}

/// A checkable isomorphism verdict.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsoCertificate {
    pub verdict: Verdict,
    pub witness: Option<Automorphism>,
    pub constraint: Option<Constraint>,
    pub reason: Option<Reason>,
}

impl IsoCertificate {
    pub fn isomorphic(witness: Automorphism) -> Self {
        Self {
            verdict: Verdict::Isomorphic,
            witness: Some(witness),
            constraint: None,
            reason: None,
        }
    }

    pub fn not_isomorphic(reason: Reason) -> Self {
        Self {
            verdict: Verdict::NotIsomorphic,
            witness: None,
            constraint: None,
            reason: Some(reason),
        }
    }

    pub fn undecided(constraint: Constraint) -> Self {
        Self {
            verdict: Verdict::Undecided,
            witness: None,
            constraint: Some(constraint),
            reason: None,
        }
    }

    pub fn is_isomorphic(&self) -> bool {
        self.verdict == Verdict::Isomorphic
    }
}

/// Search space for the brute-force oracle.
#[derive(Clone, Debug)]
pub struct SearchBounds {
    max_p_degree: u32,
    alpha_candidates: Vec<GaussianRational>,
}

impl SearchBounds {
    /// `max_p_degree` is capped at 16 (desk scale).
    pub fn new(max_p_degree: u32, alpha_candidates: Vec<GaussianRational>) -> Result<Self> {
        if max_p_degree > 16 {
            return Err(Error::InvalidBounds(
                "max_p_degree must be at most 16".to_string(),
            ));
        }
        Ok(Self {
            max_p_degree,
            alpha_candidates,
        })
    }

    pub fn max_p_degree(&self) -> u32 {
        self.max_p_degree
    }

    pub fn alpha_candidates(&self) -> &[GaussianRational] {
        &self.alpha_candidates
    }

    /// Small rational candidates `±1, ±2, ±1/2, ±3, ±1/3, ±i` with degree
    /// bound 8.
    pub fn default_desk() -> Self {
        let mut candidates = Vec::new();
        for (n, d) in [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (3, 1), (-3, 1), (1, 3), (-1, 3)] {
            candidates.push(GaussianRational::from_ratio(n, d));
        }
        candidates.push(GaussianRational::i());
        candidates.push(-GaussianRational::i());
        Self::new(8, candidates).expect("within bounds")
    }
}

/// Transport a metric along an automorphism: `A^T phi(g) A` with
/// `A` the Jacobian of `phi` and `phi(g)` the entry-wise image.
///
/// The result is the metric that makes `phi` an isomorphism of the two
/// Kähler–Poisson algebras.
pub fn transform_metric(g: &Metric, phi: &Automorphism) -> Result<Metric> {
    let a = phi.jacobian();
    let phi_g = g.as_mat2().try_map(|entry| phi.apply(entry))?;
    let m = a.transpose().mul(&phi_g).mul(&a);
    debug_assert!(m.is_symmetric());
    Ok(Metric::new(
        m.entry(0, 0).clone(),
        m.entry(0, 1).clone(),
        m.entry(1, 1).clone(),
    ))
}

/// Check a claimed isomorphism witness: `phi` must respect the bracket and
/// carry `g` exactly onto `g2`.
pub fn verify_iso(g: &Metric, g2: &Metric, phi: &Automorphism) -> Result<bool> {
    if g.is_degenerate() || g2.is_degenerate() {
        return Err(Error::DegenerateMetric);
    }
    Ok(phi.is_poisson() && transform_metric(g, phi)? == *g2)
}

/// The eta transport obstruction: any isomorphism must map the eta of `g`
/// to the eta of `g2` exactly.
pub fn eta_obstruction(g: &Metric, g2: &Metric, phi: &Automorphism) -> Result<bool> {
    let eta = kp_check(g)?.eta().clone();
    let eta2 = kp_check(g2)?.eta().clone();
    Ok(phi.apply(&eta)? == eta2)
}

fn shear_witness(alpha: GaussianRational, p: Polynomial2) -> IsoCertificate {
    IsoCertificate::isomorphic(
        Automorphism::scale_shear(alpha, p).expect("validated witness data"),
    )
}

// ---- constant metrics ------------------------------------------------------

/// Full classification for constant metrics: the algebras are isomorphic
/// exactly when the two `c` entries agree.
///
/// For `c = c_tilde != 0` the witness scale satisfies
/// `alpha^2 = det(g2)/det(g)`; when that ratio has no square root in Q(i)
/// the verdict is `Undecided` with the constraint attached (the
/// isomorphism exists over the complex numbers but its witness needs a
/// quadratic extension). For `c = c_tilde = 0` the witness is always in
/// the base field.
pub fn decide_constant(g: &Metric, g2: &Metric) -> Result<IsoCertificate> {
    let [a, b, c] = constant_entries(g)?;
    let [a2, b2, c2] = constant_entries(g2)?;
    let det = &(&a * &c) - &(&b * &b);
    let det2 = &(&a2 * &c2) - &(&b2 * &b2);
    if det.is_zero() || det2.is_zero() {
        return Err(Error::DegenerateMetric);
    }
    if c != c2 {
        return Ok(IsoCertificate::not_isomorphic(Reason::CMismatch));
    }
    if !c.is_zero() {
        let alpha_sq = &det2 / &det;
        match alpha_sq.sqrt() {
            Some(alpha) => {
                // p(x) = ((b2 - alpha*b)/c) * x
                let slope = &(&b2 - &(&alpha * &b)) / &c;
                let p = Polynomial2::monomial(slope, 1, 0);
                Ok(shear_witness(alpha, p))
            }
            None => Ok(IsoCertificate::undecided(Constraint {
                degree: 2,
                value: alpha_sq,
            })),
        }
    } else {
        // dets are -b^2 and -b2^2, so both b's are nonzero
        let alpha = &b2 / &b;
        let two = GaussianRational::from_integer(2);
        let slope = &(&(&a2 * &(&b * &b)) - &(&a * &(&b2 * &b2)))
            / &(&(&two * &(&b * &b)) * &b2);
        let p = Polynomial2::monomial(slope, 1, 0);
        Ok(shear_witness(alpha, p))
    }
}

fn constant_entries(g: &Metric) -> Result<[GaussianRational; 3]> {
    let get = |f: &RationalFunction| f.as_constant().ok_or(Error::NonConstantEntries);
    Ok([get(g.a())?, get(g.b())?, get(g.c())?])
}

// ---- x-dependent metrics ---------------------------------------------------

/// Sufficient conditions for polynomial metrics in x with a prescribed
/// scale `alpha`.
///
/// For `c != 0` the three conditions are
/// `c2(x) = c(alpha x)`,
/// `(a2(x) - alpha^2 a(alpha x)) c(alpha x) = b2(x)^2 - alpha^2 b(alpha x)^2`,
/// and polynomial divisibility of `p'(x) = (b2(x) - alpha b(alpha x))/c(alpha x)`.
/// For `c = c2 = 0` the shear slope comes from the `a` relation instead.
///
/// A failed condition yields `NotIsomorphic` with reason `SUFFICIENT_FAIL`,
/// which claims only that this particular test failed.
pub fn check_xdep_sufficient(
    g: &Metric,
    g2: &Metric,
    alpha: &GaussianRational,
) -> Result<IsoCertificate> {
    if alpha.is_zero() {
        return Err(Error::InvalidAutomorphism("alpha must be nonzero".into()));
    }
    let [a, b, c] = var_poly_entries(g, Var::X)?;
    let [a2, b2, c2] = var_poly_entries(g2, Var::X)?;
    check_poly_det(&a, &b, &c)?;
    check_poly_det(&a2, &b2, &c2)?;

    let fail = || Ok(IsoCertificate::not_isomorphic(Reason::SufficientFail));

    let a_s = a.scale_x(alpha);
    let b_s = b.scale_x(alpha);
    let c_s = c.scale_x(alpha);
    let alpha_sq = Polynomial2::constant(alpha.powu(2));

    if !c.is_zero() {
        // (3) c2(x) = c(alpha x)
        if c2 != c_s {
            return fail();
        }
        // (1) (a2 - alpha^2 a(alpha x)) c(alpha x) = b2^2 - alpha^2 b(alpha x)^2
        let lhs = &(&a2 - &(&alpha_sq * &a_s)) * &c_s;
        let rhs = &(&b2 * &b2) - &(&alpha_sq * &(&b_s * &b_s));
        if lhs != rhs {
            return fail();
        }
        // (2) p'(x) = (b2 - alpha b(alpha x))/c(alpha x) must be polynomial
        let num = &b2 - &b_s.mul_scalar(alpha);
        match num.try_exact_div(&c_s) {
            Some(slope) => Ok(shear_witness(alpha.clone(), slope.antiderivative_x())),
            None => fail(),
        }
    } else {
        if !c2.is_zero() {
            return fail();
        }
        // (a) b2(x) = alpha b(alpha x)
        if b2 != b_s.mul_scalar(alpha) {
            return fail();
        }
        // (b) p'(x) = (a2 - alpha^2 a(alpha x))/(2 alpha b(alpha x))
        let num = &a2 - &(&alpha_sq * &a_s);
        let den = b_s.mul_scalar(&(&GaussianRational::from_integer(2) * alpha));
        match num.try_exact_div(&den) {
            Some(slope) => Ok(shear_witness(alpha.clone(), slope.antiderivative_x())),
            None => fail(),
        }
    }
}

/// Full classification for diagonal polynomial metrics in x: isomorphic
/// exactly when some `alpha` satisfies `c2(x) = c(alpha x)` and
/// `a2(x) = alpha^2 a(alpha x)`.
///
/// The coefficient equations `c2_k = alpha^k c_k` and
/// `a2_k = alpha^(k+2) a_k` pin down `alpha^d` for `d` the gcd of the
/// constrained exponents; the root is then extracted exactly (square roots
/// in Q(i), higher roots over Q only) or the constraint is reported as
/// `Undecided`. Witnesses never need a shear, so `p = 0`.
pub fn decide_diag_x(g: &Metric, g2: &Metric) -> Result<IsoCertificate> {
    let (a, c) = diagonal_entries(g, Var::X)?;
    let (a2, c2) = diagonal_entries(g2, Var::X)?;
    if a.is_empty() || c.is_empty() || a2.is_empty() || c2.is_empty() {
        // det = a*c vanishes iff either diagonal entry does
        return Err(Error::DegenerateMetric);
    }

    if a.keys().ne(a2.keys()) || c.keys().ne(c2.keys()) {
        return Ok(IsoCertificate::not_isomorphic(Reason::SupportMismatch));
    }

    // alpha-power constraints keyed by exponent
    let mut constraints: BTreeMap<u32, GaussianRational> = BTreeMap::new();
    let mut add = |power: u32, ratio: GaussianRational| -> bool {
        match constraints.get(&power) {
            Some(existing) => *existing == ratio,
            None => {
                constraints.insert(power, ratio);
                true
            }
        }
    };
    for (k, coeff) in &c {
        let ratio = &c2[k] / coeff;
        if *k == 0 {
            if !ratio.is_one() {
                return Ok(IsoCertificate::not_isomorphic(Reason::NoScaleRelation));
            }
        } else if !add(*k, ratio) {
            return Ok(IsoCertificate::not_isomorphic(Reason::NoScaleRelation));
        }
    }
    for (k, coeff) in &a {
        if !add(k + 2, &a2[k] / coeff) {
            return Ok(IsoCertificate::not_isomorphic(Reason::NoScaleRelation));
        }
    }
    // a is nonzero, so at least the alpha^(k+2) constraint exists
    let mut iter = constraints.into_iter();
    let (mut d, mut q) = iter.next().expect("nonempty constraint set");
    for (e, r) in iter {
        match combine_power_constraints(d, &q, e, &r) {
            Some((nd, nq)) => {
                d = nd;
                q = nq;
            }
            None => return Ok(IsoCertificate::not_isomorphic(Reason::NoScaleRelation)),
        }
    }

    let alpha = match q.nth_root(d) {
        Some(alpha) => alpha,
        None => {
            return Ok(IsoCertificate::undecided(Constraint {
                degree: d,
                value: q,
            }))
        }
    };
    // full verification of both conditions (implied by the constraints,
    // kept as a guard on the reduction)
    let ga = from_coeffs(&a, Var::X);
    let gc = from_coeffs(&c, Var::X);
    let ok = from_coeffs(&c2, Var::X) == gc.scale_x(&alpha)
        && from_coeffs(&a2, Var::X) == ga.scale_x(&alpha).mul_scalar(&alpha.powu(2));
    assert!(ok, "constraint reduction must imply the full conditions");
    Ok(shear_witness(alpha, Polynomial2::zero()))
}

/// Combine `alpha^d = q` with `alpha^e = r` into a single constraint on
/// `alpha^gcd(d, e)`; `None` when the two are inconsistent.
fn combine_power_constraints(
    d: u32,
    q: &GaussianRational,
    e: u32,
    r: &GaussianRational,
) -> Option<(u32, GaussianRational)> {
    let (g, s, t) = extended_gcd(d as i64, e as i64);
    let combined = q.powi(s).ok()? * r.powi(t).ok()?;
    let g = g as u32;
    if combined.powu(d / g) == *q && combined.powu(e / g) == *r {
        Some((g, combined))
    } else {
        None
    }
}

/// `(g, s, t)` with `g = gcd(a, b) = s*a + t*b`; both inputs positive.
fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return (a, 1, 0);
    }
    let (g, s, t) = extended_gcd(b, a % b);
    (g, t, s - (a / b) * t)
}

// ---- y-dependent metrics ---------------------------------------------------

/// Sufficient conditions for diagonal polynomial metrics in y:
/// `a2(y) = alpha^2 a(y + lambda)` and `c2(y) = c(y + lambda)`,
/// with the witness `phi(x) = alpha x`, `phi(y) = y + lambda`.
///
/// The shift candidate is read off a sub-leading coefficient and then both
/// relations are verified in full; when all four entries are constant the
/// constant-metric classification applies verbatim.
pub fn check_diag_y_sufficient(g: &Metric, g2: &Metric) -> Result<IsoCertificate> {
    let (a, c) = diagonal_entries(g, Var::Y)?;
    let (a2, c2) = diagonal_entries(g2, Var::Y)?;
    if a.is_empty() || c.is_empty() || a2.is_empty() || c2.is_empty() {
        return Err(Error::DegenerateMetric);
    }

    let fail = || Ok(IsoCertificate::not_isomorphic(Reason::SufficientFail));
    let deg = |m: &BTreeMap<u32, GaussianRational>| *m.keys().last().expect("nonempty");
    let coeff = |m: &BTreeMap<u32, GaussianRational>, k: u32| {
        m.get(&k).cloned().unwrap_or_else(GaussianRational::zero)
    };
    let ga = from_coeffs(&a, Var::Y);
    let gc = from_coeffs(&c, Var::Y);
    let ga2 = from_coeffs(&a2, Var::Y);
    let gc2 = from_coeffs(&c2, Var::Y);

    let n = deg(&c);
    let m = deg(&a);
    if n == 0 && m == 0 {
        // all entries constant: the constant classification is exact here
        return decide_constant(g, g2);
    }

    let (lambda, alpha_sq);
    if n >= 1 {
        // shifts preserve degree and leading coefficient of c
        if deg(&c2) != n || coeff(&c2, n) != coeff(&c, n) {
            return fail();
        }
        let n_gr = GaussianRational::from_integer(n as i64);
        lambda = &(&coeff(&c2, n - 1) - &coeff(&c, n - 1)) / &(&n_gr * &coeff(&c, n));
        if gc2 != gc.shift_y(&lambda) {
            return fail();
        }
        if deg(&a2) != m {
            return fail();
        }
        alpha_sq = &coeff(&a2, m) / &coeff(&a, m);
        if ga2 != ga.shift_y(&lambda).mul_scalar(&alpha_sq) {
            return fail();
        }
    } else {
        // c constant: require equality, then read the shift off a
        if c2 != c {
            return fail();
        }
        if deg(&a2) != m {
            return fail();
        }
        alpha_sq = &coeff(&a2, m) / &coeff(&a, m);
        let m_gr = GaussianRational::from_integer(m as i64);
        lambda = &(&(&coeff(&a2, m - 1) / &alpha_sq) - &coeff(&a, m - 1))
            / &(&m_gr * &coeff(&a, m));
        if ga2 != ga.shift_y(&lambda).mul_scalar(&alpha_sq) {
            return fail();
        }
    }

    match alpha_sq.sqrt() {
        Some(alpha) => Ok(shear_witness(alpha, Polynomial2::constant(lambda))),
        None => Ok(IsoCertificate::undecided(Constraint {
            degree: 2,
            value: alpha_sq,
        })),
    }
}

// ---- brute-force oracle ------------------------------------------------------

/// Exhaustive scale-shear search, independent of the specialized deciders.
///
/// For each candidate `alpha` the shear slope `p'` is forced by the linear
/// off-diagonal (or, for `c = 0`, the upper-left) entry equation; the
/// candidate witness is then checked against the full metric transport.
/// Entries must be polynomials in x alone so the entry equations are
/// linear in the slope coefficients. Candidates are tried in order and the
/// first verified witness wins.
pub fn brute_force_iso(
    g: &Metric,
    g2: &Metric,
    bounds: &SearchBounds,
) -> Result<Option<Automorphism>> {
    let [a, b, c] = var_poly_entries(g, Var::X)?;
    let [a2, b2, _c2] = var_poly_entries(g2, Var::X)?;
    check_poly_det(&a, &b, &c)?;
    check_poly_det(&a2, &b2, &_c2)?;

    for alpha in bounds.alpha_candidates() {
        if alpha.is_zero() {
            continue;
        }
        let slope = if !c.is_zero() {
            let num = &b2 - &b.scale_x(alpha).mul_scalar(alpha);
            num.try_exact_div(&c.scale_x(alpha))
        } else {
            let num = &a2 - &a.scale_x(alpha).mul_scalar(&alpha.powu(2));
            let den = b
                .scale_x(alpha)
                .mul_scalar(&(&GaussianRational::from_integer(2) * alpha));
            num.try_exact_div(&den)
        };
        let Some(slope) = slope else { continue };
        if !slope.is_zero()
            && bounds.max_p_degree() > 0
            && slope.degree(Var::X) > bounds.max_p_degree() - 1
        {
            continue;
        }
        if !slope.is_zero() && bounds.max_p_degree() == 0 {
            continue;
        }
        let phi = Automorphism::scale_shear(alpha.clone(), slope.antiderivative_x())
            .expect("nonzero alpha and univariate slope");
        if transform_metric(g, &phi)? == *g2 {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

// ---- entry validation helpers ------------------------------------------------

fn var_poly_entries(g: &Metric, var: Var) -> Result<[Polynomial2; 3]> {
    let get = |f: &RationalFunction| {
        f.as_poly()
            .filter(|p| p.is_univariate(var))
            .cloned()
            .ok_or(Error::NonPolynomialEntries)
    };
    Ok([get(g.a())?, get(g.b())?, get(g.c())?])
}

fn check_poly_det(a: &Polynomial2, b: &Polynomial2, c: &Polynomial2) -> Result<()> {
    if (&(a * c) - &(b * b)).is_zero() {
        return Err(Error::DegenerateMetric);
    }
    Ok(())
}

type Coeffs = BTreeMap<u32, GaussianRational>;

fn diagonal_entries(g: &Metric, var: Var) -> Result<(Coeffs, Coeffs)> {
    if !g.b().is_zero() {
        return Err(Error::NotDiagonal);
    }
    let get = |f: &RationalFunction| -> Result<Coeffs> {
        f.as_poly()
            .and_then(|p| p.univariate_coeffs(var))
            .ok_or(Error::NonPolynomialEntries)
    };
    Ok((get(g.a())?, get(g.c())?))
}

fn from_coeffs(coeffs: &Coeffs, var: Var) -> Polynomial2 {
    Polynomial2::from_terms(coeffs.iter().map(|(&k, c)| {
        let mono = match var {
            Var::X => (k, 0),
            Var::Y => (0, k),
        };
        (mono, c.clone())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> GaussianRational {
        GaussianRational::from_integer(n)
    }

    fn rf(src: &str) -> RationalFunction {
        crate::expr::parse(src).unwrap()
    }

    fn poly(src: &str) -> Polynomial2 {
        rf(src).as_poly().unwrap().clone()
    }

    fn metric(a: &str, b: &str, cc: &str) -> Metric {
        Metric::new(rf(a), rf(b), rf(cc))
    }

    fn diag(a: &str, cc: &str) -> Metric {
        Metric::diagonal(rf(a), rf(cc))
    }

    fn shear(alpha: i64, p: &str) -> Automorphism {
        Automorphism::scale_shear(c(alpha), poly(p)).unwrap()
    }

    #[test]
    fn transform_paper_example() {
        // diag(x, x^2) under the shear with p = x^4/4 becomes
        // [[x + x^8, x^5], [x^5, x^2]]
        let g = diag("x", "x^2");
        let phi = shear(1, "1/4*x^4");
        let got = transform_metric(&g, &phi).unwrap();
        assert_eq!(got, metric("x + x^8", "x^5", "x^2"));
    }

    #[test]
    fn transform_identity_and_scaling() {
        let g = metric("x + y", "1/x", "y^2");
        assert_eq!(transform_metric(&g, &Automorphism::identity()).unwrap(), g);
        // A = diag(2, 1): diag(1,1) -> diag(4, 1)
        let phi = Automorphism::scaling(c(2)).unwrap();
        assert_eq!(
            transform_metric(&Metric::identity(), &phi).unwrap(),
            diag("4", "1")
        );
    }

    #[test]
    fn verify_iso_examples() {
        let g = diag("x", "x^2");
        let g2 = metric("x + x^8", "x^5", "x^2");
        assert!(verify_iso(&g, &g2, &shear(1, "1/4*x^4")).unwrap());
        assert!(!verify_iso(&Metric::identity(), &diag("1", "2"), &Automorphism::identity()).unwrap());
        // final paper-style example in y
        let gy = diag("y", "1 + y^2");
        let gy2 = diag("y + 2", "5 + y^2 + 4*y");
        assert!(verify_iso(&gy, &gy2, &shear(1, "2")).unwrap());
        // degenerate inputs are rejected
        assert_eq!(
            verify_iso(&metric("1", "1", "1"), &g2, &Automorphism::identity()),
            Err(Error::DegenerateMetric)
        );
    }

    #[test]
    fn eta_obstruction_examples() {
        let g = Metric::identity();
        let g2 = diag("4", "1");
        let phi = Automorphism::scaling(c(2)).unwrap();
        assert!(eta_obstruction(&g, &g2, &phi).unwrap());
        assert!(eta_obstruction(&g, &g, &Automorphism::identity()).unwrap());
        // determinants differ, so the identity cannot transport eta
        assert!(!eta_obstruction(&g, &g2, &Automorphism::identity()).unwrap());
    }

    #[test]
    fn decide_constant_classification() {
        // diag(1,1) vs diag(4,1): alpha^2 = 4, witness (2, 0)
        let cert = decide_constant(&Metric::identity(), &diag("4", "1")).unwrap();
        assert_eq!(cert.witness, Some(shear(2, "0")));
        assert!(verify_iso(&Metric::identity(), &diag("4", "1"), cert.witness.as_ref().unwrap()).unwrap());

        // c mismatch is a hard obstruction
        let cert = decide_constant(&Metric::identity(), &diag("1", "2")).unwrap();
        assert_eq!(cert.verdict, Verdict::NotIsomorphic);
        assert_eq!(cert.reason, Some(Reason::CMismatch));

        // c = 0 branch: witness in the base field
        let g = metric("1", "1", "0");
        let g2 = metric("3", "1", "0");
        let cert = decide_constant(&g, &g2).unwrap();
        assert_eq!(cert.witness, Some(shear(1, "x")));
        assert!(verify_iso(&g, &g2, cert.witness.as_ref().unwrap()).unwrap());

        // alpha^2 = 2 has no Gaussian-rational solution
        let cert = decide_constant(&Metric::identity(), &diag("2", "1")).unwrap();
        assert_eq!(cert.verdict, Verdict::Undecided);
        let constraint = cert.constraint.unwrap();
        assert_eq!(constraint.degree, 2);
        assert_eq!(constraint.value, c(2));
        assert_eq!(constraint.to_string(), "alpha^2 = 2");
    }

    #[test]
    fn decide_constant_rejects_bad_inputs() {
        assert_eq!(
            decide_constant(&diag("x", "1"), &Metric::identity()),
            Err(Error::NonConstantEntries)
        );
        assert_eq!(
            decide_constant(&metric("1", "1", "1"), &Metric::identity()),
            Err(Error::DegenerateMetric)
        );
    }

    #[test]
    fn xdep_sufficient_paper_example() {
        let g = diag("x", "x^2");
        let g2 = metric("x + x^8", "x^5", "x^2");
        let cert = check_xdep_sufficient(&g, &g2, &c(1)).unwrap();
        // p' = x^3 integrates to x^4/4
        assert_eq!(cert.witness, Some(shear(1, "1/4*x^4")));
        assert!(verify_iso(&g, &g2, cert.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn xdep_sufficient_trivial_and_failing() {
        let g = metric("x^2 + 1", "x", "x^4 + 3");
        let cert = check_xdep_sufficient(&g, &g, &c(1)).unwrap();
        assert_eq!(cert.witness, Some(shear(1, "0")));

        let cert = check_xdep_sufficient(&diag("x", "x^2"), &diag("x", "x^3"), &c(1)).unwrap();
        assert_eq!(cert.verdict, Verdict::NotIsomorphic);
        assert_eq!(cert.reason, Some(Reason::SufficientFail));
    }

    #[test]
    fn xdep_zero_c_branch() {
        // g = [[a, b], [b, 0]] transported by (alpha, p) keeps c = 0
        let g = metric("x^2", "1 + x", "0");
        let phi = shear(2, "x^2");
        let g2 = transform_metric(&g, &phi).unwrap();
        let cert = check_xdep_sufficient(&g, &g2, &c(2)).unwrap();
        assert!(cert.is_isomorphic());
        assert!(verify_iso(&g, &g2, cert.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn xdep_rejects_bad_inputs() {
        assert_eq!(
            check_xdep_sufficient(&diag("y", "1"), &Metric::identity(), &c(1)),
            Err(Error::NonPolynomialEntries)
        );
        assert_eq!(
            check_xdep_sufficient(&diag("1/x", "1"), &Metric::identity(), &c(1)),
            Err(Error::NonPolynomialEntries)
        );
        assert!(matches!(
            check_xdep_sufficient(&Metric::identity(), &Metric::identity(), &c(0)),
            Err(Error::InvalidAutomorphism(_))
        ));
    }

    #[test]
    fn diag_x_paper_example() {
        let g = diag("x", "1 + x + x^2");
        let g2 = diag("0 - 8*x", "1 - 2*x + 4*x^2");
        let cert = decide_diag_x(&g, &g2).unwrap();
        assert_eq!(cert.witness, Some(shear(-2, "0")));
        assert!(verify_iso(&g, &g2, cert.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn diag_x_trivial_and_mismatch() {
        let g = diag("x", "1 + x + x^2");
        let cert = decide_diag_x(&g, &g).unwrap();
        assert_eq!(cert.witness, Some(shear(1, "0")));

        // c(alpha*x) = 1 + alpha*x can never be 1 + x^2
        let cert = decide_diag_x(&diag("x", "1 + x"), &diag("x", "1 + x^2")).unwrap();
        assert_eq!(cert.reason, Some(Reason::SupportMismatch));
    }

    #[test]
    fn diag_x_even_exponents_use_principal_root() {
        // only even powers constrain alpha, so both signs verify; the
        // canonical (positive) root is returned
        let g = diag("x^2", "1 + x^2");
        let phi = Automorphism::scaling(c(-3)).unwrap();
        let g2 = transform_metric(&g, &phi).unwrap();
        let cert = decide_diag_x(&g, &g2).unwrap();
        assert_eq!(cert.witness, Some(shear(3, "0")));
        assert!(verify_iso(&g, &g2, cert.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn diag_x_inconsistent_and_undecided() {
        // same supports, inconsistent ratios: c forces alpha = 2 but a
        // forces alpha^3 = 1
        let g = diag("x", "1 + x");
        let g2 = diag("x", "1 + 2*x");
        let cert = decide_diag_x(&g, &g2).unwrap();
        assert_eq!(cert.reason, Some(Reason::NoScaleRelation));

        // alpha^2 = 2 again, through the diagonal decider
        let g = diag("x^2", "1 + x^2");
        let g2 = diag("4*x^2", "1 + 2*x^2");
        let cert = decide_diag_x(&g, &g2).unwrap();
        assert_eq!(cert.verdict, Verdict::Undecided);
        assert_eq!(cert.constraint.unwrap().to_string(), "alpha^2 = 2");

        // constant-term mismatch in c
        let cert = decide_diag_x(&diag("x", "1 + x"), &diag("x", "2 + x")).unwrap();
        assert_eq!(cert.reason, Some(Reason::NoScaleRelation));
    }

    #[test]
    fn diag_x_higher_roots_over_q() {
        // constraints only through alpha^3 (a = 1/x would not be allowed;
        // use supports {3} for c and none beyond a's shift)
        let g = diag("1", "x^3");
        let g2 = diag("1", "8*x^3");
        // c: alpha^3 = 8 -> alpha = 2; a: alpha^2 = 1 -> gcd 1 overall
        // make a constrain alpha^2 = 4 instead for a consistent pair
        let g = Metric::diagonal(rf("x^2"), rf("x^3"));
        let _ = g2;
        let phi = Automorphism::scaling(c(2)).unwrap();
        let g2 = transform_metric(&g, &phi).unwrap();
        assert_eq!(g2, diag("16*x^2", "8*x^3"));
        let cert = decide_diag_x(&g, &g2).unwrap();
        assert_eq!(cert.witness, Some(shear(2, "0")));

        // irrational cube root: alpha^3 = 2 with only multiples of 3
        // constrained -> x^3-supported c and x-free... keep a consistent:
        let g = diag("x^4", "x^3");
        let phi_needed_sq = rf("2"); // alpha^6 = 2 for a, alpha^3 = ? ...
        let _ = phi_needed_sq;
        let g2 = diag("4*x^4", "2*x^3"); // a: alpha^6 = 4, c: alpha^3 = 2 -> gcd 3, q = 2
        let cert = decide_diag_x(&g, &g2).unwrap();
        assert_eq!(cert.verdict, Verdict::Undecided);
        assert_eq!(cert.constraint.unwrap().to_string(), "alpha^3 = 2");
    }

    #[test]
    fn diag_x_rejects_bad_inputs() {
        assert_eq!(
            decide_diag_x(&metric("x", "1", "x"), &diag("x", "x")),
            Err(Error::NotDiagonal)
        );
        assert_eq!(
            decide_diag_x(&diag("y", "1"), &diag("y", "1")),
            Err(Error::NonPolynomialEntries)
        );
        assert_eq!(
            decide_diag_x(&diag("0", "x"), &diag("x", "x")),
            Err(Error::DegenerateMetric)
        );
    }

    #[test]
    fn diag_y_paper_example() {
        let g = diag("y", "1 + y^2");
        let g2 = diag("y + 2", "5 + y^2 + 4*y");
        let cert = check_diag_y_sufficient(&g, &g2).unwrap();
        assert_eq!(cert.witness, Some(shear(1, "2")));
        assert!(verify_iso(&g, &g2, cert.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn diag_y_examples() {
        let g = diag("y", "1 + y^2");
        let cert = check_diag_y_sufficient(&g, &g).unwrap();
        assert_eq!(cert.witness, Some(shear(1, "0")));

        // lambda = 1, alpha = 2
        let g = diag("y", "y^2");
        let g2 = diag("4*y + 4", "y^2 + 2*y + 1");
        let cert = check_diag_y_sufficient(&g, &g2).unwrap();
        assert_eq!(cert.witness, Some(shear(2, "1")));
        assert!(verify_iso(&g, &g2, cert.witness.as_ref().unwrap()).unwrap());

        // constant c branch: shift read off a
        let g = diag("y", "3");
        let g2 = diag("9*y + 18", "3");
        let cert = check_diag_y_sufficient(&g, &g2).unwrap();
        assert_eq!(cert.witness, Some(shear(3, "2")));
        assert!(verify_iso(&g, &g2, cert.witness.as_ref().unwrap()).unwrap());

        // undecided square root
        let g = diag("y", "1 + y^2");
        let g2 = diag("2*y", "1 + y^2");
        let cert = check_diag_y_sufficient(&g, &g2).unwrap();
        assert_eq!(cert.verdict, Verdict::Undecided);
        assert_eq!(cert.constraint.unwrap().to_string(), "alpha^2 = 2");

        // shift mismatch between a and c fails the sufficient test
        let g = diag("y", "1 + y^2");
        let g2 = diag("y + 1", "1 + (y + 2)^2");
        let cert = check_diag_y_sufficient(&g, &g2).unwrap();
        assert_eq!(cert.reason, Some(Reason::SufficientFail));

        // all-constant fall-back follows the constant classification
        let cert = check_diag_y_sufficient(&diag("1", "1"), &diag("1", "2")).unwrap();
        assert_eq!(cert.reason, Some(Reason::CMismatch));
        let cert = check_diag_y_sufficient(&diag("1", "1"), &diag("4", "1")).unwrap();
        assert_eq!(cert.witness, Some(shear(2, "0")));
    }

    #[test]
    fn brute_force_matches_paper_example() {
        let g = diag("x", "x^2");
        let g2 = metric("x + x^8", "x^5", "x^2");
        let bounds = SearchBounds::new(
            8,
            vec![c(1), c(-1), c(2), c(-2)],
        )
        .unwrap();
        let found = brute_force_iso(&g, &g2, &bounds).unwrap().unwrap();
        assert_eq!(found, shear(1, "1/4*x^4"));
        // ... and agrees with the sufficient-condition decider
        let cert = check_xdep_sufficient(&g, &g2, &c(1)).unwrap();
        assert_eq!(cert.witness, Some(found));
    }

    #[test]
    fn brute_force_identity_and_refutation() {
        let g = metric("x^2 + 1", "x", "x^4 + 3");
        let found = brute_force_iso(&g, &g, &SearchBounds::default_desk())
            .unwrap()
            .unwrap();
        assert!(found.is_identity());

        // Prop-style refutation: diag(1,1) vs diag(1,2) can never work
        let none = brute_force_iso(
            &Metric::identity(),
            &diag("1", "2"),
            &SearchBounds::default_desk(),
        )
        .unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn brute_force_respects_degree_bound() {
        let g = diag("x", "x^2");
        let phi = shear(1, "1/4*x^4");
        let g2 = transform_metric(&g, &phi).unwrap();
        let tight = SearchBounds::new(3, vec![c(1)]).unwrap();
        assert!(brute_force_iso(&g, &g2, &tight).unwrap().is_none());
        assert!(SearchBounds::new(17, vec![]).is_err());
    }

    #[test]
    fn transport_follows_verification() {
        // whenever verify_iso succeeds, the eta obstruction vanishes
        let g = metric("x^2", "x", "1 + x");
        let phi = shear(2, "x^2 + x");
        let g2 = transform_metric(&g, &phi).unwrap();
        assert!(verify_iso(&g, &g2, &phi).unwrap());
        assert!(eta_obstruction(&g, &g2, &phi).unwrap());
    }

    #[test]
    fn contravariant_composition() {
        let g = metric("x", "x^2", "1 + x");
        let phi1 = shear(2, "x^3");
        let phi2 = shear(3, "x + x^2");
        let seq = transform_metric(&transform_metric(&g, &phi2).unwrap(), &phi1).unwrap();
        let composed = transform_metric(&g, &phi1.compose(&phi2).unwrap()).unwrap();
        assert_eq!(seq, composed);
    }
}
