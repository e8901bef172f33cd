//! Model Seifert chart R^n x S^1 with S^1-invariant forms.
//!
//! Invariant forms are stored through the splitting gamma = theta ^ alpha +
//! beta with alpha, beta base forms and theta = dt + a the connection
//! 1-form. The exterior derivative is implemented structurally (theta is
//! not closed, so the coordinate d does not apply), while Hodge-star
//! operations go through an (n+1)-dimensional algebraic embedding with the
//! adapted coframe (e^1..e^n, theta) and volume form theta ^ vol_B.

use crate::form::{ExteriorError, Form};
use crate::linalg::Mat;
use crate::metric::Metric;
use crate::poly::Poly;

/// Wedge that treats a base-degree overflow as the zero form of the formal
/// degree, for bookkeeping on the (n+1)-dimensional total space.
fn wedge_or_zero(a: &Form, b: &Form) -> Form {
    if a.k() + b.k() > a.n() {
        Form::zero(a.n(), a.k() + b.k())
    } else {
        a.wedge(b).expect("dimensions agree")
    }
}

/// Chart data for the total space of a circle bundle over flat R^n:
/// theta = dt + a with a base 1-form, and a base metric.
#[derive(Clone, Debug)]
pub struct FiberedChart {
    n: usize,
    /// Base component of the connection form (no dt part).
    a: Form,
    base_metric: Metric,
}

/// gamma = theta ^ alpha + beta with basic alpha (degree k-1) and beta
/// (degree k). A form is basic iff alpha = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantForm {
    k: usize,
    alpha: Form,
    beta: Form,
}

impl FiberedChart {
    pub fn new(a: Form, base_metric: Metric) -> Result<FiberedChart, ExteriorError> {
        let n = base_metric.n();
        if a.n() != n {
            return Err(ExteriorError::DimensionMismatch(a.n(), n));
        }
        if a.k() != 1 {
            return Err(ExteriorError::Other("connection component must be a 1-form".into()));
        }
        Ok(FiberedChart { n, a, base_metric })
    }

    /// Flat chart: theta = dt over Euclidean base.
    pub fn flat(n: usize) -> FiberedChart {
        FiberedChart { n, a: Form::zero(n, 1), base_metric: Metric::euclidean(n) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base_metric(&self) -> &Metric {
        &self.base_metric
    }

    /// Base component a of theta = dt + a.
    pub fn connection_component(&self) -> &Form {
        &self.a
    }

    /// Chart with the connection scaled: theta -> dt + s a. Used to absorb
    /// a collapsing parameter into the curvature.
    pub fn scale_connection(&self, s: &crate::scalar::Scalar) -> FiberedChart {
        FiberedChart { n: self.n, a: self.a.scale(s), base_metric: self.base_metric.clone() }
    }

    /// Curvature dtheta = da, a base 2-form.
    pub fn curvature(&self) -> Form {
        self.a.d()
    }

    /// theta itself as an invariant 1-form: alpha = 1, beta = 0 in the
    /// splitting gamma = theta ^ alpha + beta.
    pub fn theta(&self) -> InvariantForm {
        InvariantForm {
            k: 1,
            alpha: Form::from_poly(self.n, Poly::one(self.n)),
            beta: Form::zero(self.n, 1),
        }
    }

    /// Total metric g = g_B + theta^2 in the adapted coframe
    /// (e^1..e^n, theta), oriented by vol = theta ^ vol_B.
    pub fn total_metric(&self) -> Metric {
        let n = self.n;
        let mut m = Mat::identity(n + 1);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.base_metric.matrix()[(i, j)].clone();
            }
        }
        // theta ^ e^{1..n} = (-1)^n e^{1..n} ^ theta
        let orient = if n.is_multiple_of(2) { 1 } else { -1 } * self.base_metric.orientation();
        Metric::new(m, orient).expect("block metric stays positive definite")
    }

    /// Full-space Hodge star in the adapted coframe.
    pub fn star_total(&self, gamma: &InvariantForm) -> Result<InvariantForm, ExteriorError> {
        let total = gamma.to_adapted_coframe();
        let starred = self.total_metric().hodge_star(&total)?;
        Ok(InvariantForm::from_adapted_coframe(self.n, &starred))
    }

    /// Transverse Hodge star on basic forms: star(beta) = star_M(theta ^ beta).
    pub fn transverse_star(&self, beta: &Form) -> Result<Form, ExteriorError> {
        if beta.n() != self.n {
            return Err(ExteriorError::DimensionMismatch(beta.n(), self.n));
        }
        let theta_wedge = InvariantForm { k: beta.k() + 1, alpha: beta.clone(), beta: Form::zero(self.n, beta.k() + 1) };
        let s = self.star_total(&theta_wedge)?;
        if !s.alpha.is_zero() {
            return Err(ExteriorError::Other(
                "transverse star produced a non-basic form".into(),
            ));
        }
        Ok(s.beta)
    }

    /// Adapted differential d_nabla(gamma) = d(gamma) - dtheta ^ (xi . gamma).
    pub fn adapted_d(&self, gamma: &InvariantForm) -> InvariantForm {
        if gamma.k() == 0 {
            return self.d(gamma);
        }
        let correction = InvariantForm::basic(self.curvature())
            .wedge(&InvariantForm::basic(gamma.xi_contract()))
            .expect("degree bookkeeping");
        self.d(gamma).sub(&correction)
    }

    /// Adapted codifferential restricted to basic k-forms:
    /// (-1)^{n(k-1)+1} star d star with the transverse star.
    pub fn adapted_codiff(&self, beta: &Form) -> Result<Form, ExteriorError> {
        if beta.k() == 0 {
            return Ok(Form::zero(self.n, 0));
        }
        let k = beta.k();
        let s1 = self.transverse_star(beta)?;
        let s2 = self.transverse_star(&s1.d())?;
        let sign_exp = self.n * (k - 1) + 1;
        Ok(if sign_exp.is_multiple_of(2) { s2 } else { s2.neg() })
    }

    /// Codifferential on the total space, through the adapted-coframe star
    /// and the structural invariant d.
    pub fn codiff_total(&self, gamma: &InvariantForm) -> Result<InvariantForm, ExteriorError> {
        let k = gamma.k;
        if k == 0 {
            return Ok(InvariantForm::zero(self.n, 0));
        }
        let m = self.n + 1;
        let s1 = self.star_total(gamma)?;
        let s2 = self.star_total(&self.d(&s1))?;
        let sign_exp = m * (k - 1) + 1;
        Ok(if sign_exp.is_multiple_of(2) { s2 } else { s2.neg() })
    }

    /// Adapted codifferential of an arbitrary invariant form by the
    /// full-space expression
    /// d*_M gamma - (-1)^{k(n+1-k)} theta ^ star_M(dtheta ^ star_M gamma).
    pub fn adapted_codiff_full(
        &self,
        gamma: &InvariantForm,
    ) -> Result<InvariantForm, ExteriorError> {
        let k = gamma.k;
        let first = self.codiff_total(gamma)?;
        let starred = self.star_total(gamma)?;
        if starred.k() + 2 > self.n + 1 {
            // dtheta ^ star_M(gamma) already exceeds the top degree
            return Ok(first);
        }
        let inner = InvariantForm::basic(self.curvature()).wedge(&starred)?;
        let star_inner = self.star_total(&inner)?;
        let corr = self.theta().wedge(&star_inner)?;
        let sign_exp = k * (self.n + 1 - k);
        Ok(if sign_exp.is_multiple_of(2) { first.sub(&corr) } else { first.add(&corr) })
    }

    /// Structural exterior derivative of an invariant form:
    /// d(theta ^ alpha + beta) = dtheta ^ alpha - theta ^ d(alpha) + d(beta).
    pub fn d(&self, gamma: &InvariantForm) -> InvariantForm {
        if gamma.k == 0 {
            // functions have no theta component
            return InvariantForm {
                k: 1,
                alpha: Form::zero(self.n, 0),
                beta: gamma.beta.d(),
            };
        }
        let dtheta = self.curvature();
        let beta_out = gamma.beta.d().add(&wedge_or_zero(&dtheta, &gamma.alpha));
        let alpha_out = gamma.alpha.d().neg();
        InvariantForm { k: gamma.k + 1, alpha: alpha_out, beta: beta_out }
    }
}

impl InvariantForm {
    pub fn zero(n: usize, k: usize) -> InvariantForm {
        let alpha = if k == 0 { Form::zero(n, 0) } else { Form::zero(n, k - 1) };
        InvariantForm { k, alpha, beta: Form::zero(n, k) }
    }

    /// A basic form (no theta component).
    pub fn basic(beta: Form) -> InvariantForm {
        let k = beta.k();
        let n = beta.n();
        InvariantForm { k, alpha: if k == 0 { Form::zero(n, 0) } else { Form::zero(n, k - 1) }, beta }
    }

    pub fn from_parts(alpha: Form, beta: Form) -> InvariantForm {
        assert_eq!(alpha.n(), beta.n());
        assert_eq!(alpha.k() + 1, beta.k(), "alpha must have degree one less than beta");
        InvariantForm { k: beta.k(), alpha, beta }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.beta.n()
    }

    /// xi-contraction; gamma is basic iff this vanishes.
    pub fn xi_contract(&self) -> Form {
        self.alpha.clone()
    }

    pub fn basic_part(&self) -> &Form {
        &self.beta
    }

    pub fn is_basic(&self) -> bool {
        self.alpha.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }

    pub fn add(&self, rhs: &InvariantForm) -> InvariantForm {
        InvariantForm {
            k: self.k,
            alpha: self.alpha.add(&rhs.alpha),
            beta: self.beta.add(&rhs.beta),
        }
    }

    pub fn sub(&self, rhs: &InvariantForm) -> InvariantForm {
        InvariantForm {
            k: self.k,
            alpha: self.alpha.sub(&rhs.alpha),
            beta: self.beta.sub(&rhs.beta),
        }
    }

    pub fn neg(&self) -> InvariantForm {
        InvariantForm { k: self.k, alpha: self.alpha.neg(), beta: self.beta.neg() }
    }

    /// (theta^a1 + b1) ^ (theta^a2 + b2)
    ///   = theta ^ (a1^b2 + (-1)^{k1} b1^a2) + b1^b2.
    pub fn wedge(&self, rhs: &InvariantForm) -> Result<InvariantForm, ExteriorError> {
        let k = self.k + rhs.k;
        let n = self.n();
        if k > n + 1 {
            return Err(ExteriorError::DegreeOverflow { k, n: n + 1 });
        }
        let mut alpha = Form::zero(n, if k == 0 { 0 } else { k - 1 });
        if self.k >= 1 {
            alpha = alpha.add(&wedge_or_zero(&self.alpha, &rhs.beta));
        }
        if rhs.k >= 1 {
            let t = wedge_or_zero(&self.beta, &rhs.alpha);
            alpha = alpha.add(&(if self.k % 2 == 1 { t.neg() } else { t }));
        }
        let beta = wedge_or_zero(&self.beta, &rhs.beta);
        Ok(InvariantForm { k, alpha, beta })
    }

    /// Ascending-index representation on the (n+1)-dim adapted coframe with
    /// theta as the last covector. Only for algebraic (pointwise) ops.
    fn to_adapted_coframe(&self) -> Form {
        let n = self.n();
        let mut out = self.beta.extend_chart(n + 1);
        if self.k >= 1 {
            let theta = Form::basis(n + 1, &[(n + 1) as u8]);
            let lifted = theta.wedge(&self.alpha.extend_chart(n + 1)).expect("degree bookkeeping");
            out = out.add(&lifted);
        }
        out
    }

    fn from_adapted_coframe(n: usize, total: &Form) -> InvariantForm {
        let k = total.k();
        let mut alpha = Form::zero(n, if k == 0 { 0 } else { k - 1 });
        let mut beta = Form::zero(n, k);
        let last = (n + 1) as u8;
        for (idx, p) in total.terms() {
            if idx.last() == Some(&last) {
                // e^{J u {n+1}} = (-1)^{|J|} theta ^ e^J
                let j = &idx[..idx.len() - 1];
                let c = p.restrict_vars(n);
                let contrib = Form::monomial(n, j, if j.len() % 2 == 1 { -&c } else { c });
                alpha = alpha.add(&contrib);
            } else {
                beta = beta.add(&Form::monomial(n, idx, p.restrict_vars(n)));
            }
        }
        InvariantForm { k, alpha, beta }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::basis_tuples;
    use crate::scalar::int;

    fn chart_with_a_x1e2(n: usize) -> FiberedChart {
        // theta = dt + x1 e^2
        let a = Form::monomial(n, &[2], Poly::var(n, 1));
        FiberedChart::new(a, Metric::euclidean(n)).unwrap()
    }

    #[test]
    fn adapted_d_of_theta_vanishes() {
        let c = chart_with_a_x1e2(3);
        let out = c.adapted_d(&c.theta());
        assert!(out.is_zero(), "d_nabla theta = dtheta - dtheta = 0");
        // while the plain d of theta is the curvature
        assert_eq!(c.d(&c.theta()), InvariantForm::basic(c.curvature()));
    }

    #[test]
    fn adapted_d_on_basic_equals_d() {
        let c = chart_with_a_x1e2(3);
        let beta = Form::monomial(3, &[1], Poly::var(3, 2));
        let gamma = InvariantForm::basic(beta.clone());
        let lhs = c.adapted_d(&gamma);
        assert!(lhs.is_basic());
        assert_eq!(lhs.basic_part(), &beta.d());
        // constant basic 1-form maps to zero
        let e1 = InvariantForm::basic(Form::basis(3, &[1]));
        assert!(c.adapted_d(&e1).is_zero());
    }

    #[test]
    fn adapted_d_theta_wedge_example() {
        // gamma = theta ^ e^1 with a = x1 e^2
        let c = chart_with_a_x1e2(3);
        let gamma = c.theta().wedge(&InvariantForm::basic(Form::basis(3, &[1]))).unwrap();
        let direct = c.adapted_d(&gamma);
        // by the formula: d(gamma) - dtheta ^ e^1, expanded independently
        let dtheta = c.curvature();
        let expect = c
            .d(&gamma)
            .sub(&InvariantForm::basic(dtheta.wedge(&Form::basis(3, &[1])).unwrap()));
        assert_eq!(direct, expect);
    }

    #[test]
    fn transverse_star_flat_examples() {
        let c = FiberedChart::flat(2);
        assert_eq!(c.transverse_star(&Form::basis(2, &[1])).unwrap(), Form::basis(2, &[2]));
        // star(1) = vol_B
        let one = Form::from_poly(2, Poly::one(2));
        assert_eq!(c.transverse_star(&one).unwrap(), Form::basis(2, &[1, 2]));
    }

    #[test]
    fn star_m_vs_transverse_star_identity() {
        // star_M(beta) = (-1)^k theta ^ star(beta) on basis basic forms
        for n in 2..=4usize {
            let c = chart_with_a_x1e2(n);
            for k in 0..=n {
                for idx in basis_tuples(n, k) {
                    let beta = Form::basis(n, &idx);
                    let lhs = c.star_total(&InvariantForm::basic(beta.clone())).unwrap();
                    let ts = c.transverse_star(&beta).unwrap();
                    let rhs_raw = c.theta().wedge(&InvariantForm::basic(ts)).unwrap();
                    let rhs = if k % 2 == 1 { rhs_raw.neg() } else { rhs_raw };
                    assert_eq!(lhs, rhs, "n={n} k={k} idx={idx:?}");
                }
            }
        }
    }

    #[test]
    fn transverse_double_star_sign() {
        let c = chart_with_a_x1e2(3);
        for k in 0..=3usize {
            for idx in basis_tuples(3, k) {
                let beta = Form::basis(3, &idx);
                let ss = c.transverse_star(&c.transverse_star(&beta).unwrap()).unwrap();
                let expect = if (k * (3 - k)) % 2 == 0 { beta } else { beta.neg() };
                assert_eq!(ss, expect);
            }
        }
    }

    #[test]
    fn adapted_codiff_flat_example() {
        // beta = x1 e^1 on n=3, theta = dt: d* beta = -1
        let c = FiberedChart::flat(3);
        let beta = Form::monomial(3, &[1], Poly::var(3, 1));
        let got = c.adapted_codiff(&beta).unwrap();
        assert_eq!(got, Form::from_poly(3, Poly::constant(3, int(-1))));
        // constant basic 1-form -> 0
        assert!(c.adapted_codiff(&Form::basis(3, &[2])).unwrap().is_zero());
    }

    #[test]
    fn codiff_two_expressions_agree_on_basic_forms() {
        let c = chart_with_a_x1e2(3);
        for k in 1..=3usize {
            for idx in basis_tuples(3, k) {
                let beta = Form::monomial(3, &idx, Poly::var(3, 1));
                let via_transverse = c.adapted_codiff(&beta).unwrap();
                let via_full = c.adapted_codiff_full(&InvariantForm::basic(beta)).unwrap();
                assert!(via_full.is_basic(), "k={k} idx={idx:?}");
                assert_eq!(via_full.basic_part(), &via_transverse, "k={k} idx={idx:?}");
            }
        }
    }
}
