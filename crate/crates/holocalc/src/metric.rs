//! Exact constant metrics on a flat chart: Hodge star, codifferential and
//! musical isomorphisms.
//!
//! Orientation convention: the positively oriented volume form is
//! `orientation * sqrt(det g) * e^{1...n}`. The defining contract for the
//! star is `alpha ^ star(beta) = <alpha, beta>_g vol_g`.

use crate::form::{basis_tuples, complement, merge_indices, ExteriorError, Form, IdxTuple};
use crate::linalg::Mat;
use crate::poly::Poly;
use crate::scalar::{sqrt_exact, Scalar};
use num::{One, Signed, Zero};

/// sqrt(det g), kept exact when rational and symbolic otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VolumeScale {
    Exact(Scalar),
    /// Formal sqrt of the stored determinant; exact star operations are
    /// refused in this state.
    FormalSqrt(Scalar),
}

#[derive(Clone, Debug)]
pub struct Metric {
    n: usize,
    mat: Mat,
    inv: Mat,
    det: Scalar,
    vol_scale: VolumeScale,
    orientation: i8,
}

impl Metric {
    /// Positive-definite symmetric matrix with orientation +-1.
    pub fn new(mat: Mat, orientation: i8) -> Result<Metric, ExteriorError> {
        assert!(orientation == 1 || orientation == -1);
        let n = mat.rows;
        if !mat.is_symmetric() {
            return Err(ExteriorError::Other("metric matrix is not symmetric".into()));
        }
        // Sylvester: positive definite iff all leading principal minors > 0.
        if !mat.leading_minors().iter().all(|m| m.is_positive()) {
            return Err(ExteriorError::NonPositiveMetric);
        }
        let det = mat.det();
        let inv = mat.inverse().ok_or(ExteriorError::SingularMetric)?;
        let vol_scale = match sqrt_exact(&det) {
            Some(s) => VolumeScale::Exact(s),
            None => VolumeScale::FormalSqrt(det.clone()),
        };
        Ok(Metric { n, mat, inv, det, vol_scale, orientation })
    }

    pub fn euclidean(n: usize) -> Metric {
        Metric::new(Mat::identity(n), 1).expect("euclidean metric")
    }

    pub fn diagonal(entries: &[Scalar], orientation: i8) -> Result<Metric, ExteriorError> {
        let n = entries.len();
        let mut m = Mat::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        Metric::new(m, orientation)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Mat {
        &self.mat
    }

    pub fn inverse_matrix(&self) -> &Mat {
        &self.inv
    }

    pub fn det(&self) -> &Scalar {
        &self.det
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn vol_scale(&self) -> &VolumeScale {
        &self.vol_scale
    }

    fn exact_vol_scale(&self) -> Result<Scalar, ExteriorError> {
        match &self.vol_scale {
            VolumeScale::Exact(s) => Ok(s.clone()),
            VolumeScale::FormalSqrt(_) => Err(ExteriorError::IrrationalVolume),
        }
    }

    /// Oriented volume form.
    pub fn volume_form(&self) -> Result<Form, ExteriorError> {
        let s = self.exact_vol_scale()?;
        let idx: IdxTuple = (1..=self.n as u8).collect();
        let sign = if self.orientation < 0 { -s } else { s };
        Ok(Form::monomial(self.n, &idx, Poly::constant(self.n, sign)))
    }

    pub fn is_identity(&self) -> bool {
        self.mat == Mat::identity(self.n)
    }

    /// Gram pairing of basis covector tuples: det of the inverse-metric
    /// minor picked out by the two index sets.
    pub fn gram(&self, a: &[u8], b: &[u8]) -> Scalar {
        debug_assert_eq!(a.len(), b.len());
        if a.is_empty() {
            return Scalar::one();
        }
        if self.is_identity() {
            return if a == b { Scalar::one() } else { Scalar::zero() };
        }
        let rows: Vec<usize> = a.iter().map(|&i| i as usize - 1).collect();
        let cols: Vec<usize> = b.iter().map(|&i| i as usize - 1).collect();
        self.inv.minor(&rows, &cols).det()
    }

    /// Pointwise inner product of two forms of equal degree; polynomial
    /// coefficients multiply through.
    pub fn inner(&self, a: &Form, b: &Form) -> Result<Poly, ExteriorError> {
        if a.n() != self.n || b.n() != self.n {
            return Err(ExteriorError::DimensionMismatch(a.n(), b.n()));
        }
        if a.k() != b.k() {
            return Err(ExteriorError::Other("inner product of mixed degrees".into()));
        }
        let mut acc = Poly::zero(self.n);
        for (ia, pa) in a.terms() {
            for (ib, pb) in b.terms() {
                let g = self.gram(ia, ib);
                if !g.is_zero() {
                    acc = &acc + &(pa * pb).scale(&g);
                }
            }
        }
        Ok(acc)
    }

    /// Hodge star. Defining contract: alpha ^ star(beta) = <alpha,beta> vol
    /// for all alpha of the same degree as beta.
    pub fn hodge_star(&self, beta: &Form) -> Result<Form, ExteriorError> {
        if beta.n() != self.n {
            return Err(ExteriorError::DimensionMismatch(beta.n(), self.n));
        }
        let s = self.exact_vol_scale()?;
        let scale = if self.orientation < 0 { -s } else { s };
        let k = beta.k();
        let mut out = Form::zero(self.n, self.n - k);
        for i_tuple in basis_tuples(self.n, k) {
            // coefficient of e^{complement(I)} is eps(I, Ic) * <e^I, beta> * scale
            let mut coeff = Poly::zero(self.n);
            for (ib, pb) in beta.terms() {
                let g = self.gram(&i_tuple, ib);
                if !g.is_zero() {
                    coeff = &coeff + &pb.scale(&g);
                }
            }
            if coeff.is_zero() {
                continue;
            }
            let comp = complement(&i_tuple, self.n);
            let (sign, _) = merge_indices(&i_tuple, &comp).expect("disjoint complement");
            let mut c = coeff.scale(&scale);
            if sign < 0 {
                c = -&c;
            }
            out = out.add(&Form::monomial(self.n, &comp, c));
        }
        Ok(out)
    }

    /// Codifferential on k-forms: (-1)^{n(k-1)+1} star d star.
    pub fn codifferential(&self, a: &Form) -> Result<Form, ExteriorError> {
        if a.k() == 0 {
            return Ok(Form::zero(self.n, 0));
        }
        let k = a.k();
        let inner = self.hodge_star(a)?.d();
        let star2 = self.hodge_star(&inner)?;
        let sign = if (self.n * (k + 1)) % 2 == 1 { 1 } else { -1 };
        // (-1)^{n(k-1)+1}: n(k-1)+1 odd -> -1. n(k-1) and n(k+1) share parity.
        Ok(if sign < 0 { star2.neg() } else { star2 })
    }

    /// Hodge Laplacian d d* + d* d with the positive-spectrum convention.
    pub fn laplacian(&self, a: &Form) -> Result<Form, ExteriorError> {
        let term1 = self.codifferential(&a.d())?;
        let term2 = if a.k() == 0 { Form::zero(self.n, 0) } else { self.codifferential(a)?.d() };
        Ok(term1.add(&term2))
    }

    /// Index raise: 1-form -> vector components.
    pub fn sharp(&self, gamma: &Form) -> Result<Vec<Poly>, ExteriorError> {
        if gamma.k() != 1 {
            return Err(ExteriorError::Other("sharp expects a 1-form".into()));
        }
        let mut comps = vec![Poly::zero(self.n); self.n];
        for (idx, p) in gamma.terms() {
            let j = idx[0] as usize - 1;
            for i in 0..self.n {
                if !self.inv[(i, j)].is_zero() {
                    comps[i] = &comps[i] + &p.scale(&self.inv[(i, j)]);
                }
            }
        }
        Ok(comps)
    }

    /// Index lower: vector components -> 1-form.
    pub fn flat(&self, v: &[Poly]) -> Form {
        assert_eq!(v.len(), self.n);
        let mut out = Form::zero(self.n, 1);
        for i in 0..self.n {
            let mut c = Poly::zero(self.n);
            for j in 0..self.n {
                if !self.mat[(i, j)].is_zero() && !v[j].is_zero() {
                    c = &c + &v[j].scale(&self.mat[(i, j)]);
                }
            }
            out = out.add(&Form::monomial(self.n, &[i as u8 + 1], c));
        }
        out
    }
}
