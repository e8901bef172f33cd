//! f64 shadow of the exact layer, for order-of-vanishing tests that cannot
//! stay rational (fractional powers of the dual-4-form map).
//!
//! Forms are dense coefficient vectors over the same basis-tuple
//! enumeration as the exact layer; scalars are either plain f64 or
//! first-order jets (value plus gradient), so chart derivatives of
//! composite fields come out of the jet gradient instead of finite
//! differencing in x.

use crate::form::{basis_tuples, complement, merge_indices, Form, IdxTuple};
use crate::poly::Poly;
use crate::scalar::to_f64;
use std::collections::BTreeMap;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    /// x^(p/q) for x > 0.
    fn pow_rational(self, p: i64, q: i64) -> Self;
    fn value(self) -> f64;
}

impl Real for f64 {
    fn zero() -> f64 {
        0.0
    }
    fn one() -> f64 {
        1.0
    }
    fn from_f64(x: f64) -> f64 {
        x
    }
    fn pow_rational(self, p: i64, q: i64) -> f64 {
        self.powf(p as f64 / q as f64)
    }
    fn value(self) -> f64 {
        self
    }
}

/// First-order jet in 7 chart variables.
#[derive(Clone, Copy, Debug)]
pub struct Jet7 {
    pub v: f64,
    pub d: [f64; 7],
}

impl Jet7 {
    pub fn constant(v: f64) -> Jet7 {
        Jet7 { v, d: [0.0; 7] }
    }

    /// The coordinate function x_i (1-based) at a point.
    pub fn coordinate(value: f64, i: usize) -> Jet7 {
        let mut d = [0.0; 7];
        d[i - 1] = 1.0;
        Jet7 { v: value, d }
    }
}

impl Add for Jet7 {
    type Output = Jet7;
    fn add(self, r: Jet7) -> Jet7 {
        let mut d = self.d;
        for i in 0..7 {
            d[i] += r.d[i];
        }
        Jet7 { v: self.v + r.v, d }
    }
}

impl Sub for Jet7 {
    type Output = Jet7;
    fn sub(self, r: Jet7) -> Jet7 {
        let mut d = self.d;
        for i in 0..7 {
            d[i] -= r.d[i];
        }
        Jet7 { v: self.v - r.v, d }
    }
}

impl Mul for Jet7 {
    type Output = Jet7;
    fn mul(self, r: Jet7) -> Jet7 {
        let mut d = [0.0; 7];
        for i in 0..7 {
            d[i] = self.d[i] * r.v + self.v * r.d[i];
        }
        Jet7 { v: self.v * r.v, d }
    }
}

impl Div for Jet7 {
    type Output = Jet7;
    fn div(self, r: Jet7) -> Jet7 {
        let inv = 1.0 / r.v;
        let mut d = [0.0; 7];
        for i in 0..7 {
            d[i] = (self.d[i] - self.v * inv * r.d[i]) * inv;
        }
        Jet7 { v: self.v * inv, d }
    }
}

impl Neg for Jet7 {
    type Output = Jet7;
    fn neg(self) -> Jet7 {
        let mut d = self.d;
        for x in &mut d {
            *x = -*x;
        }
        Jet7 { v: -self.v, d }
    }
}

impl Real for Jet7 {
    fn zero() -> Jet7 {
        Jet7::constant(0.0)
    }
    fn one() -> Jet7 {
        Jet7::constant(1.0)
    }
    fn from_f64(x: f64) -> Jet7 {
        Jet7::constant(x)
    }
    fn pow_rational(self, p: i64, q: i64) -> Jet7 {
        let e = p as f64 / q as f64;
        let v = self.v.powf(e);
        let factor = e * self.v.powf(e - 1.0);
        let mut d = [0.0; 7];
        for i in 0..7 {
            d[i] = factor * self.d[i];
        }
        Jet7 { v, d }
    }
    fn value(self) -> f64 {
        self.v
    }
}

pub fn eval_poly<T: Real>(p: &Poly, x: &[T]) -> T {
    let mut acc = T::zero();
    for (exp, c) in p.terms() {
        let mut term = T::from_f64(to_f64(c));
        for (xi, &e) in x.iter().zip(exp.iter()) {
            for _ in 0..e {
                term = term * *xi;
            }
        }
        acc = acc + term;
    }
    acc
}

/// Dense constant-coefficient form over the basis-tuple enumeration.
#[derive(Clone, Debug)]
pub struct ShadowForm<T: Real> {
    pub n: usize,
    pub k: usize,
    pub coeffs: Vec<T>,
}

fn tuple_index(n: usize, k: usize) -> &'static BTreeMap<(usize, usize, IdxTuple), usize> {
    use std::sync::OnceLock;
    static IDX: OnceLock<BTreeMap<(usize, usize, IdxTuple), usize>> = OnceLock::new();
    let map = IDX.get_or_init(|| {
        let mut m = BTreeMap::new();
        for n in 2..=8usize {
            for k in 0..=n {
                for (i, t) in basis_tuples(n, k).into_iter().enumerate() {
                    m.insert((n, k, t), i);
                }
            }
        }
        m
    });
    let _ = (n, k);
    map
}

impl<T: Real> ShadowForm<T> {
    pub fn zero(n: usize, k: usize) -> Self {
        ShadowForm { n, k, coeffs: vec![T::zero(); basis_tuples(n, k).len()] }
    }

    /// Evaluates an exact polynomial-coefficient form at a chart point.
    pub fn from_exact(f: &Form, x: &[T]) -> Self {
        let mut out = ShadowForm::zero(f.n(), f.k());
        let idx = tuple_index(f.n(), f.k());
        for (t, p) in f.terms() {
            let pos = idx[&(f.n(), f.k(), t.clone())];
            out.coeffs[pos] = eval_poly(p, x);
        }
        out
    }

    pub fn add(&self, r: &Self) -> Self {
        ShadowForm {
            n: self.n,
            k: self.k,
            coeffs: self.coeffs.iter().zip(&r.coeffs).map(|(a, b)| *a + *b).collect(),
        }
    }

    pub fn sub(&self, r: &Self) -> Self {
        ShadowForm {
            n: self.n,
            k: self.k,
            coeffs: self.coeffs.iter().zip(&r.coeffs).map(|(a, b)| *a - *b).collect(),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        ShadowForm { n: self.n, k: self.k, coeffs: self.coeffs.iter().map(|a| *a * s).collect() }
    }

    pub fn wedge(&self, r: &Self) -> Self {
        let k = self.k + r.k;
        assert!(k <= self.n);
        let mut out = ShadowForm::zero(self.n, k);
        let ta = basis_tuples(self.n, self.k);
        let tb = basis_tuples(self.n, r.k);
        let idx = tuple_index(self.n, k);
        for (i, a) in ta.iter().enumerate() {
            for (j, b) in tb.iter().enumerate() {
                if let Some((sign, merged)) = merge_indices(a, b) {
                    let pos = idx[&(self.n, k, merged)];
                    let prod = self.coeffs[i] * r.coeffs[j];
                    out.coeffs[pos] =
                        out.coeffs[pos] + if sign < 0 { -prod } else { prod };
                }
            }
        }
        out
    }

    pub fn linf(&self) -> f64 {
        // NaN from a degenerate evaluation must propagate, not vanish
        self.coeffs.iter().map(|c| c.value().abs()).fold(0.0, |a, b| {
            if b.is_nan() {
                f64::NAN
            } else {
                a.max(b)
            }
        })
    }
}

impl ShadowForm<Jet7> {
    /// Exterior derivative at the base point of the jets.
    pub fn d(&self) -> ShadowForm<f64> {
        assert!(self.k < self.n);
        let mut out = ShadowForm::zero(self.n, self.k + 1);
        let tuples = basis_tuples(self.n, self.k);
        let idx = tuple_index(self.n, self.k + 1);
        for (pos, t) in tuples.iter().enumerate() {
            let jet = self.coeffs[pos];
            for i in 1..=self.n.min(7) as u8 {
                let partial = jet.d[i as usize - 1];
                if partial == 0.0 {
                    continue;
                }
                if let Some((sign, merged)) = merge_indices(&[i], t) {
                    let p = idx[&(self.n, self.k + 1, merged)];
                    out.coeffs[p] += if sign < 0 { -partial } else { partial };
                }
            }
        }
        out
    }

    pub fn values(&self) -> ShadowForm<f64> {
        ShadowForm { n: self.n, k: self.k, coeffs: self.coeffs.iter().map(|j| j.v).collect() }
    }
}

// --- dense generic linear algebra (small n) --------------------------------

fn det_generic<T: Real>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut det = T::one();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[i][col]
                    .value()
                    .abs()
                    .partial_cmp(&a[j][col].value().abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        if a[pivot][col].value().abs() == 0.0 {
            return T::zero();
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det = det * a[col][col];
        let inv = T::one() / a[col][col];
        for i in col + 1..n {
            let f = a[i][col] * inv;
            for j in col..n {
                let delta = f * a[col][j];
                a[i][j] = a[i][j] - delta;
            }
        }
    }
    det
}

fn inverse_generic<T: Real>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = m.len();
    let mut a: Vec<Vec<T>> = m.iter().map(|row| {
        let mut r = row.clone();
        r.extend(std::iter::repeat_n(T::zero(), n));
        r
    }).collect();
    for i in 0..n {
        a[i][n + i] = T::one();
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[i][col]
                    .value()
                    .abs()
                    .partial_cmp(&a[j][col].value().abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        a.swap(pivot, col);
        let inv = T::one() / a[col][col];
        for j in 0..2 * n {
            a[col][j] = a[col][j] * inv;
        }
        for i in 0..n {
            if i != col {
                let f = a[i][col];
                for j in 0..2 * n {
                    let delta = f * a[col][j];
                    a[i][j] = a[i][j] - delta;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Shadow metric: matrix, inverse, sqrt(det), orientation +1.
pub struct ShadowMetric<T: Real> {
    pub n: usize,
    pub inv: Vec<Vec<T>>,
    pub sqrt_det: T,
}

impl<T: Real> ShadowMetric<T> {
    pub fn new(mat: Vec<Vec<T>>) -> Self {
        let n = mat.len();
        let det = det_generic(&mat);
        let inv = inverse_generic(&mat);
        ShadowMetric { n, inv, sqrt_det: det.pow_rational(1, 2) }
    }

    fn gram(&self, a: &[u8], b: &[u8]) -> T {
        if a.is_empty() {
            return T::one();
        }
        let m: Vec<Vec<T>> = a
            .iter()
            .map(|&i| b.iter().map(|&j| self.inv[i as usize - 1][j as usize - 1]).collect())
            .collect();
        det_generic(&m)
    }

    pub fn hodge_star(&self, beta: &ShadowForm<T>) -> ShadowForm<T> {
        let k = beta.k;
        let n = self.n;
        let mut out = ShadowForm::zero(n, n - k);
        let tuples = basis_tuples(n, k);
        let out_idx = tuple_index(n, n - k);
        for (i, ti) in tuples.iter().enumerate() {
            let mut coeff = T::zero();
            for (j, tj) in tuples.iter().enumerate() {
                let c = beta.coeffs[j];
                if c.value() != 0.0 {
                    coeff = coeff + self.gram(ti, tj) * c;
                }
            }
            let _ = i;
            if coeff.value() == 0.0 {
                continue;
            }
            let comp = complement(ti, n);
            let (sign, _) = merge_indices(ti, &comp).expect("disjoint");
            let pos = out_idx[&(n, n - k, comp)];
            let scaled = coeff * self.sqrt_det;
            out.coeffs[pos] = out.coeffs[pos] + if sign < 0 { -scaled } else { scaled };
        }
        out
    }
}

/// Shadow of the G2 metric recovery and dual 4-form, calibrated by the same
/// constant as the exact path.
pub fn g2_dual_four_form<T: Real>(phi: &ShadowForm<T>) -> ShadowForm<T> {
    assert_eq!(phi.n, 7);
    assert_eq!(phi.k, 3);
    // B(u, v) vol = (u . phi) ^ (v . phi) ^ phi
    let contractions: Vec<ShadowForm<T>> = (1..=7u8).map(|i| contract_basis(phi, i)).collect();
    let mut b = vec![vec![T::zero(); 7]; 7];
    let top = tuple_index(7, 7);
    let top_pos = top[&(7, 7, (1..=7u8).collect::<Vec<u8>>())];
    for i in 0..7 {
        for j in i..7 {
            let w = contractions[i].wedge(&contractions[j]).wedge(phi);
            b[i][j] = w.coeffs[top_pos];
            b[j][i] = b[i][j];
        }
    }
    let cal = to_f64(&crate::g2::recovery_calibration());
    let c = T::from_f64(cal);
    let det_b = det_generic(&b);
    let c7 = T::from_f64(cal.powi(7));
    let s = (det_b / c7).pow_rational(1, 9); // sqrt(det g)
    let scale = T::one() / (c * s);
    let g: Vec<Vec<T>> = b
        .iter()
        .map(|row| row.iter().map(|x| *x * scale).collect())
        .collect();
    let metric = ShadowMetric::new(g);
    metric.hodge_star(phi)
}

fn contract_basis<T: Real>(f: &ShadowForm<T>, i: u8) -> ShadowForm<T> {
    let mut out = ShadowForm::zero(f.n, f.k - 1);
    let tuples = basis_tuples(f.n, f.k);
    let idx = tuple_index(f.n, f.k - 1);
    for (pos, t) in tuples.iter().enumerate() {
        if let Some(p) = t.iter().position(|&x| x == i) {
            let mut rest = t.clone();
            rest.remove(p);
            let target = idx[&(f.n, f.k - 1, rest)];
            let c = f.coeffs[pos];
            out.coeffs[target] = out.coeffs[target] + if p % 2 == 1 { -c } else { c };
        }
    }
    out
}
