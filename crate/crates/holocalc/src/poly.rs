//! Multivariate polynomials in chart coordinates with exact rational
//! coefficients. This is the coefficient ring for differential forms on a
//! flat chart; everything stays exact so derivative/sign identities can be
//! checked without tolerances.

use crate::scalar::{int, to_f64, Scalar};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in x_1..x_n, stored as exponent tuple -> coefficient.
/// Invariants: no zero coefficients stored; all exponent tuples have
/// length `nvars`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Scalar::one())
    }

    /// The coordinate function x_i (1-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "variable index out of range");
        let mut exp = vec![0u16; nvars];
        exp[i - 1] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(exp, Scalar::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u16>, Scalar)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (exp, c) in terms {
            assert_eq!(exp.len(), nvars, "exponent tuple length mismatch");
            p.add_term(exp, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Constant term.
    pub fn constant_part(&self) -> Scalar {
        self.terms.get(&vec![0u16; self.nvars]).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &Scalar)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, exp: Vec<u16>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Formal partial derivative with respect to x_i (1-based).
    pub fn derivative(&self, i: usize) -> Poly {
        assert!(i >= 1 && i <= self.nvars);
        let mut out = Poly::zero(self.nvars);
        for (exp, c) in &self.terms {
            let e = exp[i - 1];
            if e == 0 {
                continue;
            }
            let mut new_exp = exp.clone();
            new_exp[i - 1] = e - 1;
            out.add_term(new_exp, c * int(e as i64));
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (exp, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(exp.iter()) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (exp, c) in &self.terms {
            let mut term = to_f64(c);
            for (x, &e) in point.iter().zip(exp.iter()) {
                term *= x.powi(e as i32);
            }
            acc += term;
        }
        acc
    }

    pub fn pow(&self, n: usize) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Re-embeds into a larger variable set (new variables get exponent 0).
    pub fn extend_vars(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars);
        Poly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut exp = e.clone();
                    exp.resize(nvars, 0);
                    (exp, c.clone())
                })
                .collect(),
        }
    }

    /// Inverse of `extend_vars`; panics if a dropped variable occurs.
    pub fn restrict_vars(&self, nvars: usize) -> Poly {
        assert!(nvars <= self.nvars);
        Poly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    assert!(
                        e[nvars..].iter().all(|&x| x == 0),
                        "polynomial depends on a dropped variable"
                    );
                    (e[..nvars].to_vec(), c.clone())
                })
                .collect(),
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable count mismatch");
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp: Vec<u16> = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (i, &e) in exp.iter().enumerate() {
                if e == 1 {
                    write!(f, "*x{}", i + 1)?;
                } else if e > 1 {
                    write!(f, "*x{}^{}", i + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn ring_ops() {
        let x1 = Poly::var(3, 1);
        let x2 = Poly::var(3, 2);
        let p = &(&x1 * &x1) + &x2; // x1^2 + x2
        let q = &p - &x2; // x1^2
        assert_eq!(q, x1.pow(2));
        assert!((&p - &p).is_zero());
        assert_eq!(p.eval(&[int(2), int(3), int(0)]), int(7));
    }

    #[test]
    fn derivative_and_leibniz() {
        let x1 = Poly::var(2, 1);
        let x2 = Poly::var(2, 2);
        let p = &x1 * &x2; // x1 x2
        assert_eq!(p.derivative(1), x2);
        assert_eq!(p.derivative(2), x1);
        let q = &p * &p;
        // (pq)' = p'q + pq'
        let lhs = q.derivative(1);
        let rhs = &(&p.derivative(1) * &p) + &(&p * &p.derivative(1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn zero_coefficients_never_stored() {
        let p = Poly::from_terms(2, vec![(vec![1, 0], int(1)), (vec![1, 0], int(-1))]);
        assert!(p.is_zero());
        assert_eq!(p.terms.len(), 0);
        let c = Poly::constant(2, rat(0, 5));
        assert!(c.is_zero());
    }
}
