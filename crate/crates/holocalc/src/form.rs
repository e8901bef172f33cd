//! Differential forms on a flat chart R^n (2 <= n <= 8) with polynomial
//! coefficients: wedge product, interior product, exterior derivative.
//!
//! Index tuples are 1-based and stored strictly increasing; every sign is a
//! shuffle-permutation parity computed at insertion, so form equality is a
//! term-table comparison.

use crate::poly::Poly;
use crate::scalar::Scalar;
use num::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("degree overflow: {k} exceeds chart dimension {n}")]
    DegreeOverflow { k: usize, n: usize },
    #[error("interior product requires degree >= 1")]
    ContractDegreeZero,
    #[error("metric is singular")]
    SingularMetric,
    #[error("metric determinant is not positive")]
    NonPositiveMetric,
    #[error("volume normalisation sqrt(det g) is irrational; exact Hodge star unavailable")]
    IrrationalVolume,
    #[error("not a G2-structure at this point")]
    DegenerateG2,
    #[error("expected a basic (fiber-independent) form")]
    NotBasic,
    #[error("{0}")]
    Other(String),
}

/// Strictly increasing 1-based index tuple naming a basis k-form.
pub type IdxTuple = Vec<u8>;

/// Sign of the permutation sorting the concatenation of two disjoint
/// increasing tuples, together with the merged tuple. None if they share an
/// index (wedge of repeated covectors).
pub fn merge_indices(a: &[u8], b: &[u8]) -> Option<(i8, IdxTuple)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut sign = 1i8;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] hops over the remaining entries of a
            if (a.len() - i) % 2 == 1 {
                sign = -sign;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((sign, out))
}

/// Complement of an increasing tuple inside 1..=n, increasing.
pub fn complement(idx: &[u8], n: usize) -> IdxTuple {
    let mut out = Vec::with_capacity(n - idx.len());
    let mut it = idx.iter().peekable();
    for i in 1..=n as u8 {
        if it.peek() == Some(&&i) {
            it.next();
        } else {
            out.push(i);
        }
    }
    out
}

/// All increasing k-tuples in 1..=n, lexicographic.
pub fn basis_tuples(n: usize, k: usize) -> Vec<IdxTuple> {
    let mut out = Vec::new();
    let mut cur: IdxTuple = (1..=k as u8).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < (n - (k - 1 - i)) as u8 {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// An alternating form of fixed degree with polynomial coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    n: usize,
    k: usize,
    terms: BTreeMap<IdxTuple, Poly>,
}

impl Form {
    pub fn zero(n: usize, k: usize) -> Self {
        assert!((2..=8).contains(&n), "chart dimension out of supported range");
        Form { n, k, terms: BTreeMap::new() }
    }

    /// A scalar (degree-0) form from a polynomial.
    pub fn from_poly(n: usize, p: Poly) -> Self {
        let mut f = Form::zero(n, 0);
        f.insert_raw(vec![], p);
        f
    }

    /// The constant basis form e^{i1...ik}; indices may be unsorted, the
    /// shuffle sign is absorbed into the coefficient.
    pub fn basis(n: usize, idx: &[u8]) -> Self {
        Form::monomial(n, idx, Poly::one(n))
    }

    /// coeff * e^{idx} with sign normalisation at insertion.
    pub fn monomial(n: usize, idx: &[u8], coeff: Poly) -> Self {
        let mut f = Form::zero(n, idx.len());
        assert!(idx.iter().all(|&i| i >= 1 && i as usize <= n), "index out of range");
        let mut sorted = idx.to_vec();
        let mut sign = 1i8;
        // insertion sort, tracking parity; repeated index kills the term
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return f;
            }
        }
        let c = if sign < 0 { -&coeff } else { coeff };
        f.insert_raw(sorted, c);
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IdxTuple, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &[u8]) -> Poly {
        self.terms.get(idx).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    fn insert_raw(&mut self, idx: IdxTuple, p: Poly) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &p;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Form) -> Form {
        assert_eq!(self.n, rhs.n, "chart dimension mismatch");
        assert_eq!(self.k, rhs.k, "cannot add forms of different degree");
        let mut out = self.clone();
        for (idx, p) in &rhs.terms {
            out.insert_raw(idx.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Form) -> Form {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Form {
        Form {
            n: self.n,
            k: self.k,
            terms: self.terms.iter().map(|(i, p)| (i.clone(), -p)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero(self.n, self.k);
        }
        Form {
            n: self.n,
            k: self.k,
            terms: self.terms.iter().map(|(i, p)| (i.clone(), p.scale(c))).collect(),
        }
    }

    pub fn scale_poly(&self, q: &Poly) -> Form {
        let mut out = Form::zero(self.n, self.k);
        for (idx, p) in &self.terms {
            out.insert_raw(idx.clone(), p * q);
        }
        out
    }

    /// Wedge product. Errors on chart mismatch or degree overflow.
    pub fn wedge(&self, rhs: &Form) -> Result<Form, ExteriorError> {
        if self.n != rhs.n {
            return Err(ExteriorError::DimensionMismatch(self.n, rhs.n));
        }
        let k = self.k + rhs.k;
        if k > self.n {
            return Err(ExteriorError::DegreeOverflow { k, n: self.n });
        }
        let mut out = Form::zero(self.n, k);
        for (ia, pa) in &self.terms {
            for (ib, pb) in &rhs.terms {
                if let Some((sign, idx)) = merge_indices(ia, ib) {
                    let prod = pa * pb;
                    out.insert_raw(idx, if sign < 0 { -&prod } else { prod });
                }
            }
        }
        Ok(out)
    }

    /// Interior product v ⌟ self for a vector field with polynomial
    /// components (1-based slice of length n).
    pub fn contract(&self, v: &[Poly]) -> Result<Form, ExteriorError> {
        if self.k == 0 {
            return Err(ExteriorError::ContractDegreeZero);
        }
        assert_eq!(v.len(), self.n, "vector component count mismatch");
        let mut out = Form::zero(self.n, self.k - 1);
        for (idx, p) in &self.terms {
            for (pos, &i) in idx.iter().enumerate() {
                let comp = &v[i as usize - 1];
                if comp.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(pos);
                let c = p * comp;
                out.insert_raw(rest, if pos % 2 == 1 { -&c } else { c });
            }
        }
        Ok(out)
    }

    /// Interior product with the constant coordinate vector e_i.
    pub fn contract_basis(&self, i: u8) -> Result<Form, ExteriorError> {
        let mut v = vec![Poly::zero(self.n); self.n];
        v[i as usize - 1] = Poly::one(self.n);
        self.contract(&v)
    }

    /// Formal exterior derivative.
    pub fn d(&self) -> Form {
        let mut out = Form::zero(self.n, self.k + 1);
        if self.k >= self.n {
            return out;
        }
        for (idx, p) in &self.terms {
            for i in 1..=self.n as u8 {
                let dp = p.derivative(i as usize);
                if dp.is_zero() {
                    continue;
                }
                if let Some((sign, merged)) = merge_indices(&[i], idx) {
                    out.insert_raw(merged, if sign < 0 { -&dp } else { dp });
                }
            }
        }
        out
    }

    /// Evaluates polynomial coefficients at a chart point, yielding a
    /// constant-coefficient form.
    pub fn eval_at(&self, point: &[Scalar]) -> Form {
        let mut out = Form::zero(self.n, self.k);
        for (idx, p) in &self.terms {
            out.insert_raw(idx.clone(), Poly::constant(self.n, p.eval(point)));
        }
        out
    }

    /// Coefficient vector over `basis_tuples(n, k)`; requires constant
    /// coefficients (use `eval_at` first for fields).
    pub fn to_coeff_vec(&self) -> Vec<Scalar> {
        basis_tuples(self.n, self.k)
            .iter()
            .map(|idx| self.coeff(idx).constant_part())
            .collect()
    }

    pub fn from_coeff_vec(n: usize, k: usize, v: &[Scalar]) -> Form {
        let tuples = basis_tuples(n, k);
        assert_eq!(tuples.len(), v.len());
        let mut out = Form::zero(n, k);
        for (idx, c) in tuples.into_iter().zip(v.iter()) {
            out.insert_raw(idx, Poly::constant(n, c.clone()));
        }
        out
    }

    /// True when every coefficient is a constant polynomial.
    pub fn is_constant(&self) -> bool {
        self.terms.values().all(|p| p.is_constant())
    }

    /// Re-embeds a form on R^m into R^n (m <= n), keeping indices.
    pub fn extend_chart(&self, n: usize) -> Form {
        assert!(n >= self.n);
        let mut out = Form::zero(n, self.k);
        for (idx, p) in &self.terms {
            out.insert_raw(idx.clone(), p.extend_vars(n));
        }
        out
    }

    /// Inverse of `extend_chart`; panics if any term uses a dropped index
    /// or variable.
    pub fn restrict_chart(&self, n: usize) -> Form {
        assert!(n <= self.n);
        let mut out = Form::zero(n, self.k);
        for (idx, p) in &self.terms {
            assert!(
                idx.iter().all(|&i| (i as usize) <= n),
                "form uses a dropped coframe index"
            );
            out.insert_raw(idx.clone(), p.restrict_vars(n));
        }
        out
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})", p)?;
            if !idx.is_empty() {
                write!(f, " e^{:?}", idx)?;
            }
        }
        Ok(())
    }
}

// --- JSON wire format -----------------------------------------------------
//
// {"n":7,"k":2,"terms":[{"idx":[1,2],"poly":[{"exp":[0,...],"num":1,"den":1}]}]}
//
// Numerator/denominator are emitted as JSON integers when they fit in i64
// and as decimal strings otherwise.

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn from_bigint(x: &num::BigInt) -> IntRepr {
        use num::ToPrimitive;
        match x.to_i64() {
            Some(v) => IntRepr::Small(v),
            None => IntRepr::Big(x.to_string()),
        }
    }

    fn to_bigint(&self) -> Result<num::BigInt, ExteriorError> {
        match self {
            IntRepr::Small(v) => Ok(num::BigInt::from(*v)),
            IntRepr::Big(s) => s
                .parse()
                .map_err(|_| ExteriorError::Other(format!("invalid integer literal {s:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MonomialJson {
    exp: Vec<u16>,
    num: IntRepr,
    den: IntRepr,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    idx: Vec<u8>,
    poly: Vec<MonomialJson>,
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    n: usize,
    k: usize,
    terms: Vec<TermJson>,
}

impl Form {
    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .terms
            .iter()
            .map(|(idx, p)| TermJson {
                idx: idx.clone(),
                poly: p
                    .terms()
                    .map(|(exp, c)| MonomialJson {
                        exp: exp.clone(),
                        num: IntRepr::from_bigint(c.numer()),
                        den: IntRepr::from_bigint(c.denom()),
                    })
                    .collect(),
            })
            .collect();
        serde_json::to_value(FormJson { n: self.n, k: self.k, terms }).expect("form serialization")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Form, ExteriorError> {
        let fj: FormJson = serde_json::from_value(v.clone())
            .map_err(|e| ExteriorError::Other(format!("malformed form JSON: {e}")))?;
        if !(2..=8).contains(&fj.n) {
            return Err(ExteriorError::Other(format!(
                "chart dimension {} outside the supported range 2..=8",
                fj.n
            )));
        }
        if fj.k > fj.n {
            return Err(ExteriorError::DegreeOverflow { k: fj.k, n: fj.n });
        }
        for term in &fj.terms {
            if let Some(&bad) = term.idx.iter().find(|&&i| i == 0 || i as usize > fj.n) {
                return Err(ExteriorError::Other(format!(
                    "index {bad} out of range 1..={}",
                    fj.n
                )));
            }
        }
        let mut out = Form::zero(fj.n, fj.k);
        for term in fj.terms {
            if term.idx.len() != fj.k {
                return Err(ExteriorError::Other(format!(
                    "index tuple {:?} has wrong length for degree {}",
                    term.idx, fj.k
                )));
            }
            let monos = term
                .poly
                .into_iter()
                .map(|m| {
                    let den = m.den.to_bigint()?;
                    if den.is_zero() {
                        return Err(ExteriorError::Other("zero denominator".into()));
                    }
                    if m.exp.len() != fj.n {
                        return Err(ExteriorError::Other(format!(
                            "exponent tuple {:?} has wrong length for n = {}",
                            m.exp, fj.n
                        )));
                    }
                    Ok((m.exp, Scalar::new(m.num.to_bigint()?, den)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let p = Poly::from_terms(fj.n, monos);
            let contrib = Form::monomial(fj.n, &term.idx, p);
            out = out.add(&contrib);
        }
        Ok(out)
    }
}
