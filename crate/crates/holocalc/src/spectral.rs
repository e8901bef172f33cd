//! Arithmetic layer for the cone analysis: indicial roots of the Laplacian
//! on functions, excluded-root windows for k-forms, Fredholm index jumps
//! across weights, and the weighted-cohomology dimension calculator.
//!
//! Rates are exact quadratic surds a + b sqrt(D) with D square-free, so
//! window membership and boundary detection never go through floats.

use crate::scalar::{int, rat, sqrt_normal_form, to_f64, Scalar};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectralError {
    #[error("link eigenvalue must be nonnegative")]
    NegativeEigenvalue,
    #[error("cone dimension must be at least 2")]
    DimensionTooSmall,
    #[error("weight is an indicial root")]
    BoundaryWeight,
    #[error("weights must satisfy nu < nu'")]
    UnorderedWeights,
    #[error("k = n/2 requires n even")]
    OddMidpoint,
    #[error("{0}")]
    Invalid(String),
}

/// Exact quadratic surd a + b sqrt(d) with d square-free, d = 1 iff the
/// value is rational (then b = 0 canonically).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    a: Scalar,
    b: Scalar,
    d: BigInt,
}

impl Surd {
    pub fn rational(a: Scalar) -> Surd {
        Surd { a, b: Scalar::zero(), d: BigInt::one() }
    }

    pub fn from_int(a: i64) -> Surd {
        Surd::rational(int(a))
    }

    /// a + b sqrt(radicand); the radicand is normalised square-free.
    pub fn new(a: Scalar, b: Scalar, radicand: &Scalar) -> Result<Surd, SpectralError> {
        if radicand.is_negative() {
            return Err(SpectralError::Invalid("negative radicand".into()));
        }
        let (s, d) = sqrt_normal_form(radicand)
            .ok_or_else(|| SpectralError::Invalid("negative radicand".into()))?;
        let b_eff = &b * &s;
        if d.is_one() || b_eff.is_zero() {
            Ok(Surd::rational(&a + &b_eff))
        } else {
            Ok(Surd { a, b: b_eff, d })
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn rational_part(&self) -> &Scalar {
        &self.a
    }

    pub fn to_f64(&self) -> f64 {
        let d: f64 = self.d.to_string().parse().unwrap_or(f64::NAN);
        to_f64(&self.a) + to_f64(&self.b) * d.sqrt()
    }

    /// Exact sign of a + b sqrt(d).
    fn sign(&self) -> i8 {
        let sa = sign_of(&self.a);
        if self.b.is_zero() {
            return sa;
        }
        let sb = sign_of(&self.b);
        if sa == sb || sa == 0 {
            return sb;
        }
        if sb == 0 {
            return sa;
        }
        // opposite signs: compare a^2 with b^2 d
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Scalar::from_integer(self.d.clone());
        match a2.cmp(&b2d) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    fn sub(&self, rhs: &Surd) -> SurdDiff {
        SurdDiff {
            c: &self.a - &rhs.a,
            b1: self.b.clone(),
            d1: self.d.clone(),
            b2: rhs.b.clone(),
            d2: rhs.d.clone(),
        }
    }

    pub fn cmp_exact(&self, rhs: &Surd) -> std::cmp::Ordering {
        match self.sub(rhs).sign() {
            s if s < 0 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        }
    }
}

fn sign_of(x: &Scalar) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// c + b1 sqrt(d1) - b2 sqrt(d2): enough structure to take an exact sign
/// with at most two squarings.
struct SurdDiff {
    c: Scalar,
    b1: Scalar,
    d1: BigInt,
    b2: Scalar,
    d2: BigInt,
}

impl SurdDiff {
    fn sign(&self) -> i8 {
        // collapse equal radicands first
        if self.d1 == self.d2 {
            let b = &self.b1 - &self.b2;
            return Surd { a: self.c.clone(), b, d: self.d1.clone() }.sign();
        }
        // h = b1 sqrt(d1) - b2 sqrt(d2); sign of h via squaring since the
        // two radicals are incommensurable
        let h_sign = {
            let s1 = sign_of(&self.b1);
            let s2 = sign_of(&self.b2);
            if self.b1.is_zero() && self.b2.is_zero() {
                0
            } else if self.b1.is_zero() {
                -s2
            } else if self.b2.is_zero() {
                s1
            } else if s1 != s2 {
                s1
            } else {
                let lhs = &self.b1 * &self.b1 * Scalar::from_integer(self.d1.clone());
                let rhs = &self.b2 * &self.b2 * Scalar::from_integer(self.d2.clone());
                match lhs.cmp(&rhs) {
                    std::cmp::Ordering::Greater => s1,
                    std::cmp::Ordering::Less => -s1,
                    std::cmp::Ordering::Equal => 0,
                }
            }
        };
        if self.c.is_zero() {
            return h_sign;
        }
        let c_sign = sign_of(&self.c);
        if h_sign == 0 {
            return c_sign;
        }
        if c_sign == h_sign {
            return c_sign;
        }
        // compare c^2 with h^2 = b1^2 d1 + b2^2 d2 - 2 b1 b2 sqrt(d1 d2)
        let c2 = &self.c * &self.c;
        let sum = &self.b1 * &self.b1 * Scalar::from_integer(self.d1.clone())
            + &self.b2 * &self.b2 * Scalar::from_integer(self.d2.clone());
        // c^2 - h^2 = (c2 - sum) + 2 b1 b2 sqrt(d1 d2)
        let lin = &c2 - &sum;
        let rad_coeff = int(2) * &self.b1 * &self.b2;
        let rad = Scalar::from_integer(&self.d1 * &self.d2);
        let diff_sign = Surd::new(lin, rad_coeff, &rad).expect("nonnegative radicand").sign();
        // |c| > |h| iff c^2 - h^2 > 0; then the total takes the sign of c
        match diff_sign {
            s if s > 0 => c_sign,
            0 => 0,
            _ => h_sign,
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let mag = if self.b.abs() == Scalar::one() {
            format!("sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.b.abs(), self.d)
        };
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{mag}"),
            (true, true) => write!(f, "-{mag}"),
            (false, false) => write!(f, "{} + {mag}", self.a),
            (false, true) => write!(f, "{} - {mag}", self.a),
        }
    }
}

/// Indicial root with multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct IndicialDatum {
    pub rate: Surd,
    pub multiplicity: usize,
}

impl IndicialDatum {
    pub fn new(rate: Surd, multiplicity: usize) -> Result<IndicialDatum, SpectralError> {
        if multiplicity == 0 {
            return Err(SpectralError::Invalid("multiplicity must be >= 1".into()));
        }
        Ok(IndicialDatum { rate, multiplicity })
    }
}

/// Indicial roots of the cone Laplacian on functions: the two solutions of
/// lambda(lambda + m - 2) = delta, exact quadratic surds.
pub fn indicial_roots_functions(delta: &Scalar, m: usize) -> Result<(Surd, Surd), SpectralError> {
    if delta.is_negative() {
        return Err(SpectralError::NegativeEigenvalue);
    }
    if m < 2 {
        return Err(SpectralError::DimensionTooSmall);
    }
    let shift = int((m - 2) as i64);
    let half = rat(1, 2);
    let disc = &(&shift * &shift) + &(int(4) * delta);
    let a = (-&shift) * &half;
    let plus = Surd::new(a.clone(), half.clone(), &disc)?;
    let minus = Surd::new(a, -half, &disc)?;
    Ok((plus, minus))
}

/// Exact sum and product laws for a conjugate root pair of
/// lambda(lambda + m - 2) = delta: the sum is -(m-2) and the product is
/// -delta, checked through the surd components.
pub fn roots_satisfy_laws(p: &Surd, q: &Surd, delta: &Scalar, m: usize) -> bool {
    if p.d != q.d {
        return false;
    }
    let sum_rational = &p.a + &q.a == int(-((m as i64) - 2));
    let sum_radical = (&p.b + &q.b).is_zero();
    // (a1 + b1 s)(a2 + b2 s) with s^2 = d
    let prod_rational =
        &(&p.a * &q.a) + &(&p.b * &q.b * Scalar::from_integer(p.d.clone())) == -delta.clone();
    let prod_radical = (&p.a * &q.b + &p.b * &q.a).is_zero();
    sum_rational && sum_radical && prod_rational && prod_radical
}

/// Multiplicity-weighted count of indicial roots strictly inside (nu, nu').
/// Hitting either endpoint is an error (the weight would not be Fredholm).
pub fn index_jump(
    roots: &[IndicialDatum],
    nu: &Surd,
    nu_prime: &Surd,
) -> Result<usize, SpectralError> {
    if nu.cmp_exact(nu_prime) != std::cmp::Ordering::Less {
        return Err(SpectralError::UnorderedWeights);
    }
    let mut total = 0usize;
    for r in roots {
        if r.rate.cmp_exact(nu) == std::cmp::Ordering::Equal
            || r.rate.cmp_exact(nu_prime) == std::cmp::Ordering::Equal
        {
            return Err(SpectralError::BoundaryWeight);
        }
        if nu.cmp_exact(&r.rate) == std::cmp::Ordering::Less
            && r.rate.cmp_exact(nu_prime) == std::cmp::Ordering::Less
        {
            total += r.multiplicity;
        }
    }
    Ok(total)
}

/// Open interval with rational endpoints; empty when lo >= hi.
#[derive(Clone, Debug, PartialEq)]
pub struct Window {
    pub lo: Scalar,
    pub hi: Scalar,
}

impl Window {
    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }
}

/// Excluded-root windows for homogeneous basic k-forms on an n-dimensional
/// cone, per the case analysis (with the mirror rule k -> n-k above the
/// middle degree).
#[derive(Clone, Debug, PartialEq)]
pub struct ExcludedWindows {
    /// No basic harmonic k-forms with rate strictly inside.
    pub harmonic: Option<Window>,
    /// No basic closed-and-coclosed k-forms with rate strictly inside.
    pub closed_coclosed: Option<Window>,
    /// k = n/2: harmonic at rate -k implies closed and coclosed.
    pub midpoint_statement: bool,
    /// Rate at which log terms can occur.
    pub log_rate: Scalar,
}

pub fn excluded_window(k: usize, n: usize) -> Result<ExcludedWindows, SpectralError> {
    if k > n {
        return Err(SpectralError::Invalid(format!("degree {k} exceeds dimension {n}")));
    }
    let ki = k as i64;
    let ni = n as i64;
    // harmonic windows: k <= n/2 - 1 gives (-n+k+2, -k); mirror above
    let harmonic = if 2 * ki <= ni - 2 {
        Some(Window { lo: int(-ni + ki + 2), hi: int(-ki) })
    } else if 2 * ki >= ni + 2 {
        Some(Window { lo: int(2 - ki), hi: int(ki - ni) })
    } else {
        None
    };
    // closed-and-coclosed windows: k < n/2 gives (-n+k, -k); mirror above
    let closed_coclosed = if 2 * ki < ni {
        Some(Window { lo: int(-ni + ki), hi: int(-ki) })
    } else if 2 * ki > ni {
        Some(Window { lo: int(-ki), hi: int(ki - ni) })
    } else {
        None
    };
    Ok(ExcludedWindows {
        harmonic,
        closed_coclosed,
        midpoint_statement: 2 * k == n,
        log_rate: rat(-ni, 2) - int(1),
    })
}

/// Topological input data for the weighted-cohomology calculator.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyInput {
    /// Dimension of the base of the fibration (the cone cross-section
    /// analysis works relative to n/2).
    pub n: usize,
    pub k: usize,
    pub dim_hk_c: usize,
    pub dim_hk: usize,
    pub dim_im_to_link: usize,
    pub dim_im_c_to_full: usize,
}

impl CohomologyInput {
    pub fn validate(&self) -> Result<(), SpectralError> {
        if self.dim_im_c_to_full > self.dim_hk_c.min(self.dim_hk) {
            return Err(SpectralError::Invalid(
                "im(H^k_c -> H^k) cannot exceed min(dim H^k_c, dim H^k)".into(),
            ));
        }
        if self.dim_im_to_link > self.dim_hk {
            return Err(SpectralError::Invalid(
                "im(H^k -> H^k(link)) cannot exceed dim H^k".into(),
            ));
        }
        Ok(())
    }
}

/// Dimensions of the spaces of closed-and-coclosed basic k-forms with decay
/// rates -k - delta and -k + delta, for small delta > 0.
pub fn weighted_cohomology_dims(c: &CohomologyInput) -> Result<(usize, usize), SpectralError> {
    c.validate()?;
    if 2 * c.k == c.n && c.n % 2 == 1 {
        return Err(SpectralError::OddMidpoint);
    }
    let (minus, plus) = if 2 * c.k < c.n {
        (c.dim_hk_c, c.dim_hk_c + c.dim_im_to_link)
    } else if 2 * c.k == c.n {
        (c.dim_im_c_to_full, c.dim_im_c_to_full + 2 * c.dim_im_to_link)
    } else {
        (c.dim_im_c_to_full, c.dim_hk)
    };
    Ok((minus, plus))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surd_i(x: i64) -> Surd {
        Surd::from_int(x)
    }

    #[test]
    fn function_roots_reference_values() {
        // delta = 0, m = 7: {0, -5}
        let (p, m) = indicial_roots_functions(&int(0), 7).unwrap();
        assert_eq!(p, surd_i(0));
        assert_eq!(m, surd_i(-5));
        // delta = 6, m = 7: {1, -6} (the Lichnerowicz endpoint)
        let (p, m) = indicial_roots_functions(&int(6), 7).unwrap();
        assert_eq!(p, surd_i(1));
        assert_eq!(m, surd_i(-6));
        // delta = 14, m = 7: {2, -7}
        let (p, m) = indicial_roots_functions(&int(14), 7).unwrap();
        assert_eq!(p, surd_i(2));
        assert_eq!(m, surd_i(-7));
        assert!(indicial_roots_functions(&int(-1), 7).is_err());
    }

    #[test]
    fn root_sum_and_product_laws() {
        // lambda+ + lambda- = -(m-2), lambda+ * lambda- = -delta; since the
        // roots may be irrational, check through the surd components on a
        // sample with irrational discriminant.
        let (p, m) = indicial_roots_functions(&int(1), 7).unwrap();
        assert!(!p.is_rational());
        // sum: rational parts add, radical parts cancel
        assert_eq!(&p.a + &m.a, int(-5));
        assert_eq!(&p.b + &m.b, Scalar::zero());
        // product: a^2 - b^2 d = -delta
        let prod = &(&p.a * &m.a) + &(&p.b * &m.b * Scalar::from_integer(p.d.clone()));
        assert_eq!(prod, int(-1));
    }

    #[test]
    fn surd_exact_comparisons() {
        let sqrt2 = Surd::new(int(0), int(1), &int(2)).unwrap();
        let sqrt3 = Surd::new(int(0), int(1), &int(3)).unwrap();
        assert_eq!(sqrt2.cmp_exact(&sqrt3), std::cmp::Ordering::Less);
        // 1 + sqrt(2) vs sqrt(3) + 1/2: 2.4142 vs 2.2320
        let x = Surd::new(int(1), int(1), &int(2)).unwrap();
        let y = Surd::new(rat(1, 2), int(1), &int(3)).unwrap();
        assert_eq!(x.cmp_exact(&y), std::cmp::Ordering::Greater);
        // sqrt(8) = 2 sqrt(2) normalises and compares equal
        let sqrt8 = Surd::new(int(0), int(1), &int(8)).unwrap();
        let two_sqrt2 = Surd::new(int(0), int(2), &int(2)).unwrap();
        assert_eq!(sqrt8, two_sqrt2);
        // rational vs very close surd: 17/12 > sqrt(2)
        let near = Surd::rational(rat(17, 12));
        assert_eq!(near.cmp_exact(&sqrt2), std::cmp::Ordering::Greater);
        // and 1393/985 < sqrt(2) (continued-fraction convergent from below)
        let below = Surd::rational(rat(1393, 985));
        assert_eq!(below.cmp_exact(&sqrt2), std::cmp::Ordering::Less);
    }

    #[test]
    fn index_jump_examples() {
        let roots = vec![
            IndicialDatum::new(surd_i(0), 1).unwrap(),
            IndicialDatum::new(surd_i(-5), 1).unwrap(),
        ];
        let jump = index_jump(&roots, &surd_i(-6), &Surd::rational(rat(1, 2))).unwrap();
        assert_eq!(jump, 2);
        let jump =
            index_jump(&roots, &Surd::rational(rat(-4, 1)), &Surd::rational(rat(-1, 2))).unwrap();
        assert_eq!(jump, 0);
        assert_eq!(
            index_jump(&roots, &surd_i(-5), &surd_i(0)).unwrap_err(),
            SpectralError::BoundaryWeight
        );
        assert_eq!(
            index_jump(&roots, &surd_i(1), &surd_i(0)).unwrap_err(),
            SpectralError::UnorderedWeights
        );
    }

    #[test]
    fn excluded_window_cases() {
        // (k=2, n=6): harmonic window (-2,-2) empty; cc window (-4,-2)
        let w = excluded_window(2, 6).unwrap();
        let h = w.harmonic.unwrap();
        assert!(h.is_empty());
        assert_eq!(h, Window { lo: int(-2), hi: int(-2) });
        assert_eq!(w.closed_coclosed.unwrap(), Window { lo: int(-4), hi: int(-2) });
        assert!(!w.midpoint_statement);
        // (k=0, n=6): cc window (-6, 0)
        let w = excluded_window(0, 6).unwrap();
        assert_eq!(w.closed_coclosed.unwrap(), Window { lo: int(-6), hi: int(0) });
        // (k=3, n=6): midpoint statement, no windows
        let w = excluded_window(3, 6).unwrap();
        assert!(w.harmonic.is_none());
        assert!(w.closed_coclosed.is_none());
        assert!(w.midpoint_statement);
        assert_eq!(w.log_rate, int(-4));
    }

    #[test]
    fn excluded_window_mirror_symmetry() {
        for n in 2..=8usize {
            for k in 0..=n {
                let w = excluded_window(k, n).unwrap();
                let m = excluded_window(n - k, n).unwrap();
                assert_eq!(w.harmonic, m.harmonic, "harmonic mirror k={k} n={n}");
                assert_eq!(
                    w.closed_coclosed, m.closed_coclosed,
                    "closed-coclosed mirror k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn weighted_cohomology_cases() {
        // all dims zero
        let c = CohomologyInput {
            n: 6,
            k: 1,
            dim_hk_c: 0,
            dim_hk: 0,
            dim_im_to_link: 0,
            dim_im_c_to_full: 0,
        };
        assert_eq!(weighted_cohomology_dims(&c).unwrap(), (0, 0));
        // n=6, k=2 (below middle): (H^2_c, H^2_c + im)
        let c = CohomologyInput {
            n: 6,
            k: 2,
            dim_hk_c: 1,
            dim_hk: 1,
            dim_im_to_link: 1,
            dim_im_c_to_full: 0,
        };
        assert_eq!(weighted_cohomology_dims(&c).unwrap(), (1, 2));
        // n=6, k=3 (middle): doubling of the link image
        let c = CohomologyInput {
            n: 6,
            k: 3,
            dim_hk_c: 2,
            dim_hk: 1,
            dim_im_to_link: 1,
            dim_im_c_to_full: 0,
        };
        assert_eq!(weighted_cohomology_dims(&c).unwrap(), (0, 2));
        // above the middle: (im(H_c -> H), H)
        let c = CohomologyInput {
            n: 6,
            k: 5,
            dim_hk_c: 3,
            dim_hk: 2,
            dim_im_to_link: 0,
            dim_im_c_to_full: 1,
        };
        assert_eq!(weighted_cohomology_dims(&c).unwrap(), (1, 2));
        // monotonicity is structural in all three cases
        // odd midpoint is rejected
        let c = CohomologyInput {
            n: 5,
            k: 2,
            dim_hk_c: 0,
            dim_hk: 0,
            dim_im_to_link: 0,
            dim_im_c_to_full: 0,
        };
        assert!(weighted_cohomology_dims(&c).is_ok());
        // 2k = n with n odd can't happen for integer k; validate() errors instead
        let bad = CohomologyInput {
            n: 6,
            k: 2,
            dim_hk_c: 1,
            dim_hk: 0,
            dim_im_to_link: 0,
            dim_im_c_to_full: 1,
        };
        assert!(weighted_cohomology_dims(&bad).is_err());
    }
}
