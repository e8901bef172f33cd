//! Symbolic graded algebra over the nearly-Kahler structure forms and the
//! G2 cone built on them.
//!
//! Elements are sums c * r^a * (dr)^b * G with G one of the six structure
//! monomials {1, w, ReO, ImO, w^2, w^3} (degrees 0,2,3,3,4,6). The wedge
//! table and the link Hodge-star table are not taken on faith: both are
//! generated by brute force from the flat SU(3) model on R^6
//! (w0 = e12+e34+e56, O0 = (e1+ie2)^(e3+ie4)^(e5+ie6)) through the exact
//! exterior module, so a sign error surfaces as d(psi_C) != 0.

use crate::form::{ExteriorError, Form};
use crate::g2::{self, G2Data, TorsionClasses};
use crate::metric::Metric;
use crate::poly::Poly;
use crate::scalar::{int, Scalar};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

/// The six structure-generated link forms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum LinkMonomial {
    One,
    Omega,
    ReOmega,
    ImOmega,
    OmegaSq,
    OmegaCube,
}

use LinkMonomial::*;

pub const MONOMIALS: [LinkMonomial; 6] = [One, Omega, ReOmega, ImOmega, OmegaSq, OmegaCube];

impl LinkMonomial {
    pub fn degree(self) -> usize {
        match self {
            One => 0,
            Omega => 2,
            ReOmega | ImOmega => 3,
            OmegaSq => 4,
            OmegaCube => 6,
        }
    }

    fn label(self) -> &'static str {
        match self {
            One => "1",
            Omega => "w",
            ReOmega => "ReO",
            ImOmega => "ImO",
            OmegaSq => "w^2",
            OmegaCube => "w^3",
        }
    }
}

/// The flat SU(3) model forms on R^6.
pub fn flat_su3_model() -> (Form, Form, Form) {
    let n = 6;
    let omega = Form::basis(n, &[1, 2]).add(&Form::basis(n, &[3, 4])).add(&Form::basis(n, &[5, 6]));
    // (e1 + i e2) ^ (e3 + i e4) ^ (e5 + i e6)
    let re = Form::basis(n, &[1, 3, 5])
        .sub(&Form::basis(n, &[1, 4, 6]))
        .sub(&Form::basis(n, &[2, 3, 6]))
        .sub(&Form::basis(n, &[2, 4, 5]));
    let im = Form::basis(n, &[1, 3, 6])
        .add(&Form::basis(n, &[1, 4, 5]))
        .add(&Form::basis(n, &[2, 3, 5]))
        .sub(&Form::basis(n, &[2, 4, 6]));
    (omega, re, im)
}

fn monomial_realisation(m: LinkMonomial) -> Form {
    let (omega, re, im) = flat_su3_model();
    match m {
        One => Form::from_poly(6, Poly::one(6)),
        Omega => omega,
        ReOmega => re,
        ImOmega => im,
        OmegaSq => omega.wedge(&omega).expect("degree 4"),
        OmegaCube => {
            let o2 = omega.wedge(&omega).expect("degree 4");
            omega.wedge(&o2).expect("degree 6")
        }
    }
}

/// Expands a flat-model form in the monomial basis of its degree; None if
/// it lies outside the structure-generated span.
fn expand_in_monomials(f: &Form) -> Option<Vec<(LinkMonomial, Scalar)>> {
    let candidates: Vec<LinkMonomial> =
        MONOMIALS.iter().copied().filter(|m| m.degree() == f.k()).collect();
    if candidates.is_empty() {
        return f.is_zero().then(Vec::new);
    }
    let cols: Vec<Vec<Scalar>> =
        candidates.iter().map(|&m| monomial_realisation(m).to_coeff_vec()).collect();
    let target = f.to_coeff_vec();
    let rows = target.len();
    let mut mat = crate::linalg::Mat::zeros(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, c) in col.iter().enumerate() {
            mat[(i, j)] = c.clone();
        }
    }
    let sol = mat.solve_any(&target)?;
    // solve_any gives any solution; verify it reproduces the target exactly
    let check = mat.mul_vec(&sol);
    if check != target {
        return None;
    }
    Some(candidates.into_iter().zip(sol).filter(|(_, c)| !c.is_zero()).collect())
}

type WedgeTable = BTreeMap<(LinkMonomial, LinkMonomial), Vec<(LinkMonomial, Scalar)>>;
type StarTable = BTreeMap<LinkMonomial, Vec<(LinkMonomial, Scalar)>>;

/// Wedge and star tables generated from the flat model.
struct LinkTables {
    wedge: WedgeTable,
    star: StarTable,
}

fn link_tables() -> &'static LinkTables {
    static TABLES: OnceLock<LinkTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let metric = Metric::euclidean(6);
        let mut wedge = WedgeTable::new();
        for &a in &MONOMIALS {
            for &b in &MONOMIALS {
                let fa = monomial_realisation(a);
                let fb = monomial_realisation(b);
                let entry = if fa.k() + fb.k() > 6 {
                    Vec::new()
                } else {
                    let prod = fa.wedge(&fb).expect("link degrees fit");
                    expand_in_monomials(&prod)
                        .expect("structure monomials close under wedge")
                };
                wedge.insert((a, b), entry);
            }
        }
        let mut star = StarTable::new();
        for &m in &MONOMIALS {
            let s = metric.hodge_star(&monomial_realisation(m)).expect("euclidean star");
            star.insert(m, expand_in_monomials(&s).expect("star stays in the span"));
        }
        LinkTables { wedge, star }
    })
}

/// The installed link star table, for reporting.
pub fn star_table() -> Vec<(LinkMonomial, Vec<(LinkMonomial, Scalar)>)> {
    MONOMIALS.iter().map(|&m| (m, link_tables().star[&m].clone())).collect()
}

/// One graded term c * r^a * (dr)^b * G.
type Key = (i64, bool, LinkMonomial);

/// Element of the cone algebra: a finite sum of graded terms in canonical
/// form (no zero coefficients).
#[derive(Clone, PartialEq, Eq)]
pub struct ConeElement {
    terms: BTreeMap<Key, Scalar>,
}

impl ConeElement {
    pub fn zero() -> ConeElement {
        ConeElement { terms: BTreeMap::new() }
    }

    pub fn term(c: Scalar, r_power: i64, dr: bool, m: LinkMonomial) -> ConeElement {
        let mut e = ConeElement::zero();
        e.insert(r_power, dr, m, c);
        e
    }

    fn insert(&mut self, a: i64, b: bool, m: LinkMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (a, b, m);
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree if homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut deg = None;
        for (_, b, m) in self.terms.keys() {
            let d = usize::from(*b) + m.degree();
            match deg {
                None => deg = Some(d),
                Some(x) if x == d => {}
                _ => return None,
            }
        }
        deg
    }

    pub fn add(&self, rhs: &ConeElement) -> ConeElement {
        let mut out = self.clone();
        for (&(a, b, m), c) in &rhs.terms {
            out.insert(a, b, m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> ConeElement {
        ConeElement { terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect() }
    }

    pub fn sub(&self, rhs: &ConeElement) -> ConeElement {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, s: &Scalar) -> ConeElement {
        if s.is_zero() {
            return ConeElement::zero();
        }
        ConeElement { terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect() }
    }

    pub fn wedge(&self, rhs: &ConeElement) -> ConeElement {
        let tables = link_tables();
        let mut out = ConeElement::zero();
        for (&(a1, b1, m1), c1) in &self.terms {
            for (&(a2, b2, m2), c2) in &rhs.terms {
                if b1 && b2 {
                    continue; // dr ^ dr = 0
                }
                // move the second dr (if any) across m1:
                // (dr^b1 G1) ^ (dr^b2 G2) = sign dr^(b1+b2) G1^G2
                let mut sign = Scalar::one();
                if b2 && m1.degree() % 2 == 1 {
                    sign = -sign;
                }
                for (m_out, coeff) in &tables.wedge[&(m1, m2)] {
                    let total_deg = usize::from(b1 || b2) + m_out.degree();
                    if total_deg > 7 {
                        continue;
                    }
                    let c = c1 * c2 * &sign * coeff;
                    out.insert(a1 + a2, b1 || b2, *m_out, c);
                }
            }
        }
        out
    }

    /// Exterior derivative under the nearly-Kahler rules
    /// dw = 3 ReO, d(ImO) = -2 w^2, d(ReO) = 0, d(r^a) = a r^{a-1} dr.
    pub fn d(&self) -> ConeElement {
        let mut out = ConeElement::zero();
        for (&(a, b, m), c) in &self.terms {
            // radial part: a r^{a-1} dr ^ (dr^b m) vanishes when b = 1
            if !b && a != 0 {
                out.insert(a - 1, true, m, c * int(a));
            }
            // link part: r^a dr^b dm with dm pulled across dr
            let dm: &[(LinkMonomial, Scalar)] = match m {
                Omega => &[(ReOmega, int(3))][..],
                ImOmega => &[(OmegaSq, int(-2))][..],
                _ => &[],
            };
            for (m_out, coeff) in dm {
                let mut c_out = c * coeff;
                if b {
                    // dr ^ dm = -(dm moved past dr): d(dr ^ m) = -dr ^ dm
                    c_out = -c_out;
                }
                out.insert(a, b, *m_out, c_out);
            }
        }
        out
    }

    /// Cone Hodge star for the metric dr^2 + r^2 g_link with volume
    /// dr ^ r^6 vol_link:
    ///   star(r^a G_k)        = (-1)^k r^{a+6-2k} dr ^ star6(G_k)
    ///   star(r^a dr ^ G_k)   = r^{a+6-2k} star6(G_k).
    pub fn hodge_star(&self) -> ConeElement {
        let tables = link_tables();
        let mut out = ConeElement::zero();
        for (&(a, b, m), c) in &self.terms {
            let k = m.degree() as i64;
            for (m_out, coeff) in &tables.star[&m] {
                if b {
                    out.insert(a + 6 - 2 * k, false, *m_out, c * coeff);
                } else {
                    let sign = if k % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                    out.insert(a + 6 - 2 * k, true, *m_out, c * coeff * sign);
                }
            }
        }
        out
    }
}

impl fmt::Debug for ConeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b, m), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            if a != 0 {
                write!(f, "*r^{}", a)?;
            }
            if b {
                write!(f, "*dr")?;
            }
            if m != One {
                write!(f, "*{}", m.label())?;
            }
        }
        Ok(())
    }
}

/// The torsion-free G2 cone 3-form r^2 dr ^ w + r^3 ReO.
pub fn cone_phi() -> ConeElement {
    ConeElement::term(Scalar::one(), 2, true, Omega)
        .add(&ConeElement::term(Scalar::one(), 3, false, ReOmega))
}

/// Dual 4-form of the cone structure, via the cone Hodge star.
pub fn cone_psi() -> ConeElement {
    cone_phi().hodge_star()
}

/// Checks whether a 2-form on the flat SU(3) chart is a basic primitive
/// (1,1)-form: kappa ^ w^2 = 0 = kappa ^ O (both real and imaginary parts).
pub fn primitive_check(kappa: &Form) -> Result<bool, ExteriorError> {
    if kappa.n() != 6 || kappa.k() != 2 {
        return Err(ExteriorError::Other("primitive check expects a 2-form on R^6".into()));
    }
    let (omega, re, im) = flat_su3_model();
    let omega_sq = omega.wedge(&omega)?;
    Ok(kappa.wedge(&omega_sq)?.is_zero()
        && kappa.wedge(&re)?.is_zero()
        && kappa.wedge(&im)?.is_zero())
}

/// Evaluates the cone structure at r = 1 as a constant 3-form on R^7 with
/// dr mapped to e7, and runs the pointwise torsion solver on the symbolic
/// derivatives (d phi_C, d psi_C) computed by the rewrite engine.
pub fn cone_torsion_via_g2() -> Result<TorsionClasses, ExteriorError> {
    let phi_at_one = cone_element_at_one(&cone_phi())?;
    let g = G2Data::new(phi_at_one)?;
    let at_one = |e: &ConeElement, deg: usize| -> Result<Form, ExteriorError> {
        if e.is_zero() {
            Ok(Form::zero(7, deg))
        } else {
            cone_element_at_one(e)
        }
    };
    let dphi = at_one(&cone_phi().d(), 4)?;
    let dpsi = at_one(&cone_psi().d(), 5)?;
    g2::torsion_from_derivatives(&g, &dphi, &dpsi)
}

/// Realises a cone element at r = 1 as a form on R^7 (link covectors
/// e1..e6, dr = e7).
pub fn cone_element_at_one(e: &ConeElement) -> Result<Form, ExteriorError> {
    let deg = e.degree().ok_or_else(|| {
        ExteriorError::Other("cone element is not homogeneous in degree".into())
    })?;
    let mut out = Form::zero(7, deg);
    for (&(_, b, m), c) in &e.terms {
        let link = monomial_realisation(m).extend_chart(7);
        let piece = if b {
            Form::basis(7, &[7]).wedge(&link)?
        } else {
            link
        };
        out = out.add(&piece.scale(c));
    }
    Ok(out)
}
