//! Combinatorial catalogs of orbifold examples: the cyclic-quotient zeta
//! data with its genericity/admissibility checks and topology labels,
//! weighted projective planes from weight triples, the S^3 x R^4
//! circle-action family with its Sasaki-Einstein tags, and the exact
//! quaternionic moment map used for spot checks.

use crate::scalar::{int, Scalar};
use num::integer::gcd;
use num::Zero;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("zeta vector fails genericity: a contiguous partial sum vanishes")]
    NotGeneric,
    #[error("zeta vector fails admissibility: gcd(|zeta|, n) != 1")]
    NotAdmissible,
    #[error("zeta vector is imprimitive: gcd of entries != 1")]
    Imprimitive,
    #[error("weights must be positive with gcd 1")]
    BadWeights,
    #[error("parity obstruction: the even-sum weight formula has no integral normalisation here")]
    ParityObstruction,
    #[error("{0}")]
    Invalid(String),
}

// --- exact quaternions ------------------------------------------------------

/// Quaternion with exact rational components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quaternion {
    pub r: Scalar,
    pub i: Scalar,
    pub j: Scalar,
    pub k: Scalar,
}

impl Quaternion {
    pub fn new(r: Scalar, i: Scalar, j: Scalar, k: Scalar) -> Quaternion {
        Quaternion { r, i, j, k }
    }

    pub fn from_ints(r: i64, i: i64, j: i64, k: i64) -> Quaternion {
        Quaternion::new(int(r), int(i), int(j), int(k))
    }

    pub fn zero() -> Quaternion {
        Quaternion::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Quaternion {
        Quaternion::from_ints(1, 0, 0, 0)
    }

    pub fn unit_i() -> Quaternion {
        Quaternion::from_ints(0, 1, 0, 0)
    }

    pub fn conj(&self) -> Quaternion {
        Quaternion::new(self.r.clone(), -self.i.clone(), -self.j.clone(), -self.k.clone())
    }

    pub fn add(&self, o: &Quaternion) -> Quaternion {
        Quaternion::new(&self.r + &o.r, &self.i + &o.i, &self.j + &o.j, &self.k + &o.k)
    }

    pub fn sub(&self, o: &Quaternion) -> Quaternion {
        Quaternion::new(&self.r - &o.r, &self.i - &o.i, &self.j - &o.j, &self.k - &o.k)
    }

    pub fn mul(&self, o: &Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (&self.r, &self.i, &self.j, &self.k);
        let (a2, b2, c2, d2) = (&o.r, &o.i, &o.j, &o.k);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.i.is_zero() && self.j.is_zero() && self.k.is_zero()
    }

    pub fn real_part(&self) -> &Scalar {
        &self.r
    }

    /// Left-multiplication matrix on (1, i, j, k) coordinates: the 4x4 real
    /// representation used as an independent multiplication oracle.
    pub fn left_matrix(&self) -> crate::linalg::Mat {
        let (a, b, c, d) = (&self.r, &self.i, &self.j, &self.k);
        crate::linalg::Mat::from_rows(vec![
            vec![a.clone(), -b.clone(), -c.clone(), -d.clone()],
            vec![b.clone(), a.clone(), -d.clone(), c.clone()],
            vec![c.clone(), d.clone(), a.clone(), -b.clone()],
            vec![d.clone(), -c.clone(), b.clone(), a.clone()],
        ])
    }

    pub fn to_vec(&self) -> Vec<Scalar> {
        vec![self.r.clone(), self.i.clone(), self.j.clone(), self.k.clone()]
    }
}

/// Hyperkahler moment map of the diagonal torus action:
/// mu(u) = (u1* i u1 - u2* i u2, ..., u_{n-1}* i u_{n-1} - u_n* i u_n).
/// Every component is purely imaginary.
pub fn moment_map(u: &[Quaternion]) -> Vec<Quaternion> {
    let pulls: Vec<Quaternion> =
        u.iter().map(|q| q.conj().mul(&Quaternion::unit_i()).mul(q)).collect();
    pulls.windows(2).map(|w| w[0].sub(&w[1])).collect()
}

// --- zeta vectors -----------------------------------------------------------

/// Integer level data for the cyclic-quotient family: a vector of length
/// n-1 with the weighted sum |zeta| = sum i * zeta_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaVector {
    pub n: usize,
    pub entries: Vec<i64>,
}

impl ZetaVector {
    pub fn new(n: usize, entries: Vec<i64>) -> Result<ZetaVector, CatalogError> {
        if n < 2 {
            return Err(CatalogError::Invalid("n must be at least 2".into()));
        }
        if entries.len() != n - 1 {
            return Err(CatalogError::Invalid(format!(
                "zeta must have length n-1 = {}, got {}",
                n - 1,
                entries.len()
            )));
        }
        Ok(ZetaVector { n, entries })
    }

    /// |zeta| = zeta_1 + 2 zeta_2 + ... + (n-1) zeta_{n-1}, recomputed on
    /// demand, never stored.
    pub fn weighted_sum(&self) -> i64 {
        self.entries.iter().enumerate().map(|(i, &z)| (i as i64 + 1) * z).sum()
    }

    /// Genericity: every contiguous partial sum is nonzero.
    pub fn is_generic(&self) -> bool {
        let m = self.entries.len();
        for i in 0..m {
            let mut acc = 0i64;
            for j in i..m {
                acc += self.entries[j];
                if acc == 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Admissibility: gcd(|zeta|, n) = 1.
    pub fn is_admissible(&self) -> bool {
        gcd(self.weighted_sum(), self.n as i64).abs() == 1
    }

    /// Primitivity: gcd of the entries is 1.
    pub fn is_primitive(&self) -> bool {
        let g = self.entries.iter().fold(0i64, |acc, &z| gcd(acc, z));
        g.abs() == 1
    }
}

/// The standard recipe zeta vector: (1) for n = 2; (2,1,...,1) for odd n;
/// (2,1,...,1,2,1,...,1) with the second 2 in coordinate n/2 for even
/// n >= 4.
pub fn canonical_zeta(n: usize) -> ZetaVector {
    assert!(n >= 2);
    let entries = if n == 2 {
        vec![1]
    } else {
        let mut v = vec![1i64; n - 1];
        v[0] = 2;
        if n.is_multiple_of(2) {
            v[n / 2 - 1] = 2;
        }
        v
    };
    ZetaVector::new(n, entries).expect("recipe lengths agree")
}

// --- example records --------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    An,
    Wcp2,
    S3R4,
}

/// Catalog entry: family, parameters, validity flags, topology labels.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleRecord {
    pub family: Family,
    pub parameters: Vec<i64>,
    pub generic: bool,
    pub admissible: bool,
    pub primitive: bool,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b2: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diffeomorphism: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_space: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
    pub notes: Vec<String>,
}

impl ExampleRecord {
    fn bare(family: Family, parameters: Vec<i64>) -> ExampleRecord {
        ExampleRecord {
            family,
            parameters,
            generic: false,
            admissible: false,
            primitive: false,
            valid: false,
            b2: None,
            diffeomorphism: None,
            quotient: None,
            total_space: None,
            tag: None,
            notes: Vec::new(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("record serialization")
    }
}

/// Record for the cyclic-quotient 5-manifold: requires genericity,
/// admissibility and primitivity, then labels b2 = n-2 and the connected
/// sum #_{n-2}(S^2 x S^3) (n = 2 degenerates to S^5 by convention).
pub fn an_record(z: &ZetaVector) -> Result<ExampleRecord, CatalogError> {
    if !z.is_generic() {
        return Err(CatalogError::NotGeneric);
    }
    if !z.is_admissible() {
        return Err(CatalogError::NotAdmissible);
    }
    if !z.is_primitive() {
        return Err(CatalogError::Imprimitive);
    }
    let mut params = vec![z.n as i64];
    params.extend(&z.entries);
    let mut rec = ExampleRecord::bare(Family::An, params);
    rec.generic = true;
    rec.admissible = true;
    rec.primitive = true;
    rec.valid = true;
    let b2 = z.n as i64 - 2;
    rec.b2 = Some(b2);
    rec.diffeomorphism = Some(if b2 == 0 {
        "S^5".to_string()
    } else if b2 == 1 {
        "S^2 x S^3".to_string()
    } else {
        format!("#_{}(S^2 x S^3)", b2)
    });
    if b2 == 0 {
        rec.notes.push(
            "connected sum of zero copies rendered as S^5 (simply connected spin with b2 = 0)"
                .to_string(),
        );
    }
    Ok(rec)
}

/// Weighted-projective-plane weights from a positive coprime triple:
/// q_i = p_j + p_k over cyclic (ijk) when the sum is odd; halved when the
/// sum is even, which is a parity obstruction for every coprime triple.
pub fn wcp2_weights(p: [i64; 3]) -> Result<[i64; 3], CatalogError> {
    if p.iter().any(|&x| x <= 0) || gcd(gcd(p[0], p[1]), p[2]) != 1 {
        return Err(CatalogError::BadWeights);
    }
    let sums = [p[1] + p[2], p[2] + p[0], p[0] + p[1]];
    if (p[0] + p[1] + p[2]) % 2 != 0 {
        Ok(sums)
    } else {
        if sums.iter().any(|s| s % 2 != 0) {
            return Err(CatalogError::ParityObstruction);
        }
        Ok([sums[0] / 2, sums[1] / 2, sums[2] / 2])
    }
}

/// Record for the quaternionic quotient over a weighted projective plane:
/// bundles the weight computation, the admissibility flag (circle quotients
/// of S^5 are always admissible here) and the 8-manifold label.
pub fn wcp2_record(p: [i64; 3]) -> Result<ExampleRecord, CatalogError> {
    let q = wcp2_weights(p)?;
    let mut rec = ExampleRecord::bare(Family::Wcp2, p.to_vec());
    rec.generic = true;
    rec.admissible = true;
    rec.primitive = true;
    rec.valid = true;
    rec.quotient = Some(format!("WCP^2[{},{},{}]", q[0], q[1], q[2]));
    rec.total_space = Some("V_2(C^3) x_{SU(2)} su(2)".to_string());
    Ok(rec)
}

/// Record for the circle-action family on S^3 x R^4: valid iff
/// p1 + p2 = q1 + q2 and gcd(p_i, q_j) = 1 for all four pairs; tags the
/// Sasaki-Einstein Y^{p,q} subfamily when the pattern matches.
pub fn s3r4_record(p1: i64, p2: i64, q1: i64, q2: i64) -> ExampleRecord {
    let mut rec = ExampleRecord::bare(Family::S3R4, vec![p1, p2, q1, q2]);
    let positive = p1 > 0 && p2 > 0 && q1 > 0 && q2 > 0;
    let balanced = p1 + p2 == q1 + q2;
    let coprime = positive
        && [(p1, q1), (p1, q2), (p2, q1), (p2, q2)].iter().all(|&(a, b)| gcd(a, b) == 1);
    rec.generic = balanced;
    rec.admissible = coprime;
    rec.primitive = coprime;
    rec.valid = positive && balanced && coprime;
    if !positive {
        rec.notes.push("parameters must be positive".to_string());
    }
    if !balanced {
        rec.notes.push("balance p1 + p2 = q1 + q2 fails".to_string());
    }
    if positive && !coprime {
        rec.notes.push("a pair gcd(p_i, q_j) exceeds 1".to_string());
    }
    if rec.valid {
        rec.total_space = Some("S^3 x R^4".to_string());
        // Y^{p,q} pattern: p1 = p2 = p, q1 = p - q, q2 = p + q with
        // p > q > 0 and gcd(p, q) = 1
        if p1 == p2 && (q2 - q1) % 2 == 0 {
            let p = p1;
            let q = (q2 - q1) / 2;
            if q1 == p - q && q2 == p + q {
                if q > 0 && p > q && gcd(p, q) == 1 {
                    rec.tag = Some(format!("Y^{{{p},{q}}}"));
                } else if q == 0 {
                    rec.tag = Some(format!("Y^{{{p},q}} degenerate boundary (q = 0)"));
                }
            }
        }
    }
    rec
}

// --- enumerations -----------------------------------------------------------

/// Canonical-zeta records for n = 2..=n_max, in order.
pub fn catalog_an(n_max: usize) -> Vec<ExampleRecord> {
    (2..=n_max).map(|n| an_record(&canonical_zeta(n)).expect("recipe satisfies all flags")).collect()
}

/// All valid weighted-projective records with weights up to the bound,
/// sorted by parameter tuple; parity-obstructed triples are skipped.
pub fn catalog_wcp2(max_weight: i64) -> Vec<ExampleRecord> {
    let mut out = Vec::new();
    for a in 1..=max_weight {
        for b in a..=max_weight {
            for c in b..=max_weight {
                if gcd(gcd(a, b), c) != 1 {
                    continue;
                }
                if let Ok(rec) = wcp2_record([a, b, c]) {
                    out.push(rec);
                }
            }
        }
    }
    out
}

/// All valid circle-action records with parameters up to the bound, sorted
/// by parameter tuple.
pub fn catalog_s3r4(max: i64) -> Vec<ExampleRecord> {
    let mut out = Vec::new();
    for p1 in 1..=max {
        for p2 in p1..=max {
            for q1 in 1..=max {
                let q2 = p1 + p2 - q1;
                if q2 < q1 || q2 > max {
                    continue;
                }
                let rec = s3r4_record(p1, p2, q1, q2);
                if rec.valid {
                    out.push(rec);
                }
            }
        }
    }
    out
}

/// Versioned catalog envelope.
pub fn catalog_json(records: &[ExampleRecord]) -> serde_json::Value {
    json!({
        "schema": "holocalc-catalog/1",
        "count": records.len(),
        "records": records.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    })
}

/// Flat CSV rendering of the records (no embedded commas in any field).
pub fn catalog_csv(records: &[ExampleRecord]) -> String {
    let mut out = String::from("family;parameters;valid;b2;diffeomorphism;quotient;tag\n");
    for r in records {
        let params =
            r.parameters.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        out.push_str(&format!(
            "{:?};{};{};{};{};{};{}\n",
            r.family,
            params,
            r.valid,
            r.b2.map_or(String::new(), |x| x.to_string()),
            r.diffeomorphism.clone().unwrap_or_default(),
            r.quotient.clone().unwrap_or_default(),
            r.tag.clone().unwrap_or_default(),
        ));
    }
    out
}
