//! Seeded verification suites, one per subsystem. The CLI `verify`
//! command, the browser demo and the acceptance tests all run these same
//! checks; a single seed makes every randomized sample reproducible.

use crate::catalog;
use crate::cones;
use crate::form::{basis_tuples, Form};
use crate::g2::{self, G2Data, TorsionClasses};
use crate::linalg::Mat;
use crate::metric::Metric;
use crate::poly::Poly;
use crate::report::CheckRecord;
use crate::scalar::{int, rat, Scalar};
use crate::seifert::{FiberedChart, InvariantForm};
use crate::spectral::{self, CohomologyInput, IndicialDatum, Surd};
use crate::spin7::{self, Perturbation, Spin7Triple};
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Exterior,
    Seifert,
    G2,
    Spin7,
    Cone,
    Spectral,
    Catalog,
}

pub const ALL_SUITES: [Suite; 7] = [
    Suite::Exterior,
    Suite::Seifert,
    Suite::G2,
    Suite::Spin7,
    Suite::Cone,
    Suite::Spectral,
    Suite::Catalog,
];

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Exterior => "exterior",
            Suite::Seifert => "seifert",
            Suite::G2 => "g2",
            Suite::Spin7 => "spin7",
            Suite::Cone => "cone",
            Suite::Spectral => "spectral",
            Suite::Catalog => "catalog",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        ALL_SUITES.iter().copied().find(|x| x.name() == s)
    }
}

struct Checker {
    prefix: &'static str,
    seed: u64,
    records: Vec<CheckRecord>,
}

impl Checker {
    fn new(prefix: &'static str, seed: u64) -> Checker {
        Checker { prefix, seed, records: Vec::new() }
    }

    fn rng_for(&self, name: &str) -> ChaCha20Rng {
        // stable per-check stream independent of check order
        let mut h: u64 = 0xcbf29ce484222325;
        for b in name.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        ChaCha20Rng::seed_from_u64(self.seed ^ h)
    }

    fn run(&mut self, name: &str, f: impl FnOnce(&mut ChaCha20Rng) -> Result<String, String>) {
        let full = format!("{}.{}", self.prefix, name);
        let mut rng = self.rng_for(name);
        let start = Instant::now();
        let mut rec = match f(&mut rng) {
            Ok(detail) => CheckRecord::pass(&full, detail),
            Err(detail) => CheckRecord::fail(&full, detail),
        };
        rec.elapsed_ms = Some(start.elapsed().as_millis());
        self.records.push(rec);
    }
}

// --- random generators ------------------------------------------------------

fn rand_scalar(rng: &mut ChaCha20Rng) -> Scalar {
    let num = rng.gen_range(-6i64..=6);
    let den = rng.gen_range(1i64..=4);
    rat(num, den)
}

fn rand_small_scalar(rng: &mut ChaCha20Rng) -> Scalar {
    let num = rng.gen_range(-2i64..=2);
    let den = rng.gen_range(2i64..=4);
    rat(num, den)
}

fn rand_small_form(rng: &mut ChaCha20Rng, n: usize, k: usize, nterms: usize, max_deg: u16) -> Form {
    let tuples = basis_tuples(n, k);
    let mut f = Form::zero(n, k);
    for _ in 0..nterms {
        let idx = &tuples[rng.gen_range(0..tuples.len())];
        let p = Poly::from_terms(
            n,
            (0..2).map(|_| {
                let mut exp = vec![0u16; n];
                for _ in 0..rng.gen_range(0..=max_deg) {
                    exp[rng.gen_range(0..n)] += 1;
                }
                (exp, rand_small_scalar(rng))
            }),
        );
        f = f.add(&Form::monomial(n, idx, p));
    }
    f
}

fn rand_nonzero_scalar(rng: &mut ChaCha20Rng) -> Scalar {
    loop {
        let s = rand_scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

fn rand_poly(rng: &mut ChaCha20Rng, nvars: usize, max_deg: u16, nterms: usize) -> Poly {
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let mut exp = vec![0u16; nvars];
        let deg = rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            let v = rng.gen_range(0..nvars);
            exp[v] += 1;
        }
        terms.push((exp, rand_scalar(rng)));
    }
    Poly::from_terms(nvars, terms)
}

fn rand_form(rng: &mut ChaCha20Rng, n: usize, k: usize, nterms: usize, max_deg: u16) -> Form {
    let tuples = basis_tuples(n, k);
    let mut f = Form::zero(n, k);
    for _ in 0..nterms {
        let idx = &tuples[rng.gen_range(0..tuples.len())];
        f = f.add(&Form::monomial(n, idx, rand_poly(rng, n, max_deg, 2)));
    }
    f
}

fn rand_constant_form(rng: &mut ChaCha20Rng, n: usize, k: usize, nterms: usize) -> Form {
    rand_form(rng, n, k, nterms, 0)
}

fn check_eq(lhs: &Form, rhs: &Form, what: &str) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{what}: exact mismatch"))
    }
}

/// Least-squares slope of log(y) against log(x).
fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

// --- suites -----------------------------------------------------------------

pub fn run_suite(suite: Suite, seed: u64) -> Vec<CheckRecord> {
    run_suite_with_eps(suite, seed, &rat(1, 4))
}

/// Same suites with the collapsing parameter used by the scaling and
/// error-term checks made explicit.
pub fn run_suite_with_eps(suite: Suite, seed: u64, eps: &Scalar) -> Vec<CheckRecord> {
    match suite {
        Suite::Exterior => exterior_suite(seed),
        Suite::Seifert => seifert_suite(seed),
        Suite::G2 => g2_suite(seed),
        Suite::Spin7 => spin7_suite(seed, eps),
        Suite::Cone => cone_suite(seed),
        Suite::Spectral => spectral_suite(seed),
        Suite::Catalog => catalog_suite(seed),
    }
}

pub fn run_all(seed: u64) -> Vec<CheckRecord> {
    ALL_SUITES.iter().flat_map(|&s| run_suite(s, seed)).collect()
}

fn exterior_suite(seed: u64) -> Vec<CheckRecord> {
    let mut c = Checker::new("exterior", seed);

    c.run("wedge_graded_commutativity", |rng| {
        let n = 7;
        let mut cases = 0;
        for k1 in 0..=n {
            for k2 in 0..=(n - k1) {
                for _ in 0..100 {
                    let a = rand_form(rng, n, k1, 2, 2);
                    let b = rand_form(rng, n, k2, 2, 2);
                    let ab = a.wedge(&b).map_err(|e| e.to_string())?;
                    let ba = b.wedge(&a).map_err(|e| e.to_string())?;
                    let expect = if (k1 * k2) % 2 == 0 { ba } else { ba.neg() };
                    check_eq(&ab, &expect, "graded commutativity")?;
                    cases += 1;
                }
            }
        }
        Ok(format!("{cases} randomized cases over all degree pairs, exact"))
    });

    c.run("wedge_associativity", |rng| {
        let n = 7;
        for _ in 0..100 {
            let (k1, k2, k3) = loop {
                let k1 = rng.gen_range(0..=3);
                let k2 = rng.gen_range(0..=3);
                let k3 = rng.gen_range(0..=3);
                if k1 + k2 + k3 <= n {
                    break (k1, k2, k3);
                }
            };
            let a = rand_form(rng, n, k1, 2, 2);
            let b = rand_form(rng, n, k2, 2, 2);
            let ch = rand_form(rng, n, k3, 2, 2);
            let lhs = a.wedge(&b).unwrap().wedge(&ch).unwrap();
            let rhs = a.wedge(&b.wedge(&ch).unwrap()).unwrap();
            check_eq(&lhs, &rhs, "associativity")?;
        }
        Ok("100 randomized triples, exact".into())
    });

    c.run("wedge_bilinearity", |rng| {
        let n = 7;
        let mut cases = 0;
        for k1 in 0..=n {
            for k2 in 0..=(n - k1) {
                for _ in 0..100 {
                    let a = rand_form(rng, n, k1, 2, 2);
                    let b = rand_form(rng, n, k1, 2, 2);
                    let t = rand_form(rng, n, k2, 2, 2);
                    let s = rand_nonzero_scalar(rng);
                    let lhs = a.add(&b.scale(&s)).wedge(&t).unwrap();
                    let rhs = a.wedge(&t).unwrap().add(&b.wedge(&t).unwrap().scale(&s));
                    check_eq(&lhs, &rhs, "bilinearity")?;
                    cases += 1;
                }
            }
        }
        Ok(format!("{cases} randomized cases over all degree pairs, exact"))
    });

    c.run("hodge_defining_contract_exhaustive", |_| {
        let mut pairs = 0;
        for n in 2..=7usize {
            let g = Metric::euclidean(n);
            let vol = g.volume_form().unwrap();
            for k in 0..=n {
                for a_idx in basis_tuples(n, k) {
                    for b_idx in basis_tuples(n, k) {
                        let alpha = Form::basis(n, &a_idx);
                        let beta = Form::basis(n, &b_idx);
                        let lhs = alpha.wedge(&g.hodge_star(&beta).unwrap()).unwrap();
                        let inner = g.inner(&alpha, &beta).unwrap();
                        let rhs = vol.scale_poly(&inner);
                        check_eq(&lhs, &rhs, "defining contract")?;
                        pairs += 1;
                    }
                }
            }
        }
        Ok(format!("{pairs} basis pairs over n = 2..7 Euclidean, exact"))
    });

    c.run("hodge_double_star_sign_law", |_| {
        let mut cases = 0;
        for n in 2..=8usize {
            let g = Metric::euclidean(n);
            for k in 0..=n {
                for idx in basis_tuples(n, k) {
                    let f = Form::basis(n, &idx);
                    let ss = g.hodge_star(&g.hodge_star(&f).unwrap()).unwrap();
                    let expect = if (k * (n - k)) % 2 == 0 { f } else { f.neg() };
                    check_eq(&ss, &expect, "double star")?;
                    cases += 1;
                }
            }
        }
        // a curved metric with rational volume
        let g = Metric::new(
            Mat::from_rows(vec![
                vec![int(2), int(1), int(0)],
                vec![int(1), int(1), int(0)],
                vec![int(0), int(0), int(4)],
            ]),
            1,
        )
        .unwrap();
        for k in 0..=3usize {
            for idx in basis_tuples(3, k) {
                let f = Form::basis(3, &idx);
                let ss = g.hodge_star(&g.hodge_star(&f).unwrap()).unwrap();
                let expect = if (k * (3 - k)) % 2 == 0 { f } else { f.neg() };
                check_eq(&ss, &expect, "double star, curved metric")?;
                cases += 1;
            }
        }
        Ok(format!("{cases} basis cases for all (n, k), n <= 8, exact"))
    });

    c.run("d_squared_and_leibniz", |rng| {
        let n = 7;
        for _ in 0..100 {
            let k = rng.gen_range(0..=4);
            let a = rand_form(rng, n, k, 3, 3);
            if !a.d().d().is_zero() {
                return Err("d^2 != 0".into());
            }
            // keep da ^ b and a ^ db inside the top degree
            let k2 = rng.gen_range(0..=(n - k - 1).min(3));
            let b = rand_form(rng, n, k2, 3, 3);
            let lhs = a.wedge(&b).unwrap().d();
            let mut rhs = a.d().wedge(&b).unwrap();
            let second = a.wedge(&b.d()).unwrap();
            rhs = rhs.add(&(if k % 2 == 1 { second.neg() } else { second }));
            check_eq(&lhs, &rhs, "Leibniz")?;
        }
        Ok("100 randomized polynomial forms: d^2 = 0 and Leibniz, exact".into())
    });

    c.run("contract_antiderivation", |rng| {
        let n = 7;
        for _ in 0..50 {
            let k1 = rng.gen_range(1..=3);
            let k2 = rng.gen_range(1..=(n - k1).min(3));
            let a = rand_form(rng, n, k1, 2, 2);
            let b = rand_form(rng, n, k2, 2, 2);
            let v: Vec<Poly> = (0..n).map(|_| rand_poly(rng, n, 1, 2)).collect();
            let lhs = a.wedge(&b).unwrap().contract(&v).unwrap();
            let mut rhs = a.contract(&v).unwrap().wedge(&b).unwrap();
            let second = a.wedge(&b.contract(&v).unwrap()).unwrap();
            rhs = rhs.add(&(if k1 % 2 == 1 { second.neg() } else { second }));
            check_eq(&lhs, &rhs, "antiderivation")?;
        }
        Ok("50 randomized rational inputs, exact".into())
    });

    c.run("codifferential_sign_and_laplacian", |rng| {
        let g = Metric::euclidean(7);
        for _ in 0..20 {
            // explicit sign (-1)^{n(k-1)+1} = -1 for k = 1, n = 7
            let gamma = rand_form(rng, 7, 1, 3, 3);
            let direct = g.codifferential(&gamma).unwrap();
            let star_route = g
                .hodge_star(&g.hodge_star(&gamma).unwrap().d())
                .unwrap()
                .neg();
            check_eq(&direct, &star_route, "codifferential sign on 1-forms")?;
            // d* d f = minus the sum of second partials
            let f = rand_poly(rng, 7, 3, 3);
            let lap = g.codifferential(&Form::from_poly(7, f.clone()).d()).unwrap();
            let mut expect = Poly::zero(7);
            for i in 1..=7 {
                expect = &expect - &f.derivative(i).derivative(i);
            }
            check_eq(&lap, &Form::from_poly(7, expect), "Laplacian vs second derivatives")?;
        }
        Ok("20 randomized checks of the codifferential sign and Laplacian, exact".into())
    });

    c.run("hodge_star_linear_solve_oracle", |rng| {
        // independent route: solve alpha ^ X = <alpha, beta> vol for the
        // unknown coefficients of X over the complementary-degree basis
        let metrics: Vec<Metric> = vec![
            Metric::diagonal(&[int(1), int(4)], 1).unwrap(),
            Metric::euclidean(3),
            Metric::new(
                Mat::from_rows(vec![vec![int(2), int(1)], vec![int(1), int(1)]]),
                1,
            )
            .unwrap(),
            Metric::diagonal(&[int(1), int(4), int(9), int(1)], 1).unwrap(),
        ];
        for g in &metrics {
            let n = g.n();
            let vol = g.volume_form().unwrap();
            for k in 0..=n {
                for _ in 0..5 {
                    let beta = rand_constant_form(rng, n, k, 2);
                    let tuples_out = basis_tuples(n, n - k);
                    let tuples_in = basis_tuples(n, k);
                    let mut mat = Mat::zeros(tuples_in.len(), tuples_out.len());
                    let mut rhs = Vec::new();
                    for (r, a_idx) in tuples_in.iter().enumerate() {
                        let alpha = Form::basis(n, a_idx);
                        for (cc, x_idx) in tuples_out.iter().enumerate() {
                            let w = alpha.wedge(&Form::basis(n, x_idx)).unwrap();
                            mat[(r, cc)] = w
                                .coeff(&(1..=n as u8).collect::<Vec<_>>())
                                .constant_part();
                        }
                        let inner = g.inner(&alpha, &beta).unwrap().constant_part();
                        rhs.push(
                            &inner
                                * &vol
                                    .coeff(&(1..=n as u8).collect::<Vec<_>>())
                                    .constant_part(),
                        );
                    }
                    let sol = mat.solve_any(&rhs).ok_or("oracle system unsolvable")?;
                    let oracle = Form::from_coeff_vec(n, n - k, &sol);
                    let star = g.hodge_star(&beta).unwrap();
                    check_eq(&star, &oracle, "star vs linear-solve oracle")?;
                }
            }
        }
        // the worked diagonal example: star(e1) = 2 e2 for g = diag(1,4)
        let g = Metric::diagonal(&[int(1), int(4)], 1).unwrap();
        let s = g.hodge_star(&Form::basis(2, &[1])).unwrap();
        check_eq(&s, &Form::basis(2, &[2]).scale(&int(2)), "diag example")?;
        // and star(phi0) = psi0 on R^7, against the oracle-derived list
        let g7 = Metric::euclidean(7);
        let psi = g7.hodge_star(&g2::standard_phi()).unwrap();
        check_eq(&psi, G2Data::standard().psi(), "star(phi0) component list")?;
        Ok("linear-solve oracle agrees with the implementation on 4 metrics".into())
    });

    c.records
}

fn seifert_suite(seed: u64) -> Vec<CheckRecord> {
    let mut c = Checker::new("seifert", seed);

    let chart_n = |n: usize| {
        FiberedChart::new(
            Form::monomial(n, &[2], Poly::var(n, 1)),
            Metric::euclidean(n),
        )
        .unwrap()
    };

    c.run("adapted_d_restricts_to_d_on_basic", |rng| {
        for n in [2usize, 3, 7] {
            let ch = chart_n(n);
            for _ in 0..20 {
                let k = rng.gen_range(0..n);
                let beta = rand_form(rng, n, k, 2, 2);
                let out = ch.adapted_d(&InvariantForm::basic(beta.clone()));
                if !out.is_basic() {
                    return Err(format!("adapted_d left the basic forms at n = {n}"));
                }
                check_eq(out.basic_part(), &beta.d(), "adapted_d = d on basic")?;
            }
        }
        Ok("60 randomized basic forms at n = 2, 3, 7, exact".into())
    });

    c.run("adapted_d_annihilates_theta", |_| {
        for n in [2usize, 3, 7] {
            let ch = chart_n(n);
            if !ch.adapted_d(&ch.theta()).is_zero() {
                return Err(format!("d_nabla theta != 0 at n = {n}"));
            }
        }
        Ok("theta is parallel for the adapted differential".into())
    });

    c.run("codifferential_formulas_agree", |rng| {
        let mut cases = 0;
        // flat Euclidean bases at n = 3 and 7, plus a constant diagonal
        // base metric with rational volume
        let charts = vec![
            chart_n(3),
            chart_n(7),
            FiberedChart::new(
                Form::monomial(3, &[2], Poly::var(3, 1)),
                Metric::diagonal(&[int(1), int(4), int(9)], 1).unwrap(),
            )
            .unwrap(),
        ];
        for ch in &charts {
            let n = ch.n();
            let reps = if n == 3 { 15 } else { 10 };
            for _ in 0..reps {
                let k = rng.gen_range(1..=n.min(4));
                let beta = rand_form(rng, n, k, 2, 2);
                let via_transverse = ch.adapted_codiff(&beta).map_err(|e| e.to_string())?;
                let via_full = ch
                    .adapted_codiff_full(&InvariantForm::basic(beta))
                    .map_err(|e| e.to_string())?;
                if !via_full.is_basic() {
                    return Err("full-space codifferential left the basic forms".into());
                }
                check_eq(via_full.basic_part(), &via_transverse, "two codifferential expressions")?;
                cases += 1;
            }
        }
        Ok(format!(
            "{cases} randomized invariant forms over three base metrics, both expressions agree exactly"
        ))
    });

    c.run("star_m_vs_transverse_star_exhaustive", |_| {
        let mut cases = 0;
        for n in [2usize, 3, 7] {
            let ch = chart_n(n);
            for k in 0..=n {
                for idx in basis_tuples(n, k) {
                    let beta = Form::basis(n, &idx);
                    let lhs = ch.star_total(&InvariantForm::basic(beta.clone())).unwrap();
                    let ts = ch.transverse_star(&beta).unwrap();
                    let rhs_raw = ch.theta().wedge(&InvariantForm::basic(ts)).unwrap();
                    let rhs = if k % 2 == 1 { rhs_raw.neg() } else { rhs_raw };
                    if lhs != rhs {
                        return Err(format!("star_M identity fails at n={n} idx={idx:?}"));
                    }
                    cases += 1;
                }
            }
        }
        Ok(format!("{cases} basis basic forms at n = 2, 3, 7, exact"))
    });

    c.run("transverse_double_star_sign", |_| {
        for n in [2usize, 3, 7] {
            let ch = chart_n(n);
            for k in 0..=n {
                for idx in basis_tuples(n, k) {
                    let beta = Form::basis(n, &idx);
                    let ss = ch.transverse_star(&ch.transverse_star(&beta).unwrap()).unwrap();
                    let expect = if (k * (n - k)) % 2 == 0 { beta } else { beta.neg() };
                    if ss != expect {
                        return Err(format!("double transverse star at n={n} idx={idx:?}"));
                    }
                }
            }
        }
        Ok("(-1)^{k(n-k)} law on all basis basic forms, n = 2, 3, 7".into())
    });

    c.run("worked_codifferential_example", |_| {
        let ch = FiberedChart::flat(3);
        let beta = Form::monomial(3, &[1], Poly::var(3, 1));
        let got = ch.adapted_codiff(&beta).unwrap();
        check_eq(&got, &Form::from_poly(3, Poly::constant(3, int(-1))), "x1 e1 example")?;
        Ok("flat chart reference value -1".into())
    });

    c.records
}

fn g2_suite(seed: u64) -> Vec<CheckRecord> {
    let mut c = Checker::new("g2", seed);
    let g = G2Data::standard();

    c.run("projector_ranks", |_| {
        if g.rank2() != (7, 14) || g.rank3() != (1, 7, 27) {
            return Err(format!("ranks {:?} {:?}", g.rank2(), g.rank3()));
        }
        Ok("ranks (7, 14) and (1, 7, 27), exact".into())
    });

    c.run("projector_algebra_random", |rng| {
        for _ in 0..100 {
            let sigma = rand_form(rng, 7, 2, 3, 2);
            let (p7, p14) = g.project2(&sigma).unwrap();
            check_eq(&p7.add(&p14), &sigma, "completeness on 2-forms")?;
            let (pp7, _) = g.project2(&p7).unwrap();
            check_eq(&pp7, &p7, "idempotence of pi_7")?;
            let (q7, _) = g.project2(&p14).unwrap();
            if !q7.is_zero() {
                return Err("pi_7 of a type-14 form is nonzero".into());
            }
            if !p14.wedge(g.psi()).unwrap().is_zero() {
                return Err("type-14 characterisation fails".into());
            }
            let rho = rand_form(rng, 7, 3, 3, 2);
            let (r1, r7, r27) = g.project3(&rho).unwrap();
            check_eq(&r1.add(&r7).add(&r27), &rho, "completeness on 3-forms")?;
            if !g.metric().inner(&r7, &r27).unwrap().is_zero()
                || !g.metric().inner(&r1, &r7).unwrap().is_zero()
            {
                return Err("type components are not orthogonal".into());
            }
            if !r27.wedge(g.phi()).unwrap().is_zero() || !r27.wedge(g.psi()).unwrap().is_zero() {
                return Err("type-27 characterisation fails".into());
            }
        }
        Ok("100 randomized forms: completeness, idempotence, orthogonality, exact".into())
    });

    c.run("first_order_identities", |rng| {
        for _ in 0..50 {
            let gamma = rand_form(rng, 7, 1, 3, 3);
            let x = g.metric().sharp(&gamma).unwrap();
            let x_phi = g.phi().contract(&x).unwrap();
            let (p1, p7, _) = g.project3(&x_phi.d()).unwrap();
            let dstar = g.metric().codifferential(&gamma).unwrap().coeff(&[]);
            check_eq(&p1, &g.phi().scale_poly(&dstar.scale(&rat(-3, 7))), "pi_1 identity")?;
            let curl = g.curl(&gamma).unwrap();
            let want7 = g
                .metric()
                .hodge_star(&curl.wedge(g.phi()).unwrap())
                .unwrap()
                .scale(&rat(-1, 2));
            check_eq(&p7, &want7, "pi_7 identity")?;
        }
        Ok("50 randomized polynomial 1-forms of degree <= 3, exact zero residual".into())
    });

    c.run("second_identity_zero_27_part", |rng| {
        for _ in 0..50 {
            let gamma = rand_form(rng, 7, 1, 3, 3);
            let lhs = g
                .metric()
                .hodge_star(&gamma.wedge(g.psi()).unwrap())
                .unwrap()
                .d()
                .sub(&g.metric().codifferential(&gamma.wedge(g.phi()).unwrap()).unwrap());
            let dstar = g.metric().codifferential(&gamma).unwrap().coeff(&[]);
            let rhs = g
                .metric()
                .hodge_star(&g.curl(&gamma).unwrap().wedge(g.phi()).unwrap())
                .unwrap()
                .neg()
                .sub(&g.phi().scale_poly(&dstar));
            check_eq(&lhs, &rhs, "second identity")?;
            let (_, _, p27) = g.project3(&lhs).unwrap();
            if !p27.is_zero() {
                return Err("pi_27 part of the identity is nonzero".into());
            }
        }
        Ok("50 randomized samples: identity holds with zero type-27 part, exact".into())
    });

    c.run("dirac_descriptions_agree", |rng| {
        for _ in 0..50 {
            let f = rand_poly(rng, 7, 3, 3);
            let gamma = rand_form(rng, 7, 1, 3, 3);
            let direct = g.dirac(&f, &gamma).unwrap();
            let via_forms = g.dirac_via_forms(&f, &gamma).unwrap();
            if direct.0 != via_forms.0 {
                return Err("scalar parts differ".into());
            }
            check_eq(&direct.1, &via_forms.1, "one-form parts")?;
        }
        Ok("50 randomized (f, gamma): both Dirac descriptions agree exactly".into())
    });

    c.run("dirac_squared_is_laplacian", |rng| {
        for _ in 0..30 {
            let f = rand_poly(rng, 7, 3, 3);
            let gamma = rand_form(rng, 7, 1, 3, 3);
            let (a, b) = g.dirac(&f, &gamma).unwrap();
            let (aa, bb) = g.dirac(&a, &b).unwrap();
            let lap_f = g.metric().laplacian(&Form::from_poly(7, f)).unwrap().coeff(&[]);
            let lap_gamma = g.metric().laplacian(&gamma).unwrap();
            if aa != lap_f {
                return Err("scalar Laplacian mismatch".into());
            }
            check_eq(&bb, &lap_gamma, "one-form Laplacian")?;
        }
        Ok("30 randomized pairs: Dirac^2 = flat Hodge Laplacian, exact".into())
    });

    c.run("torsion_round_trip", |rng| {
        for _ in 0..20 {
            let tau0 = Poly::constant(7, rand_scalar(rng));
            let tau1 = rand_constant_form(rng, 7, 1, 2);
            let (_, tau2) = g.project2(&rand_constant_form(rng, 7, 2, 3)).unwrap();
            let (_, _, tau3) = g.project3(&rand_constant_form(rng, 7, 3, 3)).unwrap();
            let classes = TorsionClasses { tau0, tau1, tau2, tau3 };
            let (dphi, dpsi) = classes.synthesize(g).unwrap();
            let rec = g2::torsion_from_derivatives(g, &dphi, &dpsi)
                .map_err(|e| format!("solver rejected valid data: {e}"))?;
            if rec != classes {
                return Err("round trip is not the identity".into());
            }
        }
        Ok("20 randomized typed torsion samples recovered exactly".into())
    });

    c.run("torsion_flat_and_conformal", |_| {
        if !g2::torsion_of_constant(&g2::standard_phi()).unwrap().is_zero() {
            return Err("flat structure has nonzero torsion".into());
        }
        // conformal witness: phi = w^3 phi0, exact tau1 = dw/w at the origin
        let w = &Poly::one(7) + &Poly::var(7, 1);
        let dphi = g2::standard_phi().scale_poly(&w.pow(3)).d();
        let dpsi = g.psi().scale_poly(&w.pow(4)).d();
        let origin = vec![Scalar::zero(); 7];
        let classes =
            g2::torsion_from_derivatives(g, &dphi.eval_at(&origin), &dpsi.eval_at(&origin))
                .map_err(|e| format!("conformal field rejected: {e}"))?;
        if classes.tau1 != Form::basis(7, &[1]) {
            return Err("conformal tau1 is not dw/w".into());
        }
        Ok("flat torsion zero; conformal field recovers tau1 = dw/w exactly".into())
    });

    c.run("rho_hat_reference_and_fd_slope", |rng| {
        check_eq(
            &g.rho_hat(&g2::standard_phi()).unwrap(),
            &g.psi().scale(&rat(4, 3)),
            "rho_hat(phi0)",
        )?;
        let sample = rand_constant_form(rng, 7, 3, 4);
        let (_, _, r27) = g.project3(&sample).unwrap();
        let expect = g.metric().hodge_star(&r27).unwrap().neg();
        check_eq(&g.rho_hat(&r27).unwrap(), &expect, "rho_hat on type 27")?;
        // finite-difference oracle: error of (psi(phi0 + h rho) - psi0)/h
        // against rho_hat(rho) decays at first order
        let rho = rand_constant_form(rng, 7, 3, 4);
        let rho_hat = g.rho_hat(&rho).unwrap();
        let vals = vec![0.0f64; 7];
        let rho_s = crate::shadow::ShadowForm::from_exact(&rho, &vals);
        let rho_hat_s = crate::shadow::ShadowForm::from_exact(&rho_hat, &vals);
        let phi0_s = crate::shadow::ShadowForm::from_exact(&g2::standard_phi(), &vals);
        let psi0_s = crate::shadow::ShadowForm::from_exact(g.psi(), &vals);
        let mut errs = Vec::new();
        for &h in &[1e-2f64, 1e-3, 1e-4] {
            let psi_h = crate::shadow::g2_dual_four_form(&phi0_s.add(&rho_s.scale(h)));
            let fd = psi_h.sub(&psi0_s).scale(1.0 / h);
            errs.push(fd.sub(&rho_hat_s).linf());
        }
        for w in errs.windows(2) {
            let slope = (w[0] / w[1]).log10();
            if (slope - 1.0).abs() > 0.05 {
                return Err(format!("finite-difference slope {slope} outside 1 +- 0.05"));
            }
        }
        Ok(format!(
            "references exact; finite-difference slope 1 within 5% (errors {:?})",
            errs
        ))
    });

    c.run("curl_examples", |rng| {
        if !g.curl(&Form::basis(7, &[1])).unwrap().is_zero() {
            return Err("curl of a constant form is nonzero".into());
        }
        for _ in 0..20 {
            let f = rand_poly(rng, 7, 3, 3);
            if !g.curl(&Form::from_poly(7, f).d()).unwrap().is_zero() {
                return Err("curl of an exact form is nonzero".into());
            }
        }
        let gamma = Form::monomial(7, &[1], Poly::var(7, 2));
        check_eq(&g.curl(&gamma).unwrap(), &Form::basis(7, &[3]).neg(), "x2 e1 reference")?;
        Ok("curl d = 0 on 20 random potentials; reference value exact".into())
    });

    c.run("curvature_decomposition_identities", |_| {
        for idx in basis_tuples(7, 2) {
            let kappa = Form::basis(7, &idx);
            let (k7, k14) = g.project2(&kappa).unwrap();
            let u = g.vector_of_type7_2form(&k7);
            let u_flat = g.metric().flat(&u);
            let lhs = kappa.wedge(g.phi()).unwrap();
            let rhs = u_flat
                .wedge(g.psi())
                .unwrap()
                .scale(&int(2))
                .add(&k14.wedge(g.phi()).unwrap());
            check_eq(&lhs, &rhs, "kappa ^ phi decomposition")?;
            let lhs2 = g.metric().hodge_star(&kappa.wedge(g.psi()).unwrap()).unwrap();
            check_eq(&lhs2, &u_flat.scale(&int(3)), "star(kappa ^ psi) = 3 U_flat")?;
        }
        Ok("both identities exact over the full 2-form basis".into())
    });

    c.run("metric_recovery", |_| {
        let (m, vol) = g2::metric_from_phi(&g2::standard_phi()).unwrap();
        if !m.is_identity() || vol != Form::basis(7, &[1, 2, 3, 4, 5, 6, 7]) {
            return Err("model recovery is not Euclidean".into());
        }
        // scaling law, exact at lambda = 2 (and any rational lambda)
        for lam in [int(2), rat(3, 2)] {
            let mu = num::pow::pow(lam.clone(), 3);
            let phi = g2::standard_phi().scale(&mu);
            let (m, _) = g2::metric_from_phi(&phi).unwrap();
            for i in 0..7 {
                if m.matrix()[(i, i)] != &lam * &lam {
                    return Err("scaling law fails".into());
                }
            }
        }
        if g2::metric_from_phi(&Form::zero(7, 3)).is_ok() {
            return Err("zero form accepted".into());
        }
        Ok("model, scaled and degenerate cases, exact".into())
    });

    c.records
}

fn spin7_suite(seed: u64, eps: &Scalar) -> Vec<CheckRecord> {
    let mut c = Checker::new("spin7", seed);
    let g = G2Data::standard();
    let eps = eps.clone();

    c.run("cayley_self_pairing", |_| {
        let t = Spin7Triple::flat();
        let phi8 = spin7::assemble_phi(&t).unwrap();
        let sq = phi8.wedge(&phi8).unwrap();
        let vol8 = Form::basis(8, &[8])
            .wedge(&Form::basis(8, &[1, 2, 3, 4, 5, 6, 7]).extend_chart(8))
            .unwrap();
        check_eq(&sq, &vol8.scale(&int(14)), "Phi0 ^ Phi0 = 14 vol8")?;
        Ok("self-pairing constant 14 from brute-force expansion, exact".into())
    });

    c.run("residual_equivalence_random_triples", |rng| {
        let mut residual_terms = 0usize;
        for _ in 0..30 {
            let a = rand_form(rng, 7, 1, 2, 2);
            let chart = FiberedChart::new(a, Metric::euclidean(7)).unwrap();
            let w = &Poly::one(7) + &rand_poly(rng, 7, 1, 2).scale(&rat(1, 10));
            let eps = rat(rng.gen_range(1..=4), rng.gen_range(1..=4));
            let t = Spin7Triple::new(chart, w, g2::standard_phi(), eps.clone())
                .map_err(|e| e.to_string())?;
            let lhs = spin7::d_phi_total(&t).unwrap();
            let (r1, r2) = spin7::gh_residual(&t).unwrap();
            if !r1.is_zero() {
                return Err("constant structure has d phi != 0".into());
            }
            residual_terms += r2.terms().count();
            check_eq(&lhs, &r2.extend_chart(8), "d Phi_eps vs residuals")?;
        }
        // Leibniz oracle with arbitrary (non-G2, non-closed) data
        for _ in 0..30 {
            let a = rand_form(rng, 7, 1, 2, 2);
            let chart = FiberedChart::new(a, Metric::euclidean(7)).unwrap();
            let eps = rat(rng.gen_range(1..=4), rng.gen_range(1..=4));
            let phi = rand_form(rng, 7, 3, 3, 2);
            let b4 = rand_form(rng, 7, 4, 3, 2);
            let theta = Form::basis(8, &[8]).add(&chart.connection_component().extend_chart(8));
            let lhs = theta
                .wedge(&phi.extend_chart(8))
                .unwrap()
                .scale(&eps)
                .add(&b4.extend_chart(8))
                .d();
            let rhs = chart
                .curvature()
                .extend_chart(8)
                .wedge(&phi.extend_chart(8))
                .unwrap()
                .scale(&eps)
                .sub(&theta.wedge(&phi.d().extend_chart(8)).unwrap().scale(&eps))
                .add(&b4.d().extend_chart(8));
            check_eq(&lhs, &rhs, "Leibniz expansion")?;
            // reverse direction of the equivalence: the fiber contraction
            // of d Phi recovers -eps d phi, so d Phi = 0 forces both
            // residuals to vanish when eps > 0
            let recovered = lhs.contract_basis(8).unwrap();
            check_eq(
                &recovered,
                &phi.d().extend_chart(8).scale(&eps).neg(),
                "fiber contraction of d Phi",
            )?;
        }
        Ok(format!(
            "30 assembled triples ({residual_terms} residual terms) + 30 Leibniz oracles \
             with fiber-contraction recovery of d phi, exact"
        ))
    });

    c.run("eps_scaling_equivalence", {
        let eps = eps.clone();
        move |rng| {
        for _ in 0..10 {
            let a = rand_form(rng, 7, 1, 2, 2);
            let chart = FiberedChart::new(a, Metric::euclidean(7)).unwrap();
            let w = &Poly::one(7) + &rand_poly(rng, 7, 1, 2).scale(&rat(1, 10));
            let eps_case = if rng.gen_bool(0.5) {
                eps.clone()
            } else {
                rat(rng.gen_range(1..=5), rng.gen_range(1..=3))
            };
            let t = Spin7Triple::new(chart, w, g2::standard_phi(), eps_case).unwrap();
            if spin7::gh_residual(&t).unwrap() != spin7::gh_residual(&t.absorb_eps()).unwrap() {
                return Err("(theta, eps) and (eps theta, 1) residuals differ".into());
            }
        }
        Ok("10 randomized triples, componentwise exact".into())
    }});

    c.run("monopole_residual", |rng| {
        if !spin7::monopole_residual(&Spin7Triple::flat()).unwrap().is_zero() {
            return Err("flat triple has nonzero monopole residual".into());
        }
        // h = w^3 with flat theta: residual = star d(3/2 w^2), expanded
        let w = &Poly::one(7) + &rand_poly(rng, 7, 1, 2).scale(&rat(1, 10));
        let t =
            Spin7Triple::new(FiberedChart::flat(7), w.clone(), g2::standard_phi(), Scalar::one())
                .unwrap();
        let res = spin7::monopole_residual(&t).unwrap();
        let expect = Metric::euclidean(7)
            .hodge_star(&Form::from_poly(7, w.pow(2).scale(&rat(3, 2))).d())
            .unwrap();
        check_eq(&res, &expect, "monopole expansion")?;
        // cone solution side: both symbolic derivatives vanish
        if !cones::cone_phi().d().is_zero() || !cones::cone_psi().d().is_zero() {
            return Err("cone solution fails the residual consistency".into());
        }
        // the Omega^5 balance behind the torsion implications
        let w2 = &Poly::one(7) + &Poly::var(7, 3);
        let u_flat = Form::monomial(7, &[3], w2.clone()).neg();
        let u = g.metric().sharp(&u_flat).unwrap();
        let kappa = g.phi().contract(&u).unwrap();
        let bal = Form::from_poly(7, w2.pow(2))
            .d()
            .wedge(g.psi())
            .unwrap()
            .add(&kappa.wedge(g.phi()).unwrap());
        if !bal.is_zero() {
            return Err("Omega^5 monopole balance fails".into());
        }
        Ok("flat and cone residuals zero; expansion and balance identities exact".into())
    });

    c.run("psi_map_checks", |rng| {
        let z = spin7::psi_map(&g2::standard_phi(), &Poly::one(7), &Form::zero(7, 2)).unwrap();
        if !z.is_zero() {
            return Err("flat solution is not a zero of the map".into());
        }
        let kappa = rand_constant_form(rng, 7, 2, 3);
        let out = spin7::psi_map(&g2::standard_phi(), &Poly::one(7), &kappa).unwrap();
        check_eq(&out, &kappa.wedge(&g2::standard_phi()).unwrap(), "constant curvature case")?;
        for _ in 0..30 {
            let w = &Poly::one(7) + &rand_poly(rng, 7, 2, 2).scale(&rat(1, 10));
            let kappa = rand_form(rng, 7, 1, 2, 2).d(); // closed by construction
            let out = spin7::psi_map(&g2::standard_phi(), &w, &kappa).map_err(|e| e.to_string())?;
            if !out.d().is_zero() {
                return Err("psi_map output is not closed".into());
            }
        }
        Ok("zero at the flat solution; 30 randomized admissible inputs closed, exact".into())
    });

    c.run("linearisation_is_linear", |rng| {
        let sample = |rng: &mut ChaCha20Rng| -> Perturbation {
            Perturbation::new(
                rand_form(rng, 7, 3, 3, 2),
                rand_poly(rng, 7, 2, 2),
                rand_form(rng, 7, 1, 2, 2).d(),
            )
            .unwrap()
        };
        for _ in 0..20 {
            let z1 = sample(rng);
            let z2 = sample(rng);
            let s = rand_nonzero_scalar(rng);
            let lhs = spin7::linearize(&z1.add(&z2)).unwrap();
            let rhs = spin7::linearize(&z1).unwrap().add(&spin7::linearize(&z2).unwrap());
            check_eq(&lhs, &rhs, "additivity")?;
            let lhs = spin7::linearize(&z1.scale(&s)).unwrap();
            let rhs = spin7::linearize(&z1).unwrap().scale(&s);
            check_eq(&lhs, &rhs, "homogeneity")?;
        }
        // reference: (0, f, 0) -> (2/3) df ^ psi0
        let f = Poly::var(7, 1);
        let zeta = Perturbation::new(Form::zero(7, 3), f.clone(), Form::zero(7, 2)).unwrap();
        let expect = Form::from_poly(7, f)
            .d()
            .wedge(G2Data::standard().psi())
            .unwrap()
            .scale(&rat(2, 3));
        check_eq(&spin7::linearize(&zeta).unwrap(), &expect, "pure-f reference")?;
        Ok("20 randomized pairs: exact linearity; reference value exact".into())
    });

    c.run("derivative_slope_test", |rng| {
        // || Psi(xi0 + t zeta)/t - L0(zeta) || decays at first order in t
        let point = [0.13, -0.05, 0.07, 0.02, -0.08, 0.04, -0.02];
        let ts = [0.1f64, 0.05, 0.025, 0.0125];
        let mut result = None;
        for _ in 0..10 {
            let zeta = Perturbation::new(
                rand_small_form(rng, 7, 3, 2, 1),
                rand_poly(rng, 7, 1, 2).scale(&rat(1, 8)),
                rand_small_form(rng, 7, 1, 2, 1).d(),
            )
            .unwrap();
            let lin = spin7::linearize(&zeta).unwrap();
            let lin_s = crate::shadow::ShadowForm::from_exact(&lin, point.as_ref());
            let errs: Vec<f64> = ts
                .iter()
                .map(|&t| {
                    let scaled = zeta.scale(&Scalar::from_float(t).unwrap());
                    let full = spin7::psi_map_shadow_at(&scaled, &point);
                    full.scale(1.0 / t).sub(&lin_s).linf()
                })
                .collect();
            // a direction with vanishing quadratic term carries no slope
            // information; resample
            if errs[0] < 1e-8 {
                continue;
            }
            result = Some(errs);
            break;
        }
        let errs = result.ok_or("could not sample a generic direction")?;
        let slope = log_log_slope(&ts, &errs);
        if (slope - 1.0).abs() > 0.05 {
            return Err(format!("derivative log-log slope {slope} outside 1 +- 0.05"));
        }
        Ok(format!("first-order convergence to the linearisation: slope {slope:.4}"))
    });

    c.run("quadratic_remainder_slope", |rng| {
        // zeta small enough that xi0 + zeta stays admissible and the
        // quadratic term dominates over t in [1/8, 1]
        let point = [0.11, -0.07, 0.05, 0.02, -0.03, 0.08, -0.04];
        let ts = [1.0f64, 0.5, 0.25, 0.125];
        let mut result = None;
        for _ in 0..10 {
            let zeta = Perturbation::new(
                rand_small_form(rng, 7, 3, 3, 1).scale(&rat(1, 16)),
                rand_poly(rng, 7, 1, 2).scale(&rat(1, 32)),
                rand_small_form(rng, 7, 1, 2, 1).d().scale(&rat(1, 16)),
            )
            .unwrap();
            let norms: Vec<f64> = ts
                .iter()
                .map(|&t| {
                    let scaled = zeta.scale(&Scalar::from_float(t).unwrap());
                    spin7::nonlinear_remainder_shadow_at(&scaled, &point).linf()
                })
                .collect();
            if norms[0] < 1e-10 || norms.iter().any(|x| x.is_nan()) {
                continue;
            }
            result = Some(norms);
            break;
        }
        let norms = result.ok_or("could not sample a generic direction")?;
        let slope = log_log_slope(&ts, &norms);
        if (slope - 2.0).abs() > 0.1 {
            return Err(format!("remainder log-log slope {slope} outside 2 +- 0.1"));
        }
        Ok(format!("quadratic vanishing: log-log slope {slope:.4} (norms {norms:?})"))
    });

    c.run("hitchin_quadratic_bound", |rng| {
        let rho = rand_small_form(rng, 7, 3, 4, 0).scale(&rat(1, 4));
        let mut ratios = Vec::new();
        for &t in &[1e-4f64, 1e-3, 1e-2, 1e-1, 1.0] {
            let q = spin7::hitchin_quadratic_shadow(&rho, t).linf();
            ratios.push(q / (t * t));
        }
        let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
        if !(max.is_finite() && min > 0.0 && max / min < 10.0) {
            return Err(format!("|Q(t rho)|/t^2 not uniformly bounded: {ratios:?}"));
        }
        Ok(format!("|Q(t rho)|/t^2 bounded over t in [1e-4, 1] (ratios {ratios:?})"))
    });

    c.run("infinitesimal_solver_full_basis", |_| {
        let mut seen = Vec::new();
        for idx in basis_tuples(7, 2) {
            let (_, k14) = g.project2(&Form::basis(7, &idx)).unwrap();
            if k14.is_zero() {
                continue;
            }
            // keep only directions independent from what we already solved
            let mut cols: Vec<Vec<Scalar>> = seen.clone();
            cols.push(k14.to_coeff_vec());
            let mut m = Mat::zeros(21, cols.len());
            for (j, col) in cols.iter().enumerate() {
                for (i, v) in col.iter().enumerate() {
                    m[(i, j)] = v.clone();
                }
            }
            if m.rank() != cols.len() {
                continue;
            }
            seen.push(k14.to_coeff_vec());
            let (zeta0, theta0) = spin7::solve_infinitesimal(&k14).map_err(|e| e.to_string())?;
            if !zeta0.rho.d().is_zero() {
                return Err("rho0 not closed".into());
            }
            if theta0.d() != k14 {
                return Err("theta0 does not integrate kappa0".into());
            }
            if !spin7::error_term_identity_exact(&zeta0).unwrap() {
                return Err("error-term identity fails exactly".into());
            }
        }
        if seen.len() != 14 {
            return Err(format!("only {} independent type-14 directions solved", seen.len()));
        }
        // numeric cross-check of the full error identity at the chosen eps
        let (_, k14) = g.project2(&Form::basis(7, &[1, 2])).unwrap();
        let (zeta0, _) = spin7::solve_infinitesimal(&k14).unwrap();
        let gap = spin7::error_term_identity_shadow(
            &zeta0,
            crate::scalar::to_f64(&eps),
            &[0.05, -0.03, 0.02, 0.01, -0.02, 0.03, -0.01],
        )
        .linf();
        if gap > 1e-9 {
            return Err(format!("shadow error identity gap {gap}"));
        }
        Ok(format!(
            "14 independent directions solved; both displays exact; shadow error identity gap {gap:.2e} at eps = {eps}"
        ))
    });

    c.records
}

fn cone_suite(seed: u64) -> Vec<CheckRecord> {
    let mut c = Checker::new("cone", seed);

    c.run("torsion_free_cone_structure", |_| {
        let phi = cones::cone_phi();
        let psi = cones::cone_psi();
        if !phi.d().is_zero() {
            return Err(format!("d phi_C = {:?}", phi.d()));
        }
        if !psi.d().is_zero() {
            return Err(format!("d psi_C = {:?}", psi.d()));
        }
        Ok(format!(
            "normalized d phi_C = {:?}; normalized d psi_C = {:?}",
            phi.d(),
            psi.d()
        ))
    });

    c.run("link_star_table_generated", |_| {
        let table = cones::star_table();
        let mut rendered = Vec::new();
        for (m, expansion) in &table {
            let e: Vec<String> =
                expansion.iter().map(|(mm, cc)| format!("{cc} {mm:?}")).collect();
            rendered.push(format!("star({m:?}) = {}", e.join(" + ")));
        }
        // pin the generated values to the flat-model truth
        use cones::LinkMonomial::*;
        let get = |m| table.iter().find(|(x, _)| *x == m).unwrap().1.clone();
        if get(Omega) != vec![(OmegaSq, rat(1, 2))] || get(ReOmega) != vec![(ImOmega, int(1))] {
            return Err(format!("unexpected generated table: {rendered:?}"));
        }
        Ok(rendered.join("; "))
    });

    c.run("rewrite_d_squared_random", |rng| {
        use cones::{ConeElement, MONOMIALS};
        for _ in 0..50 {
            let mut e = ConeElement::zero();
            for _ in 0..4 {
                let m = MONOMIALS[rng.gen_range(0..MONOMIALS.len())];
                let a = rng.gen_range(-4i64..=5);
                let b = rng.gen_bool(0.5);
                e = e.add(&ConeElement::term(rand_scalar(rng), a, b, m));
            }
            if !e.d().d().is_zero() {
                return Err("d^2 != 0 on a random cone element".into());
            }
        }
        Ok("d^2 = 0 on 50 randomized cone elements".into())
    });

    c.run("cone_dual_form_components", |_| {
        use cones::{ConeElement, LinkMonomial};
        let expect = ConeElement::term(rat(1, 2), 4, false, LinkMonomial::OmegaSq)
            .sub(&ConeElement::term(Scalar::one(), 3, true, LinkMonomial::ImOmega));
        if cones::cone_psi() != expect {
            return Err("psi_C differs from (1/2) r^4 w^2 - r^3 dr ImO".into());
        }
        if cones::cone_phi().hodge_star().hodge_star() != cones::cone_phi() {
            return Err("cone double star is not the identity".into());
        }
        Ok("psi_C = (1/2) r^4 w^2 - r^3 dr ^ ImO; star is an involution".into())
    });

    c.run("primitive_11_checks", |rng| {
        let (omega, _, _) = cones::flat_su3_model();
        if cones::primitive_check(&omega).unwrap() {
            return Err("omega itself accepted as primitive".into());
        }
        let k1 = Form::basis(6, &[1, 2]).sub(&Form::basis(6, &[3, 4]));
        if !cones::primitive_check(&k1).unwrap() {
            return Err("e12 - e34 rejected".into());
        }
        let k2 = Form::basis(6, &[1, 3]).add(&Form::basis(6, &[4, 2]));
        if cones::primitive_check(&k2).unwrap() {
            return Err("anti-holomorphic sample accepted".into());
        }
        // random primitive (1,1)-forms are anti-self-dual: star k = -k ^ w
        let basis: Vec<Form> = vec![
            Form::basis(6, &[1, 2]).sub(&Form::basis(6, &[3, 4])),
            Form::basis(6, &[3, 4]).sub(&Form::basis(6, &[5, 6])),
            Form::basis(6, &[1, 3]).add(&Form::basis(6, &[2, 4])),
            Form::basis(6, &[1, 4]).sub(&Form::basis(6, &[2, 3])),
            Form::basis(6, &[3, 5]).add(&Form::basis(6, &[4, 6])),
            Form::basis(6, &[3, 6]).sub(&Form::basis(6, &[4, 5])),
            Form::basis(6, &[1, 5]).add(&Form::basis(6, &[2, 6])),
            Form::basis(6, &[1, 6]).sub(&Form::basis(6, &[2, 5])),
        ];
        let g6 = Metric::euclidean(6);
        for _ in 0..20 {
            let mut k = Form::zero(6, 2);
            for b in &basis {
                k = k.add(&b.scale(&rand_scalar(rng)));
            }
            if !cones::primitive_check(&k).unwrap() {
                return Err("primitive combination rejected".into());
            }
            let lhs = g6.hodge_star(&k).unwrap();
            let rhs = k.wedge(&omega).unwrap().neg();
            check_eq(&lhs, &rhs, "anti-self-duality of primitive (1,1)")?;
        }
        Ok("membership checks and star k = -k ^ w on 20 randomized primitives, exact".into())
    });

    c.run("cone_torsion_via_pointwise_solver", |_| {
        let classes = cones::cone_torsion_via_g2().map_err(|e| e.to_string())?;
        if !classes.is_zero() {
            return Err("cone torsion classes are not all zero".into());
        }
        Ok("symbolic cone derivatives feed the solver and give zero torsion".into())
    });

    c.records
}

fn spectral_suite(seed: u64) -> Vec<CheckRecord> {
    let mut c = Checker::new("spectral", seed);

    c.run("reference_indicial_roots", |_| {
        let pairs = [(int(0), (0i64, -5i64)), (int(6), (1, -6)), (int(14), (2, -7))];
        for (delta, (p, m)) in pairs {
            let (rp, rm) = spectral::indicial_roots_functions(&delta, 7).unwrap();
            if rp != Surd::from_int(p) || rm != Surd::from_int(m) {
                return Err(format!("roots at delta = {delta} are ({rp}, {rm})"));
            }
        }
        Ok("{0,-5}, {1,-6}, {2,-7} at delta = 0, 6, 14 for m = 7, exact".into())
    });

    c.run("root_sum_product_laws", |rng| {
        for _ in 0..50 {
            let delta = rat(rng.gen_range(0..=40), rng.gen_range(1..=4));
            let m = rng.gen_range(2..=9usize);
            let (p, q) = spectral::indicial_roots_functions(&delta, m).unwrap();
            // lambda(lambda + m - 2) = delta through the surd components
            if !spectral::roots_satisfy_laws(&p, &q, &delta, m) {
                return Err(format!("root laws fail at delta = {delta}, m = {m}"));
            }
        }
        Ok("sum and product laws on 50 randomized (delta, m), exact".into())
    });

    c.run("index_jump_additivity", |rng| {
        for _ in 0..100 {
            let nroots = rng.gen_range(1..=6);
            let roots: Vec<IndicialDatum> = (0..nroots)
                .map(|_| {
                    let rate = if rng.gen_bool(0.5) {
                        Surd::rational(rat(rng.gen_range(-12..=12), rng.gen_range(1..=3)))
                    } else {
                        Surd::new(
                            rat(rng.gen_range(-6..=6), 2),
                            rat(rng.gen_range(-3..=3), 2),
                            &int(rng.gen_range(2..=7)),
                        )
                        .unwrap()
                    };
                    IndicialDatum::new(rate, rng.gen_range(1..=3)).unwrap()
                })
                .collect();
            // three weights avoiding all roots (rationals with denominator 97)
            let mut ws: Vec<Scalar> = (0..3)
                .map(|_| rat(rng.gen_range(-1200..=1200), 97))
                .collect();
            ws.sort();
            ws.dedup();
            if ws.len() < 3 {
                continue;
            }
            let nu = Surd::rational(ws[0].clone());
            let mid = Surd::rational(ws[1].clone());
            let nu2 = Surd::rational(ws[2].clone());
            let total = match spectral::index_jump(&roots, &nu, &nu2) {
                Ok(t) => t,
                Err(spectral::SpectralError::BoundaryWeight) => continue,
                Err(e) => return Err(e.to_string()),
            };
            let a = spectral::index_jump(&roots, &nu, &mid);
            let b = spectral::index_jump(&roots, &mid, &nu2);
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    if a + b != total {
                        return Err("N(nu, nu'') != N(nu, nu') + N(nu', nu'')".into());
                    }
                }
                _ => continue,
            }
        }
        Ok("additivity across a middle weight on 100 randomized root lists, exact".into())
    });

    c.run("boundary_weight_is_error", |_| {
        let roots = vec![
            IndicialDatum::new(Surd::from_int(0), 1).unwrap(),
            IndicialDatum::new(Surd::from_int(-5), 1).unwrap(),
        ];
        match spectral::index_jump(&roots, &Surd::from_int(-5), &Surd::from_int(0)) {
            Err(spectral::SpectralError::BoundaryWeight) => {
                Ok("weight on a root reports the typed boundary error".into())
            }
            other => Err(format!("expected boundary error, got {other:?}")),
        }
    });

    c.run("excluded_windows", |_| {
        let w = spectral::excluded_window(2, 6).unwrap();
        if w.harmonic.as_ref().map(|x| (x.lo.clone(), x.hi.clone())) != Some((int(-2), int(-2))) {
            return Err("(k=2, n=6) harmonic window wrong".into());
        }
        if w.closed_coclosed.as_ref().map(|x| (x.lo.clone(), x.hi.clone()))
            != Some((int(-4), int(-2)))
        {
            return Err("(k=2, n=6) closed-coclosed window wrong".into());
        }
        let w = spectral::excluded_window(0, 6).unwrap();
        if w.closed_coclosed.as_ref().map(|x| (x.lo.clone(), x.hi.clone()))
            != Some((int(-6), int(0)))
        {
            return Err("(k=0, n=6) window wrong".into());
        }
        let w = spectral::excluded_window(3, 6).unwrap();
        if !w.midpoint_statement {
            return Err("midpoint statement missing at k = n/2".into());
        }
        for n in 2..=8usize {
            for k in 0..=n {
                let a = spectral::excluded_window(k, n).unwrap();
                let b = spectral::excluded_window(n - k, n).unwrap();
                if a.harmonic != b.harmonic || a.closed_coclosed != b.closed_coclosed {
                    return Err(format!("mirror symmetry fails at (k={k}, n={n})"));
                }
            }
        }
        Ok("reference cases and the k -> n-k mirror rule, exact".into())
    });

    c.run("weighted_cohomology_cases", |rng| {
        let tabulated = [
            (CohomologyInput { n: 6, k: 1, dim_hk_c: 0, dim_hk: 0, dim_im_to_link: 0, dim_im_c_to_full: 0 }, (0, 0)),
            (CohomologyInput { n: 6, k: 2, dim_hk_c: 1, dim_hk: 1, dim_im_to_link: 1, dim_im_c_to_full: 0 }, (1, 2)),
            (CohomologyInput { n: 6, k: 3, dim_hk_c: 2, dim_hk: 1, dim_im_to_link: 1, dim_im_c_to_full: 0 }, (0, 2)),
            (CohomologyInput { n: 6, k: 5, dim_hk_c: 3, dim_hk: 2, dim_im_to_link: 0, dim_im_c_to_full: 1 }, (1, 2)),
            (CohomologyInput { n: 7, k: 2, dim_hk_c: 2, dim_hk: 3, dim_im_to_link: 2, dim_im_c_to_full: 1 }, (2, 4)),
        ];
        for (input, expect) in tabulated {
            let got = spectral::weighted_cohomology_dims(&input).map_err(|e| e.to_string())?;
            if got != expect {
                return Err(format!("case {input:?} gave {got:?}, expected {expect:?}"));
            }
        }
        // monotonicity on random valid inputs
        for _ in 0..100 {
            let n = rng.gen_range(2..=10usize);
            let k = rng.gen_range(0..=n);
            if 2 * k == n && n % 2 == 1 {
                continue;
            }
            let dim_hk = rng.gen_range(0..=5);
            let dim_hk_c = rng.gen_range(0..=5);
            let input = CohomologyInput {
                n,
                k,
                dim_hk_c,
                dim_hk,
                dim_im_to_link: rng.gen_range(0..=dim_hk),
                dim_im_c_to_full: rng.gen_range(0..=dim_hk.min(dim_hk_c)),
            };
            let (minus, plus) = spectral::weighted_cohomology_dims(&input).map_err(|e| e.to_string())?;
            if plus < minus {
                return Err(format!("monotonicity fails on {input:?}"));
            }
        }
        Ok("all three case formulas on tabulated inputs; monotone on 100 random inputs".into())
    });

    c.records
}

fn catalog_suite(seed: u64) -> Vec<CheckRecord> {
    let mut c = Checker::new("catalog", seed);

    c.run("canonical_zeta_flags_and_closed_forms", |_| {
        for n in 2..=200usize {
            let z = catalog::canonical_zeta(n);
            if !(z.is_generic() && z.is_admissible() && z.is_primitive()) {
                return Err(format!("canonical zeta fails a flag at n = {n}"));
            }
            if n == 2 {
                if z.weighted_sum() != 1 {
                    return Err("n = 2 special case".into());
                }
                continue;
            }
            let expect = if n % 2 == 1 {
                (n * (n - 1) / 2 + 1) as i64
            } else {
                (n * n / 2 + 1) as i64
            };
            if z.weighted_sum() != expect {
                return Err(format!("closed form fails at n = {n}"));
            }
        }
        Ok("genericity + admissibility + primitivity and closed forms for n = 2..200".into())
    });

    c.run("an_records", |_| {
        let rec = catalog::an_record(&catalog::ZetaVector::new(3, vec![2, 1]).unwrap()).unwrap();
        if rec.b2 != Some(1) || rec.diffeomorphism.as_deref() != Some("S^2 x S^3") {
            return Err("n = 3 record wrong".into());
        }
        let rec = catalog::an_record(&catalog::ZetaVector::new(2, vec![1]).unwrap()).unwrap();
        if rec.b2 != Some(0) || rec.diffeomorphism.as_deref() != Some("S^5") {
            return Err("n = 2 record wrong".into());
        }
        if catalog::an_record(&catalog::ZetaVector::new(3, vec![1, 1]).unwrap())
            != Err(catalog::CatalogError::NotAdmissible)
        {
            return Err("inadmissible input not rejected".into());
        }
        for n in 2..=50usize {
            let rec = catalog::an_record(&catalog::canonical_zeta(n)).unwrap();
            if rec.b2 != Some(n as i64 - 2) {
                return Err(format!("b2 != n - 2 at n = {n}"));
            }
        }
        Ok("b2 = n - 2 labels and error paths".into())
    });

    c.run("wcp2_weights", |_| {
        if catalog::wcp2_weights([1, 1, 1]).unwrap() != [2, 2, 2] {
            return Err("(1,1,1) weights wrong".into());
        }
        if catalog::wcp2_weights([1, 1, 3]).unwrap() != [4, 4, 2] {
            return Err("(1,1,3) weights wrong".into());
        }
        if catalog::wcp2_weights([1, 2, 3]) != Err(catalog::CatalogError::ParityObstruction) {
            return Err("(1,2,3) parity gap not surfaced".into());
        }
        if catalog::wcp2_weights([2, 4, 6]) != Err(catalog::CatalogError::BadWeights) {
            return Err("non-coprime weights accepted".into());
        }
        let rec = catalog::wcp2_record([1, 1, 3]).unwrap();
        if rec.quotient.as_deref() != Some("WCP^2[4,4,2]") || !rec.admissible {
            return Err("record labels wrong".into());
        }
        Ok("weight formulas, parity obstruction and admissibility labels".into())
    });

    c.run("s3r4_family", |_| {
        let rec = catalog::s3r4_record(2, 2, 1, 3);
        if !rec.valid || rec.tag.as_deref() != Some("Y^{2,1}") {
            return Err("(2,2,1,3) record wrong".into());
        }
        let rec = catalog::s3r4_record(1, 1, 1, 1);
        if !rec.valid || !rec.tag.as_deref().unwrap_or("").contains("degenerate") {
            return Err("(1,1,1,1) boundary record wrong".into());
        }
        let rec = catalog::s3r4_record(2, 2, 2, 2);
        if rec.valid {
            return Err("(2,2,2,2) accepted despite gcd = 2".into());
        }
        Ok("balance, coprimality and the Sasaki-Einstein tag".into())
    });

    c.run("moment_map_imaginary_random", |rng| {
        for _ in 0..100 {
            let len = rng.gen_range(2..=6usize);
            let u: Vec<catalog::Quaternion> = (0..len)
                .map(|_| {
                    catalog::Quaternion::new(
                        rand_scalar(rng),
                        rand_scalar(rng),
                        rand_scalar(rng),
                        rand_scalar(rng),
                    )
                })
                .collect();
            let mu = catalog::moment_map(&u);
            if mu.len() != len - 1 {
                return Err("component count wrong".into());
            }
            if mu.iter().any(|q| !q.real_part().is_zero()) {
                return Err("a moment-map component has nonzero real part".into());
            }
        }
        Ok("real parts exactly zero on 100 randomized rational tuples".into())
    });

    c.run("quaternion_matrix_oracle", |rng| {
        for _ in 0..50 {
            let p = catalog::Quaternion::new(
                rand_scalar(rng),
                rand_scalar(rng),
                rand_scalar(rng),
                rand_scalar(rng),
            );
            let q = catalog::Quaternion::new(
                rand_scalar(rng),
                rand_scalar(rng),
                rand_scalar(rng),
                rand_scalar(rng),
            );
            if p.mul(&q).to_vec() != p.left_matrix().mul_vec(&q.to_vec()) {
                return Err("product disagrees with the 4x4 representation".into());
            }
            if p.mul(&q).conj() != q.conj().mul(&p.conj()) {
                return Err("conjugation anti-automorphism fails".into());
            }
        }
        Ok("50 randomized products checked against the matrix representation, exact".into())
    });

    c.run("catalog_determinism", |_| {
        let a = serde_json::to_string(&catalog::catalog_json(&catalog::catalog_an(12))).unwrap();
        let b = serde_json::to_string(&catalog::catalog_json(&catalog::catalog_an(12))).unwrap();
        if a != b {
            return Err("repeated runs differ byte-wise".into());
        }
        let s1 = serde_json::to_string(&catalog::catalog_json(&catalog::catalog_s3r4(6))).unwrap();
        let s2 = serde_json::to_string(&catalog::catalog_json(&catalog::catalog_s3r4(6))).unwrap();
        if s1 != s2 {
            return Err("s3r4 catalog not deterministic".into());
        }
        Ok("byte-identical JSON on repeated enumeration".into())
    });

    c.records
}
