//! Browser bindings for the interactive calculators: indicial roots with
//! their excluded windows, the weighted-cohomology dimension formulas, and
//! the example-catalog records. Each export returns a JSON string the
//! static page renders directly.
//!
//! The same functions compile natively, so the bindings are unit-tested
//! with plain `cargo test`.

use holocalc::catalog;
use holocalc::scalar;
use holocalc::spectral::{self, CohomologyInput};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn err_json(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

/// Indicial roots of the cone Laplacian on functions for a rational link
/// eigenvalue delta = num/den and cone dimension m, plus the excluded-root
/// windows of the middle degrees for an (m-1)-dimensional cross-section
/// picture.
#[wasm_bindgen]
pub fn indicial_roots(delta_num: i64, delta_den: i64, m: usize) -> String {
    if delta_den == 0 {
        return err_json("zero denominator");
    }
    let delta = scalar::rat(delta_num, delta_den);
    match spectral::indicial_roots_functions(&delta, m) {
        Ok((plus, minus)) => json!({
            "delta": format!("{delta_num}/{delta_den}"),
            "dim": m,
            "roots": [
                {"value": plus.to_string(), "approx": plus.to_f64(), "rational": plus.is_rational()},
                {"value": minus.to_string(), "approx": minus.to_f64(), "rational": minus.is_rational()},
            ],
        })
        .to_string(),
        Err(e) => err_json(e),
    }
}

/// Excluded-root windows for homogeneous k-forms on an n-dimensional cone.
#[wasm_bindgen]
pub fn excluded_windows(k: usize, n: usize) -> String {
    match spectral::excluded_window(k, n) {
        Ok(w) => {
            let fmt = |win: &Option<spectral::Window>| match win {
                Some(x) if !x.is_empty() => json!({"lo": x.lo.to_string(), "hi": x.hi.to_string()}),
                Some(_) => json!("empty"),
                None => json!(null),
            };
            json!({
                "k": k,
                "n": n,
                "harmonic": fmt(&w.harmonic),
                "closed_coclosed": fmt(&w.closed_coclosed),
                "midpoint_statement": w.midpoint_statement,
                "log_rate": w.log_rate.to_string(),
            })
            .to_string()
        }
        Err(e) => err_json(e),
    }
}

/// Weighted-cohomology dimensions (rates -k -+ delta) from the four
/// topological inputs.
#[wasm_bindgen]
pub fn cohomology_dims(
    n: usize,
    k: usize,
    dim_hk_c: usize,
    dim_hk: usize,
    dim_im_to_link: usize,
    dim_im_c_to_full: usize,
) -> String {
    let input = CohomologyInput { n, k, dim_hk_c, dim_hk, dim_im_to_link, dim_im_c_to_full };
    match spectral::weighted_cohomology_dims(&input) {
        Ok((minus, plus)) => json!({"n": n, "k": k, "minus": minus, "plus": plus}).to_string(),
        Err(e) => err_json(e),
    }
}

/// Catalog records for the cyclic-quotient family up to n_max.
#[wasm_bindgen]
pub fn catalog_an(n_max: usize) -> String {
    let n_max = n_max.clamp(2, 500);
    serde_json::to_string(&catalog::catalog_json(&catalog::catalog_an(n_max)))
        .unwrap_or_else(err_json)
}

/// Single circle-action record with validity flags and the
/// Sasaki-Einstein tag when the pattern matches.
#[wasm_bindgen]
pub fn s3r4_record(p1: i64, p2: i64, q1: i64, q2: i64) -> String {
    serde_json::to_string(&catalog::s3r4_record(p1, p2, q1, q2).to_json())
        .unwrap_or_else(err_json)
}

/// Weighted-projective weights from a coprime positive triple.
#[wasm_bindgen]
pub fn wcp2_weights(p1: i64, p2: i64, p3: i64) -> String {
    match catalog::wcp2_weights([p1, p2, p3]) {
        Ok(q) => json!({"p": [p1, p2, p3], "q": q}).to_string(),
        Err(e) => err_json(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parsed(s: String) -> serde_json::Value {
        serde_json::from_str(&s).expect("valid JSON")
    }

    #[test]
    fn indicial_export() {
        let v = parsed(indicial_roots(6, 1, 7));
        assert_eq!(v["roots"][0]["value"], "1");
        assert_eq!(v["roots"][1]["value"], "-6");
        let v = parsed(indicial_roots(-1, 1, 7));
        assert!(v["error"].is_string());
        let v = parsed(indicial_roots(1, 0, 7));
        assert!(v["error"].is_string());
    }

    #[test]
    fn windows_export() {
        let v = parsed(excluded_windows(2, 6));
        assert_eq!(v["closed_coclosed"]["lo"], "-4");
        assert_eq!(v["harmonic"], "empty");
    }

    #[test]
    fn cohomology_export() {
        let v = parsed(cohomology_dims(6, 2, 1, 1, 1, 0));
        assert_eq!(v["minus"], 1);
        assert_eq!(v["plus"], 2);
        let v = parsed(cohomology_dims(6, 2, 1, 0, 0, 1));
        assert!(v["error"].is_string());
    }

    #[test]
    fn catalog_exports() {
        let v = parsed(catalog_an(4));
        assert_eq!(v["count"], 3);
        let v = parsed(s3r4_record(2, 2, 1, 3));
        assert_eq!(v["tag"], "Y^{2,1}");
        let v = parsed(wcp2_weights(1, 1, 3));
        assert_eq!(v["q"][0], 4);
        let v = parsed(wcp2_weights(1, 2, 3));
        assert!(v["error"].as_str().unwrap().contains("parity"));
    }
}
