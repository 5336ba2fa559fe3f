//! Browser bindings. Every export takes a JSON request string and returns a
//! JSON string; failures come back as `{"error": "..."}` so the page never has
//! to deal with thrown exceptions.
//!
//! Requests share the fields `space` (`{"field","qdiag",...}`, `dim` optional),
//! `c` (default `"1"`) and `kind` (`"vector"` or `"paravector"`).

use std::sync::Arc;

use serde_json::{json, Value};
use vahlen::census::orbit_census;
use vahlen::cmatrix::CMatrixJson;
use vahlen::halfspace::PointJson;
use vahlen::quadspace::{vector_to_json, SpaceJson};
use vahlen::vahlen::vahlen_failure;
use vahlen::verify::{run_halfspace, VerifyConfig};
use vahlen::{CMatrix2, CliffordAlgebra, HalfSpace, QuadraticSpace, VahlenKind};
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest sample count accepted by [`check_action`], to keep the page responsive.
pub const MAX_SAMPLES: usize = 500;

type Res<T> = std::result::Result<T, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn finish(r: Res<Value>) -> String {
    let v = r.unwrap_or_else(|e| json!({ "error": e }));
    serde_json::to_string(&v).expect("JSON values always serialize")
}

struct Setup {
    alg: Arc<CliffordAlgebra>,
    half: HalfSpace,
    req: Value,
}

fn setup(request: &str) -> Res<Setup> {
    let req: Value = serde_json::from_str(request).map_err(|e| format!("request: {e}"))?;
    let mut space = req.get("space").cloned().ok_or("request has no \"space\"")?;
    let obj = space.as_object_mut().ok_or("\"space\" must be an object")?;
    obj.entry("field").or_insert_with(|| json!("Q"));
    if !obj.contains_key("dim") {
        let n = obj.get("qdiag").and_then(Value::as_array).map_or(0, Vec::len);
        obj.insert("dim".into(), json!(n));
    }
    let space: SpaceJson = serde_json::from_value(space).map_err(|e| format!("space: {e}"))?;
    let space = QuadraticSpace::from_json(&space).map_err(err)?;
    let c = space
        .field()
        .parse_scalar(req.get("c").and_then(Value::as_str).unwrap_or("1"))
        .map_err(err)?;
    let kind: VahlenKind = req.get("kind").and_then(Value::as_str).unwrap_or("vector").parse().map_err(err)?;
    let alg = CliffordAlgebra::new(space).map_err(err)?;
    let half = HalfSpace::new(&alg, c, kind).map_err(err)?;
    Ok(Setup { alg, half, req })
}

fn act_inner(request: &str) -> Res<Value> {
    let Setup { alg, half, req } = setup(request)?;
    let mj: CMatrixJson =
        serde_json::from_value(req.get("matrix").cloned().ok_or("request has no \"matrix\"")?).map_err(|e| format!("matrix: {e}"))?;
    let m = CMatrix2::from_json(&alg, &mj).map_err(err)?;
    let p = match req.get("point") {
        Some(Value::Null) | None => half.base_point(),
        Some(pv) => {
            let pj: PointJson = serde_json::from_value(pv.clone()).map_err(|e| format!("point: {e}"))?;
            half.point_from_json(&pj).map_err(err)?
        }
    };
    if let Some(clause) = vahlen_failure(&m, half.kind()) {
        return Err(format!("not a Vahlen matrix: {clause}"));
    }
    let image = half.mobius_apply(&m, &p).map_err(err)?;
    let w = half.to_k(&p).map_err(err)?;
    let w_image = half.orthogonal_apply(&m, &w).map_err(err)?;
    let via_k = half.from_k(&w_image).map_err(err)?;
    Ok(json!({
        "point": half.point_to_json(&p),
        "result": half.point_to_json(&image),
        "k_vector": vector_to_json(&w),
        "k_image": vector_to_json(&w_image),
        "agree": via_k == image,
    }))
}

fn orbits_inner(request: &str) -> Res<Value> {
    let Setup { half, .. } = setup(request)?;
    let report = orbit_census(&half).map_err(err)?;
    serde_json::to_value(report).map_err(err)
}

fn check_inner(request: &str) -> Res<Value> {
    let Setup { alg, half, req } = setup(request)?;
    let samples = req.get("samples").and_then(Value::as_u64).unwrap_or(50) as usize;
    if samples == 0 || samples > MAX_SAMPLES {
        return Err(format!("samples must be between 1 and {MAX_SAMPLES}"));
    }
    let cfg = VerifyConfig {
        c: half.c().clone(),
        kind: half.kind(),
        seed: req.get("seed").and_then(Value::as_u64).unwrap_or(0),
        samples,
        gen_length: 6,
    };
    let props = run_halfspace(&alg, &cfg).map_err(err)?;
    let passed = props.iter().all(|p| p.passed);
    Ok(json!({ "properties": props, "passed": passed }))
}

/// Apply `matrix` to `point` (default: the base point `σ_c`) and cross-check
/// the image through the hyperboloid model.
#[wasm_bindgen]
pub fn act(request: &str) -> String {
    finish(act_inner(request))
}

/// Orbit census of the full and special Vahlen groups over a prime field.
#[wasm_bindgen]
pub fn orbits(request: &str) -> String {
    finish(orbits_inner(request))
}

/// Seeded run of the half-space property checks (`samples`, `seed`).
#[wasm_bindgen]
pub fn check_action(request: &str) -> String {
    finish(check_inner(request))
}
