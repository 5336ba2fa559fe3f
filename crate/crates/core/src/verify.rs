//! Seeded property suites over one quadratic space, with replayable counterexamples.
//!
//! Every property draws sample `i` from its own derived seed, so reports are
//! identical for identical `(config, seed)` however the samples are scheduled.

use std::panic::AssertUnwindSafe;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::clifford::{CliffordAlgebra, Element, Involution};
use crate::cmatrix::CMatrix2;
use crate::error::Result;
use crate::field::{FieldDesc, Scalar};
use crate::groups::{cu_to_matrix, cuf_to_matrix, in_group, matrix_to_cu, matrix_to_cuf, pi, pi_tilde, GroupTag};
use crate::halfspace::{HalfSpace, Point};
use crate::quadspace::{vector_to_json, SpaceJson};
use crate::sample::{derive_seed, nonzero_scalar, random_element, rng_from_seed, small_scalar, small_vector, SampleRng};
use crate::vahlen::{diagnose, generator, is_vahlen, random_anisotropic, random_vahlen, Generator, VahlenKind};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub c: Scalar,
    pub kind: VahlenKind,
    pub seed: u64,
    pub samples: usize,
    pub gen_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub suite: String,
    pub name: String,
    pub checked: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub field: String,
    pub space: SpaceJson,
    pub c: String,
    pub kind: VahlenKind,
    pub seed: u64,
    pub samples: usize,
    pub gen_length: usize,
    pub properties: Vec<PropertyResult>,
    pub passed: bool,
}

/// Result of one sample.
pub enum Outcome {
    Pass,
    /// The sample does not apply (e.g. no boundary point exists).
    Skip,
    Fail(Value),
}

fn check(ok: bool, detail: impl FnOnce() -> Value) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(detail())
    }
}

fn from_result(r: Result<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| Outcome::Fail(json!({ "error": e.to_string() })))
}

/// Run `samples` draws of one property in parallel; the first failing index wins.
pub fn run_property<F>(suite: &str, name: &str, seed: u64, samples: usize, f: F) -> PropertyResult
where
    F: Fn(&mut SampleRng) -> Result<Outcome> + Sync,
{
    let outcomes: Vec<Outcome> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_from_seed(derive_seed(seed, i));
            // a broken algebra can violate invariants the samplers rely on
            std::panic::catch_unwind(AssertUnwindSafe(|| from_result(f(&mut rng)))).unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Outcome::Fail(json!({ "panic": msg }))
            })
        })
        .collect();
    let mut checked = 0;
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Outcome::Pass => checked += 1,
            Outcome::Skip => {}
            Outcome::Fail(mut detail) => {
                if let Value::Object(map) = &mut detail {
                    map.insert("sample".into(), json!(i));
                }
                return PropertyResult {
                    suite: suite.into(),
                    name: name.into(),
                    checked,
                    passed: false,
                    counterexample: Some(detail),
                };
            }
        }
    }
    PropertyResult {
        suite: suite.into(),
        name: name.into(),
        checked,
        passed: true,
        counterexample: None,
    }
}

fn elt_json(x: &Element) -> Value {
    serde_json::to_value(x.to_json()).unwrap()
}

fn mat_json(m: &CMatrix2) -> Value {
    serde_json::to_value(m.to_json()).unwrap()
}

fn random_matrix(alg: &Arc<CliffordAlgebra>, rng: &mut SampleRng) -> CMatrix2 {
    CMatrix2 {
        a: random_element(alg, 0.5, rng),
        b: random_element(alg, 0.5, rng),
        c: random_element(alg, 0.5, rng),
        d: random_element(alg, 0.5, rng),
    }
}

fn random_vector(alg: &Arc<CliffordAlgebra>, rng: &mut SampleRng) -> Vec<Scalar> {
    small_vector(alg.field(), alg.ngens(), rng)
}

/// A unit `a + r` of the twisted center, `r` in the radical.
fn random_twisted_unit(alg: &Arc<CliffordAlgebra>, rng: &mut SampleRng) -> Element {
    let field = alg.field();
    let mut x = Element::scalar(alg, nonzero_scalar(field, rng));
    for r in alg.space().radical() {
        x = x + Element::vector(alg, &r).unwrap().scale(&small_scalar(field, rng));
    }
    x
}

/// A product of anisotropic vectors and twisted-center units, an element of `Γ^{F×}`.
fn random_gamma(alg: &Arc<CliffordAlgebra>, rng: &mut SampleRng, length: usize) -> Element {
    let mut x = Element::one(alg);
    for _ in 0..length {
        let factor = if rng.gen_bool(0.7) {
            random_anisotropic(alg, rng).unwrap_or_else(|| random_twisted_unit(alg, rng))
        } else {
            random_twisted_unit(alg, rng)
        };
        x = x * factor;
    }
    x
}

fn random_length(cfg: &VerifyConfig, rng: &mut SampleRng) -> usize {
    rng.gen_range(1..=cfg.gen_length.max(1))
}

/// An upper triangular Vahlen matrix (`γ = 0`): translations, dilations, vector scalars.
pub fn random_upper(alg: &Arc<CliffordAlgebra>, kind: VahlenKind, rng: &mut SampleRng, length: usize) -> CMatrix2 {
    let field = alg.field();
    let mut m = CMatrix2::identity(alg);
    for _ in 0..length {
        let g = match rng.gen_range(0..3) {
            0 => {
                let mut xi = Element::vector(alg, &random_vector(alg, rng)).unwrap();
                if kind == VahlenKind::Paravector {
                    xi = xi + Element::scalar(alg, small_scalar(field, rng));
                }
                Generator::Translation(xi)
            }
            1 => Generator::Dilation(nonzero_scalar(field, rng)),
            _ => match random_anisotropic(alg, rng) {
                Some(v) => Generator::VectorScalar(v),
                None => Generator::Dilation(nonzero_scalar(field, rng)),
            },
        };
        m = m.mul(&generator(alg, kind, &g).unwrap());
    }
    m
}

/// Coordinates `u` with `q(u) = c`: all of them over a finite field, a small-height search over ℚ.
pub fn boundary_candidates(h: &HalfSpace) -> Result<Vec<Vec<Scalar>>> {
    let field = h.base().field();
    let values: Vec<Scalar> = match field {
        FieldDesc::Prime(_) => field.elements()?,
        FieldDesc::Rationals => [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)]
            .iter()
            .map(|&(n, d)| field.fraction(n, d).unwrap())
            .collect(),
    };
    let k = h.coord_len();
    let total = values.len().pow(k as u32);
    let mut out = Vec::new();
    for mut idx in 0..total {
        let u: Vec<Scalar> = (0..k)
            .map(|_| {
                let s = values[idx % values.len()].clone();
                idx /= values.len();
                s
            })
            .collect();
        if h.q_coords(&u)? == *h.c() {
            out.push(u);
        }
    }
    Ok(out)
}

fn random_boundary(h: &HalfSpace, cands: &[Vec<Scalar>], rng: &mut SampleRng) -> Option<Point> {
    let field = h.base().field();
    for _ in 0..8 {
        let u = cands.get(rng.gen_range(0..cands.len().max(1)))?.clone();
        let p = Point::Boundary {
            u,
            b: small_scalar(field, rng),
        };
        if h.validate(&p).is_ok() {
            return Some(p);
        }
    }
    None
}

fn random_regular(h: &HalfSpace, rng: &mut SampleRng) -> Point {
    let field = h.base().field();
    Point::Regular {
        v: small_vector(field, h.coord_len(), rng),
        t: nonzero_scalar(field, rng),
    }
}

/// A sampled `(m, p)` pair. Category `i % 4`: random matrix on a regular point,
/// random matrix on a boundary point, `upper · weyl` on an isotropic regular point
/// (vanishing denominator), and an upper triangular matrix on a boundary point.
pub fn sample_pair(h: &HalfSpace, cfg: &VerifyConfig, cands: &[Vec<Scalar>], rng: &mut SampleRng) -> (CMatrix2, Point) {
    let alg = h.base();
    let field = alg.field();
    let len = random_length(cfg, rng);
    let category = rng.gen_range(0..4);
    if category == 1 || category == 3 {
        if let Some(p) = random_boundary(h, cands, rng) {
            let m = if category == 1 {
                random_vahlen(alg, h.kind(), rng, len, false)
            } else {
                random_upper(alg, h.kind(), rng, len)
            };
            return (m, p);
        }
    }
    if category == 2 && !cands.is_empty() {
        let u = &cands[rng.gen_range(0..cands.len())];
        let t = nonzero_scalar(field, rng);
        let p = Point::Regular {
            v: u.iter().map(|x| x * &t).collect(),
            t,
        };
        let weyl = generator(alg, h.kind(), &Generator::Weyl).unwrap();
        return (random_upper(alg, h.kind(), rng, len - 1).mul(&weyl), p);
    }
    (random_vahlen(alg, h.kind(), rng, len, false), random_regular(h, rng))
}

fn pair_json(h: &HalfSpace, m: &CMatrix2, p: &Point) -> Value {
    json!({ "matrix": mat_json(m), "point": h.point_to_json(p) })
}

fn algebra_suite(alg: &Arc<CliffordAlgebra>, seed: u64, n: usize) -> Vec<PropertyResult> {
    let s = |k| derive_seed(seed, k);
    let space = alg.space().clone();
    vec![
        run_property("algebra", "associativity", s(1), n, |rng| {
            let (x, y, z) = (random_element(alg, 0.5, rng), random_element(alg, 0.5, rng), random_element(alg, 0.5, rng));
            Ok(check((&x * &y) * &z == &x * (&y * &z), || {
                json!({ "x": elt_json(&x), "y": elt_json(&y), "z": elt_json(&z) })
            }))
        }),
        run_property("algebra", "distributivity", s(2), n, |rng| {
            let (x, y, z) = (random_element(alg, 0.5, rng), random_element(alg, 0.5, rng), random_element(alg, 0.5, rng));
            let ok = &x * (&y + &z) == &x * &y + &x * &z && (&y + &z) * &x == &y * &x + &z * &x;
            Ok(check(ok, || json!({ "x": elt_json(&x), "y": elt_json(&y), "z": elt_json(&z) })))
        }),
        run_property("algebra", "vector-square", s(3), n, |rng| {
            let v = random_vector(alg, rng);
            let ve = Element::vector(alg, &v)?;
            let ok = &ve * &ve == Element::scalar(alg, space.q_value(&v)?);
            Ok(check(ok, || json!({ "v": vector_to_json(&v) })))
        }),
        run_property("algebra", "anticommutator", s(4), n, |rng| {
            let (u, v) = (random_vector(alg, rng), random_vector(alg, rng));
            let (ue, ve) = (Element::vector(alg, &u)?, Element::vector(alg, &v)?);
            let ok = &ue * &ve + &ve * &ue == Element::scalar(alg, space.bilinear(&u, &v)?);
            Ok(check(ok, || json!({ "u": vector_to_json(&u), "v": vector_to_json(&v) })))
        }),
    ]
}

fn involution_suite(alg: &Arc<CliffordAlgebra>, seed: u64, n: usize) -> Vec<PropertyResult> {
    let s = |k| derive_seed(seed, k);
    let pair = |rng: &mut SampleRng| (random_element(alg, 0.5, rng), random_element(alg, 0.5, rng));
    let pj = |x: &Element, y: &Element| json!({ "x": elt_json(x), "y": elt_json(y) });
    vec![
        run_property("involutions", "grade-homomorphism", s(1), n, |rng| {
            let (x, y) = pair(rng);
            Ok(check((&x * &y).grade() == x.grade() * y.grade(), || pj(&x, &y)))
        }),
        run_property("involutions", "transpose-antihomomorphism", s(2), n, |rng| {
            let (x, y) = pair(rng);
            let ok = (&x * &y).transpose() == y.transpose() * x.transpose()
                && (&x * &y).conj() == y.conj() * x.conj();
            Ok(check(ok, || pj(&x, &y)))
        }),
        run_property("involutions", "conj-composite", s(3), n, |rng| {
            let (x, y) = pair(rng);
            let ok = x.conj() == x.grade().transpose() && x.conj() == x.transpose().grade();
            Ok(check(ok, || pj(&x, &y)))
        }),
        run_property("involutions", "involutive", s(4), n, |rng| {
            let (x, y) = pair(rng);
            let ok = [Involution::Grade, Involution::Transpose, Involution::Conj]
                .iter()
                .all(|&k| x.involution(k).involution(k) == x);
            Ok(check(ok, || pj(&x, &y)))
        }),
    ]
}

fn iso_suite(alg: &Arc<CliffordAlgebra>, seed: u64, n: usize) -> Vec<PropertyResult> {
    let s = |k| derive_seed(seed, k);
    let pj = |x: &CMatrix2, y: &CMatrix2| json!({ "m1": mat_json(x), "m2": mat_json(y) });
    vec![
        run_property("iso", "cu-multiplicative", s(1), n, |rng| {
            let (m1, m2) = (random_matrix(alg, rng), random_matrix(alg, rng));
            Ok(check(matrix_to_cu(&m1.mul(&m2)) == matrix_to_cu(&m1) * matrix_to_cu(&m2), || pj(&m1, &m2)))
        }),
        run_property("iso", "cu-round-trip", s(2), n, |rng| {
            let m = random_matrix(alg, rng);
            Ok(check(cu_to_matrix(&matrix_to_cu(&m), alg)? == m, || json!({ "matrix": mat_json(&m) })))
        }),
        run_property("iso", "cu-involutions", s(3), n, |rng| {
            let m = random_matrix(alg, rng);
            let psi = matrix_to_cu(&m);
            let ok = [Involution::Grade, Involution::Transpose, Involution::Conj]
                .iter()
                .all(|&k| matrix_to_cu(&m.involution(k)) == psi.involution(k));
            Ok(check(ok, || json!({ "matrix": mat_json(&m) })))
        }),
        run_property("iso", "cuf-multiplicative", s(4), n, |rng| {
            let (m1, m2) = (random_matrix(alg, rng), random_matrix(alg, rng));
            Ok(check(matrix_to_cuf(&m1.mul(&m2)) == matrix_to_cuf(&m1) * matrix_to_cuf(&m2), || pj(&m1, &m2)))
        }),
        run_property("iso", "cuf-round-trip", s(5), n, |rng| {
            let m = random_matrix(alg, rng);
            let psi = matrix_to_cuf(&m);
            Ok(check(psi.is_even() && cuf_to_matrix(&psi, alg)? == m, || json!({ "matrix": mat_json(&m) })))
        }),
        run_property("iso", "cuf-transpose-adjugate", s(6), n, |rng| {
            let m = random_matrix(alg, rng);
            Ok(check(matrix_to_cuf(&m.adjugate()) == matrix_to_cuf(&m).transpose(), || {
                json!({ "matrix": mat_json(&m) })
            }))
        }),
    ]
}

fn group_suite(alg: &Arc<CliffordAlgebra>, cfg: &VerifyConfig, seed: u64, n: usize) -> Vec<PropertyResult> {
    let s = |k| derive_seed(seed, k);
    let space = alg.space().clone();
    let kind = cfg.kind;
    vec![
        run_property("groups", "pi-orthogonal", s(1), n, |rng| {
            let len = random_length(cfg, rng);
            let x = random_gamma(alg, rng, len);
            Ok(check(space.is_orthogonal_fixing_radical(&pi(&x)?), || json!({ "x": elt_json(&x) })))
        }),
        run_property("groups", "pi-multiplicative", s(2), n, |rng| {
            let (x, y) = (random_gamma(alg, rng, 3), random_gamma(alg, rng, 3));
            Ok(check(pi(&(&x * &y))? == pi(&x)?.mul(&pi(&y)?)?, || json!({ "x": elt_json(&x), "y": elt_json(&y) })))
        }),
        run_property("groups", "pi-reflection", s(3), n, |rng| {
            let Some(v) = random_anisotropic(alg, rng) else { return Ok(Outcome::Skip) };
            let coords = v.vector_coords();
            Ok(check(pi(&v)? == space.reflection(&coords)?, || json!({ "v": vector_to_json(&coords) })))
        }),
        run_property("groups", "pi-tilde-special", s(4), n, |rng| {
            let mut x = Element::one(alg);
            for _ in 0..random_length(cfg, rng) {
                let xi = Element::paravector(alg, &small_vector(alg.field(), alg.ngens() + 1, rng))?;
                if xi.norm_scalar().is_ok_and(|s| !s.is_zero()) {
                    x = x * xi;
                }
            }
            let ok = in_group(&x, GroupTag::TildeGammaFx) && pi_tilde(&x)?.det()?.is_one();
            Ok(check(ok, || json!({ "x": elt_json(&x) })))
        }),
        run_property("groups", "norm-multiplicative", s(5), n, |rng| {
            let (x, y) = (random_gamma(alg, rng, 3), random_gamma(alg, rng, 3));
            let ok = in_group(&x, GroupTag::GammaFx) && (&x * &y).norm() == x.norm() * y.norm();
            Ok(check(ok, || json!({ "x": elt_json(&x), "y": elt_json(&y) })))
        }),
        run_property("groups", "pseudo-det-multiplicative", s(6), n, |rng| {
            let (l1, l2) = (random_length(cfg, rng), random_length(cfg, rng));
            let (m1, m2) = (random_vahlen(alg, kind, rng, l1, false), random_vahlen(alg, kind, rng, l2, false));
            let d = |m: &CMatrix2| m.pseudo_det_element().as_scalar();
            let ok = d(&m1.mul(&m2))? == &d(&m1)? * &d(&m2)?;
            Ok(check(ok, || json!({ "m1": mat_json(&m1), "m2": mat_json(&m2) })))
        }),
    ]
}

fn vahlen_suite(alg: &Arc<CliffordAlgebra>, cfg: &VerifyConfig, seed: u64, n: usize) -> Vec<PropertyResult> {
    let s = |k| derive_seed(seed, k);
    let kind = cfg.kind;
    vec![
        run_property("vahlen", "generated-satisfy-all-conditions", s(1), n, |rng| {
            let len = random_length(cfg, rng);
            let m = random_vahlen(alg, kind, rng, len, false);
            let d = diagnose(&m, kind);
            Ok(check(d.conditions.iter().all(|&c| c), || {
                json!({ "matrix": mat_json(&m), "conditions": d.conditions })
            }))
        }),
        run_property("vahlen", "conditions-1-4-agree", s(2), n, |rng| {
            let len = random_length(cfg, rng);
            let mut m = random_vahlen(alg, kind, rng, len, false);
            if rng.gen_bool(0.5) {
                m.b = &m.b + random_element(alg, 0.3, rng);
            }
            let d = diagnose(&m, kind);
            Ok(check(d.conditions[0] == d.conditions[3], || {
                json!({ "matrix": mat_json(&m), "conditions": d.conditions })
            }))
        }),
    ]
}

fn halfspace_suite(h: &HalfSpace, cfg: &VerifyConfig, seed: u64, n: usize) -> Result<Vec<PropertyResult>> {
    let s = |k| derive_seed(seed, k);
    let cands = boundary_candidates(h)?;
    let alg = h.base();
    let field = alg.field();
    let kind = cfg.kind;
    Ok(vec![
        run_property("halfspace", "k-model-round-trip", s(1), n, |rng| {
            let p = if rng.gen_bool(0.5) {
                random_boundary(h, &cands, rng).unwrap_or_else(|| random_regular(h, rng))
            } else {
                random_regular(h, rng)
            };
            let w = h.to_k(&p)?;
            Ok(check(h.from_k(&w)? == p, || json!({ "point": h.point_to_json(&p) })))
        }),
        run_property("halfspace", "equivariance", s(2), n, |rng| {
            let (m, p) = sample_pair(h, cfg, &cands, rng);
            Ok(check(h.equivariance_check(&m, &p)?, || pair_json(h, &m, &p)))
        }),
        run_property("halfspace", "value-identity", s(3), n, |rng| {
            let (m, p) = sample_pair(h, cfg, &cands, rng);
            Ok(check(h.value_identity_check(&m, &p)?, || pair_json(h, &m, &p)))
        }),
        run_property("halfspace", "action-composition", s(4), n, |rng| {
            let (m2, p) = sample_pair(h, cfg, &cands, rng);
            let len = random_length(cfg, rng);
            let m1 = random_vahlen(alg, kind, rng, len, false);
            let ok = h.mobius_apply(&m1.mul(&m2), &p)? == h.mobius_apply(&m1, &h.mobius_apply(&m2, &p)?)?;
            Ok(check(ok, || json!({ "m1": mat_json(&m1), "m2": mat_json(&m2), "point": h.point_to_json(&p) })))
        }),
        run_property("halfspace", "boundary-translation", s(5), n, |rng| {
            let Some(p) = random_boundary(h, &cands, rng) else { return Ok(Outcome::Skip) };
            let a = nonzero_scalar(field, rng);
            let xi = small_vector(field, h.coord_len(), rng);
            let (m, expected) = boundary_translation(h, &a, &xi, &p)?;
            Ok(check(h.mobius_apply(&m, &p)? == expected, || pair_json(h, &m, &p)))
        }),
        run_property("halfspace", "stabilizer-shape", s(6), n, |rng| {
            let len = random_length(cfg, rng);
            let m = random_vahlen(alg, kind, rng, len, false);
            let (fixes, shape) = h.stabilizer_shape_check(&m)?;
            if fixes != shape {
                return Ok(Outcome::Fail(json!({ "matrix": mat_json(&m), "fixes": fixes, "shape": shape })));
            }
            let Some(st) = stabilizer_from(h, &m)? else { return Ok(Outcome::Pass) };
            let (fixes, shape) = h.stabilizer_shape_check(&st)?;
            Ok(check(fixes && shape, || json!({ "matrix": mat_json(&st), "fixes": fixes, "shape": shape })))
        }),
    ])
}

/// `(a ξ; 0 1)` with the predicted image `(∞u)_{ab − (u, ξ)}` of a boundary point.
pub fn boundary_translation(h: &HalfSpace, a: &Scalar, xi: &[Scalar], p: &Point) -> Result<(CMatrix2, Point)> {
    let alg = h.base();
    let Point::Boundary { u, b } = p else {
        return Err(crate::Error::BadArgument("expected a boundary point".into()));
    };
    let xe = match h.kind() {
        VahlenKind::Vector => Element::vector(alg, xi)?,
        VahlenKind::Paravector => Element::paravector(alg, xi)?,
    };
    let m = CMatrix2 {
        a: Element::scalar(alg, a.clone()),
        b: xe,
        c: Element::zero(alg),
        d: Element::one(alg),
    };
    let expected = Point::Boundary {
        u: u.clone(),
        b: &(a * b) - &h.pairing(u, xi)?,
    };
    Ok((m, expected))
}

/// `g · m` with `g` an affine matrix bringing `m(σ_c)` back to `σ_c`, when `m(σ_c)` is regular.
fn stabilizer_from(h: &HalfSpace, m: &CMatrix2) -> Result<Option<CMatrix2>> {
    let alg = h.base();
    let Point::Regular { v, t } = h.mobius_apply(m, &h.base_point())? else { return Ok(None) };
    let neg: Vec<Scalar> = v.iter().map(|x| -x).collect();
    let xe = match h.kind() {
        VahlenKind::Vector => Element::vector(alg, &neg)?,
        VahlenKind::Paravector => Element::paravector(alg, &neg)?,
    };
    let back = generator(alg, h.kind(), &Generator::Dilation(t.inv()?))?.mul(&generator(
        alg,
        h.kind(),
        &Generator::Translation(xe),
    )?);
    let st = back.mul(m);
    debug_assert!(is_vahlen(&st, h.kind()));
    Ok(Some(st))
}

/// All suites in order, cheapest first.
pub fn run_all(alg: &Arc<CliffordAlgebra>, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let h = HalfSpace::new(alg, cfg.c.clone(), cfg.kind)?;
    let n = cfg.samples;
    let mut properties = Vec::new();
    properties.extend(algebra_suite(alg, derive_seed(cfg.seed, 1), n));
    properties.extend(involution_suite(alg, derive_seed(cfg.seed, 2), n));
    properties.extend(iso_suite(alg, derive_seed(cfg.seed, 3), n));
    properties.extend(group_suite(alg, cfg, derive_seed(cfg.seed, 4), n));
    properties.extend(vahlen_suite(alg, cfg, derive_seed(cfg.seed, 5), n));
    properties.extend(halfspace_suite(&h, cfg, derive_seed(cfg.seed, 6), n)?);
    Ok(VerifyReport {
        field: alg.field().to_string(),
        space: alg.space().to_json(),
        c: cfg.c.to_string(),
        kind: cfg.kind,
        seed: cfg.seed,
        samples: n,
        gen_length: cfg.gen_length,
        passed: properties.iter().all(|p| p.passed),
        properties,
    })
}

/// Only the half-space properties (equivariance, value identity, action, boundary, stabilizer).
pub fn run_halfspace(alg: &Arc<CliffordAlgebra>, cfg: &VerifyConfig) -> Result<Vec<PropertyResult>> {
    let h = HalfSpace::new(alg, cfg.c.clone(), cfg.kind)?;
    halfspace_suite(&h, cfg, derive_seed(cfg.seed, 6), cfg.samples)
}

/// Only the isomorphism and group properties.
pub fn run_structural(alg: &Arc<CliffordAlgebra>, cfg: &VerifyConfig) -> Vec<PropertyResult> {
    let mut out = iso_suite(alg, derive_seed(cfg.seed, 3), cfg.samples);
    out.extend(group_suite(alg, cfg, derive_seed(cfg.seed, 4), cfg.samples));
    out
}
