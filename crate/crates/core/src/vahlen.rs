//! Vahlen and paravector Vahlen groups: membership under each of the four
//! equivalent conditions, the pseudo-determinant, generators, a seeded
//! sampler, and exhaustive comparison of the conditions over small fields.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{CliffordAlgebra, Element};
use crate::cmatrix::{CMatrix2, CMatrixJson};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::groups::{in_group, matrix_to_cu, matrix_to_cuf, GroupTag};
use crate::sample::{nonzero_scalar, small_scalar, small_vector, SampleRng};

/// Largest matrix count [`verify_equivalence_exhaustive`] will enumerate.
pub const EXHAUSTIVE_LIMIT: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VahlenKind {
    Vector,
    Paravector,
}

impl std::str::FromStr for VahlenKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vector" => Ok(VahlenKind::Vector),
            "paravector" => Ok(VahlenKind::Paravector),
            _ => Err(Error::Parse(format!("unknown kind {s:?}, expected vector or paravector"))),
        }
    }
}

impl std::fmt::Display for VahlenKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VahlenKind::Vector => "vector",
            VahlenKind::Paravector => "paravector",
        })
    }
}

/// Whether `x` lies in `V` (vector kind) or `F ⊕ V` (paravector kind).
pub fn in_target(x: &Element, kind: VahlenKind) -> bool {
    match kind {
        VahlenKind::Vector => x.is_vector(),
        VahlenKind::Paravector => x.is_paravector(),
    }
}

/// `V`'s basis, or `1` together with it.
fn test_elements(alg: &Arc<CliffordAlgebra>, kind: VahlenKind) -> Vec<Element> {
    let mut out = Vec::new();
    if kind == VahlenKind::Paravector {
        out.push(Element::one(alg));
    }
    out.extend((0..alg.ngens()).map(|i| Element::generator(alg, i)));
    out
}

/// Membership in `T` (resp. `T̃`): `x v x*` stays in `V` (resp. `F ⊕ V`) and `N(x)` is scalar.
pub fn in_t(x: &Element, kind: VahlenKind) -> bool {
    if !x.norm().is_scalar() {
        return false;
    }
    let xt = x.transpose();
    test_elements(x.algebra(), kind)
        .iter()
        .all(|v| in_target(&(x * v * &xt), kind))
}

fn det_is_unit(m: &CMatrix2) -> bool {
    m.pseudo_det_element().as_scalar().is_ok_and(|d| !d.is_zero())
}

/// Outcome of Condition 3 with the first failing clause.
fn condition3_detail(m: &CMatrix2, kind: VahlenKind, t_member: &dyn Fn(&Element) -> bool) -> Option<&'static str> {
    let names = ["alpha", "beta", "gamma", "delta"];
    for (x, name) in m.entries().into_iter().zip(names) {
        if !t_member(x) {
            return Some(match name {
                "alpha" => "entry alpha is not in T",
                "beta" => "entry beta is not in T",
                "gamma" => "entry gamma is not in T",
                _ => "entry delta is not in T",
            });
        }
    }
    if !det_is_unit(m) {
        return Some("pseudo-determinant is not a nonzero scalar");
    }
    if !in_target(&(m.a.conj() * &m.b), kind) {
        return Some("conj(alpha)*beta is not in the target space");
    }
    if !in_target(&(m.d.conj() * &m.c), kind) {
        return Some("conj(delta)*gamma is not in the target space");
    }
    None
}

fn condition1(m: &CMatrix2, kind: VahlenKind) -> bool {
    let (a, b, c, d) = (&m.a, &m.b, &m.c, &m.d);
    if !m.entries().iter().all(|x| x.norm().is_scalar()) {
        return false;
    }
    let (at, bt, ct, dt) = (a.transpose(), b.transpose(), c.transpose(), d.transpose());
    if a * &bt != b * &at || c * &dt != d * &ct || !det_is_unit(m) {
        return false;
    }
    let (ab, bb, cb, db) = (a.conj(), b.conj(), c.conj(), d.conj());
    if !in_target(&(a * &cb), kind) || !in_target(&(b * &db), kind) {
        return false;
    }
    test_elements(a.algebra(), kind).iter().all(|v| {
        let vb = v.conj();
        (a * v * &bb + b * &vb * &ab).is_scalar()
            && (c * v * &db + d * &vb * &cb).is_scalar()
            && in_target(&(a * v * &db + b * &vb * &cb), kind)
    })
}

fn condition2(m: &CMatrix2, kind: VahlenKind, t_member: &dyn Fn(&Element) -> bool) -> bool {
    m.entries().iter().all(|x| t_member(x))
        && det_is_unit(m)
        && in_target(&(&m.a * m.b.transpose()), kind)
        && in_target(&(&m.d * m.c.transpose()), kind)
}

fn condition3(m: &CMatrix2, kind: VahlenKind, t_member: &dyn Fn(&Element) -> bool) -> bool {
    condition3_detail(m, kind, t_member).is_none()
}

fn condition4(m: &CMatrix2, kind: VahlenKind) -> bool {
    match kind {
        VahlenKind::Vector => in_group(&matrix_to_cu(m), GroupTag::GammaFx),
        VahlenKind::Paravector => {
            let psi = matrix_to_cuf(m);
            psi.is_even() && in_group(&psi, GroupTag::GammaFx)
        }
    }
}

/// Evaluate one of the four equivalent membership conditions.
pub fn check_condition(m: &CMatrix2, kind: VahlenKind, which: u8) -> Result<bool> {
    let t = |x: &Element| in_t(x, kind);
    match which {
        1 => Ok(condition1(m, kind)),
        2 => Ok(condition2(m, kind, &t)),
        3 => Ok(condition3(m, kind, &t)),
        4 => Ok(condition4(m, kind)),
        _ => Err(Error::BadArgument(format!("no condition {which}"))),
    }
}

/// Membership by Condition 3.
pub fn is_vahlen(m: &CMatrix2, kind: VahlenKind) -> bool {
    condition3(m, kind, &|x| in_t(x, kind))
}

/// Why Condition 3 fails, if it does.
pub fn vahlen_failure(m: &CMatrix2, kind: VahlenKind) -> Option<&'static str> {
    condition3_detail(m, kind, &|x| in_t(x, kind))
}

/// All four conditions evaluated side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnosis {
    pub conditions: [bool; 4],
    pub agree: bool,
}

pub fn diagnose(m: &CMatrix2, kind: VahlenKind) -> Diagnosis {
    let conditions = [1u8, 2, 3, 4].map(|k| check_condition(m, kind, k).unwrap());
    Diagnosis {
        agree: conditions.iter().all(|&c| c == conditions[0]),
        conditions,
    }
}

/// `αδ* − βγ*` of a Vahlen matrix.
pub fn pseudo_det(m: &CMatrix2, kind: VahlenKind) -> Result<Scalar> {
    if !is_vahlen(m, kind) {
        return Err(Error::NotVahlen);
    }
    m.pseudo_det_element().as_scalar()
}

/// `(δ*, −β*; −γ*, α*) / det`.
pub fn vahlen_inverse(m: &CMatrix2, kind: VahlenKind) -> Result<CMatrix2> {
    let det = pseudo_det(m, kind)?;
    Ok(m.adjugate().scale(&det.inv()?))
}

/// The generating matrices.
#[derive(Clone, Debug)]
pub enum Generator {
    Translation(Element),
    Dilation(Scalar),
    Weyl,
    VectorScalar(Element),
}

pub fn generator(alg: &Arc<CliffordAlgebra>, kind: VahlenKind, which: &Generator) -> Result<CMatrix2> {
    let zero = Element::zero(alg);
    let one = Element::one(alg);
    match which {
        Generator::Translation(xi) => {
            if !in_target(xi, kind) {
                return Err(Error::BadArgument(format!("translation by {xi} is not in the {kind} space")));
            }
            Ok(CMatrix2 {
                a: one.clone(),
                b: xi.embed(alg)?,
                c: zero,
                d: one,
            })
        }
        Generator::Dilation(a) => {
            if a.is_zero() {
                return Err(Error::BadArgument("dilation by zero".into()));
            }
            Ok(CMatrix2 {
                a: Element::scalar(alg, a.clone()),
                b: zero.clone(),
                c: zero,
                d: one,
            })
        }
        Generator::Weyl => Ok(CMatrix2 {
            a: zero.clone(),
            b: -&one,
            c: one,
            d: zero,
        }),
        Generator::VectorScalar(v) => {
            let anisotropic = v.is_vector() && (v * v).as_scalar().is_ok_and(|q| !q.is_zero());
            if !anisotropic {
                return Err(Error::BadArgument(format!("{v} is not an anisotropic vector")));
            }
            Ok(CMatrix2 {
                a: v.embed(alg)?,
                b: zero.clone(),
                c: zero,
                d: v.embed(alg)?,
            })
        }
    }
}

fn random_translation(alg: &Arc<CliffordAlgebra>, kind: VahlenKind, rng: &mut SampleRng) -> Element {
    let field = alg.field();
    let v = Element::vector(alg, &small_vector(field, alg.ngens(), rng)).unwrap();
    match kind {
        VahlenKind::Vector => v,
        VahlenKind::Paravector => v + Element::scalar(alg, small_scalar(field, rng)),
    }
}

/// A random anisotropic vector, or `None` after a bounded search.
pub fn random_anisotropic(alg: &Arc<CliffordAlgebra>, rng: &mut SampleRng) -> Option<Element> {
    let space = alg.space();
    for _ in 0..32 {
        let coords = small_vector(alg.field(), space.dim(), rng);
        if !space.q_value(&coords).unwrap().is_zero() {
            return Some(Element::vector(alg, &coords).unwrap());
        }
    }
    None
}

/// One generator drawn with weights 40/20/20/20 (translation, dilation, Weyl, vector scalar).
pub fn random_generator(alg: &Arc<CliffordAlgebra>, kind: VahlenKind, rng: &mut SampleRng) -> CMatrix2 {
    let roll = rng.gen_range(0..100);
    let g = if roll < 40 {
        Generator::Translation(random_translation(alg, kind, rng))
    } else if roll < 60 {
        Generator::Dilation(nonzero_scalar(alg.field(), rng))
    } else if roll < 80 {
        Generator::Weyl
    } else {
        match random_anisotropic(alg, rng) {
            Some(v) => Generator::VectorScalar(v),
            None => Generator::Translation(random_translation(alg, kind, rng)),
        }
    };
    generator(alg, kind, &g).expect("sampled generator arguments are valid")
}

/// Seeded product of `length` random generators; `special` rescales to pseudo-determinant 1.
pub fn random_vahlen(
    alg: &Arc<CliffordAlgebra>,
    kind: VahlenKind,
    rng: &mut SampleRng,
    length: usize,
    special: bool,
) -> CMatrix2 {
    let mut m = random_generator(alg, kind, rng);
    for _ in 1..length.max(1) {
        m = m.mul(&random_generator(alg, kind, rng));
    }
    if special {
        let det = m.pseudo_det_element().as_scalar().expect("products of generators have scalar determinant");
        let fix = generator(alg, kind, &Generator::Dilation(det.inv().unwrap())).unwrap();
        m = m.mul(&fix);
    }
    m
}

/// Result of comparing the four conditions on every matrix over a finite field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub field: String,
    pub dim: usize,
    pub kind: VahlenKind,
    pub matrices: u64,
    pub condition_sets_equal: bool,
    /// Conditions 1 and 4 agree even without the transposition hypothesis.
    pub conditions_1_and_4_equal: bool,
    #[serde(rename = "T_star_invariant")]
    pub t_star_invariant: bool,
    pub t_size: u64,
    pub counts: BTreeMap<String, u64>,
    /// A few matrices on which the conditions disagree.
    pub disagreements: Vec<CMatrixJson>,
}

impl EquivalenceReport {
    /// The four sets coincide when `T` is transposition-invariant, and 1 ≡ 4 in any case.
    pub fn consistent(&self) -> bool {
        self.conditions_1_and_4_equal && (!self.t_star_invariant || self.condition_sets_equal)
    }
}

/// Every element of a finite-field Clifford algebra, in a fixed order.
pub fn enumerate_algebra(alg: &Arc<CliffordAlgebra>) -> Result<Vec<Element>> {
    let els = alg.field().elements()?;
    let p = els.len() as u128;
    let d = alg.dim();
    let total = p.checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge(total, EXHAUSTIVE_LIMIT));
    }
    Ok((0..total as u64)
        .map(|mut idx| {
            let mut terms = Vec::with_capacity(d);
            for m in 0..d as u32 {
                terms.push((m, els[(idx % p as u64) as usize].clone()));
                idx /= p as u64;
            }
            Element::from_terms(alg, terms)
        })
        .collect())
}

/// Number of 2×2 matrices over `alg`, guarded by [`EXHAUSTIVE_LIMIT`].
pub fn matrix_count(alg: &Arc<CliffordAlgebra>) -> Result<u64> {
    let p = alg.field().order().ok_or(Error::InfiniteField)? as u128;
    let total = p.checked_pow(4 * alg.dim() as u32).unwrap_or(u128::MAX);
    if total > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge(total, EXHAUSTIVE_LIMIT));
    }
    Ok(total as u64)
}

/// Call `f` with every matrix over a finite-field algebra, in parallel, keeping results in order.
pub fn enumerate_matrices<T: Send>(
    alg: &Arc<CliffordAlgebra>,
    f: impl Fn(CMatrix2) -> T + Sync + Send,
) -> Result<Vec<T>> {
    let total = matrix_count(alg)?;
    let els = enumerate_algebra(alg)?;
    let k = els.len() as u64;
    Ok((0..total)
        .into_par_iter()
        .map(|idx| {
            let pick = |i: u32| els[((idx / k.pow(i)) % k) as usize].clone();
            f(CMatrix2 {
                a: pick(0),
                b: pick(1),
                c: pick(2),
                d: pick(3),
            })
        })
        .collect())
}

/// Evaluate all four conditions on every 2×2 matrix over a finite field.
pub fn verify_equivalence_exhaustive(alg: &Arc<CliffordAlgebra>, kind: VahlenKind) -> Result<EquivalenceReport> {
    let total = matrix_count(alg)?;
    let els = enumerate_algebra(alg)?;
    // the algebra's lazy caches never feed into an element's hash
    #[allow(clippy::mutable_key_type)]
    let t_set: HashMap<Element, bool> = els.par_iter().map(|x| (x.clone(), in_t(x, kind))).collect();
    let t_size = t_set.values().filter(|&&b| b).count() as u64;
    let t_star_invariant = t_set.iter().filter(|(_, &b)| b).all(|(x, _)| t_set[&x.transpose()]);
    let t_member = |x: &Element| t_set[x];

    let results = enumerate_matrices(alg, |m| {
        let c = [
            condition1(&m, kind),
            condition2(&m, kind, &t_member),
            condition3(&m, kind, &t_member),
            condition4(&m, kind),
        ];
        let disagree = c.iter().any(|&x| x != c[0]);
        (c, disagree.then_some(m))
    })?;

    let mut counts = BTreeMap::new();
    for k in 1..=4 {
        counts.insert(
            format!("condition{k}"),
            results.iter().filter(|(c, _)| c[k - 1]).count() as u64,
        );
    }
    let condition_sets_equal = results.iter().all(|(c, _)| c.iter().all(|&x| x == c[0]));
    let conditions_1_and_4_equal = results.iter().all(|(c, _)| c[0] == c[3]);
    let disagreements = results
        .iter()
        .filter_map(|(_, m)| m.as_ref().map(CMatrix2::to_json))
        .take(5)
        .collect();
    Ok(EquivalenceReport {
        field: alg.field().to_string(),
        dim: alg.ngens(),
        kind,
        matrices: total,
        condition_sets_equal,
        conditions_1_and_4_equal,
        t_star_invariant,
        t_size,
        counts,
        disagreements,
    })
}

/// All Vahlen matrices over a finite-field algebra.
pub fn enumerate_vahlen_group(alg: &Arc<CliffordAlgebra>, kind: VahlenKind) -> Result<Vec<CMatrix2>> {
    let els = enumerate_algebra(alg)?;
    // the algebra's lazy caches never feed into an element's hash
    #[allow(clippy::mutable_key_type)]
    let t_set: HashMap<Element, bool> = els.par_iter().map(|x| (x.clone(), in_t(x, kind))).collect();
    let members = enumerate_matrices(alg, |m| condition3(&m, kind, &|x| t_set[x]).then_some(m))?;
    Ok(members.into_iter().flatten().collect())
}
