//! Generalized half-spaces `H^c` and `H̃^c` with their boundary points, the
//! hyperboloid model `K^c`, and the Möbius action of Vahlen matrices.
//!
//! A regular point is `v + tσ_c` with `t ≠ 0`; a boundary point `(∞u)_b` is
//! stored as the pair `(u, b)` with `q(u) = c`. In the paravector model `v`
//! and `u` are paravectors `a + v`, stored as `[a, v_1, …, v_n]`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::clifford::{CliffordAlgebra, Element};
use crate::cmatrix::CMatrix2;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::groups::{matrix_to_cu, matrix_to_cuf};
use crate::quadspace::vector_to_json;
use crate::vahlen::{in_target, is_vahlen, VahlenKind};

/// A point of the completed half-space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    /// `v + tσ_c`.
    Regular { v: Vec<Scalar>, t: Scalar },
    /// `(∞u)_b + ∞σ_c`.
    Boundary { u: Vec<Scalar>, b: Scalar },
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    /// An arbitrary but fixed total order, used only to make outputs deterministic.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: r }) => {
                (p, a).cmp(&(r, b))
            }
            (Scalar::Rational(_), _) => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Greater,
        }
    }
}

impl Point {
    pub fn is_boundary(&self) -> bool {
        matches!(self, Point::Boundary { .. })
    }
}

/// Serialized point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub v: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub u: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<String>,
    pub c: String,
    pub model: VahlenKind,
}

/// The half-space `H^c` (vector kind) or `H̃^c` (paravector kind) over a base algebra `C(V)`.
#[derive(Clone, Debug)]
pub struct HalfSpace {
    base: Arc<CliffordAlgebra>,
    c: Scalar,
    kind: VahlenKind,
    /// `C(V_F^c)`.
    sigma_alg: Arc<CliffordAlgebra>,
    /// `C(V_U)` or `C(V_{U,F})`.
    k_alg: Arc<CliffordAlgebra>,
}

impl HalfSpace {
    pub fn new(base: &Arc<CliffordAlgebra>, c: Scalar, kind: VahlenKind) -> Result<Self> {
        if c.field() != base.field() {
            return Err(Error::FieldMismatch(base.field(), c.field()));
        }
        let k_alg = match kind {
            VahlenKind::Vector => base.hyperbolic(),
            VahlenKind::Paravector => base.hyperbolic_rho(),
        };
        Ok(HalfSpace {
            base: base.clone(),
            sigma_alg: base.sigma(&c),
            c,
            kind,
            k_alg,
        })
    }

    pub fn base(&self) -> &Arc<CliffordAlgebra> {
        &self.base
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }

    pub fn kind(&self) -> VahlenKind {
        self.kind
    }

    /// The algebra holding the hyperboloid model.
    pub fn k_algebra(&self) -> &Arc<CliffordAlgebra> {
        &self.k_alg
    }

    /// Number of coordinates of `v`/`u`.
    pub fn coord_len(&self) -> usize {
        match self.kind {
            VahlenKind::Vector => self.base.ngens(),
            VahlenKind::Paravector => self.base.ngens() + 1,
        }
    }

    /// `σ_c`.
    pub fn base_point(&self) -> Point {
        Point::Regular {
            v: vec![self.base.field().zero(); self.coord_len()],
            t: self.base.field().one(),
        }
    }

    /// `q(v)`, or `q_F(a + v) = q(v) − a²` for paravectors.
    pub fn q_coords(&self, x: &[Scalar]) -> Result<Scalar> {
        let space = self.base.space();
        match self.kind {
            VahlenKind::Vector => space.q_value(x),
            VahlenKind::Paravector => {
                if x.len() != space.dim() + 1 {
                    return Err(Error::SpaceMismatch);
                }
                Ok(space.q_value(&x[1..])? - x[0].square())
            }
        }
    }

    /// `(x, y)`, or `(ξ, η)_F = (u, v) − 2ab` for paravectors.
    pub fn pairing(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
        let space = self.base.space();
        match self.kind {
            VahlenKind::Vector => space.bilinear(x, y),
            VahlenKind::Paravector => {
                if x.len() != space.dim() + 1 || y.len() != space.dim() + 1 {
                    return Err(Error::SpaceMismatch);
                }
                let ab = &x[0] * &y[0];
                Ok(space.bilinear(&x[1..], &y[1..])? - &ab - &ab)
            }
        }
    }

    /// Whether `x` lies in the radical `V^⊥` (a paravector only if its scalar part is 0).
    pub fn coords_in_radical(&self, x: &[Scalar]) -> Result<bool> {
        match self.kind {
            VahlenKind::Vector => self.base.space().is_in_radical(x),
            VahlenKind::Paravector => Ok(x[0].is_zero() && self.base.space().is_in_radical(&x[1..])?),
        }
    }

    /// Check the invariants of a point.
    pub fn validate(&self, p: &Point) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvariantViolation(msg.to_string()));
        match p {
            Point::Regular { v, t } => {
                if v.len() != self.coord_len() {
                    return Err(Error::SpaceMismatch);
                }
                if t.is_zero() {
                    return bad("regular point with t = 0");
                }
            }
            Point::Boundary { u, b } => {
                if u.len() != self.coord_len() {
                    return Err(Error::SpaceMismatch);
                }
                if self.q_coords(u)? != self.c {
                    return bad("boundary point with q(u) ≠ c");
                }
                if self.c.is_zero() && b.is_zero() && self.coords_in_radical(u)? {
                    return bad("boundary point with radical u and b = 0");
                }
            }
        }
        Ok(())
    }

    fn elt(&self, coords: &[Scalar], alg: &Arc<CliffordAlgebra>) -> Element {
        let n = self.base.ngens();
        let mut full = vec![alg.field().zero(); alg.ngens()];
        let mut out = Element::zero(alg);
        match self.kind {
            VahlenKind::Vector => full[..n].clone_from_slice(coords),
            VahlenKind::Paravector => {
                full[..n].clone_from_slice(&coords[1..]);
                out = Element::scalar(alg, coords[0].clone());
            }
        }
        out + Element::vector(alg, &full).expect("coordinates fit")
    }

    /// `v + tσ_c` as an element of `C(V_F^c)`.
    pub fn regular_element(&self, v: &[Scalar], t: &Scalar) -> Element {
        let sigma = Element::generator(&self.sigma_alg, self.base.ngens());
        self.elt(v, &self.sigma_alg) + sigma.scale(t)
    }

    /// Coordinates of the part of `x` in `V` or `F ⊕ V` (ignoring `σ_c`).
    fn target_coords(&self, x: &Element) -> Vec<Scalar> {
        let n = self.base.ngens();
        let mut out = Vec::with_capacity(self.coord_len());
        if self.kind == VahlenKind::Paravector {
            out.push(x.scalar_part());
        }
        out.extend((0..n).map(|i| x.coeff(1 << i)));
        out
    }

    /// The vector of `K^c` attached to a point, as coordinates in `V_U` or `V_{U,F}`.
    pub fn to_k(&self, p: &Point) -> Result<Vec<Scalar>> {
        self.validate(p)?;
        let n = self.base.ngens();
        let field = self.base.field();
        let (v_part, e_coef, f_coef, rho_coef) = match p {
            Point::Regular { v, t } => {
                let tinv = t.inv()?;
                let e = (&(&self.c * &t.square()) - &self.q_coords(v)?) * &tinv;
                match self.kind {
                    VahlenKind::Vector => (v.iter().map(|x| x * &tinv).collect::<Vec<_>>(), e, tinv, None),
                    VahlenKind::Paravector => (
                        v[1..].iter().map(|x| x * &tinv).collect(),
                        e,
                        tinv.clone(),
                        Some(-(&v[0] * &tinv)),
                    ),
                }
            }
            Point::Boundary { u, b } => match self.kind {
                VahlenKind::Vector => (u.clone(), b.clone(), field.zero(), None),
                VahlenKind::Paravector => (u[1..].to_vec(), b.clone(), field.zero(), Some(-&u[0])),
            },
        };
        let mut w = v_part;
        debug_assert_eq!(w.len(), n);
        w.push(e_coef);
        w.push(f_coef);
        if let Some(r) = rho_coef {
            w.push(r);
        }
        Ok(w)
    }

    /// Check that `w` lies in `K^c`: value `c`, outside the radical.
    pub fn check_k(&self, w: &[Scalar]) -> Result<()> {
        let space = self.k_alg.space();
        if space.q_value(w)? != self.c {
            return Err(Error::InvariantViolation("vector of K^c has the wrong q-value".into()));
        }
        if space.is_in_radical(w)? {
            return Err(Error::InvariantViolation("vector of K^c lies in the radical".into()));
        }
        Ok(())
    }

    /// Inverse of [`HalfSpace::to_k`], splitting on the pairing with `e` (the `f`-coefficient).
    pub fn from_k(&self, w: &[Scalar]) -> Result<Point> {
        self.check_k(w)?;
        let n = self.base.ngens();
        let (x, e_coef, f_coef) = (&w[..n], &w[n], &w[n + 1]);
        let mut coords = Vec::with_capacity(self.coord_len());
        if self.kind == VahlenKind::Paravector {
            coords.push(-&w[n + 2]);
        }
        coords.extend_from_slice(x);
        if f_coef.is_zero() {
            let p = Point::Boundary {
                u: coords,
                b: e_coef.clone(),
            };
            self.validate(&p)?;
            Ok(p)
        } else {
            let t = f_coef.inv()?;
            Ok(Point::Regular {
                v: coords.iter().map(|s| s * &t).collect(),
                t,
            })
        }
    }

    fn det(&self, m: &CMatrix2) -> Result<Scalar> {
        let d = m.pseudo_det_element().as_scalar()?;
        if d.is_zero() {
            return Err(Error::NotVahlen);
        }
        Ok(d)
    }

    fn require_vahlen(&self, m: &CMatrix2) -> Result<()> {
        if !Arc::ptr_eq(m.algebra(), &self.base) && **m.algebra() != *self.base {
            return Err(Error::SpaceMismatch);
        }
        if is_vahlen(m, self.kind) {
            Ok(())
        } else {
            Err(Error::NotVahlen)
        }
    }

    /// `x` read as a vector of `V` or a paravector, as `C(V)` element.
    fn base_elt(&self, coords: &[Scalar]) -> Element {
        self.elt(coords, &self.base)
    }

    /// Ingredients of the action on a point.
    /// Precompute the pieces of `m` reused for every point.
    pub fn prepare(&self, m: &CMatrix2) -> Result<PreparedMatrix> {
        self.require_vahlen(m)?;
        self.prepare_unchecked(m)
    }

    fn prepare_unchecked(&self, m: &CMatrix2) -> Result<PreparedMatrix> {
        Ok(PreparedMatrix {
            lifted: m.embed(&self.sigma_alg)?,
            conj: CMatrix2 {
                a: m.a.conj(),
                b: m.b.conj(),
                c: m.c.conj(),
                d: m.d.conj(),
            },
            norm_a: m.a.norm(),
            norm_c: m.c.norm(),
            det: self.det(m)?,
            m: m.clone(),
        })
    }

    fn terms(&self, pm: &PreparedMatrix, p: &Point) -> Result<ActionTerms> {
        let m = &pm.m;
        match p {
            Point::Regular { v, t } => {
                let z = self.regular_element(v, t);
                let e = &pm.lifted;
                let num_left = &e.a * &z + &e.b;
                let den = &e.c * &z + &e.d;
                let n_den = den.norm_scalar()?;
                let n_num = num_left.norm_scalar()?;
                let num = &num_left * den.conj();
                let is_ok = match self.kind {
                    VahlenKind::Vector => num.is_vector(),
                    VahlenKind::Paravector => num.is_paravector(),
                };
                if !is_ok {
                    return Err(Error::InvariantViolation("(αz+β)conj(γz+δ) left F ⊕ V_F^c".into()));
                }
                Ok(ActionTerms {
                    n_den,
                    n_num,
                    part: self.target_coords(&num),
                    sigma_coef: num.coeff(1 << self.base.ngens()),
                    t: t.clone(),
                })
            }
            Point::Boundary { u, b } => {
                let ue = self.base_elt(u);
                let ub = ue.conj();
                let (ac, bc, cc, dc) = (&pm.conj.a, &pm.conj.b, &pm.conj.c, &pm.conj.d);
                let n_den = (pm.norm_c.scale(b) + &m.c * &ue * dc + &m.d * &ub * cc).as_scalar()?;
                let n_num = (pm.norm_a.scale(b) + &m.a * &ue * bc + &m.b * &ub * ac).as_scalar()?;
                let part = (&m.a * cc).scale(b) + &m.a * &ue * dc + &m.b * &ub * cc;
                if !in_target(&part, self.kind) {
                    return Err(Error::InvariantViolation("starred numerator left F ⊕ V".into()));
                }
                Ok(ActionTerms {
                    n_den,
                    n_num,
                    part: self.target_coords(&part),
                    sigma_coef: pm.det.clone(),
                    t: self.base.field().one(),
                })
            }
        }
    }

    /// `N(γz+δ)`, or its starred coefficient `N(γz+δ)_*` at a boundary point.
    pub fn mobius_denominator(&self, m: &CMatrix2, p: &Point) -> Result<Scalar> {
        self.require_vahlen(m)?;
        self.validate(p)?;
        Ok(self.terms(&self.prepare_unchecked(m)?, p)?.n_den)
    }

    /// The Möbius image `(αz+β)(γz+δ)⁻¹`, extended to boundary points.
    pub fn mobius_apply(&self, m: &CMatrix2, p: &Point) -> Result<Point> {
        self.require_vahlen(m)?;
        self.apply_unchecked(m, p)
    }

    /// [`HalfSpace::mobius_apply`] for a matrix already known to be Vahlen.
    pub fn apply_unchecked(&self, m: &CMatrix2, p: &Point) -> Result<Point> {
        self.apply_prepared(&self.prepare_unchecked(m)?, p)
    }

    pub fn apply_prepared(&self, pm: &PreparedMatrix, p: &Point) -> Result<Point> {
        self.validate(p)?;
        let det = &pm.det;
        let terms = self.terms(pm, p)?;
        let out = if !terms.n_den.is_zero() {
            let inv = terms.n_den.inv()?;
            Point::Regular {
                v: terms.part.iter().map(|x| x * &inv).collect(),
                t: &terms.sigma_coef * &inv,
            }
        } else {
            // at a boundary point t is 1 here, so t·det is det
            let scale = (&terms.t * det).inv()?;
            Point::Boundary {
                u: terms.part.iter().map(|x| x * &scale).collect(),
                b: &terms.n_num * &scale,
            }
        };
        self.validate(&out)?;
        Ok(out)
    }

    /// `η w η* / det` in `C(V_U)` or `C(V_{U,F})`.
    pub fn orthogonal_apply(&self, m: &CMatrix2, w: &[Scalar]) -> Result<Vec<Scalar>> {
        self.require_vahlen(m)?;
        self.orthogonal_apply_unchecked(m, w)
    }

    pub fn orthogonal_apply_unchecked(&self, m: &CMatrix2, w: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_k(w)?;
        let det = self.det(m)?;
        let eta = match self.kind {
            VahlenKind::Vector => matrix_to_cu(m),
            VahlenKind::Paravector => matrix_to_cuf(m),
        };
        let we = Element::vector(&self.k_alg, w)?;
        let img = (&eta * &we * eta.transpose()).div_scalar(&det)?;
        if !img.is_vector() {
            return Err(Error::InvariantViolation("orthogonal image is not a vector".into()));
        }
        let out = img.vector_coords();
        self.check_k(&out)?;
        Ok(out)
    }

    /// The Möbius image agrees with the image in the hyperboloid model.
    pub fn equivariance_check(&self, m: &CMatrix2, p: &Point) -> Result<bool> {
        let direct = self.mobius_apply(m, p)?;
        let via_k = self.from_k(&self.orthogonal_apply_unchecked(m, &self.to_k(p)?)?)?;
        Ok(direct == via_k)
    }

    /// `q(num part) = c t² det² − N(αz+β) N(γz+δ)`, starred at boundary points.
    pub fn value_identity_check(&self, m: &CMatrix2, p: &Point) -> Result<bool> {
        self.require_vahlen(m)?;
        self.validate(p)?;
        let det = self.det(m)?;
        let terms = self.terms(&self.prepare_unchecked(m)?, p)?;
        let lhs = self.q_coords(&terms.part)?;
        let rhs = &(&self.c * &(&terms.t * &det).square()) - &(&terms.n_num * &terms.n_den);
        Ok(lhs == rhs)
    }

    /// Whether `m` has the stabilizer shape `(δ′, −cγ′; γ, δ)` with `γδ*` in the target
    /// space and `N(δ) + cN(γ) ≠ 0`.
    pub fn stabilizer_shape(&self, m: &CMatrix2) -> bool {
        let g = m.c.grade();
        if m.a != m.d.grade() || m.b != -g.scale(&self.c) {
            return false;
        }
        if !in_target(&(&m.c * m.d.transpose()), self.kind) {
            return false;
        }
        match (m.d.norm_scalar(), m.c.norm_scalar()) {
            (Ok(nd), Ok(nc)) => !(&nd + &(&self.c * &nc)).is_zero(),
            _ => false,
        }
    }

    /// `(fixes σ_c, has the stabilizer shape)`; the two should always agree.
    pub fn stabilizer_shape_check(&self, m: &CMatrix2) -> Result<(bool, bool)> {
        let base = self.base_point();
        let fixes = self.mobius_apply(m, &base)? == base;
        Ok((fixes, self.stabilizer_shape(m)))
    }

    pub fn point_to_json(&self, p: &Point) -> PointJson {
        let c = self.c.to_string();
        match p {
            Point::Regular { v, t } => PointJson {
                kind: "regular".into(),
                v: Some(vector_to_json(v)),
                t: Some(t.to_string()),
                u: None,
                b: None,
                c,
                model: self.kind,
            },
            Point::Boundary { u, b } => PointJson {
                kind: "boundary".into(),
                v: None,
                t: None,
                u: Some(vector_to_json(u)),
                b: Some(b.to_string()),
                c,
                model: self.kind,
            },
        }
    }

    pub fn point_from_json(&self, json: &PointJson) -> Result<Point> {
        let field = self.base.field();
        if field.parse_scalar(&json.c)? != self.c {
            return Err(Error::Parse(format!("point has c = {}, expected {}", json.c, self.c)));
        }
        if json.model != self.kind {
            return Err(Error::Parse(format!("point model {} does not match {}", json.model, self.kind)));
        }
        let parse_vec = |x: &Option<Vec<String>>, name: &str| -> Result<Vec<Scalar>> {
            let x = x.as_ref().ok_or_else(|| Error::Parse(format!("missing {name}")))?;
            if x.len() != self.coord_len() {
                return Err(Error::Parse(format!("{name} needs {} coordinates", self.coord_len())));
            }
            x.iter().map(|s| field.parse_scalar(s)).collect()
        };
        let parse_scalar = |x: &Option<String>, name: &str| -> Result<Scalar> {
            field.parse_scalar(x.as_ref().ok_or_else(|| Error::Parse(format!("missing {name}")))?)
        };
        let p = match json.kind.as_str() {
            "regular" => Point::Regular {
                v: parse_vec(&json.v, "v")?,
                t: parse_scalar(&json.t, "t")?,
            },
            "boundary" => Point::Boundary {
                u: parse_vec(&json.u, "u")?,
                b: parse_scalar(&json.b, "b")?,
            },
            other => return Err(Error::Parse(format!("unknown point kind {other:?}"))),
        };
        self.validate(&p)?;
        Ok(p)
    }

    /// All points over a finite field: regular points first, then boundary points.
    pub fn enumerate_points(&self, limit: u64) -> Result<Vec<Point>> {
        let els = self.base.field().elements()?;
        let p = els.len() as u64;
        let k = self.coord_len() as u32;
        let vectors = p.checked_pow(k).ok_or(Error::TooLarge(u128::MAX, limit as u128))?;
        let bound = vectors.saturating_mul(2 * p);
        if bound > limit {
            return Err(Error::TooLarge(bound as u128, limit as u128));
        }
        let all_vectors: Vec<Vec<Scalar>> = (0..vectors)
            .map(|mut idx| {
                (0..k)
                    .map(|_| {
                        let s = els[(idx % p) as usize].clone();
                        idx /= p;
                        s
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        for v in &all_vectors {
            for t in els.iter().skip(1) {
                out.push(Point::Regular {
                    v: v.clone(),
                    t: t.clone(),
                });
            }
        }
        for u in &all_vectors {
            if self.q_coords(u)? != self.c {
                continue;
            }
            for b in &els {
                let p = Point::Boundary {
                    u: u.clone(),
                    b: b.clone(),
                };
                if self.validate(&p).is_ok() {
                    out.push(p);
                }
            }
        }
        Ok(out)
    }

    /// Size of `K^c`, counted directly in `V_U` or `V_{U,F}` over a finite field.
    pub fn k_set_size(&self) -> Result<u64> {
        let els = self.base.field().elements()?;
        let p = els.len() as u64;
        let space = self.k_alg.space();
        let k = space.dim() as u32;
        let total = p.checked_pow(k).ok_or(Error::TooLarge(u128::MAX, 0))?;
        let mut count = 0;
        for mut idx in 0..total {
            let w: Vec<Scalar> = (0..k)
                .map(|_| {
                    let s = els[(idx % p) as usize].clone();
                    idx /= p;
                    s
                })
                .collect();
            if space.q_value(&w)? == self.c && !space.is_in_radical(&w)? {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// A Vahlen matrix with its lift to `C(V_F^c)`, entry conjugates, norms and determinant.
#[derive(Clone, Debug)]
pub struct PreparedMatrix {
    m: CMatrix2,
    lifted: CMatrix2,
    conj: CMatrix2,
    norm_a: Element,
    norm_c: Element,
    det: Scalar,
}

impl PreparedMatrix {
    pub fn matrix(&self) -> &CMatrix2 {
        &self.m
    }

    pub fn det(&self) -> &Scalar {
        &self.det
    }
}

struct ActionTerms {
    /// `N(γz+δ)` or its starred coefficient.
    n_den: Scalar,
    /// `N(αz+β)` or its starred coefficient.
    n_num: Scalar,
    /// `V`- or `F ⊕ V`-part of `(αz+β)conj(γz+δ)` (starred at the boundary).
    part: Vec<Scalar>,
    /// Its `σ_c`-coefficient, `t · det`.
    sigma_coef: Scalar,
    t: Scalar,
}
