//! The Clifford algebra `C(V, q)` of an arbitrary quadratic space.
//!
//! Basis monomials `e_S` are bitmasks over generator indices, read in
//! increasing order. Products of monomials are rewritten into this canonical
//! order with `e_j e_i = (e_i, e_j) − e_i e_j` and `e_i e_i = q(e_i)`, which
//! works for non-orthogonal bases without diagonalizing.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldDesc, Scalar};
use crate::linalg::Matrix;
use crate::quadspace::{Extension, QuadraticSpace};

/// Largest number of generators supported.
pub const MAX_GENERATORS: usize = 16;
/// Monomial products are tabulated up to this many generators.
const TABLE_MAX: usize = 8;

type Terms = Vec<(u32, Scalar)>;

pub struct CliffordAlgebra {
    space: QuadraticSpace,
    table: OnceLock<Vec<Terms>>,
    reversal: OnceLock<Vec<Terms>>,
    fault: bool,
    hyperbolic: OnceLock<Arc<CliffordAlgebra>>,
    hyperbolic_rho: OnceLock<Arc<CliffordAlgebra>>,
    sigma: Mutex<HashMap<Scalar, Arc<CliffordAlgebra>>>,
}

impl fmt::Debug for CliffordAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CliffordAlgebra").field("space", &self.space).finish()
    }
}

impl PartialEq for CliffordAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.fault == other.fault
    }
}

impl CliffordAlgebra {
    pub fn new(space: QuadraticSpace) -> Result<Arc<Self>> {
        Self::build(space, false)
    }

    /// An algebra whose product is deliberately wrong (`e_0 e_1` picks up a
    /// sign), used to check that the verification suites catch defects.
    #[doc(hidden)]
    pub fn new_faulty(space: QuadraticSpace) -> Result<Arc<Self>> {
        Self::build(space, true)
    }

    fn build(space: QuadraticSpace, fault: bool) -> Result<Arc<Self>> {
        if space.dim() > MAX_GENERATORS {
            return Err(Error::TooLarge(space.dim() as u128, MAX_GENERATORS as u128));
        }
        Ok(Arc::new(CliffordAlgebra {
            space,
            table: OnceLock::new(),
            reversal: OnceLock::new(),
            fault,
            hyperbolic: OnceLock::new(),
            hyperbolic_rho: OnceLock::new(),
            sigma: Mutex::new(HashMap::new()),
        }))
    }

    pub fn space(&self) -> &QuadraticSpace {
        &self.space
    }

    pub fn field(&self) -> FieldDesc {
        self.space.field()
    }

    pub fn ngens(&self) -> usize {
        self.space.dim()
    }

    /// Dimension `2^n` of the algebra.
    pub fn dim(&self) -> usize {
        1 << self.ngens()
    }

    /// `C(V_U)`, with `e`, `f` appended.
    pub fn hyperbolic(self: &Arc<Self>) -> Arc<CliffordAlgebra> {
        self.hyperbolic
            .get_or_init(|| Self::build(self.space.extend(&Extension::Hyperbolic), self.fault).unwrap())
            .clone()
    }

    /// `C(V_{U,F})`, with `e`, `f`, `ρ` appended.
    pub fn hyperbolic_rho(self: &Arc<Self>) -> Arc<CliffordAlgebra> {
        self.hyperbolic_rho
            .get_or_init(|| Self::build(self.space.extend(&Extension::HyperbolicRho), self.fault).unwrap())
            .clone()
    }

    /// `C(V_F^c)`, with `σ_c` appended.
    pub fn sigma(self: &Arc<Self>, c: &Scalar) -> Arc<CliffordAlgebra> {
        let mut cache = self.sigma.lock().unwrap();
        cache
            .entry(c.clone())
            .or_insert_with(|| Self::build(self.space.extend(&Extension::Sigma(c.clone())), self.fault).unwrap())
            .clone()
    }

    /// `C(V_F)`, where `ρ = σ_1`.
    pub fn rho(self: &Arc<Self>) -> Arc<CliffordAlgebra> {
        self.sigma(&self.field().one())
    }

    fn q(&self, i: usize) -> Scalar {
        self.space.qdiag()[i].clone()
    }

    /// `e_S · e_j` in canonical form.
    fn mul_generator(&self, s: u32, j: usize) -> Terms {
        let bit = 1u32 << j;
        if s == 0 || (31 - s.leading_zeros()) < j as u32 {
            return vec![(s | bit, self.field().one())];
        }
        let k = (31 - s.leading_zeros()) as usize;
        if k == j {
            return vec![(s & !bit, self.q(j))];
        }
        // e_S e_j = e_{S'} e_k e_j = (e_j, e_k) e_{S'} − (e_{S'} e_j) e_k, with k > every index left
        let rest = s & !(1u32 << k);
        let mut out: Terms = Vec::new();
        let b = self.space.gram(j, k);
        if !b.is_zero() {
            out.push((rest, b));
        }
        for (m, coef) in self.mul_generator(rest, j) {
            out.push((m | (1u32 << k), -coef));
        }
        out
    }

    fn mono_mul_uncached(&self, s: u32, t: u32) -> Terms {
        let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
        acc.insert(s, self.field().one());
        let mut rest = t;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut next: BTreeMap<u32, Scalar> = BTreeMap::new();
            for (m, c) in acc {
                for (m2, c2) in self.mul_generator(m, j) {
                    accumulate(&mut next, m2, &c * &c2);
                }
            }
            acc = next;
        }
        let mut out: Terms = acc.into_iter().collect();
        if self.fault && s == 1 && t == 2 {
            for (_, c) in out.iter_mut() {
                *c = -&*c;
            }
        }
        out
    }

    fn table(&self) -> Option<&Vec<Terms>> {
        if self.ngens() > TABLE_MAX {
            return None;
        }
        Some(self.table.get_or_init(|| {
            let d = self.dim() as u32;
            let mut t = Vec::with_capacity((d * d) as usize);
            for s in 0..d {
                for u in 0..d {
                    t.push(self.mono_mul_uncached(s, u));
                }
            }
            t
        }))
    }

    /// `e_S · e_T` as a canonical linear combination.
    pub fn mono_mul(&self, s: u32, t: u32) -> std::borrow::Cow<'_, Terms> {
        match self.table() {
            Some(tab) => std::borrow::Cow::Borrowed(&tab[(s as usize) * self.dim() + t as usize]),
            None => std::borrow::Cow::Owned(self.mono_mul_uncached(s, t)),
        }
    }

    /// Reversal `e_{i_k} ⋯ e_{i_1}` of `e_S`, computed by multiplying out.
    fn reversal_uncached(&self, s: u32) -> Terms {
        let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
        acc.insert(0, self.field().one());
        let mut idx: Vec<usize> = (0..self.ngens()).filter(|i| s >> i & 1 == 1).collect();
        idx.reverse();
        for j in idx {
            let mut next = BTreeMap::new();
            for (m, c) in acc {
                for (m2, c2) in self.mul_generator(m, j) {
                    accumulate(&mut next, m2, &c * &c2);
                }
            }
            acc = next;
        }
        acc.into_iter().collect()
    }

    fn reversal(&self, s: u32) -> std::borrow::Cow<'_, Terms> {
        if self.ngens() > 12 {
            return std::borrow::Cow::Owned(self.reversal_uncached(s));
        }
        let tab = self
            .reversal
            .get_or_init(|| (0..self.dim() as u32).map(|m| self.reversal_uncached(m)).collect());
        std::borrow::Cow::Borrowed(&tab[s as usize])
    }
}

fn accumulate(map: &mut BTreeMap<u32, Scalar>, key: u32, value: Scalar) {
    if value.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(value);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &value;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Graded projections of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Scalar,
    Vector,
    Paravector,
    Even,
    Odd,
}

/// The three involutions of `C(V, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    /// `α ↦ α′`, negating odd monomials.
    Grade,
    /// `α ↦ α*`, reversing products.
    Transpose,
    /// `α ↦ ᾱ = (α′)*`.
    Conj,
}

/// An element of a Clifford algebra: coefficients on canonical monomials, no zeros stored.
#[derive(Clone)]
pub struct Element {
    alg: Arc<CliffordAlgebra>,
    terms: BTreeMap<u32, Scalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl std::hash::Hash for Element {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = generator_names(self.alg.space());
        let mut first = true;
        for (&m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m == 0 {
                write!(f, "{c}")?;
                continue;
            }
            if !c.is_one() {
                write!(f, "({c})")?;
            }
            for (i, name) in names.iter().enumerate() {
                if m >> i & 1 == 1 {
                    write!(f, "{name}")?;
                }
            }
        }
        Ok(())
    }
}

fn generator_names(space: &QuadraticSpace) -> Vec<String> {
    let mut names: Vec<String> = (0..space.dim()).map(|i| format!("e{}", i + 1)).collect();
    for (label, &i) in space.labels() {
        if label != "rho" || !space.labels().contains_key("sigma") {
            names[i] = label.clone();
        }
    }
    names
}

impl Element {
    pub fn zero(alg: &Arc<CliffordAlgebra>) -> Self {
        Element {
            alg: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(alg: &Arc<CliffordAlgebra>, s: Scalar) -> Self {
        Self::monomial(alg, 0, s)
    }

    pub fn one(alg: &Arc<CliffordAlgebra>) -> Self {
        Self::scalar(alg, alg.field().one())
    }

    pub fn from_i64(alg: &Arc<CliffordAlgebra>, n: i64) -> Self {
        Self::scalar(alg, alg.field().from_i64(n))
    }

    pub fn monomial(alg: &Arc<CliffordAlgebra>, mask: u32, coeff: Scalar) -> Self {
        assert_eq!(coeff.field(), alg.field(), "coefficient from another field");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mask, coeff);
        }
        Element {
            alg: alg.clone(),
            terms,
        }
    }

    pub fn generator(alg: &Arc<CliffordAlgebra>, i: usize) -> Self {
        Self::monomial(alg, 1 << i, alg.field().one())
    }

    /// The vector with the given coordinates.
    pub fn vector(alg: &Arc<CliffordAlgebra>, coords: &[Scalar]) -> Result<Self> {
        if coords.len() != alg.ngens() {
            return Err(Error::SpaceMismatch);
        }
        let mut terms = BTreeMap::new();
        for (i, c) in coords.iter().enumerate() {
            if c.field() != alg.field() {
                return Err(Error::FieldMismatch(alg.field(), c.field()));
            }
            if !c.is_zero() {
                terms.insert(1u32 << i, c.clone());
            }
        }
        Ok(Element {
            alg: alg.clone(),
            terms,
        })
    }

    /// The paravector `a + v`, coordinates given as `[a, v_1, …, v_n]`.
    pub fn paravector(alg: &Arc<CliffordAlgebra>, coords: &[Scalar]) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self::scalar(alg, coords[0].clone()) + Self::vector(alg, &coords[1..])?)
    }

    pub fn from_terms(alg: &Arc<CliffordAlgebra>, terms: impl IntoIterator<Item = (u32, Scalar)>) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            assert!(m < alg.dim() as u32, "monomial outside the algebra");
            accumulate(&mut map, m, c);
        }
        Element {
            alg: alg.clone(),
            terms: map,
        }
    }

    pub fn algebra(&self) -> &Arc<CliffordAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> FieldDesc {
        self.alg.field()
    }

    pub fn terms(&self) -> &BTreeMap<u32, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, mask: u32) -> Scalar {
        self.terms.get(&mask).cloned().unwrap_or_else(|| self.field().zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_algebra(&self, other: &Element) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.same_algebra(other)?;
        let mut terms = self.terms.clone();
        for (&m, c) in &other.terms {
            accumulate(&mut terms, m, c.clone());
        }
        Ok(Element {
            alg: self.alg.clone(),
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element> {
        self.checked_add(&other.neg_ref())
    }

    /// The product `x · y`.
    pub fn checked_mul(&self, other: &Element) -> Result<Element> {
        self.same_algebra(other)?;
        let mut acc = BTreeMap::new();
        for (&s, a) in &self.terms {
            for (&t, b) in &other.terms {
                let ab = a * b;
                for (m, c) in self.alg.mono_mul(s, t).iter() {
                    accumulate(&mut acc, *m, &ab * c);
                }
            }
        }
        Ok(Element {
            alg: self.alg.clone(),
            terms: acc,
        })
    }

    fn neg_ref(&self) -> Element {
        Element {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Element::zero(&self.alg);
        }
        Element {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(&m, c)| (m, c * s)).collect(),
        }
    }

    /// Divide by a scalar.
    pub fn div_scalar(&self, s: &Scalar) -> Result<Element> {
        Ok(self.scale(&s.inv()?))
    }

    pub fn grade(&self) -> Element {
        Element {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&m, c)| (m, if m.count_ones() % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn transpose(&self) -> Element {
        let mut acc = BTreeMap::new();
        for (&m, c) in &self.terms {
            for (m2, c2) in self.alg.reversal(m).iter() {
                accumulate(&mut acc, *m2, c * c2);
            }
        }
        Element {
            alg: self.alg.clone(),
            terms: acc,
        }
    }

    pub fn conj(&self) -> Element {
        self.grade().transpose()
    }

    pub fn involution(&self, kind: Involution) -> Element {
        match kind {
            Involution::Grade => self.grade(),
            Involution::Transpose => self.transpose(),
            Involution::Conj => self.conj(),
        }
    }

    /// `N(x) = x · x̄`.
    pub fn norm(&self) -> Element {
        self * self.conj()
    }

    /// The norm as a scalar, or `NotScalar`.
    pub fn norm_scalar(&self) -> Result<Scalar> {
        self.norm().as_scalar()
    }

    pub fn part(&self, kind: Part) -> Element {
        let keep = |m: u32| match kind {
            Part::Scalar => m == 0,
            Part::Vector => m.count_ones() == 1,
            Part::Paravector => m.count_ones() <= 1,
            Part::Even => m.count_ones().is_multiple_of(2),
            Part::Odd => m.count_ones() % 2 == 1,
        };
        Element {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(&m, _)| keep(m))
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        }
    }

    pub fn scalar_part(&self) -> Scalar {
        self.coeff(0)
    }

    /// Coordinates of the vector part.
    pub fn vector_coords(&self) -> Vec<Scalar> {
        (0..self.alg.ngens()).map(|i| self.coeff(1 << i)).collect()
    }

    /// `[a, v_1, …, v_n]` for the paravector part `a + v`.
    pub fn paravector_coords(&self) -> Vec<Scalar> {
        let mut out = vec![self.scalar_part()];
        out.extend(self.vector_coords());
        out
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|&m| m == 0)
    }

    pub fn is_vector(&self) -> bool {
        self.terms.keys().all(|&m| m.count_ones() == 1)
    }

    pub fn is_paravector(&self) -> bool {
        self.terms.keys().all(|&m| m.count_ones() <= 1)
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|&m| m.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|&m| m.count_ones() % 2 == 1)
    }

    pub fn as_scalar(&self) -> Result<Scalar> {
        if self.is_scalar() {
            Ok(self.scalar_part())
        } else {
            Err(Error::NotScalar)
        }
    }

    /// Matrix of `y ↦ x · y` on the coefficient space.
    fn left_mul_matrix(&self) -> Matrix {
        let d = self.alg.dim();
        let mut m = Matrix::zeros(self.field(), d, d);
        for t in 0..d as u32 {
            for (&s, a) in &self.terms {
                for (r, c) in self.alg.mono_mul(s, t).iter() {
                    let v = m.get(*r as usize, t as usize) + &(a * c);
                    m.set(*r as usize, t as usize, v);
                }
            }
        }
        m
    }

    /// Two-sided inverse.
    pub fn cinv(&self) -> Result<Element> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let conj = self.conj();
        let n = self * &conj;
        if let Ok(s) = n.as_scalar() {
            if !s.is_zero() {
                return conj.div_scalar(&s);
            }
        }
        let m = self.left_mul_matrix();
        let mut rhs = vec![self.field().zero(); self.alg.dim()];
        rhs[0] = self.field().one();
        if m.rank() < self.alg.dim() {
            return Err(Error::NotInvertible);
        }
        let y = m.solve(&rhs).ok_or(Error::NotInvertible)?;
        Ok(Element::from_terms(
            &self.alg,
            y.into_iter().enumerate().map(|(i, c)| (i as u32, c)),
        ))
    }

    pub fn is_invertible(&self) -> bool {
        self.cinv().is_ok()
    }

    /// The same element inside a larger algebra whose space extends this one.
    pub fn embed(&self, target: &Arc<CliffordAlgebra>) -> Result<Element> {
        if Arc::ptr_eq(&self.alg, target) {
            return Ok(self.clone());
        }
        if !target.space().extends(self.alg.space()) {
            return Err(Error::NotASuperspace);
        }
        Ok(Element {
            alg: target.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Restrict to a subalgebra on the leading generators; fails if other generators occur.
    pub fn restrict(&self, target: &Arc<CliffordAlgebra>) -> Result<Element> {
        if !self.alg.space().extends(target.space()) {
            return Err(Error::NotASuperspace);
        }
        let limit = target.dim() as u32;
        if self.terms.keys().any(|&m| m >= limit) {
            return Err(Error::WrongTargetSpace);
        }
        Ok(Element {
            alg: target.clone(),
            terms: self.terms.clone(),
        })
    }

    /// `α_ρ = α₊ + α₋ ρ` in `C(V_F)`.
    pub fn rho_map(&self) -> Result<Element> {
        self.rho_map_into(&self.alg.rho())
    }

    /// `α_ρ` in a given algebra containing a `ρ` generator, such as `C(V_{U,F})`.
    pub fn rho_map_into(&self, target: &Arc<CliffordAlgebra>) -> Result<Element> {
        let rho = target.space().label("rho").ok_or(Error::NoRhoGenerator)?;
        let even = self.part(Part::Even).embed(target)?;
        let odd = self.part(Part::Odd).embed(target)?;
        Ok(even + odd * Element::generator(target, rho))
    }

    /// `υ = (ef − fe) ρ` in `C(V_{U,F})`.
    pub fn upsilon(target: &Arc<CliffordAlgebra>) -> Result<Element> {
        let (e, f, rho) = uf_indices(target)?;
        let e = Element::generator(target, e);
        let f = Element::generator(target, f);
        let rho = Element::generator(target, rho);
        Ok((&e * &f - &f * &e) * rho)
    }

    /// `α_υ = α₊ + α₋ υ` in `C(V_{U,F})`.
    pub fn upsilon_map(&self) -> Result<Element> {
        self.upsilon_map_into(&self.alg.hyperbolic_rho())
    }

    pub fn upsilon_map_into(&self, target: &Arc<CliffordAlgebra>) -> Result<Element> {
        let upsilon = Element::upsilon(target).map_err(|_| Error::WrongTargetSpace)?;
        let even = self.part(Part::Even).embed(target).map_err(|_| Error::WrongTargetSpace)?;
        let odd = self.part(Part::Odd).embed(target).map_err(|_| Error::WrongTargetSpace)?;
        Ok(even + odd * upsilon)
    }

    /// `ι(a + v) = v − aρ`, as coordinates in `V_F` (ρ last).
    pub fn iota(&self) -> Result<Vec<Scalar>> {
        if !self.is_paravector() {
            return Err(Error::NotAParavector);
        }
        let mut out = self.vector_coords();
        out.push(-self.scalar_part());
        Ok(out)
    }

    /// Inverse of [`Element::iota`]: the paravector `a + v` from `v − aρ`.
    pub fn iota_inv(alg: &Arc<CliffordAlgebra>, coords: &[Scalar]) -> Result<Element> {
        let n = alg.ngens();
        if coords.len() != n + 1 {
            return Err(Error::SpaceMismatch);
        }
        let mut para = vec![-&coords[n]];
        para.extend_from_slice(&coords[..n]);
        Element::paravector(alg, &para)
    }

    pub fn to_json(&self) -> ElementJson {
        self.terms
            .iter()
            .map(|(&m, c)| TermJson {
                indices: (0..32).filter(|i| m >> i & 1 == 1).collect(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_json(alg: &Arc<CliffordAlgebra>, json: &ElementJson) -> Result<Element> {
        let mut out = Element::zero(alg);
        for term in json {
            let mut x = Element::scalar(alg, alg.field().parse_scalar(&term.coeff)?);
            for &i in &term.indices {
                if i >= alg.ngens() {
                    return Err(Error::Parse(format!("generator index {i} out of range")));
                }
                x = x * Element::generator(alg, i);
            }
            out = out + x;
        }
        Ok(out)
    }
}

/// Indices of `e`, `f`, `ρ` in `C(V_{U,F})`.
pub(crate) fn uf_indices(alg: &CliffordAlgebra) -> Result<(usize, usize, usize)> {
    let s = alg.space();
    match (s.label("e"), s.label("f"), s.label("rho")) {
        (Some(e), Some(f), Some(r)) => Ok((e, f, r)),
        _ => Err(Error::WrongTargetSpace),
    }
}

/// One term of a serialized element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub indices: Vec<usize>,
    pub coeff: String,
}

pub type ElementJson = Vec<TermJson>;

macro_rules! elt_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Element> for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                self.$checked(rhs).expect("elements of different algebras")
            }
        }
        impl $trait<Element> for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Element> for Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                (&self).$method(rhs)
            }
        }
        impl $trait<Element> for &Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                self.$method(&rhs)
            }
        }
    };
}

elt_binop!(Add, add, checked_add);
elt_binop!(Sub, sub, checked_sub);
elt_binop!(Mul, mul, checked_mul);

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.neg_ref()
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDesc = FieldDesc::Rationals;

    fn q(n: i64) -> Scalar {
        Q.from_i64(n)
    }

    fn skew_space() -> QuadraticSpace {
        QuadraticSpace::diagonal(Q, &[2, -1, 0])
            .with_pair(0, 1, q(3))
            .unwrap()
            .with_pair(0, 2, q(1))
            .unwrap()
    }

    fn alg() -> Arc<CliffordAlgebra> {
        CliffordAlgebra::new(skew_space()).unwrap()
    }

    fn gens(a: &Arc<CliffordAlgebra>) -> Vec<Element> {
        (0..a.ngens()).map(|i| Element::generator(a, i)).collect()
    }

    #[test]
    fn generator_relations() {
        let a = alg();
        let e = gens(&a);
        for i in 0..3 {
            assert_eq!(&e[i] * &e[i], Element::scalar(&a, a.space().qdiag()[i].clone()));
            for j in 0..3 {
                let anti = &e[i] * &e[j] + &e[j] * &e[i];
                assert_eq!(anti, Element::scalar(&a, a.space().gram(i, j)));
            }
        }
    }

    #[test]
    fn orthogonal_bivector_square() {
        let a = CliffordAlgebra::new(QuadraticSpace::diagonal(Q, &[3, 5])).unwrap();
        let e = gens(&a);
        let b = &e[0] * &e[1];
        assert_eq!(&b * &b, Element::from_i64(&a, -15));
        assert_eq!(b.transpose(), -&b);
    }

    #[test]
    fn vector_square_is_q() {
        let a = alg();
        let coords = vec![q(1), q(-2), q(5)];
        let v = Element::vector(&a, &coords).unwrap();
        assert_eq!((&v * &v).as_scalar().unwrap(), a.space().q_value(&coords).unwrap());
        assert_eq!(v.conj(), -&v);
        assert_eq!(v.norm().as_scalar().unwrap(), -a.space().q_value(&coords).unwrap());
    }

    #[test]
    fn parts() {
        let a = alg();
        let e = gens(&a);
        let x = Element::from_i64(&a, 3) + &e[0] + &e[0] * &e[1];
        assert_eq!(x.part(Part::Scalar), Element::from_i64(&a, 3));
        assert_eq!(x.part(Part::Even) + x.part(Part::Odd), x);
        let p = Element::from_i64(&a, 3) + &e[0];
        assert!(p.is_paravector());
        assert!(!p.is_vector());
    }

    #[test]
    fn inverses() {
        let a = alg();
        let e = gens(&a);
        let v = &e[0] + &e[1];
        let qv = a.space().q_value(&[q(1), q(1), q(0)]).unwrap();
        assert_eq!(v.cinv().unwrap(), v.div_scalar(&qv).unwrap());
        let deg = CliffordAlgebra::new(QuadraticSpace::diagonal(Q, &[1, 0])).unwrap();
        let r = Element::generator(&deg, 1);
        let one = Element::one(&deg);
        assert_eq!((&one + &r).cinv().unwrap(), &one - &r);
        let u = CliffordAlgebra::new(QuadraticSpace::diagonal(Q, &[])).unwrap().hyperbolic();
        assert!(matches!(Element::generator(&u, 0).cinv(), Err(Error::NotInvertible)));
        // slow path: 1 + e1 e2 in a form where the norm is not scalar
        let x = Element::one(&a) + &e[0] * &e[2] + &e[1];
        if let Ok(inv) = x.cinv() {
            assert_eq!(&x * &inv, Element::one(&a));
            assert_eq!(&inv * &x, Element::one(&a));
        }
    }

    #[test]
    fn embedding_multiplies() {
        let a = alg();
        let big = a.sigma(&q(2));
        let e = gens(&a);
        let x = &e[0] * &e[1] + &e[2];
        let y = &e[1] + Element::from_i64(&a, 4);
        assert_eq!((&x * &y).embed(&big).unwrap(), x.embed(&big).unwrap() * y.embed(&big).unwrap());
        let sigma = Element::generator(&big, 3);
        assert_eq!(e[0].embed(&big).unwrap() * &sigma, Element::monomial(&big, 0b1001, q(1)));
        let other = CliffordAlgebra::new(QuadraticSpace::diagonal(Q, &[7])).unwrap();
        assert!(matches!(x.embed(&other), Err(Error::NotASuperspace)));
    }

    #[test]
    fn upsilon_squares_to_minus_one() {
        // (ef − fe)² = ef + fe = 1, ρ commutes with the even factor, ρ² = −1
        let a = alg();
        let uf = a.hyperbolic_rho();
        let u = Element::upsilon(&uf).unwrap();
        assert_eq!(&u * &u, Element::from_i64(&uf, -1));
        let (_, _, r) = uf_indices(&uf).unwrap();
        let rho = Element::generator(&uf, r);
        let (e, f) = (Element::generator(&uf, 3), Element::generator(&uf, 4));
        assert_eq!(&rho * &u, &f * &e - &e * &f);
    }

    #[test]
    fn iota_values() {
        let a = alg();
        let one = Element::one(&a);
        assert_eq!(one.iota().unwrap(), vec![q(0), q(0), q(0), q(-1)]);
        let xi = Element::paravector(&a, &[q(2), q(1), q(0), q(3)]).unwrap();
        let rho_space = a.rho();
        let img = xi.iota().unwrap();
        let qf = a.space().q_value(&[q(1), q(0), q(3)]).unwrap() - q(4);
        assert_eq!(rho_space.space().q_value(&img).unwrap(), qf);
        assert_eq!(Element::iota_inv(&a, &img).unwrap(), xi);
        // ι(ξ) = −ξ_ρ ρ
        let rho = Element::generator(&rho_space, 3);
        assert_eq!(
            Element::vector(&rho_space, &img).unwrap(),
            -(xi.rho_map().unwrap() * rho)
        );
        let bivector = Element::generator(&a, 0) * Element::generator(&a, 1);
        assert!(matches!((&one + bivector).iota(), Err(Error::NotAParavector)));
    }

    #[test]
    fn json_round_trip() {
        let a = alg();
        let e = gens(&a);
        let x = Element::from_i64(&a, 3) + (&e[0] * &e[2]).scale(&Q.fraction(1, 2).unwrap());
        let text = serde_json::to_string(&x.to_json()).unwrap();
        assert_eq!(text, r#"[{"indices":[],"coeff":"3"},{"indices":[0,2],"coeff":"1/2"}]"#);
        let back: ElementJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Element::from_json(&a, &back).unwrap(), x);
    }

    #[test]
    fn faulty_algebra_breaks_anticommutation() {
        let a = CliffordAlgebra::new_faulty(QuadraticSpace::diagonal(Q, &[1, 1])).unwrap();
        let e = gens(&a);
        assert_ne!(&e[0] * &e[1] + &e[1] * &e[0], Element::zero(&a));
    }
}
