//! 2×2 matrices over a Clifford algebra.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::clifford::{CliffordAlgebra, Element, ElementJson, Involution};
use crate::error::{Error, Result};
use crate::field::Scalar;

/// The matrix `(a b; c d)` with entries in one `C(V, q)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CMatrix2 {
    pub a: Element,
    pub b: Element,
    pub c: Element,
    pub d: Element,
}

impl fmt::Debug for CMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {} ; {} | {})", self.a, self.b, self.c, self.d)
    }
}

impl CMatrix2 {
    pub fn new(a: Element, b: Element, c: Element, d: Element) -> Result<Self> {
        let alg = a.algebra();
        for x in [&b, &c, &d] {
            if !(Arc::ptr_eq(x.algebra(), alg) || **x.algebra() == **alg) {
                return Err(Error::SpaceMismatch);
            }
        }
        Ok(CMatrix2 { a, b, c, d })
    }

    pub fn algebra(&self) -> &Arc<CliffordAlgebra> {
        self.a.algebra()
    }

    pub fn identity(alg: &Arc<CliffordAlgebra>) -> Self {
        CMatrix2 {
            a: Element::one(alg),
            b: Element::zero(alg),
            c: Element::zero(alg),
            d: Element::one(alg),
        }
    }

    pub fn zero(alg: &Arc<CliffordAlgebra>) -> Self {
        let z = Element::zero(alg);
        CMatrix2 {
            a: z.clone(),
            b: z.clone(),
            c: z.clone(),
            d: z,
        }
    }

    pub fn entries(&self) -> [&Element; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn mul(&self, o: &CMatrix2) -> CMatrix2 {
        CMatrix2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn add(&self, o: &CMatrix2) -> CMatrix2 {
        CMatrix2 {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            c: &self.c + &o.c,
            d: &self.d + &o.d,
        }
    }

    pub fn scale(&self, s: &Scalar) -> CMatrix2 {
        CMatrix2 {
            a: self.a.scale(s),
            b: self.b.scale(s),
            c: self.c.scale(s),
            d: self.d.scale(s),
        }
    }

    /// Entrywise embedding into a larger algebra.
    pub fn embed(&self, target: &Arc<CliffordAlgebra>) -> Result<CMatrix2> {
        Ok(CMatrix2 {
            a: self.a.embed(target)?,
            b: self.b.embed(target)?,
            c: self.c.embed(target)?,
            d: self.d.embed(target)?,
        })
    }

    /// The involutions of `C(V_U)` transported to matrices.
    pub fn involution(&self, kind: Involution) -> CMatrix2 {
        match kind {
            Involution::Grade => CMatrix2 {
                a: self.a.grade(),
                b: -self.b.grade(),
                c: -self.c.grade(),
                d: self.d.grade(),
            },
            Involution::Transpose => CMatrix2 {
                a: self.d.conj(),
                b: self.b.conj(),
                c: self.c.conj(),
                d: self.a.conj(),
            },
            Involution::Conj => self.adjugate(),
        }
    }

    /// `(δ*, −β*; −γ*, α*)`.
    pub fn adjugate(&self) -> CMatrix2 {
        CMatrix2 {
            a: self.d.transpose(),
            b: -self.b.transpose(),
            c: -self.c.transpose(),
            d: self.a.transpose(),
        }
    }

    /// `αδ* − βγ*` as an algebra element.
    pub fn pseudo_det_element(&self) -> Element {
        &self.a * self.d.transpose() - &self.b * self.c.transpose()
    }

    pub fn to_json(&self) -> CMatrixJson {
        CMatrixJson {
            a: self.a.to_json(),
            b: self.b.to_json(),
            c: self.c.to_json(),
            d: self.d.to_json(),
        }
    }

    pub fn from_json(alg: &Arc<CliffordAlgebra>, json: &CMatrixJson) -> Result<CMatrix2> {
        Ok(CMatrix2 {
            a: Element::from_json(alg, &json.a)?,
            b: Element::from_json(alg, &json.b)?,
            c: Element::from_json(alg, &json.c)?,
            d: Element::from_json(alg, &json.d)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CMatrixJson {
    pub a: ElementJson,
    pub b: ElementJson,
    pub c: ElementJson,
    pub d: ElementJson,
}
