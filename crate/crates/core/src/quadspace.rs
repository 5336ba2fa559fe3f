//! Quadratic spaces with possibly degenerate forms, and their standard
//! extensions by `σ_c`, a hyperbolic plane, and a `ρ` line.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldDesc, Scalar};
use crate::linalg::Matrix;

/// A quadratic space `(V, q)` given by `q(e_i)` and the pairings `(e_i, e_j)`, `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSpace {
    field: FieldDesc,
    qdiag: Vec<Scalar>,
    /// Row-major `n × n`; only entries with `i < j` are meaningful, the rest are zero.
    pairs: Vec<Scalar>,
    labels: BTreeMap<String, usize>,
}

/// Which standard extension to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    /// `V ⊕ F σ_c` with `q(σ_c) = −c`.
    Sigma(Scalar),
    /// `V ⊕ U`, with `e`, `f` isotropic and `(e, f) = 1`.
    Hyperbolic,
    /// `V ⊕ U ⊕ F ρ` with `q(ρ) = −1`.
    HyperbolicRho,
}

impl QuadraticSpace {
    pub fn new(field: FieldDesc, qdiag: Vec<Scalar>) -> Result<Self> {
        let n = qdiag.len();
        if let Some(s) = qdiag.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, s.field()));
        }
        Ok(QuadraticSpace {
            field,
            qdiag,
            pairs: vec![field.zero(); n * n],
            labels: BTreeMap::new(),
        })
    }

    /// Diagonal form with small integer values.
    pub fn diagonal(field: FieldDesc, values: &[i64]) -> Self {
        Self::new(field, values.iter().map(|&v| field.from_i64(v)).collect()).unwrap()
    }

    /// Set `(e_i, e_j)` for `i ≠ j`.
    pub fn with_pair(mut self, i: usize, j: usize, value: Scalar) -> Result<Self> {
        let n = self.dim();
        if i == j || i >= n || j >= n {
            return Err(Error::BadArgument(format!("invalid pair index ({i}, {j})")));
        }
        if value.field() != self.field {
            return Err(Error::FieldMismatch(self.field, value.field()));
        }
        let (i, j) = (i.min(j), i.max(j));
        self.pairs[i * n + j] = value;
        Ok(self)
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.qdiag.len()
    }

    pub fn qdiag(&self) -> &[Scalar] {
        &self.qdiag
    }

    pub fn labels(&self) -> &BTreeMap<String, usize> {
        &self.labels
    }

    pub fn label(&self, name: &str) -> Option<usize> {
        self.labels.get(name).copied()
    }

    /// `(e_i, e_j)`, with `(e_i, e_i) = 2 q(e_i)`.
    pub fn gram(&self, i: usize, j: usize) -> Scalar {
        let n = self.dim();
        if i == j {
            &self.qdiag[i] + &self.qdiag[i]
        } else {
            self.pairs[i.min(j) * n + i.max(j)].clone()
        }
    }

    pub fn gram_matrix(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.gram(i, j));
            }
        }
        m
    }

    /// Nonzero strictly-upper pairings `(i, j, (e_i, e_j))`.
    pub fn pair_list(&self) -> Vec<(usize, usize, Scalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = &self.pairs[i * n + j];
                if !v.is_zero() {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.pairs.iter().all(|s| s.is_zero())
    }

    fn check_vec(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::SpaceMismatch);
        }
        if let Some(s) = v.iter().find(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch(self.field, s.field()));
        }
        Ok(())
    }

    pub fn q_value(&self, v: &[Scalar]) -> Result<Scalar> {
        self.check_vec(v)?;
        let n = self.dim();
        let mut acc = self.field.zero();
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            acc += &(&v[i].square() * &self.qdiag[i]);
            for j in i + 1..n {
                let p = &self.pairs[i * n + j];
                if !p.is_zero() && !v[j].is_zero() {
                    acc += &(&(&v[i] * &v[j]) * p);
                }
            }
        }
        Ok(acc)
    }

    pub fn bilinear(&self, u: &[Scalar], v: &[Scalar]) -> Result<Scalar> {
        self.check_vec(u)?;
        self.check_vec(v)?;
        let n = self.dim();
        let mut acc = self.field.zero();
        for (i, ui) in u.iter().enumerate().take(n) {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate().take(n) {
                if !vj.is_zero() {
                    acc += &(&(ui * vj) * &self.gram(i, j));
                }
            }
        }
        Ok(acc)
    }

    /// Basis of the radical `V^⊥`, the kernel of the Gram matrix.
    pub fn radical(&self) -> Vec<Vec<Scalar>> {
        self.gram_matrix().kernel()
    }

    pub fn is_in_radical(&self, v: &[Scalar]) -> Result<bool> {
        self.check_vec(v)?;
        let g = self.gram_matrix();
        Ok(g.apply(v).iter().all(|s| s.is_zero()))
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    /// Append generators for one of the standard extensions.
    pub fn extend(&self, which: &Extension) -> QuadraticSpace {
        let n = self.dim();
        let f = self.field;
        let (added, names): (Vec<Scalar>, Vec<&str>) = match which {
            Extension::Sigma(c) => (vec![-c], vec!["sigma"]),
            Extension::Hyperbolic => (vec![f.zero(), f.zero()], vec!["e", "f"]),
            Extension::HyperbolicRho => (vec![f.zero(), f.zero(), -f.one()], vec!["e", "f", "rho"]),
        };
        let m = n + added.len();
        let mut qdiag = self.qdiag.clone();
        qdiag.extend(added);
        let mut pairs = vec![f.zero(); m * m];
        for i in 0..n {
            for j in i + 1..n {
                pairs[i * m + j] = self.pairs[i * n + j].clone();
            }
        }
        if !matches!(which, Extension::Sigma(_)) {
            pairs[n * m + n + 1] = f.one();
        }
        let mut labels = BTreeMap::new();
        for (k, name) in names.iter().enumerate() {
            labels.insert(name.to_string(), n + k);
        }
        if let Extension::Sigma(c) = which {
            if c.is_one() {
                labels.insert("rho".to_string(), n);
            }
        }
        QuadraticSpace {
            field: f,
            qdiag,
            pairs,
            labels,
        }
    }

    /// Whether `self` is `base` with extra generators appended (leading-coordinate embedding).
    pub fn extends(&self, base: &QuadraticSpace) -> bool {
        let n = base.dim();
        if self.field != base.field || self.dim() < n {
            return false;
        }
        (0..n).all(|i| self.qdiag[i] == base.qdiag[i] && (i + 1..n).all(|j| self.gram(i, j) == base.gram(i, j)))
    }

    /// Invertible, preserves `q` and the pairing on basis vectors, and fixes the radical pointwise.
    ///
    /// Columns of `map` are the images of the basis vectors.
    pub fn is_orthogonal_fixing_radical(&self, map: &Matrix) -> bool {
        let n = self.dim();
        if map.rows != n || map.cols != n || map.det().map_or(true, |d| d.is_zero()) {
            return false;
        }
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| map.column(j)).collect();
        for i in 0..n {
            if self.q_value(&cols[i]).unwrap() != self.qdiag[i] {
                return false;
            }
            for j in i + 1..n {
                if self.bilinear(&cols[i], &cols[j]).unwrap() != self.gram(i, j) {
                    return false;
                }
            }
        }
        self.radical().iter().all(|r| map.apply(r) == *r)
    }

    /// Matrix of the reflection `u ↦ u − ((u,v)/q(v)) v`.
    pub fn reflection(&self, v: &[Scalar]) -> Result<Matrix> {
        let qv = self.q_value(v)?;
        if qv.is_zero() {
            return Err(Error::BadArgument("reflection in an isotropic vector".into()));
        }
        let n = self.dim();
        let mut m = Matrix::identity(self.field, n);
        for j in 0..n {
            let coef = self.bilinear(&self.basis_vector(j), v)? / &qv;
            for (i, vi) in v.iter().enumerate().take(n) {
                let x = m.get(i, j) - &(&coef * vi);
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn to_json(&self) -> SpaceJson {
        SpaceJson {
            field: self.field.to_string(),
            dim: self.dim(),
            qdiag: self.qdiag.iter().map(|s| s.to_string()).collect(),
            pairs: self
                .pair_list()
                .into_iter()
                .map(|(i, j, v)| (i, j, v.to_string()))
                .collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_json(json: &SpaceJson) -> Result<Self> {
        let field: FieldDesc = json.field.parse()?;
        if json.qdiag.len() != json.dim {
            return Err(Error::Parse(format!(
                "dim is {} but qdiag has {} entries",
                json.dim,
                json.qdiag.len()
            )));
        }
        let qdiag = json
            .qdiag
            .iter()
            .map(|s| field.parse_scalar(s))
            .collect::<Result<Vec<_>>>()?;
        let mut space = QuadraticSpace::new(field, qdiag)?;
        for (i, j, v) in &json.pairs {
            if i >= j {
                return Err(Error::Parse(format!("pair ({i}, {j}) is not strictly upper")));
            }
            space = space.with_pair(*i, *j, field.parse_scalar(v)?)?;
        }
        for (name, &idx) in &json.labels {
            if idx >= json.dim {
                return Err(Error::Parse(format!("label {name} out of range")));
            }
        }
        space.labels = json.labels.clone();
        space.check_labels()?;
        Ok(space)
    }

    /// Labeled generators have their defining values and are orthogonal to unlabeled ones.
    fn check_labels(&self) -> Result<()> {
        let f = self.field;
        let labeled: Vec<usize> = self.labels.values().copied().collect();
        for (name, &i) in &self.labels {
            let expected = match name.as_str() {
                "e" | "f" => Some(f.zero()),
                "rho" => Some(-f.one()),
                _ => None,
            };
            if let Some(x) = expected {
                if self.qdiag[i] != x {
                    return Err(Error::Parse(format!("labeled generator {name} has the wrong q-value")));
                }
            }
            for j in 0..self.dim() {
                if !labeled.contains(&j) && !self.gram(i, j).is_zero() {
                    return Err(Error::Parse(format!("labeled generator {name} pairs with e_{j}")));
                }
            }
        }
        if let (Some(e), Some(fi)) = (self.label("e"), self.label("f")) {
            if !self.gram(e, fi).is_one() {
                return Err(Error::Parse("(e, f) must be 1".into()));
            }
        }
        Ok(())
    }

    pub fn parse_vector(&self, coords: &[String]) -> Result<Vec<Scalar>> {
        if coords.len() != self.dim() {
            return Err(Error::Parse(format!(
                "vector has {} coordinates, space has dimension {}",
                coords.len(),
                self.dim()
            )));
        }
        coords.iter().map(|s| self.field.parse_scalar(s)).collect()
    }
}

/// Serialized form of a [`QuadraticSpace`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub field: String,
    pub dim: usize,
    pub qdiag: Vec<String>,
    #[serde(default)]
    pub pairs: Vec<(usize, usize, String)>,
    #[serde(default)]
    pub labels: BTreeMap<String, usize>,
}

pub fn vector_to_json(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}
