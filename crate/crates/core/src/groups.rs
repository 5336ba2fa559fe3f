//! Clifford groups by membership predicate, the induced orthogonal maps, and
//! the identifications of 2×2 matrices over `C(V)` with `C(V_U)` and with the
//! even part of `C(V_{U,F})`.

use std::sync::Arc;

use crate::clifford::{uf_indices, CliffordAlgebra, Element};
use crate::cmatrix::CMatrix2;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// The groups recognized by [`in_group`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupTag {
    /// Units of the twisted center: invertible `x` with `x v = v x′`.
    TwistedCenter,
    Gamma,
    /// Homogeneous elements of `Γ`.
    GammaPlusMinus,
    GammaPlus,
    GammaMinus,
    /// Elements of `Γ` whose norm is a nonzero scalar.
    GammaFx,
    /// Elements of `Γ` of norm 1.
    Gamma1,
    TildeGamma,
    TildeGammaFx,
    TildeGamma1,
}

impl GroupTag {
    pub const ALL: [GroupTag; 10] = [
        GroupTag::TwistedCenter,
        GroupTag::Gamma,
        GroupTag::GammaPlusMinus,
        GroupTag::GammaPlus,
        GroupTag::GammaMinus,
        GroupTag::GammaFx,
        GroupTag::Gamma1,
        GroupTag::TildeGamma,
        GroupTag::TildeGammaFx,
        GroupTag::TildeGamma1,
    ];
}

/// `y ↦ x y x′⁻¹` on the given test elements, or `None` if `x` is not invertible.
fn twisted_images(x: &Element, tests: &[Element]) -> Option<Vec<Element>> {
    let inv_grade = x.cinv().ok()?.grade();
    Some(tests.iter().map(|v| x * v * &inv_grade).collect())
}

fn basis_vectors(alg: &Arc<CliffordAlgebra>) -> Vec<Element> {
    (0..alg.ngens()).map(|i| Element::generator(alg, i)).collect()
}

fn paravector_basis(alg: &Arc<CliffordAlgebra>) -> Vec<Element> {
    let mut out = vec![Element::one(alg)];
    out.extend(basis_vectors(alg));
    out
}

fn norm_is_unit(x: &Element) -> bool {
    x.norm_scalar().is_ok_and(|n| !n.is_zero())
}

fn norm_is_one(x: &Element) -> bool {
    x.norm_scalar().is_ok_and(|n| n.is_one())
}

pub fn in_group(x: &Element, tag: GroupTag) -> bool {
    let alg = x.algebra();
    let in_gamma = || {
        twisted_images(x, &basis_vectors(alg)).is_some_and(|imgs| imgs.iter().all(Element::is_vector))
    };
    let in_tilde = || {
        twisted_images(x, &paravector_basis(alg))
            .is_some_and(|imgs| imgs.iter().all(Element::is_paravector))
    };
    match tag {
        GroupTag::TwistedCenter => {
            let xg = x.grade();
            basis_vectors(alg).iter().all(|v| x * v == v * &xg) && x.is_invertible()
        }
        GroupTag::Gamma => in_gamma(),
        GroupTag::GammaPlusMinus => (x.is_even() || x.is_odd()) && in_gamma(),
        GroupTag::GammaPlus => x.is_even() && in_gamma(),
        GroupTag::GammaMinus => x.is_odd() && in_gamma(),
        GroupTag::GammaFx => norm_is_unit(x) && in_gamma(),
        GroupTag::Gamma1 => norm_is_one(x) && in_gamma(),
        GroupTag::TildeGamma => in_tilde(),
        GroupTag::TildeGammaFx => norm_is_unit(x) && in_tilde(),
        GroupTag::TildeGamma1 => norm_is_one(x) && in_tilde(),
    }
}

/// Matrix of `v ↦ x v x′⁻¹` on `V`; column `j` is the image of `e_j`.
pub fn pi(x: &Element) -> Result<Matrix> {
    let alg = x.algebra();
    let imgs = twisted_images(x, &basis_vectors(alg)).ok_or(Error::NotInCliffordGroup)?;
    if !imgs.iter().all(Element::is_vector) {
        return Err(Error::NotInCliffordGroup);
    }
    let n = alg.ngens();
    let mut m = Matrix::zeros(alg.field(), n, n);
    for (j, img) in imgs.iter().enumerate() {
        for (i, c) in img.vector_coords().into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Ok(m)
}

/// Matrix of `ξ ↦ x ξ x′⁻¹` on `F ⊕ V` in the basis `(1, e_1, …, e_n)`.
pub fn pi_tilde(x: &Element) -> Result<Matrix> {
    let alg = x.algebra();
    let imgs = twisted_images(x, &paravector_basis(alg)).ok_or(Error::NotInParavectorGroup)?;
    if !imgs.iter().all(Element::is_paravector) {
        return Err(Error::NotInParavectorGroup);
    }
    let n = alg.ngens() + 1;
    let mut m = Matrix::zeros(alg.field(), n, n);
    for (j, img) in imgs.iter().enumerate() {
        for (i, c) in img.paravector_coords().into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Ok(m)
}

/// `α ef + β e + γ′ f + δ′ fe` in `C(V_U)`.
pub fn matrix_to_cu(m: &CMatrix2) -> Element {
    let alg = m.algebra();
    let target = alg.hyperbolic();
    let n = alg.ngens();
    let e = Element::generator(&target, n);
    let f = Element::generator(&target, n + 1);
    let up = |x: &Element| x.embed(&target).expect("C(V) embeds in C(V_U)");
    up(&m.a) * &e * &f + up(&m.b) * &e + up(&m.c.grade()) * &f + up(&m.d.grade()) * &f * &e
}

/// Inverse of [`matrix_to_cu`].
///
/// Canonical monomials of `C(V_U)` are `e_S e^b f^c`, so `ψ = A₀ + A₁e + A₂f + A₃ef`
/// with `A_i ∈ C(V)`. Comparing with `δ′ + βe + γ′f + (α − δ′)ef` (using `fe = 1 − ef`)
/// gives the entries.
pub fn cu_to_matrix(psi: &Element, base: &Arc<CliffordAlgebra>) -> Result<CMatrix2> {
    let target = base.hyperbolic();
    if !(Arc::ptr_eq(psi.algebra(), &target) || **psi.algebra() == *target) {
        return Err(Error::WrongTargetSpace);
    }
    let n = base.ngens();
    let low = (1u32 << n) - 1;
    let mut parts: [Vec<(u32, crate::Scalar)>; 4] = Default::default();
    for (&m, c) in psi.terms() {
        parts[(m >> n) as usize].push((m & low, c.clone()));
    }
    let [a0, a1, a2, a3] = parts.map(|t| Element::from_terms(base, t));
    Ok(CMatrix2 {
        a: &a3 + &a0,
        b: a1,
        c: a2.grade(),
        d: a0.grade(),
    })
}

/// `α_ρ ef + β_ρ eρ + γ′_ρ fρ + δ′_ρ fe` in the even part of `C(V_{U,F})`.
pub fn matrix_to_cuf(m: &CMatrix2) -> Element {
    let alg = m.algebra();
    let target = alg.hyperbolic_rho();
    let (ei, fi, ri) = uf_indices(&target).expect("V_{U,F} is labeled");
    let e = Element::generator(&target, ei);
    let f = Element::generator(&target, fi);
    let rho = Element::generator(&target, ri);
    let r = |x: &Element| x.rho_map_into(&target).expect("C(V_{U,F}) has ρ");
    r(&m.a) * &e * &f + r(&m.b) * &e * &rho + r(&m.c.grade()) * &f * &rho + r(&m.d.grade()) * &f * &e
}

/// The same element written with `α_υ`: `α_υ ef + β_υ eρ + γ_υ fρ + δ_υ fe`.
pub fn matrix_to_cuf_upsilon(m: &CMatrix2) -> Element {
    let alg = m.algebra();
    let target = alg.hyperbolic_rho();
    let (ei, fi, ri) = uf_indices(&target).expect("V_{U,F} is labeled");
    let e = Element::generator(&target, ei);
    let f = Element::generator(&target, fi);
    let rho = Element::generator(&target, ri);
    let u = |x: &Element| x.upsilon_map_into(&target).expect("C(V_{U,F}) has υ");
    u(&m.a) * &e * &f + u(&m.b) * &e * &rho + u(&m.c) * &f * &rho + u(&m.d) * &f * &e
}

/// Recover `α` from `α_ρ = α₊ + α₋ρ` in `C(V_F)`.
fn rho_inverse(y: &Element, base: &Arc<CliffordAlgebra>) -> Result<Element> {
    let n = base.ngens();
    let rho_bit = 1u32 << n;
    let mut terms = Vec::new();
    for (&m, c) in y.terms() {
        let odd_part = m & rho_bit != 0;
        let s = m & !rho_bit;
        if (s.count_ones() % 2 == 1) != odd_part {
            return Err(Error::WrongTargetSpace);
        }
        terms.push((s, c.clone()));
    }
    Ok(Element::from_terms(base, terms))
}

/// Inverse of [`matrix_to_cuf`].
///
/// Canonical monomials are `e_S e^b f^c ρ^a = (−1)^{a(b+c)} e_S ρ^a e^b f^c`, giving
/// `ψ = Q₀ + Q₁e + Q₂f + Q₃ef` with `Q_i ∈ C(V_F)`. Since `α_ρ` commutes with `e`, `f`
/// and `ρ² = −1`, the entries are `δ′_ρ = Q₀`, `β_ρ = Q₁ρ`, `γ′_ρ = Q₂ρ`, `α_ρ = Q₃ + Q₀`.
pub fn cuf_to_matrix(psi: &Element, base: &Arc<CliffordAlgebra>) -> Result<CMatrix2> {
    let target = base.hyperbolic_rho();
    if !(Arc::ptr_eq(psi.algebra(), &target) || **psi.algebra() == *target) {
        return Err(Error::WrongTargetSpace);
    }
    if !psi.is_even() {
        return Err(Error::WrongTargetSpace);
    }
    let vf = base.rho();
    let n = base.ngens();
    let low = (1u32 << n) - 1;
    let mut parts: [Vec<(u32, crate::Scalar)>; 4] = Default::default();
    for (&m, c) in psi.terms() {
        let b = (m >> n) & 1;
        let cbit = (m >> (n + 1)) & 1;
        let a = (m >> (n + 2)) & 1;
        let coeff = if a * (b + cbit) % 2 == 1 { -c } else { c.clone() };
        parts[(b | (cbit << 1)) as usize].push(((m & low) | (a << n), coeff));
    }
    let [q0, q1, q2, q3] = parts.map(|t| Element::from_terms(&vf, t));
    let rho = Element::generator(&vf, n);
    Ok(CMatrix2 {
        a: rho_inverse(&(&q3 + &q0), base)?,
        b: rho_inverse(&(&q1 * &rho), base)?,
        c: rho_inverse(&(&q2 * &rho), base)?.grade(),
        d: rho_inverse(&q0, base)?.grade(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Involution;
    use crate::field::{FieldDesc, Scalar};
    use crate::quadspace::QuadraticSpace;

    const Q: FieldDesc = FieldDesc::Rationals;

    fn q(n: i64) -> Scalar {
        Q.from_i64(n)
    }

    fn alg() -> Arc<CliffordAlgebra> {
        CliffordAlgebra::new(
            QuadraticSpace::diagonal(Q, &[1, -2, 0]).with_pair(0, 1, q(1)).unwrap(),
        )
        .unwrap()
    }

    fn sample_matrix(a: &Arc<CliffordAlgebra>, k: i64) -> CMatrix2 {
        let e: Vec<Element> = (0..3).map(|i| Element::generator(a, i)).collect();
        CMatrix2 {
            a: Element::from_i64(a, k) + &e[0] * &e[1],
            b: &e[2] + Element::from_i64(a, 2),
            c: (&e[0] * &e[1] * &e[2]).scale(&q(k)) - &e[1],
            d: &e[0] + Element::from_i64(a, -1),
        }
    }

    #[test]
    fn scalars_and_vectors_in_groups() {
        let a = alg();
        let three = Element::from_i64(&a, 3);
        assert!(in_group(&three, GroupTag::Gamma));
        assert_eq!(pi(&three).unwrap(), Matrix::identity(Q, 3));
        let coords = vec![q(1), q(0), q(0)];
        let v = Element::vector(&a, &coords).unwrap();
        assert!(in_group(&v, GroupTag::GammaFx));
        assert!(!in_group(&v, GroupTag::Gamma1));
        assert!(in_group(&v, GroupTag::GammaMinus));
        assert_eq!(pi(&v).unwrap(), a.space().reflection(&coords).unwrap());
        let r = Element::generator(&a, 2);
        assert!(in_group(&(Element::one(&a) + r), GroupTag::TwistedCenter));
    }

    #[test]
    fn unit_vector_in_pin_group() {
        let a = CliffordAlgebra::new(QuadraticSpace::diagonal(Q, &[-1, 3])).unwrap();
        let v = Element::generator(&a, 0);
        assert!(in_group(&v, GroupTag::Gamma1));
    }

    #[test]
    fn paravector_group() {
        let a = alg();
        let xi = Element::paravector(&a, &[q(2), q(1), q(0), q(1)]).unwrap();
        assert!(in_group(&xi, GroupTag::TildeGammaFx));
        let m = pi_tilde(&xi).unwrap();
        assert_eq!(m.det().unwrap(), q(1));
        assert_eq!(pi_tilde(&Element::from_i64(&a, 5)).unwrap(), Matrix::identity(Q, 4));
        let inv = pi_tilde(&xi.conj()).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(Q, 4));
    }

    #[test]
    fn cu_basics() {
        let a = alg();
        let u = a.hyperbolic();
        assert_eq!(matrix_to_cu(&CMatrix2::identity(&a)), Element::one(&u));
        let m = CMatrix2 {
            a: Element::zero(&a),
            b: Element::one(&a),
            c: Element::zero(&a),
            d: Element::zero(&a),
        };
        assert_eq!(matrix_to_cu(&m), Element::generator(&u, 3));
    }

    #[test]
    fn cu_round_trip_and_product() {
        let a = alg();
        let m1 = sample_matrix(&a, 2);
        let m2 = sample_matrix(&a, -3);
        let psi = matrix_to_cu(&m1);
        assert_eq!(cu_to_matrix(&psi, &a).unwrap(), m1);
        assert_eq!(matrix_to_cu(&m1.mul(&m2)), &psi * matrix_to_cu(&m2));
        for kind in [Involution::Grade, Involution::Transpose, Involution::Conj] {
            assert_eq!(matrix_to_cu(&m1.involution(kind)), psi.involution(kind));
        }
    }

    #[test]
    fn cuf_round_trip_and_product() {
        let a = alg();
        let m1 = sample_matrix(&a, 2);
        let m2 = sample_matrix(&a, 5);
        let psi = matrix_to_cuf(&m1);
        assert!(psi.is_even());
        assert_eq!(psi, matrix_to_cuf_upsilon(&m1));
        assert_eq!(cuf_to_matrix(&psi, &a).unwrap(), m1);
        assert_eq!(matrix_to_cuf(&m1.mul(&m2)), &psi * matrix_to_cuf(&m2));
        assert_eq!(matrix_to_cuf(&m1.adjugate()), psi.transpose());
        assert_eq!(matrix_to_cuf(&CMatrix2::identity(&a)), Element::one(&a.hyperbolic_rho()));
    }
}
