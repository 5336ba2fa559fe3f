//! Orbit census of the (special) Vahlen group on a finite-field half-space.
//!
//! Orbits are the connected components of the graph joining each point to
//! its images under a fixed generating set, found with a union-find pass.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::clifford::Element;
use crate::cmatrix::CMatrix2;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::halfspace::{HalfSpace, Point, PointJson, PreparedMatrix};
use crate::quadspace::SpaceJson;
use crate::vahlen::{generator, is_vahlen, Generator, VahlenKind};

/// Upper bound on materialized points.
pub const CENSUS_LIMIT: u64 = 1_000_000;

/// Orbits of one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupOrbits {
    pub generators: usize,
    /// Matrices `(−aξ, −(1+a q(ξ))/d; d, ξ)` added to connect `σ_c` with `aσ_c`.
    pub auxiliary: usize,
    pub orbit_count: usize,
    pub orbit_sizes: Vec<usize>,
    pub representatives: Vec<PointJson>,
    pub base_orbit_size: usize,
    pub transitive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub field: String,
    pub space: SpaceJson,
    pub c: String,
    pub kind: VahlenKind,
    pub regular_points: usize,
    pub boundary_points: usize,
    pub total_points: usize,
    pub k_set_size: u64,
    pub k_count_matches: bool,
    /// Some `ξ` in `V` (or `F ⊕ V`) has value `c`.
    pub c_represented: bool,
    pub boundary_nonempty: bool,
    /// `V_F^c` (or `F ⊕ V_F^c`) has an isotropic vector outside its radical.
    pub nonradical_isotropic: bool,
    pub full: GroupOrbits,
    pub special: GroupOrbits,
    /// The values `N(γz+δ)` over the special group, when there are no boundary points.
    pub norm_subgroup: Option<Vec<String>>,
    pub norm_subgroup_index: Option<u64>,
    pub contains_squares: Option<bool>,
    /// Special orbits correspond one-to-one to cosets of the norm subgroup via `t`.
    pub cosets_match: Option<bool>,
    pub predicted_special_orbits: u64,
    pub prediction_holds: bool,
    pub mismatches: Vec<String>,
}

impl CensusReport {
    /// Recompute `prediction_holds` and `mismatches` from the other fields.
    pub fn evaluate(&mut self) {
        let mut bad = Vec::new();
        if !self.k_count_matches {
            bad.push(format!("{} points but {} vectors in K^c", self.total_points, self.k_set_size));
        }
        if self.c_represented != self.boundary_nonempty {
            bad.push("c represented does not match existence of boundary points".to_string());
        }
        if !self.full.transitive {
            bad.push(format!("full group has {} orbits", self.full.orbit_count));
        }
        if self.special.orbit_count as u64 != self.predicted_special_orbits {
            bad.push(format!(
                "special group has {} orbits, predicted {}",
                self.special.orbit_count, self.predicted_special_orbits
            ));
        }
        if self.contains_squares == Some(false) {
            bad.push("norm subgroup misses a square".to_string());
        }
        if self.cosets_match == Some(false) {
            bad.push("special orbits do not match the norm cosets".to_string());
        }
        self.prediction_holds = bad.is_empty();
        self.mismatches = bad;
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so representatives are the first points
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

fn all_coords(h: &HalfSpace) -> Result<Vec<Vec<Scalar>>> {
    let els = h.base().field().elements()?;
    let p = els.len();
    let k = h.coord_len();
    let total = p.pow(k as u32);
    Ok((0..total)
        .map(|mut idx| {
            (0..k)
                .map(|_| {
                    let s = els[idx % p].clone();
                    idx /= p;
                    s
                })
                .collect()
        })
        .collect())
}

fn target_element(h: &HalfSpace, x: &[Scalar]) -> Element {
    let alg = h.base();
    match h.kind() {
        VahlenKind::Vector => Element::vector(alg, x).unwrap(),
        VahlenKind::Paravector => Element::paravector(alg, x).unwrap(),
    }
}

/// Generators of the special group: translations by a basis of the target space,
/// `diag(a, 1/a)`, the Weyl element, and `diag(x, x*⁻¹)` for anisotropic `x` among
/// basis vectors and their pairwise sums and differences.
fn special_generators(h: &HalfSpace) -> Result<Vec<CMatrix2>> {
    let alg = h.base();
    let field = alg.field();
    let kind = h.kind();
    let k = h.coord_len();
    let mut out = Vec::new();
    let unit = |i: usize| {
        let mut x = vec![field.zero(); k];
        x[i] = field.one();
        x
    };
    for i in 0..k {
        out.push(generator(alg, kind, &Generator::Translation(target_element(h, &unit(i))))?);
    }
    for a in field.elements()?.into_iter().skip(2) {
        out.push(CMatrix2 {
            a: Element::scalar(alg, a.clone()),
            b: Element::zero(alg),
            c: Element::zero(alg),
            d: Element::scalar(alg, a.inv()?),
        });
    }
    out.push(generator(alg, kind, &Generator::Weyl)?);
    let mut candidates = Vec::new();
    for i in 0..k {
        candidates.push(unit(i));
        for j in i + 1..k {
            let (ui, uj) = (unit(i), unit(j));
            candidates.push(ui.iter().zip(&uj).map(|(a, b)| a + b).collect());
            candidates.push(ui.iter().zip(&uj).map(|(a, b)| a - b).collect());
        }
    }
    for x in candidates {
        if h.q_coords(&x)?.is_zero() {
            continue;
        }
        let xe = target_element(h, &x);
        let m = CMatrix2 {
            d: xe.transpose().cinv()?,
            a: xe,
            b: Element::zero(alg),
            c: Element::zero(alg),
        };
        if is_vahlen(&m, kind) {
            out.push(m);
        }
    }
    Ok(out)
}

/// A special Vahlen matrix taking `σ_c` to `aσ_c`, built from `μ = ξ + dσ_c` with
/// `q(μ) = −1/a`, or `None` when no such `μ` exists.
pub fn auxiliary_matrix(h: &HalfSpace, a: &Scalar) -> Result<Option<CMatrix2>> {
    let alg = h.base();
    let field = alg.field();
    let target = -a.inv()?;
    let base = h.base_point();
    let scaled = Point::Regular {
        v: vec![field.zero(); h.coord_len()],
        t: a.clone(),
    };
    for xi in all_coords(h)? {
        let qx = h.q_coords(&xi)?;
        for d in field.elements()?.into_iter().skip(1) {
            if &qx - &(h.c() * &d.square()) != target {
                continue;
            }
            let x = target_element(h, &xi);
            let beta = Element::scalar(alg, -((&field.one() + &(a * &qx)) / &d));
            for (alpha, delta) in [(x.scale(a), x.clone()), (x.grade().scale(a), x.clone()), (x.scale(a), x.grade())] {
                let m = CMatrix2 {
                    a: -alpha,
                    b: beta.clone(),
                    c: Element::scalar(alg, d.clone()),
                    d: delta,
                };
                if !is_vahlen(&m, h.kind()) || !m.pseudo_det_element().as_scalar()?.is_one() {
                    continue;
                }
                if h.apply_unchecked(&m, &base)? == scaled {
                    return Ok(Some(m));
                }
            }
        }
    }
    Ok(None)
}

struct Closure {
    uf: UnionFind,
}

impl Closure {
    fn new(n: usize) -> Self {
        Closure {
            uf: UnionFind((0..n).collect()),
        }
    }

    fn add(&mut self, h: &HalfSpace, pm: &PreparedMatrix, points: &[Point], index: &HashMap<Point, usize>) -> Result<()> {
        for (i, p) in points.iter().enumerate() {
            let img = h.apply_prepared(pm, p)?;
            let j = *index
                .get(&img)
                .ok_or_else(|| Error::InvariantViolation("Möbius image outside the enumerated points".into()))?;
            self.uf.union(i, j);
        }
        Ok(())
    }

    fn orbits(&mut self, h: &HalfSpace, points: &[Point], generators: usize, auxiliary: usize) -> (GroupOrbits, Vec<usize>) {
        let roots: Vec<usize> = (0..points.len()).map(|i| self.uf.find(i)).collect();
        let mut sizes: HashMap<usize, usize> = HashMap::new();
        for &r in &roots {
            *sizes.entry(r).or_default() += 1;
        }
        let mut reps: Vec<usize> = sizes.keys().copied().collect();
        reps.sort();
        let base = roots[0];
        let report = GroupOrbits {
            generators,
            auxiliary,
            orbit_count: reps.len(),
            orbit_sizes: reps.iter().map(|r| sizes[r]).collect(),
            representatives: reps.iter().map(|&r| h.point_to_json(&points[r])).collect(),
            base_orbit_size: sizes[&base],
            transitive: reps.len() == 1,
        };
        (report, roots)
    }
}

fn subgroup_closure(values: &BTreeSet<Scalar>) -> BTreeSet<Scalar> {
    let mut group: BTreeSet<Scalar> = values.clone();
    loop {
        let mut next = group.clone();
        for x in &group {
            for y in &group {
                next.insert(x * y);
            }
        }
        if next.len() == group.len() {
            return group;
        }
        group = next;
    }
}

/// Exhaustive orbit census of `V` and `SV` on the completed half-space.
pub fn orbit_census(h: &HalfSpace) -> Result<CensusReport> {
    let field = h.base().field();
    let units: Vec<Scalar> = field.elements()?.into_iter().skip(1).collect();
    let points = h.enumerate_points(CENSUS_LIMIT)?;
    let index: HashMap<Point, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let boundary_points = points.iter().filter(|p| p.is_boundary()).count();
    let k_set_size = h.k_set_size()?;

    let coords = all_coords(h)?;
    let mut c_represented = false;
    let mut nonradical_isotropic = false;
    for x in &coords {
        let qx = h.q_coords(x)?;
        c_represented |= qx == *h.c();
        let radical_x = h.coords_in_radical(x)?;
        for d in field.elements()? {
            let all_zero = d.is_zero() && x.iter().all(Scalar::is_zero);
            let radical = radical_x && (d.is_zero() || h.c().is_zero());
            if !all_zero && !radical && &qx - &(h.c() * &d.square()) == field.zero() {
                nonradical_isotropic = true;
            }
        }
    }

    // special group, with auxiliary matrices added only for scalings not yet reached
    let mut special_gens = Vec::new();
    for m in special_generators(h)? {
        let pm = h.prepare(&m)?;
        if !pm.det().is_one() {
            return Err(Error::InvariantViolation("special generator with determinant ≠ 1".into()));
        }
        special_gens.push(pm);
    }
    let mut special = Closure::new(points.len());
    for pm in &special_gens {
        special.add(h, pm, &points, &index)?;
    }
    let base_idx = index[&h.base_point()];
    let mut auxiliary = 0;
    for a in &units {
        let scaled = Point::Regular {
            v: vec![field.zero(); h.coord_len()],
            t: a.clone(),
        };
        let target = index[&scaled];
        if special.uf.find(target) == special.uf.find(base_idx) {
            continue;
        }
        if let Some(m) = auxiliary_matrix(h, a)? {
            let pm = h.prepare(&m)?;
            special.add(h, &pm, &points, &index)?;
            special_gens.push(pm);
            auxiliary += 1;
        }
    }
    let (special_report, special_roots) = special.orbits(h, &points, special_gens.len(), auxiliary);

    let mut full = Closure::new(points.len());
    full.uf.0 = special.uf.0.clone();
    let mut full_count = special_gens.len();
    for a in units.iter().skip(1) {
        let m = generator(h.base(), h.kind(), &Generator::Dilation(a.clone()))?;
        full.add(h, &h.prepare(&m)?, &points, &index)?;
        full_count += 1;
    }
    let (full_report, _) = full.orbits(h, &points, full_count, auxiliary);

    let (mut norm_subgroup, mut norm_subgroup_index, mut contains_squares, mut cosets_match) = (None, None, None, None);
    let predicted_special_orbits;
    if boundary_points == 0 {
        let mut values = BTreeSet::new();
        for pm in &special_gens {
            for p in &points {
                values.insert(h.mobius_denominator(pm.matrix(), p)?);
            }
        }
        let group = subgroup_closure(&values);
        let idx = (units.len() / group.len()) as u64;
        let coset_of = |t: &Scalar| group.iter().map(|g| g * t).min().unwrap();
        let mut orbit_cosets: HashMap<usize, BTreeSet<Scalar>> = HashMap::new();
        for (p, root) in points.iter().zip(&special_roots) {
            if let Point::Regular { t, .. } = p {
                orbit_cosets.entry(*root).or_default().insert(coset_of(t));
            }
        }
        let distinct: BTreeSet<&Scalar> = orbit_cosets.values().filter_map(|s| s.iter().next()).collect();
        cosets_match = Some(
            orbit_cosets.values().all(|s| s.len() == 1)
                && distinct.len() == orbit_cosets.len()
                && orbit_cosets.len() as u64 == idx,
        );
        contains_squares = Some(units.iter().all(|u| group.contains(&u.square())));
        norm_subgroup = Some(group.iter().map(Scalar::to_string).collect());
        norm_subgroup_index = Some(idx);
        predicted_special_orbits = if c_represented { 1 } else { idx };
    } else {
        predicted_special_orbits = if c_represented { 1 } else { 0 };
    }

    let space = h.base().space().to_json();
    let mut report = CensusReport {
        field: field.to_string(),
        space,
        c: h.c().to_string(),
        kind: h.kind(),
        regular_points: points.len() - boundary_points,
        boundary_points,
        total_points: points.len(),
        k_set_size,
        k_count_matches: k_set_size == points.len() as u64,
        c_represented,
        boundary_nonempty: boundary_points > 0,
        nonradical_isotropic,
        full: full_report,
        special: special_report,
        norm_subgroup,
        norm_subgroup_index,
        contains_squares,
        cosets_match,
        predicted_special_orbits,
        prediction_holds: false,
        mismatches: Vec::new(),
    };
    report.evaluate();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::CliffordAlgebra;
    use crate::field::FieldDesc;
    use crate::quadspace::QuadraticSpace;
    use crate::vahlen::enumerate_vahlen_group;

    fn half(p: u64, diag: &[i64], c: i64, kind: VahlenKind) -> HalfSpace {
        let f = FieldDesc::prime(p).unwrap();
        let alg = CliffordAlgebra::new(QuadraticSpace::diagonal(f, diag)).unwrap();
        HalfSpace::new(&alg, f.from_i64(c), kind).unwrap()
    }

    #[test]
    fn represented_rank_one_is_transitive() {
        let r = orbit_census(&half(3, &[1], 1, VahlenKind::Vector)).unwrap();
        assert!(r.c_represented && r.boundary_nonempty);
        assert!(r.full.transitive && r.special.transitive, "{r:?}");
        assert!(r.prediction_holds);
    }

    #[test]
    fn zero_space_unrepresented_matches_cosets() {
        let r = orbit_census(&half(5, &[], 2, VahlenKind::Vector)).unwrap();
        assert!(!r.c_represented && !r.boundary_nonempty);
        assert_eq!(r.contains_squares, Some(true));
        assert_eq!(r.cosets_match, Some(true));
        assert_eq!(r.special.orbit_count as u64, r.norm_subgroup_index.unwrap());
        assert!(r.prediction_holds, "{r:?}");
    }

    /// Orbits under the generating set agree with orbits under the whole enumerated group.
    #[test]
    fn generated_orbits_match_whole_group() {
        for (diag, kind) in [(&[][..], VahlenKind::Vector), (&[][..], VahlenKind::Paravector), (&[1][..], VahlenKind::Vector), (&[0][..], VahlenKind::Vector)] {
            for c in 0..3 {
                let h = half(3, diag, c, kind);
                let group = enumerate_vahlen_group(h.base(), kind).unwrap();
                let points = h.enumerate_points(CENSUS_LIMIT).unwrap();
                let index: HashMap<Point, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
                let mut full = Closure::new(points.len());
                let mut special = Closure::new(points.len());
                for m in &group {
                    let pm = h.prepare(m).unwrap();
                    full.add(&h, &pm, &points, &index).unwrap();
                    if pm.det().is_one() {
                        special.add(&h, &pm, &points, &index).unwrap();
                    }
                }
                let r = orbit_census(&h).unwrap();
                assert_eq!(full.orbits(&h, &points, 0, 0).0.orbit_sizes, r.full.orbit_sizes, "{diag:?} {kind} c={c}");
                assert_eq!(special.orbits(&h, &points, 0, 0).0.orbit_sizes, r.special.orbit_sizes, "{diag:?} {kind} c={c}");
            }
        }
    }

    #[test]
    fn auxiliary_matrix_scales_base_point() {
        let h = half(5, &[1], 2, VahlenKind::Vector);
        for a in 1..5 {
            let a = h.base().field().from_i64(a);
            let m = auxiliary_matrix(&h, &a).unwrap().expect("q^c is isotropic here");
            let img = h.mobius_apply(&m, &h.base_point()).unwrap();
            assert_eq!(img, Point::Regular { v: vec![h.base().field().zero()], t: a });
        }
    }
}
