//! Orders of finite Vahlen groups against counts obtained by brute force
//! outside the Clifford algebra.

use vahlen::vahlen::enumerate_vahlen_group;
use vahlen::{CliffordAlgebra, FieldDesc, QuadraticSpace, VahlenKind};

/// Number of invertible `n×n` matrices `g` over GF(p) with `gᵀ B g = B`, by
/// backtracking over the images of the basis vectors.
fn orthogonal_order(p: i64, gram: &[Vec<i64>]) -> u64 {
    let n = gram.len();
    let vectors: Vec<Vec<i64>> = (0..p.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let d = k % p;
                    k /= p;
                    d
                })
                .collect()
        })
        .collect();
    let form = |u: &[i64], v: &[i64]| -> i64 {
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += u[i] * gram[i][j] * v[j];
            }
        }
        s.rem_euclid(p)
    };
    fn go(cols: &mut Vec<usize>, vectors: &[Vec<i64>], gram: &[Vec<i64>], p: i64, form: &dyn Fn(&[i64], &[i64]) -> i64) -> u64 {
        let k = cols.len();
        if k == gram.len() {
            return 1;
        }
        let mut total = 0;
        for (idx, v) in vectors.iter().enumerate() {
            let fits = (0..=k).all(|j| {
                let w = if j == k { v } else { &vectors[cols[j]] };
                form(v, w) == gram[k][j].rem_euclid(p)
            });
            if fits {
                cols.push(idx);
                total += go(cols, vectors, gram, p, form);
                cols.pop();
            }
        }
        total
    }
    // the form is nondegenerate in every case below, so isometries are invertible
    go(&mut Vec::new(), &vectors, gram, p, &form)
}

fn group_order(p: u64, q: i64, kind: VahlenKind) -> u64 {
    let space = QuadraticSpace::diagonal(FieldDesc::prime(p).unwrap(), &[q]);
    let alg = CliffordAlgebra::new(space).unwrap();
    enumerate_vahlen_group(&alg, kind).unwrap().len() as u64
}

// V = ⟨e⟩ with q(e) = q, extended by a hyperbolic plane (and by ρ with q(ρ) = −1).
fn gram_vu(q: i64) -> Vec<Vec<i64>> {
    vec![vec![2 * q, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]
}

fn gram_vuf(q: i64) -> Vec<Vec<i64>> {
    vec![vec![2 * q, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 0, -2]]
}

// The vector group covers O(V ⊕ H) with kernel the nonzero scalars.
#[test]
fn vector_group_order_is_orthogonal_times_scalars() {
    for p in [3, 5] {
        for q in [1, 2] {
            let o = orthogonal_order(p as i64, &gram_vu(q));
            assert_eq!(group_order(p, q, VahlenKind::Vector), o * (p - 1), "p={p} q={q}");
        }
    }
}

// The paravector group lies in the even part, so it covers only SO(V ⊕ H ⊕ ⟨ρ⟩).
#[test]
fn paravector_group_order_is_special_orthogonal_times_scalars() {
    for p in [3, 5] {
        for q in [1, 2] {
            let o = orthogonal_order(p as i64, &gram_vuf(q));
            assert_eq!(group_order(p, q, VahlenKind::Paravector), o / 2 * (p - 1), "p={p} q={q}");
        }
    }
}

#[test]
fn orthogonal_counter_knows_small_groups() {
    // O(1): ±1; O of the hyperbolic plane over GF(p): 2(p − 1)
    assert_eq!(orthogonal_order(5, &[vec![2]]), 2);
    assert_eq!(orthogonal_order(5, &[vec![0, 1], vec![1, 0]]), 8);
    assert_eq!(orthogonal_order(3, &gram_vu(1)), 48);
}
