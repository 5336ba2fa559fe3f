//! Seeded random scalars, vectors and elements with small coefficients.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::{CliffordAlgebra, Element};
use crate::field::{FieldDesc, Scalar};

pub type SampleRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed for sample `index` of a run, independent of evaluation order.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 step over the pair
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const SMALL: [(i64, i64); 9] = [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (3, 1), (-3, 1)];

/// A scalar of small height; uniform over the field when it is finite.
pub fn small_scalar(field: FieldDesc, rng: &mut SampleRng) -> Scalar {
    match field {
        FieldDesc::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
        FieldDesc::Rationals => {
            let (n, d) = *SMALL.choose(rng).unwrap();
            field.fraction(n, d).unwrap()
        }
    }
}

pub fn nonzero_scalar(field: FieldDesc, rng: &mut SampleRng) -> Scalar {
    loop {
        let s = small_scalar(field, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn small_vector(field: FieldDesc, n: usize, rng: &mut SampleRng) -> Vec<Scalar> {
    (0..n).map(|_| small_scalar(field, rng)).collect()
}

/// A random element with roughly `density` of its monomials populated.
pub fn random_element(alg: &Arc<CliffordAlgebra>, density: f64, rng: &mut SampleRng) -> Element {
    let field = alg.field();
    let mut terms: Vec<(u32, Scalar)> = Vec::new();
    for m in 0..alg.dim() as u32 {
        if rng.gen_bool(density) {
            terms.push((m, small_scalar(field, rng)));
        }
    }
    Element::from_terms(alg, terms)
}
