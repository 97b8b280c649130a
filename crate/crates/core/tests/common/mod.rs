#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rga_core::category::Cocycle;
use rga_core::{Alphabet, Element, LinearMap, Matrix, RewriteSystem, Scalar, Subspace, Word};

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3)
        .prop_map(|(a, b, c, d)| Scalar::from_ratios((a, b), (c, d)))
}

pub fn element2(alphabet: Alphabet) -> impl Strategy<Value = Element> {
    proptest::array::uniform5(scalar()).prop_map(move |c| Element::from_components2(alphabet, c))
}

/// Random element over `n` generators supported on normal words up to `max_len`.
pub fn element(n: usize, max_len: usize, alphabet: Alphabet) -> impl Strategy<Value = Element> {
    let words = RewriteSystem::new(n).enumerate_normal_forms(max_len);
    let k = words.len();
    proptest::collection::vec((0..k, scalar()), 0..6).prop_map(move |terms| {
        Element::from_terms(
            n,
            alphabet,
            terms.into_iter().map(|(i, c)| (words[i].clone(), c)),
        )
        .expect("normal words")
    })
}

/// Random word over `n` letters, not necessarily normal.
pub fn word(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(1..=n, 0..=max_len).prop_map(Word::new)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    Scalar::from_ratios(
        (rng.gen_range(-3..=3), rng.gen_range(1..=2)),
        (rng.gen_range(-2..=2), 1),
    )
}

/// Invertible by construction: unit lower triangular times upper triangular
/// with nonzero diagonal.
pub fn random_invertible(rng: &mut impl Rng, d: usize) -> Matrix {
    let mut l = Matrix::identity(d);
    let mut u = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            if i > j {
                l.set(i, j, random_scalar(rng));
            } else if i < j {
                u.set(i, j, random_scalar(rng));
            } else {
                let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
                u.set(i, i, Scalar::int(c));
            }
        }
    }
    &l * &u
}

fn partial_identity(rows: usize, cols: usize, r: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..r {
        m.set(i, i, Scalar::one());
    }
    m
}

/// A random regular cocycle `ψᵢ = Uᵢ₊₁ Jᵢ Uᵢ⁻¹`, where every `Jᵢ` is a
/// partial identity of the same rank.
pub fn random_regular_cocycle(rng: &mut impl Rng, n: usize) -> Cocycle {
    let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
    let r = rng.gen_range(0..=*dims.iter().min().unwrap());
    let spaces: Vec<Subspace> = dims
        .iter()
        .enumerate()
        .map(|(i, &d)| Subspace::coordinate(format!("X{}", i + 1), d))
        .collect();
    let us: Vec<Matrix> = dims.iter().map(|&d| random_invertible(rng, d)).collect();
    let maps = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            let m = &(&us[j] * &partial_identity(dims[j], dims[i], r)) * &us[i].inverse().unwrap();
            LinearMap::new(spaces[i].clone(), spaces[j].clone(), m).unwrap()
        })
        .collect();
    Cocycle::new(maps).unwrap()
}
