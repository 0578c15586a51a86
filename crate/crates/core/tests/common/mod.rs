//! Seeded model families shared by the integration tests.

#![allow(dead_code)]

use invariant_sseq::complex::InvariantComplex;
use invariant_sseq::lefschetz::{
    generate_hlp_module, generate_non_hlp_module, generate_random_module, random_primitive_dims,
    LefschetzModule,
};
use invariant_sseq::linalg::{int, ratio, Rational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// How the base of a generated model was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    HardLefschetz,
    BrokenLefschetz,
    Arbitrary,
}

pub struct SuiteModel {
    pub seed: u64,
    pub complex: InvariantComplex,
    pub kind: BaseKind,
    /// Primitive dimensions the base was generated from (hard Lefschetz
    /// bases only).
    pub primitive_dims: Option<Vec<usize>>,
}

fn rng(family: u64, seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(family.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ seed)
}

fn base_of_kind(
    rng: &mut ChaCha8Rng,
    kind: BaseKind,
    n: usize,
    max: usize,
) -> (LefschetzModule, BaseKind, Option<Vec<usize>>) {
    let pdims = random_primitive_dims(rng, n, max);
    let seed: u64 = rng.gen();
    match kind {
        BaseKind::HardLefschetz => (
            generate_hlp_module(seed, n, &pdims).unwrap(),
            kind,
            Some(pdims),
        ),
        BaseKind::BrokenLefschetz => match generate_non_hlp_module(seed, n, &pdims) {
            Ok(m) => (m, kind, None),
            // nothing to break (n = 0): fall back to a hard Lefschetz base
            Err(_) => (
                generate_hlp_module(seed, n, &pdims).unwrap(),
                BaseKind::HardLefschetz,
                Some(pdims),
            ),
        },
        BaseKind::Arbitrary => (generate_random_module(seed, n, max), kind, None),
    }
}

fn kind_for(seed: u64) -> BaseKind {
    match seed % 3 {
        0 => BaseKind::HardLefschetz,
        1 => BaseKind::BrokenLefschetz,
        _ => BaseKind::Arbitrary,
    }
}

/// Any base, any rational `λ`'s: `n <= 4`, `s <= 3`.
pub fn e2_model(seed: u64) -> SuiteModel {
    let mut rng = rng(1, seed);
    let n = rng.gen_range(0..=4);
    let s = rng.gen_range(1..=3);
    let max = rng.gen_range(1..=3);
    let (base, kind, primitive_dims) = base_of_kind(&mut rng, kind_for(seed), n, max);
    let lambdas: Vec<Rational> = (0..s)
        .map(|_| match rng.gen_range(0..4) {
            0 => int(0),
            1 => int(1),
            _ => ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4)),
        })
        .collect();
    SuiteModel {
        seed,
        complex: InvariantComplex::build_model(base, s, lambdas).unwrap(),
        kind,
        primitive_dims,
    }
}

/// Hard Lefschetz base, every `λ_i = 1`: `n <= 4`, `s <= 3`, primitive
/// dimensions at most 4 per degree.
pub fn s_model(seed: u64) -> SuiteModel {
    let mut rng = rng(2, seed);
    let n = rng.gen_range(0..=4);
    let s = rng.gen_range(1..=3);
    let max = rng.gen_range(1..=4);
    let (base, kind, primitive_dims) = base_of_kind(&mut rng, BaseKind::HardLefschetz, n, max);
    SuiteModel {
        seed,
        complex: InvariantComplex::build_model(base, s, vec![int(1); s]).unwrap(),
        kind,
        primitive_dims,
    }
}

/// Every `λ_i = 0`; bases cycle through hard Lefschetz, broken, and
/// arbitrary modules.
pub fn c_model(seed: u64) -> SuiteModel {
    let mut rng = rng(3, seed);
    let n = rng.gen_range(0..=4);
    let s = rng.gen_range(1..=3);
    let max = rng.gen_range(1..=4);
    let (base, kind, primitive_dims) = base_of_kind(&mut rng, kind_for(seed), n, max);
    SuiteModel {
        seed,
        complex: InvariantComplex::build_model(base, s, vec![int(0); s]).unwrap(),
        kind,
        primitive_dims,
    }
}

/// Sign of the permutation that sorts `seq` (distinct entries), by counting
/// inversions.
pub fn permutation_sign(seq: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).collect()
}

/// Hodge star of the monomial `e_M` in `R^width` with the standard metric
/// and orientation `e_1 ∧ … ∧ e_width`: `e_M ∧ *e_M = vol` forces
/// `*e_M = sign(M, M^c) e_{M^c}`.
pub fn oracle_star(width: usize, mask: u64) -> (i64, u64) {
    let complement = ((1u64 << width) - 1) & !mask;
    let seq: Vec<usize> = bits(mask).into_iter().chain(bits(complement)).collect();
    (permutation_sign(&seq), complement)
}

/// `e_A ∧ e_B` for disjoint monomials as `(sign, A ∪ B)`.
pub fn oracle_wedge(a: u64, b: u64) -> (i64, u64) {
    assert_eq!(a & b, 0);
    let seq: Vec<usize> = bits(a).into_iter().chain(bits(b)).collect();
    (permutation_sign(&seq), a | b)
}
