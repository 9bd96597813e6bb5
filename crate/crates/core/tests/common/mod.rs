//! Seeded randomized properties shared by the property tests and the
//! acceptance run. Each returns a one-line summary or a counterexample.
#![allow(dead_code)]

pub mod pcycles;
pub mod relations;
pub mod triples;
pub mod unions;

use std::collections::HashSet;

use binact::{PermGroup, Permutation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 20240917;

pub type Outcome = Result<String, String>;

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED.wrapping_add(salt.wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}

pub fn perm(degree: usize, text: &str) -> Permutation {
    Permutation::parse(degree, text).unwrap()
}

pub fn group(degree: usize, gens: &[&str]) -> PermGroup {
    PermGroup::generate(degree, gens.iter().map(|g| perm(degree, g)).collect()).unwrap()
}

pub fn mul(a: &Permutation, b: &Permutation) -> Permutation {
    a.compose(b).unwrap()
}

pub fn random_perm<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::from_images(v).unwrap()
}

pub fn random_cycle<R: Rng>(n: usize, len: usize, rng: &mut R) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v.truncate(len);
    Permutation::from_cycles(n, &[v]).unwrap()
}

pub fn elements(g: &PermGroup) -> Vec<Permutation> {
    g.elements(u64::MAX).unwrap()
}

pub fn element_set(g: &PermGroup) -> HashSet<Permutation> {
    elements(g).into_iter().collect()
}

pub fn powers(g: &Permutation) -> Vec<Permutation> {
    (0..g.order() as i64).map(|k| g.power(k)).collect()
}

pub fn support_set(g: &Permutation) -> HashSet<usize> {
    g.support().into_iter().collect()
}

/// Fails with the first message produced by `check` over `trials` draws.
pub fn run_trials<R: Rng>(
    trials: usize,
    rng: &mut R,
    mut check: impl FnMut(usize, &mut R) -> Result<(), String>,
) -> Result<(), String> {
    for t in 0..trials {
        check(t, rng).map_err(|e| format!("trial {t}: {e}"))?;
    }
    Ok(())
}
