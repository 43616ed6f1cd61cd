//! Seeded random inputs for the verification suites.
//!
//! Everything is drawn from ChaCha8 seeded with a `u64`, so a seed fixes the
//! whole sequence on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::{Blade, CliffordElement, GeneratorSet};
use crate::scalar::C64;
use crate::sq::{IndexSet, Permutation, SState};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Real and imaginary parts uniform in `[-1, 1)`.
pub fn amplitude<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// A normalized state with a random amplitude on every basis ket.
pub fn state<R: Rng>(rng: &mut R, index_set: &IndexSet) -> SState {
    let terms: Vec<(u64, C64)> = index_set.masks().map(|m| (m, amplitude(rng))).collect();
    SState::from_mask_amplitudes(index_set.clone(), terms)
        .and_then(|s| s.normalize())
        .expect("masks come from the index set")
}

pub fn permutation<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(rng);
    Permutation::new(map).expect("shuffled identity")
}

/// A random word of adjacent transpositions `(p, p+1)` whose product, applied
/// left to right, is `pi`.
///
/// Sorts by swapping a randomly chosen out-of-order neighbour pair each step,
/// and sprinkles in cancelling pairs `(p, p+1)(p, p+1)` so words also differ
/// in length.
pub fn decomposition<R: Rng>(rng: &mut R, pi: &Permutation) -> Vec<usize> {
    let n = pi.len();
    let map = pi.map();
    let mut arrangement: Vec<usize> = (0..n).collect();
    let mut word = Vec::new();
    loop {
        let candidates: Vec<usize> = (0..n.saturating_sub(1))
            .filter(|&p| map[arrangement[p]] > map[arrangement[p + 1]])
            .collect();
        if n >= 2 && rng.gen_bool(0.25) {
            let p = rng.gen_range(0..n - 1);
            word.extend([p, p]);
        }
        let Some(&p) = candidates.choose(rng) else {
            break;
        };
        arrangement.swap(p, p + 1);
        word.push(p);
    }
    word
}

/// `grade` distinct positions out of `0..n`.
pub fn blade<R: Rng>(rng: &mut R, n: usize, grade: usize) -> Blade {
    let positions = rand::seq::index::sample(rng, n, grade.min(n));
    Blade(positions.iter().fold(0, |acc, p| acc | 1 << p))
}

/// `terms` random blades of one grade with real coefficients in `[-1, 1)`.
pub fn real_homogeneous<R: Rng>(
    rng: &mut R,
    gens: &GeneratorSet,
    grade: usize,
    terms: usize,
) -> CliffordElement {
    let n = gens.len();
    CliffordElement::from_terms(
        gens,
        (0..terms).map(|_| {
            (
                blade(rng, n, grade),
                C64::new(rng.gen_range(-1.0..1.0), 0.0),
            )
        }),
    )
}

/// `terms` random blades of any grade with complex coefficients.
pub fn element<R: Rng>(rng: &mut R, gens: &GeneratorSet, terms: usize) -> CliffordElement {
    let n = gens.len();
    CliffordElement::from_terms(
        gens,
        (0..terms).map(|_| {
            let grade = rng.gen_range(0..=n);
            (blade(rng, n, grade), amplitude(rng))
        }),
    )
}

/// Coefficients `h1, h2, h3` for a one-gate, each in `[-2, 2)`.
pub fn one_gate_coefficients<R: Rng>(rng: &mut R) -> [f64; 3] {
    [0; 3].map(|_| rng.gen_range(-2.0..2.0))
}
