#![allow(dead_code)]

use quadnorm::{sampling, QuadMap};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 20;
pub const RANDOM_K3: usize = 1000;

/// Every map on one or two generators plus e, and seeded random maps on
/// three generators plus e.
pub fn sampled_maps() -> Vec<QuadMap> {
    let mut maps: Vec<QuadMap> = (1..=2).flat_map(sampling::enumerate).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    maps.extend((0..RANDOM_K3).map(|_| sampling::sample(3, &mut rng)));
    maps
}

/// Inversions of a word, counting letters by id.
pub fn inversions(w: &[quadnorm::Letter]) -> usize {
    let mut n = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[j].id() < w[i].id() {
                n += 1;
            }
        }
    }
    n
}
