//! Idempotent maps satisfying the neutral rule, on K generators plus e.
//!
//! Such a map is determined by its set P of fixed pairs of generators and,
//! for every other generator pair, a target among the fixed points
//! P ∪ {(s,e)} ∪ {(e,e)}. Maps are numbered by walking the subsets P in
//! bitmask order and reading the targets as mixed-radix digits.

use rand::Rng;

use crate::quadmap::QuadMap;
use crate::words::{Alphabet, Letter};

const NAMES: [&str; 8] = ["a", "b", "c", "d", "f", "g", "h", "i"];

pub const MAX_LETTERS: usize = NAMES.len();

/// Generators followed by the neutral letter `e`.
pub fn alphabet(k: usize) -> Alphabet {
    assert!((1..=MAX_LETTERS).contains(&k), "between 1 and {MAX_LETTERS} generators");
    let names = NAMES[..k].iter().copied().chain(["e"]);
    Alphabet::new(names, Some("e")).expect("valid")
}

fn binomial(n: u32, k: u32) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

/// Number of such maps: Σ_j C(K², j)·(j + K + 1)^(K² − j).
pub fn count(k: usize) -> u128 {
    let p = (k * k) as u32;
    (0..=p)
        .map(|j| binomial(p, j) * u128::from(j + k as u32 + 1).pow(p - j))
        .sum()
}

fn block(k: usize, fixed: u32) -> u128 {
    let p = (k * k) as u32;
    u128::from(fixed + k as u32 + 1).pow(p - fixed)
}

/// The map with the given number, `0 <= index < count(k)`.
pub fn map_at(k: usize, mut index: u128) -> QuadMap {
    let a = alphabet(k);
    let p = k * k;
    let e = Letter::from_id(k);
    let mut mask = 0u64;
    loop {
        assert!(mask < 1 << p, "index out of range");
        let size = block(k, mask.count_ones());
        if index < size {
            break;
        }
        index -= size;
        mask += 1;
    }
    let pair = |i: usize| (Letter::from_id(i / k), Letter::from_id(i % k));
    let mut targets: Vec<(Letter, Letter)> = (0..p).filter(|i| mask >> i & 1 == 1).map(pair).collect();
    targets.extend((0..k).map(|s| (Letter::from_id(s), e)));
    targets.push((e, e));
    let radix = targets.len() as u128;
    let mut images = vec![None; p];
    for (i, slot) in images.iter_mut().enumerate() {
        if mask >> i & 1 == 0 {
            *slot = Some(targets[(index % radix) as usize]);
            index /= radix;
        }
    }
    QuadMap::from_fn(a, |s, t| {
        if s == e {
            (t, s)
        } else if t == e {
            (s, t)
        } else {
            images[s.id() * k + t.id()].unwrap_or((s, t))
        }
    })
    .expect("targets lie in the alphabet")
}

/// Every map, in index order.
pub fn enumerate(k: usize) -> impl Iterator<Item = QuadMap> {
    (0..count(k)).map(move |i| map_at(k, i))
}

/// A uniformly random map.
pub fn sample<R: Rng + ?Sized>(k: usize, rng: &mut R) -> QuadMap {
    map_at(k, rng.gen_range(0..count(k)))
}
