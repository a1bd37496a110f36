//! Class analysis of a quadratic map: normality, the minimal class (m,n),
//! full-word normalisation strategies, and the domino rules.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::quadmap::QuadMap;
use crate::report::CheckReport;
use crate::words::{alt_seq, words_of_len, Letter, PositionSeq, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassValue {
    Finite(usize),
    Infinite,
}

impl ClassValue {
    pub fn finite(self) -> Option<usize> {
        match self {
            ClassValue::Finite(m) => Some(m),
            ClassValue::Infinite => None,
        }
    }
}

impl fmt::Display for ClassValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassValue::Finite(m) => write!(f, "{m}"),
            ClassValue::Infinite => write!(f, "inf"),
        }
    }
}

/// Minimal left and right class of a map, with witnesses.
///
/// A finite non-zero class comes with the first triple (in lexicographic
/// order of letter ids) for which one step less does not suffice. An
/// infinite class comes with a triple whose alternating orbits never agree
/// on a pair-stable word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub left: ClassValue,
    pub right: ClassValue,
    pub left_witness: Option<Word>,
    pub right_witness: Option<Word>,
    pub orbit_cycle: Option<Word>,
}

impl ClassReport {
    pub fn is_finite(&self) -> bool {
        self.left != ClassValue::Infinite && self.right != ClassValue::Infinite
    }
}

/// Full-word normalisation strategies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Cycle through positions 1, 2, …, |w|−1, 1, 2, … (121… on triples).
    LeftAlt,
    /// Cycle through positions |w|−1, …, 1, |w|−1, … (212… on triples).
    RightAlt,
    /// Always rewrite the smallest non-normal position.
    LeftmostReducible,
    /// Prepend letters one at a time to a normal suffix and sweep, which is
    /// complete for maps of class (4,3).
    Recipe43,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::LeftAlt,
        Strategy::RightAlt,
        Strategy::LeftmostReducible,
        Strategy::Recipe43,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::LeftAlt => "left_alt",
            Strategy::RightAlt => "right_alt",
            Strategy::LeftmostReducible => "leftmost_reducible",
            Strategy::Recipe43 => "recipe43",
        }
    }

    pub fn from_name(name: &str) -> Option<Strategy> {
        Strategy::ALL.into_iter().find(|s| s.name() == name)
    }
}

pub fn is_normal(f: &QuadMap, w: &Word) -> bool {
    w.windows(2).all(|p| f.is_fixed(p[0], p[1]))
}

fn is_bistable(f: &QuadMap, w: &[Letter]) -> bool {
    f.is_fixed(w[0], w[1]) && f.is_fixed(w[1], w[2])
}

/// Number of alternating applications, starting at `first`, after which the
/// triple is stable at both positions, together with that word. `None` when
/// the orbit cycles without ever becoming stable.
fn orbit_index(f: &QuadMap, w: &Word, first: usize) -> Option<(usize, Word)> {
    let mut cur = w.clone();
    let mut pos = first;
    let mut seen = HashSet::new();
    let mut k = 0;
    loop {
        if is_bistable(f, &cur) {
            return Some((k, cur));
        }
        if !seen.insert((cur.clone(), pos)) {
            return None;
        }
        f.apply_in_place(cur.as_mut_slice(), pos - 1);
        pos = 3 - pos;
        k += 1;
    }
}

/// Smallest (m, n) such that this triple satisfies the left-class-m and
/// right-class-n equalities, or `None` if no such values exist.
fn triple_requirement(f: &QuadMap, w: &Word) -> Option<(usize, usize)> {
    let (l, left_limit) = orbit_index(f, w, 1)?;
    let (r, right_limit) = orbit_index(f, w, 2)?;
    if left_limit != right_limit {
        return None;
    }
    Some((l.max(r.saturating_sub(1)), r.max(l.saturating_sub(1))))
}

/// The minimal class, found by following both alternating orbits of every
/// triple. Orbits live in a finite set, so cycle detection is exact.
pub fn minimal_class(f: &QuadMap) -> Result<ClassReport> {
    if !f.check_idempotent().passed {
        return Err(Error::NotIdempotent);
    }
    let letters = f.alphabet().all_letters();
    let mut left = (0, None);
    let mut right = (0, None);
    for w in words_of_len(&letters, 3) {
        match triple_requirement(f, &w) {
            None => {
                return Ok(ClassReport {
                    left: ClassValue::Infinite,
                    right: ClassValue::Infinite,
                    left_witness: None,
                    right_witness: None,
                    orbit_cycle: Some(w),
                })
            }
            Some((m, n)) => {
                if m > left.0 {
                    left = (m, Some(w.clone()));
                }
                if n > right.0 {
                    right = (n, Some(w));
                }
            }
        }
    }
    Ok(ClassReport {
        left: ClassValue::Finite(left.0),
        right: ClassValue::Finite(right.0),
        left_witness: left.1,
        right_witness: right.1,
        orbit_cycle: None,
    })
}

/// Evaluates the class equalities directly on every triple:
/// F₁₂[m] = F₁₂[m+1] = F₂₁[m+1] and F₂₁[n] = F₂₁[n+1] = F₁₂[n+1].
pub fn check_class_equalities(f: &QuadMap, m: usize, n: usize) -> CheckReport {
    let name = format!("class({m},{n})");
    let letters = f.alphabet().all_letters();
    let eval = |w: &Word, first: usize, k: usize| {
        f.apply_seq(w, &alt_seq(first, k))
            .expect("positions 1 and 2 are valid on triples")
    };
    for w in words_of_len(&letters, 3) {
        let l = eval(&w, 1, m);
        if l != eval(&w, 1, m + 1) || l != eval(&w, 2, m + 1) {
            return CheckReport::fail(name, w, format!("left-class {m} equalities fail"));
        }
        let r = eval(&w, 2, n);
        if r != eval(&w, 2, n + 1) || r != eval(&w, 1, n + 1) {
            return CheckReport::fail(name, w, format!("right-class {n} equalities fail"));
        }
    }
    CheckReport::pass(name, "class equalities hold on every triple")
}

/// Whether the map is of class (m,n); requires a finite minimal class.
pub fn is_of_class(f: &QuadMap, m: usize, n: usize) -> Result<CheckReport> {
    let class = minimal_class(f)?;
    if !class.is_finite() {
        return Err(Error::InfiniteClass);
    }
    Ok(check_class_equalities(f, m, n))
}

pub fn normalize(f: &QuadMap, w: &Word, strategy: Strategy) -> Result<(Word, PositionSeq)> {
    let n = f.alphabet().len().max(2) as u128;
    let budget = (2 * n.saturating_pow(w.len() as u32) * w.len().max(1) as u128)
        .min(usize::MAX as u128) as usize;
    normalize_with_budget(f, w, strategy, budget)
}

/// Normalises `w`, returning the normal word and the positions applied.
/// Cycling strategies stop with [`Error::NonNormalising`] on a repeated
/// state or when `budget` applications have been spent.
pub fn normalize_with_budget(
    f: &QuadMap,
    w: &Word,
    strategy: Strategy,
    budget: usize,
) -> Result<(Word, PositionSeq)> {
    f.alphabet().check_word(w)?;
    let mut cur = w.clone();
    let mut used = PositionSeq::default();
    let len = w.len();
    if len < 2 {
        return Ok((cur, used));
    }
    match strategy {
        Strategy::LeftAlt | Strategy::RightAlt => {
            let order: Vec<usize> = match strategy {
                Strategy::LeftAlt => (1..len).collect(),
                _ => (1..len).rev().collect(),
            };
            let mut seen = HashSet::new();
            let mut k = 0;
            while !is_normal(f, &cur) {
                let pos = order[k % order.len()];
                if !seen.insert((cur.clone(), k % order.len())) {
                    return Err(non_normalising(cur, "cycle"));
                }
                if used.len() >= budget {
                    return Err(non_normalising(cur, "budget exhausted"));
                }
                f.apply_in_place(cur.as_mut_slice(), pos - 1);
                used.push(pos);
                k += 1;
            }
        }
        Strategy::LeftmostReducible => {
            let mut seen = HashSet::new();
            while let Some(i) = cur.windows(2).position(|p| !f.is_fixed(p[0], p[1])) {
                if !seen.insert(cur.clone()) {
                    return Err(non_normalising(cur, "cycle"));
                }
                if used.len() >= budget {
                    return Err(non_normalising(cur, "budget exhausted"));
                }
                f.apply_in_place(cur.as_mut_slice(), i);
                used.push(i + 1);
            }
        }
        Strategy::Recipe43 => {
            if !check_class_equalities(f, 4, 3).passed {
                return Err(Error::Precondition("recipe43 needs a map of class (4,3)".into()));
            }
            for start in (0..len - 1).rev() {
                for j in start..len - 1 {
                    f.apply_in_place(cur.as_mut_slice(), j);
                    used.push(j + 1);
                }
            }
            if !is_normal(f, &cur) {
                return Err(non_normalising(cur, "recipe left a non-normal word"));
            }
        }
    }
    Ok((cur, used))
}

fn non_normalising(reached: Word, reason: &str) -> Error {
    Error::NonNormalising {
        reached,
        reason: reason.to_string(),
    }
}

/// The domino rule: whenever s₁|s₂ is fixed and F(t₀|s₁) = s₁′|t₁,
/// F(t₁|s₂) = s₂′|t₂ are fixed, s₁′|s₂′ is fixed as well.
///
/// Instances are generated from triples r|s|t via t₀ = r and
/// s₁|s₂ = F(s|t); the reported witness is that triple.
pub fn check_domino(f: &QuadMap) -> CheckReport {
    let a = f.alphabet();
    let letters = a.all_letters();
    for w in words_of_len(&letters, 3) {
        let t0 = w[0];
        let (s1, s2) = f.get(w[1], w[2]);
        if !f.is_fixed(s1, s2) {
            continue;
        }
        let (s1p, t1) = f.get(t0, s1);
        let (s2p, t2) = f.get(t1, s2);
        if f.is_fixed(s1p, t1) && f.is_fixed(s2p, t2) && !f.is_fixed(s1p, s2p) {
            let detail = format!(
                "t0={} s1={} s2={}: {}|{} is not fixed",
                a.name(t0),
                a.name(s1),
                a.name(s2),
                a.name(s1p),
                a.name(s2p)
            );
            return CheckReport::fail("domino", w, detail);
        }
    }
    CheckReport::pass("domino", "domino rule holds")
}

/// The weak domino rule in its axiom form: for every triple, F₂₁₂(r,s,t) is
/// stable at position 1 or contains the neutral letter.
pub fn check_weak_domino(f: &QuadMap) -> Result<CheckReport> {
    let e = f.alphabet().require_neutral()?;
    let letters = f.alphabet().all_letters();
    Ok(weak_domino_over(f, e, &letters, "weak-domino"))
}

pub(crate) fn weak_domino_over(f: &QuadMap, e: Letter, letters: &[Letter], name: &str) -> CheckReport {
    let seq = alt_seq(2, 3);
    for w in words_of_len(letters, 3) {
        let x = f.apply_seq(&w, &seq).expect("triple");
        if !f.is_fixed(x[0], x[1]) && !x.contains(&e) {
            return CheckReport::fail(name, w, "F212 is not stable at 1 and has no neutral letter");
        }
    }
    CheckReport::pass(name, "F212 is stable at 1 unless it contains the neutral letter")
}

/// The weak domino rule read on the diagram: a domino instance may fail
/// only if its upper-right cells s₂′, t₂ contain the neutral letter. Agrees
/// with [`check_weak_domino`] for idempotent maps passing the neutral check.
pub fn check_weak_domino_upper_right(f: &QuadMap) -> Result<CheckReport> {
    let e = f.alphabet().require_neutral()?;
    let letters = f.alphabet().all_letters();
    for w in words_of_len(&letters, 3) {
        let (s1, s2) = f.get(w[1], w[2]);
        if !f.is_fixed(s1, s2) {
            continue;
        }
        let (s1p, t1) = f.get(w[0], s1);
        let (s2p, t2) = f.get(t1, s2);
        if !f.is_fixed(s1p, s2p) && s2p != e && t2 != e {
            return Ok(CheckReport::fail(
                "weak-domino-upper-right",
                w,
                "domino fails with no neutral letter in the upper-right cells",
            ));
        }
    }
    Ok(CheckReport::pass(
        "weak-domino-upper-right",
        "domino failures only with the neutral letter in the upper-right cells",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn sort(names: &[&str]) -> QuadMap {
        QuadMap::sorting(Alphabet::new(names.iter().copied(), None).unwrap())
    }

    fn w(f: &QuadMap, s: &str) -> Word {
        f.alphabet().parse_word(s).unwrap()
    }

    #[test]
    fn normality() {
        let f = sort(&["a", "b", "c"]);
        assert!(is_normal(&f, &w(&f, "a b c")));
        assert!(!is_normal(&f, &w(&f, "c b a")));
        assert!(is_normal(&f, &Word::empty()));
        assert!(is_normal(&f, &w(&f, "c")));
    }

    #[test]
    fn sort_class_and_witnesses() {
        let f = sort(&["a", "b", "c"]);
        let c = minimal_class(&f).unwrap();
        assert_eq!((c.left, c.right), (ClassValue::Finite(3), ClassValue::Finite(3)));
        assert_eq!(f.alphabet().render(c.left_witness.as_ref().unwrap()), "b b a");
        assert_eq!(f.alphabet().render(c.right_witness.as_ref().unwrap()), "b a a");
        let one = sort(&["x"]);
        let c = minimal_class(&one).unwrap();
        assert_eq!((c.left, c.right), (ClassValue::Finite(0), ClassValue::Finite(0)));
        assert!(c.left_witness.is_none());
    }

    #[test]
    fn class_needs_idempotency() {
        let ab = Alphabet::new(["a", "b"], None).unwrap();
        let swap = QuadMap::from_fn(ab, |s, t| (t, s)).unwrap();
        assert_eq!(minimal_class(&swap), Err(Error::NotIdempotent));
    }

    #[test]
    fn diverging_limits_give_infinite_class() {
        // a|b|c normalises to a|a|c from the left and to a|c|c from the right.
        let abc = Alphabet::new(["a", "b", "c"], None).unwrap();
        let (a, b, c) = (Letter::from_id(0), Letter::from_id(1), Letter::from_id(2));
        let mut f = QuadMap::identity(abc);
        f.set(a, b, (a, a)).unwrap();
        f.set(b, c, (c, c)).unwrap();
        let report = minimal_class(&f).unwrap();
        assert_eq!((report.left, report.right), (ClassValue::Infinite, ClassValue::Infinite));
        assert_eq!(f.alphabet().render(report.orbit_cycle.as_ref().unwrap()), "a b c");
        assert_eq!(is_of_class(&f, 9, 9), Err(Error::InfiniteClass));
        assert!(!check_class_equalities(&f, 9, 9).passed);
    }

    #[test]
    fn is_of_class_upward() {
        let f = sort(&["a", "b", "c"]);
        assert!(is_of_class(&f, 4, 3).unwrap().passed);
        assert!(is_of_class(&f, 3, 3).unwrap().passed);
        let r = is_of_class(&f, 2, 3).unwrap();
        assert!(!r.passed);
        assert_eq!(f.alphabet().render(r.witness.as_ref().unwrap()), "b b a");
    }

    #[test]
    fn normalize_sort_examples() {
        let f = sort(&["r", "s", "t"]);
        let (out, used) = normalize(&f, &w(&f, "t s r"), Strategy::LeftAlt).unwrap();
        assert_eq!(f.alphabet().render(&out), "r s t");
        assert_eq!(used.positions(), &[1, 2, 1]);
        let g = sort(&["a", "b", "c"]);
        for s in Strategy::ALL {
            let (out, _) = normalize(&g, &w(&g, "b a c a b c"), s).unwrap();
            assert_eq!(g.alphabet().render(&out), "a a b b c c", "{s:?}");
        }
    }

    #[test]
    fn recipe43_rejects_higher_class() {
        let f = crate::catalog::ab5_map(false);
        assert!(matches!(
            normalize(&f, &w(&f, "a b1 a"), Strategy::Recipe43),
            Err(Error::Precondition(_))
        ));
        let (out, used) = normalize(&f, &w(&f, "a b1 a"), Strategy::RightAlt).unwrap();
        assert_eq!(f.alphabet().render(&out), "a b5 a");
        assert_eq!(used.positions(), &[2, 1, 2, 1]);
    }

    #[test]
    fn recipe43_on_sort() {
        let f = sort(&["a", "b", "c"]);
        let (out, used) = normalize(&f, &w(&f, "c b a"), Strategy::Recipe43).unwrap();
        assert_eq!(f.alphabet().render(&out), "a b c");
        assert_eq!(used.positions(), &[2, 1, 2]);
    }

    #[test]
    fn cycling_map_reports_non_normalisation() {
        let ab = Alphabet::new(["a", "b"], None).unwrap();
        let f = QuadMap::from_fn(ab, |s, t| (t, s)).unwrap();
        let word = w(&f, "a b");
        for s in [Strategy::LeftAlt, Strategy::RightAlt, Strategy::LeftmostReducible] {
            assert!(matches!(
                normalize(&f, &word, s),
                Err(Error::NonNormalising { .. })
            ));
        }
    }

    #[test]
    fn domino_on_sort() {
        assert!(check_domino(&sort(&["a", "b", "c"])).passed);
    }

    #[test]
    fn weak_domino_needs_neutral() {
        assert_eq!(check_weak_domino(&sort(&["a"])), Err(Error::NoNeutral));
    }
}
