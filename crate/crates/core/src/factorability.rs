//! The recursive normalisation map N_φ, its padded extension, and the local
//! factorability axioms.

use crate::classifier::weak_domino_over;
use crate::error::{Error, Result};
use crate::monoid::MonoidOracle;
use crate::quadmap::QuadMap;
use crate::report::CheckReport;
use crate::rewriting::{critical_pairs, derive_rules, CriticalOutcome, Mode};
use crate::words::{alt_seq, words_of_len, words_up_to, Letter, Word};

/// N_φ: neutral letters are removed first; otherwise the first letter is
/// swept through the normalised suffix, recursing whenever the sweep
/// produces a neutral letter.
pub fn n_phi(f: &QuadMap, w: &Word) -> Result<Word> {
    let e = f.alphabet().require_neutral()?;
    f.alphabet().check_word(w)?;
    Ok(n_phi_unchecked(f, e, w))
}

pub(crate) fn n_phi_unchecked(f: &QuadMap, e: Letter, w: &[Letter]) -> Word {
    if w.is_empty() {
        return Word::empty();
    }
    if w.contains(&e) {
        let stripped: Vec<Letter> = w.iter().copied().filter(|&l| l != e).collect();
        return n_phi_unchecked(f, e, &stripped);
    }
    let tail = n_phi_unchecked(f, e, &w[1..]);
    let mut u = Vec::with_capacity(tail.len() + 1);
    u.push(w[0]);
    u.extend_from_slice(&tail);
    for i in 0..u.len().saturating_sub(1) {
        f.apply_in_place(&mut u, i);
    }
    if u.contains(&e) {
        n_phi_unchecked(f, e, &u)
    } else {
        Word::from(u)
    }
}

/// N_φ′(w) = N_φ(w) padded with neutral letters to |w|.
pub fn n_phi_prime(f: &QuadMap, w: &Word) -> Result<Word> {
    let n = n_phi(f, w)?;
    f.alphabet().pad_neutral(&n, w.len())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorabilityReport {
    /// Axioms (2)–(5), in order.
    pub axioms: Vec<CheckReport>,
    /// Axiom (1); present only when an oracle was supplied.
    pub presentation: Option<CheckReport>,
    /// Local confluence of the derived mod-e rewriting system.
    pub confluence: CheckReport,
    pub overall: bool,
}

impl FactorabilityReport {
    pub fn axioms_pass(&self) -> bool {
        self.axioms.iter().all(|r| r.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckReport> {
        self.axioms
            .iter()
            .chain(self.presentation.iter())
            .chain(std::iter::once(&self.confluence))
            .find(|r| !r.passed)
    }

    pub fn reports(&self) -> Vec<&CheckReport> {
        self.axioms
            .iter()
            .chain(self.presentation.iter())
            .chain(std::iter::once(&self.confluence))
            .collect()
    }
}

fn renamed(mut r: CheckReport, name: &str) -> CheckReport {
    r.name = name.to_string();
    r
}

/// Axioms (2)–(5) only.
pub fn check_axioms(f: &QuadMap) -> Result<Vec<CheckReport>> {
    let e = f.alphabet().require_neutral()?;
    let plus = f.alphabet().positive_letters();
    Ok(vec![
        renamed(f.check_idempotent(), "axiom2"),
        renamed(f.check_neutral()?, "axiom3"),
        weak_domino_over(f, e, &plus, "axiom4"),
        check_axiom5(f, e, &plus),
    ])
}

fn check_axiom5(f: &QuadMap, e: Letter, plus: &[Letter]) -> CheckReport {
    for w in words_of_len(plus, 3) {
        let mut moved = w.clone();
        f.apply_in_place(moved.as_mut_slice(), 0);
        if n_phi_unchecked(f, e, &w) != n_phi_unchecked(f, e, &moved) {
            return CheckReport::fail("axiom5", w, "N_phi changes under F at position 1");
        }
    }
    CheckReport::pass("axiom5", "N_phi is invariant under F at position 1")
}

pub fn check_local_factorability(
    f: &QuadMap,
    oracle: Option<&MonoidOracle>,
) -> Result<FactorabilityReport> {
    let axioms = check_axioms(f)?;
    let presentation = oracle.map(|o| check_presentation(f, o));
    let confluence = check_derived_confluence(f)?;
    let overall = axioms.iter().all(|r| r.passed)
        && presentation.as_ref().is_none_or(|r| r.passed)
        && confluence.passed;
    Ok(FactorabilityReport {
        axioms,
        presentation,
        confluence,
        overall,
    })
}

/// ev(s|t) = ev(F(s,t)) under the oracle, for every pair.
pub fn check_presentation(f: &QuadMap, oracle: &MonoidOracle) -> CheckReport {
    for (s, t) in f.pairs() {
        let (u, v) = f.get(s, t);
        if oracle.eval(f.alphabet(), &[s, t]) != oracle.eval(f.alphabet(), &[u, v]) {
            return CheckReport::fail("axiom1", Word::from([s, t]), "oracle values differ");
        }
    }
    CheckReport::pass("axiom1", "every relation holds in the oracle")
}

fn check_derived_confluence(f: &QuadMap) -> Result<CheckReport> {
    let rules = derive_rules(f, Mode::ModE)?;
    for cp in critical_pairs(&rules) {
        if !matches!(cp.outcome, CriticalOutcome::Joinable { .. }) {
            return Ok(CheckReport::fail(
                "local-confluence",
                cp.overlap,
                "a critical pair of the derived rules is not joined",
            ));
        }
    }
    Ok(CheckReport::pass("local-confluence", "all critical pairs are joinable"))
}

/// N_φ′ reproduces F on pairs (up to neutral placement) and is invariant
/// under F₁ and F₂ on every triple.
pub fn roundtrip_check(f: &QuadMap) -> Result<CheckReport> {
    let a = f.alphabet();
    let e = a.require_neutral()?;
    let letters = a.all_letters();
    for w in words_of_len(&letters, 2) {
        let lhs = n_phi_unchecked(f, e, &w);
        let (u, v) = f.get(w[0], w[1]);
        if lhs != a.strip_neutral(&Word::from([u, v]))? {
            return Ok(CheckReport::fail("roundtrip", w, "N_phi' differs from F on this pair"));
        }
    }
    for w in words_of_len(&letters, 3) {
        let base = n_phi_unchecked(f, e, &w);
        for i in 0..2 {
            let mut moved = w.clone();
            f.apply_in_place(moved.as_mut_slice(), i);
            if n_phi_unchecked(f, e, &moved) != base {
                return Ok(CheckReport::fail(
                    "roundtrip",
                    w,
                    format!("N_phi' changes under F at position {}", i + 1),
                ));
            }
        }
    }
    Ok(CheckReport::pass("roundtrip", "N_phi' restricts to F and absorbs it"))
}

/// The clauses of a normalisation for N_φ′ on words up to `max_len`:
/// length preservation, identity on letters, and N(u|N(v)|w) = N(u|v|w).
pub fn check_normalisation_clauses(f: &QuadMap, max_len: usize) -> Result<CheckReport> {
    let a = f.alphabet();
    let e = a.require_neutral()?;
    let letters = a.all_letters();
    let prime = |w: &[Letter]| -> Word {
        let mut n = n_phi_unchecked(f, e, w).into_letters();
        n.resize(w.len(), e);
        Word::from(n)
    };
    for &s in &letters {
        if prime(&[s]) != Word::from([s]) {
            return Ok(CheckReport::fail("normalisation", Word::from([s]), "not the identity on letters"));
        }
    }
    for x in words_up_to(&letters, max_len) {
        let nx = prime(&x);
        for i in 0..=x.len() {
            for j in i..=x.len() {
                let mut y = x[..i].to_vec();
                y.extend_from_slice(&prime(&x[i..j]));
                y.extend_from_slice(&x[j..]);
                if prime(&y) != nx {
                    return Ok(CheckReport::fail(
                        "normalisation",
                        x,
                        format!("N(u|N(v)|w) differs from N(u|v|w) for v at {}..{}", i + 1, j),
                    ));
                }
            }
        }
    }
    Ok(CheckReport::pass("normalisation", "N_phi' is a normalisation at this length"))
}

/// F₂₁₂ = F₂₁₂₁ on every triple of non-neutral letters.
pub fn check_stable212(f: &QuadMap) -> CheckReport {
    let plus = f.alphabet().positive_letters();
    let (s3, s4) = (alt_seq(2, 3), alt_seq(2, 4));
    for w in words_of_len(&plus, 3) {
        if f.apply_seq(&w, &s3).expect("triple") != f.apply_seq(&w, &s4).expect("triple") {
            return CheckReport::fail("stable212", w, "F212 and F2121 differ");
        }
    }
    CheckReport::pass("stable212", "F212 = F2121 on every triple")
}

/// F₂₁₂₁(w) = N_φ′(w) on every triple over the full alphabet. Requires
/// axioms (2)–(4).
pub fn check_2121_extended_form(f: &QuadMap) -> Result<CheckReport> {
    let axioms = check_axioms(f)?;
    if let Some(bad) = axioms[..3].iter().find(|r| !r.passed) {
        return Err(Error::Precondition(format!("{} fails", bad.name)));
    }
    let e = f.alphabet().require_neutral()?;
    let s4 = alt_seq(2, 4);
    for w in words_of_len(&f.alphabet().all_letters(), 3) {
        let mut n = n_phi_unchecked(f, e, &w).into_letters();
        n.resize(3, e);
        if f.apply_seq(&w, &s4).expect("triple") != Word::from(n) {
            return Ok(CheckReport::fail("extended-form", w, "F2121 differs from N_phi'"));
        }
    }
    Ok(CheckReport::pass("extended-form", "F2121 is the padded N_phi on triples"))
}
