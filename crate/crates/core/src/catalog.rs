//! Built-in example maps with their expected check outcomes.

use crate::classifier::{check_domino, check_weak_domino, is_of_class, minimal_class, ClassValue};
use crate::error::{Error, Result};
use crate::factorability::{
    check_2121_extended_form, check_local_factorability, check_normalisation_clauses, check_stable212,
    roundtrip_check,
};
use crate::monoid::{MonoidModel, MonoidOracle};
use crate::quadmap::QuadMap;
use crate::report::CheckReport;
use crate::rewriting::{check_local_confluence, derive_rules, termination_analysis, Mode, TerminationVerdict};
use crate::words::{Alphabet, Word};

pub const NAMES: [&str; 4] = ["freecomm-abc", "sign", "ab5", "free1"];

/// Sort map on a b c with a neutral letter e.
pub fn freecomm_abc() -> QuadMap {
    QuadMap::sorting(Alphabet::new(["a", "b", "c", "e"], Some("e")).expect("valid"))
}

/// η∘μ on pairs of the integers under g ↦ (sgn g, g − sgn g), with 0 neutral.
pub fn sign_map() -> QuadMap {
    let alphabet = Alphabet::new(["0", "+1", "-1"], Some("0")).expect("valid");
    let value = |l: crate::words::Letter| [0i64, 1, -1][l.id()];
    let letter = |v: i64| crate::words::Letter::from_id([0, 1, 2][(v.rem_euclid(3)) as usize]);
    QuadMap::from_fn(alphabet, |s, t| {
        let g = value(s) + value(t);
        (letter(g.signum()), letter(g - g.signum()))
    })
    .expect("closed on generator pairs")
}

/// a|bᵢ → a|bᵢ₊₁ for i ∈ {2,4} and bᵢ|a → bᵢ₊₁|a for i ∈ {1,3}, optionally
/// with a neutral letter e.
pub fn ab5_map(with_neutral: bool) -> QuadMap {
    let mut names = vec!["a", "b1", "b2", "b3", "b4", "b5"];
    if with_neutral {
        names.push("e");
    }
    let alphabet = Alphabet::new(names, with_neutral.then_some("e")).expect("valid");
    let l = |n: &str| alphabet.letter(n).expect("declared");
    let b = |i: usize| l(&format!("b{i}"));
    let a = l("a");
    let e = alphabet.neutral();
    QuadMap::from_fn(alphabet.clone(), |s, t| {
        if Some(s) == e {
            return (t, s);
        }
        for i in [2, 4] {
            if (s, t) == (a, b(i)) {
                return (a, b(i + 1));
            }
        }
        for i in [1, 3] {
            if (s, t) == (b(i), a) {
                return (b(i + 1), a);
            }
        }
        (s, t)
    })
    .expect("closed")
}

/// One generator x and the neutral letter e.
pub fn free1() -> QuadMap {
    QuadMap::sorting(Alphabet::new(["x", "e"], Some("e")).expect("valid"))
}

/// Where an expected outcome comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// Stated for this example in the literature.
    Published,
    /// Obtained by exhaustive computation.
    Computed,
    /// Immediate from the definitions.
    Definitional,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub check: &'static str,
    pub passes: bool,
    /// Rendered witness expected on failure.
    pub witness: Option<&'static str>,
    pub source: Source,
}

const fn pass(check: &'static str, source: Source) -> Expectation {
    Expectation { check, passes: true, witness: None, source }
}

const fn fail(check: &'static str, witness: &'static str, source: Source) -> Expectation {
    Expectation { check, passes: false, witness: Some(witness), source }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub map: QuadMap,
    /// Map used for the monoid model and derived rewriting system.
    pub model_map: QuadMap,
    pub oracle: Option<MonoidOracle>,
    pub class: (ClassValue, ClassValue),
    pub class_source: Source,
    pub expected: Vec<Expectation>,
}

pub fn load(name: &str) -> Result<CatalogEntry> {
    use Source::*;
    let f = ClassValue::Finite;
    let entry = match name {
        "freecomm-abc" => CatalogEntry {
            name: "freecomm-abc",
            description: "free commutative monoid on a b c, sorting normal form, neutral e",
            map: freecomm_abc(),
            model_map: freecomm_abc(),
            oracle: Some(MonoidOracle::Multiset),
            class: (f(3), f(3)),
            class_source: Published,
            expected: vec![
                pass("idempotent", Definitional),
                pass("neutral", Definitional),
                pass("domino", Computed),
                pass("weak-domino", Computed),
                pass("class(4,3)", Computed),
                pass("class(5,4)", Computed),
                pass("local-factorability", Computed),
                pass("roundtrip", Computed),
                pass("extended-form", Computed),
                pass("normalisation", Computed),
                pass("stable212", Computed),
                pass("stronger-assumption", Computed),
                pass("stable212-elements", Computed),
                pass("local-confluence", Computed),
                pass("termination", Computed),
                pass("factorisation", Computed),
                pass("associative", Computed),
                pass("oracle", Computed),
                pass("left-cancellative", Computed),
                pass("no-invertibles", Computed),
                fail("left-weighted", "b a", Computed),
                fail("greedy", "b a b", Computed),
            ],
        },
        "sign" => CatalogEntry {
            name: "sign",
            description: "integers under addition, factorised by the sign function, 0 neutral",
            map: sign_map(),
            model_map: sign_map(),
            oracle: Some(MonoidOracle::integer_sum(&[0, 1, -1])),
            class: (f(3), f(4)),
            class_source: Computed,
            expected: vec![
                pass("idempotent", Published),
                pass("neutral", Published),
                fail("domino", "+1 -1 -1", Computed),
                pass("weak-domino", Published),
                fail("class(4,3)", "+1 -1 -1", Computed),
                fail("class(5,3)", "+1 -1 -1", Published),
                pass("class(5,4)", Published),
                pass("local-factorability", Published),
                pass("roundtrip", Computed),
                pass("extended-form", Computed),
                pass("normalisation", Computed),
                fail("stable212", "+1 -1 -1", Published),
                fail("stronger-assumption", "+1 -1 -1", Computed),
                fail("stable212-elements", "+1 -1 -1", Computed),
                pass("local-confluence", Computed),
                pass("termination", Computed),
                pass("factorisation", Published),
                pass("associative", Computed),
                pass("oracle", Computed),
                pass("left-cancellative", Computed),
                fail("no-invertibles", "+1", Computed),
                pass("left-weighted", Computed),
            ],
        },
        "ab5" => CatalogEntry {
            name: "ab5",
            description: "letters a b1..b5 with subscript-raising rules, neutral e",
            map: ab5_map(true),
            model_map: ab5_map(false),
            oracle: None,
            class: (f(5), f(4)),
            class_source: Published,
            expected: vec![
                pass("idempotent", Definitional),
                pass("neutral", Definitional),
                fail("domino", "a b1 a", Published),
                fail("weak-domino", "a b1 a", Published),
                fail("class(4,3)", "a b1 a", Published),
                pass("class(5,4)", Published),
                fail("local-factorability", "a b1 a", Published),
                pass("local-confluence", Published),
                pass("termination", Published),
                pass("associative", Computed),
            ],
        },
        "free1" => CatalogEntry {
            name: "free1",
            description: "free monoid on one generator x, neutral e",
            map: free1(),
            model_map: free1(),
            oracle: Some(MonoidOracle::Multiset),
            class: (f(3), f(3)),
            class_source: Computed,
            expected: vec![
                pass("idempotent", Definitional),
                pass("neutral", Definitional),
                pass("domino", Definitional),
                pass("weak-domino", Definitional),
                pass("class(4,3)", Definitional),
                pass("local-factorability", Definitional),
                pass("roundtrip", Definitional),
                pass("stable212", Definitional),
                pass("stronger-assumption", Definitional),
                pass("local-confluence", Definitional),
                pass("termination", Definitional),
                pass("associative", Definitional),
                pass("oracle", Definitional),
                pass("left-weighted", Definitional),
                pass("greedy", Definitional),
            ],
        },
        other => return Err(Error::UnknownEntry(other.to_string())),
    };
    Ok(entry)
}

/// Search bound for divisibility complements.
pub const SEARCH_LEN: usize = 4;

fn parse_class(check: &str) -> Option<(usize, usize)> {
    let inner = check.strip_prefix("class(")?.strip_suffix(')')?;
    let (m, n) = inner.split_once(',')?;
    Some((m.parse().ok()?, n.parse().ok()?))
}

fn derived_rules(entry: &CatalogEntry) -> Result<crate::rewriting::RewriteSystem> {
    let m = &entry.model_map;
    let mode = if m.alphabet().neutral().is_some() { Mode::ModE } else { Mode::Plain };
    derive_rules(m, mode)
}

/// Evaluates one named check on an entry.
pub fn run_check(entry: &CatalogEntry, check: &str) -> Result<CheckReport> {
    let f = &entry.map;
    if let Some((m, n)) = parse_class(check) {
        return is_of_class(f, m, n);
    }
    let model = || MonoidModel::new(entry.model_map.clone());
    let report = match check {
        "idempotent" => f.check_idempotent(),
        "neutral" => f.check_neutral()?,
        "domino" => check_domino(f),
        "weak-domino" => check_weak_domino(f)?,
        "local-factorability" => {
            let r = check_local_factorability(f, entry.oracle.as_ref())?;
            match r.first_failure() {
                None => CheckReport::pass(check, "axioms hold"),
                Some(bad) => CheckReport::fail(
                    check,
                    bad.witness.clone().unwrap_or_default(),
                    format!("{} fails", bad.name),
                ),
            }
        }
        "roundtrip" => roundtrip_check(f)?,
        "extended-form" => check_2121_extended_form(f)?,
        "normalisation" => check_normalisation_clauses(f, 4)?,
        "stable212" => check_stable212(f),
        "stronger-assumption" => model()?.check_stronger_assumption(5),
        "stable212-elements" => model()?.check_stable212_on_elements(2),
        "local-confluence" => check_local_confluence(&derived_rules(entry)?),
        "termination" => {
            let rep = termination_analysis(&derived_rules(entry)?, 6, 10_000_000);
            match (rep.verdict, rep.witness) {
                (TerminationVerdict::TerminatingAtScale, _) => CheckReport::pass(check, "terminating up to length 6"),
                (v, w) => CheckReport::fail(
                    check,
                    w.and_then(|c| c.into_iter().next()).unwrap_or_default(),
                    format!("{v:?}"),
                ),
            }
        }
        "factorisation" => model()?.check_factorisation_axioms(4),
        "associative" => model()?.check_associative(6),
        "oracle" => match &entry.oracle {
            Some(o) => model()?.check_oracle(o, 5),
            None => return Err(Error::Precondition("no oracle".into())),
        },
        "left-cancellative" => model()?.check_left_cancellative(3),
        "no-invertibles" => match model()?.find_invertible(3) {
            None => CheckReport::pass(check, "no non-identity element has a right inverse"),
            Some(u) => CheckReport::fail(check, u.canonical().clone(), "right-invertible element"),
        },
        "left-weighted" => model()?.check_left_weighted(SEARCH_LEN),
        "greedy" => model()?.check_greedy(3, SEARCH_LEN),
        other => return Err(Error::Precondition(format!("unknown check `{other}`"))),
    };
    Ok(report)
}

/// Outcome of comparing one check against its expectation.
#[derive(Clone, Debug)]
pub struct ExpectationResult {
    pub expectation: Expectation,
    pub actual: std::result::Result<CheckReport, Error>,
    pub met: bool,
}

impl ExpectationResult {
    pub fn line(&self, alphabet: &Alphabet) -> String {
        let verdict = if self.met { "MET" } else { "UNMET" };
        let actual = match &self.actual {
            Ok(r) => r.line(alphabet),
            Err(e) => format!("ERROR {e}"),
        };
        format!("EXPECT {} {verdict} ({actual})", self.expectation.check)
    }
}

/// Minimal class plus every expectation of the entry.
pub fn run_all(entry: &CatalogEntry) -> Vec<ExpectationResult> {
    let a = entry.map.alphabet();
    let mut out = Vec::new();
    let class = minimal_class(&entry.map);
    let class_met = matches!(&class, Ok(c) if (c.left, c.right) == entry.class);
    let class_actual = class.map(|c| {
        let name = format!("minimal-class({},{})", c.left, c.right);
        if class_met {
            CheckReport::pass(name, "as expected")
        } else {
            CheckReport::fail(name, c.left_witness.clone().unwrap_or_default(), "unexpected class")
        }
    });
    out.push(ExpectationResult {
        expectation: Expectation {
            check: "minimal-class",
            passes: true,
            witness: None,
            source: entry.class_source,
        },
        actual: class_actual,
        met: class_met,
    });
    for exp in &entry.expected {
        let actual = run_check(entry, exp.check);
        let met = match &actual {
            Ok(r) => {
                r.passed == exp.passes
                    && exp.witness.is_none_or(|w| {
                        r.witness.as_ref().map(|x| a.render(x)) == Some(w.to_string())
                    })
            }
            Err(_) => false,
        };
        out.push(ExpectationResult {
            expectation: exp.clone(),
            actual,
            met,
        });
    }
    out
}

/// The `.qmap`-style description of an entry's map.
pub fn describe(entry: &CatalogEntry) -> String {
    format!("# {}\n{}", entry.description, crate::format::print(&entry.map))
}

#[doc(hidden)]
pub fn word(map: &QuadMap, text: &str) -> Word {
    map.alphabet().parse_word(text).expect("valid word")
}
