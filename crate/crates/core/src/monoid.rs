//! A finite model of the monoid presented by a map: elements are canonical
//! normal words, multiplied by normalising the concatenation.

use crate::classifier::is_normal;
use crate::error::{Error, Result};
use crate::factorability::{check_axioms, n_phi_unchecked};
use crate::quadmap::QuadMap;
use crate::report::CheckReport;
use crate::rewriting::{check_local_confluence, derive_rules, termination_analysis, Mode, TerminationVerdict};
use crate::words::{words_of_len, words_up_to, Alphabet, Letter, Word};

/// An independent multiplication used to cross-check the model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidOracle {
    /// Letters evaluate to integers under addition; indexed by letter id.
    IntegerSum(Vec<i64>),
    /// Free commutative monoid on the non-neutral letters.
    Multiset,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OracleValue {
    Int(i64),
    Counts(Vec<usize>),
}

impl MonoidOracle {
    pub fn integer_sum(weights: &[i64]) -> Self {
        MonoidOracle::IntegerSum(weights.to_vec())
    }

    pub fn identity(&self, alphabet: &Alphabet) -> OracleValue {
        match self {
            MonoidOracle::IntegerSum(_) => OracleValue::Int(0),
            MonoidOracle::Multiset => OracleValue::Counts(vec![0; alphabet.len()]),
        }
    }

    pub fn multiply(&self, x: &OracleValue, y: &OracleValue) -> OracleValue {
        match (x, y) {
            (OracleValue::Int(a), OracleValue::Int(b)) => OracleValue::Int(a + b),
            (OracleValue::Counts(a), OracleValue::Counts(b)) => {
                OracleValue::Counts(a.iter().zip(b).map(|(p, q)| p + q).collect())
            }
            _ => panic!("oracle values of different kinds"),
        }
    }

    pub fn letter(&self, alphabet: &Alphabet, l: Letter) -> OracleValue {
        match self {
            MonoidOracle::IntegerSum(w) => OracleValue::Int(w[l.id()]),
            MonoidOracle::Multiset => {
                let mut counts = vec![0; alphabet.len()];
                if !alphabet.is_neutral(l) {
                    counts[l.id()] = 1;
                }
                OracleValue::Counts(counts)
            }
        }
    }

    pub fn eval(&self, alphabet: &Alphabet, w: &[Letter]) -> OracleValue {
        w.iter().fold(self.identity(alphabet), |acc, &l| {
            self.multiply(&acc, &self.letter(alphabet, l))
        })
    }
}

/// An element, identified with its canonical normal word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonoidElement(Word);

impl MonoidElement {
    pub fn canonical(&self) -> &Word {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }
}

/// η(f) = (head, tail) with |head| ≤ 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorisationPair {
    pub head: MonoidElement,
    pub tail: MonoidElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Divisibility {
    /// f·complement = g.
    Divides(MonoidElement),
    /// No complement exists (complete search in the graded case).
    Refuted,
    NotFoundWithinBound,
}

impl Divisibility {
    pub fn holds(&self) -> bool {
        matches!(self, Divisibility::Divides(_))
    }
}

#[derive(Clone, Debug)]
pub struct MonoidModel {
    map: QuadMap,
    neutral: Option<Letter>,
    plus: Vec<Letter>,
}

/// Word length used to validate maps without a neutral letter.
const VALIDATION_LEN: usize = 4;

impl MonoidModel {
    /// Maps with a neutral letter must satisfy axioms (2)–(5); maps without
    /// one must derive a locally confluent system terminating at scale.
    pub fn new(map: QuadMap) -> Result<Self> {
        let neutral = map.alphabet().neutral();
        match neutral {
            Some(_) => {
                if let Some(bad) = check_axioms(&map)?.into_iter().find(|r| !r.passed) {
                    return Err(Error::Precondition(format!("{} fails", bad.name)));
                }
            }
            None => {
                if !map.check_idempotent().passed {
                    return Err(Error::NotIdempotent);
                }
                let rules = derive_rules(&map, Mode::Plain)?;
                if !check_local_confluence(&rules).passed {
                    return Err(Error::Precondition("derived rules are not locally confluent".into()));
                }
                if termination_analysis(&rules, VALIDATION_LEN, 1_000_000).verdict
                    != TerminationVerdict::TerminatingAtScale
                {
                    return Err(Error::Precondition("derived rules do not terminate".into()));
                }
            }
        }
        let plus = map.alphabet().positive_letters();
        Ok(MonoidModel { map, neutral, plus })
    }

    pub fn map(&self) -> &QuadMap {
        &self.map
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.map.alphabet()
    }

    pub fn generators(&self) -> &[Letter] {
        &self.plus
    }

    /// The canonical normal word of the element a word evaluates to.
    pub fn normal_form(&self, w: &[Letter]) -> Word {
        match self.neutral {
            Some(e) => n_phi_unchecked(&self.map, e, w),
            None => {
                let mut out = Word::from(w);
                let s = out.as_mut_slice();
                let mut steps = 0u64;
                while let Some(i) = s.windows(2).position(|p| !self.map.is_fixed(p[0], p[1])) {
                    self.map.apply_in_place(s, i);
                    steps += 1;
                    assert!(steps < 1 << 32, "rewriting did not terminate");
                }
                out
            }
        }
    }

    pub fn ev(&self, w: &[Letter]) -> MonoidElement {
        MonoidElement(self.normal_form(w))
    }

    pub fn identity(&self) -> MonoidElement {
        MonoidElement(Word::empty())
    }

    pub fn generator(&self, s: Letter) -> MonoidElement {
        self.ev(&[s])
    }

    /// Normal words over the generators of length at most `max_len`, by
    /// length and then lexicographically.
    pub fn enumerate_elements(&self, max_len: usize) -> Vec<MonoidElement> {
        words_up_to(&self.plus, max_len)
            .into_iter()
            .filter(|w| is_normal(&self.map, w))
            .map(MonoidElement)
            .collect()
    }

    pub fn multiply(&self, f: &MonoidElement, g: &MonoidElement) -> MonoidElement {
        self.ev(&f.0.concat(&g.0))
    }

    pub fn eta(&self, f: &MonoidElement) -> FactorisationPair {
        match f.0.split_first() {
            None => FactorisationPair {
                head: self.identity(),
                tail: self.identity(),
            },
            Some((&s, rest)) => FactorisationPair {
                head: self.generator(s),
                tail: self.ev(rest),
            },
        }
    }

    /// Iterated head splitting.
    pub fn nf_eta(&self, f: &MonoidElement) -> Word {
        let mut out = Word::empty();
        let mut cur = f.clone();
        while !cur.is_identity() {
            let FactorisationPair { head, tail } = self.eta(&cur);
            if head.is_identity() {
                break;
            }
            for &l in head.canonical().iter() {
                out.push(l);
            }
            cur = tail;
        }
        out
    }

    /// Evaluation is well defined (F_i does not change the element of any
    /// word up to `max_len`), and every element up to `max_len` is canonical
    /// and splits geodesically into a generator and a tail.
    pub fn check_factorisation_axioms(&self, max_len: usize) -> CheckReport {
        const NAME: &str = "factorisation";
        let letters = self.alphabet().all_letters();
        for w in words_up_to(&letters, max_len) {
            let base = self.normal_form(&w);
            for i in 0..w.len().saturating_sub(1) {
                let mut moved = w.clone();
                self.map.apply_in_place(moved.as_mut_slice(), i);
                if self.normal_form(&moved) != base {
                    return CheckReport::fail(NAME, w, format!("evaluation changes under F at position {}", i + 1));
                }
            }
        }
        for f in self.enumerate_elements(max_len) {
            if self.normal_form(f.canonical()) != *f.canonical() {
                return CheckReport::fail(NAME, f.0, "normal word is not canonical");
            }
            if f.is_identity() {
                continue;
            }
            let FactorisationPair { head, tail } = self.eta(&f);
            if head.len() != 1 || self.alphabet().is_neutral(head.canonical()[0]) {
                return CheckReport::fail(NAME, f.0, "head is not a generator");
            }
            if self.multiply(&head, &tail) != f {
                return CheckReport::fail(NAME, f.0, "head times tail differs from the element");
            }
            if f.len() != 1 + tail.len() {
                return CheckReport::fail(NAME, f.0, "factorisation is not geodesic");
            }
        }
        CheckReport::pass(NAME, "every element factors geodesically")
    }

    /// Searches complements of length at most `search_len`. A miss is
    /// conclusive when the map never produces the neutral letter and the
    /// bound covers |g|.
    pub fn left_divides(&self, f: &MonoidElement, g: &MonoidElement, search_len: usize) -> Divisibility {
        for c in self.enumerate_elements(search_len) {
            if self.multiply(f, &c) == *g {
                return Divisibility::Divides(c);
            }
        }
        if !self.map.produces_neutral() && search_len >= g.len() {
            Divisibility::Refuted
        } else {
            Divisibility::NotFoundWithinBound
        }
    }

    /// (sf)′ = (s·f′)′ and the tail of sf = tail(s·f′)·tail(f), for every
    /// generator s and element f with 1 ≤ |f| ≤ max_len. The witness is s|f.
    pub fn check_stronger_assumption(&self, max_len: usize) -> CheckReport {
        const NAME: &str = "stronger-assumption";
        let elements = self.enumerate_elements(max_len);
        for &s in &self.plus {
            let se = self.generator(s);
            for f in elements.iter().filter(|f| !f.is_identity()) {
                let whole = self.eta(&self.multiply(&se, f));
                let ef = self.eta(f);
                let part = self.eta(&self.multiply(&se, &ef.head));
                let witness = Word::from([s]).concat(f.canonical());
                if whole.head != part.head {
                    return CheckReport::fail(NAME, witness, "heads differ");
                }
                if whole.tail != self.multiply(&part.tail, &ef.tail) {
                    return CheckReport::fail(NAME, witness, "tails differ");
                }
            }
        }
        CheckReport::pass(NAME, "the stronger assumption holds at this length")
    }

    /// ημ applied at positions 2,1,2 and 2,1,2,1 agrees on triples of
    /// elements up to `max_len`; a bounded check of the statement on M³.
    pub fn check_stable212_on_elements(&self, max_len: usize) -> CheckReport {
        const NAME: &str = "stable212-elements";
        let elements = self.enumerate_elements(max_len);
        let step = |x: &mut [MonoidElement; 3], i: usize| {
            let FactorisationPair { head, tail } = self.eta(&self.multiply(&x[i], &x[i + 1]));
            x[i] = head;
            x[i + 1] = tail;
        };
        for f in &elements {
            for g in &elements {
                for h in &elements {
                    let mut x = [f.clone(), g.clone(), h.clone()];
                    for i in [1, 0, 1] {
                        step(&mut x, i);
                    }
                    let before = x.clone();
                    step(&mut x, 0);
                    if x != before {
                        let witness = f.canonical().concat(g.canonical()).concat(h.canonical());
                        return CheckReport::fail(NAME, witness, "212 and 2121 differ on this triple");
                    }
                }
            }
        }
        CheckReport::pass(NAME, "212 and 2121 agree on enumerated triples")
    }

    /// s|t ↦ s′|t′ implies s ⪯ s′, over pairs of generators.
    pub fn check_left_weighted(&self, search_len: usize) -> CheckReport {
        const NAME: &str = "left-weighted";
        for &s in &self.plus {
            for &t in &self.plus {
                let (sp, _) = self.map.get(s, t);
                let verdict = self.left_divides(&self.generator(s), &self.ev(&[sp]), search_len);
                if !verdict.holds() {
                    let how = match verdict {
                        Divisibility::Refuted => "refuted",
                        _ => "not found within bound",
                    };
                    return CheckReport::fail(NAME, Word::from([s, t]), format!("s does not divide s' ({how})"));
                }
            }
        }
        CheckReport::pass(NAME, "every first letter divides its image")
    }

    /// t ⪯ f·sᵢ·sᵢ₊₁ implies t ⪯ f·sᵢ, for normal words up to `max_len`,
    /// generators t and elements f up to `max_len`. Divisibility searches
    /// complements up to `search_len`.
    pub fn check_greedy(&self, max_len: usize, search_len: usize) -> CheckReport {
        const NAME: &str = "greedy";
        let elements = self.enumerate_elements(max_len);
        for g in elements.iter().filter(|g| g.len() >= 2) {
            for i in 0..g.len() - 1 {
                let (si, sj) = (self.generator(g.0[i]), self.generator(g.0[i + 1]));
                for f in &elements {
                    let fs = self.multiply(f, &si);
                    let fss = self.multiply(&fs, &sj);
                    for &t in &self.plus {
                        let te = self.generator(t);
                        if self.left_divides(&te, &fss, search_len).holds()
                            && !self.left_divides(&te, &fs, search_len).holds()
                        {
                            let witness = Word::from([t]).concat(f.canonical()).concat(&Word::from([g.0[i], g.0[i + 1]]));
                            return CheckReport::fail(NAME, witness, "t divides f s_i s_i+1 but not f s_i");
                        }
                    }
                }
            }
        }
        CheckReport::pass(NAME, "normal words are greedy at this length")
    }

    /// f·g = f·h implies g = h, over elements up to `max_len`.
    pub fn check_left_cancellative(&self, max_len: usize) -> CheckReport {
        const NAME: &str = "left-cancellative";
        let elements = self.enumerate_elements(max_len);
        for f in &elements {
            let mut seen = std::collections::HashMap::new();
            for g in &elements {
                if let Some(h) = seen.insert(self.multiply(f, g), g) {
                    let witness = f.canonical().concat(h.canonical()).concat(g.canonical());
                    return CheckReport::fail(NAME, witness, "two right factors give the same product");
                }
            }
        }
        CheckReport::pass(NAME, "left cancellation holds at this length")
    }

    /// A non-identity element with a right inverse, if one exists up to
    /// `max_len`.
    pub fn find_invertible(&self, max_len: usize) -> Option<MonoidElement> {
        let elements = self.enumerate_elements(max_len);
        elements
            .iter()
            .filter(|f| !f.is_identity())
            .find(|f| elements.iter().any(|g| self.multiply(f, g).is_identity()))
            .cloned()
    }

    /// Associativity and unit laws on triples with combined length at most
    /// `max_total`.
    pub fn check_associative(&self, max_total: usize) -> CheckReport {
        const NAME: &str = "associative";
        let mut by_len: Vec<Vec<MonoidElement>> = vec![Vec::new(); max_total + 1];
        for f in self.enumerate_elements(max_total) {
            by_len[f.len()].push(f);
        }
        let one = self.identity();
        for f in by_len.iter().flatten() {
            if self.multiply(f, &one) != *f || self.multiply(&one, f) != *f {
                return CheckReport::fail(NAME, f.0.clone(), "identity law fails");
            }
        }
        for i in 0..=max_total {
            for j in 0..=max_total - i {
                for k in 0..=max_total - i - j {
                    for f in &by_len[i] {
                        for g in &by_len[j] {
                            let fg = self.multiply(f, g);
                            for h in &by_len[k] {
                                if self.multiply(&fg, h) != self.multiply(f, &self.multiply(g, h)) {
                                    let witness = f.canonical().concat(g.canonical()).concat(h.canonical());
                                    return CheckReport::fail(NAME, witness, "(fg)h differs from f(gh)");
                                }
                            }
                        }
                    }
                }
            }
        }
        CheckReport::pass(NAME, "associative and unital at this length")
    }

    /// Words over the full alphabet up to `max_len` are equal in the model
    /// exactly when the oracle says so.
    pub fn check_oracle(&self, oracle: &MonoidOracle, max_len: usize) -> CheckReport {
        const NAME: &str = "oracle";
        let a = self.alphabet();
        let mut by_element = std::collections::HashMap::new();
        let mut by_value = std::collections::HashMap::new();
        for w in words_up_to(&a.all_letters(), max_len) {
            let el = self.ev(&w);
            let val = oracle.eval(a, &w);
            if let Some(v) = by_element.insert(el.clone(), val.clone()) {
                if v != val {
                    return CheckReport::fail(NAME, w, "equal elements with different oracle values");
                }
            }
            if let Some(e) = by_value.insert(val, el.clone()) {
                if e != el {
                    return CheckReport::fail(NAME, w, "equal oracle values with different elements");
                }
            }
        }
        CheckReport::pass(NAME, "model and oracle agree")
    }

    /// Spot check that the oracle multiplication is associative on letters.
    pub fn check_oracle_associative(&self, oracle: &MonoidOracle) -> CheckReport {
        let a = self.alphabet();
        for w in words_of_len(&a.all_letters(), 3) {
            let v: Vec<OracleValue> = w.iter().map(|&l| oracle.letter(a, l)).collect();
            let left = oracle.multiply(&oracle.multiply(&v[0], &v[1]), &v[2]);
            let right = oracle.multiply(&v[0], &oracle.multiply(&v[1], &v[2]));
            if left != right {
                return CheckReport::fail("oracle-associative", w, "oracle is not associative");
            }
        }
        CheckReport::pass("oracle-associative", "oracle is associative on letters")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn render(m: &MonoidModel, els: &[MonoidElement]) -> Vec<String> {
        els.iter().map(|e| m.alphabet().render(e.canonical())).collect()
    }

    fn el(m: &MonoidModel, s: &str) -> MonoidElement {
        m.ev(&m.alphabet().parse_word(s).unwrap())
    }

    #[test]
    fn enumerate_examples() {
        let ab = MonoidModel::new(QuadMap::sorting(Alphabet::new(["a", "b"], None).unwrap())).unwrap();
        assert_eq!(render(&ab, &ab.enumerate_elements(2)), ["^", "a", "b", "a a", "a b", "b b"]);
        assert_eq!(ab.enumerate_elements(0).len(), 1);
        let sign = MonoidModel::new(catalog::sign_map()).unwrap();
        assert_eq!(render(&sign, &sign.enumerate_elements(2)), ["^", "+1", "-1", "+1 +1", "-1 -1"]);
    }

    #[test]
    fn multiply_and_eta() {
        let sort = MonoidModel::new(catalog::freecomm_abc()).unwrap();
        let p = sort.multiply(&el(&sort, "a b"), &el(&sort, "a"));
        assert_eq!(sort.alphabet().render(p.canonical()), "a a b");
        let f = el(&sort, "b a c");
        let FactorisationPair { head, tail } = sort.eta(&f);
        assert_eq!(sort.alphabet().render(head.canonical()), "a");
        assert_eq!(sort.alphabet().render(tail.canonical()), "b c");
        let g = el(&sort, "b a c a b c");
        assert_eq!(sort.alphabet().render(&sort.nf_eta(&g)), "a a b b c c");

        let sign = MonoidModel::new(catalog::sign_map()).unwrap();
        let p = sign.multiply(&el(&sign, "+1"), &el(&sign, "-1 -1"));
        assert_eq!(sign.alphabet().render(p.canonical()), "-1");
        let two = sign.eta(&el(&sign, "-1 -1"));
        assert_eq!(sign.alphabet().render(two.head.canonical()), "-1");
        assert_eq!(sign.alphabet().render(two.tail.canonical()), "-1");
        let one = sign.eta(&sign.identity());
        assert!(one.head.is_identity() && one.tail.is_identity());
        assert_eq!(sign.alphabet().render(&sign.nf_eta(&el(&sign, "-1 -1 -1"))), "-1 -1 -1");
        assert!(sign.nf_eta(&sign.identity()).is_empty());
    }

    #[test]
    fn divisibility() {
        let sort = MonoidModel::new(catalog::freecomm_abc()).unwrap();
        assert!(sort.left_divides(&el(&sort, "a"), &el(&sort, "a b"), 2).holds());
        assert_eq!(sort.left_divides(&el(&sort, "b"), &el(&sort, "a a"), 2), Divisibility::Refuted);
        let sign = MonoidModel::new(catalog::sign_map()).unwrap();
        match sign.left_divides(&el(&sign, "+1"), &el(&sign, "-1"), 2) {
            Divisibility::Divides(c) => assert_eq!(sign.alphabet().render(c.canonical()), "-1 -1"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn stronger_assumption() {
        let sort = MonoidModel::new(catalog::freecomm_abc()).unwrap();
        assert!(sort.check_stronger_assumption(5).passed);
        let sign = MonoidModel::new(catalog::sign_map()).unwrap();
        let r = sign.check_stronger_assumption(3);
        assert_eq!(sign.alphabet().render(r.witness.as_ref().unwrap()), "+1 -1 -1");
        assert!(sign.check_stronger_assumption(1).passed);
    }

    #[test]
    fn model_sanity() {
        for (map, oracle) in [
            (catalog::freecomm_abc(), MonoidOracle::Multiset),
            (catalog::sign_map(), MonoidOracle::integer_sum(&[0, 1, -1])),
        ] {
            let m = MonoidModel::new(map).unwrap();
            assert!(m.check_factorisation_axioms(4).passed);
            assert!(m.check_associative(4).passed);
            assert!(m.check_oracle(&oracle, 4).passed);
            assert!(m.check_oracle_associative(&oracle).passed);
            for f in m.enumerate_elements(4) {
                assert_eq!(&m.nf_eta(&f), f.canonical());
            }
        }
    }

    #[test]
    fn sort_is_neither_left_weighted_nor_greedy() {
        let sort = MonoidModel::new(catalog::freecomm_abc()).unwrap();
        let lw = sort.check_left_weighted(2);
        assert_eq!(sort.alphabet().render(lw.witness.as_ref().unwrap()), "b a");
        let g = sort.check_greedy(3, 4);
        assert_eq!(sort.alphabet().render(g.witness.as_ref().unwrap()), "b a b");
        assert!(sort.check_left_cancellative(3).passed);
        assert!(sort.find_invertible(3).is_none());
        assert!(MonoidModel::new(catalog::free1()).unwrap().check_left_weighted(2).passed);
    }

    #[test]
    fn sign_has_invertibles() {
        let sign = MonoidModel::new(catalog::sign_map()).unwrap();
        assert_eq!(sign.alphabet().render(sign.find_invertible(2).unwrap().canonical()), "+1");
        assert!(!sign.check_stable212_on_elements(2).passed);
    }

    #[test]
    fn ab5_is_rejected() {
        assert!(matches!(MonoidModel::new(catalog::ab5_map(true)), Err(Error::Precondition(_))));
    }
}
