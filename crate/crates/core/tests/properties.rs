mod common;

use proptest::prelude::*;
use quadnorm::catalog;
use quadnorm::classifier::{
    check_class_equalities, check_weak_domino, check_weak_domino_upper_right, is_normal, minimal_class,
    normalize, Strategy as Norm,
};
use quadnorm::factorability::{check_axioms, check_stable212, n_phi, n_phi_prime};
use quadnorm::rewriting::{
    check_convergent, derive_rules, rewrite_trace, sequence_bound, termination_analysis, Mode,
    RewriteStrategy, TerminationVerdict,
};
use quadnorm::words::{alt_seq, words_of_len, words_up_to};
use quadnorm::{format, sampling, MonoidModel, QuadMap, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn factorable(f: &QuadMap) -> bool {
    check_axioms(f).unwrap().iter().all(|r| r.passed)
}

fn catalog_maps() -> Vec<QuadMap> {
    catalog::NAMES.iter().map(|n| catalog::load(n).unwrap().map).collect()
}

fn convergent_sample() -> Vec<QuadMap> {
    common::sampled_maps()
        .into_iter()
        .filter(|f| check_convergent(f, 5).passed)
        .collect()
}

fn word_over(f: &QuadMap, max_len: usize) -> impl Strategy<Value = Word> {
    let letters = f.alphabet().all_letters();
    proptest::collection::vec(proptest::sample::select(letters), 0..=max_len).prop_map(Word::from)
}

proptest! {
    #[test]
    fn strip_undoes_pad(w in word_over(&catalog::sign_map(), 6), extra in 0usize..4) {
        let a = catalog::sign_map().alphabet().clone();
        let w = a.strip_neutral(&w).unwrap();
        let padded = a.pad_neutral(&w, w.len() + extra).unwrap();
        prop_assert_eq!(padded.len(), w.len() + extra);
        prop_assert_eq!(a.strip_neutral(&padded).unwrap(), w);
    }

    #[test]
    fn alt_seq_alternates(first in 1usize..=2, m in 0usize..20) {
        let s = alt_seq(first, m);
        prop_assert_eq!(s.len(), m);
        prop_assert!(s.positions().windows(2).all(|p| p[0] != p[1]));
        prop_assert!(s.positions().first().is_none_or(|&p| p == first));
    }

    #[test]
    fn apply_preserves_length(index in 0u128..sampling::count(2), w in word_over(&sampling::map_at(2, 0), 6), i in 1usize..6) {
        let f = sampling::map_at(2, index);
        match f.apply_at(&w, i) {
            Ok(out) => {
                prop_assert_eq!(out.len(), w.len());
                prop_assert_eq!(&out[..i - 1], &w[..i - 1]);
                prop_assert_eq!(&out[i + 1..], &w[i + 1..]);
            }
            Err(_) => prop_assert!(i + 1 > w.len()),
        }
    }

    #[test]
    fn n_phi_is_a_neutral_free_projection(index in 0u128..sampling::count(2), w in word_over(&sampling::map_at(2, 0), 6)) {
        let f = sampling::map_at(2, index);
        let n = n_phi(&f, &w).unwrap();
        let e = f.alphabet().neutral().unwrap();
        prop_assert!(!n.contains(&e));
        prop_assert!(n.len() <= w.len());
        if factorable(&f) {
            prop_assert_eq!(n_phi(&f, &n).unwrap(), n.clone());
        }
        prop_assert_eq!(n_phi_prime(&f, &w).unwrap().len(), w.len());
    }

    #[test]
    fn map_text_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = sampling::sample(3, &mut rng);
        let text = format::print(&f);
        let g = format::parse(&text).unwrap();
        prop_assert_eq!(format::print(&g), text);
    }

    #[test]
    fn weak_domino_readings_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = sampling::sample(3, &mut rng);
        prop_assert_eq!(
            check_weak_domino(&f).unwrap().passed,
            check_weak_domino_upper_right(&f).unwrap().passed
        );
    }
}

#[test]
fn n_phi_letters_and_idempotence_on_catalog() {
    for f in catalog_maps().into_iter().filter(factorable) {
        let a = f.alphabet();
        let e = a.neutral().unwrap();
        for s in a.letters() {
            let expected = Word::from([s]);
            assert_eq!(n_phi_prime(&f, &expected).unwrap(), expected);
            assert_eq!(n_phi(&f, &expected).unwrap().is_empty(), s == e);
        }
        for w in words_up_to(&a.all_letters(), 4) {
            let n = n_phi(&f, &w).unwrap();
            assert_eq!(n_phi(&f, &n).unwrap(), n);
        }
    }
}

#[test]
fn class_is_upward_closed() {
    let mut maps = catalog_maps();
    maps.push(catalog::ab5_map(false));
    maps.extend(convergent_sample());
    for f in &maps {
        let c = minimal_class(f).unwrap();
        let (m, n) = (c.left.finite().unwrap(), c.right.finite().unwrap());
        for k in 0..=3 {
            assert!(check_class_equalities(f, m + k, n + k).passed);
        }
        if m > 0 {
            assert!(!check_class_equalities(f, m - 1, n + 3).passed);
        }
        if n > 0 {
            assert!(!check_class_equalities(f, m + 3, n - 1).passed);
        }
        assert!(m.abs_diff(n) <= 1, "shape ({m},{n})");
    }
}

#[test]
fn factorable_maps_are_of_class_5_4() {
    for f in common::sampled_maps().iter().chain(catalog_maps().iter()) {
        if factorable(f) {
            assert!(check_class_equalities(f, 5, 4).passed, "{}", format::print(f));
            if check_stable212(f).passed {
                assert!(check_class_equalities(f, 4, 3).passed, "{}", format::print(f));
            }
        }
    }
}

fn class_43(maps: Vec<QuadMap>) -> Vec<QuadMap> {
    maps.into_iter()
        .filter(|f| check_class_equalities(f, 4, 3).passed)
        .collect()
}

#[test]
fn recipe43_agrees_with_left_alternation() {
    let mut maps = class_43(catalog_maps());
    maps.extend(class_43(convergent_sample()).into_iter().take(40));
    for f in &maps {
        for w in words_up_to(&f.alphabet().all_letters(), 5) {
            let (a, _) = normalize(f, &w, Norm::Recipe43).unwrap();
            let (b, _) = normalize(f, &w, Norm::LeftAlt).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn leftmost_letter_depends_on_first_pair() {
    let mut maps = class_43(catalog_maps());
    maps.extend(class_43(convergent_sample()).into_iter().take(40));
    for f in &maps {
        let letters = f.alphabet().all_letters();
        for q in 1..=4 {
            for s in words_of_len(&letters, q).into_iter().filter(|s| is_normal(f, s)) {
                for &t in &letters {
                    let w = Word::from([t]).concat(&s);
                    let (out, _) = normalize(f, &w, Norm::LeftmostReducible).unwrap();
                    assert_eq!(out[0], f.get(t, s[0]).0);
                }
            }
        }
    }
}

#[test]
fn strategies_agree_on_convergent_maps() {
    for f in convergent_sample().iter().take(60) {
        for w in words_up_to(&f.alphabet().all_letters(), 4) {
            let results: Vec<Word> = [Norm::LeftAlt, Norm::RightAlt, Norm::LeftmostReducible]
                .into_iter()
                .map(|s| normalize(f, &w, s).unwrap().0)
                .collect();
            assert!(results.windows(2).all(|p| p[0] == p[1]));
        }
    }
}

#[test]
fn class_43_sequences_respect_the_bound() {
    let mut maps = class_43(catalog_maps());
    maps.extend(class_43(convergent_sample()).into_iter().take(25));
    for f in &maps {
        let plain = derive_rules(&f.forget_neutral(), Mode::Plain).unwrap();
        let rep = termination_analysis(&plain, 6, usize::MAX);
        assert_eq!(rep.verdict, TerminationVerdict::TerminatingAtScale);
        for (p, n) in rep.longest {
            assert!(n as u64 <= sequence_bound(p as u32), "p={p}: {n}");
        }
        let mod_e = derive_rules(f, Mode::ModE).unwrap();
        assert_eq!(termination_analysis(&mod_e, 6, usize::MAX).verdict, TerminationVerdict::TerminatingAtScale);
    }
}

#[test]
fn rewriting_reaches_n_phi() {
    for f in catalog_maps().into_iter().filter(factorable) {
        let r = derive_rules(&f, Mode::ModE).unwrap();
        assert!(r.check_reduced().passed);
        let a = f.alphabet();
        for w in words_up_to(&a.positive_letters(), 5) {
            let target = a.strip_neutral(&n_phi(&f, &w).unwrap()).unwrap();
            for s in RewriteStrategy::ALL {
                assert_eq!(rewrite_trace(&r, &w, s, 1000).final_word(), &target);
            }
        }
    }
}

#[test]
fn greedy_direction_on_catalog() {
    for name in catalog::NAMES {
        let entry = catalog::load(name).unwrap();
        let m = MonoidModel::new(entry.model_map.clone()).unwrap();
        let hypotheses = check_class_equalities(m.map(), 4, 3).passed
            && m.check_left_weighted(catalog::SEARCH_LEN).passed
            && m.check_left_cancellative(3).passed
            && m.find_invertible(3).is_none();
        if hypotheses {
            assert!(m.check_greedy(3, catalog::SEARCH_LEN).passed, "{name}");
        }
    }
}

#[test]
fn n_phi_is_not_idempotent_without_axiom_4() {
    let f = catalog::ab5_map(true);
    let once = n_phi(&f, &catalog::word(&f, "a b1 a")).unwrap();
    assert_eq!(f.alphabet().render(&once), "a b4 a");
    assert_eq!(f.alphabet().render(&n_phi(&f, &once).unwrap()), "a b5 a");
}
