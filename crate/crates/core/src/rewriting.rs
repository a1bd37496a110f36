//! Rewriting systems derived from a quadratic map: rule execution with
//! traces, critical pairs and termination analysis.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadmap::QuadMap;
use crate::report::CheckReport;
use crate::words::{words_of_len, Alphabet, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// s|t → F(s,t); no neutral letter may appear in the outputs.
    Plain,
    /// s|t → F(s,t) with neutral letters removed.
    ModE,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: (Letter, Letter),
    pub rhs: Word,
}

impl Rule {
    pub fn lhs_word(&self) -> Word {
        Word::from([self.lhs.0, self.lhs.1])
    }
}

/// Rules with length-two left-hand sides over a working set of letters.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    alphabet: Arc<Alphabet>,
    letters: Vec<Letter>,
    rules: Vec<Rule>,
    index: Vec<Option<usize>>,
}

impl RewriteSystem {
    /// Builds a system with at most one rule per left-hand side. Reducedness
    /// is reported by [`RewriteSystem::check_reduced`], not enforced.
    pub fn new(alphabet: Arc<Alphabet>, letters: Vec<Letter>, rules: Vec<Rule>) -> Result<Self> {
        let n = alphabet.len();
        let mut index = vec![None; n * n];
        let allowed: HashSet<Letter> = letters.iter().copied().collect();
        for (k, rule) in rules.iter().enumerate() {
            let lhs = rule.lhs_word();
            let render = || format!("{} -> {}", alphabet.render(&lhs), alphabet.render(&rule.rhs));
            if rule.rhs.len() > 2 {
                return Err(Error::InvalidRule(format!("{}: right side too long", render())));
            }
            if lhs == rule.rhs {
                return Err(Error::InvalidRule(format!("{}: trivial rule", render())));
            }
            if lhs.iter().chain(rule.rhs.iter()).any(|l| !allowed.contains(l)) {
                return Err(Error::InvalidRule(format!("{}: letter outside the system", render())));
            }
            let slot = &mut index[rule.lhs.0.id() * n + rule.lhs.1.id()];
            if slot.is_some() {
                return Err(Error::InvalidRule(format!("{}: duplicate left side", render())));
            }
            *slot = Some(k);
        }
        Ok(RewriteSystem {
            alphabet,
            letters,
            rules,
            index,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule_for(&self, s: Letter, t: Letter) -> Option<&Rule> {
        self.index[s.id() * self.alphabet.len() + t.id()].map(|k| &self.rules[k])
    }

    /// 1-based positions at which some rule applies.
    pub fn redexes(&self, w: &[Letter]) -> Vec<usize> {
        (0..w.len().saturating_sub(1))
            .filter(|&i| self.rule_for(w[i], w[i + 1]).is_some())
            .map(|i| i + 1)
            .collect()
    }

    pub fn is_irreducible(&self, w: &[Letter]) -> bool {
        w.windows(2).all(|p| self.rule_for(p[0], p[1]).is_none())
    }

    /// Applies the rule at 1-based position `pos`, if any.
    pub fn rewrite_at(&self, w: &[Letter], pos: usize) -> Option<Word> {
        if pos == 0 || pos >= w.len() {
            return None;
        }
        let rule = self.rule_for(w[pos - 1], w[pos])?;
        let mut out = w[..pos - 1].to_vec();
        out.extend_from_slice(&rule.rhs);
        out.extend_from_slice(&w[pos + 1..]);
        Some(Word::from(out))
    }

    fn successors(&self, w: &[Letter]) -> Vec<(usize, Word)> {
        self.redexes(w)
            .into_iter()
            .map(|p| (p, self.rewrite_at(w, p).expect("redex")))
            .collect()
    }

    /// Every right side irreducible (single letters are always irreducible
    /// since all left sides have length two).
    pub fn check_reduced(&self) -> CheckReport {
        for rule in &self.rules {
            if !self.is_irreducible(&rule.rhs) {
                return CheckReport::fail("reduced", rule.lhs_word(), "right side is reducible");
            }
        }
        CheckReport::pass("reduced", "every right side is irreducible")
    }

    /// All right sides have length two.
    pub fn is_quadratic(&self) -> bool {
        self.rules.iter().all(|r| r.rhs.len() == 2)
    }

    /// `<s> <t> -> <rhs>`, one per rule.
    pub fn render_rules(&self) -> Vec<String> {
        self.rules
            .iter()
            .map(|r| format!("{} -> {}", self.alphabet.render(&r.lhs_word()), self.alphabet.render(&r.rhs)))
            .collect()
    }
}

/// One rule per non-fixed pair of non-neutral letters.
pub fn derive_rules(f: &QuadMap, mode: Mode) -> Result<RewriteSystem> {
    let a = f.shared_alphabet();
    let letters = a.positive_letters();
    if mode == Mode::ModE {
        a.require_neutral()?;
    }
    let mut rules = Vec::new();
    for &s in &letters {
        for &t in &letters {
            let (u, v) = f.get(s, t);
            if (u, v) == (s, t) {
                continue;
            }
            let image = Word::from([u, v]);
            let rhs = match mode {
                Mode::Plain => {
                    if a.is_neutral(u) || a.is_neutral(v) {
                        return Err(Error::NeutralOutput(a.render(&Word::from([s, t]))));
                    }
                    image
                }
                Mode::ModE => a.strip_neutral(&image)?,
            };
            rules.push(Rule { lhs: (s, t), rhs });
        }
    }
    RewriteSystem::new(a, letters, rules)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
    /// A longest rewriting sequence, found by exhaustive search.
    AllMaximal,
}

impl RewriteStrategy {
    pub const ALL: [RewriteStrategy; 3] = [
        RewriteStrategy::Leftmost,
        RewriteStrategy::Rightmost,
        RewriteStrategy::AllMaximal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RewriteStrategy::Leftmost => "leftmost",
            RewriteStrategy::Rightmost => "rightmost",
            RewriteStrategy::AllMaximal => "all_maximal",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceEnd {
    Irreducible,
    BudgetExhausted,
    Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub before: Word,
    pub position: usize,
    pub after: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteTrace {
    pub initial: Word,
    pub steps: Vec<Step>,
    pub end: TraceEnd,
}

impl RewriteTrace {
    pub fn final_word(&self) -> &Word {
        self.steps.last().map_or(&self.initial, |s| &s.after)
    }

    /// `<word> @<position> -> <word>`, one line per step.
    pub fn lines(&self, alphabet: &Alphabet) -> Vec<String> {
        self.steps
            .iter()
            .map(|s| format!("{} @{} -> {}", alphabet.render(&s.before), s.position, alphabet.render(&s.after)))
            .collect()
    }
}

pub fn rewrite_trace(
    r: &RewriteSystem,
    w: &Word,
    strategy: RewriteStrategy,
    budget: usize,
) -> RewriteTrace {
    if strategy == RewriteStrategy::AllMaximal {
        return longest_trace(r, w, budget);
    }
    let mut steps = Vec::new();
    let mut cur = w.clone();
    let mut seen = HashSet::from([cur.clone()]);
    loop {
        let redexes = r.redexes(&cur);
        let pos = match strategy {
            RewriteStrategy::Leftmost => redexes.first(),
            _ => redexes.last(),
        };
        let Some(&pos) = pos else {
            return RewriteTrace { initial: w.clone(), steps, end: TraceEnd::Irreducible };
        };
        if steps.len() >= budget {
            return RewriteTrace { initial: w.clone(), steps, end: TraceEnd::BudgetExhausted };
        }
        let next = r.rewrite_at(&cur, pos).expect("redex");
        steps.push(Step { before: cur, position: pos, after: next.clone() });
        if !seen.insert(next.clone()) {
            return RewriteTrace { initial: w.clone(), steps, end: TraceEnd::Cycle };
        }
        cur = next;
    }
}

fn longest_trace(r: &RewriteSystem, w: &Word, budget: usize) -> RewriteTrace {
    let mut explorer = Explorer::new(r, budget);
    let mut steps = Vec::new();
    match explorer.longest(w) {
        Explored::Cycle(path) => {
            for pair in path.windows(2) {
                steps.push(step_between(r, &pair[0], &pair[1]));
            }
            RewriteTrace { initial: w.clone(), steps, end: TraceEnd::Cycle }
        }
        Explored::Budget => RewriteTrace { initial: w.clone(), steps, end: TraceEnd::BudgetExhausted },
        Explored::Length(_) => {
            let mut cur = w.clone();
            while let Some((pos, next)) = explorer.best_successor(&cur) {
                steps.push(Step { before: cur, position: pos, after: next.clone() });
                cur = next;
            }
            RewriteTrace { initial: w.clone(), steps, end: TraceEnd::Irreducible }
        }
    }
}

fn step_between(r: &RewriteSystem, a: &Word, b: &Word) -> Step {
    let (position, after) = r
        .successors(a)
        .into_iter()
        .find(|(_, x)| x == b)
        .expect("consecutive path words are one step apart");
    Step { before: a.clone(), position, after }
}

enum Explored {
    Length(usize),
    Cycle(Vec<Word>),
    Budget,
}

/// Longest rewriting sequences by depth-first search with memoisation.
struct Explorer<'a> {
    r: &'a RewriteSystem,
    memo: HashMap<Word, usize>,
    budget: usize,
}

impl<'a> Explorer<'a> {
    fn new(r: &'a RewriteSystem, budget: usize) -> Self {
        Explorer { r, memo: HashMap::new(), budget }
    }

    fn longest(&mut self, start: &Word) -> Explored {
        if let Some(&n) = self.memo.get(start) {
            return Explored::Length(n);
        }
        // Frames: word, its successors, next successor index, best so far.
        let mut stack: Vec<(Word, Vec<Word>, usize, usize)> = Vec::new();
        let mut on_stack: HashSet<Word> = HashSet::new();
        let r = self.r;
        let push = |w: Word, stack: &mut Vec<(Word, Vec<Word>, usize, usize)>, on: &mut HashSet<Word>| {
            let succ = r.successors(&w).into_iter().map(|(_, x)| x).collect();
            on.insert(w.clone());
            stack.push((w, succ, 0, 0));
        };
        push(start.clone(), &mut stack, &mut on_stack);
        while let Some(frame) = stack.last_mut() {
            if frame.2 == frame.1.len() {
                let (w, _, _, best) = stack.pop().expect("frame");
                on_stack.remove(&w);
                self.memo.insert(w, best);
                if self.memo.len() > self.budget {
                    return Explored::Budget;
                }
                if let Some(parent) = stack.last_mut() {
                    parent.3 = parent.3.max(best + 1);
                } else {
                    return Explored::Length(best);
                }
                continue;
            }
            let next = frame.1[frame.2].clone();
            frame.2 += 1;
            if let Some(&n) = self.memo.get(&next) {
                frame.3 = frame.3.max(n + 1);
            } else if on_stack.contains(&next) {
                let from = stack.iter().position(|f| f.0 == next).expect("on stack");
                let mut path: Vec<Word> = stack[from..].iter().map(|f| f.0.clone()).collect();
                path.push(next);
                return Explored::Cycle(path);
            } else {
                push(next, &mut stack, &mut on_stack);
            }
        }
        unreachable!("the root frame returns")
    }

    fn best_successor(&self, w: &Word) -> Option<(usize, Word)> {
        let target = self.memo.get(w)?.checked_sub(1)?;
        self.r
            .successors(w)
            .into_iter()
            .find(|(_, x)| self.memo.get(x) == Some(&target))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriticalOutcome {
    Joinable { common: Word },
    /// Both reducts reach distinct irreducible words.
    Divergent { left: Word, right: Word },
    /// Normalising a reduct cycled or ran out of budget.
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub overlap: Word,
    pub left: Word,
    pub right: Word,
    pub outcome: CriticalOutcome,
}

pub const CRITICAL_BUDGET: usize = 10_000;

/// Every length-three word reducible at both positions, with its two
/// one-step reducts, each normalised by leftmost rewriting.
pub fn critical_pairs(r: &RewriteSystem) -> Vec<CriticalPair> {
    let mut out = Vec::new();
    for w in words_of_len(r.letters(), 3) {
        let (Some(left), Some(right)) = (r.rewrite_at(&w, 1), r.rewrite_at(&w, 2)) else {
            continue;
        };
        let lt = rewrite_trace(r, &left, RewriteStrategy::Leftmost, CRITICAL_BUDGET);
        let rt = rewrite_trace(r, &right, RewriteStrategy::Leftmost, CRITICAL_BUDGET);
        let outcome = match (lt.end, rt.end) {
            (TraceEnd::Irreducible, TraceEnd::Irreducible) if lt.final_word() == rt.final_word() => {
                CriticalOutcome::Joinable { common: lt.final_word().clone() }
            }
            (TraceEnd::Irreducible, TraceEnd::Irreducible) => CriticalOutcome::Divergent {
                left: lt.final_word().clone(),
                right: rt.final_word().clone(),
            },
            _ => CriticalOutcome::Unresolved,
        };
        out.push(CriticalPair { overlap: w, left, right, outcome });
    }
    out
}

pub fn check_local_confluence(r: &RewriteSystem) -> CheckReport {
    match critical_pairs(r)
        .into_iter()
        .find(|cp| !matches!(cp.outcome, CriticalOutcome::Joinable { .. }))
    {
        Some(cp) => CheckReport::fail("local-confluence", cp.overlap, format!("{:?}", cp.outcome)),
        None => CheckReport::pass("local-confluence", "all critical pairs are joinable"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TerminationVerdict {
    TerminatingAtScale,
    CycleFound,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminationReport {
    pub verdict: TerminationVerdict,
    /// (p, longest sequence from a word of length p), for p = 2..=max_len.
    pub longest: Vec<(usize, usize)>,
    /// Words of a cycle; the last equals an earlier one.
    pub witness: Option<Vec<Word>>,
}

impl TerminationReport {
    pub fn longest_for(&self, p: usize) -> Option<usize> {
        self.longest.iter().find(|(q, _)| *q == p).map(|&(_, n)| n)
    }
}

/// Longest rewriting sequence from every word of length 2..=max_len.
/// `budget` caps the number of distinct words explored.
pub fn termination_analysis(r: &RewriteSystem, max_len: usize, budget: usize) -> TerminationReport {
    let mut explorer = Explorer::new(r, budget);
    let mut longest = Vec::new();
    for p in 2..=max_len {
        let mut best = 0;
        for w in words_of_len(r.letters(), p) {
            match explorer.longest(&w) {
                Explored::Length(n) => best = best.max(n),
                Explored::Cycle(path) => {
                    let cycle_start = path.iter().position(|x| x == path.last().expect("path")).expect("repeat");
                    return TerminationReport {
                        verdict: TerminationVerdict::CycleFound,
                        longest,
                        witness: Some(path[cycle_start..].to_vec()),
                    };
                }
                Explored::Budget => {
                    return TerminationReport {
                        verdict: TerminationVerdict::BudgetExhausted,
                        longest,
                        witness: None,
                    }
                }
            }
        }
        longest.push((p, best));
    }
    TerminationReport {
        verdict: TerminationVerdict::TerminatingAtScale,
        longest,
        witness: None,
    }
}

/// Whether the map underlies a quadratic normalisation at scale: the plain
/// system over the full alphabet (the neutral letter treated as an ordinary
/// generator) is locally confluent and terminates on words up to `max_len`.
pub fn check_convergent(f: &QuadMap, max_len: usize) -> CheckReport {
    let plain = f.forget_neutral();
    let r = derive_rules(&plain, Mode::Plain).expect("no neutral letter");
    let confluence = check_local_confluence(&r);
    if !confluence.passed {
        return CheckReport { name: "convergent".into(), ..confluence };
    }
    let rep = termination_analysis(&r, max_len, usize::MAX);
    match rep.witness {
        Some(cycle) => CheckReport::fail("convergent", cycle[0].clone(), "rewriting cycles"),
        None => CheckReport::pass("convergent", "locally confluent and terminating at scale"),
    }
}

/// 2^p − p − 1.
pub fn sequence_bound(p: u32) -> u64 {
    (1u64 << p) - u64::from(p) - 1
}
