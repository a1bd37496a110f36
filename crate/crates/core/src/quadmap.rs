//! The finite table F: A² → A² and its positional application to words.
//!
//! The same table plays three roles: the restriction N̄ of a quadratic
//! normalisation, a local factorability structure φ, and η∘μ restricted to
//! pairs of generators.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::words::{Alphabet, Letter, PositionSeq, Word};

pub type Pair = (Letter, Letter);

/// A total map on ordered pairs of letters, stored densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadMap {
    alphabet: Arc<Alphabet>,
    table: Vec<Pair>,
}

impl QuadMap {
    pub fn identity(alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        let table = (0..n * n)
            .map(|k| (Letter::from_id(k / n), Letter::from_id(k % n)))
            .collect();
        QuadMap {
            alphabet: Arc::new(alphabet),
            table,
        }
    }

    pub fn from_fn<F>(alphabet: Alphabet, f: F) -> Result<Self>
    where
        F: Fn(Letter, Letter) -> Pair,
    {
        let mut map = QuadMap::identity(alphabet);
        for s in map.alphabet.all_letters() {
            for t in map.alphabet.all_letters() {
                map.set(s, t, f(s, t))?;
            }
        }
        Ok(map)
    }

    /// The lexicographically least permutation of each pair. The neutral
    /// letter, if any, sorts after every other letter so that it drifts to
    /// the right.
    pub fn sorting(alphabet: Alphabet) -> Self {
        let neutral = alphabet.neutral();
        let key = move |l: Letter| (Some(l) == neutral, l);
        QuadMap::from_fn(alphabet, |s, t| if key(t) < key(s) { (t, s) } else { (s, t) })
            .expect("sorting stays inside the alphabet")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn shared_alphabet(&self) -> Arc<Alphabet> {
        Arc::clone(&self.alphabet)
    }

    #[inline]
    fn idx(&self, s: Letter, t: Letter) -> usize {
        s.id() * self.alphabet.len() + t.id()
    }

    #[inline]
    pub fn get(&self, s: Letter, t: Letter) -> Pair {
        self.table[self.idx(s, t)]
    }

    pub fn set(&mut self, s: Letter, t: Letter, image: Pair) -> Result<()> {
        for l in [s, t, image.0, image.1] {
            if !self.alphabet.contains(l) {
                return Err(Error::ForeignLetter(l.id()));
            }
        }
        let i = self.idx(s, t);
        self.table[i] = image;
        Ok(())
    }

    #[inline]
    pub fn is_fixed(&self, s: Letter, t: Letter) -> bool {
        self.get(s, t) == (s, t)
    }

    /// Every pair of the alphabet, in lexicographic order of ids.
    pub fn pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        let n = self.alphabet.len();
        (0..n * n).map(move |k| (Letter::from_id(k / n), Letter::from_id(k % n)))
    }

    /// The pairs that the map moves.
    pub fn moved_pairs(&self) -> impl Iterator<Item = (Pair, Pair)> + '_ {
        self.pairs()
            .map(|(s, t)| ((s, t), self.get(s, t)))
            .filter(|(p, q)| p != q)
    }

    /// Same table with the neutral designation dropped, so that the
    /// neutral letter is treated as an ordinary generator.
    pub fn forget_neutral(&self) -> QuadMap {
        QuadMap {
            alphabet: Arc::new(self.alphabet.without_neutral()),
            table: self.table.clone(),
        }
    }

    /// F at 0-based offset `i` of a letter slice; the caller guarantees range.
    #[inline]
    pub(crate) fn apply_in_place(&self, w: &mut [Letter], i: usize) {
        let (a, b) = self.get(w[i], w[i + 1]);
        w[i] = a;
        w[i + 1] = b;
    }

    /// F_i: applies the map to the letters at positions `i`, `i+1` (1-based).
    pub fn apply_at(&self, w: &Word, i: usize) -> Result<Word> {
        if i == 0 || i + 1 > w.len() {
            return Err(Error::PositionOutOfRange {
                position: i,
                len: w.len(),
            });
        }
        let mut out = w.clone();
        self.apply_in_place(out.as_mut_slice(), i - 1);
        Ok(out)
    }

    /// F_u for u = (i₁, …, iₙ); i₁ is applied first.
    pub fn apply_seq(&self, w: &Word, u: &PositionSeq) -> Result<Word> {
        let mut out = w.clone();
        for &i in u.positions() {
            if i == 0 || i + 1 > out.len() {
                return Err(Error::PositionOutOfRange {
                    position: i,
                    len: w.len(),
                });
            }
            self.apply_in_place(out.as_mut_slice(), i - 1);
        }
        Ok(out)
    }

    /// One left-to-right pass: positions 1, 2, …, |w|−1. Words of length at
    /// most one are returned unchanged.
    pub fn sweep(&self, w: &Word) -> Word {
        let mut out = w.clone();
        let s = out.as_mut_slice();
        for i in 0..s.len().saturating_sub(1) {
            self.apply_in_place(s, i);
        }
        out
    }

    pub fn check_idempotent(&self) -> CheckReport {
        for (s, t) in self.pairs() {
            let (u, v) = self.get(s, t);
            if self.get(u, v) != (u, v) {
                return CheckReport::fail(
                    "idempotent",
                    Word::from([s, t]),
                    "F(F(s,t)) differs from F(s,t)",
                );
            }
        }
        CheckReport::pass("idempotent", "F∘F = F on every pair")
    }

    /// F(s,e) = (s,e), F(e,s) = (s,e) for every letter s, including s = e.
    pub fn check_neutral(&self) -> Result<CheckReport> {
        let e = self.alphabet.require_neutral()?;
        for s in self.alphabet.letters() {
            if self.get(s, e) != (s, e) {
                return Ok(CheckReport::fail(
                    "neutral",
                    Word::from([s, e]),
                    "F(s,e) must be (s,e)",
                ));
            }
            if self.get(e, s) != (s, e) {
                return Ok(CheckReport::fail(
                    "neutral",
                    Word::from([e, s]),
                    "F(e,s) must be (s,e)",
                ));
            }
        }
        Ok(CheckReport::pass("neutral", "the neutral letter commutes to the right"))
    }

    /// Whether any pair of non-neutral letters maps to a pair containing the
    /// neutral letter (the non-graded case).
    pub fn produces_neutral(&self) -> bool {
        match self.alphabet.neutral() {
            None => false,
            Some(e) => self.pairs().any(|(s, t)| {
                s != e && t != e && {
                    let (u, v) = self.get(s, t);
                    u == e || v == e
                }
            }),
        }
    }
}
