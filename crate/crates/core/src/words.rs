//! Alphabets, letters, words and position sequences.
//!
//! Letters are interned as small integer ids when the alphabet is built;
//! every word operation compares ids and only rendering looks at names.
//! An alphabet may designate one neutral letter, written `e` (or `1`) in the
//! literature, which evaluates to the identity of the monoid under study.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Spelling of the empty word in text form.
pub const EMPTY_WORD: &str = "^";

/// Interned generator symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub fn id(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_id(id: usize) -> Self {
        debug_assert!(id <= u8::MAX as usize);
        Letter(id as u8)
    }
}

/// A finite generating set, optionally with one neutral letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Letter>,
    neutral: Option<Letter>,
}

impl Alphabet {
    /// Builds an alphabet from distinct letter names.
    ///
    /// Names must be non-empty, free of whitespace and `#`, and must not be
    /// `^` or `->`, which are reserved by the text formats.
    pub fn new<I, S>(names: I, neutral: Option<&str>) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("no letters".into()));
        }
        if names.len() > u8::MAX as usize {
            return Err(Error::InvalidAlphabet(format!(
                "{} letters exceeds the limit of {}",
                names.len(),
                u8::MAX
            )));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (id, name) in names.iter().enumerate() {
            if name.is_empty()
                || name == EMPTY_WORD
                || name == "->"
                || name.contains('#')
                || name.chars().any(char::is_whitespace)
            {
                return Err(Error::InvalidAlphabet(format!("bad letter name `{name}`")));
            }
            if index.insert(name.clone(), Letter::from_id(id)).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate letter `{name}`")));
            }
        }
        let neutral = match neutral {
            Some(n) => Some(
                *index
                    .get(n)
                    .ok_or_else(|| Error::InvalidAlphabet(format!("neutral `{n}` is not a letter")))?,
            ),
            None => None,
        };
        Ok(Alphabet {
            names,
            index,
            neutral,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(Letter::from_id)
    }

    /// The letters other than the neutral one (S₊).
    pub fn positive_letters(&self) -> Vec<Letter> {
        self.letters().filter(|&l| Some(l) != self.neutral).collect()
    }

    pub fn all_letters(&self) -> Vec<Letter> {
        self.letters().collect()
    }

    pub fn neutral(&self) -> Option<Letter> {
        self.neutral
    }

    pub fn require_neutral(&self) -> Result<Letter> {
        self.neutral.ok_or(Error::NoNeutral)
    }

    pub fn is_neutral(&self, l: Letter) -> bool {
        self.neutral == Some(l)
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l.id()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    pub fn contains(&self, l: Letter) -> bool {
        l.id() < self.names.len()
    }

    /// The same letters with no neutral letter designated.
    pub fn without_neutral(&self) -> Alphabet {
        Alphabet {
            neutral: None,
            ..self.clone()
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.iter().find(|l| !self.contains(**l)) {
            Some(l) => Err(Error::ForeignLetter(l.id())),
            None => Ok(()),
        }
    }

    /// Parses space-separated letter names; `^` alone is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == EMPTY_WORD || text.is_empty() {
            return Ok(Word::empty());
        }
        text.split_whitespace()
            .map(|n| self.letter(n))
            .collect::<Result<Vec<_>>>()
            .map(Word::from)
    }

    /// Renders a word as space-separated names, `^` for the empty word.
    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return EMPTY_WORD.to_string();
        }
        w.iter().map(|&l| self.name(l)).collect::<Vec<_>>().join(" ")
    }

    /// Removes every occurrence of the neutral letter (the projection π_e).
    pub fn strip_neutral(&self, w: &Word) -> Result<Word> {
        let e = self.require_neutral()?;
        Ok(w.iter().copied().filter(|&l| l != e).collect())
    }

    /// Appends neutral letters until the word has length `target`.
    pub fn pad_neutral(&self, w: &Word, target: usize) -> Result<Word> {
        let e = self.require_neutral()?;
        if target < w.len() {
            return Err(Error::PadTooShort {
                len: w.len(),
                target,
            });
        }
        let mut out = w.clone();
        out.0.resize(target, e);
        Ok(out)
    }
}

/// A finite sequence of letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// `u|v`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [Letter] {
        &mut self.0
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl<const N: usize> From<[Letter; N]> for Word {
    fn from(v: [Letter; N]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Positions (1-based) at which a quadratic map is applied, first listed
/// position first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PositionSeq(Vec<usize>);

impl PositionSeq {
    pub fn new(positions: Vec<usize>) -> Result<Self> {
        if positions.contains(&0) {
            return Err(Error::PositionOutOfRange {
                position: 0,
                len: 0,
            });
        }
        Ok(PositionSeq(positions))
    }

    /// `12[m]` when `first == 1`, `21[m]` when `first == 2`.
    pub fn alternating(first: usize, m: usize) -> Self {
        debug_assert!(first == 1 || first == 2);
        let other = 3 - first;
        PositionSeq(
            (0..m)
                .map(|k| if k % 2 == 0 { first } else { other })
                .collect(),
        )
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn push(&mut self, p: usize) {
        debug_assert!(p >= 1);
        self.0.push(p);
    }

    pub fn concat(&self, other: &PositionSeq) -> PositionSeq {
        PositionSeq(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for PositionSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `12[m]`.
pub fn alt_seq(first: usize, m: usize) -> PositionSeq {
    PositionSeq::alternating(first, m)
}

/// All words of length `len` over `letters`, in lexicographic order of the
/// slice.
pub fn words_of_len(letters: &[Letter], len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * letters.len());
        for w in &out {
            for &l in letters {
                let mut x = w.clone();
                x.push(l);
                next.push(x);
            }
        }
        out = next;
    }
    out
}

/// All words of length at most `max_len`, shortest first.
pub fn words_up_to(letters: &[Letter], max_len: usize) -> Vec<Word> {
    (0..=max_len)
        .flat_map(|n| words_of_len(letters, n))
        .collect()
}
