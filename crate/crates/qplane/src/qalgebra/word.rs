use std::cmp::Ordering;

use smallvec::SmallVec;

/// A word over generator ranks `0..9`, ordered degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Word(pub SmallVec<[u8; 16]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_slice(s: &[u8]) -> Self {
        Word(SmallVec::from_slice(s))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &[u8]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn splice(prefix: &[u8], mid: &[u8], suffix: &[u8]) -> Word {
        let mut v: SmallVec<[u8; 16]> = SmallVec::with_capacity(prefix.len() + mid.len() + suffix.len());
        v.extend_from_slice(prefix);
        v.extend_from_slice(mid);
        v.extend_from_slice(suffix);
        Word(v)
    }

    /// Position of the leftmost occurrence of `pat`.
    pub fn find(&self, pat: &[u8]) -> Option<usize> {
        if pat.len() > self.len() {
            return None;
        }
        (0..=self.len() - pat.len()).find(|&i| &self.0[i..i + pat.len()] == pat)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A normal word, i.e. a weakly increasing word in generator ranks, stored as
/// its exponent vector: seven bits per rank.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct NWord(pub u64);

impl NWord {
    pub const ONE: NWord = NWord(0);

    pub fn count(self, r: u8) -> u8 {
        ((self.0 >> (7 * r as u64)) & 0x7f) as u8
    }

    pub fn inc(self, r: u8) -> NWord {
        assert!(self.count(r) < 0x7f, "exponent overflow in normal word");
        NWord(self.0 + (1u64 << (7 * r as u64)))
    }

    pub fn dec(self, r: u8) -> NWord {
        debug_assert!(self.count(r) > 0);
        NWord(self.0 - (1u64 << (7 * r as u64)))
    }

    /// Remove all copies of rank `r`.
    pub fn clear(self, r: u8) -> NWord {
        NWord(self.0 & !(0x7fu64 << (7 * r as u64)))
    }

    /// The largest rank present.
    pub fn top(self) -> Option<u8> {
        (0..9u8).rev().find(|&r| self.count(r) > 0)
    }

    pub fn degree(self) -> u32 {
        (0..9u8).map(|r| self.count(r) as u32).sum()
    }

    /// The letters in increasing rank order.
    pub fn letters(self) -> SmallVec<[u8; 32]> {
        let mut out = SmallVec::new();
        for r in 0..9u8 {
            for _ in 0..self.count(r) {
                out.push(r);
            }
        }
        out
    }

    pub fn to_word(self) -> Word {
        Word(self.letters().into_iter().collect())
    }

    /// The exponent vector of a weakly increasing word.
    pub fn from_sorted(w: &[u8]) -> Option<NWord> {
        if w.windows(2).any(|p| p[0] > p[1]) {
            return None;
        }
        Some(w.iter().fold(NWord::ONE, |acc, &r| acc.inc(r)))
    }

    /// Degree-lexicographic comparison of the underlying words.
    pub fn deglex(self, other: NWord) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.letters().cmp(&other.letters()))
    }
}
