//! Reduced words in a free group of rank at most 26.
//!
//! Letters are stored as `2 * generator + inverse_bit`, so the inverse of a
//! letter flips the low bit and the natural byte order is `a < A < b < B < ...`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 26;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct Letter(u8);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Letter {
        debug_assert!(generator < MAX_RANK);
        Letter((generator as u8) << 1 | inverse as u8)
    }

    pub fn from_code(code: u8) -> Letter {
        debug_assert!((code as usize) < 2 * MAX_RANK);
        Letter(code)
    }

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    pub fn from_char(ch: char, rank: usize) -> Result<Letter> {
        let (generator, inverse) = match ch {
            'a'..='z' => (ch as usize - 'a' as usize, false),
            'A'..='Z' => (ch as usize - 'A' as usize, true),
            _ => return Err(Error::InvalidLetter { ch, rank }),
        };
        if generator >= rank {
            return Err(Error::InvalidLetter { ch, rank });
        }
        Ok(Letter::new(generator, inverse))
    }

    pub fn to_char(self) -> char {
        let base = if self.is_inverse() { b'A' } else { b'a' };
        (base + self.generator() as u8) as char
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

pub fn check_rank(rank: usize) -> Result<()> {
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::RankOutOfRange(rank));
    }
    Ok(())
}

pub fn is_reduced(letters: &[Letter]) -> bool {
    letters.windows(2).all(|p| p[0] != p[1].inverse())
}

/// Pushes `letter` onto a reduced buffer, cancelling against its tail.
#[inline]
pub fn push_reduced(buf: &mut Vec<Letter>, letter: Letter) {
    if buf.last() == Some(&letter.inverse()) {
        buf.pop();
    } else {
        buf.push(letter);
    }
}

/// Length of the cancellation between reduced `a` and reduced `b`.
#[inline]
pub fn cancellation(a: &[Letter], b: &[Letter]) -> usize {
    a.iter()
        .rev()
        .zip(b)
        .take_while(|(x, y)| **x == y.inverse())
        .count()
}

/// Writes the reduced product of reduced `a` and `b` into `out`.
#[inline]
pub fn multiply_into(a: &[Letter], b: &[Letter], out: &mut Vec<Letter>) {
    let k = cancellation(a, b);
    out.clear();
    out.extend_from_slice(&a[..a.len() - k]);
    out.extend_from_slice(&b[k..]);
}

pub fn invert_into(a: &[Letter], out: &mut Vec<Letter>) {
    out.clear();
    out.extend(a.iter().rev().map(|l| l.inverse()));
}

/// Freely reduced word. Equality is equality of group elements.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn letter(letter: Letter) -> Word {
        Word(vec![letter])
    }

    pub fn generator(index: usize) -> Word {
        Word(vec![Letter::new(index, false)])
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
        let mut buf = Vec::new();
        for l in raw {
            push_reduced(&mut buf, l);
        }
        Word(buf)
    }

    /// Free reduction with generator indices checked against `rank`.
    pub fn reduce_checked(raw: &[(usize, bool)], rank: usize) -> Result<Word> {
        check_rank(rank)?;
        let mut buf = Vec::with_capacity(raw.len());
        for &(index, inverse) in raw {
            if index >= rank {
                return Err(Error::InvalidGenerator { index, rank });
            }
            push_reduced(&mut buf, Letter::new(index, inverse));
        }
        Ok(Word(buf))
    }

    /// Wraps letters that are already reduced.
    pub fn from_reduced(letters: Vec<Letter>) -> Word {
        debug_assert!(is_reduced(&letters));
        Word(letters)
    }

    pub fn from_reduced_slice(letters: &[Letter]) -> Word {
        Word::from_reduced(letters.to_vec())
    }

    /// Parses the text form: lowercase generators, uppercase inverses,
    /// whitespace ignored, `1` or the empty string for the identity.
    pub fn parse(text: &str, rank: usize) -> Result<Word> {
        check_rank(rank)?;
        let trimmed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if trimmed == "1" {
            return Ok(Word::identity());
        }
        let mut buf = Vec::with_capacity(trimmed.len());
        for ch in trimmed.chars() {
            push_reduced(&mut buf, Letter::from_char(ch, rank)?);
        }
        Ok(Word(buf))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Largest generator index plus one; zero for the identity.
    pub fn min_rank(&self) -> usize {
        self.0.iter().map(|l| l.generator() + 1).max().unwrap_or(0)
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len() + other.len());
        multiply_into(&self.0, &other.0, &mut out);
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.multiply(&base);
        }
        acc
    }

    /// Concatenation when the product is known to be reduced.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        debug_assert!(is_reduced(&v));
        Word(v)
    }

    pub fn subword(&self, range: Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => self.len() == 1 || f != l.inverse(),
            _ => true,
        }
    }

    pub fn contains(&self, pattern: &Word) -> bool {
        contains_slice(&self.0, &pattern.0)
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0; rank];
        for l in &self.0 {
            sums[l.generator()] += l.sign();
        }
        sums
    }

    /// Rewrites each letter through `map` (a relabeling of generators).
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| Letter::new(map(l.generator()), l.is_inverse()))
                .collect(),
        )
    }

    /// Order of the ball enumeration: length first, then letter codes.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

pub fn contains_slice(host: &[Letter], pattern: &[Letter]) -> bool {
    pattern.is_empty() || host.windows(pattern.len()).any(|w| w == pattern)
}

impl std::borrow::Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Word, D::Error> {
        let text = String::deserialize(deserializer)?;
        Word::parse(&text, MAX_RANK).map_err(serde::de::Error::custom)
    }
}

/// Number of reduced words of length exactly `length`.
pub fn sphere_size(rank: usize, length: usize) -> usize {
    if length == 0 {
        return 1;
    }
    2 * rank * (2 * rank - 1).pow(length as u32 - 1)
}

pub fn ball_size(rank: usize, radius: usize) -> usize {
    (0..=radius).map(|k| sphere_size(rank, k)).sum()
}

/// All reduced words of length at most `radius`, by length and then letter
/// codes (`a < A < b < B < ...`).
pub fn enumerate_ball(rank: usize, radius: usize) -> Vec<Word> {
    let mut out = Vec::with_capacity(ball_size(rank, radius));
    out.push(Word::identity());
    let mut start = 0;
    for _ in 0..radius {
        let end = out.len();
        for i in start..end {
            let last = out[i].last();
            for code in 0..(2 * rank) as u8 {
                let l = Letter::from_code(code);
                if Some(l.inverse()) == last {
                    continue;
                }
                let mut v = out[i].0.clone();
                v.push(l);
                out.push(Word(v));
            }
        }
        start = end;
    }
    out
}

pub fn enumerate_sphere(rank: usize, length: usize) -> Vec<Word> {
    let skip = ball_size(rank, length) - sphere_size(rank, length);
    enumerate_ball(rank, length).split_off(skip)
}

/// Position of a reduced word in the enumeration of `enumerate_ball`.
pub fn ball_index(rank: usize, letters: &[Letter]) -> usize {
    let k = 2 * rank;
    let mut offset = 0;
    for len in 0..letters.len() {
        offset += sphere_size(rank, len);
    }
    let mut idx = 0;
    let mut prev: Option<Letter> = None;
    for &l in letters {
        let pos = match prev {
            None => l.code() as usize,
            Some(p) => {
                let c = l.code() as usize;
                c - usize::from(c > p.inverse().code() as usize)
            }
        };
        idx = idx * if prev.is_none() { k } else { k - 1 } + pos;
        prev = Some(l);
    }
    offset + idx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 4).unwrap()
    }

    #[test]
    fn parse_cancels_and_ignores_whitespace() {
        assert_eq!(w("aA"), Word::identity());
        assert_eq!(w("abB c"), w("ac"));
        assert_eq!(w("1"), Word::identity());
        assert_eq!(w(""), Word::identity());
        assert_eq!(w("ab").to_string(), "ab");
        assert_eq!(Word::identity().to_string(), "1");
    }

    #[test]
    fn parse_rejects_out_of_rank_letters() {
        assert!(matches!(
            Word::parse("abc", 2),
            Err(Error::InvalidLetter { ch: 'c', .. })
        ));
        assert!(Word::parse("a?", 2).is_err());
        assert!(matches!(Word::parse("a", 27), Err(Error::RankOutOfRange(27))));
        assert!(Word::reduce_checked(&[(0, false), (3, true)], 2).is_err());
    }

    #[test]
    fn multiply_and_invert() {
        assert_eq!(w("ab").multiply(&w("BA")), Word::identity());
        assert_eq!(w("ab").multiply(&w("Bc")), w("ac"));
        assert_eq!(w("ab").inverse(), w("BA"));
        assert_eq!(Word::identity().inverse(), Word::identity());
        assert_eq!(w("ab").pow(3), w("ababab"));
        assert_eq!(w("ab").pow(-2), w("BABA"));
    }

    #[test]
    fn ball_sizes_and_order() {
        assert_eq!(enumerate_ball(2, 0), vec![Word::identity()]);
        assert_eq!(enumerate_ball(2, 1).len(), 5);
        assert_eq!(enumerate_ball(2, 3).len(), 53);
        assert_eq!(ball_size(2, 3), 1 + 4 + 12 + 36);
        let b = enumerate_ball(2, 2);
        let names: Vec<String> = b.iter().take(6).map(|x| x.to_string()).collect();
        assert_eq!(names, ["1", "a", "A", "b", "B", "aa"]);
        assert!(b.windows(2).all(|p| p[0].shortlex_cmp(&p[1]) == Ordering::Less));
    }

    #[test]
    fn ball_index_matches_enumeration() {
        for rank in 1..=3 {
            for (i, g) in enumerate_ball(rank, 5).iter().enumerate() {
                assert_eq!(ball_index(rank, g.letters()), i);
            }
        }
    }

    #[test]
    fn cyclic_reduction_flag() {
        assert!(w("ab").is_cyclically_reduced());
        assert!(!w("abA").is_cyclically_reduced());
        assert!(w("a").is_cyclically_reduced());
        assert!(Word::identity().is_cyclically_reduced());
    }
}
