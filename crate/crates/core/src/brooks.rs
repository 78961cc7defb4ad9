//! Occurrence counting and Brooks counting functions.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{cyclic_core, is_conjugate, is_self_overlapping};
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BrooksKind {
    /// All occurrences (`C_w`, `H_w`).
    Big,
    /// Maximal disjoint occurrences (`c_w`, `h_w`).
    Small,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OccurrenceList {
    pub positions: Vec<usize>,
}

pub fn occurrences(pattern: &Word, host: &Word) -> Result<OccurrenceList> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let (p, h) = (pattern.letters(), host.letters());
    let positions = if p.len() > h.len() {
        Vec::new()
    } else {
        (0..=h.len() - p.len()).filter(|&i| &h[i..i + p.len()] == p).collect()
    };
    Ok(OccurrenceList { positions })
}

#[inline]
pub fn count_big_slice(pattern: &[Letter], host: &[Letter]) -> usize {
    if pattern.is_empty() || pattern.len() > host.len() {
        return 0;
    }
    host.windows(pattern.len()).filter(|w| *w == pattern).count()
}

/// Greedy by earliest end; optimal since all intervals have equal length.
#[inline]
pub fn count_small_slice(pattern: &[Letter], host: &[Letter]) -> usize {
    let n = pattern.len();
    if n == 0 || n > host.len() {
        return 0;
    }
    let mut count = 0;
    let mut i = 0;
    while i + n <= host.len() {
        if &host[i..i + n] == pattern {
            count += 1;
            i += n;
        } else {
            i += 1;
        }
    }
    count
}

#[inline]
pub fn count_slice(kind: BrooksKind, pattern: &[Letter], host: &[Letter]) -> usize {
    match kind {
        BrooksKind::Big => count_big_slice(pattern, host),
        BrooksKind::Small => count_small_slice(pattern, host),
    }
}

pub fn count_big(pattern: &Word, host: &Word) -> Result<usize> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    Ok(count_big_slice(pattern.letters(), host.letters()))
}

pub fn count_small(pattern: &Word, host: &Word) -> Result<usize> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    Ok(count_small_slice(pattern.letters(), host.letters()))
}

/// `count(pattern) - count(pattern^-1)`; `inverse` must be the inverse of `pattern`.
#[inline]
pub fn brooks_slice(kind: BrooksKind, pattern: &[Letter], inverse: &[Letter], g: &[Letter]) -> i64 {
    count_slice(kind, pattern, g) as i64 - count_slice(kind, inverse, g) as i64
}

pub fn eval_brooks(kind: BrooksKind, pattern: &Word, g: &Word) -> Result<i64> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let inv = pattern.inverse();
    Ok(brooks_slice(kind, pattern.letters(), inv.letters(), g.letters()))
}

/// A cyclically reduced word up to rotation.
#[derive(Debug, Clone, Serialize)]
pub struct CyclicWord {
    pub representative: Word,
}

impl CyclicWord {
    /// The cyclic word of the conjugacy class of `g`.
    pub fn of(g: &Word) -> CyclicWord {
        CyclicWord {
            representative: cyclic_core(g).0,
        }
    }

    pub fn len(&self) -> usize {
        self.representative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representative.is_empty()
    }

    /// Occurrences starting at each of the `|core|` positions of the doubled
    /// core; patterns longer than the core never occur.
    pub fn count(&self, pattern: &[Letter]) -> usize {
        let core = self.representative.letters();
        let n = core.len();
        if pattern.is_empty() || pattern.len() > n {
            return 0;
        }
        (0..n)
            .filter(|&i| {
                pattern
                    .iter()
                    .enumerate()
                    .all(|(k, l)| core[(i + k) % n] == *l)
            })
            .count()
    }
}

impl PartialEq for CyclicWord {
    fn eq(&self, other: &CyclicWord) -> bool {
        is_conjugate(&self.representative, &other.representative)
    }
}

impl Eq for CyclicWord {}

#[inline]
pub fn homogenized_slice(pattern: &[Letter], inverse: &[Letter], g: &CyclicWord) -> i64 {
    g.count(pattern) as i64 - g.count(inverse) as i64
}

/// Signed occurrence count of a non-self-overlapping pattern in the cyclic word of `g`.
pub fn eval_homogenized_brooks(pattern: &Word, g: &Word) -> Result<i64> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if is_self_overlapping(pattern) {
        return Err(Error::SelfOverlapping(pattern.to_string()));
    }
    let inv = pattern.inverse();
    Ok(homogenized_slice(
        pattern.letters(),
        inv.letters(),
        &CyclicWord::of(g),
    ))
}
