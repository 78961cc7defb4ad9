//! Conjugacy, overlaps, Lyndon words, fundamental sets and juncture families.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{check_rank, enumerate_sphere, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicReport {
    pub core: Word,
    pub conjugator: Word,
    /// Distinct rotations of the core, in shortlex order.
    pub cyclic_permutations: Vec<Word>,
    pub simple: bool,
}

/// Splits `g` as `conjugator * core * conjugator^-1` with `core` cyclically reduced.
pub fn cyclic_core(g: &Word) -> (Word, Word) {
    let l = g.letters();
    let mut k = 0;
    while 2 * k + 1 < l.len() && l[k] == l[l.len() - 1 - k].inverse() {
        k += 1;
    }
    (
        Word::from_reduced_slice(&l[k..l.len() - k]),
        Word::from_reduced_slice(&l[..k]),
    )
}

pub fn rotations(w: &Word) -> Vec<Word> {
    let l = w.letters();
    let mut out: Vec<Word> = (0..l.len().max(1))
        .map(|i| {
            let mut v = l[i.min(l.len())..].to_vec();
            v.extend_from_slice(&l[..i.min(l.len())]);
            Word::from_reduced(v)
        })
        .collect();
    out.sort_by(|a, b| a.shortlex_cmp(b));
    out.dedup();
    out
}

/// Smallest period `p` of `w` such that `w` is a power of its length-`p` prefix.
pub fn primitive_period(letters: &[Letter]) -> usize {
    let n = letters.len();
    let border = failure_function(letters).last().copied().unwrap_or(0);
    let p = n - border;
    if n > 0 && n % p == 0 {
        p
    } else {
        n
    }
}

/// Nonempty `w` is simple when it is not a proper power.
pub fn is_simple(w: &Word) -> bool {
    !w.is_empty() && primitive_period(w.letters()) == w.len()
}

pub fn cyclic_analysis(g: &Word) -> CyclicReport {
    let (core, conjugator) = cyclic_core(g);
    let cyclic_permutations = rotations(&core);
    let simple = is_simple(&core);
    debug_assert!(core.is_empty() || simple == (cyclic_permutations.len() == core.len()));
    CyclicReport {
        core,
        conjugator,
        cyclic_permutations,
        simple,
    }
}

pub fn is_conjugate(a: &Word, b: &Word) -> bool {
    let (ca, _) = cyclic_core(a);
    let (cb, _) = cyclic_core(b);
    if ca.len() != cb.len() {
        return false;
    }
    if ca.is_empty() {
        return true;
    }
    let mut doubled = ca.letters().to_vec();
    doubled.extend_from_slice(ca.letters());
    doubled.windows(cb.len()).any(|w| w == cb.letters())
}

/// KMP failure function: entry `i` is the longest proper border of `w[..=i]`.
pub fn failure_function(w: &[Letter]) -> Vec<usize> {
    let mut f = vec![0; w.len()];
    let mut k = 0;
    for i in 1..w.len() {
        while k > 0 && w[i] != w[k] {
            k = f[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        f[i] = k;
    }
    f
}

pub fn is_self_overlapping(w: &Word) -> bool {
    failure_function(w.letters()).last().is_some_and(|&b| b > 0)
}

/// Decomposes a self-overlapping word as `x y x` with `x` its shortest border.
pub fn xyx_decomposition(w: &Word) -> Option<(Word, Word)> {
    let l = w.letters();
    let k = (1..l.len()).find(|&k| l[..k] == l[l.len() - k..])?;
    let y = if 2 * k <= l.len() {
        Word::from_reduced_slice(&l[k..l.len() - k])
    } else {
        return None;
    };
    Some((Word::from_reduced_slice(&l[..k]), y))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverlapReport {
    /// `w` is a proper subword of `w2`.
    pub left_is_subword: bool,
    /// `w2` is a proper subword of `w`.
    pub right_is_subword: bool,
    /// Lengths `k` with suffix_k(w) = prefix_k(w2).
    pub proper_overlap_lengths_lr: Vec<usize>,
    /// Lengths `k` with suffix_k(w2) = prefix_k(w).
    pub proper_overlap_lengths_rl: Vec<usize>,
    pub minimal_overlap: Option<Word>,
}

impl OverlapReport {
    pub fn overlaps_properly(&self) -> bool {
        !self.proper_overlap_lengths_lr.is_empty() || !self.proper_overlap_lengths_rl.is_empty()
    }

    pub fn overlaps(&self) -> bool {
        self.left_is_subword || self.right_is_subword || self.overlaps_properly()
    }
}

fn proper_subword(small: &[Letter], big: &[Letter]) -> bool {
    small.len() < big.len() && big.windows(small.len()).any(|w| w == small)
}

fn overlap_lengths(left: &[Letter], right: &[Letter]) -> Vec<usize> {
    let m = left.len().min(right.len());
    (1..m)
        .filter(|&k| left[left.len() - k..] == right[..k])
        .collect()
}

pub fn overlap_report(w: &Word, w2: &Word) -> Result<OverlapReport> {
    if w.is_empty() || w2.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let (a, b) = (w.letters(), w2.letters());
    let lr = overlap_lengths(a, b);
    let rl = overlap_lengths(b, a);
    let minimal_overlap = match (lr.first(), rl.first()) {
        (Some(&k), Some(&j)) if j < k => Some(Word::from_reduced_slice(&a[..j])),
        (Some(&k), _) => Some(Word::from_reduced_slice(&a[a.len() - k..])),
        (None, Some(&j)) => Some(Word::from_reduced_slice(&a[..j])),
        (None, None) => None,
    };
    Ok(OverlapReport {
        left_is_subword: proper_subword(a, b),
        right_is_subword: proper_subword(b, a),
        proper_overlap_lengths_lr: lr,
        proper_overlap_lengths_rl: rl,
        minimal_overlap,
    })
}

/// Whether two nonempty words overlap: one is a proper subword of the other,
/// or a proper suffix of one is a proper prefix of the other.
pub fn overlap(a: &[Letter], b: &[Letter]) -> bool {
    proper_subword(a, b)
        || proper_subword(b, a)
        || !overlap_lengths(a, b).is_empty()
        || !overlap_lengths(b, a).is_empty()
}

/// Checks that `family` is symmetric and that no two distinct members overlap.
pub fn check_independent(family: &[Word]) -> Result<()> {
    let set: BTreeSet<&Word> = family.iter().collect();
    for w in family {
        if w.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if !set.contains(&w.inverse()) {
            return Err(Error::NotSymmetric(w.to_string()));
        }
        if is_self_overlapping(w) {
            return Err(Error::SelfOverlapping(w.to_string()));
        }
    }
    let members: Vec<&Word> = set.into_iter().collect();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            if overlap(a.letters(), b.letters()) {
                return Err(Error::NotIndependent(a.to_string(), b.to_string()));
            }
        }
    }
    Ok(())
}

/// Total order on `S^{±1}`, stored as a rank per letter code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterOrder {
    rank_of: Vec<u8>,
}

impl LetterOrder {
    /// `a < b < ... < A < B < ...`
    pub fn generators_first(rank: usize) -> LetterOrder {
        let mut rank_of = vec![0; 2 * rank];
        for g in 0..rank {
            rank_of[2 * g] = g as u8;
            rank_of[2 * g + 1] = (rank + g) as u8;
        }
        LetterOrder { rank_of }
    }

    /// `a < A < b < B < ...`, the order of ball enumeration.
    pub fn interleaved(rank: usize) -> LetterOrder {
        LetterOrder {
            rank_of: (0..2 * rank as u8).collect(),
        }
    }

    /// Order listing every letter of `S^{±1}` exactly once, smallest first.
    pub fn from_sequence(seq: &[Letter]) -> Result<LetterOrder> {
        let n = seq.len();
        if n == 0 || n % 2 == 1 {
            return Err(Error::Invalid("letter order must list all 2n letters".into()));
        }
        let mut rank_of = vec![u8::MAX; n];
        for (i, l) in seq.iter().enumerate() {
            let c = l.code() as usize;
            if c >= n || rank_of[c] != u8::MAX {
                return Err(Error::Invalid("letter order must list all 2n letters".into()));
            }
            rank_of[c] = i as u8;
        }
        Ok(LetterOrder { rank_of })
    }

    pub fn rank(&self) -> usize {
        self.rank_of.len() / 2
    }

    pub fn cmp_letters(&self, a: Letter, b: Letter) -> Ordering {
        self.rank_of[a.code() as usize].cmp(&self.rank_of[b.code() as usize])
    }

    /// Lexicographic comparison; a proper prefix is smaller.
    pub fn cmp_words(&self, a: &[Letter], b: &[Letter]) -> Ordering {
        for (x, y) in a.iter().zip(b) {
            match self.cmp_letters(*x, *y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        a.len().cmp(&b.len())
    }

    /// Smallest rotation of `w`.
    pub fn min_rotation(&self, w: &Word) -> Word {
        let l = w.letters();
        let mut best: Option<Vec<Letter>> = None;
        for i in 0..l.len() {
            let mut v = l[i..].to_vec();
            v.extend_from_slice(&l[..i]);
            if best
                .as_ref()
                .map_or(true, |b| self.cmp_words(&v, b) == Ordering::Less)
            {
                best = Some(v);
            }
        }
        Word::from_reduced(best.unwrap_or_default())
    }
}

pub fn is_lyndon(w: &Word, order: &LetterOrder) -> bool {
    if w.is_empty() || !w.is_cyclically_reduced() || !is_simple(w) {
        return false;
    }
    let l = w.letters();
    (1..l.len()).all(|i| {
        let mut v = l[i..].to_vec();
        v.extend_from_slice(&l[..i]);
        order.cmp_words(l, &v) == Ordering::Less
    })
}

/// Lyndon words `L` of length `2..=max_len` with `L` smaller than the Lyndon
/// representative of the class of `L^-1`, together with their inverses.
/// Sorted by length, then by `order`.
pub fn generate_fundamental_set(max_len: usize, order: &LetterOrder) -> Result<Vec<Word>> {
    if max_len < 2 {
        return Err(Error::Invalid("max_len must be at least 2".into()));
    }
    let rank = order.rank();
    check_rank(rank)?;
    let mut positive = Vec::new();
    for len in 2..=max_len {
        for w in enumerate_sphere(rank, len) {
            if !is_lyndon(&w, order) {
                continue;
            }
            let partner = order.min_rotation(&w.inverse());
            if order.cmp_words(w.letters(), partner.letters()) == Ordering::Less {
                positive.push(w);
            }
        }
    }
    let mut out: Vec<Word> = positive
        .iter()
        .flat_map(|w| [w.clone(), w.inverse()])
        .collect();
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| order.cmp_words(a.letters(), b.letters()))
    });
    Ok(out)
}

/// `u|v`: a pair of words whose product is reduced as written.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ReducedExpression {
    pub left: Word,
    pub right: Word,
}

impl ReducedExpression {
    pub fn new(left: Word, right: Word) -> Result<ReducedExpression> {
        match (left.last(), right.first()) {
            (Some(x), Some(y)) if x == y.inverse() => Err(Error::Invalid(format!(
                "{left}|{right} is not a reduced expression"
            ))),
            _ => Ok(ReducedExpression { left, right }),
        }
    }
}

/// Every `u'v'` with `u'` a nonempty suffix of `u`, `v'` a nonempty prefix of
/// `v` and `|u'v'| <= max_len`, in shortlex order.
pub fn juncture_family(e: &ReducedExpression, max_len: usize) -> Vec<Word> {
    let (u, v) = (e.left.letters(), e.right.letters());
    let mut out = BTreeSet::new();
    for i in 1..=u.len() {
        for j in 1..=v.len() {
            if i + j > max_len {
                break;
            }
            let mut w = u[u.len() - i..].to_vec();
            w.extend_from_slice(&v[..j]);
            out.insert(Word::from_reduced(w));
        }
    }
    let mut out: Vec<Word> = out.into_iter().collect();
    out.sort_by(|a, b| a.shortlex_cmp(b));
    out
}

/// Whether `w` lies in `j(u|v)` for the expression `u|v`.
pub fn in_juncture(w: &[Letter], u: &[Letter], v: &[Letter]) -> bool {
    (1..w.len()).any(|k| {
        k <= u.len() && w.len() - k <= v.len() && u[u.len() - k..] == w[..k] && v[..w.len() - k] == w[k..]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::enumerate_ball;

    fn w(s: &str) -> Word {
        Word::parse(s, 3).unwrap()
    }

    #[test]
    fn cyclic_core_of_conjugate() {
        let r = cyclic_analysis(&w("abA"));
        assert_eq!(r.core, w("b"));
        assert_eq!(r.conjugator, w("a"));
        let r = cyclic_analysis(&w("abab"));
        assert_eq!(r.core, w("abab"));
        assert!(!r.simple);
        assert_eq!(r.cyclic_permutations, vec![w("abab"), w("baba")]);
    }

    #[test]
    fn conjugacy_examples() {
        assert!(is_conjugate(&w("ab"), &w("ba")));
        assert!(!is_conjugate(&w("ab"), &w("BA")));
        assert!(is_conjugate(&w("ab"), &w("cabC")));
        assert!(is_conjugate(&Word::identity(), &w("aA")));
    }

    #[test]
    fn overlap_examples() {
        let r = overlap_report(&w("abab"), &w("abab")).unwrap();
        assert_eq!(r.minimal_overlap, Some(w("ab")));
        assert!(is_self_overlapping(&w("abab")));
        let r = overlap_report(&w("aab"), &w("aba")).unwrap();
        assert_eq!(r.proper_overlap_lengths_lr, vec![2]);
        assert_eq!(r.proper_overlap_lengths_rl, vec![1]);
        assert_eq!(r.minimal_overlap, Some(w("a")));
        assert!(overlap_report(&w("a"), &Word::identity()).is_err());
        let r = overlap_report(&w("b"), &w("abc")).unwrap();
        assert!(r.left_is_subword && !r.right_is_subword && !r.overlaps_properly());
    }

    #[test]
    fn xyx_examples() {
        assert_eq!(xyx_decomposition(&w("abab")), Some((w("ab"), Word::identity())));
        assert_eq!(xyx_decomposition(&w("abcab")), Some((w("ab"), w("c"))));
        assert_eq!(xyx_decomposition(&w("ab")), None);
    }

    #[test]
    fn lyndon_examples() {
        let o = LetterOrder::generators_first(2);
        assert!(is_lyndon(&w("ab"), &o));
        assert!(!is_lyndon(&w("ba"), &o));
        assert!(!is_lyndon(&w("abab"), &o));
        assert!(is_lyndon(&w("bA"), &o));
        assert!(!is_lyndon(&w("aba"), &o));
    }

    #[test]
    fn fundamental_set_length_two() {
        let o = LetterOrder::generators_first(2);
        let f = generate_fundamental_set(2, &o).unwrap();
        let names: BTreeSet<String> = f.iter().map(|x| x.to_string()).collect();
        let expected: BTreeSet<String> = ["ab", "BA", "aB", "bA"].iter().map(|s| s.to_string()).collect();
        assert_eq!(names, expected);
        assert!(generate_fundamental_set(1, &o).is_err());
    }

    #[test]
    fn juncture_family_examples() {
        let e = ReducedExpression::new(w("a"), w("b")).unwrap();
        assert_eq!(juncture_family(&e, 10), vec![w("ab")]);
        let e = ReducedExpression::new(w("aa"), w("bb")).unwrap();
        assert_eq!(
            juncture_family(&e, 10),
            vec![w("ab"), w("aab"), w("abb"), w("aabb")]
        );
        assert_eq!(juncture_family(&e, 3).len(), 3);
        assert!(ReducedExpression::new(w("ab"), w("Ba")).is_err());
    }

    #[test]
    fn in_juncture_matches_family() {
        let ball = enumerate_ball(2, 3);
        for u in &ball {
            for v in &ball {
                let Ok(e) = ReducedExpression::new(u.clone(), v.clone()) else {
                    continue;
                };
                let fam = juncture_family(&e, 6);
                for x in &ball {
                    assert_eq!(
                        fam.contains(x),
                        in_juncture(x.letters(), u.letters(), v.letters())
                    );
                }
            }
        }
    }

    #[test]
    fn letter_order_from_sequence() {
        let seq: Vec<Letter> = w("BbAa").letters().to_vec();
        assert!(LetterOrder::from_sequence(&seq).is_err());
        let seq = vec![
            Letter::new(1, true),
            Letter::new(1, false),
            Letter::new(0, true),
            Letter::new(0, false),
        ];
        let o = LetterOrder::from_sequence(&seq).unwrap();
        assert_eq!(o.cmp_letters(Letter::new(1, true), Letter::new(0, false)), Ordering::Less);
    }
}
