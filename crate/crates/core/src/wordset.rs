//! Word-set files: a `rank=N` header, then one word per line. `#` starts a
//! comment, blank lines are ignored.

use crate::error::{Error, Result};
use crate::word::{check_rank, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSet {
    pub rank: usize,
    pub words: Vec<Word>,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Parses `rank=N` (whitespace around `=` allowed).
pub fn parse_rank_header(line: &str) -> Option<Result<usize>> {
    let (key, value) = line.split_once('=')?;
    if key.trim() != "rank" {
        return None;
    }
    Some(
        value
            .trim()
            .parse::<usize>()
            .map_err(|e| Error::Invalid(format!("bad rank: {e}")))
            .and_then(|r| check_rank(r).map(|_| r)),
    )
}

pub fn parse_word_set(text: &str) -> Result<WordSet> {
    let mut rank = None;
    let mut words = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let parse_err = |e: Error| Error::Parse {
            line: i + 1,
            message: e.to_string(),
        };
        match rank {
            None => match parse_rank_header(line) {
                Some(r) => rank = Some(r.map_err(parse_err)?),
                None => {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: "expected rank=N header".into(),
                    })
                }
            },
            Some(r) => words.push(Word::parse(line, r).map_err(parse_err)?),
        }
    }
    let rank = rank.ok_or(Error::Parse {
        line: 0,
        message: "missing rank=N header".into(),
    })?;
    Ok(WordSet { rank, words })
}

pub fn format_word_set(set: &WordSet) -> String {
    let mut out = format!("rank={}\n", set.rank);
    for w in &set.words {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    out
}

/// Adds missing inverses, keeping first-seen order and dropping duplicates.
pub fn symmetrize(words: &[Word]) -> Vec<Word> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for w in words {
        for x in [w.clone(), w.inverse()] {
            if seen.insert(x.clone()) {
                out.push(x);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# family\nrank=2\n\nab  # first\nBA\n1\n";
        let set = parse_word_set(text).unwrap();
        assert_eq!(set.rank, 2);
        assert_eq!(set.words.len(), 3);
        assert_eq!(parse_word_set(&format_word_set(&set)).unwrap(), set);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(
            parse_word_set("ab\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_word_set("rank=2\nabc\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_word_set("").is_err());
        assert!(parse_word_set("rank=40\n").is_err());
    }

    #[test]
    fn symmetrize_closes_under_inverse() {
        let w = |s| Word::parse(s, 2).unwrap();
        let out = symmetrize(&[w("ab"), w("BA"), w("aB")]);
        assert_eq!(out, vec![w("ab"), w("BA"), w("aB"), w("bA")]);
    }
}
