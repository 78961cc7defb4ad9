//! The spec and decomposition mini-languages.
//!
//! ```text
//! SPEC := brooks-big:W | brooks-small:W | brooks-hom:W | rolli:@FILE
//!       | sum:@FILE[:big|small] | decomp:KIND:@WEIGHTS | alt:SPEC | zero
//!       | lin:TERM+TERM+...        TERM := SCALAR*SPEC | SCALAR | SPEC
//! KIND := triv | blocks | rolli | brooks=W | independent=W,W,... | independent=@FILE
//!       | star=a,b|c,d
//! ```

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use qmforge_core::{
    make_decomposition, parse_word_set, BlockStructure, BrooksKind, CoefficientMap, Decomposition,
    DecompositionKind, PieceWeights, QuasimorphismSpec, RolliTables, Word,
};

pub fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(Path::new(path)).with_context(|| format!("cannot read {path}"))
}

fn file_arg<'a>(arg: &'a str, what: &str) -> Result<&'a str> {
    arg.strip_prefix('@')
        .ok_or_else(|| anyhow!("{what} expects @FILE, got {arg:?}"))
}

pub fn parse_word(text: &str, rank: usize) -> Result<Word> {
    Word::parse(text, rank).with_context(|| format!("malformed word {text:?}"))
}

pub fn parse_spec(text: &str, rank: usize) -> Result<QuasimorphismSpec> {
    let text = text.trim();
    if text == "zero" {
        return Ok(QuasimorphismSpec::zero());
    }
    let (head, rest) = text
        .split_once(':')
        .ok_or_else(|| anyhow!("malformed spec {text:?}"))?;
    Ok(match head {
        "brooks-big" => QuasimorphismSpec::brooks(BrooksKind::Big, parse_word(rest, rank)?)?,
        "brooks-small" => QuasimorphismSpec::brooks(BrooksKind::Small, parse_word(rest, rank)?)?,
        "brooks-hom" => QuasimorphismSpec::brooks_homogenized(parse_word(rest, rank)?)?,
        "rolli" => {
            let path = file_arg(rest, "rolli")?;
            let tables = RolliTables::from_json(&read_file(path)?)
                .with_context(|| format!("bad Rolli tables in {path}"))?;
            if tables.tables.len() != rank {
                bail!("{path} has {} tables for rank {rank}", tables.tables.len());
            }
            QuasimorphismSpec::Rolli(tables)
        }
        "sum" => {
            let (file, kind) = match rest.rsplit_once(':') {
                Some((f, "big")) => (f, BrooksKind::Big),
                Some((f, "small")) => (f, BrooksKind::Small),
                _ => (rest, BrooksKind::Big),
            };
            let path = file_arg(file, "sum")?;
            let map = CoefficientMap::parse(&read_file(path)?)
                .with_context(|| format!("bad coefficient file {path}"))?;
            check_rank_of(map.iter().map(|(w, _)| w), rank)?;
            QuasimorphismSpec::coefficient_sum(map, kind)?
        }
        "decomp" => {
            let (kind, weights) = rest
                .rsplit_once(':')
                .ok_or_else(|| anyhow!("decomp expects KIND:@WEIGHTS"))?;
            let decomposition = parse_decomposition(kind, rank)?;
            let path = file_arg(weights, "decomp weights")?;
            let weights: PieceWeights = serde_json::from_str(&read_file(path)?)
                .with_context(|| format!("bad piece weights in {path}"))?;
            QuasimorphismSpec::Decomposable {
                weights,
                decomposition,
            }
        }
        "alt" => qmforge_core::alternating_part(&parse_spec(rest, rank)?),
        "lin" => parse_linear(rest, rank)?,
        _ => bail!("unknown spec kind {head:?}"),
    })
}

fn parse_linear(body: &str, rank: usize) -> Result<QuasimorphismSpec> {
    let mut terms = Vec::new();
    let mut constant = 0.0;
    for term in body.split('+').map(str::trim) {
        if term.is_empty() {
            bail!("empty term in lin:{body}");
        }
        if let Ok(c) = term.parse::<f64>() {
            constant += c;
            continue;
        }
        match term.split_once('*') {
            Some((scalar, spec)) => {
                let c: f64 = scalar
                    .trim()
                    .parse()
                    .with_context(|| format!("bad scalar {scalar:?}"))?;
                terms.push((c, parse_spec(spec, rank)?));
            }
            None => terms.push((1.0, parse_spec(term, rank)?)),
        }
    }
    Ok(QuasimorphismSpec::LinearCombination { terms, constant })
}

fn check_rank_of<'a>(words: impl Iterator<Item = &'a Word>, rank: usize) -> Result<()> {
    for w in words {
        if w.min_rank() > rank {
            bail!("word {w} does not lie in the rank-{rank} group");
        }
    }
    Ok(())
}

pub fn parse_decomposition_kind(text: &str, rank: usize) -> Result<DecompositionKind> {
    let (head, arg) = match text.split_once('=') {
        Some((h, a)) => (h.trim(), Some(a.trim())),
        None => (text.trim(), None),
    };
    Ok(match (head, arg) {
        ("triv", None) => DecompositionKind::Triv,
        ("blocks", None) => DecompositionKind::Blocks,
        ("rolli", None) => DecompositionKind::Rolli,
        ("brooks", Some(w)) => DecompositionKind::Brooks(parse_word(w, rank)?),
        ("independent", Some(list)) => {
            let words = match list.strip_prefix('@') {
                Some(path) => {
                    let set = parse_word_set(&read_file(path)?)
                        .with_context(|| format!("bad word set {path}"))?;
                    check_rank_of(set.words.iter(), rank)?;
                    set.words
                }
                None => list
                    .split(',')
                    .map(|w| parse_word(w.trim(), rank))
                    .collect::<Result<_>>()?,
            };
            DecompositionKind::Independent(words)
        }
        ("star", Some(blocks)) => {
            let bs = BlockStructure::parse(blocks)?;
            if bs.rank() != rank {
                bail!("block structure {bs} has rank {}, not {rank}", bs.rank());
            }
            DecompositionKind::Star(bs)
        }
        _ => bail!("unknown decomposition {text:?}"),
    })
}

pub fn parse_decomposition(text: &str, rank: usize) -> Result<Decomposition> {
    Ok(make_decomposition(&parse_decomposition_kind(text, rank)?)?)
}

/// The rank a `star=` decomposition forces, if any.
pub fn implied_rank(kind: &str) -> Option<usize> {
    let blocks = kind.trim().strip_prefix("star=")?;
    BlockStructure::parse(blocks).ok().map(|bs| bs.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brooks_specs() {
        let s = parse_spec("brooks-big:abab", 2).unwrap();
        assert_eq!(s.evaluate(&parse_word("ababab", 2).unwrap()).unwrap(), 2.0);
        assert!(parse_spec("brooks-hom:abab", 2).is_err());
        assert!(parse_spec("brooks-small:abx", 2).is_err());
        assert!(parse_spec("brooks-small:", 2).is_err());
    }

    #[test]
    fn linear_combinations() {
        let s = parse_spec("lin:2*brooks-big:ab+-1*brooks-small:ab+0.5", 2).unwrap();
        let g = parse_word("ababab", 2).unwrap();
        assert_eq!(s.evaluate(&g).unwrap(), 2.0 * 3.0 - 3.0 + 0.5);
        assert!(parse_spec("lin:2*bogus:ab", 2).is_err());
    }

    #[test]
    fn decomposition_kinds() {
        assert_eq!(parse_decomposition_kind("triv", 2).unwrap(), DecompositionKind::Triv);
        assert!(matches!(
            parse_decomposition_kind("independent=ab,BA", 2).unwrap(),
            DecompositionKind::Independent(v) if v.len() == 2
        ));
        assert!(parse_decomposition_kind("star=a,b|c", 2).is_err());
        assert_eq!(implied_rank("star=a,b|c"), Some(3));
        assert!(parse_decomposition_kind("brooks", 2).is_err());
    }
}
