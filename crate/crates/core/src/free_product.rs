//! Free products of free groups, modelled as one free group whose basis is
//! split into consecutive blocks. Factor `i` is generated by block `i`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::decomposition::{Decomposition, DeltaTriangle, TriangleScratch};
use crate::error::{Error, Result};
use crate::quasimorphism::QuasimorphismSpec;
use crate::word::{check_rank, Letter, Word};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BlockStructure {
    sizes: Vec<usize>,
    block_of: Vec<usize>,
    offsets: Vec<usize>,
}

impl BlockStructure {
    pub fn new(sizes: Vec<usize>) -> Result<BlockStructure> {
        if sizes.is_empty() || sizes.iter().any(|&s| s == 0) {
            return Err(Error::Invalid("blocks must be nonempty".into()));
        }
        let total: usize = sizes.iter().sum();
        check_rank(total)?;
        let mut block_of = Vec::with_capacity(total);
        let mut offsets = Vec::with_capacity(sizes.len());
        for (i, &s) in sizes.iter().enumerate() {
            offsets.push(block_of.len());
            block_of.extend(std::iter::repeat(i).take(s));
        }
        Ok(BlockStructure {
            sizes,
            block_of,
            offsets,
        })
    }

    /// `n` copies of a rank-`rank` factor.
    pub fn uniform(copies: usize, rank: usize) -> Result<BlockStructure> {
        BlockStructure::new(vec![rank; copies])
    }

    /// Parses `a,b|c,d` (optionally prefixed by `blocks=`). Generators must be
    /// listed in basis order.
    pub fn parse(text: &str) -> Result<BlockStructure> {
        let body = text.trim();
        let body = body.strip_prefix("blocks=").unwrap_or(body);
        let mut sizes = Vec::new();
        let mut next = 0usize;
        for block in body.split('|') {
            let mut size = 0;
            for name in block.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let mut chars = name.chars();
                let (Some(ch @ 'a'..='z'), None) = (chars.next(), chars.next()) else {
                    return Err(Error::Invalid(format!("bad generator name {name:?}")));
                };
                if ch as usize - 'a' as usize != next {
                    return Err(Error::Invalid(format!(
                        "blocks must list generators in order; found {ch:?}"
                    )));
                }
                next += 1;
                size += 1;
            }
            sizes.push(size);
        }
        BlockStructure::new(sizes)
    }

    pub fn rank(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn block_size(&self, block: usize) -> usize {
        self.sizes[block]
    }

    #[inline]
    pub fn block_of(&self, l: Letter) -> usize {
        self.block_of[l.generator()]
    }

    /// Rewrites a word lying in block `block` with the factor's own basis.
    pub fn to_local(&self, block: usize, letters: &[Letter]) -> Word {
        let off = self.offsets[block];
        Word::from_reduced(
            letters
                .iter()
                .map(|l| Letter::new(l.generator() - off, l.is_inverse()))
                .collect(),
        )
    }

    #[inline]
    pub fn to_local_into(&self, block: usize, letters: &[Letter], out: &mut Vec<Letter>) {
        let off = self.offsets[block];
        out.clear();
        out.extend(
            letters
                .iter()
                .map(|l| Letter::new(l.generator() - off, l.is_inverse())),
        );
    }

    /// The inclusion of factor `block`, `ι_block`.
    pub fn embed(&self, block: usize, w: &Word) -> Result<Word> {
        if block >= self.block_count() {
            return Err(Error::Invalid(format!("no block {block}")));
        }
        if w.min_rank() > self.sizes[block] {
            return Err(Error::Invalid(format!(
                "{w} does not lie in a factor of rank {}",
                self.sizes[block]
            )));
        }
        let off = self.offsets[block];
        Ok(w.relabel(|g| g + off))
    }

    /// Maximal runs of letters from one block, as `(block, start, end)`.
    pub fn runs<'a>(&'a self, letters: &'a [Letter]) -> impl Iterator<Item = (usize, usize, usize)> + 'a {
        let mut i = 0;
        std::iter::from_fn(move || {
            if i >= letters.len() {
                return None;
            }
            let b = self.block_of(letters[i]);
            let start = i;
            while i < letters.len() && self.block_of(letters[i]) == b {
                i += 1;
            }
            Some((b, start, i))
        })
    }

    fn check_uniform_pair(&self) -> Result<usize> {
        if self.block_count() != 2 || self.sizes[0] != self.sizes[1] {
            return Err(Error::Invalid(format!(
                "iota needs two blocks of equal rank, got {self}"
            )));
        }
        Ok(self.sizes[0])
    }
}

impl fmt::Display for BlockStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut g = 0u8;
        for (i, &s) in self.sizes.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for j in 0..s {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", (b'a' + g) as char)?;
                g += 1;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BlockStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlockStructure({self})")
    }
}

impl FromStr for BlockStructure {
    type Err = Error;
    fn from_str(s: &str) -> Result<BlockStructure> {
        BlockStructure::parse(s)
    }
}

impl Serialize for BlockStructure {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BlockStructure {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<BlockStructure, D::Error> {
        let text = String::deserialize(d)?;
        BlockStructure::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// The factorization `Δ_*(g)`: maximal single-block runs.
pub fn block_decompose(bs: &BlockStructure, g: &Word) -> Vec<Word> {
    bs.runs(g.letters())
        .map(|(_, s, e)| g.subword(s..e))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarData {
    /// `None` encodes `r_* = (1, 1)`.
    pub r_star: Option<(Word, Word)>,
    /// Factor of `r_*`. Set to 0 when `r_*` is trivial; callers must not read it then.
    pub i_star: usize,
}

/// `r_*` for a pair: the last piece of `r1` and the first piece of `r2` of the
/// `Δ_*`-triangle, or `(1, 1)` when either is empty.
pub fn r_star(bs: &BlockStructure, g: &Word, h: &Word) -> Result<StarData> {
    let star = Decomposition::block(bs.clone());
    let t = DeltaTriangle::compute(&star, g, h)?;
    Ok(star_from_triangle(bs, &t))
}

fn star_from_triangle(bs: &BlockStructure, t: &DeltaTriangle) -> StarData {
    match (t.r1.last(), t.r2.first()) {
        (Some(x), Some(y)) => StarData {
            i_star: bs.block_of(x.first().expect("pieces are nonempty")),
            r_star: Some((x.clone(), y.clone())),
        },
        _ => StarData {
            r_star: None,
            i_star: 0,
        },
    }
}

/// `r_*` from a precomputed `Δ_*` scratch triangle, as letter slices.
#[inline]
pub fn r_star_slices<'a>(t: &'a TriangleScratch) -> Option<(&'a [Letter], &'a [Letter])> {
    let (r1, r2) = (t.r1_piece_count(), t.r2_piece_count());
    if r1 == 0 || r2 == 0 {
        return None;
    }
    Some((t.g_piece(t.a() + r1 - 1), t.h_piece(t.b())))
}

/// `φ_1 * ... * φ_n (g) = Σ φ_{i_j}(g_j)` over the block factorization, each
/// factor spec evaluated in its factor's own basis.
pub fn free_product_eval(
    specs: &[QuasimorphismSpec],
    bs: &BlockStructure,
    g: &Word,
) -> Result<f64> {
    if specs.len() != bs.block_count() {
        return Err(Error::Invalid(format!(
            "{} factor specs for {} blocks",
            specs.len(),
            bs.block_count()
        )));
    }
    let mut total = 0.0;
    for (b, s, e) in bs.runs(g.letters()) {
        total += specs[b].evaluate(&bs.to_local(b, &g.letters()[s..e]))?;
    }
    Ok(total)
}

/// `Δ_1 * ... * Δ_n`: `Δ_*` refined blockwise by the factor decompositions,
/// which act on ambient letters.
pub fn free_product_decomposition(
    factors: Vec<Decomposition>,
    bs: &BlockStructure,
) -> Result<Decomposition> {
    Decomposition::free_product(bs.clone(), factors)
}

/// `ι(g) = ι_1(g) ι_2(g)` in `F * F`.
pub fn iota(bs: &BlockStructure, g: &Word) -> Result<Word> {
    let n = bs.check_uniform_pair()?;
    if g.min_rank() > n {
        return Err(Error::Invalid(format!("{g} is not in a rank-{n} group")));
    }
    let mut v = g.letters().to_vec();
    v.extend(g.letters().iter().map(|l| Letter::new(l.generator() + n, l.is_inverse())));
    Ok(Word::from_reduced(v))
}

/// `spec ∘ ι`.
pub fn pullback_eval(spec: &QuasimorphismSpec, bs: &BlockStructure, g: &Word) -> Result<f64> {
    spec.evaluate(&iota(bs, g)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UlamWitness {
    pub g: Word,
    pub iota_g_squared: Word,
    pub products_checked: usize,
    pub candidates_tried: usize,
}

pub const ULAM_MAX_SET: usize = 64;

/// Searches cyclically reduced `g` with `|g| > max |e|`, by increasing length,
/// such that `ι(g²)` is not in `E ι(g) E ι(g) E`.
pub fn ulam_violation_witness(
    bs: &BlockStructure,
    e: &[Word],
    max_len: usize,
) -> Result<UlamWitness> {
    let n = bs.check_uniform_pair()?;
    if e.is_empty() {
        return Err(Error::Invalid("E must be nonempty".into()));
    }
    if e.len() > ULAM_MAX_SET {
        return Err(Error::BudgetExceeded(format!(
            "|E| = {} exceeds {ULAM_MAX_SET}",
            e.len()
        )));
    }
    if e.iter().any(|x| x.min_rank() > 2 * n) {
        return Err(Error::Invalid("E must lie in F * F".into()));
    }
    let min_len = e.iter().map(Word::len).max().unwrap_or(0) + 1;
    let mut tried = 0;
    for len in min_len..=max_len {
        let candidates: Vec<Word> = crate::word::enumerate_sphere(n, len)
            .into_iter()
            .filter(Word::is_cyclically_reduced)
            .collect();
        tried += candidates.len();
        let found = candidates.par_iter().find_first(|g| {
            let ig = iota(bs, g).expect("checked rank");
            let target = iota(bs, &g.multiply(g)).expect("checked rank");
            !in_triple_product(e, &ig, &target)
        });
        if let Some(g) = found {
            return Ok(UlamWitness {
                iota_g_squared: iota(bs, &g.multiply(g))?,
                g: g.clone(),
                products_checked: e.len().pow(3),
                candidates_tried: tried,
            });
        }
    }
    Err(Error::BudgetExceeded(format!(
        "no witness with |g| <= {max_len}"
    )))
}

/// Whether `target ∈ E x E x E`.
fn in_triple_product(e: &[Word], x: &Word, target: &Word) -> bool {
    for e1 in e {
        let p1 = e1.multiply(x);
        for e2 in e {
            let p2 = p1.multiply(e2).multiply(x);
            // e3 is forced: e3 = p2^-1 target.
            let e3 = p2.inverse().multiply(target);
            if e.contains(&e3) {
                return true;
            }
        }
    }
    false
}
