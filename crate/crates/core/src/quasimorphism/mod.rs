//! Quasimorphism specifications and their evaluation.

mod defect;
mod expansion;
mod kappa;
mod tables;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::brooks::{brooks_slice, homogenized_slice, BrooksKind, CyclicWord};
use crate::combinatorics::is_self_overlapping;
use crate::decomposition::{eval_decomposable_with, Decomposition, PieceWeights};
use crate::error::{Error, Result};
use crate::free_product::{iota, BlockStructure};
use crate::wordset::parse_rank_header;
use crate::word::{Letter, Word};

pub use defect::{
    coboundary, estimate_defect, homogenize_sequence, DefectEstimate, HomogenizationReport,
    PairMode, DEFECT_TOLERANCE, TABLE_LIMIT,
};
pub use expansion::{grigorchuk_expand, in_f_plus};
pub use kappa::{kappa_alpha, KappaReport};
pub(crate) use kappa::family_scan;
pub use tables::ValueTable;

/// One alternating bounded map `λ: Z \ {0} -> R`, given on positive exponents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRolliTable", into = "RawRolliTable")]
pub struct RolliTable {
    default: f64,
    entries: BTreeMap<i64, f64>,
}

#[derive(Serialize, Deserialize)]
struct RawRolliTable {
    #[serde(default)]
    default: f64,
    #[serde(default)]
    entries: BTreeMap<i64, f64>,
}

impl TryFrom<RawRolliTable> for RolliTable {
    type Error = Error;
    fn try_from(raw: RawRolliTable) -> Result<RolliTable> {
        RolliTable::new(raw.default, raw.entries.into_iter())
    }
}

impl From<RolliTable> for RawRolliTable {
    fn from(t: RolliTable) -> RawRolliTable {
        RawRolliTable {
            default: t.default,
            entries: t.entries,
        }
    }
}

impl RolliTable {
    /// `λ(m) = default` on unlisted `m > 0`. Negative keys are folded onto
    /// their positive counterparts and must agree with alternation.
    pub fn new(default: f64, entries: impl IntoIterator<Item = (i64, f64)>) -> Result<RolliTable> {
        if !default.is_finite() {
            return Err(Error::Invalid("Rolli default must be finite".into()));
        }
        let mut map: BTreeMap<i64, f64> = BTreeMap::new();
        for (m, v) in entries {
            if m == 0 {
                return Err(Error::Invalid("Rolli tables are indexed by nonzero exponents".into()));
            }
            if !v.is_finite() {
                return Err(Error::Invalid(format!("Rolli value at {m} is not finite")));
            }
            let (key, val) = if m > 0 { (m, v) } else { (-m, -v) };
            if let Some(old) = map.insert(key, val) {
                if (old - val).abs() > DEFECT_TOLERANCE {
                    return Err(Error::NotAlternating {
                        word: format!("exponent {key}"),
                        value: old,
                        inverse_value: -val,
                    });
                }
            }
        }
        Ok(RolliTable { default, entries: map })
    }

    /// `λ = c · sign`.
    pub fn constant(c: f64) -> RolliTable {
        RolliTable {
            default: c,
            entries: BTreeMap::new(),
        }
    }

    pub fn zero() -> RolliTable {
        RolliTable::constant(0.0)
    }

    #[inline]
    pub fn lambda(&self, m: i64) -> f64 {
        if m == 0 {
            return 0.0;
        }
        let v = self.entries.get(&m.abs()).copied().unwrap_or(self.default);
        if m > 0 {
            v
        } else {
            -v
        }
    }

    pub fn sup_bound(&self) -> f64 {
        self.entries
            .values()
            .fold(self.default.abs(), |m, v| m.max(v.abs()))
    }

    /// Pointwise sum.
    pub fn add(&self, other: &RolliTable) -> RolliTable {
        let keys: Vec<i64> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        RolliTable {
            default: self.default + other.default,
            entries: keys
                .into_iter()
                .map(|k| (k, self.lambda(k) + other.lambda(k)))
                .collect(),
        }
    }
}

/// One table per generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RolliTables {
    pub tables: Vec<RolliTable>,
}

impl RolliTables {
    pub fn new(tables: Vec<RolliTable>) -> RolliTables {
        RolliTables { tables }
    }

    pub fn from_json(text: &str) -> Result<RolliTables> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("Rolli tables: {e}")))
    }

    /// `λ_i(m)`; generators without a table weigh 0.
    #[inline]
    pub fn lambda(&self, generator: usize, m: i64) -> f64 {
        self.tables.get(generator).map_or(0.0, |t| t.lambda(m))
    }

    pub fn sup_bound(&self) -> f64 {
        self.tables.iter().fold(0.0, |m, t| m.max(t.sup_bound()))
    }

    /// `λ × μ` on `F * F`: the tables side by side.
    pub fn product(&self, other: &RolliTables) -> RolliTables {
        RolliTables {
            tables: self.tables.iter().chain(other.tables.iter()).cloned().collect(),
        }
    }

    /// `λ + μ` generatorwise.
    pub fn sum(&self, other: &RolliTables) -> RolliTables {
        let n = self.tables.len().max(other.tables.len());
        let zero = RolliTable::zero();
        RolliTables {
            tables: (0..n)
                .map(|i| {
                    self.tables
                        .get(i)
                        .unwrap_or(&zero)
                        .add(other.tables.get(i).unwrap_or(&zero))
                })
                .collect(),
        }
    }

    #[inline]
    pub fn eval_slice(&self, g: &[Letter]) -> f64 {
        let mut total = 0.0;
        let mut i = 0;
        while i < g.len() {
            let mut j = i + 1;
            while j < g.len() && g[j] == g[i] {
                j += 1;
            }
            total += self.lambda(g[i].generator(), (j - i) as i64 * g[i].sign());
            i = j;
        }
        total
    }
}

/// A finitely supported alternating coefficient map `w ↦ α_w`, stored with
/// both orientations of every support word; zero coefficients are dropped.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoefficientMap {
    entries: BTreeMap<Word, f64>,
    lookup: HashMap<Word, f64>,
    dense: Option<DenseLookup>,
    ceiling: usize,
}

/// Coefficients indexed by the letter codes of a word packed `bits` at a time
/// (code + 1, so lengths are distinguished); built only for short supports.
#[derive(Debug, Clone, PartialEq)]
struct DenseLookup {
    bits: u32,
    values: Vec<f64>,
}

const DENSE_KEY_BITS: u32 = 22;

impl DenseLookup {
    fn build(entries: &BTreeMap<Word, f64>, ceiling: usize) -> Option<DenseLookup> {
        let top = entries.keys().flat_map(|w| w.letters()).map(|l| l.code()).max()?;
        let bits = u32::BITS - (top as u32 + 1).leading_zeros();
        if bits * ceiling as u32 > DENSE_KEY_BITS {
            return None;
        }
        let mut values = vec![0.0; 1 << (bits * ceiling as u32)];
        for (w, v) in entries {
            let key = w
                .letters()
                .iter()
                .fold(0usize, |k, l| k << bits | (l.code() as usize + 1));
            values[key] = *v;
        }
        Some(DenseLookup { bits, values })
    }
}

impl CoefficientMap {
    /// Closes `entries` under `w^-1 ↦ -α_w`, rejecting conflicts.
    pub fn new(entries: impl IntoIterator<Item = (Word, f64)>) -> Result<CoefficientMap> {
        let mut map: BTreeMap<Word, f64> = BTreeMap::new();
        for (w, v) in entries {
            if w.is_empty() {
                return Err(Error::EmptyPattern);
            }
            if !v.is_finite() {
                return Err(Error::Invalid(format!("coefficient of {w} is not finite")));
            }
            for (key, val) in [(w.inverse(), -v), (w, v)] {
                if let Some(old) = map.insert(key.clone(), val) {
                    if (old - val).abs() > DEFECT_TOLERANCE {
                        return Err(Error::CoefficientConflict {
                            word: key.to_string(),
                            first: old,
                            second: val,
                        });
                    }
                }
            }
        }
        map.retain(|_, v| *v != 0.0);
        Ok(CoefficientMap::from_closed(map))
    }

    fn from_closed(entries: BTreeMap<Word, f64>) -> CoefficientMap {
        let ceiling = entries.keys().map(Word::len).max().unwrap_or(0);
        let lookup = entries.iter().map(|(k, v)| (k.clone(), *v)).collect();
        let dense = DenseLookup::build(&entries, ceiling);
        CoefficientMap {
            entries,
            lookup,
            dense,
            ceiling,
        }
    }

    /// Lines `word<TAB>value` (any whitespace accepted), `#` comments, an
    /// optional `rank=N` header; without one the rank is 26.
    pub fn parse(text: &str) -> Result<CoefficientMap> {
        let mut rank = None;
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            if let Some(r) = parse_rank_header(line) {
                if rank.is_some() || !entries.is_empty() {
                    return Err(err("rank header must come first".into()));
                }
                rank = Some(r.map_err(|e| err(e.to_string()))?);
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(word), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err("expected `word<TAB>value`".into()));
            };
            let w = Word::parse(word, rank.unwrap_or(crate::word::MAX_RANK))
                .map_err(|e| err(e.to_string()))?;
            let v: f64 = value
                .parse()
                .map_err(|e| err(format!("bad value {value:?}: {e}")))?;
            entries.push((w, v));
        }
        CoefficientMap::new(entries)
    }

    /// One line per word of `F⁺`, in ball order.
    pub fn to_text(&self) -> String {
        let mut words: Vec<(&Word, f64)> = self.positive().collect();
        words.sort_by(|a, b| a.0.shortlex_cmp(b.0));
        words
            .into_iter()
            .map(|(w, v)| format!("{w}\t{v}\n"))
            .collect()
    }

    #[inline]
    pub fn get(&self, w: &[Letter]) -> f64 {
        self.lookup.get(w).copied().unwrap_or(0.0)
    }

    /// Maximal support length `L`.
    pub fn ceiling(&self) -> usize {
        self.ceiling
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Both orientations of every support word.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, f64)> {
        self.entries.iter().map(|(k, v)| (k, *v))
    }

    /// The `F⁺` half of the support.
    pub fn positive(&self) -> impl Iterator<Item = (&Word, f64)> {
        self.iter().filter(|(w, _)| in_f_plus(w))
    }

    pub fn is_non_self_overlapping(&self) -> bool {
        self.entries.keys().all(|w| !is_self_overlapping(w))
    }

    /// `α · 1{|w| > n}`.
    pub fn truncate_above(&self, n: usize) -> CoefficientMap {
        CoefficientMap::from_closed(
            self.entries
                .iter()
                .filter(|(w, _)| w.len() > n)
                .map(|(w, v)| (w.clone(), *v))
                .collect(),
        )
    }

    /// `α · 1{|w| <= n}`.
    pub fn truncate_to(&self, n: usize) -> CoefficientMap {
        CoefficientMap::from_closed(
            self.entries
                .iter()
                .filter(|(w, _)| w.len() <= n)
                .map(|(w, v)| (w.clone(), *v))
                .collect(),
        )
    }

    pub fn scale(&self, c: f64) -> CoefficientMap {
        CoefficientMap::from_closed(
            self.entries
                .iter()
                .filter(|_| c != 0.0)
                .map(|(w, v)| (w.clone(), v * c))
                .collect(),
        )
    }

    /// `Σ_w α_w C_w(g)` over both orientations, which equals `Σ_{F⁺} α_w H_w(g)`.
    #[inline]
    pub fn eval_big(&self, g: &[Letter]) -> f64 {
        let mut total = 0.0;
        if let Some(d) = &self.dense {
            let limit = 1usize << d.bits;
            for i in 0..g.len() {
                let mut key = 0usize;
                for l in &g[i..(i + self.ceiling).min(g.len())] {
                    let c = l.code() as usize + 1;
                    if c >= limit {
                        break;
                    }
                    key = key << d.bits | c;
                    total += d.values[key];
                }
            }
            return total;
        }
        for i in 0..g.len() {
            for len in 1..=self.ceiling.min(g.len() - i) {
                if let Some(v) = self.lookup.get(&g[i..i + len]) {
                    total += v;
                }
            }
        }
        total
    }

    /// `Σ_w α_w c_w(g)`.
    pub fn eval_small(&self, g: &[Letter]) -> f64 {
        self.entries
            .iter()
            .map(|(w, v)| v * crate::brooks::count_small_slice(w.letters(), g) as f64)
            .sum()
    }

    /// `Σ_{F⁺} α_w h̄_w(g)`; support must be non-self-overlapping.
    pub fn eval_homogenized(&self, g: &Word) -> Result<f64> {
        let cyc = CyclicWord::of(g);
        let mut total = 0.0;
        for (w, v) in self.positive() {
            if is_self_overlapping(w) {
                return Err(Error::SelfOverlapping(w.to_string()));
            }
            let inv = w.inverse();
            total += v * homogenized_slice(w.letters(), inv.letters(), &cyc) as f64;
        }
        Ok(total)
    }
}

impl Serialize for CoefficientMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, f64> = self.positive().map(|(w, v)| (w.to_string(), v)).collect();
        m.serialize(s)
    }
}

/// A closed, evaluatable description of a map `F -> R`.
#[derive(Debug, Clone)]
pub enum QuasimorphismSpec {
    BrooksBig(Word),
    BrooksSmall(Word),
    /// `h̄_w` on the cyclic word of the argument; `w` non-self-overlapping.
    BrooksHomogenized(Word),
    Rolli(RolliTables),
    CoefficientSum {
        map: CoefficientMap,
        kind: BrooksKind,
    },
    Decomposable {
        weights: PieceWeights,
        decomposition: Decomposition,
    },
    /// Factor specs are written in their factor's own letters.
    FreeProduct {
        factors: Vec<QuasimorphismSpec>,
        blocks: BlockStructure,
    },
    /// `inner ∘ ι` where `inner` lives on `F * F` given by `blocks`.
    Pullback {
        inner: Box<QuasimorphismSpec>,
        blocks: BlockStructure,
    },
    LinearCombination {
        terms: Vec<(f64, QuasimorphismSpec)>,
        constant: f64,
    },
    /// `g ↦ (φ(g) - φ(g^-1)) / 2`.
    AlternatingPart(Box<QuasimorphismSpec>),
}

fn nonempty(w: &Word) -> Result<()> {
    if w.is_empty() {
        Err(Error::EmptyPattern)
    } else {
        Ok(())
    }
}

impl QuasimorphismSpec {
    pub fn brooks(kind: BrooksKind, w: Word) -> Result<QuasimorphismSpec> {
        nonempty(&w)?;
        Ok(match kind {
            BrooksKind::Big => QuasimorphismSpec::BrooksBig(w),
            BrooksKind::Small => QuasimorphismSpec::BrooksSmall(w),
        })
    }

    pub fn brooks_homogenized(w: Word) -> Result<QuasimorphismSpec> {
        nonempty(&w)?;
        if is_self_overlapping(&w) {
            return Err(Error::SelfOverlapping(w.to_string()));
        }
        Ok(QuasimorphismSpec::BrooksHomogenized(w))
    }

    /// Small coefficient sums need non-self-overlapping support.
    pub fn coefficient_sum(map: CoefficientMap, kind: BrooksKind) -> Result<QuasimorphismSpec> {
        if kind == BrooksKind::Small {
            if let Some((w, _)) = map.iter().find(|(w, _)| is_self_overlapping(w)) {
                return Err(Error::SelfOverlapping(w.to_string()));
            }
        }
        Ok(QuasimorphismSpec::CoefficientSum { map, kind })
    }

    pub fn free_product(
        factors: Vec<QuasimorphismSpec>,
        blocks: BlockStructure,
    ) -> Result<QuasimorphismSpec> {
        if factors.len() != blocks.block_count() {
            return Err(Error::Invalid(format!(
                "{} factor specs for {} blocks",
                factors.len(),
                blocks.block_count()
            )));
        }
        Ok(QuasimorphismSpec::FreeProduct { factors, blocks })
    }

    pub fn zero() -> QuasimorphismSpec {
        QuasimorphismSpec::LinearCombination {
            terms: Vec::new(),
            constant: 0.0,
        }
    }

    pub fn evaluate(&self, g: &Word) -> Result<f64> {
        self.evaluate_slice(g.letters())
    }

    /// Evaluates on a reduced letter sequence.
    pub fn evaluate_slice(&self, g: &[Letter]) -> Result<f64> {
        use QuasimorphismSpec::*;
        Ok(match self {
            BrooksBig(w) => {
                let inv = w.inverse();
                brooks_slice(BrooksKind::Big, w.letters(), inv.letters(), g) as f64
            }
            BrooksSmall(w) => {
                let inv = w.inverse();
                brooks_slice(BrooksKind::Small, w.letters(), inv.letters(), g) as f64
            }
            BrooksHomogenized(w) => {
                let inv = w.inverse();
                let cyc = CyclicWord::of(&Word::from_reduced_slice(g));
                homogenized_slice(w.letters(), inv.letters(), &cyc) as f64
            }
            Rolli(t) => t.eval_slice(g),
            // Small sums have non-self-overlapping support, where c_w = C_w.
            CoefficientSum { map, .. } => map.eval_big(g),
            Decomposable {
                weights,
                decomposition,
            } => eval_decomposable_with(weights, decomposition, g, &mut Vec::new())?,
            FreeProduct { factors, blocks } => {
                let mut local = Vec::new();
                let mut total = 0.0;
                for (b, s, e) in blocks.runs(g) {
                    blocks.to_local_into(b, &g[s..e], &mut local);
                    total += factors[b].evaluate_slice(&local)?;
                }
                total
            }
            Pullback { inner, blocks } => inner.evaluate(&iota(blocks, &Word::from_reduced_slice(g))?)?,
            LinearCombination { terms, constant } => {
                let mut total = *constant;
                for (c, s) in terms {
                    total += c * s.evaluate_slice(g)?;
                }
                total
            }
            AlternatingPart(inner) => {
                let inv: Vec<Letter> = g.iter().rev().map(|l| l.inverse()).collect();
                (inner.evaluate_slice(g)? - inner.evaluate_slice(&inv)?) / 2.0
            }
        })
    }

    /// Length beyond which the spec's local data lives; scans must reach it.
    pub fn support_length(&self) -> usize {
        use QuasimorphismSpec::*;
        match self {
            BrooksBig(w) | BrooksSmall(w) | BrooksHomogenized(w) => w.len(),
            CoefficientSum { map, .. } => map.ceiling(),
            FreeProduct { factors, .. } => factors.iter().map(Self::support_length).max().unwrap_or(0),
            Pullback { inner, .. } => inner.support_length().div_ceil(2),
            LinearCombination { terms, .. } => {
                terms.iter().map(|(_, s)| s.support_length()).max().unwrap_or(0)
            }
            AlternatingPart(inner) => inner.support_length(),
            Rolli(_) | Decomposable { .. } => 1,
        }
    }

    /// Whether the spec is alternating by construction.
    pub fn is_alternating_by_construction(&self) -> bool {
        use QuasimorphismSpec::*;
        match self {
            LinearCombination { terms, constant } => {
                *constant == 0.0 && terms.iter().all(|(_, s)| s.is_alternating_by_construction())
            }
            FreeProduct { factors, .. } => factors.iter().all(Self::is_alternating_by_construction),
            Pullback { inner, .. } => inner.is_alternating_by_construction(),
            _ => true,
        }
    }

    /// Upper bound on the defect in the given pair mode, with its source.
    pub fn defect_bound(&self, mode: PairMode) -> Option<(f64, String)> {
        use QuasimorphismSpec::*;
        let all = |reduced: f64| match mode {
            PairMode::Reduced => reduced,
            PairMode::All => 3.0 * reduced,
        };
        match self {
            BrooksBig(w) => Some((
                all(w.len() as f64 - 1.0),
                "big Brooks: reduced defect <= |w| - 1, defect <= 3(|w| - 1)".into(),
            )),
            BrooksSmall(_) => Some((
                all(1.0),
                "small Brooks: reduced defect <= 1, defect <= 3".into(),
            )),
            BrooksHomogenized(_) => Some((12.0, "homogenization: D <= 4 D(h_w) <= 12".into())),
            Rolli(t) => Some((
                3.0 * t.sup_bound(),
                "Rolli: defect <= 3 sup |λ| (Rolli decomposition has defect 1)".into(),
            )),
            CoefficientSum { map, kind } => {
                if map.is_non_self_overlapping() {
                    let k = kappa_alpha(map).ok()?.kappa_at(1);
                    Some((all(k), "Calegari: reduced defect <= kappa(1), defect <= 3 kappa(1)".into()))
                } else if *kind == BrooksKind::Big {
                    let s: f64 = map.positive().map(|(w, v)| v.abs() * (w.len() as f64 - 1.0)).sum();
                    Some((all(s), "termwise big Brooks bounds".into()))
                } else {
                    None
                }
            }
            Decomposable {
                weights,
                decomposition,
            } => decomposition.declared_defect().map(|d| {
                (
                    3.0 * weights.sup_bound() * d as f64,
                    format!("decomposable: D <= 3 sup|λ| D(Δ) with declared D(Δ) = {d}"),
                )
            }),
            FreeProduct { factors, .. } => {
                let mut best: f64 = 0.0;
                for f in factors {
                    best = best.max(f.defect_bound(mode)?.0);
                }
                Some((best, "free product: D <= max of the factor defects".into()))
            }
            Pullback { inner, .. } => {
                let (d, _) = inner.defect_bound(PairMode::All)?;
                Some((11.0 * d, "pullback along ι: D <= 11 D(inner)".into()))
            }
            LinearCombination { terms, constant } => {
                let mut s = constant.abs();
                for (c, spec) in terms {
                    s += c.abs() * spec.defect_bound(mode)?.0;
                }
                Some((s, "linear combination: sum of |c_i| D_i plus |constant|".into()))
            }
            AlternatingPart(inner) => {
                let (d, _) = inner.defect_bound(PairMode::All)?;
                Some((d, "alternating part: D(φ') <= D(φ)".into()))
            }
        }
    }
}

impl fmt::Display for QuasimorphismSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use QuasimorphismSpec::*;
        match self {
            BrooksBig(w) => write!(f, "brooks-big:{w}"),
            BrooksSmall(w) => write!(f, "brooks-small:{w}"),
            BrooksHomogenized(w) => write!(f, "brooks-hom:{w}"),
            Rolli(t) => write!(f, "rolli[{} tables]", t.tables.len()),
            CoefficientSum { map, kind } => {
                let k = match kind {
                    BrooksKind::Big => "big",
                    BrooksKind::Small => "small",
                };
                write!(f, "sum[{} words, L={}]:{k}", map.positive().count(), map.ceiling())
            }
            Decomposable { decomposition, .. } => write!(f, "decomp:{}", decomposition.name()),
            FreeProduct { factors, blocks } => {
                let parts: Vec<String> = factors.iter().map(|s| s.to_string()).collect();
                write!(f, "product[{blocks}]({})", parts.join(", "))
            }
            Pullback { inner, blocks } => write!(f, "pullback[{blocks}]({inner})"),
            LinearCombination { terms, constant } => {
                let mut parts: Vec<String> = terms.iter().map(|(c, s)| format!("{c}*{s}")).collect();
                if *constant != 0.0 || parts.is_empty() {
                    parts.push(format!("{constant}"));
                }
                write!(f, "lin:{}", parts.join("+"))
            }
            AlternatingPart(inner) => write!(f, "alt({inner})"),
        }
    }
}

/// `g ↦ (φ(g) - φ(g^-1)) / 2`.
pub fn alternating_part(spec: &QuasimorphismSpec) -> QuasimorphismSpec {
    QuasimorphismSpec::AlternatingPart(Box::new(spec.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 3).unwrap()
    }

    #[test]
    fn rolli_block_read_off() {
        let t = RolliTables::new(vec![RolliTable::constant(1.0), RolliTable::zero()]);
        assert_eq!(QuasimorphismSpec::Rolli(t).evaluate(&w("aaabbA")).unwrap(), 0.0);
        let t = RolliTable::new(0.5, [(2, 3.0), (-3, 1.0)]).unwrap();
        assert_eq!(t.lambda(2), 3.0);
        assert_eq!(t.lambda(-2), -3.0);
        assert_eq!(t.lambda(3), -1.0);
        assert_eq!(t.lambda(7), 0.5);
        assert!(RolliTable::new(0.0, [(2, 1.0), (-2, 1.0)]).is_err());
        let json = r#"{"tables":[{"default":1.0,"entries":{"2":4.0}},{"default":0.0}]}"#;
        let parsed = RolliTables::from_json(json).unwrap();
        assert_eq!(parsed.lambda(0, -2), -4.0);
        assert_eq!(parsed.sup_bound(), 4.0);
    }

    #[test]
    fn coefficient_sum_matches_brooks() {
        let map = CoefficientMap::parse("rank=2\nab\t1\n").unwrap();
        assert_eq!(map.get(w("BA").letters()), -1.0);
        let spec = QuasimorphismSpec::coefficient_sum(map, BrooksKind::Small).unwrap();
        assert_eq!(spec.evaluate(&w("ababab")).unwrap(), 3.0);
        assert_eq!(spec.evaluate(&Word::identity()).unwrap(), 0.0);
        assert!(CoefficientMap::parse("ab\t1\nBA\t2\n").is_err());
        assert!(matches!(
            CoefficientMap::parse("ab 1 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        let so = CoefficientMap::new([(w("aba"), 1.0)]).unwrap();
        assert!(QuasimorphismSpec::coefficient_sum(so, BrooksKind::Small).is_err());
    }

    #[test]
    fn alternating_part_of_constant_is_zero() {
        let c = QuasimorphismSpec::LinearCombination {
            terms: vec![],
            constant: 1.0,
        };
        let a = alternating_part(&c);
        assert_eq!(a.evaluate(&w("ab")).unwrap(), 0.0);
        assert!(!c.is_alternating_by_construction());
    }
}
