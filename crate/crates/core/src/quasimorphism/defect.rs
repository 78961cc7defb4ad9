use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{QuasimorphismSpec, ValueTable};
use crate::error::{Error, Result};
use crate::word::{ball_size, cancellation, enumerate_ball, multiply_into, Word};

/// Absolute tolerance for comparing sums of small exact constants.
pub const DEFECT_TOLERANCE: f64 = 1e-9;

/// Largest ball tabulated for pair scans; beyond it products are evaluated directly.
pub const TABLE_LIMIT: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairMode {
    /// Every pair of the ball.
    All,
    /// Pairs whose product has no cancellation.
    Reduced,
}

impl std::str::FromStr for PairMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<PairMode> {
        match s {
            "all" => Ok(PairMode::All),
            "reduced" => Ok(PairMode::Reduced),
            _ => Err(Error::Invalid(format!("unknown pair mode {s:?}"))),
        }
    }
}

/// A certified lower bound from a finite scan, with an upper bound where one
/// is known. The true defect lies between them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DefectEstimate {
    pub certified_lower: f64,
    pub scan_radius: usize,
    pub pair_mode: PairMode,
    pub theoretical_upper: Option<f64>,
    pub provenance: Option<String>,
    pub witness: Option<(Word, Word)>,
}

impl DefectEstimate {
    /// Fails with `BoundViolation` when the scan exceeds the upper bound.
    pub fn new(
        certified_lower: f64,
        scan_radius: usize,
        pair_mode: PairMode,
        theoretical_upper: Option<f64>,
        provenance: Option<String>,
        witness: Option<(Word, Word)>,
    ) -> Result<DefectEstimate> {
        if let Some(upper) = theoretical_upper {
            if certified_lower > upper + DEFECT_TOLERANCE {
                return Err(Error::BoundViolation {
                    lower: certified_lower,
                    upper,
                    provenance: provenance.unwrap_or_default(),
                });
            }
        }
        Ok(DefectEstimate {
            certified_lower,
            scan_radius,
            pair_mode,
            theoretical_upper,
            provenance,
            witness,
        })
    }
}

/// `δ¹φ(g, h) = φ(g) + φ(h) - φ(gh)`.
pub fn coboundary(spec: &QuasimorphismSpec, g: &Word, h: &Word) -> Result<f64> {
    Ok(spec.evaluate(g)? + spec.evaluate(h)? - spec.evaluate(&g.multiply(h))?)
}

/// Largest `|δ¹φ|` over pairs of `ball(radius)`, ties broken by the first
/// pair in enumeration order.
pub fn estimate_defect(
    spec: &QuasimorphismSpec,
    rank: usize,
    radius: usize,
    mode: PairMode,
) -> Result<DefectEstimate> {
    if radius == 0 {
        return Err(Error::Invalid("radius must be at least 1".into()));
    }
    if radius < spec.support_length() {
        return Err(Error::Invalid(format!(
            "radius {radius} does not reach the support length {} of {spec}",
            spec.support_length()
        )));
    }
    let ball = enumerate_ball(rank, radius);
    let small = ValueTable::build(spec, rank, radius)?;
    let big = if ball_size(rank, 2 * radius) <= TABLE_LIMIT {
        Some(ValueTable::build(spec, rank, 2 * radius)?)
    } else {
        None
    };
    let n = ball.len();
    let best = (0..n)
        .into_par_iter()
        .map_init(Vec::new, |buf, i| -> Result<(f64, usize)> {
            let g = ball[i].letters();
            let vg = small.get(g);
            let mut best = (0.0, usize::MAX);
            for (j, h) in ball.iter().enumerate() {
                let h = h.letters();
                if mode == PairMode::Reduced && cancellation(g, h) > 0 {
                    continue;
                }
                multiply_into(g, h, buf);
                let vgh = match &big {
                    Some(t) => t.get(buf),
                    None => spec.evaluate_slice(buf)?,
                };
                let d = (vg + small.get(h) - vgh).abs();
                if d > best.0 {
                    best = (d, i * n + j);
                }
            }
            Ok(best)
        })
        .try_reduce(
            || (0.0, usize::MAX),
            |x, y| Ok(if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) { y } else { x }),
        )?;
    let witness = (best.1 != usize::MAX).then(|| (ball[best.1 / n].clone(), ball[best.1 % n].clone()));
    let (upper, provenance) = match spec.defect_bound(mode) {
        Some((u, p)) => (Some(u), Some(p)),
        None => (None, None),
    };
    DefectEstimate::new(best.0, radius, mode, upper, provenance, witness)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomogenizationReport {
    /// `φ(g^k) / k` for `k = 1..=n_max`.
    pub values: Vec<f64>,
    pub defect_used: f64,
    /// Largest `|φ(g^n)/n - φ(g^m)/m| - (1/n + 1/m) D` over scanned `n, m`.
    pub worst_excess: f64,
    pub cauchy_ok: bool,
}

/// The sequence `φ(g^k)/k` with the Cauchy estimate checked against `defect`,
/// or the spec's own defect bound when `defect` is `None`.
pub fn homogenize_sequence(
    spec: &QuasimorphismSpec,
    g: &Word,
    n_max: usize,
    defect: Option<f64>,
) -> Result<HomogenizationReport> {
    if n_max == 0 {
        return Err(Error::Invalid("n_max must be at least 1".into()));
    }
    let defect_used = match defect {
        Some(d) => d,
        None => {
            spec.defect_bound(PairMode::All)
                .ok_or_else(|| Error::Invalid(format!("no defect bound known for {spec}")))?
                .0
        }
    };
    let mut values = Vec::with_capacity(n_max);
    let mut power = Word::identity();
    for k in 1..=n_max {
        power = power.multiply(g);
        values.push(spec.evaluate(&power)? / k as f64);
    }
    let mut worst_excess = f64::NEG_INFINITY;
    for n in 1..=n_max {
        for m in 1..=n_max {
            let gap = (values[n - 1] - values[m - 1]).abs();
            let allowed = (1.0 / n as f64 + 1.0 / m as f64) * defect_used;
            worst_excess = worst_excess.max(gap - allowed);
        }
    }
    Ok(HomogenizationReport {
        values,
        defect_used,
        worst_excess,
        cauchy_ok: worst_excess <= DEFECT_TOLERANCE,
    })
}
