use std::collections::HashMap;

use super::{CoefficientMap, ValueTable};
use crate::error::{Error, Result};
use crate::word::{enumerate_sphere, Letter, Word};

/// Coefficients below this are float residue of exact cancellations.
const SNAP_TO_ZERO: f64 = 1e-12;

/// The fixed half `F⁺` of `F \ {1}`: words smaller than their inverse in
/// letter-code order. Every generator lies in `F⁺`.
pub fn in_f_plus(w: &Word) -> bool {
    !w.is_empty() && w.letters() < w.inverse().letters()
}

/// Coefficients `α` on `F⁺ ∩ ball(N)` with `Σ α_w H_w = f` on `ball(N)`.
/// Lengths are processed in increasing order; at length `k`,
/// `α_w = f(w) - f_{k-1}(w)`, where `f_{k-1}` sums the shorter terms.
pub fn grigorchuk_expand(f: &ValueTable) -> Result<CoefficientMap> {
    if let Some((w, value, inverse_value)) = f.first_non_alternating() {
        return Err(Error::NotAlternating {
            word: w.to_string(),
            value,
            inverse_value,
        });
    }
    let mut alpha: HashMap<Vec<Letter>, f64> = HashMap::new();
    for k in 1..=f.radius() {
        let mut level = Vec::new();
        for w in enumerate_sphere(f.rank(), k) {
            if !in_f_plus(&w) {
                continue;
            }
            let g = w.letters();
            let mut partial = 0.0;
            for i in 0..k {
                for j in i + 1..=k {
                    if j - i < k {
                        partial += alpha.get(&g[i..j]).copied().unwrap_or(0.0);
                    }
                }
            }
            let a = f.get(g) - partial;
            if a.abs() > SNAP_TO_ZERO {
                level.push((w, a));
            }
        }
        for (w, a) in level {
            alpha.insert(w.inverse().into_letters(), -a);
            alpha.insert(w.into_letters(), a);
        }
    }
    CoefficientMap::new(
        alpha
            .into_iter()
            .map(|(w, a)| (Word::from_reduced(w), a)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasimorphism::QuasimorphismSpec;

    #[test]
    fn expands_single_brooks() {
        let spec = QuasimorphismSpec::BrooksBig(Word::parse("ab", 2).unwrap());
        let table = ValueTable::build(&spec, 2, 4).unwrap();
        let alpha = grigorchuk_expand(&table).unwrap();
        let pos: Vec<(String, f64)> = alpha.positive().map(|(w, v)| (w.to_string(), v)).collect();
        assert_eq!(pos, vec![("ab".to_string(), 1.0)]);
    }

    #[test]
    fn zero_and_non_alternating() {
        let zero = ValueTable::from_fn(2, 3, |_| 0.0).unwrap();
        assert!(grigorchuk_expand(&zero).unwrap().is_empty());
        let one = ValueTable::from_fn(2, 2, |w| w.len() as f64).unwrap();
        assert!(matches!(
            grigorchuk_expand(&one),
            Err(Error::NotAlternating { .. })
        ));
    }

    #[test]
    fn f_plus_is_a_half() {
        for w in crate::word::enumerate_ball(2, 4).iter().skip(1) {
            assert_ne!(in_f_plus(w), in_f_plus(&w.inverse()));
        }
    }
}
