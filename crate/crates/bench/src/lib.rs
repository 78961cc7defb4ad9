//! Fixtures shared by the scan benchmarks.

use qmforge_core::{BrooksKind, CoefficientMap, Decomposition, QuasimorphismSpec, Word};

pub fn word(s: &str) -> Word {
    Word::parse(s, 2).expect("fixture words are valid")
}

/// A small non-self-overlapping coefficient sum on `F_2`.
pub fn calegari_sum() -> QuasimorphismSpec {
    let map = CoefficientMap::new([(word("ab"), 1.0), (word("aab"), -2.0), (word("abb"), 0.5)])
        .expect("coefficients are consistent");
    QuasimorphismSpec::coefficient_sum(map, BrooksKind::Small).expect("support is non-self-overlapping")
}

/// The built-in decompositions of `F_2`, by name.
pub fn decompositions() -> Vec<(&'static str, Decomposition)> {
    vec![
        ("triv", Decomposition::trivial()),
        ("blocks", Decomposition::whole()),
        ("rolli", Decomposition::rolli()),
        ("brooks-ab", Decomposition::brooks(&word("ab")).expect("ab is a valid pattern")),
    ]
}
