use qmforge_bench::{calegari_sum, decompositions, word};
use qmforge_core::{estimate_decomposition_defect, estimate_defect, PairMode};

#[test]
fn benchmark_fixtures_are_sound() {
    // Calegari: the reduced defect of a non-self-overlapping sum is at most κ(1).
    let e = estimate_defect(&calegari_sum(), 2, 4, PairMode::Reduced).unwrap();
    assert!(e.certified_lower <= e.theoretical_upper.unwrap());
    // h_ab(aabab) = 2 and h_aab(aabab) = 1, with coefficients 1 and -2.
    assert_eq!(calegari_sum().evaluate(&word("aabab")).unwrap(), 0.0);
    for (name, d) in decompositions() {
        let e = estimate_decomposition_defect(&d, 2, 3).unwrap();
        assert!(e.certified_lower <= e.theoretical_upper.unwrap(), "{name}");
    }
}
