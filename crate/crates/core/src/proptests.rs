//! Randomized invariants, checked against direct oracles.

use proptest::prelude::*;

use crate::overlap_graphs::{exact_coloring, max_clique};
use crate::*;

fn letter(rank: usize) -> impl Strategy<Value = Letter> {
    (0..rank, any::<bool>()).prop_map(|(g, inv)| Letter::new(g, inv))
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(rank), 0..=max_len).prop_map(Word::reduce)
}

fn pattern(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    word(rank, max_len).prop_filter("nonempty", |w| !w.is_empty())
}

/// Occurrences of `p` as a subword, by direct comparison.
fn naive_count(p: &Word, g: &Word) -> usize {
    let (p, g) = (p.letters(), g.letters());
    if p.len() > g.len() {
        return 0;
    }
    (0..=g.len() - p.len()).filter(|&i| &g[i..i + p.len()] == p).count()
}

/// Greedy left-to-right disjoint occurrences.
fn naive_disjoint(p: &Word, g: &Word) -> usize {
    let (p, g) = (p.letters(), g.letters());
    let (mut i, mut n) = (0, 0);
    while i + p.len() <= g.len() {
        if &g[i..i + p.len()] == p {
            n += 1;
            i += p.len();
        } else {
            i += 1;
        }
    }
    n
}

fn naive_self_overlapping(w: &Word) -> bool {
    let l = w.letters();
    (1..l.len()).any(|k| l[..k] == l[l.len() - k..])
}

fn is_reduced(w: &Word) -> bool {
    w.letters().windows(2).all(|p| p[0] != p[1].inverse())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn group_laws(g in word(3, 12), h in word(3, 12), k in word(3, 12)) {
        prop_assert_eq!(g.multiply(&h).multiply(&k), g.multiply(&h.multiply(&k)));
        prop_assert!(g.multiply(&g.inverse()).is_empty());
        prop_assert!(is_reduced(&g.multiply(&h)));
        prop_assert_eq!(g.multiply(&h).inverse(), h.inverse().multiply(&g.inverse()));
    }

    #[test]
    fn words_round_trip_through_text(g in word(4, 16)) {
        prop_assert_eq!(Word::parse(&g.to_string(), 4).unwrap(), g);
    }

    #[test]
    fn brooks_counts_match_direct_scans(p in pattern(2, 4), g in word(2, 20)) {
        prop_assert_eq!(count_big(&p, &g).unwrap(), naive_count(&p, &g));
        prop_assert_eq!(count_small(&p, &g).unwrap(), naive_disjoint(&p, &g));
    }

    #[test]
    fn brooks_maps_are_alternating(p in pattern(2, 4), g in word(2, 16)) {
        for kind in [BrooksKind::Big, BrooksKind::Small] {
            let v = eval_brooks(kind, &p, &g).unwrap();
            prop_assert_eq!(eval_brooks(kind, &p, &g.inverse()).unwrap(), -v);
        }
    }

    #[test]
    fn brooks_defect_bounds(p in pattern(2, 4), g in word(2, 10), h in word(2, 10)) {
        let big = QuasimorphismSpec::BrooksBig(p.clone());
        let d = coboundary(&big, &g, &h).unwrap().abs();
        prop_assert!(d <= 3.0 * (p.len() as f64 - 1.0));
        if !is_self_overlapping(&p) {
            let small = QuasimorphismSpec::BrooksSmall(p.clone());
            let d = coboundary(&small, &g, &h).unwrap().abs();
            prop_assert!(d <= 3.0);
            if g.multiply(&h).len() == g.len() + h.len() {
                prop_assert!(d <= 1.0);
            }
        }
    }

    #[test]
    fn self_overlap_matches_border_scan(w in pattern(2, 8)) {
        prop_assert_eq!(is_self_overlapping(&w), naive_self_overlapping(&w));
    }

    #[test]
    fn coefficient_sums_match_termwise_counts(
        entries in prop::collection::vec((pattern(3, 5), -4i32..=4), 1..8),
        g in word(3, 24),
    ) {
        let mut seen = std::collections::HashSet::new();
        let entries: Vec<(Word, f64)> = entries
            .into_iter()
            .filter(|(w, _)| seen.insert(w.clone()) && !seen.contains(&w.inverse()))
            .map(|(w, c)| (w, c as f64))
            .collect();
        let map = CoefficientMap::new(entries.clone()).unwrap();
        let expected: f64 = entries
            .iter()
            .map(|(w, c)| c * (naive_count(w, &g) as f64 - naive_count(&w.inverse(), &g) as f64))
            .sum();
        prop_assert_eq!(map.eval_big(g.letters()), expected);
    }

    #[test]
    fn decompositions_concatenate_back(g in word(2, 14), h in word(2, 14)) {
        let family = [Word::parse("abaB", 2).unwrap(), Word::parse("bABA", 2).unwrap()];
        for d in [
            Decomposition::trivial(),
            Decomposition::whole(),
            Decomposition::rolli(),
            Decomposition::brooks(&Word::parse("ab", 2).unwrap()).unwrap(),
            Decomposition::independent(&family).unwrap(),
        ] {
            let pieces = d.decompose(&g);
            prop_assert_eq!(DeltaTriangle::underline(&pieces), g.clone());
            prop_assert!(pieces.iter().all(|p| !p.is_empty()));
            let t = DeltaTriangle::compute(&d, &g, &h).unwrap();
            let relation = DeltaTriangle::underline(&t.r1)
                .multiply(&DeltaTriangle::underline(&t.r2))
                .multiply(&DeltaTriangle::underline(&t.r3));
            prop_assert!(relation.is_empty(), "{} on ({}, {})", d.name(), g, h);
        }
    }

    #[test]
    fn rolli_sums_pull_back_from_products(
        a in prop::collection::vec(-3i32..=3, 4),
        b in prop::collection::vec(-3i32..=3, 4),
        g in word(2, 10),
    ) {
        let table = |v: &[i32]| RolliTable::new(v[0] as f64, [(1, v[1] as f64), (2, v[2] as f64), (3, v[3] as f64)]).unwrap();
        let lambda = RolliTables::new(vec![table(&a), table(&b)]);
        let mu = RolliTables::new(vec![table(&b), table(&a)]);
        let bs = BlockStructure::parse("a,b|c,d").unwrap();
        let product = QuasimorphismSpec::Rolli(lambda.product(&mu));
        let sum = QuasimorphismSpec::Rolli(lambda.sum(&mu));
        prop_assert_eq!(pullback_eval(&product, &bs, &g).unwrap(), sum.evaluate(&g).unwrap());
    }

    #[test]
    fn graph_metrics_match_brute_force(
        edges in prop::collection::vec((0usize..7, 0usize..7), 0..24),
        directed in any::<bool>(),
    ) {
        let labels: Vec<String> = (0..7).map(|i| i.to_string()).collect();
        let mut g = if directed { Digraph::new(labels) } else { Digraph::undirected(labels) };
        for (u, v) in edges {
            if u != v && !g.has_edge(u, v) {
                g.add_edge(u, v).unwrap();
            }
        }
        let (omega, chi) = brute_force_omega_chi(&g);
        let clique = max_clique(&g);
        prop_assert_eq!(clique.len(), omega);
        for (i, &u) in clique.iter().enumerate() {
            for &v in &clique[i + 1..] {
                prop_assert!(g.adjacent(u, v));
            }
        }
        let colors = exact_coloring(&g);
        for (u, v) in g.edges() {
            prop_assert_ne!(colors[u], colors[v]);
        }
        prop_assert_eq!(colors.iter().max().map_or(0, |c| c + 1), chi);
        let m = graph_metrics(&g, 16);
        prop_assert_eq!(m.omega.exact(), Some(omega));
        prop_assert_eq!(m.chi.exact(), Some(chi));
    }
}

/// Clique and chromatic numbers of the underlying graph, by exhausting vertex
/// subsets and color assignments.
fn brute_force_omega_chi(g: &Digraph) -> (usize, usize) {
    let n = g.vertex_count();
    let omega = (0u32..1 << n)
        .filter(|&s| {
            (0..n).all(|u| (u + 1..n).all(|v| s >> u & 1 == 0 || s >> v & 1 == 0 || g.adjacent(u, v)))
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0);
    let proper = |k: usize| {
        (0..k.pow(n as u32)).any(|code| {
            let color = |v: usize| code / k.pow(v as u32) % k;
            g.edges().iter().all(|&(u, v)| color(u) != color(v))
        })
    };
    let chi = if n == 0 { 0 } else { (1..=n).find(|&k| proper(k)).unwrap() };
    (omega, chi)
}
