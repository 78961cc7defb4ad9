//! Overlap graphs of word sets, their inversion quotients, and exact or
//! bounded clique, chromatic and longest-path metrics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{check_independent, is_self_overlapping, overlap_report};
use crate::error::{Error, Result};
use crate::quasimorphism::family_scan;
use crate::word::{contains_slice, Word};

pub const DEFAULT_EXACT_LIMIT: usize = 24;

/// Cyclic digraphs up to this size get an exhaustive longest-path search.
pub const LP_EXHAUSTIVE_LIMIT: usize = 12;

/// A finite graph on labelled vertices `0..n`. Undirected graphs keep a
/// symmetric adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    directed: bool,
    labels: Vec<String>,
    adj: Vec<Vec<bool>>,
}

impl Digraph {
    pub fn new(labels: Vec<String>) -> Digraph {
        let n = labels.len();
        Digraph {
            directed: true,
            labels,
            adj: vec![vec![false; n]; n],
        }
    }

    pub fn undirected(labels: Vec<String>) -> Digraph {
        Digraph {
            directed: false,
            ..Digraph::new(labels)
        }
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Loops are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(Error::Invalid(format!("edge ({u}, {v}) outside {n} vertices")));
        }
        if u == v {
            return Err(Error::Invalid(format!("loop at {}", self.labels[u])));
        }
        self.adj[u][v] = true;
        if !self.directed {
            self.adj[v][u] = true;
        }
        Ok(())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u][v] || self.adj[v][u]
    }

    /// Edges in lexicographic order; undirected edges once with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if self.adj[u][v] && (self.directed || u < v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().enumerate().filter(|(_, e)| **e).map(|(v, _)| v)
    }

    /// The underlying undirected graph.
    pub fn underlying(&self) -> Digraph {
        let mut g = Digraph::undirected(self.labels.clone());
        for (u, v) in self.edges() {
            g.adj[u][v] = true;
            g.adj[v][u] = true;
        }
        g
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.vertex_count();
        (0..n).all(|u| {
            self.out_neighbors(u)
                .all(|v| self.out_neighbors(v).all(|w| w == u || self.adj[u][w]))
        })
    }

    /// A topological order, or `None` when the digraph has a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        if !self.directed {
            return if self.edge_count() == 0 {
                Some((0..self.vertex_count()).collect())
            } else {
                None
            };
        }
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for (_, v) in self.edges() {
            indeg[v] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(u) = ready.pop_first() {
            order.push(u);
            for v in self.out_neighbors(u) {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.insert(v);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Longest directed path, counted in edges: DP on DAGs, exhaustive search
    /// on small cyclic digraphs, `None` otherwise.
    pub fn longest_path(&self) -> Option<usize> {
        let n = self.vertex_count();
        if let Some(order) = self.topological_order() {
            let mut dist = vec![0usize; n];
            for &u in &order {
                for v in self.out_neighbors(u) {
                    dist[v] = dist[v].max(dist[u] + 1);
                }
            }
            return Some(dist.into_iter().max().unwrap_or(0));
        }
        if n > LP_EXHAUSTIVE_LIMIT || !self.directed {
            return None;
        }
        fn dfs(g: &Digraph, u: usize, seen: &mut Vec<bool>) -> usize {
            seen[u] = true;
            let mut best = 0;
            for v in g.out_neighbors(u).collect::<Vec<_>>() {
                if !seen[v] {
                    best = best.max(1 + dfs(g, v, seen));
                }
            }
            seen[u] = false;
            best
        }
        let mut seen = vec![false; n];
        Some((0..n).map(|u| dfs(self, u, &mut seen)).max().unwrap_or(0))
    }

    /// Whether `map` (vertex of `self` to vertex of `other`) is an isomorphism
    /// of digraphs.
    pub fn is_isomorphism(&self, other: &Digraph, map: &[usize]) -> bool {
        let n = self.vertex_count();
        if n != other.vertex_count() || map.len() != n || self.directed != other.directed {
            return false;
        }
        let image: BTreeSet<usize> = map.iter().copied().collect();
        if image.len() != n || image.iter().any(|&v| v >= n) {
            return false;
        }
        (0..n).all(|u| (0..n).all(|v| self.adj[u][v] == other.adj[map[u]][map[v]]))
    }

    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let mut g = Digraph {
            directed: self.directed,
            labels,
            adj: vec![vec![false; vertices.len()]; vertices.len()],
        };
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                g.adj[i][j] = self.adj[u][v];
            }
        }
        g
    }

    /// One `u v` label pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", self.labels[u], self.labels[v]);
        }
        out
    }

    fn neighborhoods(&self) -> Vec<BitSet> {
        let n = self.vertex_count();
        (0..n)
            .map(|u| {
                let mut b = BitSet::new(n);
                for v in 0..n {
                    if u != v && self.adjacent(u, v) {
                        b.insert(v);
                    }
                }
                b
            })
            .collect()
    }
}

impl Serialize for Digraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            directed: bool,
            vertices: &'a [String],
            edges: Vec<(usize, usize)>,
        }
        Repr {
            directed: self.directed,
            vertices: &self.labels,
            edges: self.edges(),
        }
        .serialize(s)
    }
}

#[derive(Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(n: usize) -> BitSet {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }
    fn full(n: usize) -> BitSet {
        let mut b = BitSet::new(n);
        for v in 0..n {
            b.insert(v);
        }
        b
    }
    fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }
    fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }
    fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }
    fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn and(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }
    fn and_not(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b)
        })
    }
}

/// Exact value or bracketing bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Exact(usize),
    Bounds { lower: usize, upper: usize },
}

impl Metric {
    pub fn lower(&self) -> usize {
        match *self {
            Metric::Exact(v) => v,
            Metric::Bounds { lower, .. } => lower,
        }
    }
    pub fn upper(&self) -> usize {
        match *self {
            Metric::Exact(v) => v,
            Metric::Bounds { upper, .. } => upper,
        }
    }
    pub fn exact(&self) -> Option<usize> {
        match *self {
            Metric::Exact(v) => Some(v),
            Metric::Bounds { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    pub vertices: usize,
    pub edges: usize,
    pub omega: Metric,
    pub chi: Metric,
    /// Longest directed path in edges; `None` when unavailable.
    pub lp: Option<usize>,
    pub acyclic: bool,
    pub method: String,
}

/// Maximum clique of the underlying graph by Bron–Kerbosch with pivoting.
pub fn max_clique(g: &Digraph) -> Vec<usize> {
    let nb = g.neighborhoods();
    let n = g.vertex_count();
    let mut best = Vec::new();
    let mut current = Vec::new();
    fn expand(
        nb: &[BitSet],
        current: &mut Vec<usize>,
        mut p: BitSet,
        mut x: BitSet,
        best: &mut Vec<usize>,
    ) {
        if p.is_empty() {
            if x.is_empty() && current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        if current.len() + p.len() <= best.len() {
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| p.and(&nb[u]).len())
            .expect("p is nonempty");
        let candidates: Vec<usize> = p.and_not(&nb[pivot]).iter().collect();
        for v in candidates {
            current.push(v);
            expand(nb, current, p.and(&nb[v]), x.and(&nb[v]), best);
            current.pop();
            p.remove(v);
            x.insert(v);
        }
    }
    expand(&nb, &mut current, BitSet::full(n), BitSet::new(n), &mut best);
    best.sort_unstable();
    best
}

fn greedy_clique(g: &Digraph) -> usize {
    let nb = g.neighborhoods();
    let n = g.vertex_count();
    let mut best = usize::from(n > 0);
    for start in 0..n {
        let mut p = nb[start].clone();
        let mut size = 1;
        while let Some(v) = p.iter().max_by_key(|&v| p.and(&nb[v]).len()) {
            size += 1;
            p = p.and(&nb[v]);
        }
        best = best.max(size);
    }
    best
}

/// DSATUR greedy coloring of the underlying graph; colors are `0..k`.
pub fn dsatur_coloring(g: &Digraph) -> Vec<usize> {
    let n = g.vertex_count();
    let nb = g.neighborhoods();
    let mut color = vec![usize::MAX; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| {
                let sat: BTreeSet<usize> = nb[v]
                    .iter()
                    .filter(|&u| color[u] != usize::MAX)
                    .map(|u| color[u])
                    .collect();
                (sat.len(), nb[v].len(), std::cmp::Reverse(v))
            })
            .expect("an uncolored vertex remains");
        let used: BTreeSet<usize> = nb[v].iter().map(|u| color[u]).collect();
        color[v] = (0..).find(|c| !used.contains(c)).expect("unbounded colors");
    }
    color
}

/// An optimal coloring by backtracking over `k = lower, lower + 1, ...`
/// with DSATUR vertex selection.
pub fn exact_coloring(g: &Digraph) -> Vec<usize> {
    let n = g.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let nb = g.neighborhoods();
    let upper = dsatur_coloring(g);
    let k_upper = upper.iter().max().map_or(0, |c| c + 1);
    let lower = max_clique(g).len().max(1);
    fn solve(nb: &[BitSet], color: &mut Vec<usize>, k: usize, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        let n = color.len();
        let mut pick = None;
        let mut pick_key = (0, 0);
        for v in 0..n {
            if color[v] != usize::MAX {
                continue;
            }
            let mut used = 0u64;
            for u in nb[v].iter() {
                if color[u] != usize::MAX {
                    used |= 1 << color[u];
                }
            }
            let key = (used.count_ones() as usize + 1, nb[v].len() + 1);
            if pick.is_none() || key > pick_key {
                pick = Some((v, used));
                pick_key = key;
            }
        }
        let (v, used) = pick.expect("an uncolored vertex remains");
        // Symmetry: never open more than one new color.
        let max_used = color.iter().filter(|&&c| c != usize::MAX).max().map_or(0, |c| c + 1);
        for c in 0..k.min(max_used + 1) {
            if used >> c & 1 == 0 {
                color[v] = c;
                if solve(nb, color, k, left - 1) {
                    return true;
                }
                color[v] = usize::MAX;
            }
        }
        false
    }
    for k in lower..k_upper.min(64) {
        let mut color = vec![usize::MAX; n];
        if solve(&nb, &mut color, k, n) {
            return color;
        }
    }
    upper
}

pub fn graph_metrics(g: &Digraph, exact_limit: usize) -> GraphMetrics {
    let n = g.vertex_count();
    let (omega, chi, method) = if n <= exact_limit {
        let omega = max_clique(g).len();
        let chi = exact_coloring(g).iter().max().map_or(0, |c| c + 1);
        (
            Metric::Exact(omega),
            Metric::Exact(chi),
            "exact: Bron-Kerbosch clique, DSATUR backtracking coloring".to_string(),
        )
    } else {
        let lower = greedy_clique(g);
        let upper = dsatur_coloring(g).iter().max().map_or(0, |c| c + 1);
        (
            Metric::Bounds {
                lower,
                upper: upper.max(lower),
            },
            Metric::Bounds {
                lower,
                upper,
            },
            format!("bounds: {n} vertices exceed the exact limit {exact_limit}"),
        )
    };
    GraphMetrics {
        vertices: n,
        edges: g.edge_count(),
        omega,
        chi,
        lp: g.longest_path(),
        acyclic: g.topological_order().is_some(),
        method,
    }
}

/// `L(T_n)`: vertices `(i, j)` with `1 <= i < j <= n`, edges `(i, j) -> (j, k)`.
pub fn transitive_tournament_line_graph(n: usize) -> Result<Digraph> {
    if n < 2 {
        return Err(Error::Invalid("n must be at least 2".into()));
    }
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();
    let mut g = Digraph::new(pairs.iter().map(|(i, j)| format!("({i},{j})")).collect());
    for (a, &(_, j)) in pairs.iter().enumerate() {
        for (b, &(i2, _)) in pairs.iter().enumerate() {
            if j == i2 {
                g.add_edge(a, b)?;
            }
        }
    }
    Ok(g)
}

fn check_members(words: &[Word]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for w in words {
        if w.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if is_self_overlapping(w) {
            return Err(Error::SelfOverlapping(w.to_string()));
        }
        if !seen.insert(w) {
            return Err(Error::Invalid(format!("{w} listed twice")));
        }
    }
    Ok(())
}

fn pair_graph(words: &[Word], edge: impl Fn(&Word, &Word) -> bool + Sync) -> Digraph {
    let n = words.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|u| {
            let edge = &edge;
            (0..n)
                .filter(move |&v| u != v && edge(&words[u], &words[v]))
                .map(move |v| (u, v))
        })
        .collect();
    let mut g = Digraph::new(words.iter().map(Word::to_string).collect());
    for (u, v) in edges {
        g.adj[u][v] = true;
    }
    g
}

fn overlaps_properly(a: &Word, b: &Word) -> bool {
    !overlap_report(a, b)
        .expect("members are nonempty")
        .proper_overlap_lengths_lr
        .is_empty()
}

fn proper_subword(a: &Word, b: &Word) -> bool {
    a.len() < b.len() && contains_slice(b.letters(), a.letters())
}

/// `OG(V)`: an edge `w -> w'` when a proper suffix of `w` is a proper prefix of `w'`.
pub fn overlap_graph(words: &[Word]) -> Result<Digraph> {
    check_members(words)?;
    Ok(pair_graph(words, overlaps_properly))
}

/// `SG(V)`: an edge `w -> w'` when `w` is a proper subword of `w'`.
pub fn subword_graph(words: &[Word]) -> Result<Digraph> {
    check_members(words)?;
    Ok(pair_graph(words, proper_subword))
}

/// `OSG(V)`: the union of `OG(V)` and `SG(V)`.
pub fn overlap_subword_graph(words: &[Word]) -> Result<Digraph> {
    check_members(words)?;
    Ok(pair_graph(words, |a, b| overlaps_properly(a, b) || proper_subword(a, b)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverlapGraphBundle {
    pub words: Vec<Word>,
    /// Quotient vertex `i` is `{w, w^-1}`, labelled by the smaller of the two.
    pub classes: Vec<Word>,
    /// Quotient vertex of each word.
    pub class_of: Vec<usize>,
    pub og: Digraph,
    pub sg: Digraph,
    pub osg: Digraph,
    pub og_bar: Digraph,
    pub sg_bar: Digraph,
    pub osg_bar: Digraph,
}

fn quotient(g: &Digraph, class_of: &[usize], labels: &[String], directed: bool) -> Digraph {
    let mut q = if directed {
        Digraph::new(labels.to_vec())
    } else {
        Digraph::undirected(labels.to_vec())
    };
    for (u, v) in g.edges() {
        let (a, b) = (class_of[u], class_of[v]);
        q.adj[a][b] = true;
        if !directed {
            q.adj[b][a] = true;
        }
    }
    q
}

/// `OG`, `SG`, `OSG` of a symmetric set of non-self-overlapping words, and
/// their quotients by inversion. Words are sorted into ball order first.
pub fn build_overlap_graphs(v: &[Word]) -> Result<OverlapGraphBundle> {
    check_members(v)?;
    let set: BTreeSet<&Word> = v.iter().collect();
    if let Some(w) = v.iter().find(|w| !set.contains(&w.inverse())) {
        return Err(Error::NotSymmetric(w.to_string()));
    }
    let mut words = v.to_vec();
    words.sort_by(|a, b| a.shortlex_cmp(b));
    let og = overlap_graph(&words)?;
    let sg = subword_graph(&words)?;
    let osg = overlap_subword_graph(&words)?;

    let mut classes: BTreeMap<Word, usize> = BTreeMap::new();
    let mut class_words = Vec::new();
    let mut class_of = Vec::with_capacity(words.len());
    for w in &words {
        let inv = w.inverse();
        let rep = if w.letters() <= inv.letters() { w.clone() } else { inv };
        let next = classes.len();
        let id = *classes.entry(rep.clone()).or_insert_with(|| {
            class_words.push(rep);
            next
        });
        class_of.push(id);
    }
    let labels: Vec<String> = class_words.iter().map(Word::to_string).collect();
    let og_bar = quotient(&og, &class_of, &labels, false);
    let sg_bar = quotient(&sg, &class_of, &labels, true);
    let osg_bar = quotient(&osg, &class_of, &labels, false);
    Ok(OverlapGraphBundle {
        words,
        classes: class_words,
        class_of,
        og,
        sg,
        osg,
        og_bar,
        sg_bar,
        osg_bar,
    })
}

/// Largest compatible family inside `V`: the maximum over reduced
/// expressions `u|v` of `|j(u|v) ∩ V|`.
pub fn kappa_of_set(v: &[Word]) -> Result<usize> {
    let distinct: BTreeSet<&Word> = v.iter().filter(|w| !w.is_empty()).collect();
    let words: Vec<(&[crate::word::Letter], f64)> =
        distinct.iter().map(|w| (w.letters(), 1.0)).collect();
    let scan = family_scan(&words)?;
    Ok(scan.best.first().copied().unwrap_or(0.0) as usize)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaIndCertificate {
    /// Symmetric independent families partitioning `V`.
    pub classes: Vec<Vec<Word>>,
    pub colors: usize,
    /// Whether `colors = χ(ŌSG(V))`.
    pub optimal: bool,
    /// Every class passed the independence check.
    pub verified: bool,
    pub failures: Vec<String>,
}

/// A proper coloring of `ŌSG(V)` lifted to a partition of `V` into symmetric
/// independent families, each rechecked with `check_independent`.
pub fn sigma_ind_certificate(v: &[Word], exact_limit: usize) -> Result<SigmaIndCertificate> {
    let bundle = build_overlap_graphs(v)?;
    let q = &bundle.osg_bar;
    let optimal = q.vertex_count() <= exact_limit;
    let coloring = if optimal {
        exact_coloring(q)
    } else {
        dsatur_coloring(q)
    };
    let colors = coloring.iter().max().map_or(0, |c| c + 1);
    let mut classes: Vec<Vec<Word>> = vec![Vec::new(); colors];
    for (i, w) in bundle.words.iter().enumerate() {
        classes[coloring[bundle.class_of[i]]].push(w.clone());
    }
    let failures: Vec<String> = classes
        .iter()
        .filter_map(|c| check_independent(c).err().map(|e| e.to_string()))
        .collect();
    Ok(SigmaIndCertificate {
        classes,
        colors,
        optimal,
        verified: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(rank: usize, s: &[&str]) -> Vec<Word> {
        s.iter().map(|x| Word::parse(x, rank).unwrap()).collect()
    }

    #[test]
    fn line_graph_small_cases() {
        let g = transitive_tournament_line_graph(2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        let g = transitive_tournament_line_graph(3).unwrap();
        assert_eq!(g.edges(), vec![(0, 2)]);
        assert!(transitive_tournament_line_graph(1).is_err());
    }

    #[test]
    fn edgeless_metrics() {
        let g = Digraph::new((0..7).map(|i| i.to_string()).collect());
        let m = graph_metrics(&g, DEFAULT_EXACT_LIMIT);
        assert_eq!((m.omega, m.chi, m.lp), (Metric::Exact(1), Metric::Exact(1), Some(0)));
    }

    #[test]
    fn odd_cycle_needs_three_colors() {
        let mut g = Digraph::new((0..5).map(|i| i.to_string()).collect());
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5).unwrap();
        }
        let m = graph_metrics(&g, DEFAULT_EXACT_LIMIT);
        assert_eq!((m.omega, m.chi), (Metric::Exact(2), Metric::Exact(3)));
        assert!(!m.acyclic);
        assert_eq!(m.lp, Some(4));
    }

    #[test]
    fn bundle_of_small_set() {
        let v = ws(2, &["ab", "BA", "aB", "bA"]);
        let b = build_overlap_graphs(&v).unwrap();
        assert_eq!(b.classes.len(), 2);
        assert!(b.sg.edges().is_empty());
        // ab overlaps bA at b, and aB overlaps BA at B.
        assert!(!b.og.edges().is_empty());
        assert!(build_overlap_graphs(&ws(2, &["ab"])).is_err());
        assert!(build_overlap_graphs(&ws(2, &["aba", "ABA"])).is_err());
    }

    #[test]
    fn kappa_of_small_sets() {
        assert_eq!(kappa_of_set(&ws(2, &["ab", "aab", "abb", "aabb"])).unwrap(), 4);
        assert_eq!(kappa_of_set(&[]).unwrap(), 0);
        assert_eq!(kappa_of_set(&ws(2, &["abb", "BBA"])).unwrap(), 1);
    }
}
