use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::CoefficientMap;
use crate::combinatorics::is_self_overlapping;
use crate::error::{Error, Result};
use crate::overlap_graphs::{sigma_ind_certificate, SigmaIndCertificate, DEFAULT_EXACT_LIMIT};
use crate::word::{Letter, Word};

/// Cap on `left parts × right parts × L²` lookups.
const KAPPA_BUDGET: usize = 4_000_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KappaReport {
    pub support_ceiling: usize,
    /// `κ_α(n)` for `n` in `0..=L`; zero beyond.
    pub kappa: BTreeMap<usize, f64>,
    /// A reduced expression `u|v` whose full family attains `κ_α(1)`.
    pub kappa_witness: Option<(Word, Word)>,
    /// `Sκ_α = Σ_n κ_α(n)`.
    pub s_kappa: f64,
    /// `Σ_{F⁺} |α_w|`.
    pub ell1: f64,
    /// `Σ_{F⁺} |w| |α_w|`.
    pub weighted_ell1: f64,
    pub is_calegari: bool,
    pub in_sigma_br: bool,
    pub in_wl1_br: bool,
    pub in_ell1_br: bool,
    pub in_kappa_c0: bool,
    pub in_kappa_ell1: bool,
    pub in_sigma_ind: bool,
    /// Partition of the support into symmetric independent families.
    pub sigma_ind: Option<SigmaIndCertificate>,
    /// `Σ_i max_{I_i} |α|` over the certificate classes, an upper bound for `SInd_α`.
    pub sind_upper: Option<f64>,
}

impl KappaReport {
    pub fn kappa_at(&self, n: usize) -> f64 {
        self.kappa.get(&n).copied().unwrap_or(0.0)
    }
}

/// Per-`n` maxima over reduced expressions `u|v` of the weight of
/// `{w in j(u|v) : |w| > n}`, for distinct nonempty words.
pub(crate) struct FamilyScan {
    pub best: Vec<f64>,
    /// An expression attaining `best[1]`, if it is positive.
    pub witness: Option<(Word, Word)>,
}

/// Full families `j(u|v)` dominate their subfamilies, and only suffixes of
/// `u` that are left parts `x` of splits `w = xy` matter, so `u` ranges over
/// proper prefixes of the words and `v` over proper suffixes.
pub(crate) fn family_scan(words: &[(&[Letter], f64)]) -> Result<FamilyScan> {
    let ceiling = words.iter().map(|(w, _)| w.len()).max().unwrap_or(0);
    let index: HashMap<&[Letter], usize> = words
        .iter()
        .enumerate()
        .map(|(i, (w, _))| (*w, i))
        .collect();
    let mut lefts: BTreeSet<&[Letter]> = BTreeSet::new();
    let mut rights: BTreeSet<&[Letter]> = BTreeSet::new();
    for (g, _) in words {
        for k in 1..g.len() {
            lefts.insert(&g[..k]);
            rights.insert(&g[k..]);
        }
    }
    let lefts: Vec<&[Letter]> = lefts.into_iter().collect();
    let rights: Vec<&[Letter]> = rights.into_iter().collect();
    let work = lefts
        .len()
        .saturating_mul(rights.len())
        .saturating_mul(ceiling * ceiling);
    if work > KAPPA_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "compatible family scan needs about {work} lookups"
        )));
    }

    let per_left: Vec<(Vec<f64>, usize, usize)> = lefts
        .par_iter()
        .enumerate()
        .map(|(li, l)| {
            let mut best = vec![0.0; ceiling + 1];
            let mut arg = usize::MAX;
            let mut hits: Vec<usize> = Vec::new();
            let mut candidate: Vec<Letter> = Vec::with_capacity(ceiling);
            let mut hist = vec![0.0; ceiling + 1];
            for (ri, r) in rights.iter().enumerate() {
                if *l.last().unwrap() == r[0].inverse() {
                    continue;
                }
                hits.clear();
                for i in 1..=l.len().min(ceiling - 1) {
                    for j in 1..=r.len().min(ceiling - i) {
                        candidate.clear();
                        candidate.extend_from_slice(&l[l.len() - i..]);
                        candidate.extend_from_slice(&r[..j]);
                        if let Some(&s) = index.get(candidate.as_slice()) {
                            hits.push(s);
                        }
                    }
                }
                hits.sort_unstable();
                hits.dedup();
                hist.iter_mut().for_each(|h| *h = 0.0);
                for &s in &hits {
                    hist[words[s].0.len()] += words[s].1.abs();
                }
                // tail = weight of members longer than n
                let mut tail = 0.0;
                for n in (0..=ceiling).rev() {
                    if n == 1 && tail > best[1] {
                        arg = ri;
                    }
                    best[n] = f64::max(best[n], tail);
                    tail += hist[n];
                }
            }
            (best, li, arg)
        })
        .collect();

    let mut best = vec![0.0; ceiling + 1];
    let mut witness = None;
    let mut best1 = 0.0;
    for (b, li, arg) in &per_left {
        for n in 0..=ceiling {
            best[n] = f64::max(best[n], b[n]);
        }
        if *arg != usize::MAX && b[1] > best1 {
            best1 = b[1];
            witness = Some((
                Word::from_reduced_slice(lefts[*li]),
                Word::from_reduced_slice(rights[*arg]),
            ));
        }
    }
    Ok(FamilyScan { best, witness })
}

/// `κ_α(n)` for a finitely supported `α` on non-self-overlapping words.
pub fn kappa_alpha(map: &CoefficientMap) -> Result<KappaReport> {
    if let Some((w, _)) = map.iter().find(|(w, _)| is_self_overlapping(w)) {
        return Err(Error::SelfOverlapping(w.to_string()));
    }
    let ceiling = map.ceiling();
    let support: Vec<(&Word, f64)> = map.iter().collect();
    let slices: Vec<(&[Letter], f64)> = support.iter().map(|(w, v)| (w.letters(), *v)).collect();
    let FamilyScan {
        best: kappa_vec,
        witness,
    } = family_scan(&slices)?;
    let kappa: BTreeMap<usize, f64> = kappa_vec.iter().copied().enumerate().collect();
    let s_kappa = kappa_vec.iter().sum();
    let ell1 = map.positive().map(|(_, v)| v.abs()).sum();
    let weighted_ell1 = map.positive().map(|(w, v)| w.len() as f64 * v.abs()).sum();

    let words: Vec<Word> = support.iter().map(|(w, _)| (*w).clone()).collect();
    let certificate = sigma_ind_certificate(&words, DEFAULT_EXACT_LIMIT)?;
    let sind_upper = certificate.verified.then(|| {
        certificate
            .classes
            .iter()
            .map(|class| {
                class
                    .iter()
                    .map(|w| map.get(w.letters()).abs())
                    .fold(0.0, f64::max)
            })
            .sum()
    });
    // Finite support puts α in every subspace; the flags record that the
    // computed quantities agree.
    let finite = kappa_vec.iter().all(|k| k.is_finite());
    Ok(KappaReport {
        support_ceiling: ceiling,
        kappa,
        kappa_witness: witness,
        s_kappa,
        ell1,
        weighted_ell1,
        is_calegari: finite,
        in_sigma_br: true,
        in_wl1_br: f64::is_finite(weighted_ell1),
        in_ell1_br: f64::is_finite(ell1),
        in_kappa_c0: kappa_vec.last().map_or(true, |k| *k == 0.0),
        in_kappa_ell1: f64::is_finite(s_kappa),
        in_sigma_ind: certificate.verified,
        sigma_ind: Some(certificate),
        sind_upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn single_word() {
        let map = CoefficientMap::new([(w("ab"), 1.0)]).unwrap();
        let r = kappa_alpha(&map).unwrap();
        assert_eq!(r.kappa_at(0), 1.0);
        assert_eq!(r.kappa_at(1), 1.0);
        assert_eq!(r.kappa_at(2), 0.0);
        assert_eq!(r.s_kappa, 2.0);
        assert_eq!(r.kappa_witness, Some((w("a"), w("b"))));
        assert!(r.in_sigma_ind && r.is_calegari);
    }

    #[test]
    fn full_family() {
        let map = CoefficientMap::new(
            ["ab", "aab", "abb", "aabb"].iter().map(|s| (w(s), 1.0)),
        )
        .unwrap();
        let r = kappa_alpha(&map).unwrap();
        assert_eq!(r.kappa_at(1), 4.0);
        assert_eq!(r.kappa_at(2), 3.0);
        assert_eq!(r.kappa_at(3), 1.0);
        assert_eq!(r.kappa_at(4), 0.0);
    }

    #[test]
    fn zero_map() {
        let r = kappa_alpha(&CoefficientMap::default()).unwrap();
        assert_eq!(r.kappa_at(1), 0.0);
        assert!(r.in_sigma_ind && r.in_kappa_ell1);
    }
}
