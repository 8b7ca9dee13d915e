use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::shingle::{jaccard, word_shingles};
use crate::domain::PatentDocument;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DedupParams {
    pub shingle_k: usize,
    pub jaccard_threshold: f64,
}

impl Default for DedupParams {
    fn default() -> Self {
        Self {
            shingle_k: 5,
            jaccard_threshold: 0.85,
        }
    }
}

/// Two records with the same canonical id; ids are raw ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExactMerge {
    pub kept_id: String,
    pub removed_id: String,
}

/// Near-duplicate pair; ids are canonical ids, `jaccard` is keeper vs removed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NearMerge {
    pub kept_id: String,
    pub removed_id: String,
    pub jaccard: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DedupReport {
    pub exact_merges: Vec<ExactMerge>,
    pub near_merges: Vec<NearMerge>,
}

/// Earlier filing first, then smaller canonical id, then the remaining
/// fields so the choice never depends on input order.
pub fn keeper_order(a: &PatentDocument, b: &PatentDocument) -> Ordering {
    a.filing_date
        .cmp(&b.filing_date)
        .then_with(|| a.canonical_id.cmp(&b.canonical_id))
        .then_with(|| a.raw_id.cmp(&b.raw_id))
        .then_with(|| doc_fingerprint(a).cmp(&doc_fingerprint(b)))
}

fn doc_fingerprint(d: &PatentDocument) -> impl Ord + '_ {
    (
        &d.title,
        &d.abstract_text,
        &d.claims,
        &d.description,
        &d.inventors,
        &d.applicants,
        d.forward_citations,
        &d.cited_ids,
        &d.source,
    )
}

/// Keeper takes the union of cited ids and the max forward-citation count.
pub fn absorb(keeper: &mut PatentDocument, removed: &PatentDocument) {
    let cited: BTreeSet<String> = keeper.cited_ids.iter().chain(&removed.cited_ids).cloned().collect();
    keeper.cited_ids = cited.into_iter().collect();
    keeper.forward_citations = keeper.forward_citations.max(removed.forward_citations);
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Removes exact duplicates (same canonical id), then merges near duplicates:
/// documents whose title + abstract word-shingle sets reach the Jaccard
/// threshold are linked, and each connected component collapses onto its
/// earliest-filed member. Documents without any shingle never near-merge.
///
/// Survivors are returned sorted by canonical id; both report lists are
/// sorted as well, so the result is independent of input order.
pub fn deduplicate(docs: Vec<PatentDocument>, params: &DedupParams) -> (Vec<PatentDocument>, DedupReport) {
    let mut report = DedupReport::default();

    // exact pass
    let mut groups: BTreeMap<String, Vec<PatentDocument>> = BTreeMap::new();
    for d in docs {
        groups.entry(d.canonical_id.clone()).or_default().push(d);
    }
    let mut survivors: Vec<PatentDocument> = Vec::with_capacity(groups.len());
    for (_, mut group) in groups {
        group.sort_by(keeper_order);
        let mut rest = group.split_off(1);
        let mut keeper = group.pop().expect("group is non-empty");
        for removed in rest.drain(..) {
            absorb(&mut keeper, &removed);
            report.exact_merges.push(ExactMerge {
                kept_id: keeper.raw_id.clone(),
                removed_id: removed.raw_id,
            });
        }
        survivors.push(keeper);
    }

    // near pass; candidate pairs come from an inverted shingle index
    let shingles: Vec<BTreeSet<String>> = survivors
        .iter()
        .map(|d| word_shingles(&d.title_abstract(), params.shingle_k))
        .collect();
    let candidates = candidate_pairs(&shingles, params.jaccard_threshold);
    let mut uf = UnionFind::new(survivors.len());
    for (i, j) in candidates {
        if jaccard(&shingles[i], &shingles[j]) >= params.jaccard_threshold {
            uf.union(i, j);
        }
    }
    let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..survivors.len() {
        components.entry(uf.find(i)).or_default().push(i);
    }

    let mut removed_idx = BTreeSet::new();
    for members in components.values().filter(|m| m.len() > 1) {
        let keeper_idx = *members
            .iter()
            .min_by(|a, b| keeper_order(&survivors[**a], &survivors[**b]))
            .expect("component is non-empty");
        for &m in members.iter().filter(|m| **m != keeper_idx) {
            let removed = survivors[m].clone();
            absorb(&mut survivors[keeper_idx], &removed);
            report.near_merges.push(NearMerge {
                kept_id: survivors[keeper_idx].canonical_id.clone(),
                removed_id: removed.canonical_id,
                jaccard: jaccard(&shingles[keeper_idx], &shingles[m]),
            });
            removed_idx.insert(m);
        }
    }

    let kept: Vec<PatentDocument> = survivors
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !removed_idx.contains(i))
        .map(|(_, d)| d)
        .collect();
    report.exact_merges.sort();
    report
        .near_merges
        .sort_by(|a, b| (&a.kept_id, &a.removed_id).cmp(&(&b.kept_id, &b.removed_id)));
    (kept, report)
}

fn candidate_pairs(shingles: &[BTreeSet<String>], threshold: f64) -> BTreeSet<(usize, usize)> {
    let mut pairs = BTreeSet::new();
    if threshold <= 0.0 {
        // every pair of non-empty sets qualifies
        let live: Vec<usize> = (0..shingles.len()).filter(|i| !shingles[*i].is_empty()).collect();
        for (a, &i) in live.iter().enumerate() {
            for &j in &live[a + 1..] {
                pairs.insert((i, j));
            }
        }
        return pairs;
    }
    let mut index: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, set) in shingles.iter().enumerate() {
        for s in set {
            index.entry(s.as_str()).or_default().push(i);
        }
    }
    for postings in index.values() {
        for (a, &i) in postings.iter().enumerate() {
            for &j in &postings[a + 1..] {
                pairs.insert((i, j));
            }
        }
    }
    pairs
}
