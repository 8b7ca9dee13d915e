use std::collections::{BTreeMap, BTreeSet};

use chrono::NaiveDate;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use scout_core::domain::PatentDocument;
use scout_core::patent::{deduplicate, DedupParams, ExactMerge};

pub const BASES: usize = 130;
pub const EXACT: usize = 40;
pub const NEAR: usize = 30;

fn word(rng: &mut StdRng) -> String {
    let len = rng.random_range(4..9);
    (0..len).map(|_| (b'a' + rng.random_range(0..26u8)) as char).collect()
}

fn doc(raw: &str, canonical: &str, title: String, abstract_text: String, date: NaiveDate, cites: u32, cited: Vec<String>) -> PatentDocument {
    PatentDocument {
        raw_id: raw.into(),
        canonical_id: canonical.into(),
        title,
        abstract_text,
        claims: String::new(),
        description: String::new(),
        inventors: vec![],
        applicants: vec![],
        filing_date: date,
        forward_citations: cites,
        cited_ids: cited,
        entity_tags: vec![],
        source: "generated".into(),
    }
}

/// 130 distinct documents, 40 re-issued copies under another raw id and 30
/// new publications whose abstract differs from a base by its last word.
pub fn corpus(seed: u64) -> Vec<PatentDocument> {
    let mut rng = StdRng::seed_from_u64(seed);
    let base_date = NaiveDate::from_ymd_opt(2000, 1, 1).unwrap();
    let date = |rng: &mut StdRng| base_date + chrono::Days::new(rng.random_range(0..8000));
    let mut docs = Vec::new();
    for i in 0..BASES {
        let title = (0..4).map(|_| word(&mut rng)).collect::<Vec<_>>().join(" ");
        let abs = (0..40).map(|_| word(&mut rng)).collect::<Vec<_>>().join(" ");
        let id = format!("US{:07}B2", 1_000_000 + i);
        let d = date(&mut rng);
        let cites = rng.random_range(0..30);
        docs.push(doc(&id, &id, title, abs, d, cites, vec![format!("C{i}")]));
    }
    let mut picks: Vec<usize> = (0..BASES).collect();
    picks.shuffle(&mut rng);
    for (n, &b) in picks[..EXACT].iter().enumerate() {
        let src = docs[b].clone();
        let raw = format!("us-{}", src.canonical_id.to_lowercase());
        let d = date(&mut rng);
        let cites = rng.random_range(0..30);
        docs.push(doc(&raw, &src.canonical_id, src.title, src.abstract_text, d, cites, vec![format!("X{n}")]));
    }
    for (n, &b) in picks[EXACT..EXACT + NEAR].iter().enumerate() {
        let src = docs[b].clone();
        let mut words: Vec<&str> = src.abstract_text.split(' ').collect();
        let replacement = word(&mut rng);
        *words.last_mut().unwrap() = &replacement;
        let id = format!("EP{:07}A1", 2_000_000 + n);
        let d = date(&mut rng);
        let cites = rng.random_range(0..30);
        docs.push(doc(&id, &id, src.title.clone(), words.join(" "), d, cites, vec![format!("N{n}")]));
    }
    assert_eq!(docs.len(), 200);
    docs
}

fn shingles(text: &str, k: usize) -> BTreeSet<String> {
    let words: Vec<String> = text
        .to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_string)
        .collect();
    if words.len() < k {
        return BTreeSet::new();
    }
    (0..=words.len() - k).map(|i| words[i..i + k].join(" ")).collect()
}

fn jac(a: &BTreeSet<String>, b: &BTreeSet<String>) -> f64 {
    let i = a.intersection(b).count() as f64;
    i / (a.len() as f64 + b.len() as f64 - i)
}

fn merge_into(keeper: &mut PatentDocument, other: &PatentDocument) {
    let mut cited: BTreeSet<String> = keeper.cited_ids.iter().cloned().collect();
    cited.extend(other.cited_ids.iter().cloned());
    keeper.cited_ids = cited.into_iter().collect();
    keeper.forward_citations = keeper.forward_citations.max(other.forward_citations);
}

pub struct Oracle {
    pub survivors: Vec<PatentDocument>,
    pub exact: BTreeSet<(String, String)>,
    pub near: BTreeMap<(String, String), f64>,
}

pub fn oracle(docs: &[PatentDocument], params: &DedupParams) -> Oracle {
    let mut groups: BTreeMap<&str, Vec<&PatentDocument>> = BTreeMap::new();
    for d in docs {
        groups.entry(d.canonical_id.as_str()).or_default().push(d);
    }
    let mut exact = BTreeSet::new();
    let mut stage: Vec<PatentDocument> = Vec::new();
    for members in groups.values() {
        let best = members.iter().min_by_key(|d| (d.filing_date, d.raw_id.clone())).unwrap();
        let mut keeper = (*best).clone();
        for m in members.iter().filter(|m| m.raw_id != best.raw_id) {
            merge_into(&mut keeper, m);
            exact.insert((best.raw_id.clone(), m.raw_id.clone()));
        }
        stage.push(keeper);
    }

    let n = stage.len();
    let sets: Vec<BTreeSet<String>> = stage
        .iter()
        .map(|d| shingles(&format!("{} {}", d.title, d.abstract_text), params.shingle_k))
        .collect();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for i in 0..n {
        for j in i + 1..n {
            if !sets[i].is_empty() && !sets[j].is_empty() && jac(&sets[i], &sets[j]) >= params.jaccard_threshold {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = root(&mut parent, i);
        comps.entry(r).or_default().push(i);
    }
    let mut near = BTreeMap::new();
    let mut drop = BTreeSet::new();
    for members in comps.values().filter(|m| m.len() > 1) {
        let k = *members
            .iter()
            .min_by_key(|i| (stage[**i].filing_date, stage[**i].canonical_id.clone()))
            .unwrap();
        for &m in members.iter().filter(|m| **m != k) {
            let other = stage[m].clone();
            merge_into(&mut stage[k], &other);
            near.insert((stage[k].canonical_id.clone(), other.canonical_id), jac(&sets[k], &sets[m]));
            drop.insert(m);
        }
    }
    let mut survivors: Vec<PatentDocument> =
        stage.into_iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, d)| d).collect();
    survivors.sort_by(|a, b| a.canonical_id.cmp(&b.canonical_id));
    Oracle { survivors, exact, near }
}

pub fn check(docs: Vec<PatentDocument>, expected: &Oracle, params: &DedupParams) {
    let (kept, report) = deduplicate(docs, params);
    assert_eq!(kept, expected.survivors);
    let exact: BTreeSet<(String, String)> = report
        .exact_merges
        .iter()
        .map(|ExactMerge { kept_id, removed_id }| (kept_id.clone(), removed_id.clone()))
        .collect();
    assert_eq!(exact.len(), report.exact_merges.len());
    assert_eq!(exact, expected.exact);
    assert_eq!(report.near_merges.len(), expected.near.len());
    for m in &report.near_merges {
        let j = expected.near.get(&(m.kept_id.clone(), m.removed_id.clone()));
        assert!(j.is_some_and(|j| (j - m.jaccard).abs() < 1e-12), "unexpected near merge {m:?}");
    }
}

/// Planted counts hold, the output equals the oracle, and 20 shuffles of
/// the input give the same result.
pub fn dedup_criterion() {
    let params = DedupParams::default();
    let docs = corpus(42);
    let expected = oracle(&docs, &params);
    assert_eq!(expected.exact.len(), EXACT);
    assert_eq!(expected.near.len(), NEAR);
    assert_eq!(expected.survivors.len(), BASES);
    check(docs.clone(), &expected, &params);
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..20 {
        let mut shuffled = docs.clone();
        shuffled.shuffle(&mut rng);
        check(shuffled, &expected, &params);
    }
}
