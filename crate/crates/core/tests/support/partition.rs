use std::collections::{BTreeMap, BTreeSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use scout_core::domain::{
    CategoryPath, CommercialFlag, LinkKind, Provenance, RunMetadata, SolutionFragment, SustainabilityScore, Taxonomy,
    TaxonomyConfig, ValidationEvidence,
};
use scout_core::intelligence::structure_outputs;
use scout_core::providers::{StubEmbedder, Vector};

pub fn taxonomy() -> Taxonomy {
    let path = super::fixture_root().join("taxonomy.toml");
    Taxonomy::build(&TaxonomyConfig::load(&path).unwrap(), &StubEmbedder).unwrap()
}

pub fn paths(tax: &Taxonomy) -> Vec<CategoryPath> {
    let mut out: Vec<CategoryPath> = tax
        .subcategories()
        .map(|(c, s)| CategoryPath {
            category: c.label.clone(),
            subcategory: s.label.clone(),
        })
        .collect();
    out.push(CategoryPath::uncategorized());
    out
}

#[derive(Debug, Clone)]
pub struct Spec {
    pub path: usize,
    pub criteria: [u8; 4],
    pub validated: bool,
    pub score: u8,
}

pub fn build(specs: &[Spec], all_paths: &[CategoryPath]) -> Vec<SolutionFragment> {
    specs
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut f = SolutionFragment::new(
                format!("frag-{i:03}"),
                format!("fragment number {i}"),
                vec![Provenance::commercial(format!("rec-{i}"))],
                Vector::new(vec![1.0, 0.0]).unwrap(),
            );
            let c = s.criteria.map(|v| f64::from(v) / 2.0);
            f.relevance = Some(0.5);
            f.cluster_id = Some(i % 3);
            f.category_path = Some(all_paths[s.path % all_paths.len()].clone());
            f.sustainability = Some(SustainabilityScore::from_criteria(c[0], c[1], c[2], c[3]).unwrap());
            f.validation = Some(if s.validated {
                vec![ValidationEvidence {
                    record_id: format!("rec-{i}"),
                    link_kind: LinkKind::Similarity,
                    link_score: 0.7,
                    adoption_signals: vec![],
                }]
            } else {
                vec![]
            });
            f.rank_score = Some(f64::from(s.score) / 4.0);
            f
        })
        .collect()
}

pub fn metadata() -> RunMetadata {
    RunMetadata {
        seed: 1,
        config_digest: "d".into(),
        stage_counts: BTreeMap::new(),
    }
}

pub fn random_spec(rng: &mut StdRng) -> Spec {
    Spec {
        path: rng.random_range(0..64),
        criteria: [0; 4].map(|_| rng.random_range(0..3u8)),
        validated: rng.random(),
        score: rng.random_range(0..5),
    }
}

/// Structures the fragments and checks that buckets are disjoint, exhaustive
/// and keyed by each fragment's own flags, and that the taxonomy counts each
/// fragment once.
pub fn check_partition(specs: &[Spec]) {
    let tax = taxonomy();
    let frags = build(specs, &paths(&tax));
    let out = structure_outputs(&frags, &tax, &BTreeMap::new(), &[], metadata()).unwrap();
    let mut seen = BTreeSet::new();
    for (key, ids) in out.buckets.iter() {
        for id in ids {
            assert!(seen.insert(id.clone()), "{id} in two buckets");
            let f = frags.iter().find(|f| &f.id == id).unwrap();
            assert_eq!(key.sustainability, f.sustainability.as_ref().unwrap().flag);
            assert_eq!(key.commercial == CommercialFlag::Commercial, f.is_commercially_validated());
        }
    }
    let all: BTreeSet<String> = frags.iter().map(|f| f.id.clone()).collect();
    assert_eq!(seen, all);
    assert_eq!(out.taxonomy.fragment_count, frags.len());
    let leaf_total: usize = out.taxonomy.children.iter().map(|c| c.fragment_count).sum();
    assert_eq!(leaf_total, frags.len());
}

pub fn randomized_partitions() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..100 {
        let n = rng.random_range(0..40);
        let specs: Vec<Spec> = (0..n).map(|_| random_spec(&mut rng)).collect();
        check_partition(&specs);
    }
}
