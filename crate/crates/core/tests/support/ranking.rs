use std::collections::BTreeMap;
use chrono::NaiveDate;
use scout_core::domain::{
    AdoptionSignal, CategoryPath, LinkKind, PatentDocument, Provenance, SignalKind, SolutionFragment, ValidationEvidence,
};
use scout_core::intelligence::{rank, RankContext, RankWeights, TrlPolicy};
use scout_core::providers::Vector;

pub fn date(y: i32, m: u32, d: u32) -> NaiveDate {
    NaiveDate::from_ymd_opt(y, m, d).unwrap()
}

pub fn patent(id: &str, filed: NaiveDate, cites: u32) -> PatentDocument {
    PatentDocument {
        raw_id: id.into(),
        canonical_id: id.into(),
        title: "t".into(),
        abstract_text: "a".into(),
        claims: String::new(),
        description: String::new(),
        inventors: vec![],
        applicants: vec![],
        filing_date: filed,
        forward_citations: cites,
        cited_ids: vec![],
        entity_tags: vec![],
        source: "fixture".into(),
    }
}

pub fn patents() -> BTreeMap<String, PatentDocument> {
    [
        patent("P1", date(2024, 6, 1), 0),
        patent("P2", date(2015, 1, 1), 4),
        patent("P3", date(2005, 3, 9), 40),
        patent("P4", date(2020, 8, 20), 1),
    ]
    .into_iter()
    .map(|p| (p.canonical_id.clone(), p))
    .collect()
}

pub fn evidence(launch: bool) -> ValidationEvidence {
    let adoption_signals = if launch {
        vec![AdoptionSignal {
            signal_kind: SignalKind::LaunchYear,
            value: "2019".into(),
        }]
    } else {
        vec![]
    };
    ValidationEvidence {
        record_id: "r".into(),
        link_kind: LinkKind::NameMatch,
        link_score: 1.0,
        adoption_signals,
    }
}

pub fn frag(id: &str, patents: &[&str], cluster: usize, category: &str, validation: Option<bool>) -> SolutionFragment {
    let mut f = SolutionFragment::new(
        id,
        "text",
        patents.iter().map(|p| Provenance::patent(*p)).collect(),
        Vector::new(vec![1.0, 0.0]).unwrap(),
    );
    f.cluster_id = Some(cluster);
    f.category_path = Some(CategoryPath {
        category: category.into(),
        subcategory: "s".into(),
    });
    f.validation = Some(validation.map(|l| vec![evidence(l)]).unwrap_or_default());
    f
}

pub fn fragments() -> Vec<SolutionFragment> {
    vec![
        frag("a", &["P1"], 0, "C1", Some(true)),
        frag("b", &["P2"], 0, "C2", None),
        frag("c", &["P3"], 1, "C1", Some(false)),
        frag("d", &["P2", "P4"], 1, "C1", None),
        frag("e", &[], 2, "C3", Some(true)),
        frag("f", &["P4"], 2, "C2", Some(false)),
        frag("g", &["P3"], 2, "C1", None),
    ]
}

pub fn run(weights: RankWeights, frags: Vec<SolutionFragment>) -> Vec<(String, f64)> {
    let p = patents();
    let ctx = RankContext {
        patents: &p,
        now: date(2026, 1, 1),
        total_categories: 3,
        weights,
        trl: TrlPolicy::default(),
    };
    rank(frags, &ctx).unwrap().into_iter().map(|f| (f.id, f.rank_score.unwrap())).collect()
}

pub fn scaling_weights_changes_nothing() {
    for base in [(1.0, 1.0, 1.0), (0.5, 0.3, 0.2), (2.0, 0.0, 7.0)] {
        let w = RankWeights::new(base.0, base.1, base.2).unwrap();
        let reference = run(w, fragments());
        for c in [0.1, 3.0, 100.0] {
            let scaled = run(w.scaled(c).unwrap(), fragments());
            assert_eq!(
                reference.iter().map(|r| &r.0).collect::<Vec<_>>(),
                scaled.iter().map(|r| &r.0).collect::<Vec<_>>()
            );
            for (a, b) in reference.iter().zip(&scaled) {
                assert!((a.1 - b.1).abs() < 1e-12, "{a:?} vs {b:?} at c={c}");
            }
        }
    }
}

pub fn equal_scores_break_ties_by_id() {
    let twins = vec![
        frag("zeta", &["P2"], 0, "C1", None),
        frag("alpha", &["P2"], 0, "C1", None),
        frag("mid", &["P2"], 0, "C1", None),
    ];
    let w = RankWeights::new(1.0, 2.0, 3.0).unwrap();
    for perm in [[0, 1, 2], [2, 1, 0], [1, 2, 0]] {
        let input: Vec<SolutionFragment> = perm.iter().map(|i| twins[*i].clone()).collect();
        let out = run(w, input);
        assert_eq!(out[0].1, out[2].1);
        let ids: Vec<&str> = out.iter().map(|r| r.0.as_str()).collect();
        assert_eq!(ids, ["alpha", "mid", "zeta"]);
    }
}

pub fn ranking_criterion() {
    scaling_weights_changes_nothing();
    equal_scores_break_ties_by_id();
}
