use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use scout_core::domain::{Provenance, SemanticProblem, SolutionFragment};
use scout_core::intelligence::filter_fragments;
use scout_core::providers::Vector;

pub const DIM: usize = 256;

fn unit(raw: Vec<f64>) -> Vec<f64> {
    let n = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
    raw.into_iter().map(|x| x / n).collect()
}

pub fn problem(embedding: &[f64]) -> SemanticProblem {
    SemanticProblem {
        source_id: "p".into(),
        intent: "intent".into(),
        keywords: vec![],
        functional_requirements: vec![],
        domain_context: String::new(),
        embedding: Vector::new(embedding.to_vec()).unwrap(),
    }
}

/// Fragments spread from near-parallel to the problem down to unrelated and
/// opposed directions.
pub fn fixture(seed: u64, n: usize) -> (Vec<f64>, Vec<SolutionFragment>) {
    let mut rng = StdRng::seed_from_u64(seed);
    let p = unit((0..DIM).map(|_| rng.random_range(-1.0..1.0)).collect());
    let frags = (0..n)
        .map(|i| {
            let noise: Vec<f64> = (0..DIM).map(|_| rng.random_range(-1.0..1.0)).collect();
            let mix = rng.random_range(-0.3..1.0f64);
            let v: Vec<f64> = p.iter().zip(&noise).map(|(a, b)| mix * a * 12.0 + (1.0 - mix.abs()) * b).collect();
            let v = if i % 17 == 0 { vec![0.0; DIM] } else { unit(v) };
            SolutionFragment::new(format!("f{i:03}"), "text", vec![Provenance::patent("P")], Vector::new(v).unwrap())
        })
        .collect();
    (p, frags)
}

pub fn oracle_cos(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}

pub fn retained_ids(frags: &[SolutionFragment], p: &[f64], tau: f64) -> BTreeSet<String> {
    let (kept, dropped) = filter_fragments(frags.to_vec(), &problem(p), tau).unwrap();
    assert_eq!(kept.len() + dropped.len(), frags.len());
    for f in kept.iter().chain(&dropped) {
        let expect = oracle_cos(f.embedding.as_slice(), p);
        assert!((f.relevance.unwrap() - expect).abs() < 1e-12);
    }
    kept.into_iter().map(|f| f.id).collect()
}

/// Retained sets equal the oracle at 0, 0.35 and 0.9 and shrink as the
/// threshold rises.
pub fn filter_criterion() {
    let (p, frags) = fixture(11, 300);
    let mut previous: Option<BTreeSet<String>> = None;
    for tau in [0.0, 0.35, 0.9] {
        let got = retained_ids(&frags, &p, tau);
        let want: BTreeSet<String> = frags
            .iter()
            .filter(|f| oracle_cos(f.embedding.as_slice(), &p) >= tau)
            .map(|f| f.id.clone())
            .collect();
        assert_eq!(got, want, "tau {tau}");
        assert!(!got.is_empty() && got.len() < frags.len(), "tau {tau} should split the fixture");
        if let Some(prev) = &previous {
            assert!(got.is_subset(prev));
        }
        previous = Some(got);
    }
}
