use scout_core::domain::SustainabilityFlag;
use scout_core::intelligence::SustainabilityLexicon;

pub fn lexicon() -> SustainabilityLexicon {
    SustainabilityLexicon::from_json_str(
        r#"{
          "material_origin": {"positive": ["bio-based"], "negative": ["petroleum-based"]},
          "resource_intensity": {"positive": ["low energy"], "negative": ["energy-intensive"]},
          "waste_generation": {"positive": ["zero waste"], "negative": ["landfill"]},
          "recyclability": {"positive": ["recyclable"], "negative": ["single-use"]}
        }"#,
    )
    .unwrap()
}

pub const POS: [&str; 4] = ["bio-based", "low energy", "zero waste", "recyclable"];
pub const NEG: [&str; 4] = ["petroleum-based", "energy-intensive", "landfill", "single-use"];

pub fn all_positive_evidence() {
    let s = lexicon().score_text("A bio-based pad made at low energy, zero waste, and recyclable.");
    assert_eq!(s.criteria(), [1.0; 4]);
    assert_eq!(s.aggregate, 1.0);
    assert_eq!(s.flag, SustainabilityFlag::Sustainable);
}

pub fn all_negative_evidence() {
    let s = lexicon().score_text("A petroleum-based, energy-intensive single-use pad sent to landfill.");
    assert_eq!(s.criteria(), [0.0; 4]);
    assert_eq!(s.aggregate, 0.0);
    assert_eq!(s.flag, SustainabilityFlag::Traditional);
}

pub fn no_evidence_sits_on_the_boundary() {
    let s = lexicon().score_text("A pad.");
    assert_eq!(s.criteria(), [0.5; 4]);
    assert_eq!(s.aggregate, 0.5);
    assert_eq!(s.flag, SustainabilityFlag::Sustainable);
}

pub fn conflicting_evidence_is_neutral() {
    let s = lexicon().score_text("Recyclable shell, single-use liner.");
    assert_eq!(s.recyclability, 0.5);
}

/// Every combination of per-criterion evidence aggregates to the mean.
pub fn every_combination_aggregates_to_the_mean() {
    let lex = lexicon();
    for code in 0..256u32 {
        let mut parts = Vec::new();
        let mut expected = [0.0; 4];
        for (i, slot) in expected.iter_mut().enumerate() {
            *slot = match (code >> (2 * i)) & 3 {
                0 => {
                    parts.push(POS[i]);
                    1.0
                }
                1 => {
                    parts.push(NEG[i]);
                    0.0
                }
                2 => {
                    parts.push(POS[i]);
                    parts.push(NEG[i]);
                    0.5
                }
                _ => 0.5,
            };
        }
        let s = lex.score_text(&format!("Item: {}.", parts.join(", ")));
        assert_eq!(s.criteria(), expected, "combination {code}");
        let mean = expected.iter().sum::<f64>() / 4.0;
        assert!((s.aggregate - mean).abs() < 1e-12);
        let flag = if mean >= 0.5 { SustainabilityFlag::Sustainable } else { SustainabilityFlag::Traditional };
        assert_eq!(s.flag, flag);
    }
}

pub fn sustainability_criterion() {
    every_combination_aggregates_to_the_mean();
    all_positive_evidence();
    all_negative_evidence();
    no_evidence_sits_on_the_boundary();
    conflicting_evidence_is_neutral();
}
