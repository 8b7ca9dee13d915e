use std::collections::BTreeSet;

use scout_core::domain::{DocField, EntityCategory, EntityTag, PatentDocument, Span};
use scout_core::patent::{tag_entities, FixtureConnector, Gazetteer};
use scout_core::providers::SynonymGraph;

use DocField::*;
use EntityCategory::*;

pub fn fixture(name: &str) -> std::path::PathBuf {
    super::fixture_root().join(name)
}

pub fn doc(id: &str) -> PatentDocument {
    let connector = FixtureConnector::load(&fixture("corpus.jsonl"), SynonymGraph::default()).unwrap();
    connector.documents().iter().find(|d| d.raw_id == id).unwrap().clone()
}

pub fn tag(field: DocField, start: usize, end: usize, category: EntityCategory, surface: &str) -> EntityTag {
    EntityTag {
        field,
        span: Span { start, end },
        category,
        surface: surface.into(),
    }
}

pub fn check(id: &str, expected: Vec<EntityTag>) {
    let gazetteer = Gazetteer::load(&fixture("gazetteer.json")).unwrap();
    let d = doc(id);
    let got = tag_entities(&d, &gazetteer);
    assert_eq!(got.iter().cloned().collect::<BTreeSet<_>>(), expected.iter().cloned().collect::<BTreeSet<_>>());
    assert_eq!(got.len(), expected.len());
    for t in &got {
        assert_eq!(t.slice(&d.field_text(t.field)).unwrap().to_lowercase(), t.surface.to_lowercase());
    }
}

pub fn aerogel_patent_prefers_longest_match() {
    check(
        "US10123456B2",
        vec![
            tag(Inventors, 0, 12, Inventor, "Ana Ferreira"),
            tag(Inventors, 14, 23, Inventor, "Rui Costa"),
            tag(Applicants, 0, 14, Applicant, "Active Aerogel"),
            tag(Title, 9, 23, Material, "silica aerogel"),
            tag(Abstract, 11, 25, Material, "silica aerogel"),
            tag(Abstract, 78, 92, Material, "silica aerogel"),
            tag(Claims, 56, 70, Material, "silica aerogel"),
            tag(Claims, 143, 157, Material, "silica aerogel"),
            tag(Claims, 171, 178, Method, "sol-gel"),
            tag(Claims, 308, 315, Material, "aerogel"),
        ],
    );
}

pub fn membrane_patent_tags_systems_and_methods() {
    check(
        "US10987654B1",
        vec![
            tag(Inventors, 0, 12, Inventor, "Sarah O'Neil"),
            tag(Inventors, 14, 24, Inventor, "Tom Becker"),
            tag(Applicants, 0, 21, Applicant, "HydroShield Membranes"),
            tag(Title, 22, 30, System, "membrane"),
            tag(Abstract, 2, 22, Material, "stainless steel mesh"),
            tag(Abstract, 23, 31, System, "membrane"),
            tag(Abstract, 186, 194, System, "membrane"),
            tag(Claims, 31, 39, System, "membrane"),
            tag(Claims, 84, 104, Material, "stainless steel mesh"),
            tag(Claims, 112, 123, Method, "dip coating"),
            tag(Claims, 164, 172, System, "membrane"),
            tag(Claims, 234, 242, System, "membrane"),
            tag(Claims, 251, 259, System, "membrane"),
        ],
    );
}

pub fn no_gazetteer_tags_only_parties() {
    let d = doc("US10123456B2");
    let tags = tag_entities(&d, &Gazetteer::default());
    assert!(tags.iter().all(|t| matches!(t.category, Inventor | Applicant)));
    assert_eq!(tags.len(), 3);
}

pub fn ner_criterion() {
    aerogel_patent_prefers_longest_match();
    membrane_patent_tags_systems_and_methods();
    no_gazetteer_tags_only_parties();
}
