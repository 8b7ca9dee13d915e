use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::providers::{Embedder, Vector};

/// On-disk taxonomy layout (TOML):
///
/// ```toml
/// [[category]]
/// label = "Pipeline Leak Prevention"
///
/// [[category.subcategory]]
/// label = "Leak detection systems"
/// seed_phrases = ["acoustic leak detection", "pressure wave monitoring"]
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaxonomyConfig {
    #[serde(default)]
    pub category: Vec<CategoryEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryEntry {
    pub label: String,
    #[serde(default)]
    pub seed_phrases: Vec<String>,
    #[serde(default)]
    pub subcategory: Vec<SubcategoryEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubcategoryEntry {
    pub label: String,
    #[serde(default)]
    pub seed_phrases: Vec<String>,
}

impl TaxonomyConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::config(format!("taxonomy: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("taxonomy {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaxonomyNode {
    pub label: String,
    pub seed_phrases: Vec<String>,
    pub children: Vec<TaxonomyNode>,
    pub centroid: Vector,
}

/// Root → category → subcategory tree with embedded centroids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Taxonomy {
    pub root: TaxonomyNode,
}

impl Taxonomy {
    /// Validates the tree shape and computes every node centroid as the
    /// normalized mean of the embeddings of its label and seed phrases; a
    /// category additionally pools the phrases of its subcategories.
    pub fn build(config: &TaxonomyConfig, embedder: &dyn Embedder) -> Result<Self> {
        if config.category.is_empty() {
            return Err(Error::config("taxonomy has no categories"));
        }
        let mut seen = BTreeSet::new();
        let mut categories = Vec::with_capacity(config.category.len());
        let mut all_vectors = Vec::new();
        for cat in &config.category {
            check_label(&cat.label, &mut seen, "category")?;
            if cat.subcategory.is_empty() {
                return Err(Error::config(format!("category {:?} has no subcategories", cat.label)));
            }
            let mut cat_vectors = phrase_vectors(&cat.label, &cat.seed_phrases, embedder)?;
            let mut sub_seen = BTreeSet::new();
            let mut children = Vec::with_capacity(cat.subcategory.len());
            for sub in &cat.subcategory {
                check_label(&sub.label, &mut sub_seen, "subcategory")?;
                let vectors = phrase_vectors(&sub.label, &sub.seed_phrases, embedder)?;
                children.push(TaxonomyNode {
                    label: sub.label.clone(),
                    seed_phrases: sub.seed_phrases.clone(),
                    children: Vec::new(),
                    centroid: Vector::normalized_mean(&vectors, embedder.dimension())?,
                });
                cat_vectors.extend(vectors);
            }
            categories.push(TaxonomyNode {
                label: cat.label.clone(),
                seed_phrases: cat.seed_phrases.clone(),
                children,
                centroid: Vector::normalized_mean(&cat_vectors, embedder.dimension())?,
            });
            all_vectors.extend(cat_vectors);
        }
        Ok(Self {
            root: TaxonomyNode {
                label: "root".to_string(),
                seed_phrases: Vec::new(),
                children: categories,
                centroid: Vector::normalized_mean(&all_vectors, embedder.dimension())?,
            },
        })
    }

    pub fn categories(&self) -> &[TaxonomyNode] {
        &self.root.children
    }

    /// `(category, subcategory)` pairs in file order.
    pub fn subcategories(&self) -> impl Iterator<Item = (&TaxonomyNode, &TaxonomyNode)> {
        self.root
            .children
            .iter()
            .flat_map(|cat| cat.children.iter().map(move |sub| (cat, sub)))
    }
}

fn check_label(label: &str, seen: &mut BTreeSet<String>, level: &str) -> Result<()> {
    if label.trim().is_empty() {
        return Err(Error::config(format!("empty {level} label")));
    }
    if !seen.insert(label.to_string()) {
        return Err(Error::config(format!("duplicate {level} label {label:?}")));
    }
    Ok(())
}

fn phrase_vectors(label: &str, seeds: &[String], embedder: &dyn Embedder) -> Result<Vec<Vector>> {
    std::iter::once(label)
        .chain(seeds.iter().map(String::as_str))
        .map(|p| embedder.embed(p))
        .collect()
}
