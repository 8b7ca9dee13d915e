use crate::domain::{CategoryPath, SolutionFragment, Taxonomy};
use crate::error::{Error, Result};
use crate::providers::cosine_similarity;

pub const DEFAULT_CATEGORY_THRESHOLD: f64 = 0.2;

/// Nearest subcategory centroid by cosine, earlier subcategories winning
/// ties; below `tau_cat` the fragment is uncategorized.
pub fn categorize(frag: &SolutionFragment, taxonomy: &Taxonomy, tau_cat: f64) -> Result<CategoryPath> {
    let mut best: Option<(f64, &str, &str)> = None;
    for (cat, sub) in taxonomy.subcategories() {
        let s = cosine_similarity(&frag.embedding, &sub.centroid)?;
        if best.is_none_or(|(b, _, _)| s > b) {
            best = Some((s, &cat.label, &sub.label));
        }
    }
    let (score, category, subcategory) =
        best.ok_or_else(|| Error::config("taxonomy has no subcategories"))?;
    if score < tau_cat {
        return Ok(CategoryPath::uncategorized());
    }
    Ok(CategoryPath {
        category: category.to_string(),
        subcategory: subcategory.to_string(),
    })
}

/// Categorizes every fragment in place.
pub fn categorize_all(frags: &mut [SolutionFragment], taxonomy: &Taxonomy, tau_cat: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&tau_cat) {
        return Err(Error::invalid(format!("category threshold {tau_cat} outside [0, 1]")));
    }
    for f in frags {
        f.category_path = Some(categorize(f, taxonomy, tau_cat)?);
    }
    Ok(())
}
