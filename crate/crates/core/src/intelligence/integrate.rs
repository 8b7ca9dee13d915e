use crate::domain::SolutionFragment;
use crate::error::Result;
use crate::providers::{cosine_similarity, Embedder, SynonymGraph, Vector};

/// Cosine at or above which two fragments are the same idea.
pub const MERGE_THRESHOLD: f64 = 0.95;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Connected components of the graph linking every pair with cosine at or
/// above `threshold`. Components are lists of input indices, each sorted,
/// ordered by smallest member.
pub fn merge_components(vectors: &[Vector], threshold: f64) -> Result<Vec<Vec<usize>>> {
    let n = vectors.len();
    let mut uf = UnionFind((0..n).collect());
    for i in 0..n {
        for j in i + 1..n {
            if cosine_similarity(&vectors[i], &vectors[j])? >= threshold {
                uf.union(i, j);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let root = uf.find(i);
        groups.entry(root).or_default().push(i);
    }
    Ok(groups.into_values().collect())
}

/// Consolidates patent and commercial fragments: synonyms applied, texts
/// re-embedded, near-identical fragments merged. A merged fragment keeps the
/// smallest member id, the longest member text (ties to the smaller id) and
/// the sorted union of provenances. Output is ordered by first provenance
/// source id, then fragment id.
pub fn integrate(
    patent_frags: Vec<SolutionFragment>,
    commercial_frags: Vec<SolutionFragment>,
    graph: &SynonymGraph,
    embedder: &dyn Embedder,
) -> Result<Vec<SolutionFragment>> {
    let mut frags: Vec<SolutionFragment> = patent_frags.into_iter().chain(commercial_frags).collect();
    for f in &mut frags {
        f.text = graph.apply(&f.text);
        f.embedding = embedder.embed(&f.text)?;
    }
    // Sorting first makes the result independent of input order.
    frags.sort_by(|a, b| a.id.cmp(&b.id));
    let vectors: Vec<Vector> = frags.iter().map(|f| f.embedding.clone()).collect();
    let components = merge_components(&vectors, MERGE_THRESHOLD)?;

    let mut out = Vec::with_capacity(components.len());
    for comp in components {
        let first = &frags[comp[0]];
        if comp.len() == 1 {
            out.push(first.clone());
            continue;
        }
        let longest = comp
            .iter()
            .map(|&i| &frags[i])
            .max_by(|a, b| a.text.chars().count().cmp(&b.text.chars().count()).then(b.id.cmp(&a.id)))
            .expect("component is non-empty");
        let mut provenance: Vec<_> = comp.iter().flat_map(|&i| frags[i].provenance.iter().cloned()).collect();
        provenance.sort();
        provenance.dedup();
        out.push(SolutionFragment::new(
            first.id.clone(),
            longest.text.clone(),
            provenance,
            longest.embedding.clone(),
        ));
    }
    out.sort_by(|a, b| {
        let key = |f: &SolutionFragment| f.provenance.first().map(|p| p.source_id.clone()).unwrap_or_default();
        key(a).cmp(&key(b)).then_with(|| a.id.cmp(&b.id))
    });
    Ok(out)
}
