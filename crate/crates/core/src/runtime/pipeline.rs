use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::RunConfig;
use super::persist::{Artifact, RunDirectory};
use super::state::{Phase, RunState};
use crate::commercial::{
    build_commercial_kb, run_competitor_agent, run_market_agent, run_product_agent, CaptionProvider,
    CompetitorFindings, FixtureWebClient, MarketFindings, ProductFindings, StubCaptioner, WebClient,
};
use crate::domain::{
    CommercialRecord, PatentDocument, ProblemStatement, RunMetadata, SemanticProblem, SolutionFragment,
    StructuredOutput, Taxonomy, TaxonomyConfig,
};
use crate::error::{Error, Result};
use crate::intelligence::{
    categorize_all, cluster_fragments, commercial_fragments, filter_with, fragment_solutions, integrate, rank,
    score_sustainability, structure_outputs, CosineThreshold, CriterionTerms, FragmentClusters, RankContext,
    RelevanceClassifier, SustainabilityLexicon, Validator, CRITERIA,
};
use crate::patent::{
    curate, deduplicate, generate_query_variants, retrieve, tag_entities, DedupReport, FixtureConnector, Gazetteer,
    PatentConnector, QuerySpec,
};
use crate::providers::{Embedder, InterpretContext, LlmProvider, SynonymGraph};

/// Everything a pipeline needs besides its config.
#[derive(Clone)]
pub struct PipelineParts {
    pub llm: Arc<dyn LlmProvider>,
    pub embedder: Arc<dyn Embedder>,
    pub connector: Arc<dyn PatentConnector>,
    pub web: Arc<dyn WebClient>,
    pub captioner: Arc<dyn CaptionProvider>,
    /// `None` uses the cosine threshold from the config.
    pub classifier: Option<Arc<dyn RelevanceClassifier>>,
    pub taxonomy: TaxonomyConfig,
    pub gazetteer: Gazetteer,
    pub lexicon: SustainabilityLexicon,
    pub synonyms: SynonymGraph,
}

/// A lexicon with no terms: every criterion scores 0.5.
pub fn empty_lexicon() -> SustainabilityLexicon {
    SustainabilityLexicon::new(CRITERIA.iter().map(|c| (c.to_string(), CriterionTerms::default())).collect())
        .expect("all criteria present")
}

fn required<'a>(p: &'a Option<std::path::PathBuf>, what: &str) -> Result<&'a Path> {
    p.as_deref().ok_or_else(|| Error::config(format!("no {what} path configured")))
}

impl PipelineParts {
    /// Fixture-backed parts from the config's paths and provider selection.
    pub fn from_config(config: &RunConfig) -> Result<Self> {
        let paths = &config.paths;
        let synonyms = match &paths.synonyms {
            Some(p) => SynonymGraph::load(p)?,
            None => SynonymGraph::default(),
        };
        let connector = FixtureConnector::load(required(&paths.corpus, "corpus")?, synonyms.clone())?;
        Ok(Self {
            llm: config.providers.build_llm()?,
            embedder: config.providers.build_embedder()?,
            connector: Arc::new(connector),
            web: Arc::new(FixtureWebClient::load(required(&paths.web_fixtures, "web fixtures")?)?),
            captioner: Arc::new(StubCaptioner),
            classifier: None,
            taxonomy: TaxonomyConfig::load(required(&paths.taxonomy, "taxonomy")?)?,
            gazetteer: match &paths.gazetteer {
                Some(p) => Gazetteer::load(p)?,
                None => Gazetteer::default(),
            },
            lexicon: match &paths.lexicon {
                Some(p) => SustainabilityLexicon::load(p)?,
                None => empty_lexicon(),
            },
            synonyms,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntakeArtifact {
    pub problem: ProblemStatement,
    pub semantic_problem: SemanticProblem,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawPatentsArtifact {
    pub queries: Vec<QuerySpec>,
    pub documents: Vec<PatentDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommercialArtifact {
    pub market: MarketFindings,
    pub product: ProductFindings,
    pub competitor: CompetitorFindings,
    pub records: Vec<CommercialRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FragmentsArtifact {
    /// Ranked order.
    pub retained: Vec<SolutionFragment>,
    pub discarded: Vec<SolutionFragment>,
}

#[derive(Default)]
struct PatentBranch {
    raw: Option<RawPatentsArtifact>,
    dedup_report: Option<DedupReport>,
    curated: Option<Vec<PatentDocument>>,
    counts: BTreeMap<String, usize>,
    error: Option<Error>,
}

struct CommercialBranch {
    result: Result<CommercialArtifact>,
}

/// Result of one run: the final state plus the output or the error that
/// stopped it.
pub struct RunOutcome {
    pub state: RunState,
    pub result: Result<StructuredOutput>,
}

pub struct Pipeline {
    config: RunConfig,
    parts: PipelineParts,
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1000.0
}

impl Pipeline {
    pub fn new(config: RunConfig, parts: PipelineParts) -> Result<Self> {
        config.validate()?;
        Ok(Self { config, parts })
    }

    pub fn from_config(config: RunConfig) -> Result<Self> {
        let parts = PipelineParts::from_config(&config)?;
        Self::new(config, parts)
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    pub fn parts(&self) -> &PipelineParts {
        &self.parts
    }

    /// Executes every stage, persisting artifacts into `dir` as they become
    /// available. `observer` sees the state after every transition.
    pub fn run(&self, problem: &ProblemStatement, dir: &RunDirectory, observer: &dyn Fn(&RunState)) -> RunOutcome {
        let run_id = dir
            .path()
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let mut state = RunState::new(run_id);
        let result = self.run_stages(problem, dir, &mut state, observer);
        if let Err(e) = &result {
            if !state.phase.is_terminal() {
                let stage = state.phase.as_str();
                let _ = state.fail(stage, e.to_string());
            }
            let _ = dir.write(Artifact::RunState, &state);
            observer(&state);
        }
        RunOutcome { state, result }
    }

    fn transition(
        &self,
        state: &mut RunState,
        next: Phase,
        dir: &RunDirectory,
        observer: &dyn Fn(&RunState),
    ) -> Result<()> {
        state.advance(next)?;
        dir.write(Artifact::RunState, state)?;
        observer(state);
        Ok(())
    }

    fn run_stages(
        &self,
        problem: &ProblemStatement,
        dir: &RunDirectory,
        state: &mut RunState,
        observer: &dyn Fn(&RunState),
    ) -> Result<StructuredOutput> {
        let p = &self.parts;
        let cfg = &self.config;
        let digest = cfg.digest()?;
        dir.write(Artifact::Config, &serde_json::json!({ "config": cfg, "digest": digest }))?;
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();

        // Intake.
        self.transition(state, Phase::Intake, dir, observer)?;
        let t = Instant::now();
        let taxonomy = Taxonomy::build(&p.taxonomy, p.embedder.as_ref())?;
        let ctx = InterpretContext {
            embedder: p.embedder.as_ref(),
            taxonomy: &taxonomy,
        };
        let sp = p.llm.interpret(problem, &ctx)?;
        dir.write(
            Artifact::SemanticProblem,
            &IntakeArtifact {
                problem: problem.clone(),
                semantic_problem: sp.clone(),
            },
        )?;
        counts.insert("keywords".into(), sp.keywords.len());
        state.record_timing(Phase::Intake, ms(t));

        // Patent and commercial branches run side by side and join here.
        self.transition(state, Phase::Patent, dir, observer)?;
        let t = Instant::now();
        let (patent, commercial) = std::thread::scope(|s| {
            let handle = s.spawn(|| self.patent_branch(&sp));
            let commercial = self.commercial_branch(&sp);
            let patent = handle.join().unwrap_or_else(|_| PatentBranch {
                error: Some(Error::PipelineInvariant("patent branch panicked".into())),
                ..Default::default()
            });
            (patent, commercial)
        });
        let branch_ms = ms(t);
        if let Some(raw) = &patent.raw {
            dir.write(Artifact::PatentsRaw, raw)?;
        }
        if let Some(curated) = &patent.curated {
            dir.write(Artifact::PatentsCurated, curated)?;
        }
        if let Some(report) = &patent.dedup_report {
            dir.write(Artifact::DedupReport, report)?;
        }
        counts.extend(patent.counts);
        if let Some(e) = patent.error {
            return Err(e);
        }
        let curated = patent.curated.expect("patent branch without error yields curated documents");
        state.record_timing(Phase::Patent, branch_ms);

        self.transition(state, Phase::Commercial, dir, observer)?;
        let commercial = commercial.result?;
        dir.write(Artifact::CommercialKb, &commercial)?;
        counts.insert("commercial_records".into(), commercial.records.len());
        state.record_timing(Phase::Commercial, branch_ms);

        // Core intelligence.
        self.transition(state, Phase::Intelligence, dir, observer)?;
        let t = Instant::now();
        let kb = commercial.records;
        let patent_frags = fragment_solutions(&curated, p.llm.as_ref(), p.embedder.as_ref(), cfg.min_fragment_len)?;
        let commercial_frags = commercial_fragments(&kb, p.embedder.as_ref(), cfg.min_fragment_len)?;
        counts.insert("fragments_patent".into(), patent_frags.len());
        counts.insert("fragments_commercial".into(), commercial_frags.len());
        let mut integrated = integrate(patent_frags, commercial_frags, &p.synonyms, p.embedder.as_ref())?;
        counts.insert("fragments_integrated".into(), integrated.len());

        let clusters: FragmentClusters = cluster_fragments(&mut integrated, cfg.k_policy, &cfg.kmeans)?;
        dir.write(Artifact::Clusters, &clusters)?;
        counts.insert("clusters".into(), clusters.result.k);

        let default_classifier;
        let classifier: &dyn RelevanceClassifier = match &p.classifier {
            Some(c) => c.as_ref(),
            None => {
                default_classifier = CosineThreshold::new(cfg.thresholds.relevance)?;
                &default_classifier
            }
        };
        let (mut retained, discarded) = filter_with(integrated, &sp, classifier)?;
        counts.insert("fragments_retained".into(), retained.len());
        counts.insert("fragments_discarded".into(), discarded.len());

        categorize_all(&mut retained, &taxonomy, cfg.thresholds.category)?;
        let validator = Validator::new(&kb, cfg.thresholds.validation)?;
        for f in &mut retained {
            f.sustainability = Some(score_sustainability(f, &p.lexicon));
            f.validation = Some(validator.validate(f)?);
        }
        let patents: BTreeMap<String, PatentDocument> =
            curated.into_iter().map(|d| (d.canonical_id.clone(), d)).collect();
        let rank_ctx = RankContext {
            patents: &patents,
            now: cfg.reference_date,
            total_categories: taxonomy.categories().len(),
            weights: cfg.weights,
            trl: cfg.trl,
        };
        let ranked = rank(retained, &rank_ctx)?;
        dir.write(
            Artifact::Fragments,
            &FragmentsArtifact {
                retained: ranked.clone(),
                discarded,
            },
        )?;

        counts.insert("solutions".into(), ranked.len());
        let metadata = RunMetadata {
            seed: cfg.seed,
            config_digest: digest,
            stage_counts: counts,
        };
        let output = structure_outputs(&ranked, &taxonomy, &patents, &kb, metadata)?;
        dir.write(Artifact::StructuredOutput, &output)?;
        state.record_timing(Phase::Intelligence, ms(t));

        self.transition(state, Phase::Complete, dir, observer)?;
        Ok(output)
    }

    fn patent_branch(&self, sp: &SemanticProblem) -> PatentBranch {
        let mut out = PatentBranch::default();
        if let Err(e) = self.patent_stages(sp, &mut out) {
            out.error = Some(e);
        }
        out
    }

    fn patent_stages(&self, sp: &SemanticProblem, out: &mut PatentBranch) -> Result<()> {
        let p = &self.parts;
        let cfg = &self.config;
        let queries = generate_query_variants(sp, cfg.variant_count, p.llm.as_ref(), &p.synonyms)?;
        let documents = retrieve(&queries, p.connector.as_ref())?;
        out.counts.insert("query_variants".into(), queries.len());
        out.counts.insert("patents_raw".into(), documents.len());
        out.raw = Some(RawPatentsArtifact {
            queries,
            documents: documents.clone(),
        });
        let (mut unique, report) = deduplicate(documents, &cfg.dedup);
        out.dedup_report = Some(report);
        out.counts.insert("patents_deduplicated".into(), unique.len());
        for doc in &mut unique {
            doc.entity_tags = tag_entities(doc, &p.gazetteer);
        }
        let curated = curate(unique, sp, cfg.thresholds.retrieval, p.embedder.as_ref())?;
        out.counts.insert("patents_curated".into(), curated.len());
        let empty = curated.is_empty();
        out.curated = Some(curated);
        if empty {
            return Err(Error::EmptyPipeline("no patents survived retrieval, deduplication and curation".into()));
        }
        Ok(())
    }

    fn commercial_branch(&self, sp: &SemanticProblem) -> CommercialBranch {
        let p = &self.parts;
        let result = (|| {
            let market = run_market_agent(sp, p.web.as_ref())?;
            let product = run_product_agent(sp, &market, p.web.as_ref(), p.captioner.as_ref())?;
            let competitor = run_competitor_agent(sp, &market, &product);
            let records = build_commercial_kb(
                &market,
                &product,
                &competitor,
                p.llm.as_ref(),
                p.embedder.as_ref(),
                chrono::Datelike::year(&self.config.reference_date),
            )?;
            Ok(CommercialArtifact {
                market,
                product,
                competitor,
                records,
            })
        })();
        CommercialBranch { result }
    }
}

/// Creates `out_root/run_id` and runs the fixture-backed pipeline described
/// by `config` into it.
pub fn run_pipeline(
    problem: &ProblemStatement,
    config: RunConfig,
    out_root: &Path,
    run_id: &str,
) -> Result<(RunOutcome, RunDirectory)> {
    let pipeline = Pipeline::from_config(config)?;
    let dir = RunDirectory::create(out_root, run_id)?;
    let outcome = pipeline.run(problem, &dir, &|_| {});
    Ok((outcome, dir))
}
