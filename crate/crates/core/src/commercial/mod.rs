//! Commercial intelligence: market, product and competitor agents feeding a
//! per-run commercial knowledge base.

mod agents;
mod kb;
mod web;

pub use agents::{
    run_competitor_agent, run_market_agent, run_product_agent, CaptionProvider, CompetitorEntry,
    CompetitorFindings, MarketEntry, MarketFindings, ParseWarning, ProductEntry, ProductFindings, StubCaptioner,
};
pub use kb::build_commercial_kb;
pub use web::{FixtureWebClient, PageKind, WebClient, WebPage};
