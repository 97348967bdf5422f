//! Negative results and illustrative constructions: counterexample searches
//! for implications that fail without their side conditions, a model whose
//! ignorability holds against its graph, and contextual independence.

mod demos;
mod search;

pub use demos::{
    build_fat_hand_model, contextual_demo, ContextualKind, ContextualParams, ContextualReport, FatHand, FatHandParams,
};
pub use search::{
    search_eq13_counterexample, search_vi_counterexample, Eq13Counterexample, SearchConfig, SearchOutcome,
    ViCounterexample, CERTIFY_MARGIN,
};
