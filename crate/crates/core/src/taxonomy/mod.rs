//! The eighteen triple semantics, assumption classifiers, corpora, the
//! theorem survey and counterexample search.

pub mod assumptions;
pub mod corpus;
pub mod counterexample;
mod instance;
mod logic;
pub mod theorems;
mod verdict;

pub use assumptions::{classify, classify_global, AssumptionSet, Flag};
pub use corpus::{Corpus, CorpusItem, CorpusSpec, GenerateConfig, Mode, DEFAULT_SEED};
pub use counterexample::{
    catalog_claims, catalog_logics, find_counterexample, ClaimId, SearchOutcome, DEFAULT_BUDGET,
};
pub use instance::{holds, Instance};
pub use logic::{
    Bound, LogicId, BRIDGES, DISTINCT_BASE, GALOIS, IMPLICATIONS, IN_BETWEEN_IMPLICATIONS,
};
pub use theorems::{check_theorem, check_theorems, CheckMode, TheoremId};
pub use verdict::{Stats, Verdict, Witness};
