//! # storyarc
//!
//! A library and CLI for measuring narrative discourse structure at three
//! levels: story arcs (macro), turning points (meso), and arousal/valence
//! trajectories (micro). It ships a benchmark harness for probing language
//! models on arc and turning-point identification, agreement statistics for
//! multi-annotator data, and discourse-aware story generation strategies.
//!
//! The crate is organized around the pipeline stages:
//!
//! - [`corpus`] — loading, sentence indexing, popularity filtering, and
//!   identifier rephrasing of narrative corpora
//! - [`discourse`] — the arc and turning-point taxonomies, shape signatures,
//!   relative-position math, and fuzzy-equivalence rules
//! - [`affect`] — VAD-lexicon scoring and interpolated trajectory curves
//! - [`llm`] — provider-agnostic chat client with caching, a deterministic
//!   mock provider, the prompt registry, and structured-response parsers
//! - [`bench`] — benchmark runners, gold resolution, scoring, and agreement
//!   statistics
//! - [`generation`] — plan-first story generation strategies and judgment
//!   tabulation
//! - [`report`] — SVG/CSV chart emission and run-directory manifests

pub mod affect;
pub mod bench;
pub mod corpus;
pub mod discourse;
pub mod generation;
pub mod llm;
pub mod report;

pub use corpus::{CorpusStore, Narrative, SentenceRecord, Source};
pub use discourse::{ArcType, TurningPoint, TurningPointSet};
