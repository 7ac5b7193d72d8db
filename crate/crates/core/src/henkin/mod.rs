//! The syntactic side: Henkin expansion, bounded completion, and the term model.

pub mod expand;
pub mod lindenbaum;
pub mod term_model;

pub use expand::{henkin_expand, HenkinExpansion, Witness};
pub use lindenbaum::{lindenbaum_complete, lindenbaum_complete_guided, CompletedTheory, CompletionError};
pub use term_model::{build_term_model, extend_translation, map_term_model, OpTable, PredTable, TermModel, TermModelMapError};
