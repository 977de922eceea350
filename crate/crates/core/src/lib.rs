//! Clinical event, temporal expression and temporal link extraction.

pub mod corpus;
pub mod preproc;
pub mod crf;
pub mod eval;
pub mod events;
pub mod pipeline;
pub mod string_sim;
pub mod tern;
pub mod tlink;
