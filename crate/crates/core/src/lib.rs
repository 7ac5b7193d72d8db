//! Henkin term models, canonical finite models, and executable checks of the
//! natural transformation between them.

pub mod ccc;
pub mod enumerate;
pub mod fixtures;
pub mod henkin;
pub mod modelfind;
pub mod nattrans;
pub mod parse;
pub mod pipeline;
pub mod proof;
pub mod syntax;
pub mod translation;
pub mod twocat;
