pub mod laurent;
pub mod words;
pub mod modules;
pub mod groups;
pub mod diagrams;
pub mod ext;
pub mod realization;
pub mod fixtures;
pub mod cli;
