pub mod catalog;
pub mod cli;
pub mod engine;
pub mod expr;
pub mod jet;
pub mod oracle;
