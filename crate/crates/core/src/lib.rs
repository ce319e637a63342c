pub mod cli;
pub mod dense;
pub mod finite;
pub mod proof;
pub mod syntax;
