pub mod cli;
pub mod grammar;
pub mod kernel;
pub mod lexicon;
pub mod logic;
pub mod model;
pub mod readings;
pub mod syntax;
