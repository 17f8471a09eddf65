//! A workbench for a substructural program logic and its embedding into
//! Kleene algebras with a codomain operator.

pub mod builtins;
pub mod corpus;
pub mod finalg;
pub mod gen;
pub mod harness;
pub mod mine;
pub mod parse;
pub mod print;
pub mod proof;
pub mod rel;
pub mod relmodel;
pub mod search;
pub mod syntax;
pub mod templates;
pub mod translate;
