//! Translation of monadic first-order logic over finite linear orders with
//! interval-preserving relations into star-free PDL and three-variable
//! first-order logic, with a brute-force finite-model oracle.

pub mod cli;
pub mod harness;
pub mod parser;
pub mod semantics;
pub mod structures;
pub mod syntax;
pub mod transpiler;
