//! Finite-set model checking and connectivity arithmetic for factorization
//! systems and Blakers-Massey style theorems.

pub mod arrow;
pub mod cli;
pub mod conn;
pub mod dsl;
pub mod factorization;
pub mod finset;
pub mod lab;
pub mod report;
pub mod witness;
