pub mod coloring;
pub mod configurations;
pub mod corpus;
pub mod correspondence;
pub mod discharging;
pub mod format;
pub mod harness;
pub mod lists;
pub mod plane;
pub mod solver;
pub mod structure;
pub mod transforms;
pub mod union_find;
