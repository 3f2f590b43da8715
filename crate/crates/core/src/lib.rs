pub mod geometry;
pub mod operad_core;
pub mod perm;
pub mod trees;
pub mod schinf;
pub mod algebra_lab;
pub mod suites;
pub mod render;
