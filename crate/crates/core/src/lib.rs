// Matrix code indexes several arrays in step; index loops read best there.
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod constructions;
pub mod derivations;
pub mod dualgraph;
pub mod fpgroups;
pub mod grading;
pub mod linalg;
pub mod polyring;
pub mod smithhom;
