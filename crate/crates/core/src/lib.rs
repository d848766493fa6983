//! Low-crossing edges in complete simple topological graphs.
//!
//! A drawing is rooted at a vertex on the unbounded cell, its neighbours are
//! labeled counterclockwise, and the triangles through the root define a set
//! system with small dual shatter function. A low-stabbing matching over that
//! system, filtered by in-degree, yields an edge whose crossing count is
//! verified against `c4 * n^(7/4)` and against a brute-force oracle.

pub mod bitset;
pub mod constants;
pub mod drawing;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod packing;
pub mod powers;
pub mod report;
pub mod set_system;
pub mod short_edge;

pub use constants::Constants;
pub use drawing::{Drawing, RotationLabeling};
pub use error::{Error, Result, Stage};
pub use packing::{key_matching, verify_matching, LowStabMatching, MatchConfig};
pub use set_system::{MemberKey, SetFamily, StabDistance};
pub use short_edge::{select_short_edge, PipelineConfig, PipelineReport};
