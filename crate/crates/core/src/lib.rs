//! Exact rational geometry for Tverberg partitions whose parts pairwise
//! cross.

pub mod applications;
pub mod crossing;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod gen;
pub mod io;
pub mod geometry;
pub mod lp;
pub mod rat;
pub mod svg;
pub mod tverberg;

pub use error::{Error, Result};
pub use geometry::{Point, PointSet};
pub use rat::Rat;
