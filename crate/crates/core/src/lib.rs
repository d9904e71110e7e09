//! Exact diagrammatic engine for the two-parameter SO(4)-type categories
//! built from two Temperley–Lieb categories.

pub mod scalars;
pub mod tl;
pub mod model;
pub mod skein;
pub mod fusion;
pub mod braiding;
