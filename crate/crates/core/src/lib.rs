//! Square space-filling curves from a small grammar of nine bases.
//!
//! A curve is written `seed|codes`, for example `R|111` or `B^270|1221`.
//! The seed is a chain of bases, and each code selects one of the two
//! expansion rules at the next level.
//!
//! ```
//! use sfcurve::curve::{expand, CurveEncoding};
//! use sfcurve::geometry::{curve_path, Coord};
//!
//! let e: CurveEncoding = "R|11".parse().unwrap();
//! assert_eq!(expand(&e).unwrap().len(), 16);
//! let path = curve_path(&e, Coord::new(0, 0)).unwrap();
//! assert_eq!(path.points.len(), 16);
//! ```

pub mod cli;
pub mod curve;
pub mod error;
pub mod geometry;
pub mod grammar;
pub mod render;
pub mod structure;
pub mod transform;

pub use curve::CurveEncoding;
pub use error::{Error, Result};
