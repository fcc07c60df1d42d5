//! Exact computations around fully commutative Weyl group elements and
//! spherical nilpotent orbits.
//!
//! The crate builds finite root systems, Weyl and affine Weyl group elements
//! through their inversion sets, Chevalley bases with integral structure
//! constants, and decides sphericality of subspaces spanned by root vectors
//! via the nilpotency of `ad(x)^4`.

pub mod affine;
pub mod atlas;
pub mod cartan;
pub mod chevalley;
pub mod error;
pub mod ideals;
pub mod linalg;
pub mod model;
pub mod report;
pub mod roots;
pub mod rootset;
pub mod spherical;
pub mod weyl;

pub use cartan::{CartanType, Family};
pub use error::{Error, Result};
pub use roots::{Rank2Kind, Root, RootSystem};
pub use rootset::PosRootSet;
pub use weyl::WeylElement;
