//! Finite-frame evidential reasoning with Dempster-Shafer belief functions.
//!
//! The crate covers:
//!
//! - frames, subsets and the mass/belief/plausibility calculus ([`frame`],
//!   [`mass`]);
//! - evidence fusion and conditioning rules ([`combine`]);
//! - probability transforms and belief-function inference from likelihoods
//!   ([`transform`]);
//! - the geometry of the belief space: credal vertices, conditional
//!   subspaces, binary-frame constructions ([`geometry`]);
//! - families of compatible frames as partition lattices ([`partition`]);
//! - a solver for the restricted total belief problem ([`total`]);
//! - belief-modeling regression: evidential models learned by EM clustering
//!   ([`gmm`], [`bmr`]);
//! - JSON/CSV document formats shared with the command-line front end
//!   ([`io`]).

pub mod bmr;
pub mod combine;
pub mod error;
pub mod frame;
pub mod geometry;
pub mod gmm;
pub mod io;
pub mod limits;
pub mod mass;
pub mod partition;
pub mod total;
pub mod transform;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use frame::{Frame, Subset};
pub use mass::{MassFunction, Mode};
