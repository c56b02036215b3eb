//! Validated genus parameter.

use std::fmt;

use crate::error::{Error, Result};

/// Genus of the underlying curve family.
///
/// All structured computations in this crate (rank traces, decompositions,
/// isotropy instances) require `g >= 2`; the one-dimensional cases degenerate
/// and are handled by the scalar helpers in [`crate::ranks`], which accept a
/// plain `u32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Genus(u32);

impl Genus {
    /// Validates `g >= 2`.
    pub fn new(g: u32) -> Result<Self> {
        if g < 2 {
            Err(Error::GenusTooSmall(g))
        } else {
            Ok(Genus(g))
        }
    }

    /// The raw genus value.
    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of defining parameters, `2g + 1`.
    ///
    /// This is simultaneously the number of branch values of the double
    /// cover, the number of hyperplanes in the associated system, and the
    /// dimension of the ambient vector space for isotropy counts.
    pub fn param_count(self) -> usize {
        (2 * self.0 + 1) as usize
    }

    /// Dimension of the isotropic subspaces being counted, `g - 1`.
    pub fn isotropy_dim(self) -> usize {
        (self.0 - 1) as usize
    }

    /// Number of flip steps in the wall-crossing chain, `g - 1`.
    pub fn step_count(self) -> u32 {
        self.0 - 1
    }

    /// Number of decomposition stages, `g`.
    pub fn stage_count(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u32> for Genus {
    type Error = Error;

    fn try_from(g: u32) -> Result<Self> {
        Genus::new(g)
    }
}
