//! Exact stability chambers, S-equivalence and moduli descriptors for
//! holomorphic chains on a compact Riemann surface.
//!
//! All parameters are exact rationals. Cone geometry and the dimension
//! formula work for arbitrary ranks; stability, graduations, moduli
//! descriptors and the character correspondence are for chains of line
//! bundles.

pub mod chain;
pub mod chamber;
pub mod error;
pub mod git;
pub mod linalg;
pub mod moduli;
pub mod rational;
pub mod sampling;
pub mod selfcheck;
pub mod stability;

pub use chain::{AlphaVector, ChainType, RankOneChain, SubchainSelector};
pub use chamber::{build_cone, ChamberClass, StabilityCone, WallSet};
pub use error::{Error, Result};
pub use git::{CharacterClass, CharacterTuple};
pub use linalg::{RationalMatrix, RationalVector};
pub use moduli::{CurveContext, ModuliDescriptor, ModuliKind};
pub use rational::Rational;
pub use stability::{GraduationResult, StabilityVerdict};
