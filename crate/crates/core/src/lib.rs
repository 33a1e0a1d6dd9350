//! Quiver mutation, quasi-Cartan companions, triangulated surfaces and
//! relation checks for reflection groups, all in exact arithmetic.

#![allow(clippy::needless_range_loop)]

pub mod companion;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod mutclass;
pub mod quiver;
pub mod surface;
pub mod weyl;

pub use companion::{Ambient, Companion, CompanionBasis, Inertia};
pub use error::{Error, Result};
pub use quiver::{canonical_form, chordless_cycles, CanonicalForm, ChordlessCycle, Quiver};
pub use surface::{build_triangulation, SurfaceSpec, Triangulation};
