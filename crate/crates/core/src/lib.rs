//! Invariants and Picard groups of topologically stable Poisson structures
//! (TSS) on oriented surfaces.
//!
//! The crate is split along the lines of the computation:
//!
//! - [`model`]: the combinatorial description of a TSS and its labeled graph.
//! - [`graph`]: label-preserving isomorphisms, automorphism groups, Morita
//!   and isomorphism decisions.
//! - [`mcg`]: free-group words, the mapping class group catalog and the
//!   homology representation of Dehn twists.
//! - [`picard`]: the Picard and static Picard groups as structured values,
//!   with exact element arithmetic in the semidirect product.
//! - [`groupoid`]: the explicit symplectic groupoid models and their
//!   numerical verification, generic over the floating point type.
//!
//! Exact quantities (periods, volumes, flow times) are [`Rational`]s.
//! Numerical code is generic over [`Real`]; [`GroupoidModel64`] and
//! friends fix it to `f64`.

pub mod catalog;
pub mod graph;
pub mod groupoid;
pub mod mcg;
pub mod model;
pub mod picard;
pub mod rational;

use std::fmt::{Debug, Display};

/// Floating point scalar used by the numerical verification code.
pub trait Real:
    num_traits::Float
    + num_traits::FloatConst
    + num_traits::FromPrimitive
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

pub use rational::Rational;

pub use graph::{AutomorphismGroup, GraphMap};
pub use mcg::{FreeWord, GroupAtom, GroupDescription, SurfaceType};
pub use model::{LabeledGraph, Leaf, Sign, TssSurface, ZeroCurve};
pub use picard::{EqualityVerdict, PicardElement, PicardGroupDescription};

pub type GroupoidModel64 = groupoid::GroupoidModel<f64>;
pub type GroupoidModel32 = groupoid::GroupoidModel<f32>;
pub type DehnTwist64 = groupoid::DehnTwist<f64>;
pub type HomologyMatrix = mcg::IntMatrix<num_bigint::BigInt>;
