//! Exact invariant calculus for symplectic 4-manifolds of Kodaira dimension
//! one built from circle bundles over surface mapping tori.
//!
//! The pipeline runs bottom-up:
//!
//! * [`surface`]: the symplectic basis of `H_1(Σ_g)` and Dehn twist words
//!   acting on `H^1` as integral transvections;
//! * [`mapping_torus`]: the Wang sequence of the mapping torus;
//! * [`circle_bundle`]: Gysin `b_1`, the Lefschetz pairing and degeneracy;
//! * [`bundle_manifold`]: the manifolds `B(d,k,g;e)` and their certificates;
//! * [`fiber_sum`]: fiber sums with elliptic surfaces;
//! * [`geography`]: admissible triples and their realizations.
//!
//! Every rank is computed by exact integer elimination ([`linalg`]).

#![no_std]

extern crate alloc;

pub mod bundle_manifold;
pub mod certificate;
pub mod circle_bundle;
pub mod error;
pub mod fiber_sum;
pub mod geography;
pub mod linalg;
pub mod mapping_torus;
pub mod surface;
pub mod verify;

pub use bundle_manifold::{construct, BundleManifold, BundleManifoldSpec};
pub use certificate::{InvariantCertificate, KDotOmega, Kodaira, Nullity};
pub use circle_bundle::{EulerClassSpec, EulerTag, PairingRules};
pub use error::{Error, Result};
pub use fiber_sum::{EllipticSurface, FiberSumSpec};
pub use geography::{realize, realize_null, Construction, NullRealization, Recipe, Triple};
pub use linalg::IntMatrix;
pub use surface::{MonodromyMatrix, TwistWord};
