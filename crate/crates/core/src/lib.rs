//! Exact computations in the Jacobson–Witt algebras `W(n)` over `GF(p^e)`:
//! standard tori and Borel subalgebras, automorphisms induced from `A(n)`,
//! and conjugacy classification of Borel subalgebras.

pub mod autgroup;
pub mod classify;
pub mod error;
pub mod field;
pub mod json;
pub mod linalg;
pub mod truncpoly;
pub mod standard;
pub mod subalg;
pub mod witt;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use linalg::{Matrix, RowSpace};
pub use truncpoly::{MultiIndex, PolyRing, Substitution, TruncPoly};
pub use witt::{Weight, WittAlgebra, WittElement};
pub use subalg::{MaximalityCertificate, Subalgebra};
pub use standard::{borel, positive_roots, torus, RigidRoot, StandardTorus};
pub use autgroup::AlgebraAut;
pub use classify::{invariant_d, normalize_borel, BorelClass};
