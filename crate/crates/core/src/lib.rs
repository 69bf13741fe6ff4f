//! Exact-arithmetic engine for refined (equivariantly deformed)
//! Gromov-Witten generating series of local Calabi-Yau geometries.
//!
//! The crate computes the refined potentials of local P^2 by direct
//! integration of the modular anomaly recursion, produces the boundary
//! frames (large radius, orbifold, conifold) needed to fix the
//! holomorphic ambiguity, extracts integer refined BPS invariants, and
//! cross-validates everything against closed forms for local curve
//! geometries, eta/Eisenstein q-expansions, and stable-graph sums.

pub mod conifold;
pub mod epslaurent;
pub mod mirror;
pub mod modular;
pub mod numeric;
pub mod rational;
pub mod ringxf;
pub mod series;

pub use epslaurent::{Eps3Laurent, EpsLaurent};
pub use rational::Rat;
pub use conifold::ConifoldFrame;
pub use modular::ModularData;
pub use mirror::{LargeRadiusFrame, OrbifoldFrame};
pub use ringxf::RingXF;
pub use series::{RatSeries, Series, SeriesError, Var};
