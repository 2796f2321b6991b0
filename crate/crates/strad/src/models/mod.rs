//! Displacement-ensemble generators for the five model families.
//!
//! All models move at unit speed, so every recorded |dx| obeys |dx| <= t.
//! Each trajectory owns a dedicated RNG stream derived from
//! `(master_seed, trajectory index)`; ensembles are reproducible
//! bit-for-bit for any worker count.

mod channel;
mod fnd;
mod levy_walk;
mod llg;
mod lorentz;

pub use channel::{simulate_polygonal_channel, CornerRule, PbcParams};
pub use fnd::{fnd_moment, fnd_pdf, simulate_fnd, FndDensity, FndParams};
pub use levy_walk::{simulate_levy_walk, LwParams};
pub use llg::{simulate_llg, EnvironmentMode, LlgParams};
pub use lorentz::{simulate_lorentz_gas, LgObservable, LgParams};

/// Geometric tolerance for the event-driven billiards: intersection roots
/// closer than this are treated as grazing the current surface and a
/// collision must advance time by more than this.
pub(crate) const GEOM_TOL: f64 = 1e-12;
