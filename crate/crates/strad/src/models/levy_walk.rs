//! Levy walk: unit-speed flights with i.i.d. Pareto durations on [1, inf),
//! reversing direction with probability 1/2 at every renewal.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::SamplingGrid;
use crate::rng::{pareto, stream, StreamDomain};
use crate::samples::{run_ensemble, GridRecorder, ModelSpec, SampleSet};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LwParams {
    /// Flight-duration exponent, f(t) = p3 t^-(p3+1) on [1, inf); 1 < p3 < 2.
    pub p3: f64,
}

impl LwParams {
    pub fn new(p3: f64) -> Self {
        LwParams { p3 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1.0 < self.p3 && self.p3 < 2.0) {
            return Err(Error::invalid(format!("LW needs 1 < p3 < 2, got {}", self.p3)));
        }
        Ok(())
    }
}

/// Simulates the Levy walk; positions are interpolated ballistically when
/// a grid time falls inside the current flight.
pub fn simulate_levy_walk(
    params: &LwParams,
    grid: &SamplingGrid,
    n_traj: usize,
    master_seed: u64,
) -> Result<SampleSet> {
    params.validate()?;
    let p3 = params.p3;
    run_ensemble(ModelSpec::Lw(*params), grid, n_traj, master_seed, |j| {
        let mut rng = stream(master_seed, StreamDomain::Trajectory, j);
        let mut rec = GridRecorder::new(grid.times());
        let mut t = 0.0_f64;
        let mut x = 0.0_f64;
        let mut dir: f64 = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        while !rec.done() {
            let duration = pareto(&mut rng, 1.0, p3);
            let t_next = t + duration;
            rec.record_linear(t, x, dir, t_next);
            x += dir * duration;
            t = t_next;
            if rng.gen_bool(0.5) {
                dir = -dir;
            }
        }
        rec.finish()
    })
}
