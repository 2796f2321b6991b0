use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::SamplingGrid;
use crate::models::{FndParams, LgParams, LlgParams, LwParams, PbcParams};

/// Identifies the generator of a displacement ensemble, for provenance
/// headers and round-trip persistence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum ModelSpec {
    Llg(LlgParams),
    Fnd(FndParams),
    Lw(LwParams),
    LorentzGas(LgParams),
    Channel(PbcParams),
    /// Data ingested from outside the toolkit; no speed-bound guarantee.
    External { label: String },
}

impl ModelSpec {
    /// Unit-speed models guarantee |dx| <= t; ingested data does not.
    pub fn unit_speed(&self) -> bool {
        !matches!(self, ModelSpec::External { .. })
    }

    pub fn label(&self) -> String {
        match self {
            ModelSpec::Llg(_) => "LLg".into(),
            ModelSpec::Fnd(_) => "FnD".into(),
            ModelSpec::Lw(_) => "LW".into(),
            ModelSpec::LorentzGas(_) => "LG".into(),
            ModelSpec::Channel(_) => "PBC".into(),
            ModelSpec::External { label } => label.clone(),
        }
    }
}

/// Counters reported by the event-driven simulators.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimDiagnostics {
    /// Trajectories discarded and redrawn after hitting a polygon vertex.
    pub corner_resamples: u64,
}

/// Displacement magnitudes |dx| for `n_traj` trajectories at every
/// observation time, stored time-major: `at_time(i)[j]` is trajectory `j`
/// observed at `times()[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub model: ModelSpec,
    pub grid: SamplingGrid,
    pub master_seed: u64,
    pub n_traj: usize,
    pub diagnostics: SimDiagnostics,
    samples: Vec<Vec<f64>>,
}

impl SampleSet {
    /// Assembles a set from time-major data, checking shape and sign.
    pub fn from_time_major(
        model: ModelSpec,
        grid: SamplingGrid,
        master_seed: u64,
        samples: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::invalid(format!(
                "expected {} time slices, got {}",
                grid.len(),
                samples.len()
            )));
        }
        let n_traj = samples.first().map_or(0, Vec::len);
        if n_traj == 0 {
            return Err(Error::EmptyInput("sample set has no trajectories".into()));
        }
        if samples.iter().any(|s| s.len() != n_traj) {
            return Err(Error::invalid("ragged sample set"));
        }
        if samples
            .iter()
            .any(|s| s.iter().any(|&x| !x.is_finite() || x < 0.0))
        {
            return Err(Error::invalid("displacements must be finite and nonnegative"));
        }
        Ok(SampleSet {
            model,
            grid,
            master_seed,
            n_traj,
            diagnostics: SimDiagnostics::default(),
            samples,
        })
    }

    /// All trajectories observed at time index `i`.
    pub fn at_time(&self, i: usize) -> &[f64] {
        &self.samples[i]
    }

    pub fn times(&self) -> &[f64] {
        self.grid.times()
    }

    /// One trajectory across all observation times.
    pub fn trajectory(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(move |s| s[j])
    }

    /// Largest violation of |dx| <= t over the whole set (negative when
    /// the bound holds everywhere).
    pub fn speed_bound_excess(&self) -> f64 {
        let mut worst = f64::NEG_INFINITY;
        for (i, &t) in self.grid.times().iter().enumerate() {
            for &x in &self.samples[i] {
                worst = worst.max(x - t);
            }
        }
        worst
    }
}

/// Runs `n_traj` independent trajectories in parallel and assembles the
/// time-major sample matrix. `trajectory(j)` must return one |dx| per
/// grid time. Collection is keyed on the trajectory index, so results are
/// identical for any worker count.
pub(crate) fn run_ensemble<F>(
    model: ModelSpec,
    grid: &SamplingGrid,
    n_traj: usize,
    master_seed: u64,
    trajectory: F,
) -> Result<SampleSet>
where
    F: Fn(u64) -> Vec<f64> + Sync,
{
    if n_traj == 0 {
        return Err(Error::invalid("need at least one trajectory"));
    }
    let rows: Vec<Vec<f64>> = (0..n_traj as u64)
        .into_par_iter()
        .map(|j| {
            let row = trajectory(j);
            debug_assert_eq!(row.len(), grid.len());
            row
        })
        .collect();
    // transpose to time-major
    let mut samples = vec![Vec::with_capacity(n_traj); grid.len()];
    for row in &rows {
        for (i, &x) in row.iter().enumerate() {
            samples[i].push(x);
        }
    }
    SampleSet::from_time_major(model, grid.clone(), master_seed, samples)
}

/// Records interpolated positions at grid times while an event-driven
/// trajectory advances. `record_until` emits every grid time in
/// `(t_prev, t_next]` using the caller's linear motion.
pub(crate) struct GridRecorder<'a> {
    times: &'a [f64],
    next: usize,
    out: Vec<f64>,
}

impl<'a> GridRecorder<'a> {
    pub fn new(times: &'a [f64]) -> Self {
        GridRecorder {
            times,
            next: 0,
            out: Vec::with_capacity(times.len()),
        }
    }

    pub fn done(&self) -> bool {
        self.next >= self.times.len()
    }

    /// Records |position| at every pending grid time `<= t_next`, where
    /// position is linear from `(t_prev, x_prev)` with slope `velocity`.
    pub fn record_linear(&mut self, t_prev: f64, x_prev: f64, velocity: f64, t_next: f64) {
        while self.next < self.times.len() && self.times[self.next] <= t_next {
            let tg = self.times[self.next];
            self.out.push((x_prev + velocity * (tg - t_prev)).abs());
            self.next += 1;
        }
    }

    pub fn finish(self) -> Vec<f64> {
        debug_assert_eq!(self.out.len(), self.times.len());
        self.out
    }
}
