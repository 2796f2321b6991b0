//! Levy-Lorentz gas: unit-speed motion through a quenched line of point
//! scatterers whose gaps are Pareto distributed; each encounter transmits
//! or reflects with probability 1/2.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::SamplingGrid;
use crate::rng::{pareto, stream, StreamDomain};
use crate::samples::{run_ensemble, GridRecorder, ModelSpec, SampleSet};

/// Disorder handling for the scatterer environment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EnvironmentMode {
    /// Every trajectory sees its own quenched environment (joint average
    /// over disorder and scattering randomness). Gaps are generated lazily
    /// outward from the origin and remembered within the trajectory.
    PerTrajectory,
    /// Trajectories share one of `n_environments` pre-generated
    /// environments (trajectory j uses environment j mod n), exposing the
    /// per-environment scatter of the PDF.
    Shared { n_environments: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LlgParams {
    /// Levy index of the gap distribution f(r) = p1 r0^p1 r^-(p1+1), r >= r0.
    pub p1: f64,
    /// Minimal gap.
    pub r0: f64,
    pub environment: EnvironmentMode,
}

impl LlgParams {
    pub fn new(p1: f64) -> Self {
        LlgParams {
            p1,
            r0: 1.0,
            environment: EnvironmentMode::PerTrajectory,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p1 > 0.0) || !self.p1.is_finite() {
            return Err(Error::invalid(format!("LLg needs p1 > 0, got {}", self.p1)));
        }
        if !(self.r0 > 0.0) || !self.r0.is_finite() {
            return Err(Error::invalid(format!("LLg needs r0 > 0, got {}", self.r0)));
        }
        if let EnvironmentMode::Shared { n_environments } = self.environment {
            if n_environments == 0 {
                return Err(Error::invalid("shared environment count must be positive"));
            }
        }
        Ok(())
    }
}

/// Scatterer gaps on both sides of the origin. Gap `j >= 0` on a side is
/// the distance between scatterers `j` and `j+1` counted outward; the
/// starting point is itself scatterer 0 of both sides.
struct Environment {
    right: Vec<f64>,
    left: Vec<f64>,
    p1: f64,
    r0: f64,
}

impl Environment {
    fn new(p1: f64, r0: f64) -> Self {
        Environment {
            right: Vec::new(),
            left: Vec::new(),
            p1,
            r0,
        }
    }

    /// Pre-draws gaps until both sides extend past `horizon`; afterwards
    /// no further RNG is consumed for the environment.
    fn generated_to(mut self, horizon: f64, rng: &mut ChaCha8Rng) -> Self {
        for side in [true, false] {
            let mut reach = 0.0;
            while reach <= horizon {
                let gap = pareto(rng, self.r0, self.p1);
                reach += gap;
                if side {
                    self.right.push(gap);
                } else {
                    self.left.push(gap);
                }
            }
        }
        self
    }

    /// Gap between scatterer `k` and `k+1` (k may be negative), drawing it
    /// on first use.
    fn gap(&mut self, k: i64, rng: &mut ChaCha8Rng) -> f64 {
        let (side, idx) = if k >= 0 {
            (&mut self.right, k as usize)
        } else {
            (&mut self.left, (-k - 1) as usize)
        };
        while side.len() <= idx {
            side.push(pareto(rng, self.r0, self.p1));
        }
        side[idx]
    }
}

/// Simulates the Levy-Lorentz gas. The ensemble starts on a scatterer at
/// the origin with a symmetric initial direction.
pub fn simulate_llg(
    params: &LlgParams,
    grid: &SamplingGrid,
    n_traj: usize,
    master_seed: u64,
) -> Result<SampleSet> {
    params.validate()?;
    let t_max = grid.t_max();
    let shared: Option<Vec<Environment>> = match params.environment {
        EnvironmentMode::PerTrajectory => None,
        EnvironmentMode::Shared { n_environments } => Some(
            (0..n_environments as u64)
                .map(|e| {
                    let mut rng = stream(master_seed, StreamDomain::Environment, e);
                    Environment::new(params.p1, params.r0).generated_to(t_max, &mut rng)
                })
                .collect(),
        ),
    };

    run_ensemble(
        ModelSpec::Llg(*params),
        grid,
        n_traj,
        master_seed,
        |j| {
            let mut rng = stream(master_seed, StreamDomain::Trajectory, j);
            match &shared {
                None => {
                    let mut env = Environment::new(params.p1, params.r0);
                    walk(grid.times(), &mut rng, |k, rng| env.gap(k, rng))
                }
                Some(envs) => {
                    // shared environments are fully generated, so reads are immutable
                    let env = &envs[j as usize % envs.len()];
                    walk(grid.times(), &mut rng, |k, _| {
                        if k >= 0 {
                            env.right[k as usize]
                        } else {
                            env.left[(-k - 1) as usize]
                        }
                    })
                }
            }
        },
    )
}

fn walk<G>(times: &[f64], rng: &mut ChaCha8Rng, mut gap: G) -> Vec<f64>
where
    G: FnMut(i64, &mut ChaCha8Rng) -> f64,
{
    let mut rec = GridRecorder::new(times);
    let mut t = 0.0_f64;
    let mut x = 0.0_f64;
    let mut k: i64 = 0;
    let mut dir: f64 = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    while !rec.done() {
        let step = if dir > 0.0 { gap(k, rng) } else { gap(k - 1, rng) };
        let t_next = t + step;
        rec.record_linear(t, x, dir, t_next);
        x += dir * step;
        t = t_next;
        k += if dir > 0.0 { 1 } else { -1 };
        // transmitted or reflected with probability 1/2
        if rng.gen_bool(0.5) {
            dir = -dir;
        }
    }
    rec.finish()
}
