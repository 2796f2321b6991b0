//! Fly-and-die dynamics: unit-speed flight until a Pareto-distributed
//! lifetime, then rest forever. The displacement PDF and all moments have
//! closed forms, making this the exact oracle of the toolkit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::SamplingGrid;
use crate::rng::{pareto, stream, StreamDomain};
use crate::samples::{run_ensemble, ModelSpec, SampleSet};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FndParams {
    /// Lifetime exponent: Prob(t_c > t) = (t/t0)^-p2 for t >= t0.
    pub p2: f64,
    /// Smallest admissible lifetime.
    pub t0: f64,
}

impl FndParams {
    pub fn new(p2: f64) -> Self {
        FndParams { p2, t0: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p2 > 0.0) || !self.p2.is_finite() {
            return Err(Error::invalid(format!("FnD needs p2 > 0, got {}", self.p2)));
        }
        if !(self.t0 > 0.0) || !self.t0.is_finite() {
            return Err(Error::invalid(format!("FnD needs t0 > 0, got {}", self.t0)));
        }
        Ok(())
    }

    /// Survival probability of the lifetime, `(t/t0)^-p2`.
    pub fn survival(&self, t: f64) -> f64 {
        if t <= self.t0 {
            1.0
        } else {
            (t / self.t0).powf(-self.p2)
        }
    }
}

/// Density decomposition of the displacement PDF at time `t`: an
/// absolutely continuous part on (t0, t) plus an atom at dx = t carrying
/// the walkers that are still flying.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FndDensity {
    /// Continuous density at the queried dx.
    pub density: f64,
    /// Weight of the atom at dx = t, `(t/t0)^-p2`.
    pub atom: f64,
}

/// Exact displacement PDF of the fly-and-die dynamics.
pub fn fnd_pdf(dx: f64, t: f64, params: &FndParams) -> Result<FndDensity> {
    params.validate()?;
    if !(t > params.t0) {
        return Err(Error::invalid(format!(
            "FnD pdf defined for t > t0, got t={t}, t0={}",
            params.t0
        )));
    }
    if !(dx >= 0.0) {
        return Err(Error::invalid(format!("displacement must be nonnegative, got {dx}")));
    }
    let density = if dx > params.t0 && dx < t {
        params.p2 * params.t0.powf(params.p2) * dx.powf(-params.p2 - 1.0)
    } else {
        0.0
    };
    Ok(FndDensity {
        density,
        atom: params.survival(t),
    })
}

/// Exact moment of the fly-and-die displacement:
/// stopped walkers contribute the integral of the lifetime density, the
/// still-flying atom contributes `t^q (t/t0)^-p2`; at the crossover order
/// `q = p2` the moment is linear in ln t with slope `p2 t0^p2`.
pub fn fnd_moment(q: f64, t: f64, params: &FndParams) -> Result<f64> {
    params.validate()?;
    if !(t > params.t0) {
        return Err(Error::invalid(format!(
            "FnD moment defined for t > t0, got t={t}, t0={}",
            params.t0
        )));
    }
    if !(q >= 0.0) {
        return Err(Error::invalid(format!("moment order must be nonnegative, got {q}")));
    }
    let FndParams { p2, t0 } = *params;
    let kp = p2 * t0.powf(p2);
    if (q - p2).abs() < 1e-12 {
        Ok(kp * (t / t0).ln() + t0.powf(p2) * t.powf(q - p2))
    } else {
        Ok(kp * (t.powf(q - p2) - t0.powf(q - p2)) / (q - p2) + t0.powf(p2) * t.powf(q - p2))
    }
}

/// Samples the fly-and-die ensemble: each trajectory is min(t, lifetime).
pub fn simulate_fnd(
    params: &FndParams,
    grid: &SamplingGrid,
    n_traj: usize,
    master_seed: u64,
) -> Result<SampleSet> {
    params.validate()?;
    run_ensemble(ModelSpec::Fnd(*params), grid, n_traj, master_seed, |j| {
        let mut rng = stream(master_seed, StreamDomain::Trajectory, j);
        let lifetime = pareto(&mut rng, params.t0, params.p2);
        grid.times().iter().map(|&t| t.min(lifetime)).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pdf_mass_is_one() {
        for (p2, t0, t) in [(1.5, 1.0, 100.0), (0.5, 1.0, 1e4), (2.5, 0.5, 30.0)] {
            let params = FndParams { p2, t0 };
            // integrate the continuous part analytically: it is the lifetime law
            let continuous = 1.0 - params.survival(t);
            let atom = fnd_pdf(0.0, t, &params).unwrap().atom;
            assert!(
                (continuous + atom - 1.0).abs() < 1e-12,
                "mass {} at p2={p2}",
                continuous + atom
            );
        }
    }

    #[test]
    fn atom_weight_reference() {
        let params = FndParams::new(1.5);
        let d = fnd_pdf(50.0, 100.0, &params).unwrap();
        assert!((d.atom - 1e-3).abs() < 1e-15);
        assert!((d.density - 1.5 * 50f64.powf(-2.5)).abs() < 1e-15);
        // zero below t0 and above t
        assert_eq!(fnd_pdf(0.5, 100.0, &params).unwrap().density, 0.0);
        assert_eq!(fnd_pdf(150.0, 100.0, &params).unwrap().density, 0.0);
    }

    #[test]
    fn moment_reference_values() {
        let params = FndParams::new(1.5);
        // q=1: 1.5 (t^-0.5 - 1)/(-0.5) + t^-0.5 -> 2.8 at t=100
        let m = fnd_moment(1.0, 100.0, &params).unwrap();
        assert!((m - 2.8).abs() < 1e-12, "first moment {m}");
        // limit value 3.0
        let m = fnd_moment(1.0, 1e12, &params).unwrap();
        assert!((m - 3.0).abs() < 1e-5);
        // q = p2: exactly p2 ln t + 1
        let t = 1e4;
        let m = fnd_moment(1.5, t, &params).unwrap();
        assert!((m - (1.5 * t.ln() + 1.0)).abs() < 1e-9);
        // zeroth moment is 1 for all t
        for t in [2.0, 100.0, 1e6] {
            assert!((fnd_moment(0.0, t, &params).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_t_before_t0() {
        let params = FndParams::new(1.5);
        assert!(fnd_pdf(0.5, 0.5, &params).is_err());
        assert!(fnd_moment(1.0, 1.0, &params).is_err());
    }

    #[test]
    fn sampler_speed_bound_and_determinism() {
        let grid = SamplingGrid::default_for(1e3).unwrap();
        let params = FndParams::new(1.5);
        let a = simulate_fnd(&params, &grid, 500, 3).unwrap();
        let b = simulate_fnd(&params, &grid, 500, 3).unwrap();
        assert!(a.speed_bound_excess() <= 0.0);
        for i in 0..grid.len() {
            assert_eq!(a.at_time(i), b.at_time(i));
        }
        // trajectories are monotone in t (they stop, never move back)
        for j in 0..a.n_traj {
            let traj: Vec<f64> = a.trajectory(j).collect();
            assert!(traj.windows(2).all(|w| w[1] >= w[0]));
        }
    }
}
