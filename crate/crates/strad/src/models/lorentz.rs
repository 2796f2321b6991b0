//! Lorentz gas on a square lattice: a point particle moving at unit speed
//! among circular scatterers of radius 1 placed at spacing L = 2/p4, so
//! that p4 is exactly the ratio of the radius to the critical radius at
//! which the axis corridors close.
//!
//! Propagation is event-driven: lattice cells are traversed along the ray
//! (each disc lies inside its own cell for p4 <= 1, so cells can be tested
//! in entry order) and collisions are specular reflections.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::SamplingGrid;
use crate::rng::{stream, StreamDomain};
use crate::samples::{run_ensemble, ModelSpec, SampleSet};

use super::GEOM_TOL;

/// Which displacement magnitude is recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LgObservable {
    /// Euclidean distance from the starting point.
    Euclidean,
    /// Displacement along one lattice axis.
    AxisX,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LgParams {
    /// Ratio R/R_c of scatterer radius to the critical radius; the
    /// horizon is infinite for p4 < 1.
    pub p4: f64,
    pub observable: LgObservable,
}

impl LgParams {
    pub fn new(p4: f64) -> Self {
        LgParams {
            p4,
            observable: LgObservable::Euclidean,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p4 > 0.0) || !self.p4.is_finite() {
            return Err(Error::invalid(format!("Lorentz gas needs p4 > 0, got {}", self.p4)));
        }
        if self.p4 > 1.0 {
            return Err(Error::invalid(format!(
                "p4 = {} > 1 makes neighboring discs overlap on the square lattice",
                self.p4
            )));
        }
        Ok(())
    }

    /// Lattice spacing, 2/p4 (R = 1).
    pub fn spacing(&self) -> f64 {
        2.0 / self.p4
    }
}

/// First intersection of the ray `p + s v` with any scatterer, searched by
/// traversing lattice cells in entry order up to path length `s_max`.
/// `skip` excludes the disc the particle is currently sitting on.
fn next_collision(
    p: [f64; 2],
    v: [f64; 2],
    spacing: f64,
    s_max: f64,
    skip: Option<(i64, i64)>,
) -> Option<(f64, (i64, i64))> {
    let mut ix = (p[0] / spacing).round() as i64;
    let mut iy = (p[1] / spacing).round() as i64;

    let step_x: i64 = if v[0] > 0.0 { 1 } else { -1 };
    let step_y: i64 = if v[1] > 0.0 { 1 } else { -1 };
    // path length to the next cell boundary and per-cell increment
    let mut s_bound_x = if v[0] != 0.0 {
        ((ix as f64 + 0.5 * step_x as f64) * spacing - p[0]) / v[0]
    } else {
        f64::INFINITY
    };
    let mut s_bound_y = if v[1] != 0.0 {
        ((iy as f64 + 0.5 * step_y as f64) * spacing - p[1]) / v[1]
    } else {
        f64::INFINITY
    };
    let s_delta_x = if v[0] != 0.0 { spacing / v[0].abs() } else { f64::INFINITY };
    let s_delta_y = if v[1] != 0.0 { spacing / v[1].abs() } else { f64::INFINITY };

    loop {
        if skip != Some((ix, iy)) {
            if let Some(s) = ray_disc(p, v, [ix as f64 * spacing, iy as f64 * spacing]) {
                if s <= s_max {
                    return Some((s, (ix, iy)));
                }
                return None;
            }
        }
        let s_next = s_bound_x.min(s_bound_y);
        if s_next > s_max {
            return None;
        }
        if s_bound_x < s_bound_y {
            s_bound_x += s_delta_x;
            ix += step_x;
        } else {
            s_bound_y += s_delta_y;
            iy += step_y;
        }
    }
}

/// Smallest root beyond the tolerance of |p + s v - c|^2 = 1.
fn ray_disc(p: [f64; 2], v: [f64; 2], c: [f64; 2]) -> Option<f64> {
    let dx = p[0] - c[0];
    let dy = p[1] - c[1];
    let a = v[0] * v[0] + v[1] * v[1];
    let b = dx * v[0] + dy * v[1];
    let c0 = dx * dx + dy * dy - 1.0;
    let disc = b * b - a * c0;
    if disc <= 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    // roots of a s^2 + 2 b s + c0; the far root is computed stably first
    let r2 = (-b + sq) / a;
    if r2 <= GEOM_TOL {
        return None;
    }
    let r1 = c0 / (a * r2);
    if r1 > GEOM_TOL {
        Some(r1)
    } else {
        None
    }
}

fn reflect(v: [f64; 2], hit: [f64; 2], center: [f64; 2]) -> [f64; 2] {
    let nx = hit[0] - center[0];
    let ny = hit[1] - center[1];
    let norm2 = nx * nx + ny * ny;
    let dot = (v[0] * nx + v[1] * ny) / norm2;
    [v[0] - 2.0 * dot * nx, v[1] - 2.0 * dot * ny]
}

/// One trajectory from the given state, recording the observable at each
/// grid time. Returns the recorded values and the collision count.
fn fly(
    spacing: f64,
    observable: LgObservable,
    p0: [f64; 2],
    v0: [f64; 2],
    times: &[f64],
) -> (Vec<f64>, u64) {
    let metric = |p: [f64; 2]| -> f64 {
        match observable {
            LgObservable::Euclidean => ((p[0] - p0[0]).powi(2) + (p[1] - p0[1]).powi(2)).sqrt(),
            LgObservable::AxisX => (p[0] - p0[0]).abs(),
        }
    };
    let mut out = Vec::with_capacity(times.len());
    let mut next = 0usize;
    let mut t = 0.0;
    let mut p = p0;
    let mut v = v0;
    let mut skip: Option<(i64, i64)> = None;
    let mut collisions = 0u64;
    let t_end = *times.last().unwrap();
    while next < times.len() {
        let budget = t_end - t;
        let hit = next_collision(p, v, spacing, budget, skip);
        let t_hit = hit.map_or(f64::INFINITY, |(s, _)| t + s);
        while next < times.len() && times[next] <= t_hit {
            let dt = times[next] - t;
            out.push(metric([p[0] + dt * v[0], p[1] + dt * v[1]]));
            next += 1;
        }
        match hit {
            None => break,
            Some((s, cell)) => {
                let center = [cell.0 as f64 * spacing, cell.1 as f64 * spacing];
                p = [p[0] + s * v[0], p[1] + s * v[1]];
                v = reflect(v, p, center);
                t = t_hit;
                skip = Some(cell);
                collisions += 1;
            }
        }
    }
    debug_assert_eq!(out.len(), times.len());
    (out, collisions)
}

fn initial_state(spacing: f64, rng: &mut ChaCha8Rng) -> ([f64; 2], [f64; 2]) {
    // uniform over the free part of the central cell, kept a hair off the
    // scatterer surface so the first flight is well defined
    let margin2 = (1.0 + 1e-9) * (1.0 + 1e-9);
    let p = loop {
        let x = (rng.gen::<f64>() - 0.5) * spacing;
        let y = (rng.gen::<f64>() - 0.5) * spacing;
        if x * x + y * y > margin2 {
            break [x, y];
        }
    };
    let theta = 2.0 * std::f64::consts::PI * rng.gen::<f64>();
    (p, [theta.cos(), theta.sin()])
}

/// Simulates the Lorentz gas ensemble with uniform initial conditions in
/// the free region of the cell at the origin and isotropic unit velocities.
pub fn simulate_lorentz_gas(
    params: &LgParams,
    grid: &SamplingGrid,
    n_traj: usize,
    master_seed: u64,
) -> Result<SampleSet> {
    params.validate()?;
    let spacing = params.spacing();
    run_ensemble(
        ModelSpec::LorentzGas(*params),
        grid,
        n_traj,
        master_seed,
        |j| {
            let mut rng = stream(master_seed, StreamDomain::Trajectory, j);
            let (p0, v0) = initial_state(spacing, &mut rng);
            fly(spacing, params.observable, p0, v0, grid.times()).0
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPACING: f64 = 2.0 / 0.3; // p4 = 0.3

    #[test]
    fn corridor_ray_never_collides() {
        // along the corridor midline the nearest surface is L/2 - 1 away
        let times = vec![10.0, 100.0, 1000.0];
        let (out, collisions) = fly(
            SPACING,
            LgObservable::Euclidean,
            [0.0, SPACING / 2.0],
            [1.0, 0.0],
            &times,
        );
        assert_eq!(collisions, 0);
        for (x, t) in out.iter().zip(&times) {
            assert!((x - t).abs() < 1e-9 * t);
        }
    }

    #[test]
    fn head_on_free_path_and_reversal() {
        let d = 3.25;
        let p = [1.0 + d, 0.0];
        let v = [-1.0, 0.0];
        let (s, cell) = next_collision(p, v, SPACING, 1e9, None).unwrap();
        assert_eq!(cell, (0, 0));
        assert!((s - d).abs() < 1e-12);
        let hit = [p[0] + s * v[0], p[1] + s * v[1]];
        let v2 = reflect(v, hit, [0.0, 0.0]);
        assert!((v2[0] - 1.0).abs() < 1e-12 && v2[1].abs() < 1e-12);
    }

    #[test]
    fn single_collision_is_time_reversible() {
        let p = [2.0, 1.3];
        let ang: f64 = 3.7;
        let v = [ang.cos(), ang.sin()];
        let (s, cell) = next_collision(p, v, SPACING, 1e9, None).unwrap();
        let hit = [p[0] + s * v[0], p[1] + s * v[1]];
        let center = [cell.0 as f64 * SPACING, cell.1 as f64 * SPACING];
        let v2 = reflect(v, hit, center);
        // run the mirrored ray back through the same collision
        let back = [-v2[0], -v2[1]];
        let start = [hit[0] + s * v2[0], hit[1] + s * v2[1]];
        let (s_back, cell_back) = next_collision(start, back, SPACING, 1e9, None).unwrap();
        assert_eq!(cell_back, cell);
        assert!((s_back - s).abs() < 1e-12);
        let hit_back = [start[0] + s_back * back[0], start[1] + s_back * back[1]];
        assert!((hit_back[0] - hit[0]).abs() < 1e-12 && (hit_back[1] - hit[1]).abs() < 1e-12);
        let v_back = reflect(back, hit_back, center);
        assert!((v_back[0] + v[0]).abs() < 1e-12 && (v_back[1] + v[1]).abs() < 1e-12);
    }

    #[test]
    fn speed_is_conserved_over_many_collisions() {
        let mut p = [1.7, 0.4];
        let ang: f64 = 0.9;
        let mut v = [ang.cos(), ang.sin()];
        let mut skip = None;
        let mut collisions = 0u64;
        while collisions < 1_000_000 {
            match next_collision(p, v, SPACING, f64::INFINITY, skip) {
                Some((s, cell)) => {
                    p = [p[0] + s * v[0], p[1] + s * v[1]];
                    let center = [cell.0 as f64 * SPACING, cell.1 as f64 * SPACING];
                    v = reflect(v, p, center);
                    skip = Some(cell);
                    collisions += 1;
                }
                None => unreachable!("infinite budget"),
            }
        }
        let speed = (v[0] * v[0] + v[1] * v[1]).sqrt();
        assert!((speed - 1.0).abs() < 1e-9, "speed drifted to {speed}");
    }

    #[test]
    fn ensemble_speed_bound_and_determinism() {
        let grid = SamplingGrid::new(vec![5.0, 20.0, 80.0]).unwrap();
        let params = LgParams::new(0.3);
        let a = simulate_lorentz_gas(&params, &grid, 100, 13).unwrap();
        let b = simulate_lorentz_gas(&params, &grid, 100, 13).unwrap();
        assert!(a.speed_bound_excess() <= 1e-12);
        for i in 0..grid.len() {
            assert_eq!(a.at_time(i), b.at_time(i));
        }
    }

    #[test]
    fn rejects_overlapping_discs() {
        let grid = SamplingGrid::new(vec![10.0]).unwrap();
        assert!(simulate_lorentz_gas(&LgParams::new(1.2), &grid, 10, 1).is_err());
        assert!(simulate_lorentz_gas(&LgParams::new(0.0), &grid, 10, 1).is_err());
    }
}
