use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Observation times at which displacements are recorded, strictly
/// increasing with the last entry equal to `t_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingGrid {
    times: Vec<f64>,
}

impl SamplingGrid {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::EmptyInput("sampling grid has no times".into()));
        }
        if times[0] <= 0.0 {
            return Err(Error::invalid("observation times must be positive"));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("observation times must be strictly increasing"));
        }
        if times.iter().any(|t| !t.is_finite()) {
            return Err(Error::invalid("observation times must be finite"));
        }
        Ok(SamplingGrid { times })
    }

    /// Log-spaced times with `per_decade` points per decade from `t_min`
    /// to `t_max` inclusive.
    pub fn log_spaced(t_min: f64, t_max: f64, per_decade: usize) -> Result<Self> {
        if !(t_min > 0.0) || !(t_max > t_min) {
            return Err(Error::invalid(format!(
                "need 0 < t_min < t_max, got t_min={t_min}, t_max={t_max}"
            )));
        }
        if per_decade == 0 {
            return Err(Error::invalid("need at least one point per decade"));
        }
        let decades = (t_max / t_min).log10();
        let steps = (decades * per_decade as f64).floor() as usize;
        let mut times = Vec::with_capacity(steps + 2);
        for j in 0..=steps {
            times.push(t_min * 10f64.powf(j as f64 / per_decade as f64));
        }
        let last = *times.last().unwrap();
        if last < t_max * (1.0 - 1e-12) {
            times.push(t_max);
        } else {
            *times.last_mut().unwrap() = t_max;
        }
        SamplingGrid::new(times)
    }

    /// 16 points per decade from t = 10 up to `t_max`.
    pub fn default_for(t_max: f64) -> Result<Self> {
        SamplingGrid::log_spaced(10.0, t_max, 16)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn t_max(&self) -> f64 {
        *self.times.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_shape() {
        let g = SamplingGrid::default_for(1e5).unwrap();
        assert_eq!(g.times()[0], 10.0);
        assert_eq!(g.t_max(), 1e5);
        // 16 per decade over 4 decades
        assert_eq!(g.len(), 65);
        assert!(g.times().windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn ragged_t_max_appended() {
        let g = SamplingGrid::log_spaced(10.0, 123.0, 16).unwrap();
        assert_eq!(g.t_max(), 123.0);
        assert!(g.times().windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(SamplingGrid::new(vec![]).is_err());
        assert!(SamplingGrid::new(vec![-1.0, 2.0]).is_err());
        assert!(SamplingGrid::new(vec![1.0, 1.0]).is_err());
        assert!(SamplingGrid::log_spaced(10.0, 5.0, 16).is_err());
    }
}
