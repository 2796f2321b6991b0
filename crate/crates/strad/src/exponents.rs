//! Exponent algebra for biscaling displacement distributions.
//!
//! A process with a self-similar bulk (scale `t^xi`), a ballistic-type
//! cutoff (scale `t^zeta`) and an algebraic intermediate tail of index
//! `-(alpha+1)` has a piecewise-linear moment spectrum: the `q`th moment
//! grows like `t^(xi q)` below the crossover order `alpha` and like
//! `t^(zeta q - beta)` above it, with `beta = alpha (zeta - xi)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for algebraic identities between exponents.
pub const EXPONENT_TOL: f64 = 1e-12;

/// The exponent triple (xi, zeta, alpha) plus the derived cutoff-amplitude
/// exponent beta and the matching-point parameters (iota, c).
///
/// `iota` and `c` only place the bulk/tail split at `dx = c t^iota`; results
/// do not depend on them as long as `xi < iota < zeta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentSet {
    /// Bulk scaling exponent.
    pub xi: f64,
    /// Cutoff (tail-position) scaling exponent.
    pub zeta: f64,
    /// Crossover moment order; the tail decays as `x^-(alpha+1)`.
    pub alpha: f64,
    /// Cutoff-amplitude exponent, `alpha * (zeta - xi)`.
    pub beta: f64,
    /// Matching exponent, `xi < iota < zeta`.
    pub iota: f64,
    /// Matching amplitude, `> 0`.
    pub c: f64,
}

impl ExponentSet {
    /// Builds a set from the free triple, deriving `beta` from hyperscaling
    /// and defaulting `iota = (xi + zeta) / 2`, `c = 1`.
    pub fn new(xi: f64, zeta: f64, alpha: f64) -> Result<Self> {
        let beta = beta_from_hyperscaling(alpha, xi, zeta)?;
        ExponentSet {
            xi,
            zeta,
            alpha,
            beta,
            iota: 0.5 * (xi + zeta),
            c: 1.0,
        }
        .validated()
    }

    /// Builds a set with every field explicit; `beta` must satisfy
    /// hyperscaling within [`EXPONENT_TOL`].
    pub fn with_all(xi: f64, zeta: f64, alpha: f64, beta: f64, iota: f64, c: f64) -> Result<Self> {
        ExponentSet {
            xi,
            zeta,
            alpha,
            beta,
            iota,
            c,
        }
        .validated()
    }

    /// Returns the set unchanged if all invariants hold.
    pub fn validated(self) -> Result<Self> {
        let ExponentSet {
            xi,
            zeta,
            alpha,
            beta,
            iota,
            c,
        } = self;
        for (name, v) in [
            ("xi", xi),
            ("zeta", zeta),
            ("alpha", alpha),
            ("beta", beta),
            ("iota", iota),
            ("c", c),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidExponents(format!("{name} is not finite")));
            }
        }
        if !(0.0 <= xi && xi < zeta) {
            return Err(Error::InvalidExponents(format!(
                "need 0 <= xi < zeta, got xi={xi}, zeta={zeta}"
            )));
        }
        if !(xi < iota && iota < zeta) {
            return Err(Error::InvalidExponents(format!(
                "need xi < iota < zeta, got xi={xi}, iota={iota}, zeta={zeta}"
            )));
        }
        if alpha <= 0.0 {
            return Err(Error::InvalidExponents(format!("need alpha > 0, got {alpha}")));
        }
        if c <= 0.0 {
            return Err(Error::InvalidExponents(format!("need c > 0, got {c}")));
        }
        let expected = alpha * (zeta - xi);
        if (beta - expected).abs() > EXPONENT_TOL {
            return Err(Error::InvalidExponents(format!(
                "beta={beta} violates beta = alpha (zeta - xi) = {expected}"
            )));
        }
        Ok(self)
    }

    /// Moment-spectrum value `q nu_q / 2`: slope `xi` below the crossover,
    /// slope `zeta` above, continuous at `q = alpha`.
    pub fn spectrum_exponent(&self, q: f64) -> Result<f64> {
        if !(q > 0.0) {
            return Err(Error::invalid(format!("moment order must be positive, got {q}")));
        }
        Ok(if q <= self.alpha {
            self.xi * q
        } else {
            self.zeta * q - self.alpha * (self.zeta - self.xi)
        })
    }

    /// `nu_q`, i.e. `2/q` times the spectrum value.
    pub fn nu(&self, q: f64) -> Result<f64> {
        Ok(2.0 * self.spectrum_exponent(q)? / q)
    }

    /// Position of the bulk/tail split at time `t`.
    pub fn matching_point(&self, t: f64) -> f64 {
        self.c * t.powf(self.iota)
    }
}

/// `beta = alpha (zeta - xi)`.
pub fn beta_from_hyperscaling(alpha: f64, xi: f64, zeta: f64) -> Result<f64> {
    if !(0.0 <= xi && xi < zeta) {
        return Err(Error::InvalidExponents(format!(
            "need 0 <= xi < zeta, got xi={xi}, zeta={zeta}"
        )));
    }
    if alpha <= 0.0 {
        return Err(Error::InvalidExponents(format!("need alpha > 0, got {alpha}")));
    }
    Ok(alpha * (zeta - xi))
}

/// Universal collapse coordinate `(zeta - nu_q/2) / (zeta - xi)`.
///
/// With the piecewise-linear spectrum this equals `min(alpha/q, 1)` for
/// every moment order.
pub fn universal_collapse_point(q: f64, nu_q: f64, xi: f64, zeta: f64) -> Result<f64> {
    if zeta <= xi {
        return Err(Error::InvalidExponents(format!(
            "collapse undefined for zeta <= xi (zeta={zeta}, xi={xi})"
        )));
    }
    if !(q > 0.0) {
        return Err(Error::invalid(format!("moment order must be positive, got {q}")));
    }
    Ok((zeta - 0.5 * nu_q) / (zeta - xi))
}

/// The shared intermediate power law `alpha k x^-(alpha+1)` with its
/// validity bounds: the bulk branch obeys it for `z > z_c`, the tail
/// branch for `v < v_c`, with the same `(alpha, k)` on both.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingLaw {
    pub alpha: f64,
    pub k: f64,
    pub z_c: f64,
    pub v_c: f64,
}

impl ScalingLaw {
    pub fn new(alpha: f64, k: f64, z_c: f64, v_c: f64) -> Result<Self> {
        if alpha <= 0.0 || k <= 0.0 {
            return Err(Error::invalid(format!(
                "scaling law needs alpha > 0 and k > 0, got alpha={alpha}, k={k}"
            )));
        }
        if z_c <= 0.0 || v_c <= 0.0 {
            return Err(Error::invalid(format!(
                "validity bounds must be positive, got z_c={z_c}, v_c={v_c}"
            )));
        }
        Ok(ScalingLaw { alpha, k, z_c, v_c })
    }

    /// `alpha k x^-(alpha+1)`.
    pub fn evaluate(&self, x: f64) -> f64 {
        self.alpha * self.k * x.powf(-self.alpha - 1.0)
    }
}

/// One point of a moment spectrum: order, fitted or theoretical
/// `q nu_q / 2`, and its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPoint {
    pub q: f64,
    pub exponent: f64,
    pub err: f64,
}

/// Model families with tabulated exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    /// Levy-Lorentz gas: ballistic motion among quenched Levy-spaced scatterers.
    Llg,
    /// Fly-and-die: unit-speed flight until a power-law distributed lifetime.
    Fnd,
    /// Slicer map; shares the fly-and-die coarse-grained exponents.
    Sm,
    /// Levy walk with i.i.d. power-law flight durations.
    Lw,
    /// Lorentz gas, infinite horizon (open corridors).
    Lgi,
    /// Lorentz gas, finite horizon (bounded free path).
    Lgf,
    /// Polygonal billiard channel.
    Pbc,
}

impl ModelKind {
    pub fn label(&self) -> &'static str {
        match self {
            ModelKind::Llg => "LLg",
            ModelKind::Fnd => "FnD",
            ModelKind::Sm => "SM",
            ModelKind::Lw => "LW",
            ModelKind::Lgi => "LGi",
            ModelKind::Lgf => "LGf",
            ModelKind::Pbc => "PBC",
        }
    }
}

/// Tabulated exponents, or the marker for tails that decay faster than
/// every power law (no crossover moment exists).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TheoryExponents {
    PowerLawTail(ExponentSet),
    /// Faster-than-power-law tail: only weak anomalous (or normal)
    /// diffusion with bulk exponent `xi`; never represented by a large
    /// float in place of alpha.
    NoPowerLawTail { xi: f64, zeta: f64 },
}

/// Tabulated exponents for one model at one parameter value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelTheory {
    pub model: ModelKind,
    pub parameter: f64,
    pub exponents: TheoryExponents,
    /// Set when the tabulated value is disputed or approximate.
    pub note: Option<String>,
}

/// Catalog lookup of the exponent triple for a model family.
///
/// Polygonal channels take the horizon parameter `p5`; a finite-horizon
/// channel is tabulated at `alpha ~ 3` from moment fits while direct PDF
/// matching yields `~ 2.2`, so that entry carries a note instead of a
/// silent choice.
pub fn theory_exponents(model: ModelKind, parameter: f64) -> Result<ModelTheory> {
    let p = parameter;
    let theory = |xi: f64, zeta: f64, alpha: f64| -> Result<TheoryExponents> {
        Ok(TheoryExponents::PowerLawTail(ExponentSet::new(xi, zeta, alpha)?))
    };
    let (exponents, note) = match model {
        ModelKind::Llg => {
            if p <= 0.0 {
                return Err(Error::invalid(format!("LLg needs p1 > 0, got {p}")));
            }
            if p < 1.0 {
                (theory(1.0 / (1.0 + p), 1.0, p)?, None)
            } else {
                (theory(0.5, 1.0, 2.0 * p - 1.0)?, None)
            }
        }
        ModelKind::Fnd | ModelKind::Sm => {
            if p <= 0.0 {
                return Err(Error::invalid(format!("FnD/SM need p2 > 0, got {p}")));
            }
            (theory(0.0, 1.0, p)?, None)
        }
        ModelKind::Lw => {
            if !(1.0 < p && p < 2.0) {
                return Err(Error::invalid(format!("LW needs 1 < p3 < 2, got {p}")));
            }
            (theory(1.0 / p, 1.0, p)?, None)
        }
        ModelKind::Lgi => {
            if !(0.0 < p && p < 1.0) {
                return Err(Error::invalid(format!(
                    "infinite-horizon Lorentz gas needs 0 < p4 < 1, got {p}"
                )));
            }
            (theory(0.5, 1.0, 2.0)?, None)
        }
        ModelKind::Lgf => {
            if p <= 1.0 {
                return Err(Error::invalid(format!(
                    "finite-horizon Lorentz gas needs p4 > 1, got {p}"
                )));
            }
            (TheoryExponents::NoPowerLawTail { xi: 0.5, zeta: 1.0 }, None)
        }
        ModelKind::Pbc => {
            if p <= 0.0 {
                return Err(Error::invalid(format!("PBC needs p5 > 0, got {p}")));
            }
            if p > 1.0 {
                (
                    theory(0.5, 1.0, 2.0)?,
                    Some("approximate values for an infinite-horizon channel".to_string()),
                )
            } else {
                (
                    theory(0.5, 1.0, 3.0)?,
                    Some(
                        "tabulated alpha ~ 3 stems from moment fits; direct PDF matching \
                         of the same dynamics yields alpha ~ 2.2 (the moment fits are \
                         biased by slow crossovers)"
                            .to_string(),
                    ),
                )
            }
        }
    };
    Ok(ModelTheory {
        model,
        parameter,
        exponents,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn validates_reference_sets() {
        let e = ExponentSet::with_all(2.0 / 3.0, 1.0, 0.5, 0.5 / 3.0, 0.8, 1.0).unwrap();
        assert!(close(e.beta, 1.0 / 6.0, EXPONENT_TOL));

        let p2 = 1.5;
        let e = ExponentSet::new(0.0, 1.0, p2).unwrap();
        assert!(close(e.beta, p2, EXPONENT_TOL));
    }

    #[test]
    fn rejects_bad_ordering() {
        assert!(ExponentSet::new(0.7, 0.5, 1.0).is_err());
        assert!(ExponentSet::with_all(0.2, 1.0, 1.0, 0.8, 0.1, 1.0).is_err());
        assert!(ExponentSet::new(0.2, 1.0, -1.0).is_err());
        assert!(ExponentSet::with_all(0.2, 1.0, 1.0, 0.8, 0.5, -1.0).is_err());
        // beta inconsistent with hyperscaling
        assert!(ExponentSet::with_all(0.2, 1.0, 1.0, 0.7, 0.5, 1.0).is_err());
    }

    #[test]
    fn spectrum_reference_values() {
        let e = ExponentSet::new(2.0 / 3.0, 1.0, 0.5).unwrap();
        assert!(close(e.spectrum_exponent(0.2).unwrap(), 2.0 / 15.0, 1e-12));
        assert!(close(e.spectrum_exponent(2.0).unwrap(), 11.0 / 6.0, 1e-12));
        // continuity at the kink, from both branches
        let at = e.spectrum_exponent(0.5).unwrap();
        assert!(close(at, e.alpha * e.xi, 1e-12));
        assert!(close(at, e.zeta * 0.5 - e.alpha * (e.zeta - e.xi), 1e-12));
        // 2 - nu_2 = alpha^2 / (1 + alpha) for the Levy-Lorentz relation xi = 1/(1+alpha)
        assert!(close(2.0 - e.nu(2.0).unwrap(), 0.25 / 1.5, 1e-12));
    }

    #[test]
    fn hyperscaling_values() {
        assert!(close(
            beta_from_hyperscaling(0.5, 2.0 / 3.0, 1.0).unwrap(),
            1.0 / 6.0,
            1e-15
        ));
        let p2 = 0.37;
        assert!(close(beta_from_hyperscaling(p2, 0.0, 1.0).unwrap(), p2, 1e-15));
        assert!(close(beta_from_hyperscaling(1e-14, 0.3, 1.0).unwrap(), 0.7e-14, 1e-20));
        assert!(beta_from_hyperscaling(0.5, 1.0, 0.5).is_err());
    }

    #[test]
    fn collapse_point_values() {
        // theoretical nu_q on the lower branch gives exactly 1
        let e = ExponentSet::new(2.0 / 3.0, 1.0, 0.5).unwrap();
        let v = universal_collapse_point(0.3, e.nu(0.3).unwrap(), e.xi, e.zeta).unwrap();
        assert!(close(v, 1.0, 1e-12));
        let v = universal_collapse_point(2.0, 11.0 / 12.0 * 2.0, e.xi, e.zeta).unwrap();
        assert!(close(v, 0.25, 1e-12));
        // ballistic saturation nu_q = 2 zeta
        let v = universal_collapse_point(5.0, 2.0, e.xi, e.zeta).unwrap();
        assert!(close(v, 0.0, 1e-12));
        assert!(universal_collapse_point(1.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn theory_table() {
        let th = theory_exponents(ModelKind::Llg, 0.5).unwrap();
        match th.exponents {
            TheoryExponents::PowerLawTail(e) => {
                assert!(close(e.xi, 2.0 / 3.0, 1e-12));
                assert!(close(e.zeta, 1.0, 1e-12));
                assert!(close(e.alpha, 0.5, 1e-12));
            }
            _ => panic!("expected power-law tail"),
        }
        let th = theory_exponents(ModelKind::Llg, 1.5).unwrap();
        match th.exponents {
            TheoryExponents::PowerLawTail(e) => {
                assert!(close(e.xi, 0.5, 1e-12));
                assert!(close(e.alpha, 2.0, 1e-12));
            }
            _ => panic!("expected power-law tail"),
        }
        let th = theory_exponents(ModelKind::Lw, 1.5).unwrap();
        match th.exponents {
            TheoryExponents::PowerLawTail(e) => {
                assert!(close(e.xi, 2.0 / 3.0, 1e-12));
                assert!(close(e.alpha, 1.5, 1e-12));
            }
            _ => panic!("expected power-law tail"),
        }
        let th = theory_exponents(ModelKind::Lgi, 0.3).unwrap();
        match th.exponents {
            TheoryExponents::PowerLawTail(e) => {
                assert!(close(e.xi, 0.5, 1e-12));
                assert!(close(e.alpha, 2.0, 1e-12));
            }
            _ => panic!("expected power-law tail"),
        }
        // finite horizon carries the explicit no-power-law marker
        let th = theory_exponents(ModelKind::Lgf, 1.2).unwrap();
        assert!(matches!(
            th.exponents,
            TheoryExponents::NoPowerLawTail { xi, zeta } if xi == 0.5 && zeta == 1.0
        ));
        // finite-horizon channel flags the disputed tabulated value
        let th = theory_exponents(ModelKind::Pbc, 0.935).unwrap();
        assert!(th.note.is_some());
        match th.exponents {
            TheoryExponents::PowerLawTail(e) => assert!(close(e.alpha, 3.0, 1e-12)),
            _ => panic!("expected power-law tail"),
        }
        assert!(theory_exponents(ModelKind::Lw, 2.5).is_err());
        assert!(theory_exponents(ModelKind::Lgi, 1.5).is_err());
    }

    #[test]
    fn fnd_theory_is_degenerate_bulk() {
        let th = theory_exponents(ModelKind::Fnd, 1.5).unwrap();
        match th.exponents {
            TheoryExponents::PowerLawTail(e) => {
                assert_eq!(e.xi, 0.0);
                assert!(close(e.beta, 1.5, 1e-12));
            }
            _ => panic!("expected power-law tail"),
        }
    }
}
