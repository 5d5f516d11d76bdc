//! Entire extensions of band-limited functions and their exponential growth.
//!
//! For a spectrum supported in `[a, b]`, `f(z) = int_a^b F(xi) exp(2 pi i z xi) dxi` is
//! entire, `|f(x + iy)| <= int |F| * exp(max(-2 pi a y, -2 pi b y))`, and a bound
//! `|f| <= B` on the line propagates to `|f(x + iy)| <= B exp(sigma |y|)` with
//! `sigma = 2 pi max(|a|, |b|)`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};
use crate::quad::{segment_weights, CompensatedSum, End};
use crate::spectral::{Spectrum, SupportSpec};

/// Default imaginary-axis heights for [`estimate_type`].
pub const TYPE_SAMPLES: [f64; 4] = [2.0, 3.0, 4.0, 5.0];

/// `(node range, weights in units of the spacing)` for an interval spectrum.
fn interval_rule(spectrum: &Spectrum) -> Result<(usize, Vec<f64>)> {
    let (a, b) = match spectrum.support() {
        SupportSpec::Interval { a, b } => (a, b),
        other => {
            return Err(Error::SupportMismatch {
                found: other.label(),
                required: "a bounded interval",
            })
        }
    };
    let grid = spectrum.grid();
    let ia = grid.node_index(a).ok_or(Error::OffLatticeSupport(a))?;
    let ib = grid.node_index(b).ok_or(Error::OffLatticeSupport(b))?;
    Ok((ia, segment_weights(ib - ia + 1, End::Closed, End::Closed)))
}

fn interval_bounds(spectrum: &Spectrum) -> (f64, f64) {
    match spectrum.support() {
        SupportSpec::Interval { a, b } => (a, b),
        _ => unreachable!("checked by interval_rule"),
    }
}

/// `int_a^b F(xi) exp(2 pi i z xi) dxi` for any complex `z`.
///
/// The rule is Gregory-corrected at both support ends, and its weights are all
/// positive, which [`envelope_bound`] relies on. Breakpoints are not used.
pub fn evaluate_entire(spectrum: &Spectrum, z: Complex64) -> Result<Complex64> {
    let (start, weights) = interval_rule(spectrum)?;
    let grid = spectrum.grid();
    let rate = Complex64::new(0.0, 2.0 * PI) * z;
    let mut acc = CompensatedSum::default();
    for (offset, w) in weights.iter().enumerate() {
        let k = start + offset;
        acc.add(spectrum.at(k) * (rate * grid.coordinate(k)).exp() * *w);
    }
    Ok(acc.total() * grid.spacing())
}

/// `(lattice int |F|) * exp(max(-2 pi a y, -2 pi b y))`, an upper bound for
/// `|evaluate_entire(F, x + iy)|` uniformly in `x`.
pub fn envelope_bound(spectrum: &Spectrum, y: f64) -> Result<f64> {
    let (start, weights) = interval_rule(spectrum)?;
    let (a, b) = interval_bounds(spectrum);
    let mass: f64 = weights
        .iter()
        .enumerate()
        .map(|(offset, w)| w * spectrum.at(start + offset).norm())
        .sum::<f64>()
        * spectrum.grid().spacing();
    Ok(mass * (-2.0 * PI * a * y).max(-2.0 * PI * b * y).exp())
}

/// `2 pi max(|a|, |b|)` for an interval spectrum.
pub fn theoretical_type(spectrum: &Spectrum) -> Result<f64> {
    interval_rule(spectrum)?;
    let (a, b) = interval_bounds(spectrum);
    Ok(2.0 * PI * a.abs().max(b.abs()))
}

/// Empirical exponential type from growth along the imaginary axis.
///
/// On each of the rays `z = iy` and `z = -iy`, `log |f|` is fitted by least squares
/// to `c + p log y + sigma y`; the `log y` term absorbs the algebraic prefactor that
/// band-limited functions carry (for the indicator of `[-1, 1]` it is `1 / y`). The
/// larger of the two slopes is returned.
pub fn estimate_type(spectrum: &Spectrum, y_samples: &[f64]) -> Result<f64> {
    if y_samples.len() < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: y_samples.len(),
        });
    }
    if y_samples.iter().any(|y| !(*y > 0.0 && y.is_finite()))
        || y_samples.windows(2).any(|w| w[1] <= w[0])
    {
        return Err(Error::BadSchedule("y samples must be positive and increasing".into()));
    }
    let largest = *y_samples.last().expect("nonempty");
    if largest < 2.0 {
        return Err(Error::BadSchedule(format!("largest y sample {largest} below 2")));
    }
    let design = DMatrix::from_fn(y_samples.len(), 3, |i, j| match j {
        0 => 1.0,
        1 => y_samples[i].ln(),
        _ => y_samples[i],
    });
    let mut best = f64::NEG_INFINITY;
    for direction in [1.0, -1.0] {
        let logs = y_samples
            .iter()
            .map(|&y| {
                let v = evaluate_entire(spectrum, Complex64::new(0.0, direction * y))?.norm();
                if v > 0.0 && v.is_finite() {
                    Ok(v.ln())
                } else {
                    Err(Error::VanishingSample(direction * y))
                }
            })
            .collect::<Result<Vec<f64>>>()?;
        let rhs = DVector::from_vec(logs);
        let fit = design
            .clone()
            .svd(true, true)
            .solve(&rhs, 1e-12)
            .map_err(|e| Error::BadSchedule(e.to_string()))?;
        best = best.max(fit[2]);
    }
    Ok(best)
}

/// Where the real-axis bound comes from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum BoundMode {
    Supplied { b: f64 },
    /// `max |f(x)|` for `|x| <= half_width` on a uniform grid of the given step.
    Measured { half_width: f64, step: f64 },
}

impl Default for BoundMode {
    fn default() -> Self {
        BoundMode::Measured {
            half_width: 50.0,
            step: 1e-2,
        }
    }
}

/// A measured real-axis bound and its change against the bound on half the window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasuredBound {
    pub b: f64,
    pub half_window_b: f64,
}

impl MeasuredBound {
    /// Relative growth of the bound from the half window to the full one.
    pub fn window_gap(&self) -> f64 {
        if self.b == 0.0 {
            0.0
        } else {
            (self.b - self.half_window_b) / self.b
        }
    }
}

pub fn measure_bound(spectrum: &Spectrum, half_width: f64, step: f64) -> Result<MeasuredBound> {
    let half_width = positive("half_width", half_width)?;
    let step = positive("step", step)?;
    let count = (half_width / step).round() as i64;
    let values = (-count..=count)
        .into_par_iter()
        .map(|k| {
            let x = k as f64 * step;
            evaluate_entire(spectrum, Complex64::new(x, 0.0)).map(|v| (x, v.norm()))
        })
        .collect::<Result<Vec<_>>>()?;
    let max_within = |w: f64| {
        values
            .iter()
            .filter(|(x, _)| x.abs() <= w + 1e-9 * step)
            .map(|(_, v)| *v)
            .fold(0.0, f64::max)
    };
    Ok(MeasuredBound {
        b: max_within(half_width),
        half_window_b: max_within(half_width / 2.0),
    })
}

/// Outcome of checking `|f(x + iy)| <= B exp(sigma |y|)` on a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub sigma: f64,
    pub b: f64,
    /// Relative change of a measured `B` between half and full window; 0 if supplied.
    pub b_window_gap: f64,
    pub points: Vec<(f64, f64)>,
    pub abs_values: Vec<f64>,
    pub envelopes: Vec<f64>,
    /// `max |f| / (B exp(sigma |y|)) - 1`; points where `f` vanishes count as `-1`.
    pub max_margin_violation: f64,
    pub tol: f64,
    pub pass: bool,
    /// Empirical type from [`TYPE_SAMPLES`]; `None` when `f` vanishes there.
    pub sigma_estimate: Option<f64>,
}

/// Every pair `(x, y)` with `x` from `xs` and `y` from `ys`, row by row in `y`.
pub fn lattice(xs: &[f64], ys: &[f64]) -> Vec<(f64, f64)> {
    ys.iter()
        .flat_map(|&y| xs.iter().map(move |&x| (x, y)))
        .collect()
}

/// `n` evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

pub fn check_pl_bound(
    spectrum: &Spectrum,
    sigma: f64,
    mode: BoundMode,
    points: &[(f64, f64)],
    tol: f64,
) -> Result<GrowthReport> {
    if points.is_empty() {
        return Err(Error::EmptyLattice);
    }
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::NonPositive {
            name: "sigma",
            value: sigma,
        });
    }
    let (b, b_window_gap) = match mode {
        BoundMode::Supplied { b } => (positive("B", b)?, 0.0),
        BoundMode::Measured { half_width, step } => {
            let m = measure_bound(spectrum, half_width, step)?;
            (m.b, m.window_gap())
        }
    };
    let abs_values = points
        .par_iter()
        .map(|&(x, y)| evaluate_entire(spectrum, Complex64::new(x, y)).map(|v| v.norm()))
        .collect::<Result<Vec<f64>>>()?;
    let envelopes: Vec<f64> = points
        .iter()
        .map(|&(_, y)| b * (sigma * y.abs()).exp())
        .collect();
    let max_margin_violation = abs_values
        .iter()
        .zip(&envelopes)
        .map(|(v, e)| if *v == 0.0 { -1.0 } else { v / e - 1.0 })
        .fold(f64::NEG_INFINITY, f64::max);
    let sigma_estimate = match estimate_type(spectrum, &TYPE_SAMPLES) {
        Ok(s) => Some(s),
        Err(Error::VanishingSample(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(GrowthReport {
        sigma,
        b,
        b_window_gap,
        points: points.to_vec(),
        abs_values,
        envelopes,
        max_margin_violation,
        tol,
        pass: max_margin_violation <= tol,
        sigma_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampled::make_grid;

    fn indicator(a: f64, b: f64) -> Spectrum {
        let g = make_grid(1, 4.0, 2048).unwrap();
        Spectrum::from_fn(g, SupportSpec::interval(a, b).unwrap(), |_| Complex64::new(1.0, 0.0))
            .unwrap()
    }

    #[test]
    fn indicator_extension_values() {
        let f = indicator(-1.0, 1.0);
        let v = evaluate_entire(&f, Complex64::new(0.0, 0.0)).unwrap();
        assert!((v.re - 2.0).abs() < 1e-12);
        let v = evaluate_entire(&f, Complex64::new(0.25, 0.0)).unwrap();
        assert!((v.re - 4.0 / PI).abs() < 1e-10 && v.im.abs() < 1e-12);
        let v = evaluate_entire(&f, Complex64::new(0.0, 1.0)).unwrap();
        let exact = (2.0 * PI).sinh() / PI;
        assert!(((v.re - exact) / exact).abs() < 1e-10, "{}", v.re);
    }

    #[test]
    fn entire_needs_an_interval() {
        let g = make_grid(1, 4.0, 64).unwrap();
        let s = Spectrum::zeros(g, SupportSpec::NonnegHalfline).unwrap();
        assert!(matches!(
            evaluate_entire(&s, Complex64::new(0.0, 0.0)),
            Err(Error::SupportMismatch { .. })
        ));
        let off = Spectrum::zeros(g, SupportSpec::interval(-0.3, 0.3).unwrap()).unwrap();
        assert!(matches!(envelope_bound(&off, 0.0), Err(Error::OffLatticeSupport(_))));
    }

    #[test]
    fn envelope_values() {
        let f = indicator(-1.0, 1.0);
        assert!((envelope_bound(&f, 0.0).unwrap() - 2.0).abs() < 1e-12);
        let e = envelope_bound(&f, 1.0).unwrap();
        assert!((e - 2.0 * (2.0 * PI).exp()).abs() < 1e-8 * e);
        assert_eq!(envelope_bound(&f, 0.7).unwrap(), envelope_bound(&f, -0.7).unwrap());
        for &(x, y) in &[(0.0, 1.0), (1.3, -2.0), (-4.0, 0.5)] {
            let v = evaluate_entire(&f, Complex64::new(x, y)).unwrap().norm();
            assert!(v <= envelope_bound(&f, y).unwrap());
        }
    }

    #[test]
    fn type_estimates() {
        let s = estimate_type(&indicator(-1.0, 1.0), &TYPE_SAMPLES).unwrap();
        assert!((s - 2.0 * PI).abs() < 1e-3, "{s}");
        let s = estimate_type(&indicator(0.0, 0.5), &TYPE_SAMPLES).unwrap();
        assert!((s - PI).abs() < 0.3, "{s}");
        let s = estimate_type(&indicator(0.0, 0.0), &TYPE_SAMPLES).unwrap();
        assert!(s.abs() < 0.3, "{s}");
        assert!(estimate_type(&indicator(-1.0, 1.0), &[2.0, 3.0]).is_err());
        assert!(estimate_type(&indicator(-1.0, 1.0), &[0.5, 1.0, 1.5]).is_err());
        assert!(estimate_type(&indicator(-1.0, 1.0), &[3.0, 2.0, 4.0]).is_err());
        let g = make_grid(1, 4.0, 64).unwrap();
        let zero = Spectrum::zeros(g, SupportSpec::interval(-1.0, 1.0).unwrap()).unwrap();
        assert!(matches!(
            estimate_type(&zero, &TYPE_SAMPLES),
            Err(Error::VanishingSample(_))
        ));
    }

    #[test]
    fn growth_check_at_and_below_the_type() {
        let f = indicator(-1.0, 1.0);
        let pts = lattice(&linspace(-5.0, 5.0, 21), &linspace(-3.0, 3.0, 13));
        let mode = BoundMode::Measured {
            half_width: 10.0,
            step: 1e-2,
        };
        let ok = check_pl_bound(&f, 2.0 * PI, mode, &pts, 1e-6).unwrap();
        assert!(ok.pass && ok.max_margin_violation <= 0.0);
        assert!((ok.b - 2.0).abs() < 1e-10);
        let bad = check_pl_bound(&f, PI, mode, &pts, 1e-6).unwrap();
        assert!(!bad.pass);
        let worst = bad
            .abs_values
            .iter()
            .zip(&bad.envelopes)
            .zip(&bad.points)
            .max_by(|a, b| (a.0 .0 / a.0 .1).total_cmp(&(b.0 .0 / b.0 .1)))
            .unwrap();
        assert_eq!(worst.1 .1.abs(), 3.0);
    }

    #[test]
    fn growth_check_of_zero() {
        let g = make_grid(1, 4.0, 64).unwrap();
        let zero = Spectrum::zeros(g, SupportSpec::interval(-1.0, 1.0).unwrap()).unwrap();
        let r = check_pl_bound(&zero, 1.0, BoundMode::Supplied { b: 1.0 }, &[(0.0, 1.0)], 1e-6)
            .unwrap();
        assert!(r.pass);
        assert!(r.abs_values.iter().all(|v| *v == 0.0));
        assert_eq!(r.sigma_estimate, None);
        assert!(matches!(
            check_pl_bound(&zero, 1.0, BoundMode::default(), &[], 1e-6),
            Err(Error::EmptyLattice)
        ));
    }

    #[test]
    fn measured_bound_stabilizes() {
        let f = indicator(-1.0, 1.0);
        let m = measure_bound(&f, 20.0, 1e-2).unwrap();
        assert!(m.window_gap().abs() < 1e-12);
        assert!((m.b - 2.0).abs() < 1e-10);
    }
}
