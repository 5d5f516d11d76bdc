//! Uniform grids on symmetric boxes and complex samples of functions on them.
//!
//! A [`Grid`] of dimension `n` covers `[-R, R)^n` with `N` points per axis at
//! `x_j = -R + j * (2R / N)`. The half-open convention gives every point the same
//! quadrature weight, so lattice sums are periodic trapezoid rules. `N` is even, so
//! the origin is always the node `j = N / 2`.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::quad::{compensated_sum, jump_correction};

pub use crate::quad::Jet;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    dim: usize,
    half_width: f64,
    points: usize,
    spacing: f64,
}

/// Builds a grid of dimension `n` on `[-half_width, half_width)^n`.
pub fn make_grid(n: usize, half_width: f64, points: usize) -> Result<Grid> {
    Grid::new(n, half_width, points)
}

impl Grid {
    pub fn new(dim: usize, half_width: f64, points: usize) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::BadHalfWidth(half_width));
        }
        if points < 4 || !points.is_multiple_of(2) {
            return Err(Error::BadPointCount(points));
        }
        Ok(Grid {
            dim,
            half_width,
            points,
            spacing: 2.0 * half_width / points as f64,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn points_per_axis(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Total number of lattice points, `N^n`.
    pub fn len(&self) -> usize {
        self.points.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Quadrature weight of one lattice point, `spacing^n`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing.powi(self.dim as i32)
    }

    pub fn coordinate(&self, j: usize) -> f64 {
        -self.half_width + j as f64 * self.spacing
    }

    pub fn coordinates(&self) -> Vec<f64> {
        (0..self.points).map(|j| self.coordinate(j)).collect()
    }

    /// Per-axis index of the origin.
    pub fn origin_index(&self) -> usize {
        self.points / 2
    }

    /// Writes the coordinates of lexicographic point `flat` into `out[..dim]`.
    pub fn point_into(&self, mut flat: usize, out: &mut [f64; 3]) {
        for axis in (0..self.dim).rev() {
            out[axis] = self.coordinate(flat % self.points);
            flat /= self.points;
        }
    }

    /// Axis index of the node at `x`, if `x` is within `1e-9` spacings of one.
    pub fn node_index(&self, x: f64) -> Option<usize> {
        let u = (x + self.half_width) / self.spacing;
        let j = u.round();
        ((u - j).abs() <= 1e-9 && j >= 0.0 && (j as usize) < self.points).then_some(j as usize)
    }

    /// The frequency lattice dual to this one-dimensional grid: spacing `1 / (2R)`,
    /// half width `N / (4R)`. Taking the reciprocal twice gives back the grid.
    pub fn reciprocal(&self) -> Result<Grid> {
        if self.dim != 1 {
            return Err(Error::NotOneDimensional(self.dim));
        }
        Grid::new(1, self.points as f64 / (4.0 * self.half_width), self.points)
    }

    pub(crate) fn same_lattice(&self, other: &Grid) -> bool {
        self.dim == other.dim
            && self.points == other.points
            && (self.half_width - other.half_width).abs() <= 1e-12 * self.half_width
    }
}

/// Known decay of a sampled function, used for truncation accounting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayTag {
    /// Decays faster than any power; the box cutoff is estimated from edge samples.
    SchwartzLike,
    /// Integrable, with a caller-supplied bound on the mass outside the box.
    Integrable { tail: f64 },
    /// Only bounded; lattice sums are not approximations of improper integrals.
    BoundedOnly,
}

impl DecayTag {
    pub fn name(&self) -> &'static str {
        match self {
            DecayTag::SchwartzLike => "schwartz-like",
            DecayTag::Integrable { .. } => "integrable",
            DecayTag::BoundedOnly => "bounded-only",
        }
    }

    pub fn is_integrable(&self) -> bool {
        !matches!(self, DecayTag::BoundedOnly)
    }

    /// The weaker of two tags, with tails added.
    pub fn combine(self, other: DecayTag) -> DecayTag {
        use DecayTag::*;
        match (self, other) {
            (BoundedOnly, _) | (_, BoundedOnly) => BoundedOnly,
            (SchwartzLike, SchwartzLike) => SchwartzLike,
            (Integrable { tail: a }, Integrable { tail: b }) => Integrable { tail: a + b },
            (Integrable { tail }, SchwartzLike) | (SchwartzLike, Integrable { tail }) => {
                Integrable { tail }
            }
        }
    }
}

/// A lattice node where a one-dimensional function is not smooth.
///
/// `left` and `right` hold the one-sided jets of the function at the node; the stored
/// sample may be either limit or anything else. Declaring a breakpoint lets quadrature
/// and transforms correct for the jump instead of paying O(h) or O(h^2) for it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breakpoint {
    pub index: usize,
    pub left: Jet,
    pub right: Jet,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    values: Arc<[Complex64]>,
    decay: DecayTag,
    breakpoints: Vec<Breakpoint>,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>, decay: DecayTag) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        Ok(SampledFunction {
            grid,
            values: values.into(),
            decay,
            breakpoints: Vec::new(),
        })
    }

    /// Samples `f` at every lattice point, in lexicographic order.
    pub fn from_fn<F>(grid: Grid, decay: DecayTag, f: F) -> Self
    where
        F: Fn(&[f64]) -> Complex64,
    {
        let mut x = [0.0; 3];
        let values: Vec<Complex64> = (0..grid.len())
            .map(|flat| {
                grid.point_into(flat, &mut x);
                f(&x[..grid.dim])
            })
            .collect();
        SampledFunction {
            grid,
            values: values.into(),
            decay,
            breakpoints: Vec::new(),
        }
    }

    /// Samples a real function of one variable on a one-dimensional grid.
    pub fn from_real_fn<F: Fn(f64) -> f64>(grid: Grid, decay: DecayTag, f: F) -> Self {
        Self::from_fn(grid, decay, |x| Complex64::new(f(x[0]), 0.0))
    }

    pub fn zeros(grid: Grid) -> Self {
        Self::from_fn(grid, DecayTag::SchwartzLike, |_| Complex64::new(0.0, 0.0))
    }

    /// Declares a breakpoint. One-dimensional grids only.
    pub fn with_breakpoint(mut self, bp: Breakpoint) -> Result<Self> {
        if self.grid.dim != 1 {
            return Err(Error::NotOneDimensional(self.grid.dim));
        }
        if bp.index >= self.grid.points {
            return Err(Error::BreakpointOutOfRange {
                index: bp.index,
                len: self.grid.points,
            });
        }
        match self.breakpoints.iter_mut().find(|b| b.index == bp.index) {
            Some(existing) => {
                existing.left = existing.left.add(&bp.left);
                existing.right = existing.right.add(&bp.right);
            }
            None => self.breakpoints.push(bp),
        }
        self.breakpoints.sort_by_key(|b| b.index);
        Ok(self)
    }

    pub fn with_decay(mut self, decay: DecayTag) -> Self {
        self.decay = decay;
        self
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn decay(&self) -> DecayTag {
        self.decay
    }

    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.breakpoints
    }

    /// Sample at axis index `j` of a one-dimensional function.
    pub fn at(&self, j: usize) -> Complex64 {
        self.values[j]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `alpha * self + beta * other`, with breakpoint jets combined the same way.
    pub fn linear_combination(
        &self,
        alpha: Complex64,
        other: &SampledFunction,
        beta: Complex64,
    ) -> Result<SampledFunction> {
        if !self.grid.same_lattice(&other.grid) {
            return Err(Error::GridMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        let mut out = SampledFunction::new(self.grid, values, self.decay.combine(other.decay))?;
        for bp in &self.breakpoints {
            out = out.with_breakpoint(Breakpoint {
                index: bp.index,
                left: bp.left.scale(alpha),
                right: bp.right.scale(alpha),
            })?;
        }
        for bp in &other.breakpoints {
            out = out.with_breakpoint(Breakpoint {
                index: bp.index,
                left: bp.left.scale(beta),
                right: bp.right.scale(beta),
            })?;
        }
        Ok(out)
    }

    /// Estimated mass of `|f|` outside the box.
    ///
    /// Schwartz-like functions extrapolate the decay of the two outermost samples on
    /// each side geometrically (one-dimensional), or bound the outer shell by the
    /// largest edge sample (higher dimensions). Integrable functions report their
    /// declared tail. Bounded-only functions have no finite estimate.
    pub fn truncation_estimate(&self) -> Option<f64> {
        match self.decay {
            DecayTag::BoundedOnly => None,
            DecayTag::Integrable { tail } => Some(tail),
            DecayTag::SchwartzLike if self.grid.dim == 1 => {
                let n = self.grid.points;
                let h = self.grid.spacing;
                let side = |edge: f64, inner: f64| {
                    if edge == 0.0 {
                        return 0.0;
                    }
                    let ratio = edge / inner;
                    if ratio < 1.0 {
                        h * edge * ratio / (1.0 - ratio)
                    } else {
                        f64::INFINITY
                    }
                };
                let left = side(self.values[0].norm(), self.values[1].norm());
                let right = side(self.values[n - 1].norm(), self.values[n - 2].norm());
                Some(left + right)
            }
            DecayTag::SchwartzLike => {
                let g = &self.grid;
                let mut x = [0.0; 3];
                let edge = (0..g.len())
                    .filter(|&flat| {
                        g.point_into(flat, &mut x);
                        x[..g.dim]
                            .iter()
                            .any(|c| (c.abs() - g.half_width).abs() < 0.5 * g.spacing)
                    })
                    .map(|flat| self.values[flat].norm())
                    .fold(0.0, f64::max);
                let shell = 2.0 * g.dim as f64 * (2.0 * g.half_width).powi(g.dim as i32 - 1);
                Some(edge * shell * g.spacing)
            }
        }
    }
}

fn require_integrable(f: &SampledFunction) -> Result<()> {
    if f.decay.is_integrable() {
        Ok(())
    } else {
        Err(Error::NotIntegrable(f.decay.name()))
    }
}

/// Lattice approximation of `int f`: `spacing^n * sum(values)` in a fixed order with
/// compensated summation, plus jump corrections at declared breakpoints.
pub fn integrate(f: &SampledFunction) -> Result<Complex64> {
    require_integrable(f)?;
    let h = f.grid.spacing;
    let mut total = f.grid.cell_volume() * compensated_sum(f.values.iter().copied());
    for bp in &f.breakpoints {
        total += jump_correction(h, f.values[bp.index], &bp.left, &bp.right);
    }
    Ok(total)
}

/// Lattice convolution `(f * g)(x_i) = h * sum_j f(x_j) g(x_i - x_j)`, restricted to the
/// grid, with both factors taken as zero outside the box.
///
/// Computed with a zero-padded FFT of length `2N`, so no periodic wrap-around
/// occurs. Breakpoints are not used; the result carries none.
pub fn convolve(f: &SampledFunction, g: &SampledFunction) -> Result<SampledFunction> {
    if !f.grid.same_lattice(&g.grid) {
        return Err(Error::GridMismatch);
    }
    if f.grid.dim != 1 {
        return Err(Error::NotOneDimensional(f.grid.dim));
    }
    require_integrable(f)?;
    require_integrable(g)?;
    let n = f.grid.points;
    let len = 2 * n;
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(len);
    let inverse = planner.plan_fft_inverse(len);
    let pad = |v: &[Complex64]| {
        let mut out = vec![Complex64::new(0.0, 0.0); len];
        out[..n].copy_from_slice(v);
        out
    };
    let mut a = pad(&f.values);
    let mut b = pad(&g.values);
    forward.process(&mut a);
    forward.process(&mut b);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    inverse.process(&mut a);
    let scale = f.grid.spacing / len as f64;
    let values = a[n / 2..n / 2 + n].iter().map(|v| v * scale).collect();
    let decay = match (f.decay, g.decay) {
        (DecayTag::SchwartzLike, DecayTag::SchwartzLike) => DecayTag::SchwartzLike,
        _ => {
            let mass = |s: &SampledFunction| {
                s.grid.spacing * s.values.iter().map(|v| v.norm()).sum::<f64>()
            };
            let tail = f.truncation_estimate().unwrap_or(0.0) * g.max_abs().max(mass(g))
                + g.truncation_estimate().unwrap_or(0.0) * f.max_abs().max(mass(f));
            DecayTag::Integrable { tail }
        }
    };
    SampledFunction::new(f.grid, values, decay)
}
