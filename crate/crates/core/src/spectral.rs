//! Fourier transforms between a one-dimensional lattice and its reciprocal lattice.
//!
//! The continuous convention is `f^(xi) = int f(x) exp(-2 pi i xi x) dx`. A space grid
//! with half width `R` and `N` points pairs with the frequency grid of spacing
//! `1 / (2R)` and half width `N / (4R)`, and the lattice transform
//! `h * sum_j f(x_j) exp(-2 pi i xi_k x_j)` is evaluated exactly as written. Because
//! the lattice starts at `x_0 = -R` rather than at the origin, the bare DFT picks up the
//! phase `exp(-2 pi i xi_k x_0)` plus the centring of the frequency index; both are
//! folded into the exact sign `(-1)^(N/2 + j + k)`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};
use crate::quad::{jump_correction, segment_weights, End, Jet};
use crate::sampled::{Breakpoint, DecayTag, Grid, SampledFunction};

/// Declared spectral support.
///
/// On the lattice the node `xi = 0` belongs to the nonnegative half-line, so the two
/// half-line projections partition every spectrum exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SupportSpec {
    FullLine,
    NonnegHalfline,
    NonposHalfline,
    Interval { a: f64, b: f64 },
}

impl SupportSpec {
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        let s = SupportSpec::Interval { a, b };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            SupportSpec::Interval { a, b } if !(a <= b && a.is_finite() && b.is_finite()) => {
                Err(Error::BadInterval { a, b })
            }
            _ => Ok(()),
        }
    }

    /// Whether the lattice node at `xi` carries support, within a relative slack of
    /// `1e-9` lattice spacings at interval endpoints.
    pub fn contains(&self, xi: f64, spacing: f64) -> bool {
        let slack = 1e-9 * spacing;
        match *self {
            SupportSpec::FullLine => true,
            SupportSpec::NonnegHalfline => xi >= -slack,
            SupportSpec::NonposHalfline => xi < -slack,
            SupportSpec::Interval { a, b } => xi >= a - slack && xi <= b + slack,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            SupportSpec::FullLine => "full_line".into(),
            SupportSpec::NonnegHalfline => "nonneg_halfline".into(),
            SupportSpec::NonposHalfline => "nonpos_halfline".into(),
            SupportSpec::Interval { a, b } => format!("interval[{a}, {b}]"),
        }
    }
}

/// Samples of a Fourier transform on a one-dimensional frequency grid.
///
/// Values are exactly zero at nodes outside the declared support. `space_decay` is
/// the decay tag handed to functions reconstructed by [`inverse_ft`].
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    grid: Grid,
    values: Arc<[Complex64]>,
    support: SupportSpec,
    breakpoints: Vec<Breakpoint>,
    space_decay: DecayTag,
}

impl Spectrum {
    pub fn new(grid: Grid, values: Vec<Complex64>, support: SupportSpec) -> Result<Self> {
        if grid.dim() != 1 {
            return Err(Error::NotOneDimensional(grid.dim()));
        }
        support.validate()?;
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        let h = grid.spacing();
        for (k, v) in values.iter().enumerate() {
            let xi = grid.coordinate(k);
            if !support.contains(xi, h) && *v != Complex64::new(0.0, 0.0) {
                return Err(Error::SupportViolation { xi });
            }
        }
        Ok(Spectrum {
            grid,
            values: values.into(),
            support,
            breakpoints: Vec::new(),
            space_decay: DecayTag::Integrable { tail: 0.0 },
        })
    }

    /// Samples `f` on the nodes inside `support`, zero elsewhere.
    pub fn from_fn<F: Fn(f64) -> Complex64>(
        grid: Grid,
        support: SupportSpec,
        f: F,
    ) -> Result<Self> {
        if grid.dim() != 1 {
            return Err(Error::NotOneDimensional(grid.dim()));
        }
        support.validate()?;
        let h = grid.spacing();
        let values = (0..grid.points_per_axis())
            .map(|k| {
                let xi = grid.coordinate(k);
                if support.contains(xi, h) {
                    f(xi)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Spectrum::new(grid, values, support)
    }

    pub fn zeros(grid: Grid, support: SupportSpec) -> Result<Self> {
        Spectrum::from_fn(grid, support, |_| Complex64::new(0.0, 0.0))
    }

    pub fn with_breakpoint(mut self, bp: Breakpoint) -> Result<Self> {
        if bp.index >= self.values.len() {
            return Err(Error::BreakpointOutOfRange {
                index: bp.index,
                len: self.values.len(),
            });
        }
        self.breakpoints.retain(|b| b.index != bp.index);
        self.breakpoints.push(bp);
        self.breakpoints.sort_by_key(|b| b.index);
        Ok(self)
    }

    pub fn with_space_decay(mut self, decay: DecayTag) -> Self {
        self.space_decay = decay;
        self
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn support(&self) -> SupportSpec {
        self.support
    }

    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.breakpoints
    }

    pub fn space_decay(&self) -> DecayTag {
        self.space_decay
    }

    pub fn at(&self, k: usize) -> Complex64 {
        self.values[k]
    }

    pub fn frequencies(&self) -> Vec<f64> {
        self.grid.coordinates()
    }

    /// The spectrum `xi -> conj(F(-xi))`, which transforms `conj(f)`.
    ///
    /// The node `k` maps to `N - k`; the first node has no mirror on the lattice and
    /// is set to zero. A nonnegative support becomes nonpositive, which drops the
    /// sample at the origin.
    pub fn conjugate_reflection(&self) -> Result<Spectrum> {
        let n = self.values.len();
        let mirror = |k: usize| if k == 0 { None } else { Some(n - k) };
        let support = match self.support {
            SupportSpec::FullLine => SupportSpec::FullLine,
            SupportSpec::NonnegHalfline => SupportSpec::NonposHalfline,
            SupportSpec::NonposHalfline => SupportSpec::NonnegHalfline,
            SupportSpec::Interval { a, b } => SupportSpec::Interval { a: -b, b: -a },
        };
        let h = self.grid.spacing();
        let values = (0..n)
            .map(|k| {
                let xi = self.grid.coordinate(k);
                match mirror(k) {
                    Some(m) if support.contains(xi, h) => self.values[m].conj(),
                    _ => Complex64::new(0.0, 0.0),
                }
            })
            .collect();
        let mut out = Spectrum::new(self.grid, values, support)?.with_space_decay(self.space_decay);
        let flip = |j: &Jet| {
            let mut v = j.0;
            for (m, c) in v.iter_mut().enumerate() {
                *c = c.conj() * alternating(m);
            }
            Jet(v)
        };
        for bp in &self.breakpoints {
            if let Some(m) = mirror(bp.index) {
                out = out.with_breakpoint(Breakpoint {
                    index: m,
                    left: flip(&bp.right),
                    right: flip(&bp.left),
                })?;
            }
        }
        Ok(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

// (-1)^n as a real factor
fn alternating(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Lattice DFT between a grid and its reciprocal, with the continuous-transform phase:
/// `out_k = step * sum_j v_j exp(sign * 2 pi i xi_k x_j)`.
fn centred_transform(values: &[Complex64], step: f64, forward: bool) -> Vec<Complex64> {
    let n = values.len();
    let half = n / 2;
    let mut buf: Vec<Complex64> = values
        .iter()
        .enumerate()
        .map(|(j, v)| v * alternating(j))
        .collect();
    let mut planner = FftPlanner::<f64>::new();
    let fft = if forward {
        planner.plan_fft_forward(n)
    } else {
        planner.plan_fft_inverse(n)
    };
    fft.process(&mut buf);
    buf.iter()
        .enumerate()
        .map(|(k, v)| v * (step * alternating(half + k)))
        .collect()
}

/// Adds the jump corrections of `breakpoints` (in the variable of `source`) to `out`,
/// where `out[k]` approximates `int f(s) exp(sign 2 pi i s u_k) ds` on `target`.
fn correct_breakpoints(
    out: &mut [Complex64],
    values: &[Complex64],
    breakpoints: &[Breakpoint],
    source: &Grid,
    target: &Grid,
    sign: f64,
) {
    let h = source.spacing();
    for bp in breakpoints {
        let s = source.coordinate(bp.index);
        for (k, o) in out.iter_mut().enumerate() {
            let rate = Complex64::new(0.0, sign * 2.0 * PI * target.coordinate(k));
            let phase = (rate * s).exp();
            let phi = Jet::exponential(phase, rate);
            *o += jump_correction(
                h,
                values[bp.index] * phase,
                &bp.left.product(&phi),
                &bp.right.product(&phi),
            );
        }
    }
}

/// Continuous-convention Fourier transform of a one-dimensional sampled function,
/// sampled on the reciprocal grid. Declared breakpoints are corrected for.
pub fn forward_ft(f: &SampledFunction) -> Result<Spectrum> {
    let grid = *f.grid();
    if grid.dim() != 1 {
        return Err(Error::NotOneDimensional(grid.dim()));
    }
    if !f.decay().is_integrable() {
        return Err(Error::NotIntegrable(f.decay().name()));
    }
    let freq = grid.reciprocal()?;
    let mut values = centred_transform(f.values(), grid.spacing(), true);
    correct_breakpoints(&mut values, f.values(), f.breakpoints(), &grid, &freq, -1.0);
    Ok(Spectrum::new(freq, values, SupportSpec::FullLine)?.with_space_decay(f.decay()))
}

/// `int F(xi) exp(2 pi i x xi) dxi` at every node of the reciprocal (space) grid.
pub fn inverse_ft(spectrum: &Spectrum) -> Result<SampledFunction> {
    let freq = *spectrum.grid();
    let space = freq.reciprocal()?;
    let mut values = centred_transform(spectrum.values(), freq.spacing(), false);
    correct_breakpoints(
        &mut values,
        spectrum.values(),
        spectrum.breakpoints(),
        &freq,
        &space,
        1.0,
    );
    SampledFunction::new(space, values, spectrum.space_decay())
}

struct Segment {
    lo: usize,
    hi: usize,
    lo_end: End,
    hi_end: End,
}

/// `int F(xi) exp(-2 pi damping |xi|) exp(2 pi i x xi) dxi` over the declared support.
pub(crate) fn damped_inverse(spectrum: &Spectrum, damping: f64, x: f64) -> Result<Complex64> {
    damped_line_integral(
        &spectrum.grid,
        &spectrum.values,
        &spectrum.breakpoints,
        spectrum.support,
        damping,
        x,
    )
}

/// `int g(s) exp(-2 pi damping |s|) exp(2 pi i x s) ds` for samples `g` on a line
/// lattice, restricted to `support`.
///
/// The integral is split at every node where the integrand stops or kinks (support
/// edges, and the origin when `damping > 0`), and each piece gets Gregory end
/// corrections. On the nonpositive half-line the origin sample belongs to the other
/// side, so that end is extrapolated from the interior unless a breakpoint there
/// supplies the left limit.
pub(crate) fn damped_line_integral(
    grid: &Grid,
    values: &[Complex64],
    breakpoints: &[Breakpoint],
    support: SupportSpec,
    damping: f64,
    x: f64,
) -> Result<Complex64> {
    let n = grid.points_per_axis();
    let c = grid.origin_index();
    let h = grid.spacing();
    let breakpoint_at = |k: usize| breakpoints.iter().find(|b| b.index == k);
    let nonpos_end = if breakpoint_at(c).is_some() {
        End::Closed
    } else {
        End::Open
    };
    let seg = |lo, hi, lo_end, hi_end| Segment {
        lo,
        hi,
        lo_end,
        hi_end,
    };
    let split_at_origin = damping > 0.0 || breakpoint_at(c).is_some();
    let segments = match support {
        SupportSpec::FullLine => {
            if split_at_origin {
                vec![
                    seg(0, c, End::Free, End::Closed),
                    seg(c, n - 1, End::Closed, End::Free),
                ]
            } else {
                vec![seg(0, n - 1, End::Free, End::Free)]
            }
        }
        SupportSpec::NonnegHalfline => vec![seg(c, n - 1, End::Closed, End::Free)],
        SupportSpec::NonposHalfline => vec![seg(0, c, End::Free, nonpos_end)],
        SupportSpec::Interval { a, b } => {
            let ia = grid.node_index(a).ok_or(Error::OffLatticeSupport(a))?;
            let ib = grid.node_index(b).ok_or(Error::OffLatticeSupport(b))?;
            if ia < c && c < ib && split_at_origin {
                vec![
                    seg(ia, c, End::Closed, End::Closed),
                    seg(c, ib, End::Closed, End::Closed),
                ]
            } else {
                vec![seg(ia, ib, End::Closed, End::Closed)]
            }
        }
    };
    let integrand_factor = |xi: f64| {
        Complex64::from_polar((-2.0 * PI * damping * xi.abs()).exp(), 2.0 * PI * x * xi)
    };
    let split_nodes: Vec<usize> = segments.iter().flat_map(|s| [s.lo, s.hi]).collect();
    let mut acc = crate::quad::CompensatedSum::default();
    for s in &segments {
        let weights = segment_weights(s.hi - s.lo + 1, s.lo_end, s.hi_end);
        for (offset, w) in weights.iter().enumerate() {
            if *w == 0.0 {
                continue;
            }
            let k = s.lo + offset;
            let mut value = values[k];
            if let Some(bp) = breakpoint_at(k) {
                // one-sided limit at a segment end
                if k == s.lo && s.lo_end != End::Free {
                    value = bp.right.value();
                } else if k == s.hi && s.hi_end != End::Free {
                    value = bp.left.value();
                }
            }
            acc.add(value * integrand_factor(grid.coordinate(k)) * *w);
        }
    }
    let mut total = acc.total() * h;
    for bp in breakpoints {
        if split_nodes.contains(&bp.index) {
            continue;
        }
        let xi = grid.coordinate(bp.index);
        let rate = Complex64::new(-2.0 * PI * damping * xi.signum(), 2.0 * PI * x);
        let phi = Jet::exponential(integrand_factor(xi), rate);
        total += jump_correction(
            h,
            values[bp.index] * integrand_factor(xi),
            &bp.left.product(&phi),
            &bp.right.product(&phi),
        );
    }
    Ok(total)
}

/// Abel-regularized inverse transform
/// `int F(xi) exp(-2 pi t |xi|) exp(2 pi i x xi) dxi` at an arbitrary real `x`.
pub fn abel_regularized_inverse(spectrum: &Spectrum, t: f64, x: f64) -> Result<Complex64> {
    let t = positive("t", t)?;
    damped_inverse(spectrum, t, x)
}

/// Zeroes the values outside `support` and declares it. Breakpoints strictly inside
/// the new support are kept.
pub fn project_spectrum(spectrum: &Spectrum, support: SupportSpec) -> Result<Spectrum> {
    support.validate()?;
    let grid = *spectrum.grid();
    let h = grid.spacing();
    let values: Vec<Complex64> = spectrum
        .values
        .iter()
        .enumerate()
        .map(|(k, v)| {
            if support.contains(grid.coordinate(k), h) {
                *v
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    let mut out = Spectrum::new(grid, values, support)?.with_space_decay(spectrum.space_decay);
    for bp in &spectrum.breakpoints {
        let xi = grid.coordinate(bp.index);
        let inside = support.contains(xi - h, h) && support.contains(xi + h, h);
        if inside {
            out = out.with_breakpoint(*bp)?;
        }
    }
    Ok(out)
}
