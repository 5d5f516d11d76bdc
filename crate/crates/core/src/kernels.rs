//! Closed forms for the summability kernels and their Fourier transforms.
//!
//! Conventions: `A_t(x) = exp(-2 pi t |x|)`, `G_s(x) = exp(-pi s^2 |x|^2)`,
//! `P_t(y) = c_n t / (|y|^2 + t^2)^((n+1)/2)` with `c_n = Gamma((n+1)/2) pi^-((n+1)/2)`,
//! and on the line `A+_t = A_t 1_{x >= 0}`, `A-_t = A_t 1_{x < 0}`. With the transform
//! `f^(xi) = int f(x) exp(-2 pi i xi x) dx` one has `FT(A_t) = P_t`,
//! `FT(A+_t)(xi) = 1 / (2 pi (t + i xi))` and `FT(A-_t)(xi) = 1 / (2 pi (t - i xi))`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{positive, Error, Result};
use crate::quad::Jet;
use crate::sampled::{Breakpoint, DecayTag, Grid, SampledFunction};

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn check_dim(n: usize) -> Result<usize> {
    if (1..=3).contains(&n) {
        Ok(n)
    } else {
        Err(Error::UnsupportedDimension(n))
    }
}

pub fn abel_kernel(t: f64, x: &[f64]) -> Result<f64> {
    let t = positive("t", t)?;
    Ok((-2.0 * PI * t * norm(x)).exp())
}

pub fn gauss_kernel(s: f64, x: &[f64]) -> Result<f64> {
    let s = positive("s", s)?;
    let r2: f64 = x.iter().map(|c| c * c).sum();
    Ok((-PI * s * s * r2).exp())
}

/// `c_n = Gamma((n+1)/2) pi^-((n+1)/2)` from the three Gamma values that occur.
pub fn poisson_constant(n: usize) -> Result<f64> {
    match check_dim(n)? {
        // Gamma(1) = 1
        1 => Ok(1.0 / PI),
        // Gamma(3/2) = sqrt(pi) / 2
        2 => Ok(0.5 * PI.sqrt() * PI.powf(-1.5)),
        // Gamma(2) = 1
        _ => Ok(1.0 / (PI * PI)),
    }
}

/// Poisson kernel in dimension `y.len()`.
pub fn poisson_kernel(t: f64, y: &[f64]) -> Result<f64> {
    let t = positive("t", t)?;
    let n = check_dim(y.len())?;
    let r2: f64 = y.iter().map(|c| c * c).sum();
    let c = poisson_constant(n)?;
    Ok(c * t / (r2 + t * t).powf((n as f64 + 1.0) / 2.0))
}

/// Fourier transform of the Abel kernel, which is the Poisson kernel.
pub fn abel_ft(t: f64, xi: &[f64]) -> Result<f64> {
    poisson_kernel(t, xi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HalfSign {
    Plus,
    Minus,
}

impl HalfSign {
    pub fn label(&self) -> &'static str {
        match self {
            HalfSign::Plus => "+",
            HalfSign::Minus => "-",
        }
    }
}

/// `A+_t` or `A-_t`. The origin belongs to the plus kernel.
pub fn half_kernel(sign: HalfSign, t: f64, x: f64) -> Result<f64> {
    let t = positive("t", t)?;
    let inside = match sign {
        HalfSign::Plus => x >= 0.0,
        HalfSign::Minus => x < 0.0,
    };
    Ok(if inside { (-2.0 * PI * t * x.abs()).exp() } else { 0.0 })
}

pub fn half_kernel_ft(sign: HalfSign, t: f64, xi: f64) -> Result<Complex64> {
    let t = positive("t", t)?;
    let im = match sign {
        HalfSign::Plus => xi,
        HalfSign::Minus => -xi,
    };
    Ok(Complex64::new(2.0 * PI * t, 2.0 * PI * im).inv())
}

/// Density of the Gaussian average, `exp(-u) / sqrt(pi u)` on `u > 0`.
pub fn subordination_weight(u: f64) -> f64 {
    if u > 0.0 {
        (-u).exp() / (PI * u).sqrt()
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Subordination {
    pub value: f64,
    /// Step-halving difference plus the weight mass beyond `u_max`.
    pub error_estimate: f64,
}

/// Error budget for [`abel_from_gaussians`].
pub const SUBORDINATION_BUDGET: f64 = 1e-8;
pub const SUBORDINATION_U_MAX: f64 = 50.0;
pub const SUBORDINATION_POINTS: usize = 4096;

/// `A_t(x)` as the average of Gaussians
/// `int_0^inf exp(-u) / sqrt(pi u) * exp(-pi^2 t^2 |x|^2 / u) du`.
///
/// After `u = v^2` the integrand `2/sqrt(pi) exp(-v^2) exp(-pi^2 t^2 |x|^2 / v^2)` is
/// smooth and even in `v`, so the equal-weight midpoint rule with `m` cells on
/// `[0, sqrt(u_max)]` converges spectrally.
pub fn abel_from_gaussians(t: f64, x: &[f64], u_max: f64, m: usize) -> Result<Subordination> {
    let t = positive("t", t)?;
    let u_max = positive("u_max", u_max)?;
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::BadPointCount(m));
    }
    let c = (PI * t * norm(x)).powi(2);
    let v_max = u_max.sqrt();
    let rule = |cells: usize| {
        let dv = v_max / cells as f64;
        let sum = crate::quad::compensated_sum_real((0..cells).map(|j| {
            let v = (j as f64 + 0.5) * dv;
            let v2 = v * v;
            if c == 0.0 {
                (-v2).exp()
            } else {
                (-v2 - c / v2).exp()
            }
        }));
        2.0 / PI.sqrt() * dv * sum
    };
    let fine = rule(m);
    let coarse = rule(m / 2);
    let tail = libm_erfc(v_max);
    let error_estimate = (fine - coarse).abs() + tail;
    if error_estimate > SUBORDINATION_BUDGET {
        return Err(Error::QuadratureBudget {
            estimate: error_estimate,
            budget: SUBORDINATION_BUDGET,
        });
    }
    Ok(Subordination {
        value: fine,
        error_estimate,
    })
}

// erfc for the tail bound; exp(-x^2)/(x sqrt(pi)) bounds it above for x > 0.
fn libm_erfc(x: f64) -> f64 {
    if x <= 0.0 {
        1.0
    } else {
        ((-x * x).exp() / (x * PI.sqrt())).min(1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelFamily {
    Abel,
    Gauss,
    Poisson,
    AbelPlus,
    AbelMinus,
}

impl KernelFamily {
    pub fn name(&self) -> &'static str {
        match self {
            KernelFamily::Abel => "abel",
            KernelFamily::Gauss => "gauss",
            KernelFamily::Poisson => "poisson",
            KernelFamily::AbelPlus => "abel_plus",
            KernelFamily::AbelMinus => "abel_minus",
        }
    }
}

/// A kernel family at a scale and dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    family: KernelFamily,
    t: f64,
    n: usize,
}

impl KernelSpec {
    pub fn new(family: KernelFamily, t: f64, n: usize) -> Result<Self> {
        let t = positive("t", t)?;
        let n = check_dim(n)?;
        if matches!(family, KernelFamily::AbelPlus | KernelFamily::AbelMinus) && n != 1 {
            return Err(Error::NotOneDimensional(n));
        }
        Ok(KernelSpec { family, t, n })
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn value(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::UnsupportedDimension(x.len()));
        }
        match self.family {
            KernelFamily::Abel => abel_kernel(self.t, x),
            KernelFamily::Gauss => gauss_kernel(self.t, x),
            KernelFamily::Poisson => poisson_kernel(self.t, x),
            KernelFamily::AbelPlus => half_kernel(HalfSign::Plus, self.t, x[0]),
            KernelFamily::AbelMinus => half_kernel(HalfSign::Minus, self.t, x[0]),
        }
    }

    /// Closed-form Fourier transform at `xi`.
    pub fn transform(&self, xi: &[f64]) -> Result<Complex64> {
        if xi.len() != self.n {
            return Err(Error::UnsupportedDimension(xi.len()));
        }
        let real = |v: f64| Complex64::new(v, 0.0);
        match self.family {
            KernelFamily::Abel => abel_ft(self.t, xi).map(real),
            KernelFamily::Gauss => {
                let r2: f64 = xi.iter().map(|c| c * c).sum();
                let s = self.t;
                Ok(real(s.powi(-(self.n as i32)) * (-PI * r2 / (s * s)).exp()))
            }
            // P_t is even, so its transform is A_t again
            KernelFamily::Poisson => abel_kernel(self.t, xi).map(real),
            KernelFamily::AbelPlus => half_kernel_ft(HalfSign::Plus, self.t, xi[0]),
            KernelFamily::AbelMinus => half_kernel_ft(HalfSign::Minus, self.t, xi[0]),
        }
    }

    /// Mass of `|kernel|` outside the ball of radius `r`, which bounds the mass
    /// outside the box `[-r, r)^n`.
    pub fn tail_mass(&self, r: f64) -> f64 {
        let (t, n) = (self.t, self.n);
        match self.family {
            KernelFamily::Poisson => match n {
                1 => 2.0 / PI * (t / r).atan(),
                2 => t / (r * r + t * t).sqrt(),
                _ => {
                    2.0 / PI * (PI / 2.0 - (r / t).atan()) + 2.0 * t * r / (PI * (r * r + t * t))
                }
            },
            KernelFamily::Abel | KernelFamily::AbelPlus | KernelFamily::AbelMinus => {
                let sides = if self.family == KernelFamily::Abel { 1.0 } else { 0.5 };
                sides * radial_exp_tail(n, 2.0 * PI * t, r)
            }
            KernelFamily::Gauss => {
                // crude: exp(-pi s^2 r^2) times the ball surface over the decay rate
                let a = PI * t * t;
                let surface = sphere_area(n) * r.powi(n as i32 - 1);
                surface * (-a * r * r).exp() / (2.0 * a * r)
            }
        }
    }

    /// Samples the kernel on `grid`, declaring its breakpoint at the origin on the line.
    pub fn sample(&self, grid: Grid) -> Result<SampledFunction> {
        if grid.dim() != self.n {
            return Err(Error::UnsupportedDimension(grid.dim()));
        }
        let decay = match self.family {
            KernelFamily::Poisson => DecayTag::Integrable {
                tail: self.tail_mass(grid.half_width()),
            },
            _ => DecayTag::SchwartzLike,
        };
        let f = SampledFunction::from_fn(grid, decay, |x| {
            Complex64::new(self.value(x).unwrap_or(0.0), 0.0)
        });
        if self.n != 1 {
            return Ok(f);
        }
        let rate = 2.0 * PI * self.t;
        let one = Complex64::new(1.0, 0.0);
        let rising = Jet::exponential(one, Complex64::new(rate, 0.0));
        let falling = Jet::exponential(one, Complex64::new(-rate, 0.0));
        let index = grid.origin_index();
        let bp = match self.family {
            KernelFamily::Abel => Some(Breakpoint {
                index,
                left: rising,
                right: falling,
            }),
            KernelFamily::AbelPlus => Some(Breakpoint {
                index,
                left: Jet::zero(),
                right: falling,
            }),
            KernelFamily::AbelMinus => Some(Breakpoint {
                index,
                left: rising,
                right: Jet::zero(),
            }),
            _ => None,
        };
        match bp {
            Some(bp) => f.with_breakpoint(bp),
            None => Ok(f),
        }
    }
}

/// Surface area of the unit sphere in `R^n`: 2, 2 pi, 4 pi.
pub fn sphere_area(n: usize) -> f64 {
    match n {
        1 => 2.0,
        2 => 2.0 * PI,
        _ => 4.0 * PI,
    }
}

/// `area(S^{n-1}) int_r^inf rho^{n-1} exp(-c rho) d rho`.
pub(crate) fn radial_exp_tail(n: usize, c: f64, r: f64) -> f64 {
    let k = n - 1;
    // int_r^inf rho^k e^{-c rho} = e^{-c r} sum_j k!/j! r^j / c^{k-j+1}
    let mut sum = 0.0;
    let mut fact_ratio = 1.0; // k! / j!
    for j in (0..=k).rev() {
        sum += fact_ratio * r.powi(j as i32) / c.powi((k - j + 1) as i32);
        fact_ratio *= j.max(1) as f64;
    }
    sphere_area(n) * (-c * r).exp() * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abel_kernel_values() {
        assert_eq!(abel_kernel(1.0, &[0.0]).unwrap(), 1.0);
        assert!((abel_kernel(1.0, &[1.0]).unwrap() - (-2.0 * PI).exp()).abs() < 1e-18);
        assert!((abel_kernel(1.0, &[1.0]).unwrap() - 1.8674e-3).abs() < 1e-7);
        let v = abel_kernel(2.0, &[3.0, 4.0]).unwrap();
        assert!((v / (-20.0 * PI).exp() - 1.0).abs() < 1e-14);
        assert!(abel_kernel(0.0, &[1.0]).is_err());
        assert!(abel_kernel(-1.0, &[1.0]).is_err());
    }

    #[test]
    fn gauss_kernel_values() {
        assert_eq!(gauss_kernel(0.3, &[0.0]).unwrap(), 1.0);
        assert!((gauss_kernel(1.0, &[1.0]).unwrap() - 0.0432139).abs() < 1e-7);
        assert!(gauss_kernel(0.0, &[1.0]).is_err());
    }

    #[test]
    fn poisson_constants() {
        assert!((poisson_constant(1).unwrap() - std::f64::consts::FRAC_1_PI).abs() < 1e-16);
        assert!((poisson_constant(2).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-16);
        assert!((poisson_constant(2).unwrap() - 0.1591549).abs() < 1e-7);
        assert!((poisson_constant(3).unwrap() - 0.1013212).abs() < 1e-7);
        assert_eq!(poisson_constant(4), Err(Error::UnsupportedDimension(4)));
    }

    #[test]
    fn poisson_kernel_values() {
        assert!((poisson_kernel(1.0, &[0.0]).unwrap() - 1.0 / PI).abs() < 1e-16);
        assert!((poisson_kernel(2.0, &[0.0]).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-16);
        assert!((poisson_kernel(1.0, &[0.0, 0.0, 0.0]).unwrap() - 1.0 / (PI * PI)).abs() < 1e-16);
        assert!(poisson_kernel(0.0, &[0.0]).is_err());
    }

    #[test]
    fn abel_transform_is_poisson() {
        assert!((abel_ft(1.0, &[0.0]).unwrap() - 1.0 / PI).abs() < 1e-16);
        assert!((abel_ft(1.0, &[1.0]).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-16);
        for &(t, x) in &[(0.3, 0.7), (2.0, -1.5), (1.0, 4.0)] {
            assert_eq!(abel_ft(t, &[x]).unwrap(), poisson_kernel(t, &[x]).unwrap());
        }
    }

    #[test]
    fn half_kernels_at_the_origin() {
        assert_eq!(half_kernel(HalfSign::Plus, 1.0, 0.0).unwrap(), 1.0);
        assert_eq!(half_kernel(HalfSign::Minus, 1.0, 0.0).unwrap(), 0.0);
        assert_eq!(half_kernel(HalfSign::Plus, 1.0, -5.0).unwrap(), 0.0);
        assert!(half_kernel(HalfSign::Plus, 0.0, 1.0).is_err());
    }

    #[test]
    fn half_kernel_transforms() {
        let p0 = half_kernel_ft(HalfSign::Plus, 1.0, 0.0).unwrap();
        assert!((p0.re - 0.1591549).abs() < 1e-7 && p0.im == 0.0);
        let m0 = half_kernel_ft(HalfSign::Minus, 1.0, 0.0).unwrap();
        assert!(((p0 + m0).re - 1.0 / PI).abs() < 1e-16);
        let p1 = half_kernel_ft(HalfSign::Plus, 1.0, 1.0).unwrap();
        let expect = Complex64::new(1.0, -1.0) / (4.0 * PI);
        assert!((p1 - expect).norm() < 1e-16);
        assert!(half_kernel_ft(HalfSign::Minus, -1.0, 0.0).is_err());
    }

    #[test]
    fn subordination_at_sample_points() {
        let s = abel_from_gaussians(1.0, &[0.0], 50.0, 4096).unwrap();
        assert!((s.value - 1.0).abs() < 1e-12);
        let s = abel_from_gaussians(1.0, &[1.0], 50.0, 4096).unwrap();
        assert!((s.value - (-2.0 * PI).exp()).abs() < 1e-8);
        assert!(s.error_estimate <= SUBORDINATION_BUDGET);
    }

    #[test]
    fn subordination_budget_is_enforced() {
        let err = abel_from_gaussians(1.0, &[1.0], 4.0, 4096).unwrap_err();
        assert!(matches!(err, Error::QuadratureBudget { .. }));
        assert!(abel_from_gaussians(1.0, &[1.0], 50.0, 7).is_err());
    }

    #[test]
    fn subordination_weight_is_a_probability_density() {
        // u = v^2 again: int 2/sqrt(pi) exp(-v^2) dv = 1
        let e = crate::quad::half_line_de(subordination_weight, 1.0);
        assert!((e.value - 1.0).abs() < 1e-10);
        for &u in &[1e-8, 0.1, 1.0, 30.0] {
            assert!(subordination_weight(u) > 0.0);
        }
    }

    #[test]
    fn kernel_spec_validation() {
        assert!(KernelSpec::new(KernelFamily::AbelPlus, 1.0, 2).is_err());
        assert!(KernelSpec::new(KernelFamily::Abel, 0.0, 1).is_err());
        assert!(KernelSpec::new(KernelFamily::Poisson, 1.0, 4).is_err());
        let k = KernelSpec::new(KernelFamily::Poisson, 2.0, 3).unwrap();
        assert_eq!(k.value(&[0.0, 0.0, 0.0]).unwrap(), poisson_kernel(2.0, &[0.0; 3]).unwrap());
    }

    #[test]
    fn poisson_tail_masses_match_radial_integrals() {
        for n in 1..=3 {
            for &t in &[0.1, 1.0, 10.0] {
                let k = KernelSpec::new(KernelFamily::Poisson, t, n).unwrap();
                let r = 3.0;
                let c = poisson_constant(n).unwrap();
                let profile = |rho: f64| {
                    let rho = rho + r;
                    sphere_area(n) * rho.powi(n as i32 - 1) * c * t
                        / (rho * rho + t * t).powf((n as f64 + 1.0) / 2.0)
                };
                let e = crate::quad::half_line_de(profile, t.max(r));
                assert!((e.value - k.tail_mass(r)).abs() < 1e-10, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn abel_tail_mass_matches_radial_integral() {
        for n in 1..=3 {
            let k = KernelSpec::new(KernelFamily::Abel, 0.5, n).unwrap();
            let r = 2.0;
            let profile = |rho: f64| {
                let rho = rho + r;
                sphere_area(n) * rho.powi(n as i32 - 1) * (-PI * rho).exp()
            };
            let e = crate::quad::half_line_de(profile, 1.0);
            assert!((e.value - k.tail_mass(r)).abs() < 1e-12, "n={n}");
        }
    }
}
