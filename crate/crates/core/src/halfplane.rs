//! Holomorphic extensions of one-sided spectra to a half-plane.
//!
//! A spectrum supported on `[0, inf)` extends to `f(z) = int F(xi) exp(2 pi i z xi) dxi`
//! for `Im z >= 0`; one supported on `(-inf, 0]` extends to `Im z <= 0`. At height
//! `y = t` this is literally the Abel-regularized inverse at `t`, and it is also the
//! Poisson extension of the boundary values and the Cauchy integral of the full
//! function.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};
use crate::kernels::{KernelFamily, KernelSpec};
use crate::quad::{jump_correction, CompensatedSum, Jet};
use crate::sampled::{convolve, SampledFunction};
use crate::spectral::{damped_inverse, forward_ft, project_spectrum, Spectrum, SupportSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    pub fn label(&self) -> &'static str {
        match self {
            Side::Upper => "upper",
            Side::Lower => "lower",
        }
    }

    fn sign(&self) -> f64 {
        match self {
            Side::Upper => 1.0,
            Side::Lower => -1.0,
        }
    }
}

/// `z = x + i y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint {
    pub x: f64,
    pub y: f64,
}

impl HalfPlanePoint {
    pub fn new(x: f64, y: f64) -> Self {
        HalfPlanePoint { x, y }
    }

    /// `None` on the real axis.
    pub fn side(&self) -> Option<Side> {
        if self.y > 0.0 {
            Some(Side::Upper)
        } else if self.y < 0.0 {
            Some(Side::Lower)
        } else {
            None
        }
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

impl From<Complex64> for HalfPlanePoint {
    fn from(z: Complex64) -> Self {
        HalfPlanePoint::new(z.re, z.im)
    }
}

/// Values of an extension on a rectangular `(x, y)` lattice, stored row by row in
/// `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfPlaneField {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub values: Vec<Complex64>,
    pub side: Side,
}

impl HalfPlaneField {
    pub fn at(&self, ix: usize, iy: usize) -> Complex64 {
        self.values[iy * self.xs.len() + ix]
    }
}

/// The half-plane a spectrum extends to, from its declared support.
pub fn extension_side(spectrum: &Spectrum) -> Result<Side> {
    match spectrum.support() {
        SupportSpec::NonnegHalfline => Ok(Side::Upper),
        SupportSpec::NonposHalfline => Ok(Side::Lower),
        SupportSpec::Interval { a, .. } if a >= 0.0 => Ok(Side::Upper),
        SupportSpec::Interval { b, .. } if b <= 0.0 => Ok(Side::Lower),
        other => Err(Error::SupportMismatch {
            found: other.label(),
            required: "a half-line",
        }),
    }
}

/// Spectra of the parts of `f` with frequencies in `[0, inf)` and `(-inf, 0)`.
pub fn hardy_split(f: &SampledFunction) -> Result<(Spectrum, Spectrum)> {
    let spectrum = forward_ft(f)?;
    Ok((
        project_spectrum(&spectrum, SupportSpec::NonnegHalfline)?,
        project_spectrum(&spectrum, SupportSpec::NonposHalfline)?,
    ))
}

fn require_side(spectrum: &Spectrum, side: Side) -> Result<()> {
    if extension_side(spectrum)? != side {
        return Err(Error::SupportMismatch {
            found: spectrum.support().label(),
            required: match side {
                Side::Upper => "support in [0, inf)",
                Side::Lower => "support in (-inf, 0]",
            },
        });
    }
    Ok(())
}

/// `int_0^inf F(xi) exp(2 pi i z xi) dxi` for `Im z >= 0`.
pub fn evaluate_upper(spectrum: &Spectrum, z: HalfPlanePoint) -> Result<Complex64> {
    if z.y < 0.0 || !z.y.is_finite() {
        return Err(Error::WrongHalfPlane { y: z.y, side: "upper" });
    }
    require_side(spectrum, Side::Upper)?;
    damped_inverse(spectrum, z.y, z.x)
}

/// `int_{-inf}^0 F(xi) exp(2 pi i z xi) dxi` for `Im z <= 0`.
pub fn evaluate_lower(spectrum: &Spectrum, z: HalfPlanePoint) -> Result<Complex64> {
    if z.y > 0.0 || !z.y.is_finite() {
        return Err(Error::WrongHalfPlane { y: z.y, side: "lower" });
    }
    require_side(spectrum, Side::Lower)?;
    damped_inverse(spectrum, -z.y, z.x)
}

/// Evaluates on whichever closed half-plane the support of `spectrum` selects.
pub fn evaluate(spectrum: &Spectrum, z: HalfPlanePoint) -> Result<Complex64> {
    match extension_side(spectrum)? {
        Side::Upper => evaluate_upper(spectrum, z),
        Side::Lower => evaluate_lower(spectrum, z),
    }
}

/// `1 / (2 pi (t - i x))` on the upper side, `1 / (2 pi (t + i x))` on the lower.
pub fn cauchy_kernel(side: Side, t: f64, x: f64) -> Result<Complex64> {
    let t = positive("t", t)?;
    Ok(1.0 / (2.0 * PI * Complex64::new(t, -side.sign() * x)))
}

// jet in y of cauchy_kernel(side, t, x - y)
fn cauchy_jet(side: Side, t: f64, x: f64, y: f64) -> Jet {
    let i = Complex64::new(0.0, 1.0);
    let dw = i * side.sign();
    let w = Complex64::new(t, -side.sign() * (x - y));
    let mut out = [Complex64::new(0.0, 0.0); 4];
    let mut fact = 1.0;
    for (m, o) in out.iter_mut().enumerate() {
        if m > 0 {
            fact *= m as f64;
        }
        *o = (-dw).powu(m as u32) * fact / (2.0 * PI * w.powu(m as u32 + 1));
    }
    Jet(out)
}

/// `int C(x - s) f(s) ds` with the closed-form Cauchy kernel `C` of `side`, summed
/// over the lattice of `f`. Only the part of `f` with spectrum on the matching
/// half-line survives.
pub fn cauchy_represent(f: &SampledFunction, side: Side, t: f64, x: f64) -> Result<Complex64> {
    let t = positive("t", t)?;
    let grid = f.grid();
    if grid.dim() != 1 {
        return Err(Error::NotOneDimensional(grid.dim()));
    }
    if !f.decay().is_integrable() {
        return Err(Error::NotIntegrable(f.decay().name()));
    }
    let mut acc = CompensatedSum::default();
    for (j, v) in f.values().iter().enumerate() {
        acc.add(v * cauchy_kernel(side, t, x - grid.coordinate(j))?);
    }
    let h = grid.spacing();
    let mut total = acc.total() * h;
    for bp in f.breakpoints() {
        let s = grid.coordinate(bp.index);
        let k = cauchy_jet(side, t, x, s);
        total += jump_correction(
            h,
            f.values()[bp.index] * k.value(),
            &bp.left.product(&k),
            &bp.right.product(&k),
        );
    }
    Ok(total)
}

/// `P_t * f` on the grid of `f`.
pub fn poisson_extend(f: &SampledFunction, t: f64) -> Result<SampledFunction> {
    let t = positive("t", t)?;
    let kernel = KernelSpec::new(KernelFamily::Poisson, t, 1)?.sample(*f.grid())?;
    convolve(&kernel, f)
}

/// `|(d/dx + i d/dy) g(z)|` by central differences with step `h`.
pub fn cr_residual_with<G>(field: G, z: HalfPlanePoint, h: f64) -> Result<f64>
where
    G: Fn(HalfPlanePoint) -> Result<Complex64>,
{
    let h = positive("h", h)?;
    let at = |dx: f64, dy: f64| field(HalfPlanePoint::new(z.x + dx, z.y + dy));
    let dx = (at(h, 0.0)? - at(-h, 0.0)?) / (2.0 * h);
    let dy = (at(0.0, h)? - at(0.0, -h)?) / (2.0 * h);
    Ok((dx + Complex64::new(0.0, 1.0) * dy).norm())
}

/// Cauchy–Riemann residual of the extension of a one-sided spectrum. The point must
/// keep a margin of more than `2h` from the real axis.
pub fn cr_residual(spectrum: &Spectrum, z: HalfPlanePoint, h: f64) -> Result<f64> {
    let h = positive("h", h)?;
    let side = extension_side(spectrum)?;
    if side.sign() * z.y <= 2.0 * h {
        return Err(Error::StencilCrossesBoundary { y: z.y, reach: h });
    }
    cr_residual_with(|p| evaluate(spectrum, p), z, h)
}

/// The extension of `spectrum` on the lattice `xs` by `ys`, all strictly inside the
/// half-plane its support selects.
pub fn sample_field(spectrum: &Spectrum, xs: &[f64], ys: &[f64]) -> Result<HalfPlaneField> {
    let side = extension_side(spectrum)?;
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::EmptyLattice);
    }
    if let Some(y) = ys.iter().find(|y| side.sign() * **y <= 0.0) {
        return Err(Error::WrongHalfPlane {
            y: *y,
            side: side.label(),
        });
    }
    let values = ys
        .par_iter()
        .flat_map_iter(|&y| xs.iter().map(move |&x| (x, y)))
        .map(|(x, y)| evaluate(spectrum, HalfPlanePoint::new(x, y)))
        .collect::<Result<Vec<_>>>()?;
    Ok(HalfPlaneField {
        xs: xs.to_vec(),
        ys: ys.to_vec(),
        values,
        side,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampled::{make_grid, DecayTag, Grid};
    use crate::spectral::inverse_ft;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn freq() -> Grid {
        make_grid(1, 16.0, 4096).unwrap()
    }

    fn one_sided(g: Grid) -> Spectrum {
        Spectrum::from_fn(g, SupportSpec::NonnegHalfline, |xi| c((-2.0 * PI * xi).exp(), 0.0))
            .unwrap()
    }

    fn poisson(g: Grid) -> SampledFunction {
        KernelSpec::new(KernelFamily::Poisson, 1.0, 1).unwrap().sample(g).unwrap()
    }

    #[test]
    fn hardy_split_of_the_poisson_kernel() {
        let g = make_grid(1, 64.0, 8192).unwrap();
        let p1 = poisson(g);
        let tail = match p1.decay() {
            DecayTag::Integrable { tail } => tail,
            _ => unreachable!(),
        };
        let (plus, minus) = hardy_split(&p1).unwrap();
        assert_eq!(plus.support(), SupportSpec::NonnegHalfline);
        for (k, xi) in plus.frequencies().into_iter().enumerate() {
            if xi.abs() > 4.0 {
                continue;
            }
            let expect = if xi >= 0.0 { (-2.0 * PI * xi).exp() } else { 0.0 };
            // the samples miss the kernel mass beyond the box
            assert!((plus.at(k) - expect).norm() < tail + 1e-8, "xi={xi}");
        }
        // real f: the negative part is the conjugate reflection of the positive part
        let reflected = plus.conjugate_reflection().unwrap();
        for k in 1..minus.values().len() {
            assert!((minus.at(k) - reflected.at(k)).norm() < 1e-15);
        }
    }

    #[test]
    fn hardy_split_of_zero() {
        let g = make_grid(1, 4.0, 64).unwrap();
        let (p, m) = hardy_split(&SampledFunction::zeros(g)).unwrap();
        assert_eq!(p.max_abs(), 0.0);
        assert_eq!(m.max_abs(), 0.0);
    }

    #[test]
    fn split_parts_add_back() {
        let g = make_grid(1, 8.0, 1024).unwrap();
        let f = SampledFunction::from_real_fn(g, DecayTag::SchwartzLike, |x| {
            (-PI * (x - 0.5) * (x - 0.5)).exp()
        });
        let (p, m) = hardy_split(&f).unwrap();
        let (fp, fm) = (inverse_ft(&p).unwrap(), inverse_ft(&m).unwrap());
        for j in 0..1024 {
            assert!((fp.at(j) + fm.at(j) - f.at(j)).norm() < 1e-8);
        }
    }

    #[test]
    fn upper_extension_values() {
        let f = one_sided(freq());
        let v = evaluate_upper(&f, HalfPlanePoint::new(0.0, 1.0)).unwrap();
        assert!((v - 1.0 / (4.0 * PI)).norm() < 1e-8);
        let v = evaluate_upper(&f, HalfPlanePoint::new(0.0, 0.0)).unwrap();
        assert!((v - 1.0 / (2.0 * PI)).norm() < 1e-8);
        for &(x, y) in &[(0.7, 0.3), (-2.0, 0.05), (1.5, 0.0)] {
            let z = c(x, y);
            let exact = 1.0 / (2.0 * PI * (1.0 - Complex64::i() * z));
            let v = evaluate_upper(&f, HalfPlanePoint::new(x, y)).unwrap();
            assert!((v - exact).norm() < 1e-8, "z={z}");
        }
        let z = Spectrum::zeros(freq(), SupportSpec::NonnegHalfline).unwrap();
        assert_eq!(evaluate_upper(&z, HalfPlanePoint::new(0.3, 2.0)).unwrap().norm(), 0.0);
    }

    #[test]
    fn upper_extension_is_the_abel_inverse() {
        let f = one_sided(freq());
        for &(x, t) in &[(0.0, 0.25), (-1.3, 0.5), (2.0, 1.0)] {
            let a = crate::spectral::abel_regularized_inverse(&f, t, x).unwrap();
            let b = evaluate_upper(&f, HalfPlanePoint::new(x, t)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn wrong_half_plane_is_an_error() {
        let f = one_sided(freq());
        assert!(matches!(
            evaluate_upper(&f, HalfPlanePoint::new(0.0, -0.1)),
            Err(Error::WrongHalfPlane { .. })
        ));
        assert!(matches!(
            evaluate_lower(&f, HalfPlanePoint::new(0.0, -0.1)),
            Err(Error::SupportMismatch { .. })
        ));
        let full = Spectrum::zeros(freq(), SupportSpec::FullLine).unwrap();
        assert!(evaluate_upper(&full, HalfPlanePoint::new(0.0, 1.0)).is_err());
    }

    #[test]
    fn lower_extension_mirrors_the_upper() {
        let g = freq();
        let lower =
            Spectrum::from_fn(g, SupportSpec::NonposHalfline, |xi| c((2.0 * PI * xi).exp(), 0.0))
                .unwrap();
        let v = evaluate_lower(&lower, HalfPlanePoint::new(0.0, -1.0)).unwrap();
        assert!((v - 1.0 / (4.0 * PI)).norm() < 1e-8, "{v}");
        let upper = Spectrum::from_fn(g, SupportSpec::NonnegHalfline, |xi| {
            c((-2.0 * PI * xi).exp() * (1.0 + xi), xi.sin())
        })
        .unwrap();
        let reflected = upper.conjugate_reflection().unwrap();
        for &(x, y) in &[(0.4, 0.5), (-1.0, 1.0), (2.0, 0.1)] {
            let up = evaluate_upper(&upper, HalfPlanePoint::new(x, y)).unwrap();
            let down = evaluate_lower(&reflected, HalfPlanePoint::new(x, -y)).unwrap();
            assert!((down - up.conj()).norm() < 1e-8);
        }
        let z = Spectrum::zeros(g, SupportSpec::NonposHalfline).unwrap();
        assert_eq!(evaluate_lower(&z, HalfPlanePoint::new(0.0, -1.0)).unwrap().norm(), 0.0);
    }

    #[test]
    fn cauchy_kernel_values() {
        let v = cauchy_kernel(Side::Upper, 1.0, 0.0).unwrap();
        assert!((v - 1.0 / (2.0 * PI)).norm() < 1e-15);
        let v = cauchy_kernel(Side::Upper, 1.0, 1.0).unwrap();
        assert!((v - c(1.0, 1.0) / (4.0 * PI)).norm() < 1e-15);
        for &(t, x) in &[(0.5, 0.0), (1.0, 2.0), (3.0, -1.0)] {
            let sum = cauchy_kernel(Side::Upper, t, x).unwrap()
                + cauchy_kernel(Side::Lower, t, x).unwrap();
            let p = crate::kernels::poisson_kernel(t, &[x]).unwrap();
            assert!((sum - p).norm() < 1e-15);
        }
        assert!(cauchy_kernel(Side::Lower, 0.0, 1.0).is_err());
    }

    #[test]
    fn cauchy_kernel_is_the_inverse_half_kernel() {
        // FT(A^+_t)(xi) = C^+_t(-xi) and FT(A^-_t)(xi) = C^-_t(-xi)
        let g = make_grid(1, 20.0, 8192).unwrap();
        for (family, side) in [
            (KernelFamily::AbelPlus, Side::Upper),
            (KernelFamily::AbelMinus, Side::Lower),
        ] {
            let k = KernelSpec::new(family, 1.0, 1).unwrap().sample(g).unwrap();
            let s = forward_ft(&k).unwrap();
            for (j, xi) in s.frequencies().into_iter().enumerate() {
                if xi.abs() <= 4.0 {
                    let expect = cauchy_kernel(side, 1.0, -xi).unwrap();
                    assert!((s.at(j) - expect).norm() < 1e-5, "xi={xi}");
                }
            }
        }
    }

    #[test]
    fn cauchy_representation_matches_the_extension() {
        let g = make_grid(1, 256.0, 1 << 14).unwrap();
        let p1 = poisson(g);
        let f = one_sided(freq());
        let v = cauchy_represent(&p1, Side::Upper, 1.0, 0.0).unwrap();
        let e = evaluate_upper(&f, HalfPlanePoint::new(0.0, 1.0)).unwrap();
        assert!((v - e).norm() < 1e-5, "{}", (v - e).norm());
        let z = SampledFunction::zeros(g);
        assert_eq!(cauchy_represent(&z, Side::Upper, 1.0, 0.0).unwrap().norm(), 0.0);
        assert!(cauchy_represent(&p1, Side::Lower, 0.0, 0.0).is_err());
    }

    #[test]
    fn cauchy_jump_correction() {
        // A_1 kinks at 0; its upper Cauchy integral is the extension of P_1 on xi >= 0
        let g = make_grid(1, 8.0, 2048).unwrap();
        let a = KernelSpec::new(KernelFamily::Abel, 1.0, 1).unwrap().sample(g).unwrap();
        let spec = Spectrum::from_fn(freq(), SupportSpec::NonnegHalfline, |xi| {
            c(1.0 / (PI * (1.0 + xi * xi)), 0.0)
        })
        .unwrap();
        for &x in &[0.0, 0.6] {
            let v = cauchy_represent(&a, Side::Upper, 0.5, x).unwrap();
            let e = evaluate_upper(&spec, HalfPlanePoint::new(x, 0.5)).unwrap();
            assert!((v - e).norm() < 1e-8, "{}", (v - e).norm());
        }
    }

    #[test]
    fn poisson_extension() {
        let g = make_grid(1, 200.0, 1 << 16).unwrap();
        let ext = poisson_extend(&poisson(g), 1.0).unwrap();
        let p2 = KernelSpec::new(KernelFamily::Poisson, 2.0, 1).unwrap();
        for (j, x) in g.coordinates().into_iter().enumerate() {
            if x.abs() <= 10.0 {
                let exact = p2.value(&[x]).unwrap();
                assert!((ext.at(j).re - exact).abs() <= 1e-4 * exact);
            }
        }
        let z = poisson_extend(&SampledFunction::zeros(g), 0.5).unwrap();
        assert_eq!(z.max_abs(), 0.0);
        assert!(poisson_extend(&z, 0.0).is_err());
    }

    #[test]
    fn poisson_extension_tends_to_the_boundary_values() {
        let g = make_grid(1, 100.0, 1 << 15).unwrap();
        let f = SampledFunction::from_real_fn(g, DecayTag::SchwartzLike, |x| (-PI * x * x).exp());
        let mut last = f64::INFINITY;
        for &t in &[0.2, 0.1, 0.05] {
            let ext = poisson_extend(&f, t).unwrap();
            let err = g
                .coordinates()
                .into_iter()
                .enumerate()
                .filter(|(_, x)| x.abs() <= 2.0)
                .map(|(j, _)| (ext.at(j) - f.at(j)).norm())
                .fold(0.0, f64::max);
            assert!(err < last);
            last = err;
        }
        // the sup sits at x = 0 where the gap is 1 - exp(pi t^2) erfc(sqrt(pi) t)
        let exact = 1.0 - (PI * 0.0025f64).exp() * statrs::function::erf::erfc(PI.sqrt() * 0.05);
        assert!((last - exact).abs() < 1e-4, "{last} vs {exact}");
    }

    #[test]
    fn cauchy_riemann_detects_holomorphy() {
        let f = one_sided(freq());
        let z = HalfPlanePoint::new(0.0, 1.0);
        let r1 = cr_residual(&f, z, 1e-3).unwrap();
        let r2 = cr_residual(&f, z, 5e-4).unwrap();
        assert!(r1 < 1e-5, "{r1}");
        assert!(r1 >= 3.0 * r2, "{r1} {r2}");
        let anti = cr_residual_with(|p| evaluate_upper(&f, p).map(|v| v.conj()), z, 1e-3).unwrap();
        assert!(anti >= 1e-2, "{anti}");
        let zero = Spectrum::zeros(freq(), SupportSpec::NonnegHalfline).unwrap();
        assert_eq!(cr_residual(&zero, z, 1e-3).unwrap(), 0.0);
        assert!(matches!(
            cr_residual(&f, HalfPlanePoint::new(0.0, 1e-3), 1e-3),
            Err(Error::StencilCrossesBoundary { .. })
        ));
    }

    #[test]
    fn field_sampling() {
        let f = one_sided(freq());
        let field = sample_field(&f, &[-1.0, 0.0, 1.0], &[0.5, 1.0]).unwrap();
        assert_eq!(field.values.len(), 6);
        assert_eq!(field.side, Side::Upper);
        let direct = evaluate_upper(&f, HalfPlanePoint::new(1.0, 0.5)).unwrap();
        assert_eq!(field.at(2, 0), direct);
        assert!(sample_field(&f, &[0.0], &[-0.5]).is_err());
        assert!(sample_field(&f, &[], &[1.0]).is_err());
    }
}
