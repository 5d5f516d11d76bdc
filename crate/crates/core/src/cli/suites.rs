//! The named suites. Each returns its checks and tables; nothing here touches disk.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::config::{ExperimentConfig, SuiteName};
use super::report::{field_table, Check, Table};
use crate::error::Result;
use crate::growth::{
    check_pl_bound, envelope_bound, estimate_type, evaluate_entire, lattice, linspace,
    theoretical_type, BoundMode, GrowthReport, TYPE_SAMPLES,
};
use crate::halfplane::{
    cauchy_represent, cr_residual, cr_residual_with, evaluate_upper, hardy_split, sample_field,
    HalfPlanePoint, Side,
};
use crate::kernels::{
    abel_from_gaussians, abel_kernel, half_kernel, half_kernel_ft, sphere_area, HalfSign,
    KernelFamily, KernelSpec, SUBORDINATION_POINTS, SUBORDINATION_U_MAX,
};
use crate::quad::half_line_de;
use crate::row;
use crate::sampled::{convolve, integrate, DecayTag, Grid, SampledFunction};
use crate::spectral::{abel_regularized_inverse, forward_ft, inverse_ft, Spectrum, SupportSpec};
use crate::summability::{summability_verdict, MeanKind};

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutput {
    pub suite: SuiteName,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
}

pub fn run_suite(suite: SuiteName, config: &ExperimentConfig) -> SuiteOutput {
    let mut out = SuiteOutput {
        suite,
        checks: Vec::new(),
        tables: Vec::new(),
    };
    let parts: Vec<(u8, &str, Part)> = match suite {
        SuiteName::Kernels => vec![
            (1, "poisson_normalization", poisson_normalization as Part),
            (2, "abel_transform_identity", abel_transform),
            (3, "half_line_transforms", half_line_transforms),
            (4, "gaussian_subordination", subordination),
            (5, "poisson_semigroup", semigroup),
        ],
        SuiteName::Summability => vec![(6, "abel_summation", abel_summation)],
        SuiteName::Inversion => vec![(7, "poisson_convolution_inverse", inversion)],
        SuiteName::Hardy => vec![
            (8, "hardy_split_partition", split_partition),
            (9, "representation_agreement", representations),
            (10, "boundary_continuity", boundary_continuity),
            (11, "cauchy_riemann", cauchy_riemann),
        ],
        SuiteName::Growth => vec![
            (12, "growth_theorem", growth_theorem),
            (13, "envelope_bound", envelope),
            (14, "type_estimation", type_estimation),
        ],
        SuiteName::All => Vec::new(),
    };
    for (criterion, name, part) in parts {
        match part(config, &mut out.tables) {
            Ok(checks) => out.checks.extend(checks),
            Err(e) => out.checks.push(Check::failed(criterion, name, e.to_string())),
        }
    }
    out
}

type Part = fn(&ExperimentConfig, &mut Vec<Table>) -> Result<Vec<Check>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn max_of<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn gaussian(grid: Grid) -> SampledFunction {
    SampledFunction::from_real_fn(grid, DecayTag::SchwartzLike, |x| (-PI * x * x).exp())
}

fn kernel(family: KernelFamily, t: f64, grid: Grid) -> Result<SampledFunction> {
    KernelSpec::new(family, t, grid.dim())?.sample(grid)
}

const T_VALUES: [f64; 3] = [0.1, 1.0, 10.0];

fn poisson_normalization(config: &ExperimentConfig, tables: &mut Vec<Table>) -> Result<Vec<Check>> {
    let grid = config.kernels.normalization.build()?;
    let r = grid.half_width();
    let mut table = Table::new("poisson_normalization", &["n", "t", "method", "integral", "error"]);
    let mut checks = Vec::new();
    for &t in &T_VALUES {
        let spec = KernelSpec::new(KernelFamily::Poisson, t, 1)?;
        let lattice = integrate(&spec.sample(grid)?)?.re;
        let truncated = 2.0 / PI * (r / t).atan();
        let err = (lattice - truncated).abs().max((lattice + spec.tail_mass(r) - 1.0).abs());
        table.push(row![1usize, t, "lattice", lattice, err]);
        checks.push(Check::at_most(1, format!("poisson_normalization n=1 t={t}"), err, 1e-6));
    }
    for n in 2..=3 {
        for &t in &T_VALUES {
            let spec = KernelSpec::new(KernelFamily::Poisson, t, n)?;
            let est = half_line_de(
                |radius| {
                    let mut p = [0.0; 3];
                    p[0] = radius;
                    spec.value(&p[..n]).unwrap_or(0.0) * radius.powi(n as i32 - 1)
                },
                t,
            );
            let integral = sphere_area(n) * est.value;
            let err = (integral - 1.0).abs();
            table.push(row![n, t, "radial", integral, err]);
            checks.push(Check::at_most(1, format!("poisson_normalization n={n} t={t}"), err, 1e-6));
        }
    }
    tables.push(table);
    Ok(checks)
}

fn abel_transform(config: &ExperimentConfig, tables: &mut Vec<Table>) -> Result<Vec<Check>> {
    let grid = config.kernels.transform.build()?;
    let s = forward_ft(&kernel(KernelFamily::Abel, 1.0, grid)?)?;
    let p1 = KernelSpec::new(KernelFamily::Poisson, 1.0, 1)?;
    let mut table = Table::new("abel_transform", &["xi", "re", "im", "exact", "abs_err"]);
    let mut worst = 0.0f64;
    for (k, xi) in s.frequencies().into_iter().enumerate() {
        if xi.abs() <= 4.0 {
            let exact = p1.value(&[xi])?;
            let err = (s.at(k) - exact).norm();
            worst = worst.max(err);
            table.push(row![xi, s.at(k).re, s.at(k).im, exact, err]);
        }
    }
    tables.push(table);
    Ok(vec![Check::at_most(2, "abel_transform_identity t=1", worst, 1e-6)])
}

fn half_line_transforms(config: &ExperimentConfig, tables: &mut Vec<Table>) -> Result<Vec<Check>> {
    let grid = config.kernels.transform.build()?;
    let mut table = Table::new(
        "half_line_transforms",
        &["sign", "xi", "re", "im", "exact_re", "exact_im", "abs_err"],
    );
    let mut checks = Vec::new();
    for (family, sign) in [
        (KernelFamily::AbelPlus, HalfSign::Plus),
        (KernelFamily::AbelMinus, HalfSign::Minus),
    ] {
        let s = forward_ft(&kernel(family, 1.0, grid)?)?;
        let mut worst = 0.0f64;
        for (k, xi) in s.frequencies().into_iter().enumerate() {
            if xi.abs() <= 4.0 {
                let exact = half_kernel_ft(sign, 1.0, xi)?;
                let err = (s.at(k) - exact).norm();
                worst = worst.max(err);
                table.push(row![sign.label(), xi, s.at(k).re, s.at(k).im, exact.re, exact.im, err]);
            }
        }
        checks.push(Check::at_most(
            3,
            format!("half_line_transform sign={} t=1", sign.label()),
            worst,
            1e-4,
        ));
    }
    tables.push(table);
    let (mut conj, mut sum, mut space) = (0.0f64, 0.0f64, 0.0f64);
    for &t in &[0.5, 1.0, 2.0] {
        for xi in linspace(-4.0, 4.0, 161) {
            let p = half_kernel_ft(HalfSign::Plus, t, xi)?;
            let m = half_kernel_ft(HalfSign::Minus, t, xi)?;
            conj = conj.max((m - p.conj()).norm());
            let poisson = KernelSpec::new(KernelFamily::Poisson, t, 1)?.value(&[xi])?;
            sum = sum.max((p + m - poisson).norm());
            let whole = abel_kernel(t, &[xi])?;
            let parts = half_kernel(HalfSign::Plus, t, xi)? + half_kernel(HalfSign::Minus, t, xi)?;
            space = space.max(if xi == 0.0 { 0.0 } else { (parts - whole).abs() });
        }
    }
    checks.push(Check::at_most(3, "half_line_conjugacy", conj, 1e-12));
    checks.push(Check::at_most(3, "half_line_sum transform", sum, 1e-12));
    checks.push(Check::at_most(3, "half_line_sum kernel", space, 1e-12));
    Ok(checks)
}

fn subordination(_: &ExperimentConfig, tables: &mut Vec<Table>) -> Result<Vec<Check>> {
    let mut table = Table::new(
        "subordination",
        &["t", "x", "subordinated", "direct", "abs_err", "error_estimate"],
    );
    let mut checks = Vec::new();
    for &t in &[0.5, 1.0, 2.0] {
        let mut worst = 0.0f64;
        for x in linspace(-3.0, 3.0, 201) {
            let sub = abel_from_gaussians(t, &[x], SUBORDINATION_U_MAX, SUBORDINATION_POINTS)?;
            let direct = abel_kernel(t, &[x])?;
            let err = (sub.value - direct).abs();
            worst = worst.max(err);
            table.push(row![t, x, sub.value, direct, err, sub.error_estimate]);
        }
        checks.push(Check::at_most(4, format!("gaussian_subordination t={t}"), worst, 1e-8));
    }
    tables.push(table);
    Ok(checks)
}

fn semigroup(config: &ExperimentConfig, tables: &mut Vec<Table>) -> Result<Vec<Check>> {
    let grid = config.kernels.semigroup.build()?;
    let p1 = kernel(KernelFamily::Poisson, 1.0, grid)?;
    let conv = convolve(&p1, &p1)?;
    let p2 = KernelSpec::new(KernelFamily::Poisson, 2.0, 1)?;
    let mut table = Table::new("semigroup", &["x", "convolution", "p2", "rel_err"]);
    let mut worst = 0.0f64;
    for (j, x) in grid.coordinates().into_iter().enumerate() {
        if x.abs() <= 10.0 {
            let exact = p2.value(&[x])?;
            let rel = (conv.at(j) - exact).norm() / exact;
            worst = worst.max(rel);
            table.push(row![x, conv.at(j).re, exact, rel]);
        }
    }
    tables.push(table);
    Ok(vec![Check::at_most(5, "poisson_semigroup 1+1=2", worst, 1e-4)])
}

/// The summability witnesses with their integrals.
pub fn summability_witnesses(grid: Grid) -> Result<Vec<(&'static str, SampledFunction, f64)>> {
    Ok(vec![
        ("gaussian", gaussian(grid), 1.0),
        ("poisson", kernel(KernelFamily::Poisson, 1.0, grid)?, 1.0),
        ("abel", kernel(KernelFamily::Abel, 1.0, grid)?, 1.0 / PI),
    ])
}

fn abel_summation(config: &ExperimentConfig, tables: &mut Vec<Table>) -> Result<Vec<Check>> {
    let grid = config.summability.grid.build()?;
    let schedule = config.summability.schedule.build()?;
    let mut means = Table::new("means", &["witness", "kind", "t", "re", "im", "truncation"]);
    let mut limits = Table::new(
        "limits",
        &["witness", "kind", "method", "limit_re", "limit_im", "residual", "converged", "integral"],
    );
    let mut checks = Vec::new();
    for (name, h, integral) in summability_witnesses(grid)? {
        let mut estimates = Vec::new();
        for kind in [MeanKind::Abel, MeanKind::Gauss] {
            let r = summability_verdict(&h, kind, &schedule)?;
            for ((t, m), tr) in r.t_values.iter().zip(&r.means).zip(&r.truncation) {
                means.push(row![name, kind.label(), *t, m.re, m.im, *tr]);
            }
            limits.push(row![
                name,
                kind.label(),
                r.method_used.label(),
                r.limit_estimate.re,
                r.limit_estimate.im,
                r.residual,
                r.converged,
                integral
            ]);
            let label = format!("abel_summation h={name} kind={}", kind.label());
            checks.push(Check::at_most(
                6,
                label.clone(),
                (r.limit_estimate - integral).norm(),
                1e-3,
            ));
            checks.push(Check::at_most(
                6,
                format!("{label} converged"),
                r.residual,
                schedule.convergence_tol(),
            ));
            estimates.push(r.limit_estimate);
        }
        checks.push(Check::at_most(
            6,
            format!("gauss_abel_agreement h={name}"),
            (estimates[0] - estimates[1]).norm(),
            2e-3,
        ));
    }
    tables.push(means);
    tables.push(limits);
    Ok(checks)
}

fn inversion(config: &ExperimentConfig, tables: &mut Vec<Table>) -> Result<Vec<Check>> {
    let grid = config.inversion.grid.build()?;
    let f = gaussian(grid);
    let spectrum = forward_ft(&f)?;
    let mut table = Table::new(
        "inversion",
        &["t", "x", "abel_re", "abel_im", "convolution_re", "convolution_im", "abs_diff"],
    );
    let mut checks = Vec::new();
    for &t in &[0.2, 0.1, 0.05] {
        let conv = convolve(&kernel(KernelFamily::Poisson, t, grid)?, &f)?;
        let mut worst = 0.0f64;
        for x in linspace(-2.0, 2.0, 11) {
            let j = grid
                .node_index(x)
                .ok_or(crate::error::Error::OffLatticeSupport(x))?;
            let a = abel_regularized_inverse(&spectrum, t, x)?;
            let diff = (a - conv.at(j)).norm();
            worst = worst.max(diff);
            table.push(row![t, x, a.re, a.im, conv.at(j).re, conv.at(j).im, diff]);
        }
        checks.push(Check::at_most(7, format!("poisson_convolution_inverse t={t}"), worst, 1e-5));
    }
    tables.push(table);
    Ok(checks)
}

/// Hardy witnesses: name, space samples, and the closed form of their `[0, inf)` spectrum.
pub struct HardyWitness {
    pub name: &'static str,
    pub function: SampledFunction,
    pub upper_spectrum: Spectrum,
}

pub fn hardy_witnesses(space: Grid, frequency: Grid) -> Result<Vec<HardyWitness>> {
    let one_sided = |f: fn(f64) -> f64| {
        Spectrum::from_fn(frequency, SupportSpec::NonnegHalfline, move |xi| c(f(xi), 0.0))
    };
    let double_pole = SampledFunction::from_fn(space, DecayTag::Integrable { tail: 0.0 }, |x| {
        let w = c(1.0, -x[0]);
        1.0 / (4.0 * PI * PI * w * w)
    });
    Ok(vec![
        HardyWitness {
            name: "poisson",
            function: kernel(KernelFamily::Poisson, 1.0, space)?,
            upper_spectrum: one_sided(|xi| (-2.0 * PI * xi).exp())?,
        },
        HardyWitness {
            name: "gaussian",
            function: gaussian(space),
            upper_spectrum: one_sided(|xi| (-PI * xi * xi).exp())?,
        },
        HardyWitness {
            name: "double_pole",
            function: double_pole,
            upper_spectrum: one_sided(|xi| xi * (-2.0 * PI * xi).exp())?,
        },
    ])
}

fn hardy_grids(config: &ExperimentConfig) -> Result<(Grid, Grid)> {
    Ok((config.hardy.space.build()?, config.hardy.frequency.build()?))
}

fn split_partition(config: &ExperimentConfig, tables: &mut Vec<Table>) -> Result<Vec<Check>> {
    let (space, frequency) = hardy_grids(config)?;
    let mut table = Table::new("split", &["witness", "max_abs_err"]);
    let mut checks = Vec::new();
    for w in hardy_witnesses(space, frequency)? {
        let (plus, minus) = hardy_split(&w.function)?;
        let (fp, fm) = (inverse_ft(&plus)?, inverse_ft(&minus)?);
        let err = max_of((0..space.len()).map(|j| (fp.at(j) + fm.at(j) - w.function.at(j)).norm()));
        table.push(row![w.name, err]);
        checks.push(Check::at_most(8, format!("hardy_split_partition f={}", w.name), err, 1e-8));
    }
    tables.push(table);
    Ok(checks)
}

fn representations(config: &ExperimentConfig, tables: &mut Vec<Table>) -> Result<Vec<Check>> {
    let (space, frequency) = hardy_grids(config)?;
    let mut table = Table::new(
        "representations",
        &[
            "witness", "t", "x", "spectral_re", "spectral_im", "abel_re", "abel_im", "cauchy_re",
            "cauchy_im", "max_pairwise",
        ],
    );
    let mut checks = Vec::new();
    for w in hardy_witnesses(space, frequency)? {
        let mut worst = 0.0f64;
        for &t in &[0.25, 0.5, 1.0] {
            for x in linspace(-2.0, 2.0, 25) {
                let s = evaluate_upper(&w.upper_spectrum, HalfPlanePoint::new(x, t))?;
                let a = abel_regularized_inverse(&w.upper_spectrum, t, x)?;
                let k = cauchy_represent(&w.function, Side::Upper, t, x)?;
                let d = (s - a).norm().max((s - k).norm()).max((a - k).norm());
                worst = worst.max(d);
                table.push(row![w.name, t, x, s.re, s.im, a.re, a.im, k.re, k.im, d]);
            }
        }
        checks.push(Check::at_most(
            9,
            format!("representation_agreement f={}", w.name),
            worst,
            1e-5,
        ));
    }
    tables.push(table);
    Ok(checks)
}

fn boundary_continuity(config: &ExperimentConfig, tables: &mut Vec<Table>) -> Result<Vec<Check>> {
    let (space, frequency) = hardy_grids(config)?;
    let mut table = Table::new("boundary", &["witness", "t", "sup_abs_diff"]);
    let mut checks = Vec::new();
    let xs = linspace(-2.0, 2.0, 81);
    for w in hardy_witnesses(space, frequency)?
        .into_iter()
        .filter(|w| w.name != "gaussian")
    {
        let boundary: Vec<Complex64> = xs
            .iter()
            .map(|&x| evaluate_upper(&w.upper_spectrum, HalfPlanePoint::new(x, 0.0)))
            .collect::<Result<_>>()?;
        let mut sups = Vec::new();
        for &t in &[0.2, 0.1, 0.05, 0.025] {
            let mut sup = 0.0f64;
            for (x, b) in xs.iter().zip(&boundary) {
                let v = evaluate_upper(&w.upper_spectrum, HalfPlanePoint::new(*x, t))?;
                sup = sup.max((v - b).norm());
            }
            table.push(row![w.name, t, sup]);
            sups.push(sup);
        }
        let rise = sups.windows(2).map(|p| p[1] - p[0]).fold(f64::NEG_INFINITY, f64::max);
        checks.push(Check::at_most(
            10,
            format!("boundary_continuity f={} monotone", w.name),
            rise,
            0.0,
        ));
        checks.push(Check::at_most(
            10,
            format!("boundary_continuity f={} t=0.025", w.name),
            *sups.last().expect("four heights"),
            1e-2,
        ));
    }
    tables.push(table);
    Ok(checks)
}

fn cauchy_riemann(config: &ExperimentConfig, tables: &mut Vec<Table>) -> Result<Vec<Check>> {
    let frequency = config.hardy.frequency.build()?;
    let spectrum = Spectrum::from_fn(frequency, SupportSpec::NonnegHalfline, |xi| {
        c((-2.0 * PI * xi).exp(), 0.0)
    })?;
    let z = HalfPlanePoint::new(0.0, 1.0);
    let r1 = cr_residual(&spectrum, z, 1e-3)?;
    let r2 = cr_residual(&spectrum, z, 5e-4)?;
    let anti = cr_residual_with(|p| evaluate_upper(&spectrum, p).map(|v| v.conj()), z, 1e-3)?;
    let mut table = Table::new("cauchy_riemann", &["field", "h", "residual"]);
    table.push(row!["holomorphic", 1e-3, r1]);
    table.push(row!["holomorphic", 5e-4, r2]);
    table.push(row!["conjugated", 1e-3, anti]);
    tables.push(table);
    let field = sample_field(
        &spectrum,
        &linspace(-2.0, 2.0, 21),
        &[0.25, 0.5, 0.75, 1.0],
    )?;
    tables.push(field_table("field", &field));
    Ok(vec![
        Check::at_most(11, "cauchy_riemann residual h=1e-3", r1, 1e-5),
        Check::at_least(11, "cauchy_riemann conjugated detector", anti, 1e-2),
        Check::at_least(11, "cauchy_riemann halving gain", r1 / r2, 3.0),
    ])
}

/// Growth witnesses on the interval supports.
pub fn growth_spectra(frequency: Grid) -> Result<Vec<(&'static str, Spectrum)>> {
    let one = |_: f64| c(1.0, 0.0);
    let h = frequency.spacing();
    Ok(vec![
        ("indicator_sym", Spectrum::from_fn(frequency, SupportSpec::interval(-1.0, 1.0)?, one)?),
        ("indicator_half", Spectrum::from_fn(frequency, SupportSpec::interval(0.0, 0.5)?, one)?),
        (
            "bump",
            Spectrum::from_fn(frequency, SupportSpec::interval(-1.0, 1.0)?, |xi| {
                c(1.0 - xi * xi, 0.0)
            })?,
        ),
        (
            "spike",
            Spectrum::from_fn(frequency, SupportSpec::interval(0.0, 0.0)?, move |_| c(1.0 / h, 0.0))?,
        ),
    ])
}

fn growth_lattice(config: &ExperimentConfig) -> Vec<(f64, f64)> {
    let g = &config.growth;
    let nx = (2.0 * g.x_max / g.lattice_step).round() as usize + 1;
    let ny = (2.0 * g.y_max / g.lattice_step).round() as usize + 1;
    lattice(&linspace(-g.x_max, g.x_max, nx), &linspace(-g.y_max, g.y_max, ny))
}

fn growth_table(name: &str, report: &GrowthReport) -> Table {
    let mut t = Table::new(name, &["x", "y", "abs_f", "envelope", "margin"]);
    for ((p, v), e) in report.points.iter().zip(&report.abs_values).zip(&report.envelopes) {
        t.push(row![p.0, p.1, *v, *e, v / e - 1.0]);
    }
    t
}

fn growth_theorem(config: &ExperimentConfig, tables: &mut Vec<Table>) -> Result<Vec<Check>> {
    let g = &config.growth;
    let frequency = g.frequency.build()?;
    let spectra = growth_spectra(frequency)?;
    let indicator = &spectra[0].1;
    let points = growth_lattice(config);
    let mode = BoundMode::Measured {
        half_width: g.bound_half_width,
        step: g.bound_step,
    };
    let at_type = check_pl_bound(indicator, 2.0 * PI, mode, &points, g.tol)?;
    let below = check_pl_bound(indicator, PI, BoundMode::Supplied { b: at_type.b }, &points, g.tol)?;
    tables.push(growth_table("growth", &at_type));
    tables.push(growth_table("growth_sigma_pi", &below));
    let mut bound = Table::new("bound", &["sigma", "b", "b_window_gap", "max_margin_violation", "pass"]);
    for r in [&at_type, &below] {
        bound.push(row![r.sigma, r.b, r.b_window_gap, r.max_margin_violation, r.pass]);
    }
    tables.push(bound);
    let fi = evaluate_entire(indicator, c(0.0, 1.0))?.norm();
    let fi_exact = (2.0 * PI).sinh() / PI;
    let env = envelope_bound(indicator, 1.0)?;
    let env_exact = 2.0 * (2.0 * PI).exp();
    Ok(vec![
        Check::at_most(12, "growth_theorem sigma=2pi", at_type.max_margin_violation, g.tol),
        Check::at_least(12, "growth_theorem sigma=pi violation", below.max_margin_violation, g.tol),
        Check::at_most(12, "growth_theorem |f(i)|", (fi - fi_exact).abs() / fi_exact, 1e-4),
        Check::at_most(12, "growth_theorem envelope y=1", (env - env_exact).abs() / env_exact, 1e-4),
    ])
}

fn envelope(config: &ExperimentConfig, tables: &mut Vec<Table>) -> Result<Vec<Check>> {
    let frequency = config.growth.frequency.build()?;
    let points = growth_lattice(config);
    let mut table = Table::new("envelope", &["spectrum", "max_ratio"]);
    let mut checks = Vec::new();
    for (name, s) in growth_spectra(frequency)? {
        let mut worst = f64::NEG_INFINITY;
        for &(x, y) in &points {
            let v = evaluate_entire(&s, c(x, y))?.norm();
            worst = worst.max(v / envelope_bound(&s, y)?);
        }
        table.push(row![name, worst]);
        checks.push(Check::at_most(13, format!("envelope_bound f={name}"), worst - 1.0, 1e-8));
    }
    tables.push(table);
    Ok(checks)
}

fn type_estimation(config: &ExperimentConfig, tables: &mut Vec<Table>) -> Result<Vec<Check>> {
    let frequency = config.growth.frequency.build()?;
    let mut table = Table::new("types", &["spectrum", "estimate", "theoretical"]);
    let mut checks = Vec::new();
    for (name, s) in growth_spectra(frequency)? {
        let est = estimate_type(&s, &TYPE_SAMPLES)?;
        let exact = theoretical_type(&s)?;
        table.push(row![name, est, exact]);
        if name.starts_with("indicator") {
            checks.push(Check::at_most(
                14,
                format!("type_estimation f={name}"),
                (est - exact).abs(),
                0.3,
            ));
        }
    }
    tables.push(table);
    Ok(checks)
}
