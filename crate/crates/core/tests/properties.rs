use harmonic_core::growth::{evaluate_entire, envelope_bound};
use harmonic_core::spectral::{forward_ft, project_spectrum};
use harmonic_core::summability::abel_mean;
use harmonic_core::{make_grid, Complex64, DecayTag, SampledFunction, Spectrum, SupportSpec};
use proptest::prelude::*;

fn bump(center: f64, width: f64) -> impl Fn(f64) -> f64 {
    move |x| (-std::f64::consts::PI * ((x - center) / width).powi(2)).exp()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transform_is_linear(a in -3.0..3.0f64, b in -3.0..3.0f64, c0 in -2.0..2.0f64, w in 0.5..2.0f64) {
        let grid = make_grid(1, 20.0, 1024).unwrap();
        let f = SampledFunction::from_real_fn(grid, DecayTag::SchwartzLike, bump(c0, w));
        let g = SampledFunction::from_real_fn(grid, DecayTag::SchwartzLike, bump(-c0, 1.0));
        let (alpha, beta) = (Complex64::new(a, 0.5), Complex64::new(b, -1.0));
        let lhs = forward_ft(&f.linear_combination(alpha, &g, beta).unwrap()).unwrap();
        let (ff, fg) = (forward_ft(&f).unwrap(), forward_ft(&g).unwrap());
        for k in 0..grid.len() {
            let rhs = alpha * ff.at(k) + beta * fg.at(k);
            prop_assert!((lhs.at(k) - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn abel_mean_of_nonnegative_function_decreases(c0 in -3.0..3.0f64, w in 0.3..2.0f64, t in 0.01..1.0f64) {
        let grid = make_grid(1, 64.0, 4096).unwrap();
        let h = SampledFunction::from_real_fn(grid, DecayTag::SchwartzLike, bump(c0, w));
        let near = abel_mean(&h, t).unwrap().re;
        let far = abel_mean(&h, 2.0 * t).unwrap().re;
        prop_assert!(far <= near + 1e-12);
        prop_assert!(near <= w + 1e-9);
    }

    #[test]
    fn half_line_projections_partition(shift in -1.0..1.0f64) {
        let grid = make_grid(1, 8.0, 512).unwrap();
        let s = Spectrum::from_fn(grid, SupportSpec::FullLine, |xi| {
            Complex64::new(bump(shift, 1.0)(xi), xi)
        })
        .unwrap();
        let p = project_spectrum(&s, SupportSpec::NonnegHalfline).unwrap();
        let q = project_spectrum(&s, SupportSpec::NonposHalfline).unwrap();
        for k in 0..grid.len() {
            prop_assert_eq!(p.at(k) + q.at(k), s.at(k));
            prop_assert!(p.at(k) == Complex64::new(0.0, 0.0) || q.at(k) == Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn entire_extension_stays_under_envelope(x in -6.0..6.0f64, y in -4.0..4.0f64, a in -2.0..0.0f64, b in 0.0..2.0f64) {
        let grid = make_grid(1, 4.0, 1024).unwrap();
        let step = grid.spacing();
        let (a, b) = ((a / step).round() * step, (b / step).round() * step);
        let s = Spectrum::from_fn(grid, SupportSpec::interval(a, b).unwrap(), |xi| {
            Complex64::new(xi.cos(), xi)
        })
        .unwrap();
        let v = evaluate_entire(&s, Complex64::new(x, y)).unwrap().norm();
        prop_assert!(v <= envelope_bound(&s, y).unwrap() * (1.0 + 1e-12));
    }
}
