//! Quadrature building blocks shared by the lattice operations.
//!
//! Three corrections to the plain equal-weight lattice sum live here:
//!
//! - Gregory end weights, used when an integral over lattice samples starts or stops
//!   at a node where the integrand is not smooth across (a support edge, or the kink
//!   of the Abel kernel at the origin). End corrections come from finite differences
//!   of the samples, so nothing beyond the samples is needed.
//! - Euler–Maclaurin jump corrections, used when a sampled function declares a
//!   [`Breakpoint`](crate::sampled::Breakpoint) with one-sided derivative jets. These
//!   stay valid inside FFT-based transforms, where a finite-difference stencil of the
//!   oscillating integrand would not be.
//! - An exp-sinh double-exponential rule on `[0, inf)` for radial integrals.

use num_complex::Complex64;

/// Order of the Gregory end correction used by lattice segment rules.
pub const ENDPOINT_ORDER: usize = 6;

// Gregory coefficients G_2, G_3, ... of x / ln(1 + x).
const GREGORY: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 24.0,
    19.0 / 720.0,
    -3.0 / 160.0,
    863.0 / 60480.0,
    -275.0 / 24192.0,
    33953.0 / 3628800.0,
];

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Weights of the Gregory rule for the first `order + 1` nodes from an endpoint.
///
/// Nodes further in carry weight 1. `order = 0` is the trapezoid rule. All weights are
/// positive for `order <= 7`.
pub fn gregory_weights(order: usize) -> Vec<f64> {
    assert!(order <= GREGORY.len(), "Gregory order {order} not tabulated");
    let mut w = vec![1.0; order + 1];
    w[0] = 0.5;
    for k in 1..=order {
        for (j, wj) in w.iter_mut().enumerate().take(k + 1) {
            let sign = if (k - j) % 2 == 0 { 1.0 } else { -1.0 };
            *wj += GREGORY[k - 1] * sign * binomial(k, j);
        }
    }
    w
}

/// Coefficients `c_1..c_m` with `f(0) ~ sum c_k f(k)`, exact for polynomials of degree
/// `m - 1`.
pub fn extrapolation_coefficients(m: usize) -> Vec<f64> {
    (1..=m)
        .map(|k| {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sign * binomial(m, k)
        })
        .collect()
}

/// How a lattice segment rule treats one of its end nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    /// The integrand stops at this node and the sample there is its one-sided limit.
    Closed,
    /// The integrand stops at this node but the sample there does not carry the
    /// one-sided limit; the limit is extrapolated from the interior samples.
    Open,
    /// The segment runs off the lattice; the integrand is assumed to have decayed.
    Free,
}

/// Quadrature weights (in units of the lattice spacing) for `len` consecutive nodes.
pub fn segment_weights(len: usize, lo: End, hi: End) -> Vec<f64> {
    if len == 0 {
        return Vec::new();
    }
    if len == 1 {
        // a lone node stands for its own cell
        let open = lo == End::Open || hi == End::Open;
        return vec![if open { 0.0 } else { 1.0 }];
    }
    let corrected = [lo, hi].iter().filter(|e| **e != End::Free).count();
    let opens = [lo, hi].iter().filter(|e| **e == End::Open).count();
    // each corrected end uses order+1 nodes, an open end one more for extrapolation
    let budget = len.saturating_sub(opens);
    let order = if corrected == 0 {
        0
    } else {
        (budget / (2 * corrected)).saturating_sub(1).min(ENDPOINT_ORDER)
    };
    let mut w = vec![1.0; len];
    let apply = |w: &mut Vec<f64>, end: End, forward: bool| {
        if end == End::Free {
            return;
        }
        let idx = |k: usize| if forward { k } else { len - 1 - k };
        let g = gregory_weights(order);
        for (k, gk) in g.iter().enumerate() {
            w[idx(k)] += gk - 1.0;
        }
        if end == End::Open {
            let w0 = w[idx(0)];
            w[idx(0)] = 0.0;
            for (k, c) in extrapolation_coefficients(order + 1).iter().enumerate() {
                w[idx(k + 1)] += w0 * c;
            }
        }
    };
    apply(&mut w, lo, true);
    apply(&mut w, hi, false);
    w
}

/// Value and first three derivatives of a function at a point, from one side.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet(pub [Complex64; 4]);

impl Jet {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(v0: Complex64, v1: Complex64, v2: Complex64, v3: Complex64) -> Self {
        Jet([v0, v1, v2, v3])
    }

    pub fn real(v: [f64; 4]) -> Self {
        Jet(v.map(|x| Complex64::new(x, 0.0)))
    }

    /// Jet of `value * exp(rate * (x - x0))` at `x0`.
    pub fn exponential(value: Complex64, rate: Complex64) -> Self {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        let mut acc = value;
        for o in out.iter_mut() {
            *o = acc;
            acc *= rate;
        }
        Jet(out)
    }

    pub fn value(&self) -> Complex64 {
        self.0[0]
    }

    /// Leibniz product rule up to third order.
    pub fn product(&self, other: &Jet) -> Jet {
        let (a, b) = (&self.0, &other.0);
        Jet([
            a[0] * b[0],
            a[1] * b[0] + a[0] * b[1],
            a[2] * b[0] + 2.0 * a[1] * b[1] + a[0] * b[2],
            a[3] * b[0] + 3.0 * a[2] * b[1] + 3.0 * a[1] * b[2] + a[0] * b[3],
        ])
    }

    pub fn add(&self, other: &Jet) -> Jet {
        let mut out = self.0;
        for (o, v) in out.iter_mut().zip(other.0) {
            *o += v;
        }
        Jet(out)
    }

    pub fn scale(&self, c: Complex64) -> Jet {
        Jet(self.0.map(|v| v * c))
    }
}

/// Euler–Maclaurin correction for a lattice node where the integrand jumps.
///
/// `sample` is the value the lattice sum used at the node; `left` and `right` are the
/// one-sided jets of the integrand there. Adding the result to `h * sum(samples)`
/// removes the O(h) and O(h^2) errors of the jump and the O(h^4) error of the third
/// derivative jump.
pub fn jump_correction(h: f64, sample: Complex64, left: &Jet, right: &Jet) -> Complex64 {
    let (l, r) = (&left.0, &right.0);
    let midpoint = 0.5 * (l[0] + r[0]);
    h * (midpoint - sample) + h * h / 12.0 * (r[1] - l[1]) - h.powi(4) / 720.0 * (r[3] - l[3])
}

/// Neumaier-compensated accumulator for complex sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier(acc: &mut (f64, f64), x: f64) {
    let (sum, comp) = acc;
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, z.re);
        neumaier(&mut self.im, z.im);
    }

    pub fn total(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

pub fn compensated_sum<I: IntoIterator<Item = Complex64>>(items: I) -> Complex64 {
    let mut acc = CompensatedSum::default();
    for z in items {
        acc.add(z);
    }
    acc.total()
}

pub fn compensated_sum_real<I: IntoIterator<Item = f64>>(items: I) -> f64 {
    let mut acc = (0.0, 0.0);
    for x in items {
        neumaier(&mut acc, x);
    }
    acc.0 + acc.1
}

/// Result of a quadrature together with its own error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// `int_0^inf f(r) dr` by the exp-sinh rule `r = scale * exp(pi/2 sinh s)`.
///
/// `scale` should be the length scale where `f` does its work; algebraic tails as
/// slow as `r^-2` are handled. The error estimate compares step `1/64` with `1/32`.
pub fn half_line_de<F: Fn(f64) -> f64>(f: F, scale: f64) -> Estimate {
    const STEP: f64 = 1.0 / 64.0;
    const REACH: f64 = 4.5;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let steps = (REACH / STEP) as i64;
    let mut fine = (0.0, 0.0);
    let mut coarse = (0.0, 0.0);
    for k in -steps..=steps {
        let s = k as f64 * STEP;
        let e = (half_pi * s.sinh()).exp();
        let r = scale * e;
        let dr = scale * half_pi * s.cosh() * e;
        let v = f(r) * dr;
        if !v.is_finite() {
            continue;
        }
        neumaier(&mut fine, v);
        if k % 2 == 0 {
            neumaier(&mut coarse, v);
        }
    }
    let fine = (fine.0 + fine.1) * STEP;
    let coarse = (coarse.0 + coarse.1) * 2.0 * STEP;
    Estimate {
        value: fine,
        error: (fine - coarse).abs(),
    }
}
