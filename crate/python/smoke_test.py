"""Quick checks of the harmonic extension module against closed forms."""

import cmath
import math

import harmonic


def close(a, b, tol):
    assert abs(a - b) <= tol, f"{a} vs {b}"


def main():
    grid = harmonic.Grid(40.0, 1 << 14)
    abel = harmonic.SampledFunction.kernel("abel", 1.0, grid)
    spectrum = harmonic.forward_ft(abel)
    worst = max(
        abs(v - 1.0 / (math.pi * (1.0 + xi * xi)))
        for xi, v in zip(spectrum.frequencies(), spectrum.values())
        if abs(xi) <= 4.0
    )
    close(worst, 0.0, 1e-6)
    print(f"abel kernel transform: max error {worst:.2e}")

    close(harmonic.abel_from_gaussians(1.0, [0.7]), math.exp(-2 * math.pi * 0.7), 1e-8)

    wide = harmonic.Grid(512.0, 1 << 15)
    x = wide.coordinates()
    gauss = harmonic.SampledFunction(wide, [math.exp(-math.pi * t * t) for t in x])
    report = harmonic.summability_verdict(gauss, kind="abel")
    close(report["limit"], 1.0, 1e-3)
    assert report["converged"]
    print(f"abel limit of the gaussian: {report['limit'].real:.6f}")

    freq = harmonic.Grid(16.0, 4096)
    upper = harmonic.Spectrum(
        freq,
        [math.exp(-2 * math.pi * xi) if xi >= 0 else 0.0 for xi in freq.coordinates()],
        support="nonneg",
    )
    z = complex(0.3, 0.5)
    value = harmonic.evaluate_upper(upper, z.real, z.imag)
    close(value, 1.0 / (2 * math.pi * (1 - 1j * z)), 1e-6)
    assert harmonic.cr_residual(upper, 0.0, 1.0) < 1e-5
    try:
        harmonic.evaluate_upper(upper, 0.0, -1.0)
    except harmonic.HarmonicError as e:
        print(f"lower point rejected: {e}")
    else:
        raise AssertionError("expected HarmonicError")

    band = harmonic.Grid(4.0, 2048)
    indicator = harmonic.Spectrum(band, [1.0 if abs(xi) <= 1.0 else 0.0 for xi in band.coordinates()], interval=(-1.0, 1.0))
    close(harmonic.evaluate_entire(indicator, 1j), math.sinh(2 * math.pi) / math.pi, 1e-8)
    points = [(a / 2, b / 2) for a in range(-6, 7) for b in range(-4, 5)]
    assert harmonic.check_pl_bound(indicator, 2 * math.pi, points)["pass"]
    assert not harmonic.check_pl_bound(indicator, math.pi, points)["pass"]
    sigma = harmonic.estimate_type(indicator)
    close(sigma, 2 * math.pi, 0.3)
    print(f"estimated type {sigma:.4f}, theoretical {harmonic.theoretical_type(indicator):.4f}")
    print("smoke test passed")


if __name__ == "__main__":
    main()
