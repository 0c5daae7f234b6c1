"""Ordinary least-squares scaling laws for runtime against system size."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import EstimatorError

# coefficients quoted with the published runtime tables; they are kept for
# side-by-side reporting, not used by the fits
PUBLISHED_LINEAR = (0.0818, -3.51)        # slope per orbital, intercept in days
PUBLISHED_EXPONENTIAL = (0.0465, 0.02763)  # rate per orbital, prefactor in days


class FitKind(str, enum.Enum):
    LINEAR = "linear"
    EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class ScalingFit:
    kind: FitKind
    slope_or_rate: float
    intercept_or_prefactor: float
    r_squared: float
    points: tuple

    def __call__(self, x):
        if self.kind is FitKind.LINEAR:
            return self.slope_or_rate * x + self.intercept_or_prefactor
        return self.intercept_or_prefactor * math.exp(self.slope_or_rate * x)

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "slope_or_rate": self.slope_or_rate,
            "intercept_or_prefactor": self.intercept_or_prefactor,
            "r_squared": self.r_squared,
            "points": [list(p) for p in self.points],
        }


def _ols(xs, ys):
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        raise EstimatorError("x values are all equal; slope undefined", "fit")
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx
    intercept = my - slope * mx
    ss_tot = sum((y - my) ** 2 for y in ys)
    ss_res = sum((y - slope * x - intercept) ** 2 for x, y in zip(xs, ys))
    r2 = 1.0 if ss_tot == 0 else max(0.0, min(1.0, 1 - ss_res / ss_tot))
    return slope, intercept, r2


def _points(points):
    pts = tuple((float(x), float(y)) for x, y in points)
    if len(pts) < 2:
        raise EstimatorError("need at least two points to fit", "fit")
    return pts


def fit_linear(points):
    pts = _points(points)
    slope, intercept, r2 = _ols([p[0] for p in pts], [p[1] for p in pts])
    return ScalingFit(FitKind.LINEAR, slope, intercept, r2, pts)


def fit_exponential(points):
    """Fit ``y = a * exp(b x)`` by least squares on ``ln y``.

    ``r_squared`` is reported in log space, where the fit is performed.
    """
    pts = _points(points)
    if any(y <= 0 for _, y in pts):
        raise EstimatorError("exponential fit needs positive y values", "fit")
    rate, log_a, r2 = _ols([p[0] for p in pts], [math.log(p[1]) for p in pts])
    return ScalingFit(FitKind.EXPONENTIAL, rate, math.exp(log_a), r2, pts)


def fit(kind, points):
    kind = FitKind(kind)
    return fit_linear(points) if kind is FitKind.LINEAR else fit_exponential(points)


def published_fit(kind):
    kind = FitKind(kind)
    if kind is FitKind.LINEAR:
        slope, intercept = PUBLISHED_LINEAR
        return ScalingFit(kind, slope, intercept, float("nan"), ())
    rate, prefactor = PUBLISHED_EXPONENTIAL
    return ScalingFit(kind, rate, prefactor, float("nan"), ())


def fit_report(kind, points, extrapolate_at=(250, 1000)):
    """Fit, extrapolate, and compare with the published coefficients."""
    ours = fit(kind, points)
    ref = published_fit(kind)
    report = {
        "fit": ours.to_dict(),
        "extrapolation": {str(x): ours(x) for x in extrapolate_at},
        "published": {
            "slope_or_rate": ref.slope_or_rate,
            "intercept_or_prefactor": ref.intercept_or_prefactor,
            "extrapolation": {str(x): ref(x) for x in extrapolate_at},
            "at_input_points": {str(x): ref(x) for x, _ in ours.points},
        },
    }
    worst = max(abs(ref(x) - y) / abs(y) for x, y in ours.points if y != 0)
    report["published"]["max_relative_deviation_at_inputs"] = worst
    if worst > 0.05:
        report["published"]["mismatch"] = (
            f"published coefficients miss the input points by up to {worst:.0%}; "
            "the fitted coefficients above are the least-squares solution")
    return report


def extrapolate_to_zero(points):
    """Intercept of a linear fit of energy against perturbative correction."""
    return fit_linear(points).intercept_or_prefactor
