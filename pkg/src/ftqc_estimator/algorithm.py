"""Algorithm-layer accounting for phase estimation over block encodings."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from ._numeric import ceil_tol
from .errors import EstimatorError

DEFAULT_ROTATION_T_COST = 30


class Variant(str, enum.Enum):
    DFTHC_BLISS_SA = "DFTHC_BLISS_SA"
    DF = "DF"


@dataclass(frozen=True)
class AlgorithmSpec:
    """Inputs of the algorithm layer.  Energies are in Hartree."""

    n_orbitals: int
    variant: Variant = Variant.DFTHC_BLISS_SA
    lambda_1norm: float | None = None
    epsilon_target: float = 1e-3
    overlap_gamma: float = 1.0
    rotation_t_cost: int = DEFAULT_ROTATION_T_COST

    def __post_init__(self):
        if not self.epsilon_target > 0:
            raise EstimatorError("epsilon_target must be positive", "algorithm")
        if not 0 < self.overlap_gamma <= 1:
            raise EstimatorError("overlap_gamma must lie in (0, 1]", "algorithm")
        if self.lambda_1norm is not None and not self.lambda_1norm > 0:
            raise EstimatorError("lambda_1norm must be positive", "algorithm")
        if self.rotation_t_cost < 0:
            raise EstimatorError("rotation_t_cost must be non-negative", "algorithm")

    @classmethod
    def from_dict(cls, doc):
        doc = dict(doc)
        if "variant" in doc:
            doc["variant"] = Variant(doc["variant"])
        return cls(**doc)

    def to_dict(self):
        return {
            "n_orbitals": self.n_orbitals,
            "variant": self.variant.value,
            "lambda_1norm": self.lambda_1norm,
            "epsilon_target": self.epsilon_target,
            "overlap_gamma": self.overlap_gamma,
            "rotation_t_cost": self.rotation_t_cost,
        }


def repetitions(lambda_1norm, epsilon):
    """Number of block-encoding repetitions, ``ceil(pi * lambda / (2 * epsilon))``."""
    if not (lambda_1norm > 0 and epsilon > 0):
        raise EstimatorError("repetitions needs positive lambda and epsilon", "algorithm")
    return ceil_tol(math.pi * lambda_1norm / (2 * epsilon))


def implied_rotation_t_cost(t_after, t_before, rotations):
    """T gates per rotation implied by before/after synthesis counts."""
    if rotations <= 0:
        raise EstimatorError("rotation count must be positive", "algorithm")
    return math.ceil((t_after - t_before) / rotations)


def total_t(profile, spec):
    blocks = profile.block_encodings
    if blocks is None:
        if spec.lambda_1norm is None:
            raise EstimatorError(
                f"profile {profile.label!r} has no block_encodings and no lambda to derive them", "algorithm")
        blocks = repetitions(spec.lambda_1norm, spec.epsilon_target)
    per_block = profile.t_per_block_encoding + profile.rotation_count_per_block * spec.rotation_t_cost
    return per_block * blocks


def apply_overlap(runtime_days, gamma):
    if not 0 < gamma <= 1:
        raise EstimatorError("overlap gamma must lie in (0, 1]", "algorithm")
    return runtime_days / gamma


def fit_power_exponent(series):
    """Least-squares slope of ln(t) against ln(n)."""
    if len(series) < 2:
        raise EstimatorError("need at least two points for a power-law fit", "algorithm")
    if any(n <= 0 or t <= 0 for n, t in series):
        raise EstimatorError("power-law fit needs positive values", "algorithm")
    xs = [math.log(n) for n, _ in series]
    ys = [math.log(t) for _, t in series]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        raise EstimatorError("power-law fit needs distinct sizes", "algorithm")
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx
