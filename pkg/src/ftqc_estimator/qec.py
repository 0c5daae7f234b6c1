"""Surface-code error model, code-distance solver and magic-state factories."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import EstimatorError

MAX_DISTANCE = 99
DEFAULT_FAILURE_BUDGET = 1e-2

# cultivation output error: 4e-12 at p = 1e-4, extrapolated from 4e-11 at p = 5e-4
_CULT_REF_P = 1e-4
_CULT_REF_ERR = 4e-12
_CULT_HIGH_P = 5e-4
_CULT_HIGH_ERR = 4e-11
CULTIVATION_QUBITS_PER_ATTEMPT = 460
CULTIVATION_PARALLEL_ATTEMPTS = 20


class Platform(str, enum.Enum):
    ION_TRAP = "ion_trap"
    NEUTRAL_ATOM_CONVENTIONAL = "neutral_atom_conventional"
    NEUTRAL_ATOM_ERASURE = "neutral_atom_erasure"


class FactoryKind(str, enum.Enum):
    DISTILLATION = "distillation"
    CULTIVATION = "cultivation"


@dataclass(frozen=True)
class CodeParameters:
    physical_error_rate: float
    threshold: float
    prefactor_A: float = 0.1

    def __post_init__(self):
        if not 0 < self.physical_error_rate < self.threshold < 1:
            raise EstimatorError(
                f"need 0 < p ({self.physical_error_rate}) < p_th ({self.threshold}) < 1", "qec")
        if not self.prefactor_A > 0:
            raise EstimatorError("prefactor must be positive", "qec")

    def to_dict(self):
        return {"physical_error_rate": self.physical_error_rate,
                "threshold": self.threshold, "prefactor_A": self.prefactor_A}


@dataclass(frozen=True)
class FactorySpec:
    kind: FactoryKind
    physical_qubits_per_factory: int
    cycles_per_magic_state: float
    output_error: float
    parallel_attempts: int = 1
    warnings: tuple = field(default=())

    def __post_init__(self):
        if self.physical_qubits_per_factory <= 0:
            raise EstimatorError("factory needs physical qubits", "qec")
        if not 0 < self.output_error < 1:
            raise EstimatorError("factory output error must lie in (0, 1)", "qec")

    def to_dict(self):
        return {"kind": self.kind.value,
                "physical_qubits_per_factory": self.physical_qubits_per_factory,
                "cycles_per_magic_state": self.cycles_per_magic_state,
                "output_error": self.output_error,
                "parallel_attempts": self.parallel_attempts,
                "warnings": list(self.warnings)}


def _check_distance(d):
    if d < 3 or d % 2 == 0:
        raise EstimatorError(f"code distance must be odd and >= 3, got {d}", "qec")


def logical_error_per_cycle(c, d):
    """``A * (p / p_th) ** ((d + 1) / 2)`` per logical qubit per cycle."""
    _check_distance(d)
    return c.prefactor_A * (c.physical_error_rate / c.threshold) ** ((d + 1) // 2)


def min_distance(c, volume, failure_budget=DEFAULT_FAILURE_BUDGET):
    """Smallest odd distance keeping ``volume`` logical qubit-cycles under budget."""
    if volume < 1:
        raise EstimatorError("logical volume must be >= 1", "qec")
    if not 0 < failure_budget < 1:
        raise EstimatorError("failure budget must lie in (0, 1)", "qec")
    # solve (p/p_th)^k <= budget / (A V) for k = (d+1)/2 in closed form, then
    # nudge by one step either way to absorb rounding in the logarithms
    ratio = c.physical_error_rate / c.threshold
    k = math.ceil(math.log(failure_budget / (c.prefactor_A * volume)) / math.log(ratio))
    d = max(3, 2 * k - 1)

    def ok(dist):
        return logical_error_per_cycle(c, dist) * volume <= failure_budget

    while d > 3 and ok(d - 2):
        d -= 2
    while not ok(d):
        d += 2
        if d > MAX_DISTANCE:
            raise EstimatorError(
                f"no distance <= {MAX_DISTANCE} meets budget {failure_budget} for volume {volume:.3g}"
                " (saturated)", "qec")
    if d > MAX_DISTANCE:
        raise EstimatorError(f"required distance {d} exceeds {MAX_DISTANCE} (saturated)", "qec")
    return d


def cultivation_output_error(p):
    if p <= _CULT_REF_P:
        return _CULT_REF_ERR
    slope = math.log(_CULT_HIGH_ERR / _CULT_REF_ERR) / math.log(_CULT_HIGH_P / _CULT_REF_P)
    return _CULT_REF_ERR * (p / _CULT_REF_P) ** slope


def factory(kind, code, distance=13, *, distillation_qubit_factor=12,
            distillation_cycle_factor=11, cultivation_cycles=None):
    """Factory spec for ``kind`` at the given physical error rate and distance.

    Distillation is a parameterised 15-to-1 block: ``k * d**2`` qubits,
    ``11 * d`` cycles per state and ``35 p**3`` output error.  Cultivation
    runs 20 parallel 460-qubit attempts; its per-state latency is not
    published and defaults to ``d`` cycles.
    """
    try:
        kind = FactoryKind(kind)
    except ValueError:
        raise EstimatorError(f"unsupported factory kind {kind!r}", "qec") from None
    p = code.physical_error_rate
    if kind is FactoryKind.CULTIVATION:
        warnings = ()
        if p > _CULT_REF_P:
            warnings = (f"cultivation output error extrapolated to p={p:g}",)
        return FactorySpec(
            kind=kind,
            physical_qubits_per_factory=CULTIVATION_QUBITS_PER_ATTEMPT * CULTIVATION_PARALLEL_ATTEMPTS,
            cycles_per_magic_state=distance if cultivation_cycles is None else cultivation_cycles,
            output_error=cultivation_output_error(p),
            parallel_attempts=CULTIVATION_PARALLEL_ATTEMPTS,
            warnings=warnings,
        )
    _check_distance(distance)
    return FactorySpec(
        kind=kind,
        physical_qubits_per_factory=distillation_qubit_factor * distance ** 2,
        cycles_per_magic_state=distillation_cycle_factor * distance,
        output_error=min(35 * p ** 3, 0.5),
        parallel_attempts=1,
        warnings=("distillation geometry uses unpublished defaults",),
    )


_PLATFORMS = {
    Platform.ION_TRAP: (1e-4, 1e-2),
    Platform.NEUTRAL_ATOM_CONVENTIONAL: (1e-4, 1.3e-2),
    Platform.NEUTRAL_ATOM_ERASURE: (1e-4, 4.15e-2),
}


def platform_code(platform):
    try:
        p, p_th = _PLATFORMS[Platform(platform)]
    except ValueError:
        raise EstimatorError(f"unknown platform {platform!r}", "qec") from None
    return CodeParameters(physical_error_rate=p, threshold=p_th)
