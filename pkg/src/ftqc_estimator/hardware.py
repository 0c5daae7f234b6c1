"""Physical layer: qubit counting, logical layout and the modular ion-trap ELU model."""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field

from scipy.stats import binom

from .errors import EstimatorError
from .qec import CodeParameters, Platform

log = logging.getLogger(__name__)

DEFAULT_MAX_IONS_PER_ELU = 1200
DEFAULT_TWO_ROW_MULTIPLIER = 1.4
PAIR_BUDGET_PER_994_QUBITS = 150


class Layout(str, enum.Enum):
    TWO_ROW_BUS = "two_row_bus"
    EFFECTIVE_ALL_TO_ALL = "effective_all_to_all"


class Detail(str, enum.Enum):
    BASIC = "basic"
    DETAILED_ELU = "detailed_elu"


@dataclass(frozen=True)
class EntanglementParameters:
    p_bell: float = 0.5
    p_down: float = 0.99
    p_excite: float = 0.97
    p_decay_s: float = 0.95
    p_click: float = 0.023
    attempt_rate: float = 833e3

    def __post_init__(self):
        for name in ("p_bell", "p_down", "p_excite", "p_decay_s", "p_click"):
            if not 0 < getattr(self, name) <= 1:
                raise EstimatorError(f"{name} must lie in (0, 1]", "hardware")
        if not self.attempt_rate > 0:
            raise EstimatorError("attempt_rate must be positive", "hardware")


@dataclass(frozen=True)
class ELUSpec:
    communication_ions: int
    computational_ions: int
    memory_ions: int
    max_ions_per_elu: int = DEFAULT_MAX_IONS_PER_ELU

    def __post_init__(self):
        if min(self.communication_ions, self.computational_ions, self.memory_ions) < 0:
            raise EstimatorError("negative ion count", "hardware")
        if self.total_ions > self.max_ions_per_elu:
            raise EstimatorError(
                f"ELU holds {self.total_ions} ions, above the limit of {self.max_ions_per_elu}", "hardware")

    @property
    def total_ions(self):
        return self.communication_ions + self.computational_ions + self.memory_ions

    def to_dict(self):
        return {"communication_ions": self.communication_ions,
                "computational_ions": self.computational_ions,
                "memory_ions": self.memory_ions,
                "total_ions": self.total_ions}


@dataclass(frozen=True)
class CommDemand:
    """Entanglement demand per ELU per surface-code cycle (fitted preset constants)."""

    refined_pairs_per_scc: int
    raw_per_refined: float
    confidence: float = 0.99


@dataclass(frozen=True)
class HardwareModel:
    platform: Platform
    scc_time: float
    layout: Layout = Layout.EFFECTIVE_ALL_TO_ALL
    detail: Detail = Detail.BASIC
    physical_error_rate: float = 1e-4
    threshold: float = 1e-2
    qubits_per_logical_factor: float = 2.0
    entanglement: EntanglementParameters | None = None
    comm_demand: CommDemand | None = None
    computational_ions: int = 0
    memory_ions: int = 0
    max_ions_per_elu: int = DEFAULT_MAX_IONS_PER_ELU
    name: str = ""
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.scc_time > 0:
            raise EstimatorError("scc_time must be positive", "hardware")
        if self.detail is Detail.DETAILED_ELU and (self.entanglement is None or self.comm_demand is None):
            raise EstimatorError("detailed ELU model needs entanglement and demand parameters", "hardware")

    def code(self, prefactor_A=0.1):
        return CodeParameters(self.physical_error_rate, self.threshold, prefactor_A)


def entanglement_success_probability(e):
    return e.p_bell * (e.p_down * e.p_excite * e.p_decay_s * e.p_click) ** 2


def heralded_rate(e):
    return e.attempt_rate * entanglement_success_probability(e)


def comm_ions_required(P, attempt_rate, scc_time, refined_pairs_per_scc, raw_per_refined, confidence=0.99):
    """Fewest communication ions that collect enough raw pairs within one cycle.

    With ``n`` ions each making ``floor(rate * scc_time)`` attempts, the raw
    pair count is Binomial(n * attempts, P); we need it to reach
    ``ceil(refined * raw_per_refined)`` with probability >= ``confidence``.
    """
    if not (0 < P <= 1 and attempt_rate > 0 and scc_time > 0):
        raise EstimatorError("probability, rate and cycle time must be positive", "hardware")
    if not 0 < confidence < 1:
        raise EstimatorError("confidence must lie in (0, 1)", "hardware")
    if raw_per_refined < 1 or refined_pairs_per_scc < 0:
        raise EstimatorError("raw_per_refined must be >= 1 and demand non-negative", "hardware")
    need = math.ceil(refined_pairs_per_scc * raw_per_refined)
    if need == 0:
        return 0
    attempts = math.floor(attempt_rate * scc_time)
    if attempts == 0:
        raise EstimatorError("no entanglement attempts fit in one cycle", "hardware")

    def enough(n):
        return binom.sf(need - 1, n * attempts, P) >= confidence

    bound = math.ceil(10 * need / (P * attempts))
    if not enough(bound):
        raise EstimatorError(f"infeasible: even {bound} communication ions miss the confidence target",
                             "hardware")
    lo, hi = 0, bound
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if enough(mid):
            hi = mid
        else:
            lo = mid
    return hi


def elu_spec(hw):
    e, dem = hw.entanglement, hw.comm_demand
    comm = comm_ions_required(entanglement_success_probability(e), e.attempt_rate, hw.scc_time,
                              dem.refined_pairs_per_scc, dem.raw_per_refined, dem.confidence)
    return ELUSpec(comm, hw.computational_ions, hw.memory_ions, hw.max_ions_per_elu)


def physical_qubits_basic(layout, d, fac, qubits_per_logical_factor=2.0):
    data = layout.data_elus * round(qubits_per_logical_factor * d * d)
    return data + layout.factory_elus * fac.physical_qubits_per_factory


def physical_qubits_detailed(layout, elu):
    return (layout.data_elus + layout.factory_elus) * elu.total_ions


def pair_budget(algorithm_qubits):
    return PAIR_BUDGET_PER_994_QUBITS * math.ceil(algorithm_qubits / 994)


def layout_penalty(layout, profile, two_row_multiplier=DEFAULT_TWO_ROW_MULTIPLIER):
    """Runtime multiplier of the logical layout relative to effective all-to-all."""
    layout = Layout(layout)
    if layout is Layout.TWO_ROW_BUS:
        return two_row_multiplier
    budget = pair_budget(profile.algorithm_logical_qubits)
    if profile.distinct_pair_count <= budget:
        return 1.0
    log.warning("%s: %d distinct pairs exceed the all-to-all budget of %d",
                profile.label or "profile", profile.distinct_pair_count, budget)
    return profile.distinct_pair_count / budget
