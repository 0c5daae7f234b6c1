"""Graph-state-compilation cost model.

The compiler itself is abstracted away: a profile expands to compiled logical
qubits by a calibrated ratio, and surface-code cycles are split over four
tasks driven by a handful of scalar parameters.  A replay mode accepts
measured component cycles directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._numeric import ceil_tol
from .errors import EstimatorError

DEFAULT_EXPANSION_RATIO = 4232 / 994


@dataclass(frozen=True)
class GSCHyperparameters:
    # carried for provenance only; none of these enter the scalar cost model
    teleportation_threshold: int = 4
    min_neighbor_degree: int = 4
    max_neighbors_to_search: int = 1_000_000
    use_fully_optimized_dag: bool = True
    teleportation_distance: int = 2

    def __post_init__(self):
        for name in ("teleportation_threshold", "min_neighbor_degree",
                     "max_neighbors_to_search", "teleportation_distance"):
            if getattr(self, name) <= 0:
                raise EstimatorError(f"{name} must be positive", "gsc")

    def to_dict(self):
        return dict(self.__dict__)


@dataclass(frozen=True)
class CompiledLayout:
    compiled_logical_qubits: int
    data_elus: int
    factory_elus: int
    expansion_ratio: float

    def __post_init__(self):
        if self.compiled_logical_qubits != self.data_elus:
            raise EstimatorError("every compiled logical qubit occupies one data ELU", "gsc")
        if self.expansion_ratio < 1:
            raise EstimatorError("expansion ratio must be >= 1", "gsc")
        if self.factory_elus < 0:
            raise EstimatorError("negative factory ELU count", "gsc")


@dataclass(frozen=True)
class CycleModel:
    cycles_per_t_meas: float
    cycles_per_magic_state: float
    factory_count: int
    prep_cycles_per_compiled_qubit: float
    combined_fraction: float

    def __post_init__(self):
        if self.factory_count < 1:
            raise EstimatorError("at least one factory is required", "gsc")
        for name in ("cycles_per_t_meas", "cycles_per_magic_state",
                     "prep_cycles_per_compiled_qubit", "combined_fraction"):
            if not getattr(self, name) > 0:
                raise EstimatorError(f"{name} must be positive", "gsc")


@dataclass(frozen=True)
class CycleAllocation:
    t_measurement_cycles: int
    distillation_cycles: int
    graph_prep_cycles: int
    combined_prep_distill_cycles: int

    @property
    def total_cycles(self):
        return (self.t_measurement_cycles + self.distillation_cycles
                + self.graph_prep_cycles + self.combined_prep_distill_cycles)

    @classmethod
    def replay(cls, t_measurement, distillation, graph_prep, combined):
        """Wrap measured component cycles (e.g. published per-task totals)."""
        parts = [int(round(v)) for v in (t_measurement, distillation, graph_prep, combined)]
        if any(p < 0 for p in parts):
            raise EstimatorError("replayed cycle components must be non-negative", "gsc")
        return cls(*parts)

    def to_dict(self):
        return {
            "t_measurement_cycles": self.t_measurement_cycles,
            "distillation_cycles": self.distillation_cycles,
            "graph_prep_cycles": self.graph_prep_cycles,
            "combined_prep_distill_cycles": self.combined_prep_distill_cycles,
            "total_cycles": self.total_cycles,
        }


def compile_expansion(profile, params=None, expansion_ratio=None, factory_elus=0):
    if profile.algorithm_logical_qubits <= 0:
        raise EstimatorError("profile has no logical qubits", "gsc")
    ratio = DEFAULT_EXPANSION_RATIO if expansion_ratio is None else expansion_ratio
    if ratio < 1:
        raise EstimatorError("expansion ratio must be >= 1", "gsc")
    compiled = ceil_tol(ratio * profile.algorithm_logical_qubits)
    return CompiledLayout(compiled, compiled, factory_elus, ratio)


def allocate_cycles(t_total, layout, d, model):
    if t_total <= 0:
        raise EstimatorError("t_total must be positive", "gsc")
    if d <= 0:
        raise EstimatorError("code distance must be positive", "gsc")
    t_meas = math.ceil(t_total * model.cycles_per_t_meas)
    distill = math.ceil(t_total * model.cycles_per_magic_state / model.factory_count)
    prep = math.ceil(layout.compiled_logical_qubits * model.prep_cycles_per_compiled_qubit * d)
    combined = math.ceil(model.combined_fraction * (prep + distill))
    return CycleAllocation(t_meas, distill, prep, combined)


def solve_cycles_per_magic_state(target_total, t_total, layout, d, model):
    """Cycles per magic state that make :func:`allocate_cycles` hit ``target_total``.

    Used once, when building calibration presets.  The other four parameters
    of ``model`` are held fixed.
    """
    t_meas = t_total * model.cycles_per_t_meas
    prep = layout.compiled_logical_qubits * model.prep_cycles_per_compiled_qubit * d
    f = model.combined_fraction
    distill = (target_total - t_meas - prep * (1 + f)) / (1 + f)
    if distill <= 0:
        raise EstimatorError(
            f"target of {target_total:.4g} cycles is below the fixed tasks' share", "gsc")
    return distill * model.factory_count / t_total
