"""End-to-end orchestration of the five layers, plus feature-flag ablations.

Pipeline order is fixed: algorithm variant, transform, compilation, QEC,
logical layout, hardware counting, runtime.  Each stage's output is kept in
the estimate's provenance block.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

from .algorithm import AlgorithmSpec, Variant, total_t
from .errors import EstimatorError
from .gsc import CycleAllocation, CycleModel, GSCHyperparameters, allocate_cycles, compile_expansion
from .hardware import (
    DEFAULT_TWO_ROW_MULTIPLIER,
    Detail,
    Layout,
    elu_spec,
    layout_penalty,
    physical_qubits_basic,
    physical_qubits_detailed,
)
from .profile import profile_to_dict
from .qec import DEFAULT_FAILURE_BUDGET, FactoryKind, factory, min_distance
from .transform import ReductionFactors, apply_reduction

SECONDS_PER_DAY = 86400.0
FLAG_NAMES = ("dfthc", "zx", "a2a", "msc")
_MAX_DISTANCE_ITERATIONS = 60


@dataclass(frozen=True, order=True)
class FeatureFlags:
    dfthc: bool = True
    zx: bool = True
    a2a: bool = True
    msc: bool = True

    @property
    def bits(self):
        return "".join("1" if getattr(self, n) else "0" for n in FLAG_NAMES)

    @property
    def enabled(self):
        return sum(getattr(self, n) for n in FLAG_NAMES)

    @classmethod
    def from_bits(cls, bits):
        if len(bits) != 4 or set(bits) - {"0", "1"}:
            raise ValueError(f"flag string must be four 0/1 characters, got {bits!r}")
        return cls(*(b == "1" for b in bits))

    @classmethod
    def from_dict(cls, doc):
        unknown = set(doc) - set(FLAG_NAMES)
        if unknown:
            raise ValueError(f"unknown feature flags {sorted(unknown)}")
        return cls(**{k: bool(v) for k, v in doc.items()})

    def to_dict(self):
        return {n: getattr(self, n) for n in FLAG_NAMES}

    @classmethod
    def all_sets(cls):
        return [cls(*combo) for combo in itertools.product((False, True), repeat=4)]


@dataclass(frozen=True)
class Calibration:
    """Per-scenario calibration of the compilation and QEC layers.

    ``cycles_per_magic_state`` set to ``None`` defers to the factory spec;
    a numeric value is a fitted override.  ``replay`` bypasses the cycle
    model with measured component totals.
    """

    name: str
    cycle_model: dict
    factory_count: dict
    expansion_ratio: float | None = None
    reductions: ReductionFactors = field(default_factory=ReductionFactors)
    replay: CycleAllocation | None = None
    two_row_multiplier: float = DEFAULT_TWO_ROW_MULTIPLIER
    scenario_multiplier: float = 1.0
    scenario_multiplier_name: str | None = None
    code_distance: int | None = None
    failure_budget: float = DEFAULT_FAILURE_BUDGET
    prefactor_A: float = 0.1
    cultivation_cycles: float | None = None
    df_profile: object = None
    gsc_hyperparameters: GSCHyperparameters = field(default_factory=GSCHyperparameters)
    provenance: dict = field(default_factory=dict, compare=False)

    def model_for(self, fac):
        cm = self.cycle_model
        cms = cm.get("cycles_per_magic_state")
        return CycleModel(
            cycles_per_t_meas=cm["cycles_per_t_meas"],
            cycles_per_magic_state=fac.cycles_per_magic_state if cms is None else cms,
            factory_count=self.factory_count[fac.kind.value],
            prep_cycles_per_compiled_qubit=cm["prep_cycles_per_compiled_qubit"],
            combined_fraction=cm["combined_fraction"],
        )


@dataclass(frozen=True)
class ResourceEstimate:
    runtime_seconds: float
    runtime_days: float
    physical_qubits_basic: int
    physical_qubits_detailed: int | None
    code_distance: int
    cycles: CycleAllocation
    flags: FeatureFlags
    n_orbitals: int = 0
    platform: str = ""
    provenance: dict = field(default_factory=dict, compare=False)

    def to_dict(self):
        return {
            "runtime_seconds": self.runtime_seconds,
            "runtime_days": self.runtime_days,
            "physical_qubits_basic": self.physical_qubits_basic,
            "physical_qubits_detailed": self.physical_qubits_detailed,
            "code_distance": self.code_distance,
            "cycles": self.cycles.to_dict(),
            "flags": self.flags.to_dict(),
            "n_orbitals": self.n_orbitals,
            "platform": self.platform,
            "provenance": self.provenance,
        }


def _stage(layer, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except EstimatorError as exc:
        if exc.layer in ("core", layer):
            exc.layer = layer
        raise


def estimate(spec, profile, flags, hw, calib, overlap_enabled=False):
    """Run one profile through every layer and return the resource estimate."""
    prov = {"calibration_preset": calib.name, "hardware_preset": hw.name,
            "calibration_provenance": calib.provenance, "hardware_provenance": hw.provenance}

    # algorithm: the DFTHC flag picks the proxy profile, otherwise the DF circuits
    if not flags.dfthc:
        if calib.df_profile is None:
            raise EstimatorError(f"calibration {calib.name!r} has no DF profile for dfthc=off", "algorithm")
        profile = calib.df_profile
        spec = replace(spec, variant=Variant.DF)
    prov["profile_in"] = profile_to_dict(profile)

    if flags.zx:
        profile = _stage("transform", apply_reduction, profile, calib.reductions)
        prov["reductions"] = calib.reductions.to_dict()
    t_total = _stage("algorithm", total_t, profile, spec)
    prov["profile"] = profile_to_dict(profile)
    prov["t_total"] = t_total

    kind = FactoryKind.CULTIVATION if flags.msc else FactoryKind.DISTILLATION
    if kind.value not in calib.factory_count:
        raise EstimatorError(f"calibration {calib.name!r} has no {kind.value} factory count", "gsc")
    layout = _stage("gsc", compile_expansion, profile, calib.gsc_hyperparameters,
                    calib.expansion_ratio, calib.factory_count[kind.value])

    code = _stage("qec", hw.code, calib.prefactor_A)
    d = calib.code_distance or 3
    for _ in range(_MAX_DISTANCE_ITERATIONS):
        fac = _stage("qec", factory, kind, code, d, cultivation_cycles=calib.cultivation_cycles)
        if calib.replay is not None:
            cycles = calib.replay
        else:
            cycles = _stage("gsc", allocate_cycles, t_total, layout, d, calib.model_for(fac))
        if calib.code_distance:
            break
        d_next = _stage("qec", min_distance, code, layout.compiled_logical_qubits * cycles.total_cycles,
                        calib.failure_budget)
        if d_next == d:
            break
        d = d_next
    else:
        raise EstimatorError("code distance did not converge", "qec")

    layout_kind = Layout.EFFECTIVE_ALL_TO_ALL if flags.a2a else Layout.TWO_ROW_BUS
    multiplier = layout_penalty(layout_kind, profile, calib.two_row_multiplier)

    basic = physical_qubits_basic(layout, d, fac, hw.qubits_per_logical_factor)
    detailed = None
    if hw.detail is Detail.DETAILED_ELU:
        elu = _stage("hardware", elu_spec, hw)
        detailed = physical_qubits_detailed(layout, elu)
        prov["elu"] = elu.to_dict()

    seconds = cycles.total_cycles * hw.scc_time * multiplier * calib.scenario_multiplier
    if overlap_enabled:
        seconds /= spec.overlap_gamma
    prov.update({
        "layout": {"kind": layout_kind.value, "compiled_logical_qubits": layout.compiled_logical_qubits,
                   "data_elus": layout.data_elus, "factory_elus": layout.factory_elus,
                   "expansion_ratio": layout.expansion_ratio, "runtime_multiplier": multiplier},
        "factory": fac.to_dict(),
        "code": code.to_dict(),
        "distance_reconstructed": calib.code_distance is None,
        "scc_time": hw.scc_time,
        "scenario_multiplier": calib.scenario_multiplier,
        "overlap_gamma": spec.overlap_gamma if overlap_enabled else None,
        "gsc_hyperparameters": calib.gsc_hyperparameters.to_dict(),
    })
    return ResourceEstimate(
        runtime_seconds=seconds,
        runtime_days=seconds / SECONDS_PER_DAY,
        physical_qubits_basic=basic,
        physical_qubits_detailed=detailed,
        code_distance=d,
        cycles=cycles,
        flags=flags,
        n_orbitals=spec.n_orbitals,
        platform=hw.platform.value,
        provenance=prov,
    )


@dataclass(frozen=True)
class Scenario:
    name: str
    spec: AlgorithmSpec
    profile: object
    flags: FeatureFlags
    hardware: object
    calibration: Calibration
    overlap_enabled: bool = False

    def run(self):
        est = estimate(self.spec, self.profile, self.flags, self.hardware, self.calibration,
                       self.overlap_enabled)
        est.provenance["scenario"] = self.name
        return est

    def with_flags(self, flags):
        return replace(self, name=f"F{flags.bits}", flags=flags)


@dataclass
class AblationTable:
    rows: list  # (scenario name, ResourceEstimate), sorted

    def __post_init__(self):
        # runtime descending; ties: fewer enabled flags first, then flag string
        self.rows.sort(key=lambda r: (-r[1].runtime_seconds, r[1].flags.enabled, r[1].flags.bits))

    def __getitem__(self, name):
        for n, est in self.rows:
            if n == name:
                return est
        raise KeyError(name)

    def names(self):
        return [n for n, _ in self.rows]

    def ratio(self, slower, faster):
        return self[slower].runtime_seconds / self[faster].runtime_seconds

    def single_flag_pairs(self):
        """Every (off, on, flag, ratio) pair of rows differing in exactly one flag."""
        out = []
        for (na, a), (nb, b) in itertools.permutations(self.rows, 2):
            diff = [f for f in FLAG_NAMES if getattr(a.flags, f) != getattr(b.flags, f)]
            if len(diff) == 1 and not getattr(a.flags, diff[0]):
                out.append((na, nb, diff[0], a.runtime_seconds / b.runtime_seconds))
        out.sort(key=lambda t: (t[2], t[0], t[1]))
        return out

    def csv_rows(self):
        header = ["scenario", "runtime_days", "qubits_basic", "qubits_detailed", "distance", *FLAG_NAMES]
        body = []
        for name, est in self.rows:
            body.append([name, est.runtime_days, est.physical_qubits_basic,
                         "" if est.physical_qubits_detailed is None else est.physical_qubits_detailed,
                         est.code_distance, *(int(getattr(est.flags, f)) for f in FLAG_NAMES)])
        return header, body

    def ratio_report(self):
        return [{"off": a, "on": b, "flag": f, "ratio": r} for a, b, f, r in self.single_flag_pairs()]


def ablation_grid(base, flag_sets):
    """Re-run one scenario under each flag set with a single shared calibration."""
    rows = [(f"F{flags.bits}", base.with_flags(flags).run()) for flags in flag_sets]
    names = [n for n, _ in rows]
    if len(set(names)) != len(names):
        raise EstimatorError("duplicate flag sets in ablation grid", "engine")
    return AblationTable(rows)


def replay_scenarios(scenarios):
    """Evaluate independently calibrated scenarios into one ablation table."""
    return AblationTable([(s.name, s.run()) for s in scenarios])
