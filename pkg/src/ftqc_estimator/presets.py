"""Loading of hardware presets, calibration presets, proxy profiles and scenarios.

Presets are JSON files laid out as ``<root>/{hardware,calibration,profiles,
scenarios}/<name>.json``.  A user preset directory (``--preset-dir`` or
``FTQC_PRESET_DIR``) is searched before the packaged data.
"""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

from .algorithm import AlgorithmSpec
from .engine import Calibration, FeatureFlags, Scenario
from .errors import ConfigError
from .gsc import CycleAllocation, GSCHyperparameters
from .hardware import CommDemand, Detail, EntanglementParameters, HardwareModel, Layout
from .profile import load_proxy_profile
from .qec import Platform
from .transform import ReductionFactors

ENV_VAR = "FTQC_PRESET_DIR"
KINDS = ("hardware", "calibration", "profiles", "scenarios")


def packaged_root():
    return Path(str(resources.files("ftqc_estimator") / "data"))


class PresetStore:
    def __init__(self, preset_dir=None):
        if preset_dir is None:
            preset_dir = os.environ.get(ENV_VAR) or None
        self.roots = []
        if preset_dir is not None:
            root = Path(preset_dir)
            if not root.is_dir():
                raise ConfigError(f"preset directory {root} does not exist")
            self.roots.append(root)
        self.roots.append(packaged_root())

    def path(self, kind, name):
        if kind not in KINDS:
            raise ValueError(kind)
        candidate = Path(name)
        if candidate.suffix == ".json" and candidate.is_file():
            return candidate
        stem = candidate.name[:-5] if candidate.name.endswith(".json") else candidate.name
        for root in self.roots:
            p = root / kind / f"{stem}.json"
            if p.is_file():
                return p
        raise ConfigError(f"no {kind} preset named {name!r} (searched {', '.join(map(str, self.roots))})")

    def read(self, kind, name):
        p = self.path(kind, name)
        try:
            with open(p) as fh:
                return json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read {p}: {exc}") from exc

    def names(self, kind):
        seen = set()
        for root in self.roots:
            d = root / kind
            if d.is_dir():
                seen.update(p.stem for p in d.glob("*.json"))
        return sorted(seen)

    # typed loaders
    def profile(self, name):
        return _wrap(load_proxy_profile, self.read("profiles", name))

    def hardware(self, name):
        return _wrap(hardware_from_dict, self.read("hardware", name))

    def calibration(self, name):
        doc = self.read("calibration", name)
        df = self.profile(doc["df_profile"]) if doc.get("df_profile") else None
        return _wrap(calibration_from_dict, doc, df)

    def scenario(self, name_or_path):
        return self.scenario_from_dict(self.read("scenarios", name_or_path), default_name=Path(name_or_path).stem)

    def scenario_from_dict(self, doc, default_name="scenario"):
        try:
            if "profile" in doc:
                profile = _wrap(load_proxy_profile, doc["profile"])
            elif "profile_ref" in doc:
                profile = self.profile(doc["profile_ref"])
            else:
                raise ConfigError("scenario needs 'profile' or 'profile_ref'")
            return Scenario(
                name=doc.get("name", default_name),
                spec=_wrap(AlgorithmSpec.from_dict, doc["algorithm"]),
                profile=profile,
                flags=FeatureFlags.from_dict(doc.get("flags", {})),
                hardware=self.hardware(doc["hardware_preset"]),
                calibration=self.calibration(doc["calibration_preset"]),
                overlap_enabled=bool(doc.get("overlap_enabled", False)),
            )
        except KeyError as exc:
            raise ConfigError(f"scenario missing key {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid scenario: {exc}") from exc


def _wrap(fn, *args):
    try:
        return fn(*args)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid preset: {exc!r}") from exc


def hardware_from_dict(doc):
    ent = doc.get("entanglement")
    dem = doc.get("comm_demand")
    return HardwareModel(
        platform=Platform(doc["platform"]),
        scc_time=float(doc["scc_time"]),
        layout=Layout(doc.get("layout", Layout.EFFECTIVE_ALL_TO_ALL.value)),
        detail=Detail(doc.get("detail", Detail.BASIC.value)),
        physical_error_rate=float(doc["physical_error_rate"]),
        threshold=float(doc["threshold"]),
        qubits_per_logical_factor=float(doc.get("qubits_per_logical_factor", 2.0)),
        entanglement=EntanglementParameters(**ent) if ent else None,
        comm_demand=CommDemand(**dem) if dem else None,
        computational_ions=int(doc.get("computational_ions", 0)),
        memory_ions=int(doc.get("memory_ions", 0)),
        max_ions_per_elu=int(doc.get("max_ions_per_elu", 1200)),
        name=doc.get("name", ""),
        provenance=doc.get("provenance", {}),
    )


def calibration_from_dict(doc, df_profile=None):
    replay = doc.get("replay")
    return Calibration(
        name=doc["name"],
        cycle_model=dict(doc["cycle_model"]),
        factory_count={k: int(v) for k, v in doc["factory_count"].items()},
        expansion_ratio=doc.get("expansion_ratio"),
        reductions=ReductionFactors.from_dict(doc.get("reductions", {})),
        replay=CycleAllocation.replay(**replay) if replay else None,
        two_row_multiplier=float(doc.get("two_row_multiplier", 1.4)),
        scenario_multiplier=float(doc.get("scenario_multiplier", 1.0)),
        scenario_multiplier_name=doc.get("scenario_multiplier_name"),
        code_distance=doc.get("code_distance"),
        failure_budget=float(doc.get("failure_budget", 1e-2)),
        prefactor_A=float(doc.get("prefactor_A", 0.1)),
        cultivation_cycles=doc.get("cultivation_cycles"),
        df_profile=df_profile,
        gsc_hyperparameters=GSCHyperparameters(**doc.get("gsc_hyperparameters", {})),
        provenance=doc.get("provenance", {}),
    )


def load_scenario(name_or_path, preset_dir=None):
    return PresetStore(preset_dir).scenario(name_or_path)

