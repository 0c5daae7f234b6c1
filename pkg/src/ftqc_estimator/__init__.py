"""Full-stack resource estimator for fault-tolerant chemistry workloads.

Layers run in a fixed order: algorithm profile, circuit transforms, graph
state compilation, surface-code QEC and hardware counting.  A separate
ledger handles the classical benchmark side (energies, CPU-hours).
"""

from .algorithm import AlgorithmSpec, Variant, total_t
from .chem import EnergyLedger, rate_ratio, reaction_energy
from .engine import AblationTable, Calibration, FeatureFlags, ResourceEstimate, Scenario, estimate
from .errors import ConfigError, EstimatorError
from .fitting import fit_exponential, fit_linear
from .presets import PresetStore, load_scenario
from .profile import LogicalCircuitProfile, extract_profile, load_proxy_profile, parse_qasm

__version__ = "0.1.0"

__all__ = [
    "AblationTable", "AlgorithmSpec", "Calibration", "ConfigError", "EnergyLedger", "EstimatorError",
    "FeatureFlags", "LogicalCircuitProfile", "PresetStore", "ResourceEstimate", "Scenario", "Variant",
    "estimate", "extract_profile", "fit_exponential", "fit_linear", "load_proxy_profile", "load_scenario",
    "parse_qasm", "rate_ratio", "reaction_energy", "total_t",
]
