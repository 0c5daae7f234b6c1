"""Classical benchmark ledger: electronic energies, CPU-hours and uncertainties."""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError, EstimatorError
from .fitting import extrapolate_to_zero

# Boltzmann constant in Hartree per kelvin; per-particle energies make this
# the right constant for the exponential rate law
K_B_HARTREE = 3.166811563e-6
HOURS_PER_DAY = 24

SMALL_MOLECULE_METHOD = "M06-L"


class Species(str, enum.Enum):
    I = "I"  # noqa: E741
    XVIII = "XVIII"
    H2 = "H2"
    H2O = "H2O"
    CO2 = "CO2"


class Method(str, enum.Enum):
    DFT = "DFT"
    HF = "HF"
    CASSCF = "CASSCF"
    DMRG = "DMRG"
    SHCI = "SHCI"


class ExtrapolationCase(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"


# reaction I + CO2 + 2 H2 -> XVIII + H2O, as stoichiometric weights
REACTION_XVIII = {Species.XVIII: 1, Species.H2O: 1, Species.H2: -2, Species.I: -1, Species.CO2: -1}
REACTIONS = {"XVIII": REACTION_XVIII}


@dataclass(frozen=True)
class EnergyRecord:
    species: Species
    method: str
    energy: float
    source: str = ""

    def __post_init__(self):
        if not math.isfinite(self.energy):
            raise EstimatorError(f"non-finite energy for {self.species.value}/{self.method}", "chem")
        if self.method != SMALL_MOLECULE_METHOD:
            Method(self.method)


class EnergyLedger:
    """Energies keyed by (species, method).

    Small-molecule energies are recorded once under ``M06-L`` and shared by
    every method that has no entry of its own.
    """

    def __init__(self, records=()):
        self._records = {}
        for r in records:
            key = (r.species, r.method)
            if key in self._records:
                raise EstimatorError(f"duplicate ledger entry {r.species.value}/{r.method}", "chem")
            self._records[key] = r

    def __iter__(self):
        return iter(self._records.values())

    def __len__(self):
        return len(self._records)

    def methods(self):
        return sorted({m for _, m in self._records if m != SMALL_MOLECULE_METHOD})

    def energy(self, species, method):
        species = Species(species)
        for key in ((species, method), (species, SMALL_MOLECULE_METHOD)):
            if key in self._records:
                return self._records[key].energy
        raise EstimatorError(f"ledger has no energy for {species.value} with {method}", "chem")

    def scaled(self, factor):
        return EnergyLedger(EnergyRecord(r.species, r.method, r.energy * factor, r.source) for r in self)

    @classmethod
    def from_csv(cls, path):
        try:
            with open(path, newline="") as fh:
                rows = list(csv.DictReader(fh))
        except OSError as exc:
            raise ConfigError(f"cannot read ledger {path}: {exc}") from exc
        try:
            return cls(EnergyRecord(Species(r["species"]), r["method"], float(r["energy_hartree"]),
                                    r.get("source", "")) for r in rows)
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"malformed ledger {path}: {exc}") from exc

    def to_csv_rows(self):
        return (["species", "method", "energy_hartree", "source"],
                [[r.species.value, r.method, repr(r.energy), r.source] for r in self])


def reaction_energy(ledger, method, reaction="XVIII"):
    """Relative electronic energy E(XVIII) + E(H2O) - 2 E(H2) - E(I) - E(CO2)."""
    try:
        weights = REACTIONS[reaction]
    except KeyError:
        raise EstimatorError(f"unknown reaction {reaction!r}", "chem") from None
    return math.fsum(w * ledger.energy(s, method) for s, w in weights.items())


def rate_ratio(delta_e_1, delta_e_2, temperature):
    """Ratio k1/k2 of Arrhenius-like rates for two reaction energies (Hartree)."""
    if not temperature > 0:
        raise EstimatorError("temperature must be positive", "chem")
    return math.exp(-(delta_e_1 - delta_e_2) / (K_B_HARTREE * temperature))


def cpu_hours(wall_hours, cores):
    """Exact CPU-hours; float inputs are taken at their decimal spelling."""
    if cores < 0 or wall_hours < 0:
        raise EstimatorError("wall hours and cores must be non-negative", "chem")
    wall = wall_hours if isinstance(wall_hours, Fraction) else Fraction(str(wall_hours))
    return wall * int(cores)


@dataclass(frozen=True)
class ClassicalRunRecord:
    system_label: str
    orbitals: int
    wall_hours: Fraction
    cores: int
    uncertainty_mha: float
    extrapolation_case: ExtrapolationCase

    @property
    def cpu_hours(self):
        return cpu_hours(self.wall_hours, self.cores)

    @property
    def cpu_days(self):
        return float(self.cpu_hours / HOURS_PER_DAY)


def load_run_records(path):
    try:
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
    except OSError as exc:
        raise ConfigError(f"cannot read run records {path}: {exc}") from exc
    try:
        return [ClassicalRunRecord(r["label"], int(r["orbitals"]), Fraction(r["wall_hours"]),
                                   int(r["cores"]), float(r["uncertainty_mha"]),
                                   ExtrapolationCase(r["case"])) for r in rows]
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"malformed run records {path}: {exc}") from exc


def uncertainty_series(records):
    if not records:
        raise EstimatorError("no run records", "chem")
    return sorted((r.orbitals, r.uncertainty_mha) for r in records)


def extrapolated_energy(points):
    """Zero-correction energy from (delta_E_pt, E) pairs of selected-CI runs."""
    return extrapolate_to_zero(points)
