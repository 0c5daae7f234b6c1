"""Evaluate the test oracles once and freeze their outputs.

The frozen file is what the tests compare the library against; re-running
this script must reproduce it bit for bit (``--check``).

    python3 tools/freeze_oracles.py [--check]
"""

import argparse
import json
import math
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402

OUT = ROOT / "tests" / "data" / "derived.json"

QUANTUM_DAYS = [(56, 1.0), (100, 4.8), (150, 8.7)]
CLASSICAL_DAYS = [(56, 7.0), (100, 27.8), (150, 294.4)]
T_COUNTS = [(56, 8.2e8), (100, 4.24e9), (150, 1.12e10)]


def derive():
    slope, icpt = oracles.polyfit_linear(QUANTUM_DAYS)
    rate, pref = oracles.polyfit_exponential(CLASSICAL_DAYS)
    P_slow = 0.5 * (0.99 * 0.97 * 0.95 * 0.023) ** 2
    P_fast = 0.5 * (0.99 * 0.97 * 0.95 * 0.1) ** 2
    attempts = math.floor(833e3 * 1e-4)
    small = {"H2": -1.16721, "H2O": -76.35053, "CO2": -188.43534}
    big = {"DFT": (-3051.29506, -2936.85035), "HF": (-7475.31480, -7361.31568),
           "CASSCF": (-7475.36738, -7361.36040), "DMRG": (-7475.43923, -7361.46138),
           "SHCI": (-7475.44040, -7361.46465)}
    reaction = {m: x + small["H2O"] - 2 * small["H2"] - i - small["CO2"] for m, (x, i) in big.items()}
    return {
        "repetitions_lambda1_eps1e-3": math.ceil(math.pi * 1.0 / (2 * 1e-3)),
        "power_exponent_t_counts": oracles.loglog_slope(T_COUNTS),
        "linear_fit": {"slope": slope, "intercept": icpt, "at_250": slope * 250 + icpt,
                       "at_1000": slope * 1000 + icpt},
        "exponential_fit": {"rate": rate, "prefactor": pref},
        "published_exponential_at_100": 0.02763 * math.exp(0.0465 * 100),
        "rate_ratio_1mha_300k": math.exp(1e-3 / (3.166811563e-6 * 300)),
        "logical_error_d13_ion": 0.1 * (1e-4 / 1e-2) ** 7,
        "min_distance_7.6e11": oracles.scan_distance(1e-4, 1e-2, 0.1, 7.6e11, 1e-2),
        "distillation_error_p1e-4": 35 * 1e-4 ** 3,
        "entanglement_probability": {"p_click_0.023": P_slow, "p_click_0.1": P_fast},
        "attempts_per_cycle": attempts,
        "comm_ions_39x3": oracles.comm_ions_linear_scan(P_fast, attempts, 117, 0.99),
        "comm_ions_45x3": oracles.comm_ions_linear_scan(P_fast, attempts, 135, 0.99),
        "basic_qubits_56o": 4232 * 2 * 13 ** 2 + 38 * 20 * 460,
        "basic_qubits_56o_na": 4232 * 2 * 9 ** 2 + 8 * 20 * 460,
        "detailed_qubits_56o": (4232 + 38) * (416 + 625 + 145),
        "detailed_qubits_100o_published_ions": (7817 + 12) * (473 + 841 + 167),
        "speedups_published_days": {f"{n}o": c / q for (n, q), (_, c) in zip(QUANTUM_DAYS, CLASSICAL_DAYS)},
        "ablation_ratio_s13_s7": 82 * 365.25 / 243.5,
        "ablation_ratio_s13_s8": 82 * 365.25 / 27.8,
        "overlap_days": {"56o": 1.0 / 0.91, "150o": 8.7 / 0.74, "100o": 4.8 / 0.88},
        "reaction_energy": reaction,
        "cpu_days_150o": 7056 / 24,
        "zx_t_56o": math.ceil(8.2e8 / (9 / 1.6)),
    }


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args(argv)
    text = json.dumps(derive(), indent=2, sort_keys=True) + "\n"
    if args.check:
        if OUT.read_text() != text:
            print("frozen oracle values are stale", file=sys.stderr)
            return 1
        return 0
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
