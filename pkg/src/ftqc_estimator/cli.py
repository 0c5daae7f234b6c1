"""Command-line entry point.

Every command prints a JSON summary on stdout and writes its artifacts into
``--output-dir``.  Exit status: 0 success, 1 domain error, 2 configuration
or input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from . import chem, fitting, report
from .engine import FeatureFlags, ablation_grid, replay_scenarios
from .errors import ConfigError, EstimatorError
from .presets import PresetStore
from .profile import extract_profile, parse_qasm, profile_to_dict
from .transform import peephole_cancel, t_count

log = logging.getLogger("ftqc_estimator")

DEFAULT_COMPARE_ION = ("published-56o-ion", "published-100o-ion", "published-150o-ion")
DEFAULT_COMPARE_NA = ("published-56o-na", "published-100o-na", "published-150o-na")
SHIPPED_ABLATION = ("S1", "S3", "S4", "S6", "S7", "S8", "S9", "S10", "S11", "S13")


def _input_file(path, store):
    """A literal path, else a file of that name among the preset fixtures."""
    p = Path(path)
    if p.is_file():
        return p
    for root in store.roots:
        cand = root / "fixtures" / p.name
        if cand.is_file():
            return cand
    raise ConfigError(f"input file {path} not found")


class _Out:
    def __init__(self, args):
        self.dir = Path(args.output_dir)
        self.fmt = args.format
        self.figures = args.figures
        self.written = []

    def json(self, name, doc):
        if self.fmt in ("json", "both"):
            self.written.append(str(report.write_json(self.dir / f"{name}.json", doc)))

    def csv(self, name, header, rows):
        if self.fmt in ("csv", "both"):
            self.written.append(str(report.write_csv(self.dir / f"{name}.csv", header, rows)))

    def figure(self, fn, name, *args):
        if self.figures:
            self.written.append(str(fn(*args, self.dir / f"{name}.png")))


def cmd_parse(args, store, out):
    path = Path(args.qasm)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    gates = parse_qasm(text)
    doc = {}
    if args.peephole:
        before = t_count(gates)
        gates = peephole_cancel(gates)
        doc["peephole"] = {"t_before": before, "t_after": t_count(gates)}
    prof = extract_profile(gates, remote_cutoff=args.remote_cutoff, label=args.label or path.stem)
    doc["profile"] = profile_to_dict(prof)
    out.json("profile", doc["profile"])
    out.csv("profile", ["field", "value"],
            [[k, v] for k, v in doc["profile"].items() if not isinstance(v, (list, dict))])
    return doc


def _apply_overrides(scenario, args):
    if getattr(args, "flags", None):
        scenario = replace(scenario, flags=FeatureFlags.from_bits(args.flags))
    if getattr(args, "overlap", False):
        scenario = replace(scenario, overlap_enabled=True)
    return scenario


def _estimate_row(name, est):
    return [name, est.n_orbitals, est.platform, est.runtime_days, est.physical_qubits_basic,
            "" if est.physical_qubits_detailed is None else est.physical_qubits_detailed,
            est.code_distance, est.cycles.total_cycles, est.flags.bits]


ESTIMATE_COLUMNS = ["scenario", "orbitals", "platform", "runtime_days", "qubits_basic",
                    "qubits_detailed", "distance", "total_cycles", "flags"]


def cmd_estimate(args, store, out):
    sc = _apply_overrides(store.scenario(args.scenario), args)
    est = sc.run()
    doc = est.to_dict()
    out.json(f"estimate-{sc.name}", doc)
    out.csv(f"estimate-{sc.name}", ESTIMATE_COLUMNS, [_estimate_row(sc.name, est)])
    return {"scenario": sc.name, "runtime_days": est.runtime_days,
            "physical_qubits_basic": est.physical_qubits_basic,
            "physical_qubits_detailed": est.physical_qubits_detailed,
            "code_distance": est.code_distance, "artifact": doc}


def cmd_ablate(args, store, out):
    if args.grid:
        base = store.scenario(args.grid)
        table = ablation_grid(base, FeatureFlags.all_sets())
    else:
        names = args.scenarios or SHIPPED_ABLATION
        table = replay_scenarios([store.scenario(n) for n in names])
    header, rows = table.csv_rows()
    ratios = table.ratio_report()
    doc = {
        "rows": [{"scenario": n, **e.to_dict()} for n, e in table.rows],
        "single_flag_ratios": ratios,
        "monotone": all(r["ratio"] >= 1 for r in ratios),
    }
    out.json("ablation", doc)
    out.csv("ablation", header, rows)
    out.figure(report.plot_ablation, "ablation", table)
    return {"order": table.names(), "single_flag_ratios": ratios, "monotone": doc["monotone"]}


def cmd_fit(args, store, out):
    try:
        pts = report.read_points(_input_file(args.points, store))
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read points: {exc}") from exc
    doc = fitting.fit_report(args.kind, pts, tuple(args.at))
    name = f"fit-{args.kind}"
    out.json(name, doc)
    out.csv(name, ["x", "fitted", "published"],
            [[x, doc["extrapolation"][x], doc["published"]["extrapolation"][x]] for x in doc["extrapolation"]])
    out.figure(report.plot_fit, name, doc["fit"], doc["published"])
    return doc


def cmd_chem(args, store, out):
    ledger = chem.EnergyLedger.from_csv(_input_file(args.ledger, store))
    methods = [args.method] if args.method else ledger.methods()
    energies = {m: chem.reaction_energy(ledger, m, args.reaction) for m in methods}
    doc = {"reaction": args.reaction, "reaction_energy_hartree": energies}
    if args.method:
        doc["value"] = energies[args.method]
    if args.runs:
        runs = chem.load_run_records(_input_file(args.runs, store))
        series = chem.uncertainty_series(runs)
        doc["runs"] = [{"label": r.system_label, "orbitals": r.orbitals, "cpu_hours": float(r.cpu_hours),
                        "cpu_days": r.cpu_days, "uncertainty_mha": r.uncertainty_mha,
                        "case": r.extrapolation_case.value} for r in runs]
        doc["uncertainty_series"] = series
        out.csv("uncertainty", ["orbitals", "uncertainty_mha"], series)
        out.figure(report.plot_uncertainty, "uncertainty", series)
    out.json("chem", doc)
    out.csv("reaction_energy", ["method", "reaction_energy_hartree"], list(energies.items()))
    return doc


def cmd_compare(args, store, out):
    ion = [store.scenario(n).run() for n in (args.ion or DEFAULT_COMPARE_ION)]
    na = [store.scenario(n).run() for n in (args.na or DEFAULT_COMPARE_NA)] if not args.no_na else []
    runs = chem.load_run_records(_input_file(args.runs, store))
    header, rows, verdict = report.emit_comparison(ion, runs, na)
    verdict["provenance"] = {e.provenance.get("scenario", ""): e.provenance.get("calibration_provenance", {})
                             for e in ion + na}
    out.csv("comparison", header, rows)
    out.json("comparison", verdict)
    out.figure(report.plot_comparison, "comparison", header, rows)
    return {"columns": header, "rows": rows, **verdict}


def _number(text):
    x = float(text)
    return int(x) if x.is_integer() else x


def build_parser():
    p = argparse.ArgumentParser(prog="ftqc-estimate",
                                description="Fault-tolerant resource estimator and classical benchmark ledger.")
    p.add_argument("--output-dir", default="ftqc-reports", help="artifact directory (default: %(default)s)")
    p.add_argument("--format", choices=("json", "csv", "both"), default="both")
    p.add_argument("--preset-dir", help="extra preset directory, searched before the packaged presets")
    p.add_argument("--figures", action="store_true", help="also render PNG figures next to the reports")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", help="extract a logical-circuit profile from OpenQASM")
    s.add_argument("--qasm", required=True)
    s.add_argument("--remote-cutoff", type=int, default=4)
    s.add_argument("--label")
    s.add_argument("--peephole", action="store_true", help="run adjacent-gate cancellation first")

    s = sub.add_parser("estimate", help="estimate runtime and qubits for one scenario")
    s.add_argument("--scenario", required=True, help="scenario preset name or JSON path")
    s.add_argument("--flags", help="override feature flags as four bits (dfthc zx a2a msc)")
    s.add_argument("--overlap", action="store_true", help="divide runtime by the initial-state overlap")

    s = sub.add_parser("ablate", help="feature-flag ablation table")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--scenarios", nargs="+", help="independently calibrated scenarios to replay")
    g.add_argument("--grid", metavar="SCENARIO", help="re-run one scenario under all 16 flag sets")

    s = sub.add_parser("fit", help="least-squares scaling fit")
    s.add_argument("--kind", choices=[k.value for k in fitting.FitKind], required=True)
    s.add_argument("--points", required=True, help="CSV of (orbitals, days)")
    s.add_argument("--at", type=_number, nargs="+", default=[250, 1000])

    s = sub.add_parser("chem", help="reaction energies and classical run records")
    s.add_argument("--ledger", default="energies.csv")
    s.add_argument("--reaction", default="XVIII")
    s.add_argument("--method", choices=[m.value for m in chem.Method])
    s.add_argument("--runs", help="run-records CSV")

    s = sub.add_parser("compare", help="quantum against classical runtime per system size")
    s.add_argument("--ion", nargs="+")
    s.add_argument("--na", nargs="+")
    s.add_argument("--no-na", action="store_true")
    s.add_argument("--runs", default="runs.csv")
    return p


COMMANDS = {"parse": cmd_parse, "estimate": cmd_estimate, "ablate": cmd_ablate,
            "fit": cmd_fit, "chem": cmd_chem, "compare": cmd_compare}


def run(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        store = PresetStore(args.preset_dir)
        out = _Out(args)
        summary = COMMANDS[args.command](args, store, out)
    except ConfigError as exc:
        print(report.to_json({"status": "error", "kind": "config", "message": str(exc)}), end="", file=stdout)
        log.error("%s", exc)
        return 2
    except EstimatorError as exc:
        print(report.to_json({"status": "error", "kind": "domain", "layer": exc.layer, "message": str(exc)}),
              end="", file=stdout)
        log.error("%s", exc)
        return 1
    print(report.to_json({"status": "ok", "command": args.command, "written": out.written, **summary}),
          end="", file=stdout)
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
