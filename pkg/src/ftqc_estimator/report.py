"""Report emission: atomic JSON/CSV writers, the quantum-vs-classical comparison,
and optional figure rendering."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

from .errors import EstimatorError

COMPARISON_COLUMNS = ("orbitals", "qpu_days_ion", "qpu_days_na", "cpu_days")


def _json_default(obj):
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if isinstance(obj, (set, frozenset, tuple)):
        return sorted(obj) if isinstance(obj, (set, frozenset)) else list(obj)
    if hasattr(obj, "value"):
        return obj.value
    try:
        return float(obj)
    except (TypeError, ValueError):
        raise TypeError(f"not JSON serializable: {type(obj).__name__}") from None


def to_json(doc):
    return json.dumps(doc, indent=2, sort_keys=False, default=_json_default, allow_nan=True) + "\n"


def atomic_write(path, text):
    """Write via a temporary file in the target directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def write_json(path, doc):
    return atomic_write(path, to_json(doc))


def csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def write_csv(path, header, rows):
    return atomic_write(path, csv_text(header, rows))


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def read_points(path):
    """Two-column numeric series (header row optional)."""
    pts = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].startswith("#"):
                continue
            try:
                pts.append((float(row[0]), float(row[1])))
            except ValueError:
                if pts:
                    raise
            except IndexError:
                raise ValueError(f"expected two columns, got {row}") from None
    return pts


def comparison(quantum_ion, quantum_na, classical):
    """Per-size table and speedups.

    ``quantum_ion`` and ``quantum_na`` map orbitals to QPU days; ``classical``
    maps orbitals to CPU days.  Keys must match exactly.
    """
    if not classical:
        raise EstimatorError("classical series is empty", "report")
    if not quantum_ion:
        raise EstimatorError("quantum series is empty", "report")
    keys = set(classical)
    if set(quantum_ion) != keys or (quantum_na and set(quantum_na) != keys):
        raise EstimatorError(
            f"series keys differ: quantum {sorted(quantum_ion)} vs classical {sorted(keys)}", "report")
    rows = []
    speedups = {}
    for n in sorted(keys):
        q = quantum_ion[n]
        na = quantum_na.get(n) if quantum_na else None
        rows.append([n, q, "" if na is None else na, classical[n]])
        speedups[f"{n}o"] = classical[n] / q if q else math.inf
    verdict = {
        "speedups": speedups,
        "quantum_faster_at": [k for k, v in speedups.items() if v > 1],
        "advantage_everywhere": all(v > 1 for v in speedups.values()),
    }
    return list(COMPARISON_COLUMNS), rows, verdict


def emit_comparison(quantum, classical, quantum_na=(), out_dir=None):
    """Compare ResourceEstimate lists with ClassicalRunRecord lists by orbital count."""
    def keyed(pairs):
        out = {}
        for n, days in pairs:
            if n in out:
                raise EstimatorError(f"duplicate orbital count {n} in series", "report")
            out[n] = days
        return out

    header, rows, verdict = comparison(
        keyed((e.n_orbitals, e.runtime_days) for e in quantum),
        keyed((e.n_orbitals, e.runtime_days) for e in quantum_na),
        keyed((r.orbitals, r.cpu_days) for r in classical))
    if out_dir is not None:
        write_csv(Path(out_dir) / "comparison.csv", header, rows)
        write_json(Path(out_dir) / "comparison.json", verdict)
    return header, rows, verdict


# figures are opt-in; matplotlib is imported lazily with a file-only backend
def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot_fit(fit_doc, published, path):
    plt = _pyplot()
    pts = fit_doc["points"]
    xs = [p[0] for p in pts]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(xs, [p[1] for p in pts], "o", label="input")
    lo, hi = min(xs), max(xs) * 1.7
    grid = [lo + (hi - lo) * i / 100 for i in range(101)]

    def curve(slope, icpt):
        if fit_doc["kind"] == "linear":
            return [slope * x + icpt for x in grid]
        return [icpt * math.exp(slope * x) for x in grid]

    ax.plot(grid, curve(fit_doc["slope_or_rate"], fit_doc["intercept_or_prefactor"]), label="fit")
    if published:
        ax.plot(grid, curve(published["slope_or_rate"], published["intercept_or_prefactor"]), "--",
                label="published coefficients")
    if fit_doc["kind"] == "exponential":
        ax.set_yscale("log")
    ax.set_xlabel("orbitals")
    ax.set_ylabel("days")
    ax.legend()
    fig.tight_layout()
    _save(fig, path)
    plt.close(fig)
    return path


def plot_comparison(header, rows, path):
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5, 3.5))
    xs = [r[0] for r in rows]
    for col, label in ((1, "QPU ion trap"), (2, "QPU neutral atom"), (3, "CPU")):
        ys = [r[col] for r in rows]
        if all(y != "" for y in ys):
            ax.plot(xs, ys, "o-", label=label)
    ax.set_yscale("log")
    ax.set_xlabel("orbitals")
    ax.set_ylabel("days")
    ax.legend()
    fig.tight_layout()
    _save(fig, path)
    plt.close(fig)
    return path


def plot_ablation(table, path):
    plt = _pyplot()
    names = table.names()
    days = [table[n].runtime_days for n in names]
    fig, ax = plt.subplots(figsize=(6, 0.3 * len(names) + 1.2))
    ax.barh(names, days)
    ax.set_xscale("log")
    ax.invert_yaxis()
    ax.set_xlabel("runtime (days)")
    fig.tight_layout()
    _save(fig, path)
    plt.close(fig)
    return path


def plot_uncertainty(series, path):
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot([s[0] for s in series], [s[1] for s in series], "o-")
    ax.set_yscale("log")
    ax.set_xlabel("orbitals")
    ax.set_ylabel("uncertainty (mHa)")
    fig.tight_layout()
    _save(fig, path)
    plt.close(fig)
    return path


def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f".{path.stem}.tmp{path.suffix}")
    fig.savefig(tmp)
    os.replace(tmp, path)
