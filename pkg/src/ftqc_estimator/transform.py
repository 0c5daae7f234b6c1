"""Circuit-transform layer.

Large instances are reduced by measured per-instance factors; fixture-scale
circuits can be cleaned with :func:`peephole_cancel`, which only rewrites
gates that are adjacent on their qubits.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ._numeric import ceil_tol
from .errors import EstimatorError
from .profile import Gate, GateKind, GateList

K = GateKind


@dataclass(frozen=True)
class ReductionFactors:
    f_t: float = 1.0
    f_two_qubit: float = 1.0
    f_remote: float = 1.0
    f_subroutines: float = 1.0

    def __post_init__(self):
        for name in ("f_t", "f_two_qubit", "f_remote", "f_subroutines"):
            if not getattr(self, name) >= 1:
                raise EstimatorError(f"reduction factor {name} must be >= 1", "transform")

    @classmethod
    def from_dict(cls, doc):
        return cls(**{k: float(v) for k, v in doc.items()})

    def to_dict(self):
        return {"f_t": self.f_t, "f_two_qubit": self.f_two_qubit,
                "f_remote": self.f_remote, "f_subroutines": self.f_subroutines}


def apply_reduction(profile, f):
    two_qubit = ceil_tol(profile.two_qubit_per_block / f.f_two_qubit)
    remote = min(ceil_tol(profile.remote_cnot_per_block / f.f_remote), two_qubit)
    label = profile.label if profile.label.endswith("+zx") else profile.label + "+zx"
    return replace(
        profile,
        t_per_block_encoding=ceil_tol(profile.t_per_block_encoding / f.f_t),
        two_qubit_per_block=two_qubit,
        remote_cnot_per_block=remote,
        label=label,
    )


_CANCEL = {
    (K.T, K.TDG), (K.TDG, K.T), (K.S, K.SDG), (K.SDG, K.S),
    (K.H, K.H), (K.X, K.X), (K.Z, K.Z),
}
_FUSE = {
    (K.T, K.T): K.S,
    (K.TDG, K.TDG): K.SDG,
    (K.S, K.S): K.Z,
    (K.SDG, K.SDG): K.Z,
}


def _same_two_qubit(a, b):
    if a.kind is not b.kind:
        return False
    if a.kind is K.CZ:
        return set(a.qubits) == set(b.qubits)
    return a.qubits == b.qubits


def _single_pass(gates):
    out = []
    stacks = [[] for _ in range(gates.qubit_count)]  # per-qubit indices into out
    changed = False

    def push(g):
        out.append(g)
        for q in g.qubits:
            stacks[q].append(len(out) - 1)

    def pop(j):
        for q in out[j].qubits:
            stacks[q].pop()
        out[j] = None

    for g in gates.gates:
        pending = g
        while pending is not None:
            tops = [stacks[q][-1] if stacks[q] else None for q in pending.qubits]
            j = tops[0]
            if j is None or any(t != j for t in tops):
                push(pending)
                break
            prev = out[j]
            if pending.kind.arity == 2:
                if _same_two_qubit(prev, pending):
                    pop(j)
                    changed = True
                else:
                    push(pending)
                break
            if prev.kind.arity != 1:
                push(pending)
                break
            key = (prev.kind, pending.kind)
            if key in _CANCEL:
                pop(j)
                changed = True
                pending = None
            elif key in _FUSE:
                pop(j)
                changed = True
                # the fused gate may combine again with what is now on top
                pending = Gate(_FUSE[key], pending.qubits)
            else:
                push(pending)
                break
    return GateList(gates.qubit_count, tuple(g for g in out if g is not None)), changed


def peephole_cancel(gates):
    """Cancel adjacent inverse pairs and fuse T.T -> S, S.S -> Z until nothing changes."""
    changed = True
    while changed:
        gates, changed = _single_pass(gates)
    return gates


def t_count(gates):
    return sum(1 for g in gates.gates if g.kind in (K.T, K.TDG))
