"""Circuit ingestion: a flat Clifford+T QASM subset and declarative proxy profiles.

Small circuits are parsed gate by gate and reduced to a
:class:`LogicalCircuitProfile`.  Instances too large to materialise as
circuits enter as JSON proxy profiles carrying the same statistics.
"""

from __future__ import annotations

import ast
import enum
import json
import math
import operator
import re
from dataclasses import dataclass, field

from .errors import (
    ConfigError,
    EstimatorError,
    OperandRangeError,
    QasmSyntaxError,
    UnsupportedGateError,
)

REMOTE_CNOT_CUTOFF = 4


class GateKind(str, enum.Enum):
    T = "t"
    TDG = "tdg"
    S = "s"
    SDG = "sdg"
    H = "h"
    X = "x"
    Z = "z"
    CNOT = "cx"
    CZ = "cz"
    RZ = "rz"

    @property
    def arity(self):
        return 2 if self in (GateKind.CNOT, GateKind.CZ) else 1


_ALIASES = {k.value: k for k in GateKind}
_ALIASES.update({"cnot": GateKind.CNOT, "CX": GateKind.CNOT, "CNOT": GateKind.CNOT, "CZ": GateKind.CZ})


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    qubits: tuple
    angle: float | None = None


@dataclass(frozen=True)
class GateList:
    qubit_count: int
    gates: tuple = ()

    def __post_init__(self):
        for g in self.gates:
            if len(g.qubits) != g.kind.arity:
                raise EstimatorError(f"{g.kind.value} takes {g.kind.arity} operand(s)", "profile")
            if any(q < 0 or q >= self.qubit_count for q in g.qubits):
                raise OperandRangeError(f"operand out of range in {g}")
            if g.kind.arity == 2 and g.qubits[0] == g.qubits[1]:
                raise EstimatorError(f"two-qubit gate on identical operands {g.qubits}", "profile")

    def __len__(self):
        return len(self.gates)


# --------------------------------------------------------------------------
# QASM subset parser

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>//[^\n]*)
  | (?P<string>"[^"\n]*")
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<arrow>->)
  | (?P<sym>[\[\](){},;+\-*/^])
    """,
    re.VERBOSE,
)

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNOPS = {ast.USub: operator.neg, ast.UAdd: operator.pos}


def _tokenize(text):
    tokens = []
    line = 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise QasmSyntaxError(f"unexpected character {text[pos]!r}", line)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
        elif kind not in ("ws", "comment"):
            tokens.append((kind, m.group(), line))
        pos = m.end()
    tokens.append(("eof", "", line))
    return tokens


def _eval_angle(expr, env, line):
    """Evaluate an arithmetic angle expression over ``pi`` and gate parameters."""
    try:
        tree = ast.parse(expr.replace("^", "**"), mode="eval")
    except SyntaxError:
        raise QasmSyntaxError(f"bad angle expression {expr!r}", line) from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name):
            if node.id == "pi":
                return math.pi
            if node.id in env:
                return env[node.id]
            raise QasmSyntaxError(f"unknown identifier {node.id!r} in angle", line)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
            return _UNOPS[type(node.op)](ev(node.operand))
        raise QasmSyntaxError(f"unsupported angle expression {expr!r}", line)

    return ev(tree)


@dataclass
class _GateDef:
    params: list
    args: list
    body: list  # (name, [expr strings], [arg names], line)


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0
        self.registers = {}  # name -> (offset, size)
        self.qubit_count = 0
        self.classical = set()
        self.defs = {}
        self.gates = []

    # token helpers
    def peek(self, k=0):
        return self.toks[self.i + k]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value, kind=None):
        tok = self.next()
        if tok[1] != value or (kind and tok[0] != kind):
            raise QasmSyntaxError(f"expected {value!r}, got {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def ident(self):
        tok = self.next()
        if tok[0] != "ident":
            raise QasmSyntaxError(f"expected identifier, got {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def integer(self):
        tok = self.next()
        if tok[0] != "number" or not tok[1].isdigit():
            raise QasmSyntaxError(f"expected integer, got {tok[1]!r}", tok[2])
        return int(tok[1])

    def expr_list(self):
        """Parse ``( e1, e2, ... )`` returning raw expression strings."""
        self.expect("(")
        exprs, cur, depth = [], [], 0
        while True:
            kind, val, line = self.next()
            if kind == "eof":
                raise QasmSyntaxError("unterminated parameter list", line)
            if val == "(":
                depth += 1
            elif val == ")":
                if depth == 0:
                    break
                depth -= 1
            elif val == "," and depth == 0:
                exprs.append(" ".join(cur))
                cur = []
                continue
            cur.append(val)
        if cur or exprs:
            exprs.append(" ".join(cur))
        return exprs

    # grammar
    def parse(self):
        while self.peek()[0] != "eof":
            self.statement()
        if not self.registers:
            raise QasmSyntaxError("no qubit register declared", self.peek()[2])
        return GateList(self.qubit_count, tuple(self.gates))

    def statement(self):
        kind, val, line = self.peek()
        if kind != "ident":
            raise QasmSyntaxError(f"unexpected token {val!r}", line)
        if val == "OPENQASM":
            self.next()
            self.next()
            self.expect(";")
        elif val == "include":
            self.next()
            tok = self.next()
            if tok[0] != "string":
                raise QasmSyntaxError("include expects a quoted file name", tok[2])
            self.expect(";")
        elif val in ("qreg", "creg"):
            self.next()
            name = self.ident()
            self.expect("[")
            size = self.integer()
            self.expect("]")
            self.expect(";")
            self.declare(name, size, quantum=(val == "qreg"))
        elif val in ("qubit", "bit"):
            self.next()
            size = 1
            if self.peek()[1] == "[":
                self.next()
                size = self.integer()
                self.expect("]")
            name = self.ident()
            self.expect(";")
            self.declare(name, size, quantum=(val == "qubit"))
        elif val == "gate":
            self.gate_definition()
        elif val in ("barrier", "measure", "reset"):
            # no effect on gate statistics
            while self.next()[1] != ";":
                if self.peek()[0] == "eof":
                    raise QasmSyntaxError("missing ';'", line)
        else:
            self.call()

    def declare(self, name_tok, size, quantum):
        name = name_tok[1]
        if name in self.registers or name in self.classical:
            raise QasmSyntaxError(f"register {name!r} redeclared", name_tok[2])
        if not quantum:
            self.classical.add(name)
            return
        self.registers[name] = (self.qubit_count, size)
        self.qubit_count += size

    def gate_definition(self):
        self.next()
        name_tok = self.ident()
        params = self.expr_list() if self.peek()[1] == "(" else []
        args = [self.ident()[1]]
        while self.peek()[1] == ",":
            self.next()
            args.append(self.ident()[1])
        self.expect("{")
        body = []
        while self.peek()[1] != "}":
            if self.peek()[0] == "eof":
                raise QasmSyntaxError(f"unterminated body of gate {name_tok[1]!r}", name_tok[2])
            gname, gline = self.ident()[1:]
            exprs = self.expr_list() if self.peek()[1] == "(" else []
            gargs = [self.ident()[1]]
            while self.peek()[1] == ",":
                self.next()
                gargs.append(self.ident()[1])
            self.expect(";")
            body.append((gname, exprs, gargs, gline))
        self.next()
        self.defs[name_tok[1]] = _GateDef([p.strip() for p in params], args, body)

    def operand(self):
        name_tok = self.ident()
        name = name_tok[1]
        if name not in self.registers:
            raise QasmSyntaxError(f"unknown qubit register {name!r}", name_tok[2])
        offset, size = self.registers[name]
        if self.peek()[1] == "[":
            self.next()
            idx = self.integer()
            self.expect("]")
            if idx >= size:
                raise OperandRangeError(f"index {idx} out of range for {name}[{size}]", name_tok[2])
            return [offset + idx]
        return list(range(offset, offset + size))

    def call(self):
        name, line = self.ident()[1:]
        exprs = self.expr_list() if self.peek()[1] == "(" else []
        operands = [self.operand()]
        while self.peek()[1] == ",":
            self.next()
            operands.append(self.operand())
        self.expect(";")
        widths = {len(o) for o in operands if len(o) > 1}
        if len(widths) > 1:
            raise QasmSyntaxError("register operands of unequal size", line)
        width = widths.pop() if widths else 1
        for k in range(width):
            qubits = [o[k] if len(o) > 1 else o[0] for o in operands]
            self.emit(name, [_eval_angle(e, {}, line) for e in exprs], qubits, line, depth=0)

    def emit(self, name, angles, qubits, line, depth):
        if depth > 64:
            raise QasmSyntaxError(f"gate {name!r} expands recursively", line)
        if name in self.defs:
            d = self.defs[name]
            if len(angles) != len(d.params) or len(qubits) != len(d.args):
                raise QasmSyntaxError(f"wrong number of arguments to gate {name!r}", line)
            env = dict(zip(d.params, angles))
            amap = dict(zip(d.args, qubits))
            for gname, exprs, gargs, gline in d.body:
                try:
                    sub_q = [amap[a] for a in gargs]
                except KeyError as exc:
                    raise QasmSyntaxError(f"unknown argument {exc.args[0]!r} in gate {name!r}", gline) from None
                self.emit(gname, [_eval_angle(e, env, gline) for e in exprs], sub_q, gline, depth + 1)
            return
        kind = _ALIASES.get(name)
        if kind is None:
            raise UnsupportedGateError(f"unsupported gate {name!r}", line)
        if len(qubits) != kind.arity:
            raise QasmSyntaxError(f"{name} takes {kind.arity} operand(s), got {len(qubits)}", line)
        if kind.arity == 2 and qubits[0] == qubits[1]:
            raise QasmSyntaxError(f"{name} operands must be distinct", line)
        if kind is GateKind.RZ:
            if len(angles) != 1:
                raise QasmSyntaxError("rz takes exactly one angle", line)
            self.gates.append(Gate(kind, tuple(qubits), angles[0]))
        else:
            if angles:
                raise QasmSyntaxError(f"{name} takes no parameters", line)
            self.gates.append(Gate(kind, tuple(qubits)))


def parse_qasm(text):
    """Parse QASM-subset source into a flat :class:`GateList`.

    Registers are concatenated in declaration order into one global index
    space; user ``gate`` definitions are inlined at each call site.
    """
    return _Parser(text).parse()


def to_qasm(gates):
    lines = ["OPENQASM 2.0;", f"qreg q[{gates.qubit_count}];"]
    for g in gates.gates:
        ops = ",".join(f"q[{q}]" for q in g.qubits)
        if g.kind is GateKind.RZ:
            lines.append(f"rz({g.angle!r}) {ops};")
        else:
            lines.append(f"{g.kind.value} {ops};")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Profiles

@dataclass(frozen=True)
class LogicalCircuitProfile:
    algorithm_logical_qubits: int
    t_per_block_encoding: int
    block_encodings: int | None = 1
    two_qubit_per_block: int = 0
    remote_cnot_per_block: int = 0
    distinct_pair_count: int = 0
    rotation_count_per_block: int = 0
    label: str = ""
    defaulted: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        for f in ("algorithm_logical_qubits", "t_per_block_encoding", "two_qubit_per_block",
                  "remote_cnot_per_block", "distinct_pair_count", "rotation_count_per_block"):
            if getattr(self, f) < 0:
                raise EstimatorError(f"negative count for {f}", "profile")
        if self.block_encodings is not None and self.block_encodings < 0:
            raise EstimatorError("negative count for block_encodings", "profile")
        if self.remote_cnot_per_block > self.two_qubit_per_block:
            raise EstimatorError("remote CNOTs exceed two-qubit gates", "profile")
        n = self.algorithm_logical_qubits
        if self.distinct_pair_count > n * (n - 1) // 2:
            raise EstimatorError("more distinct pairs than qubit pairs", "profile")


def extract_profile(gates, remote_cutoff=REMOTE_CNOT_CUTOFF, label=""):
    counts = {k: 0 for k in GateKind}
    remote = 0
    pairs = set()
    for g in gates.gates:
        counts[g.kind] += 1
        if g.kind.arity == 2:
            a, b = g.qubits
            pairs.add((min(a, b), max(a, b)))
            if g.kind is GateKind.CNOT and abs(a - b) > remote_cutoff:
                remote += 1
    return LogicalCircuitProfile(
        algorithm_logical_qubits=gates.qubit_count,
        t_per_block_encoding=counts[GateKind.T] + counts[GateKind.TDG],
        block_encodings=1,
        two_qubit_per_block=counts[GateKind.CNOT] + counts[GateKind.CZ],
        remote_cnot_per_block=remote,
        distinct_pair_count=len(pairs),
        rotation_count_per_block=counts[GateKind.RZ],
        label=label,
    )


_OPTIONAL_KEYS = {
    "two_qubit_per_block": "two_qubit_per_block",
    "remote_cnot_per_block": "remote_cnot_per_block",
    "distinct_pairs": "distinct_pair_count",
    "rotations_per_block": "rotation_count_per_block",
}


def _count(doc, key):
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be numeric, got {value!r}")
    if value < 0:
        raise EstimatorError(f"negative count for {key}", "profile")
    if value != int(value):
        raise ConfigError(f"{key} must be a whole count, got {value!r}")
    return int(value)


def load_proxy_profile(doc):
    """Build a profile from a proxy document (dict) as published for large instances.

    ``t_total`` means a pre-multiplied total (``block_encodings`` = 1);
    otherwise ``t_per_block`` is required and ``block_encodings`` may be left
    unset for the algorithm layer to derive from the 1-norm.
    """
    if "qubits" not in doc:
        raise ConfigError("proxy profile missing mandatory key 'qubits'")
    qubits = _count(doc, "qubits")
    if "t_total" in doc:
        t = _count(doc, "t_total")
        blocks = 1
    elif "t_per_block" in doc:
        t = _count(doc, "t_per_block")
        blocks = _count(doc, "block_encodings") if doc.get("block_encodings") is not None else None
    else:
        raise ConfigError("proxy profile needs 't_total' or 't_per_block'")
    values, defaulted = {}, set()
    for key, attr in _OPTIONAL_KEYS.items():
        if key in doc:
            values[attr] = _count(doc, key)
        else:
            defaulted.add(attr)
    return LogicalCircuitProfile(
        algorithm_logical_qubits=qubits,
        t_per_block_encoding=t,
        block_encodings=blocks,
        label=str(doc.get("label", "")),
        defaulted=frozenset(defaulted),
        **values,
    )


def profile_to_dict(profile):
    doc = {
        "label": profile.label,
        "qubits": profile.algorithm_logical_qubits,
        "t_per_block": profile.t_per_block_encoding,
        "block_encodings": profile.block_encodings,
        "two_qubit_per_block": profile.two_qubit_per_block,
        "remote_cnot_per_block": profile.remote_cnot_per_block,
        "distinct_pairs": profile.distinct_pair_count,
        "rotations_per_block": profile.rotation_count_per_block,
    }
    if profile.defaulted:
        doc["defaulted"] = sorted(profile.defaulted)
    return doc


def load_profile_file(path):
    try:
        with open(path) as fh:
            return load_proxy_profile(json.load(fh))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read profile {path}: {exc}") from exc
