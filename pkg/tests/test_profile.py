import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ftqc_estimator.errors import (
    ConfigError,
    EstimatorError,
    OperandRangeError,
    QasmSyntaxError,
    UnsupportedGateError,
)
from ftqc_estimator.profile import (
    Gate,
    GateKind,
    GateList,
    LogicalCircuitProfile,
    extract_profile,
    load_proxy_profile,
    parse_qasm,
    profile_to_dict,
    to_qasm,
)

from oracles import random_gatelist, random_program

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


def test_empty_program():
    g = parse_qasm(HEADER + "qreg q[3];\n")
    assert g.qubit_count == 3 and g.gates == ()


def test_two_t_gates():
    g = parse_qasm(HEADER + "qreg q[1];\nt q[0]; t q[0];")
    assert [x.kind for x in g.gates] == [GateKind.T, GateKind.T]
    assert all(x.qubits == (0,) for x in g.gates)


def test_registers_flatten_in_declaration_order():
    g = parse_qasm(HEADER + "qreg a[2];\nqreg b[3];\ncx a[1],b[2];")
    assert g.qubit_count == 5
    assert g.gates[0].qubits == (1, 4)


def test_register_broadcast():
    g = parse_qasm(HEADER + "qreg q[3];\nh q;")
    assert [x.qubits for x in g.gates] == [(0,), (1,), (2,)]


def test_gate_definition_is_inlined():
    text = HEADER + "gate tt a { t a; t a; }\ngate pair a, b { tt a; cx a, b; }\nqreg q[2];\npair q[0], q[1];"
    g = parse_qasm(text)
    assert [x.kind for x in g.gates] == [GateKind.T, GateKind.T, GateKind.CNOT]


def test_rz_angle_expression():
    g = parse_qasm(HEADER + "qreg q[1];\nrz(-pi/4 + 2*0.5) q[0];")
    assert g.gates[0].angle == pytest.approx(-0.7853981633974483 + 1.0)


def test_barrier_measure_and_creg_ignored():
    g = parse_qasm(HEADER + "qreg q[2];\ncreg c[2];\nbarrier q;\nz q[1];\nmeasure q[0] -> c[0];\nreset q;")
    assert len(g) == 1


def test_unterminated_barrier():
    with pytest.raises(QasmSyntaxError):
        parse_qasm(HEADER + "qreg q[2];\nbarrier q")


def test_syntax_error_reports_line():
    with pytest.raises(QasmSyntaxError) as info:
        parse_qasm(HEADER + "qreg q[2];\nt q[0]\nt q[1];")
    assert info.value.line is not None
    assert "line" in str(info.value)


def test_unsupported_gate():
    with pytest.raises(UnsupportedGateError):
        parse_qasm(HEADER + "qreg q[2];\nccx q[0],q[1],q[0];")


def test_operand_out_of_range():
    with pytest.raises(OperandRangeError):
        parse_qasm(HEADER + "qreg q[2];\nt q[2];")


def test_missing_register_is_an_error():
    with pytest.raises(EstimatorError):
        parse_qasm(HEADER + "t q[0];")


def test_gatelist_rejects_identical_operands():
    with pytest.raises(EstimatorError):
        GateList(2, (Gate(GateKind.CNOT, (1, 1)),))


@pytest.mark.parametrize("a,b,remote", [(0, 7, 1), (2, 5, 0), (0, 4, 0), (0, 5, 1), (9, 1, 1)])
def test_remote_cnot_rule(a, b, remote):
    p = extract_profile(parse_qasm(HEADER + f"qreg q[10];\ncnot q[{a}],q[{b}];"))
    assert p.two_qubit_per_block == 1
    assert p.remote_cnot_per_block == remote


def test_cz_is_never_remote():
    p = extract_profile(parse_qasm(HEADER + "qreg q[10];\ncz q[0],q[9];"))
    assert (p.two_qubit_per_block, p.remote_cnot_per_block) == (1, 0)


def test_remote_cutoff_is_configurable():
    g = parse_qasm(HEADER + "qreg q[10];\ncx q[0],q[3];")
    assert extract_profile(g, remote_cutoff=2).remote_cnot_per_block == 1


def test_remote_ratio_fixture(fixtures_dir):
    p = extract_profile(parse_qasm((fixtures_dir / "remote_ratio.qasm").read_text()))
    assert (p.two_qubit_per_block, p.remote_cnot_per_block, p.t_per_block_encoding) == (10880, 9529, 7261)
    assert p.remote_cnot_per_block / p.two_qubit_per_block == pytest.approx(0.876, abs=5e-4)


@pytest.mark.parametrize("seed", range(50))
def test_generator_tallies(seed):
    rng = random.Random(seed)
    text, tally = random_program(rng, rng.randint(1, 14), 200)
    g = parse_qasm(text)
    p = extract_profile(g)
    assert len(g) == tally["total"]
    assert p.t_per_block_encoding == tally["t"]
    assert p.two_qubit_per_block == tally["two"]
    assert p.remote_cnot_per_block == tally["remote"]
    assert p.rotation_count_per_block == tally["rz"]
    assert p.distinct_pair_count == tally["pairs"]


@pytest.mark.parametrize("seed", range(30))
def test_round_trip(seed):
    rng = random.Random(1000 + seed)
    g = parse_qasm(random_program(rng, rng.randint(1, 9), 60)[0])
    assert parse_qasm(to_qasm(g)) == g


@given(st.integers(0, 2**31), st.randoms(use_true_random=False))
def test_profile_is_permutation_invariant(seed, rnd):
    g = random_gatelist(random.Random(seed), n_qubits=6, max_gates=40)
    shuffled = list(g.gates)
    rnd.shuffle(shuffled)
    assert extract_profile(g) == extract_profile(GateList(g.qubit_count, tuple(shuffled)))


@given(st.integers(0, 2**31))
def test_profile_count_bounds(seed):
    p = extract_profile(random_gatelist(random.Random(seed), n_qubits=8, max_gates=50))
    assert p.remote_cnot_per_block <= p.two_qubit_per_block
    assert p.distinct_pair_count <= p.two_qubit_per_block
    n = p.algorithm_logical_qubits
    assert p.distinct_pair_count <= n * (n - 1) // 2


def test_proxy_profile_56o():
    p = load_proxy_profile({"label": "XVIII-56o", "qubits": 994, "t_total": 8.2e8})
    assert p.algorithm_logical_qubits == 994
    assert p.t_per_block_encoding == 820_000_000 and p.block_encodings == 1
    assert "distinct_pair_count" in p.defaulted and p.distinct_pair_count == 0


def test_proxy_profile_150o():
    p = load_proxy_profile({"label": "XVIII-150o", "qubits": 2954, "t_total": 1.12e10})
    assert p.t_per_block_encoding == 11_200_000_000


def test_proxy_profile_negative():
    with pytest.raises(EstimatorError, match="negative count"):
        load_proxy_profile({"qubits": -1, "t_total": 5})


def test_proxy_profile_missing_keys():
    with pytest.raises(ConfigError):
        load_proxy_profile({"t_total": 5})
    with pytest.raises(ConfigError):
        load_proxy_profile({"qubits": 5})


def test_proxy_per_block_without_repetitions():
    p = load_proxy_profile({"qubits": 129, "t_per_block": 27500})
    assert p.block_encodings is None


def test_profile_dict_round_trip(store):
    for name in ("xviii-56o", "xviii-small", "xviii-150o"):
        p = store.profile(name)
        again = load_proxy_profile({k: v for k, v in profile_to_dict(p).items() if k != "defaulted"})
        fields = ("algorithm_logical_qubits", "t_per_block_encoding", "block_encodings",
                  "two_qubit_per_block", "remote_cnot_per_block", "distinct_pair_count")
        assert all(getattr(again, f) == getattr(p, f) for f in fields)


def test_profile_invariants():
    with pytest.raises(EstimatorError):
        LogicalCircuitProfile(10, 0, two_qubit_per_block=1, remote_cnot_per_block=2)
    with pytest.raises(EstimatorError):
        LogicalCircuitProfile(3, 0, distinct_pair_count=4)
