import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ftqc_estimator.errors import EstimatorError
from ftqc_estimator.gsc import (
    DEFAULT_EXPANSION_RATIO,
    CompiledLayout,
    CycleAllocation,
    CycleModel,
    GSCHyperparameters,
    allocate_cycles,
    compile_expansion,
    solve_cycles_per_magic_state,
)
from ftqc_estimator.profile import LogicalCircuitProfile

MODEL = CycleModel(cycles_per_t_meas=0.24, cycles_per_magic_state=10.5, factory_count=2,
                   prep_cycles_per_compiled_qubit=9.3, combined_fraction=0.0127)


def test_expansion_56o():
    lay = compile_expansion(LogicalCircuitProfile(994, 1))
    assert lay.compiled_logical_qubits == lay.data_elus == 4232
    assert DEFAULT_EXPANSION_RATIO == 4232 / 994


def test_expansion_rejects():
    with pytest.raises(EstimatorError):
        compile_expansion(LogicalCircuitProfile(0, 1))
    with pytest.raises(EstimatorError):
        compile_expansion(LogicalCircuitProfile(5, 1), expansion_ratio=0.5)
    with pytest.raises(EstimatorError):
        CompiledLayout(10, 9, 0, 1.0)


@pytest.mark.parametrize("name,total", [("small-pre-zx", 9.11e8), ("small-post-zx", 3.83e8)])
def test_published_columns_sum_to_totals(store, name, total):
    cycles = store.scenario(name).run().cycles
    assert abs(cycles.total_cycles - total) / total <= 0.005


@pytest.mark.parametrize("seed", range(1000))
def test_allocation_conservation(seed):
    rng = random.Random(seed)
    parts = [rng.randrange(0, 10 ** rng.randint(0, 12)) for _ in range(4)]
    alloc = CycleAllocation.replay(*parts)
    assert alloc.total_cycles == sum(parts)
    assert alloc.to_dict()["total_cycles"] == sum(parts)


@given(st.integers(1, 10**10), st.integers(1, 5000), st.sampled_from([3, 5, 9, 13, 25]))
def test_model_allocation_conservation(t, n, d):
    lay = compile_expansion(LogicalCircuitProfile(n, 1))
    a = allocate_cycles(t, lay, d, MODEL)
    assert a.total_cycles == (a.t_measurement_cycles + a.distillation_cycles
                              + a.graph_prep_cycles + a.combined_prep_distill_cycles)


@given(st.integers(1, 10**9), st.integers(1, 10**9))
def test_cycles_monotone_in_t(a, b):
    lay = compile_expansion(LogicalCircuitProfile(100, 1))
    lo, hi = sorted((a, b))
    assert allocate_cycles(lo, lay, 13, MODEL).total_cycles <= allocate_cycles(hi, lay, 13, MODEL).total_cycles


@given(st.sampled_from([3, 5, 7, 9, 11, 13, 15, 17]), st.sampled_from([3, 5, 7, 9, 11, 13, 15, 17]))
def test_cycles_monotone_in_distance(a, b):
    lay = compile_expansion(LogicalCircuitProfile(100, 1))
    lo, hi = sorted((a, b))
    assert allocate_cycles(10**7, lay, lo, MODEL).total_cycles <= allocate_cycles(10**7, lay, hi, MODEL).total_cycles


def test_doubling_factories_halves_distillation():
    lay = compile_expansion(LogicalCircuitProfile(100, 1))
    one = allocate_cycles(10**8, lay, 13, MODEL)
    from dataclasses import replace
    two = allocate_cycles(10**8, lay, 13, replace(MODEL, factory_count=4))
    assert abs(2 * two.distillation_cycles - one.distillation_cycles) <= 2
    assert two.total_cycles < one.total_cycles


def test_solver_hits_target():
    lay = compile_expansion(LogicalCircuitProfile(994, 1))
    target = 8.64e8
    cms = solve_cycles_per_magic_state(target, 1.45e8, lay, 13, MODEL)
    from dataclasses import replace
    got = allocate_cycles(1.45e8, lay, 13, replace(MODEL, cycles_per_magic_state=cms)).total_cycles
    assert abs(got - target) / target < 1e-6
    with pytest.raises(EstimatorError):
        solve_cycles_per_magic_state(10, 1.45e8, lay, 13, MODEL)


def test_bad_inputs():
    lay = compile_expansion(LogicalCircuitProfile(10, 1))
    with pytest.raises(EstimatorError):
        allocate_cycles(0, lay, 13, MODEL)
    with pytest.raises(EstimatorError):
        CycleModel(1, 1, 0, 1, 1)
    with pytest.raises(EstimatorError):
        CycleAllocation.replay(-1, 0, 0, 0)
    with pytest.raises(EstimatorError):
        GSCHyperparameters(teleportation_threshold=0)
