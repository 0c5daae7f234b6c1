import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ftqc_estimator.errors import EstimatorError
from ftqc_estimator.qec import (
    CodeParameters,
    FactoryKind,
    Platform,
    cultivation_output_error,
    factory,
    logical_error_per_cycle,
    min_distance,
    platform_code,
)

from oracles import scan_distance

ION = platform_code(Platform.ION_TRAP)


def test_logical_error_example(derived):
    assert logical_error_per_cycle(ION, 13) == pytest.approx(derived["logical_error_d13_ion"], rel=1e-12)
    assert logical_error_per_cycle(ION, 13) == pytest.approx(1e-15, rel=1e-9)


def test_min_distance_example(derived):
    assert min_distance(ION, 7.6e11) == derived["min_distance_7.6e11"]


@pytest.mark.parametrize("d", [2, 1, 4, 0])
def test_bad_distance(d):
    with pytest.raises(EstimatorError):
        logical_error_per_cycle(ION, d)


def random_instance(rng):
    p_th = 10 ** rng.uniform(-2.5, -1.2)
    p = p_th * 10 ** rng.uniform(-3, -0.3)
    A = rng.choice([0.03, 0.1, 0.3])
    volume = 10 ** rng.uniform(0, 16)
    budget = 10 ** rng.uniform(-4, -0.5)
    return p, p_th, A, volume, budget


@pytest.mark.parametrize("seed", range(1000))
def test_min_distance_matches_scan(seed):
    p, p_th, A, volume, budget = random_instance(random.Random(seed))
    expect = scan_distance(p, p_th, A, volume, budget)
    code = CodeParameters(p, p_th, A)
    if expect is None:
        with pytest.raises(EstimatorError, match="saturated"):
            min_distance(code, volume, budget)
    else:
        assert min_distance(code, volume, budget) == expect


def test_saturation_is_an_error():
    with pytest.raises(EstimatorError, match="saturated"):
        min_distance(CodeParameters(9e-3, 1e-2), 1e15)


@given(st.floats(1, 1e18), st.floats(1e-6, 0.5))
def test_erasure_never_needs_more_distance(volume, budget):
    conv = min_distance(platform_code(Platform.NEUTRAL_ATOM_CONVENTIONAL), volume, budget)
    eras = min_distance(platform_code(Platform.NEUTRAL_ATOM_ERASURE), volume, budget)
    assert eras <= conv


@given(st.floats(1, 1e15), st.floats(1, 1e15))
def test_distance_monotone_in_volume(a, b):
    lo, hi = sorted((a, b))
    assert min_distance(ION, lo) <= min_distance(ION, hi)


def test_invalid_code_parameters():
    with pytest.raises(EstimatorError):
        CodeParameters(2e-2, 1e-2)
    with pytest.raises(EstimatorError):
        min_distance(ION, 0.5)
    with pytest.raises(EstimatorError):
        platform_code("superconducting")


def test_cultivation_factory():
    f = factory(FactoryKind.CULTIVATION, ION, 13)
    assert f.physical_qubits_per_factory == 9200
    assert f.output_error == 4e-12 and f.warnings == ()
    assert factory("cultivation", CodeParameters(5e-4, 1e-2)).output_error == pytest.approx(4e-11)
    assert factory("cultivation", CodeParameters(5e-4, 1e-2)).warnings


def test_distillation_factory(derived):
    f = factory(FactoryKind.DISTILLATION, ION, 13)
    assert f.output_error == pytest.approx(derived["distillation_error_p1e-4"], rel=1e-12)
    assert f.physical_qubits_per_factory == 12 * 169
    assert f.cycles_per_magic_state == 143
    assert f.warnings


def test_unknown_factory():
    with pytest.raises(EstimatorError):
        factory("teleport", ION)


@given(st.floats(1e-4, 5e-3), st.floats(1e-4, 5e-3))
def test_cultivation_error_monotone(a, b):
    lo, hi = sorted((a, b))
    assert cultivation_output_error(lo) <= cultivation_output_error(hi)
