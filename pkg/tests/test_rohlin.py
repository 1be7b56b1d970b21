from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from homtori.rohlin import (
    SpinAssignment,
    as_q2z,
    complements,
    det3,
    enumerate_consistent,
    is_turaev_consistent,
    periodic_extension,
    rho_bar,
    turaev_defect,
    welldef_invariance_check,
)

from oracles import reed_muller_2_3

ZERO3 = SpinAssignment(3, (0,) * 8)
BASIS = (1, 2, 4)


@pytest.fixture(scope="module")
def consistent():
    return {t: enumerate_consistent(t) for t in (0, 1)}


assignments3 = st.tuples(*[st.integers(0, 1)] * 8).map(lambda v: SpinAssignment(3, v))


def test_rho_bar_examples(consistent):
    assert rho_bar(ZERO3) == 0
    assert rho_bar(SpinAssignment(3, (0, 0, 0, 1, 0, 0, 0, 0))) == 1
    assert rho_bar(consistent[1][0]) == 1
    eighths = SpinAssignment(3, (1, 3, 5, 7, 0, 0, 0, 0), mode="eighths")
    assert rho_bar(eighths) == 0 and as_q2z(rho_bar(eighths), "eighths") == 0
    assert as_q2z(12, "eighths") == Fraction(3, 2)


def test_turaev_defect_examples(consistent):
    assert all(turaev_defect(ZERO3, x, y, z) == 0 for x, y, z in itertools.product(range(8), repeat=3))
    delta = SpinAssignment.from_function(3, lambda s: int(s == 0))
    assert turaev_defect(delta, *BASIS) == 1
    for t in (0, 1):
        for a in consistent[t]:
            assert all(turaev_defect(a, x, y, x) == 0 for x, y in itertools.product(range(8), repeat=2))
    with pytest.raises(ValueError):
        turaev_defect(SpinAssignment(3, (0,) * 8, "eighths"), *BASIS)


def test_consistency_examples():
    assert is_turaev_consistent(ZERO3, 0)
    assert not is_turaev_consistent(ZERO3, 1)
    assert is_turaev_consistent(SpinAssignment(3, (1,) * 8), 0)


def test_split_regression(consistent):
    assert len(consistent[0]) == 128
    assert len(consistent[1]) == 128
    assert ZERO3 in consistent[0]
    assert not set(consistent[0]) & set(consistent[1])


def test_solution_space_matches_reed_muller(consistent):
    rm = reed_muller_2_3()
    assert {a.values for a in consistent[0]} == rm
    cubic = tuple(int(s == 7) for s in range(8))
    assert {a.values for a in consistent[1]} == {tuple(x ^ y for x, y in zip(r, cubic)) for r in rm}


def test_rho_bar_parity(consistent):
    for t in (0, 1):
        assert consistent[t]
        assert all(rho_bar(a) == t for a in consistent[t])


def test_defect_symmetric_multilinear(consistent):
    for t in (0, 1):
        for a in consistent[t][::16]:
            for x, y, z in itertools.product(range(8), repeat=3):
                d = turaev_defect(a, x, y, z)
                assert d == turaev_defect(a, y, x, z) == turaev_defect(a, x, z, y)
                assert d == t & det3(x, y, z)
                for base in range(8):
                    assert turaev_defect(a, x, y, z, base) == d
            for x, x2, y, z in itertools.product(range(8), repeat=4):
                lhs = turaev_defect(a, x ^ x2, y, z)
                assert lhs == turaev_defect(a, x, y, z) ^ turaev_defect(a, x2, y, z)


def test_complements():
    for alpha in range(1, 16):
        spans = complements(alpha)
        assert len(spans) == 8
        assert all(len(s) == 8 and alpha not in s for s in spans)


def test_welldef_exhaustive():
    for values in itertools.product((0, 1), repeat=8):
        a3 = SpinAssignment(3, values)
        for alpha in range(1, 16):
            a4 = periodic_extension(a3, alpha)
            assert welldef_invariance_check(a4, alpha)


def test_welldef_errors():
    zero4 = SpinAssignment(4, (0,) * 16)
    assert all(welldef_invariance_check(zero4, alpha) for alpha in range(1, 16))
    with pytest.raises(ValueError):
        welldef_invariance_check(zero4, 0)
    bumped = SpinAssignment(4, (1,) + (0,) * 15)
    with pytest.raises(ValueError, match="periodic"):
        welldef_invariance_check(bumped, 3)


@given(assignments3, st.sampled_from([None, 0, 1]))
def test_json_round_trip(a, t):
    again, t2 = SpinAssignment.from_json(a.to_json(t))
    assert again == a and t2 == t


def test_json_keys_are_little_endian():
    a, t = SpinAssignment.from_json(
        '{"dim":3,"mode":"z2","t":1,"values":{"000":0,"100":1,"010":0,"110":0,'
        '"001":0,"101":0,"011":0,"111":0}}'
    )
    assert a[1] == 1 and t == 1


def test_validation():
    with pytest.raises(ValueError, match="missing"):
        SpinAssignment.from_mapping(3, {"000": 0})
    with pytest.raises(ValueError):
        SpinAssignment(3, (2,) + (0,) * 7)
    with pytest.raises(ValueError):
        SpinAssignment(5, (0,) * 32)
    with pytest.raises(ValueError):
        SpinAssignment.from_json("[]")
    with pytest.raises(ValueError):
        is_turaev_consistent(SpinAssignment(3, (0,) * 8, "eighths"), 0)
