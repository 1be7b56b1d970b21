from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from homtori.repvariety import family
from homtori.repvariety.family import (
    XY_PATTERN,
    RepClass,
    ResourceLimitError,
    UnsupportedPattern,
    brute_force_reps,
    canonical_pair,
    classes_from_json,
    classes_to_json,
    lambda_bar,
    lambda_ppp,
    pullback,
    pullback_pattern,
    solve_t3qq,
    solve_t4qq_nonpullback,
    t3_rep,
    theorem_parity_check,
)
from homtori.repvariety.reps import W2Data, are_conjugate, is_projective, so3_key, stabilizer_cover_check, w2_eval

odd_q = st.integers(0, 7).map(lambda n: 2 * n + 1)


@pytest.mark.parametrize("q, count", [(1, 1), (3, 5), (5, 13)])
@pytest.mark.parametrize("sigma", [0, 1])
def test_class_counts(q, count, sigma):
    classes = solve_t3qq(q, pullback_pattern(sigma))
    assert len(classes) == count == (q * q + 1) // 2
    kinds = [c.kind for c in classes]
    assert kinds.count("special") == 1
    for c in classes:
        assert c.orbit_size == (4 if c.kind == "special" else 8)
        assert c.k % 2 == 1 and c.l % 2 == 1 and 1 <= c.k <= q
        assert canonical_pair(q, c.k, c.l) == (c.k, c.l)


@pytest.mark.parametrize("q", [1, 3, 5, 7])
@pytest.mark.parametrize("sigma", [0, 1])
def test_solver_output_invariants(q, sigma):
    w2 = pullback_pattern(sigma)
    for c in solve_t3qq(q, w2):
        assert is_projective(c.rep)
        assert w2_eval(c.rep) == w2
        assert stabilizer_cover_check(c.rep, c.orbit)
        assert c.orbit_size * len(c.stabilizer) == 16
        assert c.orbit_size in (4, 8, 16)


def test_non_canonical_pairs_are_the_same_class():
    q = 5
    for k in range(1, 2 * q, 2):
        for l in range(1, 2 * q, 2):
            ck, cl = canonical_pair(q, k, l)
            r1 = pullback(t3_rep(q, k, l, 1))
            r2 = pullback(t3_rep(q, ck, cl, 1))
            assert are_conjugate(r1, r2, up_to_sign=True)


def test_canonical_pair():
    assert canonical_pair(3, 5, 1) == (1, 5)
    assert canonical_pair(3, 3, 5) == (3, 1)
    assert canonical_pair(3, 3, 3) == (3, 3)
    assert canonical_pair(3, 1, 5) == (1, 5)


@pytest.mark.parametrize("q", [1, 3, 5])
def test_nonpullback(q):
    (c,) = solve_t4qq_nonpullback(q)
    assert c.kind == "klein" and c.orbit_size == 4
    assert w2_eval(c.rep) == XY_PATTERN
    assert c.rep["a"] == c.rep["b"] == c.rep["x"]


@pytest.mark.parametrize("q, sigma, expected", [(3, 0, 9), (7, 1, 49)])
def test_lambda_examples(q, sigma, expected):
    assert lambda_bar(q, pullback_pattern(sigma)) == expected
    assert lambda_ppp(q, pullback_pattern(sigma)) == expected


def test_lambda_nonpullback():
    assert lambda_bar(5, XY_PATTERN) == 1


@settings(max_examples=8, deadline=None)
@given(odd_q, st.sampled_from([0, 1]))
def test_lambda_is_q_squared(q, sigma):
    w2 = pullback_pattern(sigma)
    assert lambda_bar(q, w2) == lambda_ppp(q, w2) == q * q


@pytest.mark.parametrize("q, w2", [(3, pullback_pattern(0)), (9, pullback_pattern(1)), (1, XY_PATTERN)])
def test_parity_examples(q, w2):
    r = theorem_parity_check(q, w2)
    assert (r.lambda_bar_mod2, r.det_bit, r.four_orbits % 2, r.passed) == (1, 1, 1, True)
    assert r.four_orbits == r.four_orbits_f2 == 1


def test_bad_inputs():
    with pytest.raises(ValueError, match="odd"):
        solve_t3qq(4, pullback_pattern(0))
    with pytest.raises(ValueError, match="odd"):
        solve_t4qq_nonpullback(2)
    with pytest.raises(UnsupportedPattern):
        solve_t3qq(3, XY_PATTERN)
    with pytest.raises(UnsupportedPattern):
        lambda_bar(3, W2Data.from_bits("011000"))
    with pytest.raises(ValueError):
        t3_rep(3, 2, 1, 0)


@pytest.mark.parametrize("q", [1, 3, 5])
@pytest.mark.parametrize("sigma", [0, 1])
def test_brute_force_matches_solver(q, sigma):
    w2 = pullback_pattern(sigma)
    found = brute_force_reps(q, w2)
    closed = solve_t3qq(q, w2)
    assert len(found) == len(closed)
    assert {so3_key(c.rep) for c in found} == {so3_key(c.rep) for c in closed}
    assert [(c.k, c.l, c.orbit_size) for c in found] == sorted((c.k, c.l, c.orbit_size) for c in closed)


def test_brute_force_guard(monkeypatch):
    monkeypatch.setenv(family.ORACLE_ENV, "8")
    with pytest.raises(ResourceLimitError):
        brute_force_reps(3, pullback_pattern(0))
    with pytest.raises(ValueError):
        brute_force_reps(3, pullback_pattern(0), modulus=24)


@pytest.mark.parametrize("q", [3, 5])
def test_json_round_trip(q):
    classes = solve_t3qq(q, pullback_pattern(1)) + solve_t4qq_nonpullback(q)
    text = classes_to_json(classes)
    again = classes_from_json(text)
    assert [c.to_dict() for c in again] == json.loads(text)
    assert [c.rep for c in again] == [c.rep for c in classes]


def test_json_record_shape():
    c = solve_t3qq(3, pullback_pattern(0))[0]
    d = c.to_dict()
    assert set(d) == {"q", "kind", "k", "l", "v_angle", "orbit", "stabilizer", "w2"}
    assert d["v_angle"].endswith("/12")
    assert all(len(s) == 6 for s in d["stabilizer"])
    assert RepClass.from_dict(d).to_dict() == d
