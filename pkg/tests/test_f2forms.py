from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from homtori.f2forms import (
    EVEN,
    ODD,
    OneClass,
    TwoForm,
    admissibility_failure,
    all_bases,
    count_four_orbits,
    cup_pairing,
    decompose,
    decomposition_status,
    det_invariance_check,
    is_admissible,
    klein_census,
    pfaffian,
    pontrjagin_square,
    quad_eval,
    wedge,
)

from oracles import census_four_orbits, decomposable_by_search, integral_square

a1, a2, a3, a4 = (OneClass.basis(i) for i in range(1, 5))
W12 = TwoForm.parse("12")
W12_34 = TwoForm.parse("12+34")

one_classes = st.integers(0, 15).map(OneClass)
two_forms = st.integers(0, 63).map(TwoForm)


def test_parsing_and_printing():
    assert OneClass.parse("1+3") == OneClass.parse("a1+a3") == a1 + a3
    assert str(a1 + a3) == "a1+a3"
    assert str(OneClass(0)) == "0" and OneClass.parse("0") == OneClass(0)
    assert TwoForm.parse("34+12") == W12_34
    assert str(W12_34) == "12+34"
    for w in TwoForm.all():
        assert TwoForm.parse(str(w)) == w
    for bad in ("5", "1+", "a0"):
        with pytest.raises(ValueError):
            OneClass.parse(bad)
    for bad in ("11", "15", "1"):
        with pytest.raises(ValueError):
            TwoForm.parse(bad)


def test_wedge_examples():
    assert wedge(a1, a2) == W12
    assert all(not wedge(a, a) for a in OneClass.all())
    assert wedge(a1 + a3, a2 + a4) == TwoForm.parse("12+14+23+34")


def test_wedge_bilinear_alternating_exhaustive():
    for a, b in itertools.product(OneClass.all(), repeat=2):
        assert wedge(a, b) == wedge(b, a)   # characteristic 2
        for c in OneClass.all():
            assert wedge(a + b, c) == wedge(a, c) + wedge(b, c)


def test_pfaffian():
    assert pfaffian(W12) == 0
    assert pfaffian(W12_34) == 1
    zeros = [w for w in TwoForm.all() if pfaffian(w) == 0]
    assert len(zeros) == 36
    assert set(zeros) == decomposable_by_search()


def test_decompose():
    assert decompose(W12) == (a1, a2)
    assert decompose(W12_34) is None
    assert decompose(TwoForm.parse("12+13")) == (a1, a2 + a3)
    nonzero = [w for w in TwoForm.all() if w and not pfaffian(w)]
    assert len(nonzero) == 35
    for w in nonzero:
        b, g = decompose(w)
        assert wedge(b, g) == w
    assert decomposition_status(TwoForm(0)) == "zero"
    assert decomposition_status(W12_34) == "indecomposable"
    assert decomposition_status(W12) == "decomposable"


def test_quad_eval_examples():
    assert quad_eval(a1, a2, a3, a4, ODD) == 1
    assert quad_eval(a1, a1, a3, a4, ODD) == 0
    assert quad_eval(a1, a1, a3, a4, EVEN) == 0
    assert quad_eval(a1, a2, a3, a4, EVEN) == 0


@given(one_classes, one_classes, one_classes, one_classes, one_classes)
def test_quad_eval_multilinear_alternating(a, b, c, d, e):
    q = quad_eval
    assert q(a + e, b, c, d, ODD) == q(a, b, c, d, ODD) ^ q(e, b, c, d, ODD)
    assert q(a, b, c, d, ODD) == q(b, a, c, d, ODD) == q(a, c, b, d, ODD)
    assert q(a, a, c, d, ODD) == 0


def test_det_basis_invariance():
    bases = list(all_bases())
    assert len(bases) == 20160
    assert (a1, a2, a1 + a2, a4) not in bases
    assert det_invariance_check(ODD)
    assert det_invariance_check(EVEN)


@pytest.mark.parametrize("ring", [ODD, EVEN])
def test_pontrjagin_matches_integral_oracle(ring):
    for w in TwoForm.all():
        expected = integral_square(w, ring.det_bit)
        assert pontrjagin_square(w, ring) == expected
        # other lifts of the same classes give the same square mod 4
        for d in (ring.det_bit + 2, ring.det_bit - 2, ring.det_bit + 4):
            assert integral_square(w, d) == expected
        lifts = {p: w.coeff(*p) + 2 * ((p[0] + p[1]) % 2) for p in itertools.combinations(range(1, 5), 2)}
        assert integral_square(w, ring.det_bit, lifts) == expected


def test_pontrjagin_examples():
    assert pontrjagin_square(W12, ODD) == 0
    assert pontrjagin_square(W12_34, ODD) == 2
    assert all(pontrjagin_square(w, EVEN) == 0 for w in TwoForm.all())


def test_admissibility_examples():
    assert is_admissible(W12, ODD)
    assert admissibility_failure(W12_34, ODD).startswith("p1")
    assert admissibility_failure(W12, EVEN).startswith("w2 cup xi")
    assert admissibility_failure(TwoForm(0), ODD) == "w2 = 0"


@given(two_forms, one_classes, one_classes)
def test_cup_pairing_is_bilinear(w, xi, eta):
    total = 0
    for i, j in w.terms():
        total ^= quad_eval(OneClass.basis(i), OneClass.basis(j), xi, eta, ODD)
    assert cup_pairing(w, xi, eta, ODD) == total
    assert cup_pairing(w, xi, xi, ODD) == 0


def test_klein_census():
    assert [(c.beta, c.gamma) for c in klein_census(W12)] == [(a1, a2)]
    assert klein_census(W12_34) == []
    assert sum(len(klein_census(w)) for w in TwoForm.all() if w) == 35
    with pytest.raises(ValueError):
        klein_census(TwoForm(0))


@pytest.mark.parametrize("ring", [ODD, EVEN])
def test_four_orbits_against_census_oracle(ring):
    for w in TwoForm.all():
        if w:
            assert count_four_orbits(w, ring) == census_four_orbits(w, ring)
    ones = [w for w in TwoForm.all() if w and count_four_orbits(w, ring)]
    assert len(ones) == (35 if ring.is_odd else 0)


def test_four_orbit_examples():
    assert count_four_orbits(W12, ODD) == 1
    assert count_four_orbits(W12_34, ODD) == 0
    assert count_four_orbits(W12, EVEN) == 0
