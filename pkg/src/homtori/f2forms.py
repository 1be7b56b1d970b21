"""Linear and exterior algebra over F2 on H^1(X; Z2) = F2^4.

One-classes are 4-bit vectors in a fixed basis ``a1..a4`` (``a1`` is the
least significant bit).  Two-forms live in Lambda^2 F2^4 and are 6-bit
vectors indexed by the pairs ``12, 13, 14, 23, 24, 34``.  The top exterior
power is one-dimensional, so the quadruple cup product of a homology
4-torus is determined by a single bit, ``det X``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "PAIRS",
    "OneClass",
    "TwoForm",
    "TorusRingData",
    "ODD",
    "EVEN",
    "KleinClass",
    "admissibility_failure",
    "all_bases",
    "count_four_orbits",
    "cup_pairing",
    "decompose",
    "decomposition_status",
    "det_f2",
    "det_invariance_check",
    "is_admissible",
    "klein_census",
    "pfaffian",
    "pontrjagin_square",
    "quad_eval",
    "wedge",
]

RANK = 4
PAIRS: tuple[tuple[int, int], ...] = tuple(itertools.combinations(range(1, RANK + 1), 2))
_PAIR_BIT = {p: n for n, p in enumerate(PAIRS)}


@dataclass(frozen=True, order=True)
class OneClass:
    bits: int

    def __post_init__(self) -> None:
        if not 0 <= self.bits < 1 << RANK:
            raise ValueError(f"one-class needs {RANK} bits, got {self.bits:#x}")

    @classmethod
    def basis(cls, i: int) -> OneClass:
        """The basis class ``a_i`` (1-based)."""
        return cls(1 << (i - 1))

    @classmethod
    def from_coords(cls, coords) -> OneClass:
        coords = list(coords)
        if len(coords) != RANK:
            raise ValueError(f"expected {RANK} coordinates, got {len(coords)}")
        return cls(sum((c & 1) << n for n, c in enumerate(coords)))

    @classmethod
    def parse(cls, text: str) -> OneClass:
        """Parse ``"1+3"``, ``"a1+a3"`` or ``"0"``."""
        s = text.replace(" ", "")
        if s == "0":
            return cls(0)
        bits = 0
        for term in s.split("+"):
            m = re.fullmatch(r"a?([1-4])", term)
            if not m:
                raise ValueError(f"bad one-class term {term!r} in {text!r}")
            bits ^= 1 << (int(m.group(1)) - 1)
        return cls(bits)

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> n) & 1 for n in range(RANK))

    def __getitem__(self, i: int) -> int:
        """Coefficient of ``a_i`` (1-based)."""
        return (self.bits >> (i - 1)) & 1

    def __add__(self, other: OneClass) -> OneClass:
        return OneClass(self.bits ^ other.bits)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __str__(self) -> str:
        terms = [f"a{i}" for i in range(1, RANK + 1) if self[i]]
        return "+".join(terms) if terms else "0"

    @classmethod
    def all(cls) -> Iterator[OneClass]:
        return (cls(b) for b in range(1 << RANK))


@dataclass(frozen=True, order=True)
class TwoForm:
    bits: int

    def __post_init__(self) -> None:
        if not 0 <= self.bits < 1 << len(PAIRS):
            raise ValueError(f"two-form needs {len(PAIRS)} bits, got {self.bits:#x}")

    @classmethod
    def from_pairs(cls, pairs) -> TwoForm:
        bits = 0
        for i, j in pairs:
            if i == j:
                continue
            bits ^= 1 << _PAIR_BIT[(min(i, j), max(i, j))]
        return cls(bits)

    @classmethod
    def parse(cls, text: str) -> TwoForm:
        """Parse ``"12+34"`` (also ``"a1a2+a3a4"``) or ``"0"``."""
        s = text.replace(" ", "")
        if s == "0":
            return cls(0)
        pairs = []
        for term in s.split("+"):
            m = re.fullmatch(r"a?([1-4])(?:\^|∧)?a?([1-4])", term)
            if not m or m.group(1) == m.group(2):
                raise ValueError(f"bad two-form term {term!r} in {text!r}")
            pairs.append((int(m.group(1)), int(m.group(2))))
        return cls.from_pairs(pairs)

    def coeff(self, i: int, j: int) -> int:
        if i == j:
            return 0
        return (self.bits >> _PAIR_BIT[(min(i, j), max(i, j))]) & 1

    def terms(self) -> list[tuple[int, int]]:
        return [p for n, p in enumerate(PAIRS) if (self.bits >> n) & 1]

    def __add__(self, other: TwoForm) -> TwoForm:
        return TwoForm(self.bits ^ other.bits)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __str__(self) -> str:
        terms = [f"{i}{j}" for i, j in self.terms()]
        return "+".join(terms) if terms else "0"

    @classmethod
    def all(cls) -> Iterator[TwoForm]:
        return (cls(b) for b in range(1 << len(PAIRS)))


@dataclass(frozen=True)
class TorusRingData:
    """Mod-2 cohomology ring of a homology 4-torus: rank 4, plus ``det X``."""

    det_bit: int
    n: int = RANK

    def __post_init__(self) -> None:
        if self.det_bit not in (0, 1):
            raise ValueError(f"det_bit must be 0 or 1, got {self.det_bit}")
        if self.n != RANK:
            raise ValueError(f"only rank {RANK} is modelled, got {self.n}")

    @property
    def is_odd(self) -> bool:
        return self.det_bit == 1


ODD = TorusRingData(1)
EVEN = TorusRingData(0)


def wedge(a: OneClass, b: OneClass) -> TwoForm:
    bits = 0
    for n, (i, j) in enumerate(PAIRS):
        bits |= ((a[i] & b[j]) ^ (a[j] & b[i])) << n
    return TwoForm(bits)


def pfaffian(w: TwoForm) -> int:
    c = w.coeff
    return (c(1, 2) & c(3, 4)) ^ (c(1, 3) & c(2, 4)) ^ (c(1, 4) & c(2, 3))


def decompose(w: TwoForm) -> tuple[OneClass, OneClass] | None:
    """A pair ``(beta, gamma)`` with ``beta ^ gamma == w``, or None.

    None means ``w`` is zero or indecomposable; see ``decomposition_status``.
    The pair returned is the smallest ``beta`` (as an integer bit vector)
    followed by the smallest matching ``gamma``.
    """
    if not w or pfaffian(w):
        return None
    for b in range(1, 1 << RANK):
        for g in range(b + 1, 1 << RANK):
            beta, gamma = OneClass(b), OneClass(g)
            if wedge(beta, gamma) == w:
                return beta, gamma
    raise AssertionError(f"pfaffian vanishes but no decomposition found for {w}")


def decomposition_status(w: TwoForm) -> str:
    if not w:
        return "zero"
    return "indecomposable" if pfaffian(w) else "decomposable"


def det_f2(rows: list[int], ncols: int = RANK) -> int:
    """Determinant over F2 of a square matrix given as row bit vectors."""
    work = list(rows)
    if len(work) != ncols:
        raise ValueError("matrix must be square")
    for col in range(ncols):
        pivot = next((r for r in range(col, ncols) if (work[r] >> col) & 1), None)
        if pivot is None:
            return 0
        work[col], work[pivot] = work[pivot], work[col]
        for r in range(col + 1, ncols):
            if (work[r] >> col) & 1:
                work[r] ^= work[col]
    return 1


def quad_eval(a: OneClass, b: OneClass, c: OneClass, d: OneClass, ring: TorusRingData) -> int:
    """``(a cup b cup c cup d)[X]`` in the exterior-algebra model."""
    if not ring.det_bit:
        return 0
    return det_f2([a.bits, b.bits, c.bits, d.bits])


def all_bases() -> Iterator[tuple[OneClass, ...]]:
    """Every ordered basis of F2^4 (there are 20160)."""
    vectors = range(1, 1 << RANK)
    for rows in itertools.permutations(vectors, RANK):
        if det_f2(list(rows)):
            yield tuple(OneClass(r) for r in rows)


def det_invariance_check(ring: TorusRingData) -> bool:
    """True iff the quadruple product equals ``det_bit`` on every ordered basis."""
    return all(quad_eval(*basis, ring) == ring.det_bit for basis in all_bases())


def pontrjagin_square(w: TwoForm, ring: TorusRingData) -> int:
    """``w cup w`` in Z4 for the integral lift, i.e. ``2 * Pf(w) * det X mod 4``."""
    return (2 * pfaffian(w) * ring.det_bit) % 4


def cup_pairing(w: TwoForm, xi: OneClass, eta: OneClass, ring: TorusRingData) -> int:
    """``(w cup xi cup eta)[X]``, extended bilinearly from the basis 2-forms."""
    total = 0
    for i, j in w.terms():
        total ^= quad_eval(OneClass.basis(i), OneClass.basis(j), xi, eta, ring)
    return total


def admissibility_failure(w: TwoForm, ring: TorusRingData) -> str | None:
    """Name of the first admissibility clause ``w`` fails, or None if admissible."""
    if not w:
        return "w2 = 0"
    if pontrjagin_square(w, ring):
        return "p1 != 0 (Pontrjagin square is 2 mod 4)"
    if ring.is_odd:
        # the pairing condition holds automatically by Poincare duality
        return None
    for xi in OneClass.all():
        for eta in OneClass.all():
            if cup_pairing(w, xi, eta, ring):
                return None
    return "w2 cup xi = 0 for every xi (even torus)"


def is_admissible(w: TwoForm, ring: TorusRingData) -> bool:
    return admissibility_failure(w, ring) is None


@dataclass(frozen=True, order=True)
class KleinClass:
    """An SO(3) representation through Z2+Z2, up to relabelling its axes.

    ``beta`` and ``gamma`` are the two sign characters; the third axis
    carries ``beta + gamma``.  Stored by the smallest pair in the subspace.
    """

    beta: OneClass
    gamma: OneClass

    @property
    def characters(self) -> frozenset[OneClass]:
        return frozenset({self.beta, self.gamma, self.beta + self.gamma})

    @property
    def w2(self) -> TwoForm:
        return wedge(self.beta, self.gamma)


def _all_klein_classes() -> list[KleinClass]:
    seen: dict[frozenset[OneClass], KleinClass] = {}
    for beta in OneClass.all():
        for gamma in OneClass.all():
            if not beta or not gamma or beta == gamma:
                continue
            chars = frozenset({beta, gamma, beta + gamma})
            # S3 permutes the three axes; keep the smallest ordered pair
            lo, mid, _ = sorted(chars)
            seen.setdefault(chars, KleinClass(lo, mid))
    return sorted(seen.values())


_KLEIN_CLASSES = _all_klein_classes()


def klein_census(w: TwoForm) -> list[KleinClass]:
    """Klein-four SO(3) representations of H_1 = Z^4 whose w2 equals ``w``."""
    if not w:
        raise ValueError("w2 must be nonzero")
    return [c for c in _KLEIN_CLASSES if c.w2 == w]


def count_four_orbits(w: TwoForm, ring: TorusRingData) -> int:
    """Number of four-orbits for an admissible bundle with w2 = ``w``.

    One when the torus is odd and ``w`` is decomposable, zero otherwise: an
    indecomposable class is not the w2 of any Klein-four representation, and
    on an even torus every decomposable class pairs trivially with all of
    H^1, so no admissible bundle carries it.
    """
    if not w:
        raise ValueError("w2 must be nonzero")
    if not ring.is_odd:
        return 0
    return 0 if pfaffian(w) else 1
