"""Exact arithmetic in the binary dihedral subgroups of SU(2).

An element of modulus ``N`` is a pair ``(j, t)`` standing for the unit
quaternion ``e^{i pi t / N}`` when ``j == 0`` and ``e^{i pi t / N} j`` when
``j == 1``.  Angles are kept as integers modulo ``2N``, so every comparison
is exact.  The elements of a fixed modulus form a group of order ``4N``
containing the rotation circle about the x-axis (the ``i`` direction) and
the quaternion group whenever ``4 | N``.
"""

from __future__ import annotations

import re
from math import gcd
from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "BDElement",
    "SO3Element",
    "ModulusMismatch",
    "adjoint",
    "commutator",
    "elements",
    "identity",
    "is_central",
    "lifts",
    "minus_one",
    "parse_element",
    "rescale",
    "rotation",
    "trace_key",
]


class ModulusMismatch(ValueError):
    """Two elements with different angle denominators were combined."""


@dataclass(frozen=True, order=True)
class BDElement:
    modulus: int
    j: int
    t: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        if self.j not in (0, 1):
            raise ValueError(f"j flag must be 0 or 1, got {self.j}")
        object.__setattr__(self, "t", self.t % (2 * self.modulus))

    def _check(self, other: BDElement) -> None:
        if not isinstance(other, BDElement):
            raise TypeError(f"cannot combine BDElement with {type(other).__name__}")
        if other.modulus != self.modulus:
            raise ModulusMismatch(
                f"modulus mismatch: {self.modulus} vs {other.modulus}; use rescale()"
            )

    def __mul__(self, other: BDElement) -> BDElement:
        self._check(other)
        n = self.modulus
        if self.j == 0:
            return BDElement(n, other.j, self.t + other.t)
        if other.j == 0:
            return BDElement(n, 1, self.t - other.t)
        return BDElement(n, 0, self.t - other.t + n)

    def __neg__(self) -> BDElement:
        return BDElement(self.modulus, self.j, self.t + self.modulus)

    def inverse(self) -> BDElement:
        if self.j == 0:
            return BDElement(self.modulus, 0, -self.t)
        # (e^{it} j)^2 = -1, so the inverse is the negative
        return -self

    def __pow__(self, m: int) -> BDElement:
        if self.j == 0:
            return BDElement(self.modulus, 0, self.t * m)
        # elements of the j-coset have order 4 with square -1
        r = m % 4
        if r == 0:
            return identity(self.modulus)
        if r == 1:
            return self
        if r == 2:
            return minus_one(self.modulus)
        return -self

    @property
    def is_identity(self) -> bool:
        return self.j == 0 and self.t == 0

    def order(self) -> int:
        if self.j == 1:
            return 4
        two_n = 2 * self.modulus
        return two_n // gcd(two_n, self.t)

    @property
    def text(self) -> str:
        """Explicit form ``e(t/N)`` or ``e(t/N)j`` that keeps the modulus."""
        return f"e({self.t}/{self.modulus})" + ("j" if self.j else "")

    def __str__(self) -> str:
        n = self.modulus
        if self.j == 0:
            if self.t == 0:
                return "1"
            if self.t == n:
                return "-1"
            if 2 * self.t == n:
                return "i"
            if 2 * self.t == 3 * n:
                return "-i"
            return f"e({self.t}/{n})"
        if self.t == 0:
            return "j"
        if self.t == n:
            return "-j"
        if 2 * self.t == n:
            return "k"
        if 2 * self.t == 3 * n:
            return "-k"
        return f"e({self.t}/{n})j"


def identity(modulus: int) -> BDElement:
    return BDElement(modulus, 0, 0)


def minus_one(modulus: int) -> BDElement:
    return BDElement(modulus, 0, modulus)


def rotation(modulus: int, t: int, j: int = 0) -> BDElement:
    return BDElement(modulus, j, t)


def elements(modulus: int) -> Iterator[BDElement]:
    """All ``4 * modulus`` elements, circle first."""
    for j in (0, 1):
        for t in range(2 * modulus):
            yield BDElement(modulus, j, t)


def commutator(a: BDElement, b: BDElement) -> BDElement:
    """``a b a^-1 b^-1``."""
    return a * b * a.inverse() * b.inverse()


def is_central(a: BDElement) -> bool:
    return a.j == 0 and a.t in (0, a.modulus)


def rescale(a: BDElement, modulus: int) -> BDElement:
    """Re-express ``a`` with a larger angle denominator ``modulus``."""
    if modulus % a.modulus:
        raise ModulusMismatch(f"{a.modulus} does not divide {modulus}")
    return BDElement(modulus, a.j, a.t * (modulus // a.modulus))


def trace_key(a: BDElement) -> int:
    """An integer that is equal for two elements iff their traces agree.

    The trace is ``2 cos(pi t / N)`` on the circle and 0 on the j-coset.  The
    key is ``min(2t, 4N - 2t)`` for circle elements, which hits ``N`` exactly
    when the cosine vanishes.
    """
    n = a.modulus
    if a.j == 1:
        return n
    u = 2 * a.t
    return min(u, 4 * n - u)


@dataclass(frozen=True, order=True)
class SO3Element:
    """Image of a binary dihedral element in SO(3) = SU(2)/{+-1}.

    Stored through its canonical lift, the one with ``0 <= t < N``.
    """

    lift: BDElement

    def __post_init__(self) -> None:
        a = self.lift
        if a.t >= a.modulus:
            object.__setattr__(self, "lift", -a)

    @property
    def modulus(self) -> int:
        return self.lift.modulus

    def __mul__(self, other: SO3Element) -> SO3Element:
        return SO3Element(self.lift * other.lift)

    def __str__(self) -> str:
        return f"ad({self.lift})"


def adjoint(a: BDElement) -> SO3Element:
    return SO3Element(a)


def lifts(g: SO3Element) -> tuple[BDElement, BDElement]:
    """The two SU(2) elements over ``g``, canonical lift first."""
    return g.lift, -g.lift


_ALIASES = {
    "1": (0, 0, 1),
    "-1": (0, 1, 1),
    "i": (0, 1, 2),
    "-i": (0, 3, 2),
    "j": (1, 0, 1),
    "-j": (1, 1, 1),
    "k": (1, 1, 2),
    "-k": (1, 3, 2),
}
_E_RE = re.compile(r"^\s*(-?)e\(\s*(-?\d+)\s*/\s*(\d+)\s*\)\s*(j?)\s*$")


def parse_element(text: str, modulus: int | None = None) -> BDElement:
    """Parse ``e(t/N)``, ``e(t/N)j`` or one of the aliases ``1 -1 i -i j -j k -k``.

    Aliases and ``e(...)`` forms are brought to ``modulus`` when it is given;
    aliases require it (``i`` and ``k`` need an even modulus).
    """
    s = text.strip()
    if s in _ALIASES:
        if modulus is None:
            raise ValueError(f"alias {s!r} needs an explicit modulus")
        j, num, den = _ALIASES[s]
        # angle is pi * num / den, as a multiple of pi / modulus
        if (num * modulus) % den:
            raise ValueError(f"{s!r} is not in the modulus-{modulus} group")
        return BDElement(modulus, j, num * modulus // den)
    m = _E_RE.match(s)
    if not m:
        raise ValueError(f"cannot parse binary dihedral element {text!r}")
    sign, t, n, jflag = m.groups()
    a = BDElement(int(n), 1 if jflag else 0, int(t))
    if sign:
        a = -a
    if modulus is not None and modulus != a.modulus:
        a = rescale(a, modulus)
    return a
