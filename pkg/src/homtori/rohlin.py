"""Finite arithmetic of Rohlin invariants over a torsor of spin structures.

Spin structures on a homology 3-torus ``M`` (resp. a homology 4-torus ``X``)
form a torsor over F2^3 (resp. F2^4).  After fixing a base point they are
labelled by bit vectors, stored here as integers; bit ``n`` is the
coefficient of the ``(n+1)``-st basis class.  JSON keys spell the same vector
as a string whose first character is bit 0.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .f2forms import det_f2

__all__ = [
    "SpinAssignment",
    "complements",
    "det3",
    "enumerate_consistent",
    "is_turaev_consistent",
    "periodic_extension",
    "rho_bar",
    "turaev_defect",
    "welldef_invariance_check",
]

MODES = ("z2", "eighths")
_MODULI = {"z2": 2, "eighths": 16}


def _key_to_int(key: str, dim: int) -> int:
    if len(key) != dim or set(key) - {"0", "1"}:
        raise ValueError(f"spin-structure key {key!r} is not a {dim}-bit string")
    return sum(int(ch) << n for n, ch in enumerate(key))


def _int_to_key(v: int, dim: int) -> str:
    return "".join(str((v >> n) & 1) for n in range(dim))


@dataclass(frozen=True)
class SpinAssignment:
    """Rohlin values indexed by spin structures ``0 .. 2**dim - 1``.

    In ``z2`` mode values are bits; in ``eighths`` mode they are integers mod
    16 read as multiples of 1/8 in Q/2Z.
    """

    dim: int
    values: tuple[int, ...]
    mode: str = "z2"

    def __post_init__(self) -> None:
        if self.dim not in (3, 4):
            raise ValueError(f"dim must be 3 or 4, got {self.dim}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if len(self.values) != 1 << self.dim:
            raise ValueError(
                f"assignment must cover all {1 << self.dim} spin structures, "
                f"got {len(self.values)}"
            )
        top = _MODULI[self.mode]
        bad = [v for v in self.values if not 0 <= v < top]
        if bad:
            raise ValueError(f"values out of range for {self.mode} mode: {bad}")

    @classmethod
    def from_function(cls, dim: int, f, mode: str = "z2") -> SpinAssignment:
        return cls(dim, tuple(f(s) for s in range(1 << dim)), mode)

    @classmethod
    def from_mapping(cls, dim: int, values: Mapping[str, int], mode: str = "z2") -> SpinAssignment:
        table: dict[int, int] = {}
        for key, v in values.items():
            table[_key_to_int(key, dim)] = int(v)
        missing = [_int_to_key(s, dim) for s in range(1 << dim) if s not in table]
        if missing:
            raise ValueError(f"missing spin structures: {', '.join(missing)}")
        return cls(dim, tuple(table[s] for s in range(1 << dim)), mode)

    @classmethod
    def from_json(cls, text: str) -> tuple[SpinAssignment, int | None]:
        """Parse ``{"dim":3,"mode":"z2","t":1,"values":{"000":0,...}}``.

        Returns the assignment and the optional triple bit ``t``.
        """
        data = json.loads(text)
        if not isinstance(data, dict) or "values" not in data:
            raise ValueError("expected a JSON object with a 'values' table")
        dim = int(data.get("dim", 3))
        mode = data.get("mode", "z2")
        t = data.get("t")
        if t is not None and t not in (0, 1):
            raise ValueError(f"t must be 0 or 1, got {t!r}")
        return cls.from_mapping(dim, data["values"], mode), t

    def to_json(self, t: int | None = None) -> str:
        data: dict = {"dim": self.dim, "mode": self.mode}
        if t is not None:
            data["t"] = t
        data["values"] = {_int_to_key(s, self.dim): v for s, v in enumerate(self.values)}
        return json.dumps(data)

    def __getitem__(self, sigma: int) -> int:
        return self.values[sigma]


def det3(x: int, y: int, z: int) -> int:
    return det_f2([x, y, z], 3)


def rho_bar(a: SpinAssignment) -> int:
    """Sum of the eight values, in Z/2 (z2 mode) or Z/16 (eighths mode)."""
    if a.dim != 3:
        raise ValueError("rho_bar sums over the 8 spin structures of a 3-dimensional torsor")
    return sum(a.values) % _MODULI[a.mode]


def as_q2z(value: int, mode: str) -> Fraction:
    """Read a stored value as an element of Q/2Z in [0, 2)."""
    return Fraction(value, 8) if mode == "eighths" else Fraction(value)


def turaev_defect(a: SpinAssignment, x: int, y: int, z: int, base: int = 0) -> int:
    """Third finite difference of ``a`` along ``x, y, z`` at ``base``, mod 2."""
    if a.mode != "z2":
        raise ValueError("the 8-term identity is only checked for Z/2-valued invariants")
    total = 0
    for cx, cy, cz in itertools.product((0, 1), repeat=3):
        shift = (x if cx else 0) ^ (y if cy else 0) ^ (z if cz else 0)
        total ^= a[base ^ shift]
    return total


_TRIPLE_SHIFTS = [
    (det3(x, y, z), [(x if cx else 0) ^ (y if cy else 0) ^ (z if cz else 0)
                 for cx, cy, cz in itertools.product((0, 1), repeat=3)])
    for x, y, z in itertools.product(range(8), repeat=3)
]


def is_turaev_consistent(a: SpinAssignment, t: int) -> bool:
    """Does ``a`` satisfy the cup-product identity with triple bit ``t``?

    Checks every triple in F2^3 at every base spin structure.
    """
    if a.dim != 3:
        raise ValueError("consistency is defined for 3-dimensional torsors")
    if a.mode != "z2":
        raise ValueError("the 8-term identity is only checked for Z/2-valued invariants")
    v = a.values
    for det, shifts in _TRIPLE_SHIFTS:
        rhs = t & det
        for base in range(8):
            d = 0
            for s in shifts:
                d ^= v[base ^ s]
            if d != rhs:
                return False
    return True


def enumerate_consistent(t: int) -> list[SpinAssignment]:
    """Every z2 assignment on F2^3 consistent with triple bit ``t``."""
    out = []
    for values in itertools.product((0, 1), repeat=8):
        a = SpinAssignment(3, values)
        if is_turaev_consistent(a, t):
            out.append(a)
    return out


@lru_cache(maxsize=None)
def complements(alpha: int) -> list[tuple[int, ...]]:
    """Distinct spans of triples ``x1, x2, x3`` completing ``alpha`` to a basis of F2^4.

    Each span is returned as the sorted tuple of its eight elements.
    """
    if not 0 < alpha < 16:
        raise ValueError("alpha must be a nonzero class in F2^4")
    spans = set()
    for x1, x2, x3 in itertools.combinations(range(1, 16), 3):
        if det_f2([alpha, x1, x2, x3]):
            span = {
                (x1 if c1 else 0) ^ (x2 if c2 else 0) ^ (x3 if c3 else 0)
                for c1, c2, c3 in itertools.product((0, 1), repeat=3)
            }
            spans.add(tuple(sorted(span)))
    return sorted(spans)


def periodic_extension(a3: SpinAssignment, alpha: int) -> SpinAssignment:
    """Extend ``a3`` to F2^4 so that ``sigma`` and ``sigma + alpha`` agree.

    The 3-dimensional labels are read off in the complement spanned by the
    standard basis vectors other than the lowest one in ``alpha``.
    """
    if not 0 < alpha < 16:
        raise ValueError("alpha must be a nonzero class in F2^4")
    pivot = (alpha & -alpha).bit_length() - 1
    others = [n for n in range(4) if n != pivot]

    def value(sigma: int) -> int:
        if (sigma >> pivot) & 1:
            sigma ^= alpha
        label = sum(((sigma >> n) & 1) << m for m, n in enumerate(others))
        return a3[label]

    return SpinAssignment.from_function(4, value, a3.mode)


def welldef_invariance_check(a4: SpinAssignment, alpha: int) -> bool:
    """Is the 8-fold coset sum independent of the base point and the complement?

    ``a4`` must be ``alpha``-periodic; a non-periodic input raises ValueError.
    """
    if a4.dim != 4:
        raise ValueError("expected an assignment on F2^4")
    if not 0 < alpha < 16:
        raise ValueError("alpha must be a nonzero class in F2^4")
    bad = [s for s in range(16) if a4[s] != a4[s ^ alpha]]
    if bad:
        raise ValueError(f"assignment is not alpha-periodic at spin structures {bad}")
    modulus = _MODULI[a4.mode]
    sums = {
        sum(a4[sigma0 ^ x] for x in span) % modulus
        for span in complements(alpha)
        for sigma0 in range(16)
    }
    return len(sums) == 1
