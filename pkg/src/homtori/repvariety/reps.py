"""Projective SU(2) representations with images in a binary dihedral group.

A ``ProjRep`` assigns a ``BDElement`` to every generator of a presentation;
it is projective when every relator evaluates to +-1.  Characters
``chi in H^1(G; Z2)`` are stored as bit tuples over the generators (bit 1
means ``chi(g) = -1``) and act by ``g -> chi(g) rho(g)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from ..bindihedral import (
    BDElement,
    commutator,
    identity,
    is_central,
    minus_one,
    rescale,
    trace_key,
)
from ..f2forms import TwoForm
from .presentation import Presentation, Word

__all__ = [
    "InvariantViolation",
    "OrbitData",
    "ProjRep",
    "RepresentationError",
    "W2Data",
    "are_conjugate",
    "canonical_form",
    "chi_action",
    "chi_key",
    "classify_cover",
    "conjugacy_key",
    "conjugate_by",
    "consistent_characters",
    "eval_word",
    "is_projective",
    "is_rigid",
    "mod2_kernel_image",
    "orbit_analysis",
    "relator_signs",
    "relator_values",
    "so3_key",
    "stabilizer_cover_check",
    "trace_signature",
    "w2_eval",
]


class RepresentationError(ValueError):
    """The assignment is not a (projective) representation of the required shape."""


class InvariantViolation(RuntimeError):
    """A structural fact about the moduli space failed; indicates a bug."""


@dataclass(frozen=True)
class ProjRep:
    presentation: Presentation
    images: tuple[BDElement, ...]

    def __post_init__(self) -> None:
        if len(self.images) != len(self.presentation.generators):
            raise RepresentationError(
                f"{len(self.images)} images for {len(self.presentation.generators)} generators"
            )
        moduli = {a.modulus for a in self.images}
        if len(moduli) > 1:
            raise RepresentationError(f"images use several moduli: {sorted(moduli)}")

    @classmethod
    def from_mapping(cls, presentation: Presentation, images: Mapping[str, BDElement]) -> ProjRep:
        missing = [g for g in presentation.generators if g not in images]
        if missing:
            raise RepresentationError(f"no image for generator(s) {missing}")
        return cls(presentation, tuple(images[g] for g in presentation.generators))

    @property
    def modulus(self) -> int:
        return self.images[0].modulus

    def __getitem__(self, name: str) -> BDElement:
        return self.images[self.presentation.index[name]]

    def as_dict(self) -> dict[str, BDElement]:
        return dict(zip(self.presentation.generators, self.images))


def eval_word(rep: ProjRep, word: Word) -> BDElement:
    out = identity(rep.modulus)
    for g, e in word.letters:
        out = out * rep.images[g] ** e
    return out


def relator_values(rep: ProjRep) -> list[BDElement]:
    return [eval_word(rep, w) for w in rep.presentation.words]


def is_projective(rep: ProjRep) -> bool:
    return all(is_central(v) for v in relator_values(rep))


def relator_signs(rep: ProjRep) -> tuple[int, ...]:
    """1 for each relator evaluating to -1, 0 for +1."""
    out = []
    for r, v in zip(rep.presentation.relators, relator_values(rep)):
        if not is_central(v):
            raise RepresentationError(f"relator {r} evaluates to {v}, not +-1")
        out.append(0 if v.is_identity else 1)
    return tuple(out)


# -- characters ---------------------------------------------------------------


def consistent_characters(presentation: Presentation) -> list[tuple[int, ...]]:
    """All of Hom(G, Z2): sign patterns on the generators killing every relator.

    Solves the exponent-sum system over F2, so nothing about a particular
    presentation is assumed.
    """
    n = len(presentation.generators)
    rows = []
    for w in presentation.words:
        sums = w.exponent_sums(n)
        rows.append(sum((e & 1) << g for g, e in enumerate(sums)))
    # reduced row echelon form over F2
    pivots: dict[int, int] = {}
    for r in rows:
        for col, prow in pivots.items():
            if (r >> col) & 1:
                r ^= prow
        if r:
            col = (r & -r).bit_length() - 1
            for c, prow in list(pivots.items()):
                if (prow >> col) & 1:
                    pivots[c] = prow ^ r
            pivots[col] = r
    free = [c for c in range(n) if c not in pivots]
    out = []
    for choice in itertools.product((0, 1), repeat=len(free)):
        chi = [0] * n
        for c, bit in zip(free, choice):
            chi[c] = bit
        for col, prow in pivots.items():
            chi[col] = sum(chi[c] for c in free if (prow >> c) & 1) & 1
        out.append(tuple(chi))
    return sorted(out)


def _as_bits(presentation: Presentation, chi) -> tuple[int, ...]:
    if isinstance(chi, Mapping):
        unknown = set(chi) - set(presentation.generators)
        if unknown:
            raise ValueError(f"character mentions unknown generator(s) {sorted(unknown)}")
        bits = []
        for g in presentation.generators:
            sign = chi.get(g, 1)
            if sign not in (1, -1):
                raise ValueError(f"character values must be +-1, got {sign} on {g}")
            bits.append(0 if sign == 1 else 1)
        return tuple(bits)
    bits = tuple(int(b) for b in chi)
    if len(bits) != len(presentation.generators) or set(bits) - {0, 1}:
        raise ValueError(f"character {chi!r} is not a bit vector over the generators")
    return bits


def chi_key(chi: Sequence[int]) -> str:
    return "".join(str(b) for b in chi)


def chi_action(rep: ProjRep, chi) -> ProjRep:
    """``rho^chi(g) = chi(g) rho(g)``; ``chi`` is a map generator -> +-1 or a bit tuple."""
    pres = rep.presentation
    bits = _as_bits(pres, chi)
    for r, w in zip(pres.relators, pres.words):
        parity = sum(e * bits[g] for g, e in w.letters) & 1
        if parity:
            raise ValueError(f"character {chi_key(bits)} is -1 on relator {r}")
    return ProjRep(pres, tuple(-a if b else a for a, b in zip(rep.images, bits)))


# -- conjugacy ----------------------------------------------------------------


def is_rigid(images: Sequence[BDElement]) -> bool:
    """Does the generated subgroup contain an element of order > 4?

    Such an element lies on the rotation circle and pins down the axis, so
    every SU(2) conjugator between two such tuples normalizes the circle.
    """
    n = images[0].modulus
    coset = [a.t for a in images if a.j == 1]
    if any(a.j == 0 and (2 * a.t) % n for a in images):
        return True
    # two j-coset elements multiply to a circle element of angle t1 - t2 + N
    return any((2 * (t - coset[0])) % n for t in coset[1:])


def _rigid_key(images: Sequence[BDElement]) -> tuple:
    n = images[0].modulus
    two_n = 2 * n
    best = None
    for flip in (0, 1):
        ts = [(-a.t if flip else a.t) % two_n for a in images]
        js = [a.j for a in images]
        first = next((i for i, j in enumerate(js) if j), None)
        if first is not None:
            # conjugating by e^{i pi m / 2N} shifts j-coset angles by m / N
            shift = -ts[first]
            ts = [(t + shift) % two_n if j else t for t, j in zip(ts, js)]
        key = tuple(zip(js, ts))
        if best is None or key < best:
            best = key
    return best


def trace_signature(images: Sequence[BDElement]) -> tuple[int, ...]:
    """Traces of all products of at most three distinct generators, in index order.

    These separate SU(2)-conjugacy classes of tuples (the traces fix scalar
    parts, Gram matrix and triple products of the vector parts).
    """
    n = len(images)
    keys = [trace_key(a) for a in images]
    keys += [trace_key(images[i] * images[j]) for i, j in itertools.combinations(range(n), 2)]
    keys += [
        trace_key(images[i] * images[j] * images[k])
        for i, j, k in itertools.combinations(range(n), 3)
    ]
    return tuple(keys)


def canonical_form(rep: ProjRep) -> tuple:
    """Normal form of ``rep`` under conjugation by the normalizer of the model.

    Flips by ``j`` negate every angle; rotations about the x-axis fix the
    circle and shift the j-coset, which is used to bring the first j-coset
    image to ``j``.  The smaller of the two results is returned.
    """
    return _rigid_key(rep.images)


@lru_cache(maxsize=8192)
def conjugacy_key(rep: ProjRep) -> tuple:
    """A complete SU(2)-conjugacy invariant, hashable."""
    if is_rigid(rep.images):
        return ("rigid", rep.modulus, canonical_form(rep))
    return ("small", rep.modulus, trace_signature(rep.images))


@lru_cache(maxsize=8192)
def so3_key(rep: ProjRep) -> tuple:
    """Conjugacy invariant of the underlying SO(3) representation.

    Lifts are only defined up to a sign on each generator, so two projective
    representations with the same SO(3) image tuple get the same key.
    """
    n = rep.modulus
    if is_rigid(rep.images):
        best = None
        for flip in (0, 1):
            ts = [(-a.t if flip else a.t) for a in rep.images]
            js = [a.j for a in rep.images]
            first = next((i for i, j in enumerate(js) if j), None)
            shift = -ts[first] if first is not None else 0
            # a sign change is a shift by N, so angles are read mod N
            key = tuple((j, (t + shift) % n if j else t % n) for t, j in zip(ts, js))
            if best is None or key < best:
                best = key
        return ("rigid", n, best)
    sigs = (
        trace_signature([-a if s else a for a, s in zip(rep.images, signs)])
        for signs in itertools.product((0, 1), repeat=len(rep.images))
    )
    return ("small", n, min(sigs))


def are_conjugate(r1: ProjRep, r2: ProjRep, up_to_sign: bool = False) -> bool:
    """SU(2)-conjugacy of the lifts, or with ``up_to_sign`` of the SO(3) representations."""
    if r1.presentation != r2.presentation:
        raise ValueError("representations of different presentations")
    if r1.modulus != r2.modulus:
        raise ValueError(f"modulus mismatch: {r1.modulus} vs {r2.modulus}")
    key = so3_key if up_to_sign else conjugacy_key
    return key(r1) == key(r2)


def conjugate_by(rep: ProjRep, g: BDElement) -> ProjRep:
    """``h -> g h g^-1`` for ``g`` of a modulus divisible by ``rep.modulus``.

    The result must land back in the modulus of ``rep``.
    """
    n, big = rep.modulus, g.modulus
    scaled = [g * rescale(a, big) * g.inverse() for a in rep.images]
    factor = big // n
    if any(a.t % factor for a in scaled):
        raise ValueError(f"conjugation by {g.text} leaves the modulus-{n} group")
    return ProjRep(rep.presentation, tuple(BDElement(n, a.j, a.t // factor) for a in scaled))


# -- orbits and stabilizers ---------------------------------------------------


@dataclass(frozen=True)
class OrbitData:
    size: int
    stabilizer: tuple[tuple[int, ...], ...]

    @property
    def stabilizer_keys(self) -> list[str]:
        return [chi_key(c) for c in self.stabilizer]


def orbit_analysis(rep: ProjRep) -> OrbitData:
    """Orbit size and stabilizer of ``rep`` under the H^1(G; Z2) action."""
    if not is_projective(rep):
        raise RepresentationError("orbit analysis needs a projective representation")
    chars = consistent_characters(rep.presentation)
    key = conjugacy_key(rep)
    stab = tuple(c for c in chars if conjugacy_key(chi_action(rep, c)) == key)
    size = len(chars) // len(stab)
    if len(stab) > 4:
        # a nontrivial cocycle is never fixed by more than Z2 + Z2
        raise InvariantViolation(
            f"stabilizer of order {len(stab)} (orbit of size {size}) for {rep.as_dict()}"
        )
    return OrbitData(size, stab)


def _generated(gens: Sequence[BDElement], n: int) -> set[BDElement]:
    group = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = h * g
                if k not in group:
                    group.add(k)
                    nxt.append(k)
        frontier = nxt
    return group


def _kernel_generators(rep: ProjRep) -> list[BDElement]:
    """Generators of the image of ker(G -> H_1(G; Z2)), closed under conjugation."""
    n = rep.modulus
    gens = list(rep.images)
    seeds = [minus_one(n)]
    seeds += [a * a for a in gens]
    seeds += [commutator(a, b) for a, b in itertools.combinations(gens, 2)]
    seeds += relator_values(rep)
    conj = gens + [a.inverse() for a in gens]
    found = list(dict.fromkeys(seeds))
    group = _generated(found, n)
    changed = True
    while changed:
        changed = False
        for h in list(found):
            for c in conj:
                k = c * h * c.inverse()
                if k not in group:
                    found.append(k)
                    group = _generated(found, n)
                    changed = True
    return found


def mod2_kernel_image(rep: ProjRep) -> frozenset[BDElement]:
    """Image under ``rep`` of the kernel of ``G -> H_1(G; Z2)``, together with +-1."""
    return frozenset(_generated(_kernel_generators(rep), rep.modulus))


def classify_cover(rep: ProjRep) -> str:
    """Type of the pull-back to the mod-2 abelian cover: central, reducible or irreducible."""
    gens = _kernel_generators(rep)
    if all(is_central(h) for h in gens):
        return "central"
    # a subgroup of SU(2) sits in a maximal torus iff it is abelian
    abelian = all(h * k == k * h for h, k in itertools.combinations(gens, 2))
    return "reducible" if abelian else "irreducible"


_STAB_ORDER = {"central": 4, "reducible": 2, "irreducible": 1}


def stabilizer_cover_check(rep: ProjRep, orbit: OrbitData | None = None) -> bool:
    """Does the cover classification predict the stabilizer order?"""
    if orbit is None:
        orbit = orbit_analysis(rep)
    return _STAB_ORDER[classify_cover(rep)] == len(orbit.stabilizer)


# -- second Stiefel-Whitney class ---------------------------------------------


W2_FIELDS = ("ux", "uy", "vx", "vy", "xy", "sigma")


@dataclass(frozen=True)
class W2Data:
    """Evaluations of w2 on the tori u*x, u*y, v*x, v*y, x*y and on Sigma.

    For 3-dimensional data (no ``y``) the ``uy``, ``vy`` and ``xy`` fields
    are None.
    """

    ux: int
    vx: int
    sigma: int
    uy: int | None = None
    vy: int | None = None
    xy: int | None = None

    def __post_init__(self) -> None:
        for name in W2_FIELDS:
            v = getattr(self, name)
            if v not in (0, 1, None) or (v is None and name in ("ux", "vx", "sigma")):
                raise ValueError(f"w2 bit {name} must be 0 or 1, got {v!r}")

    @classmethod
    def from_bits(cls, text: str) -> W2Data:
        """Six bits in the order ux, uy, vx, vy, xy, sigma (or three: ux, vx, sigma)."""
        s = text.strip()
        if set(s) - {"0", "1"} or len(s) not in (3, 6):
            raise ValueError(f"w2 pattern must be 3 or 6 bits, got {text!r}")
        b = [int(c) for c in s]
        if len(b) == 3:
            return cls(ux=b[0], vx=b[1], sigma=b[2])
        return cls(ux=b[0], uy=b[1], vx=b[2], vy=b[3], xy=b[4], sigma=b[5])

    @property
    def is_3d(self) -> bool:
        return self.uy is None and self.vy is None and self.xy is None

    def full(self) -> W2Data:
        """The same class on T^4, with the y bits zero if absent."""
        return W2Data(
            ux=self.ux, vx=self.vx, sigma=self.sigma,
            uy=self.uy or 0, vy=self.vy or 0, xy=self.xy or 0,
        )

    def as_dict(self) -> dict[str, int]:
        return {k: getattr(self, k) for k in W2_FIELDS if getattr(self, k) is not None}

    @property
    def bits(self) -> str:
        if self.is_3d:
            return f"{self.ux}{self.vx}{self.sigma}"
        if None in (self.uy, self.vy, self.xy):
            return self.full().bits
        return "".join(str(getattr(self, k)) for k in W2_FIELDS)

    def is_zero(self) -> bool:
        return not any(self.as_dict().values())

    def to_two_form(self) -> TwoForm:
        """w2 as an element of Lambda^2 H^1 in the basis dual to x, y, u, v.

        Sigma is read as the class dual to ``u* ^ v*``; the torus ``g x h``
        is dual to ``g* ^ h*``.
        """
        f = self.full()
        coeff = {(1, 2): f.xy, (1, 3): f.ux, (1, 4): f.vx, (2, 3): f.uy, (2, 4): f.vy, (3, 4): f.sigma}
        return TwoForm.from_pairs([p for p, c in coeff.items() if c])


def _torus_bit(g: BDElement, h: BDElement, names: str) -> int:
    c = commutator(g, h)
    if not is_central(c):
        raise RepresentationError(f"images of {names} do not commute in SO(3)")
    return 0 if c.is_identity else 1


def w2_eval(rep: ProjRep) -> W2Data:
    """Evaluate w2 of ``rep`` on the basis 2-cycles of the log-transform family.

    Torus bits are the signs of lifted commutators.  The Sigma bit follows
    the recipe: keep the lifts of u, v, a, solve the last relator for the
    lift of b, and read off the sign of ``a^q b^q``.
    """
    pres = rep.presentation
    if pres.q is None:
        raise ValueError("w2 evaluation needs a family presentation (built by t3qq/t4qq)")
    if not is_projective(rep):
        raise RepresentationError("w2 evaluation needs a projective representation")
    q = pres.q
    x, u, v, a, b = (rep[g] for g in "xuvab")
    bits = {"ux": _torus_bit(u, x, "u, x"), "vx": _torus_bit(v, x, "v, x")}
    if "y" in pres.generators:
        y = rep["y"]
        bits.update(uy=_torus_bit(u, y, "u, y"), vy=_torus_bit(v, y, "v, y"), xy=_torus_bit(x, y, "x, y"))
    b_lift = (commutator(u, v) * a).inverse()
    if b_lift not in (b, -b):
        raise RepresentationError("relator [u,v] a b does not hold in SO(3)")
    s = a ** q * b_lift ** q
    if not is_central(s):
        raise RepresentationError(f"a^q b^q = {s} is not +-1")
    bits["sigma"] = 0 if s.is_identity else 1
    return W2Data(**bits)
