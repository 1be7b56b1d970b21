"""Projective representations of pi_1 T^4(q,-q) and the invariants they count.

Everything lives in the binary dihedral group of modulus ``N = 4q``: lifts
of x-axis rotations by ``pi k / q`` are ``e(2k/N)``, the relator for ``v``
needs quarter-period shifts ``e(2q/N) = i``, and ``i, j, k`` are present.

Two bundles are analysed, both over an odd torus:

* ``pullback``: w2 is ``1`` on ``u x x``, ``0`` on ``v x x`` and the y-tori,
  with a free bit on ``Sigma``.  One four-orbit class (``k = l = q``) and
  ``(q^2 - 1)/2`` eight-orbit classes.
* ``xy``: w2 is ``1`` on ``x x y`` only.  A single Klein-four class.

Counts are unsigned; every point of these moduli spaces carries the same
orientation sign, so the integers reported determine the signed values up
to an overall sign.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction

from ..bindihedral import BDElement, elements, identity, is_central, parse_element
from ..f2forms import ODD, TorusRingData, count_four_orbits
from .presentation import Presentation, t3qq, t4qq
from .reps import (
    OrbitData,
    ProjRep,
    W2Data,
    chi_key,
    orbit_analysis,
    so3_key,
    stabilizer_cover_check,
    w2_eval,
)

__all__ = [
    "ORACLE_ENV",
    "ParityReport",
    "RepClass",
    "ResourceLimitError",
    "UnsupportedPattern",
    "brute_force_reps",
    "canonical_pair",
    "classify_pattern",
    "klein_rep",
    "lambda_bar",
    "lambda_ppp",
    "pullback",
    "pullback_pattern",
    "solve_t3qq",
    "solve_t4qq_nonpullback",
    "t3_rep",
    "theorem_parity_check",
    "XY_PATTERN",
]

log = logging.getLogger(__name__)

ORACLE_ENV = "HOMTORI_ORACLE_MAX_MODULUS"
DEFAULT_ORACLE_MAX_MODULUS = 256

XY_PATTERN = W2Data(ux=0, uy=0, vx=0, vy=0, xy=1, sigma=0)


class UnsupportedPattern(ValueError):
    """A w2 class outside the two bundles solved here."""


class ResourceLimitError(RuntimeError):
    pass


def pullback_pattern(sigma: int) -> W2Data:
    return W2Data(ux=1, uy=0, vx=0, vy=0, xy=0, sigma=sigma)


def classify_pattern(w2: W2Data) -> str:
    """``"pullback"`` or ``"xy"``; anything else raises UnsupportedPattern."""
    f = w2.full()
    if (f.ux, f.uy, f.vx, f.vy, f.xy) == (1, 0, 0, 0, 0):
        return "pullback"
    if f == XY_PATTERN:
        return "xy"
    raise UnsupportedPattern(
        f"w2 pattern {f.bits} (ux,uy,vx,vy,xy,sigma) is not solved: only the pull-back "
        "classes (ux=1, vx=0, sigma free) and the x*y class are analysed. The remaining "
        "nonzero classes are expected to give the same count, but no solver is provided."
    )


def _check_q(q: int) -> None:
    if not isinstance(q, int) or q < 1 or q % 2 == 0:
        raise ValueError(f"q must be odd and positive, got {q}")


def canonical_pair(q: int, k: int, l: int) -> tuple[int, int]:
    """Representative of ``(k, l) ~ (2q - k, 2q - l)`` with ``k < q``, or ``k = q, l <= q``."""
    k %= 2 * q
    l %= 2 * q
    if k > q or (k == q and l > q):
        return 2 * q - k, 2 * q - l
    return k, l


def _pullback_images(q: int, k: int, l: int, t_v: int) -> dict[str, BDElement]:
    n = 4 * q
    return {
        "x": BDElement(n, 0, 2 * q),   # i: pi-rotation about the x-axis
        "u": BDElement(n, 1, 0),       # j: pi-rotation about the y-axis
        "v": BDElement(n, 0, t_v),
        "a": BDElement(n, 0, 2 * k),   # rotation by pi k / q
        "b": BDElement(n, 0, 2 * l),
    }


def t3_rep(q: int, k: int, l: int, sigma: int) -> ProjRep:
    """The representation of pi_1 T^3(q,-q) with parameters ``(k, l)`` and Sigma-bit ``sigma``.

    ``k`` and ``l`` are odd; the relator fixes the angle of ``v`` up to a
    quarter period, and the Sigma-bit picks one of the two SO(3) choices.
    """
    _check_q(q)
    if k % 2 == 0 or l % 2 == 0:
        raise ValueError(f"k and l must be odd, got ({k}, {l})")
    n = 4 * q
    pres = t3qq(q)
    # [j, e(t/N)] = e(-2t/N), so [u,v] a b = +-1 forces 2 t_v = 2k + 2l mod N
    for t_v in ((k + l) % n, (k + l + 2 * q) % n):
        rep = ProjRep.from_mapping(pres, _pullback_images(q, k, l, t_v))
        w2 = w2_eval(rep)
        if (w2.ux, w2.vx, w2.sigma) == (1, 0, sigma):
            return rep
    raise AssertionError(f"no v-angle realises sigma={sigma} for (q,k,l)=({q},{k},{l})")


def pullback(rep: ProjRep) -> ProjRep:
    """Extend a representation of pi_1 T^3(q,-q) to T^4(q,-q) by ``y -> 1``."""
    pres3 = rep.presentation
    if pres3.q is None or "y" in pres3.generators:
        raise ValueError("expected a representation of the T^3(q,-q) presentation")
    images = rep.as_dict()
    images["y"] = identity(rep.modulus)
    return ProjRep.from_mapping(t4qq(pres3.q), images)


def klein_rep(q: int) -> ProjRep:
    """x, y -> i, j; u, v -> 1; a, b -> the image of x."""
    _check_q(q)
    n = 4 * q
    i = BDElement(n, 0, 2 * q)
    one = identity(n)
    images = {"x": i, "y": BDElement(n, 1, 0), "u": one, "v": one, "a": i, "b": i}
    return ProjRep.from_mapping(t4qq(q), images)


@dataclass(frozen=True)
class RepClass:
    """One SO(3) representation class, i.e. one H^1-orbit of projective representations.

    ``rep`` is a representative on the T^4 presentation.  ``kind`` is
    ``"special"`` (k = l = q), ``"eight"`` (other pull-back pairs) or
    ``"klein"`` (the x*y bundle, where k and l are None).
    """

    q: int
    kind: str
    k: int | None
    l: int | None
    rep: ProjRep = field(repr=False)
    w2: W2Data
    orbit: OrbitData

    @property
    def orbit_size(self) -> int:
        return self.orbit.size

    @property
    def stabilizer(self) -> list[str]:
        return self.orbit.stabilizer_keys

    @property
    def v_angle(self) -> str:
        v = self.rep["v"]
        # v lies on the circle for every class solved here
        return f"{v.t % v.modulus}/{v.modulus}"

    @property
    def weight(self) -> int:
        """Multiplicity in the 3-dimensional count: 1 for four-orbits, 2 for eight-orbits."""
        return self.orbit_size // 4

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "kind": self.kind,
            "k": self.k,
            "l": self.l,
            "v_angle": self.v_angle,
            "orbit": self.orbit_size,
            "stabilizer": self.stabilizer,
            "w2": self.w2.as_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> RepClass:
        """Rebuild from ``to_dict`` output, recomputing orbit data from the representative."""
        q, kind = int(data["q"]), data["kind"]
        if kind == "klein":
            rep = klein_rep(q)
        else:
            k, l = int(data["k"]), int(data["l"])
            n = 4 * q
            v = parse_element(f"e({data['v_angle']})", n)
            rep = pullback(ProjRep.from_mapping(t3qq(q), _pullback_images(q, k, l, v.t)))
        return _make_class(q, kind, data.get("k"), data.get("l"), rep)


def _make_class(q: int, kind: str, k: int | None, l: int | None, rep: ProjRep) -> RepClass:
    return RepClass(q, kind, k, l, rep, w2_eval(rep), orbit_analysis(rep))


def solve_t3qq(q: int, w2: W2Data) -> list[RepClass]:
    """All SO(3) classes with the pull-back w2 ``(ux=1, vx=0, sigma=s)``, pulled back to T^4.

    Parameters run over odd ``(k, l)`` modulo ``(k, l) ~ (2q-k, 2q-l)``,
    giving ``(q^2 + 1)/2`` classes.
    """
    _check_q(q)
    if classify_pattern(w2) != "pullback":
        raise UnsupportedPattern(f"solve_t3qq handles pull-back classes only, got {w2.full().bits}")
    out = []
    for k in range(1, q + 1, 2):
        for l in range(1, 2 * q, 2):
            if k == q and l > q:
                continue
            rep = pullback(t3_rep(q, k, l, w2.sigma))
            kind = "special" if k == l == q else "eight"
            out.append(_make_class(q, kind, k, l, rep))
    return out


def solve_t4qq_nonpullback(q: int) -> list[RepClass]:
    """The single class for w2 dual to x*y: the Klein-four representation."""
    _check_q(q)
    return [_make_class(q, "klein", None, None, klein_rep(q))]


def solve(q: int, w2: W2Data) -> list[RepClass]:
    if classify_pattern(w2) == "pullback":
        return solve_t3qq(q, w2)
    return solve_t4qq_nonpullback(q)


def lambda_bar(q: int, w2: W2Data) -> int:
    """One quarter of the number of projective representations (unsigned)."""
    total = sum(c.orbit_size for c in solve(q, w2))
    if total % 4:
        raise AssertionError(f"point count {total} is not divisible by 4")
    return total // 4


def lambda_ppp(q: int, w2: W2Data) -> int:
    """Weighted SO(3) count: four-orbit classes weigh 1, eight-orbit classes 2."""
    weights = {4: 1, 8: 2}
    return sum(weights[c.orbit_size] for c in solve(q, w2))


@dataclass(frozen=True)
class ParityReport:
    q: int
    bundle: str
    lambda_bar: int
    det_bit: int
    four_orbits: int
    four_orbits_f2: int

    @property
    def lambda_bar_mod2(self) -> int:
        return self.lambda_bar % 2

    @property
    def passed(self) -> bool:
        return (
            self.lambda_bar_mod2 == self.det_bit == self.four_orbits % 2
            and self.four_orbits == self.four_orbits_f2
        )

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "bundle": self.bundle,
            "lambda_bar_mod2": self.lambda_bar_mod2,
            "det_mod2": self.det_bit,
            "four_orbits_mod2": self.four_orbits % 2,
            "four_orbits_from_f2": self.four_orbits_f2,
            "pass": self.passed,
        }


def theorem_parity_check(q: int, w2: W2Data) -> ParityReport:
    """Compare lambda-bar, the four-orbit count and det X modulo 2.

    ``det T^4(q,-q) = q``, so the determinant bit is ``q mod 2``.  The
    four-orbit count is taken from the class list and independently from the
    mod-2 cohomology model of w2.
    """
    _check_q(q)
    bundle = classify_pattern(w2)
    classes = solve(q, w2)
    ring = TorusRingData(q % 2)
    return ParityReport(
        q=q,
        bundle=bundle,
        lambda_bar=sum(c.orbit_size for c in classes) // 4,
        det_bit=ring.det_bit,
        four_orbits=sum(1 for c in classes if c.orbit_size == 4),
        four_orbits_f2=count_four_orbits(w2.full().to_two_form(), ring),
    )


def _oracle_bound() -> int:
    raw = os.environ.get(ORACLE_ENV)
    return int(raw) if raw else DEFAULT_ORACLE_MAX_MODULUS


def brute_force_reps(q: int, w2: W2Data, modulus: int | None = None) -> list[RepClass]:
    """Exhaustive search for the pull-back classes, independent of ``solve_t3qq``.

    ``x`` is pinned to ``i``; every other generator ranges over all SO(3)
    images in the modulus-``N`` model.  Unary constraints (commuting with
    ``x``, the root relators, the torus bits of w2) prune each domain, the
    last relator then determines ``b`` from ``u, v, a``, and survivors are
    merged by conjugacy class.
    """
    _check_q(q)
    if classify_pattern(w2) != "pullback":
        raise UnsupportedPattern("the oracle searches pull-back classes only")
    n = 4 * q if modulus is None else modulus
    if n != 4 * q:
        raise ValueError(f"the search modulus must be 4q = {4 * q}, got {n}")
    bound = _oracle_bound()
    if n > bound:
        raise ResourceLimitError(f"search modulus {n} exceeds {ORACLE_ENV}={bound}")

    pres = t3qq(q)
    x = BDElement(n, 0, n // 2)
    so3 = [g for g in elements(n) if g.t < n]   # one lift per SO(3) element

    def comm(g: BDElement, h: BDElement) -> BDElement:
        return g * h * g.inverse() * h.inverse()

    dom_a = [a for a in so3 if is_central(comm(a, x)) and is_central(a ** q * x)]
    dom_b = [b for b in so3 if is_central(comm(b, x)) and is_central(b ** (-q) * x)]
    dom_u = [u for u in so3 if comm(u, x) == -identity(n)]    # w2 on u x x is 1
    dom_v = [v for v in so3 if comm(v, x).is_identity]        # w2 on v x x is 0
    b_set = set(dom_b) | {-b for b in dom_b}
    log.debug("oracle domains |a|=%d |b|=%d |u|=%d |v|=%d", len(dom_a), len(dom_b), len(dom_u), len(dom_v))

    found: dict[tuple, ProjRep] = {}
    for u in dom_u:
        for v in dom_v:
            cuv = comm(u, v)
            for a in dom_a:
                b = (cuv * a).inverse()
                if b not in b_set:
                    continue
                if b.t >= n:
                    b = -b
                rep = ProjRep.from_mapping(pres, {"x": x, "u": u, "v": v, "a": a, "b": b})
                if w2_eval(rep).sigma != w2.sigma:
                    continue
                found.setdefault(so3_key(rep), rep)

    out = []
    for rep3 in found.values():
        rep = pullback(rep3)
        k, l = _read_pair(q, rep3)
        kind = "special" if k == l == q else "eight"
        out.append(_make_class(q, kind, k, l, rep))
    out.sort(key=lambda c: (c.k, c.l))
    return out


def _read_pair(q: int, rep: ProjRep) -> tuple[int, int]:
    """Rotation parameters of ``a`` and ``b`` as multiples of pi/q, canonicalised."""
    n = rep.modulus
    # SO(3) angle of e(t/N) is 2 pi t / N = pi t / (2q)
    angles = []
    for g in "ab":
        t = rep[g].t % n
        angles.append(Fraction(t, 2))
    k, l = angles
    if k.denominator != 1 or l.denominator != 1:
        raise AssertionError(f"unexpected rotation angles {angles}")
    return canonical_pair(q, int(k), int(l))


def classes_to_json(classes: list[RepClass]) -> str:
    return json.dumps([c.to_dict() for c in classes], indent=2)


def classes_from_json(text: str) -> list[RepClass]:
    return [RepClass.from_dict(d) for d in json.loads(text)]


def cover_checks(classes: list[RepClass]) -> list[bool]:
    return [stabilizer_cover_check(c.rep, c.orbit) for c in classes]
