"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 computation or invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import f2forms as f2
from . import rohlin
from .repvariety import family
from .repvariety.family import UnsupportedPattern
from .repvariety.reps import InvariantViolation, W2Data, so3_key

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _ring(text: str) -> f2.TorusRingData:
    table = {"odd": f2.ODD, "1": f2.ODD, "even": f2.EVEN, "0": f2.EVEN}
    if text not in table:
        raise argparse.ArgumentTypeError(f"ring must be odd|even|1|0, got {text!r}")
    return table[text]


def _two_form(text: str) -> f2.TwoForm:
    try:
        return f2.TwoForm.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _bit(text: str) -> int:
    if text not in ("0", "1"):
        raise argparse.ArgumentTypeError(f"expected 0 or 1, got {text!r}")
    return int(text)


def _emit(data: dict, fmt: str, lines: list[str]) -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2))
    else:
        print("\n".join(lines))


# -- f2forms commands ---------------------------------------------------------


def cmd_det(args) -> int:
    ring = args.ring
    if not f2.det_invariance_check(ring):
        print("quadruple product is not basis independent", file=sys.stderr)
        return EXIT_FAIL
    _emit({"det": ring.det_bit}, args.format, [str(ring.det_bit)])
    return EXIT_OK


def cmd_admissible(args) -> int:
    failure = f2.admissibility_failure(args.w, args.ring)
    data = {
        "w": str(args.w),
        "det": args.ring.det_bit,
        "admissible": failure is None,
        "failed_clause": failure,
        "pontrjagin_square": f2.pontrjagin_square(args.w, args.ring),
    }
    line = "yes" if failure is None else f"no: {failure}"
    _emit(data, args.format, [line])
    return EXIT_OK


def cmd_four_orbits(args) -> int:
    w, ring = args.w, args.ring
    if not w:
        raise UsageError("w2 must be nonzero")
    count = f2.count_four_orbits(w, ring)
    census = f2.klein_census(w)
    witnesses = census if f2.is_admissible(w, ring) else []
    if len(witnesses) != count:
        print(f"four-orbit count {count} disagrees with the Klein census {len(witnesses)}", file=sys.stderr)
        return EXIT_FAIL
    data = {
        "w": str(w),
        "det": ring.det_bit,
        "status": f2.decomposition_status(w),
        "four_orbits": count,
        "witness": [{"beta": str(c.beta), "gamma": str(c.gamma)} for c in witnesses],
    }
    lines = [str(count)]
    lines += [f"witness: beta = {c.beta}, gamma = {c.gamma}" for c in witnesses]
    if census and not witnesses:
        lines.append(f"note: {w} is decomposable but {f2.admissibility_failure(w, ring)}")
    _emit(data, args.format, lines)
    return EXIT_OK


# -- representation counts ----------------------------------------------------


def _check_q(q: int) -> None:
    if q < 1 or q % 2 == 0:
        raise UsageError(f"q must be odd and positive, got {q}")


def _pattern(args) -> W2Data:
    if args.w2 is not None:
        try:
            w2 = W2Data.from_bits(args.w2)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    elif args.bundle == "xy":
        w2 = family.XY_PATTERN
    else:
        w2 = family.pullback_pattern(args.sigma)
    family.classify_pattern(w2)
    return w2


def lambda_report(q: int, w2: W2Data, oracle: bool = False) -> dict:
    classes = family.solve(q, w2)
    parity = family.theorem_parity_check(q, w2)
    covers = family.cover_checks(classes)
    lam_bar = family.lambda_bar(q, w2)
    report = {
        "q": q,
        "bundle": family.classify_pattern(w2),
        "w2": w2.full().as_dict(),
        "classes": [c.to_dict() for c in classes],
        "lambda_bar": lam_bar,
        "lambda_ppp": family.lambda_ppp(q, w2),
        "count_note": f"unsigned count; signed value is +-{lam_bar}",
        "parity": parity.to_dict(),
        "cover_check": all(covers),
    }
    if oracle:
        found = family.brute_force_reps(q, w2)
        report["oracle"] = {
            "classes": len(found),
            "match": {so3_key(c.rep) for c in found} == {so3_key(c.rep) for c in classes},
        }
    return report


def _report_ok(r: dict) -> bool:
    return r["parity"]["pass"] and r["cover_check"] and r.get("oracle", {}).get("match", True)


def cmd_lambda(args) -> int:
    _check_q(args.q)
    w2 = _pattern(args)
    r = lambda_report(args.q, w2, args.oracle)
    lines = [f"q = {r['q']}, bundle = {r['bundle']}, w2 = {w2.full().bits} (ux uy vx vy xy sigma)"]
    lines.append(f"{'k':>4} {'l':>4} {'kind':>8} {'v':>8} {'orbit':>5}  stabilizer")
    for c in r["classes"]:
        k = "-" if c["k"] is None else c["k"]
        l = "-" if c["l"] is None else c["l"]
        lines.append(
            f"{k:>4} {l:>4} {c['kind']:>8} {c['v_angle']:>8} {c['orbit']:>5}  {' '.join(c['stabilizer'])}"
        )
    p = r["parity"]
    lines += [
        f"classes = {len(r['classes'])}",
        f"lambda_bar = {r['lambda_bar']} ({r['count_note']})",
        f"lambda''' = {r['lambda_ppp']}",
        f"det X mod 2 = {p['det_mod2']}, lambda_bar mod 2 = {p['lambda_bar_mod2']}, "
        f"four-orbits mod 2 = {p['four_orbits_mod2']}",
        f"parity: {'pass' if p['pass'] else 'FAIL'}",
        f"stabilizer/cover check: {'pass' if r['cover_check'] else 'FAIL'}",
    ]
    if "oracle" in r:
        o = r["oracle"]
        lines.append(f"oracle: {o['classes']} classes, {'match' if o['match'] else 'MISMATCH'}")
    _emit(r, args.format, lines)
    return EXIT_OK if _report_ok(r) else EXIT_FAIL


# -- Rohlin sums --------------------------------------------------------------


def cmd_rho_bar(args) -> int:
    try:
        text = sys.stdin.read() if args.input == "-" else open(args.input).read()
        a, t = rohlin.SpinAssignment.from_json(text)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read assignment: {exc}") from None
    if a.dim != 3:
        raise UsageError("rho-bar takes a 3-dimensional assignment")
    value = rohlin.rho_bar(a)
    data: dict = {"rho_bar": str(rohlin.as_q2z(value, a.mode)), "mode": a.mode}
    lines = [str(rohlin.as_q2z(value, a.mode))]
    if a.mode == "z2":
        ts = [t] if t is not None else [0, 1]
        ok = [s for s in ts if rohlin.is_turaev_consistent(a, s)]
        data["consistent_t"] = ok
        if ok:
            lines.append(", ".join(f"consistent(t={s})" for s in ok))
        else:
            lines.append("inconsistent" + (f" with t={t}" if t is not None else ""))
    else:
        data["consistent_t"] = None
        lines.append("consistency not checked at eighths resolution")
    _emit(data, args.format, lines)
    return EXIT_OK


# -- verify -------------------------------------------------------------------


def _q_range(text: str) -> list[int]:
    try:
        lo, hi = (int(s) for s in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a range like 1..9, got {text!r}") from None
    if lo < 1 or hi < lo or lo % 2 == 0 or hi % 2 == 0:
        raise argparse.ArgumentTypeError(f"q-range endpoints must be odd with 1 <= lo <= hi, got {text!r}")
    return list(range(lo, hi + 1, 2))


@dataclass
class QResult:
    q: int
    lines: list[str] = field(default_factory=list)
    ok: bool = True


def verify_q(q: int, oracle: bool) -> QResult:
    res = QResult(q)
    try:
        for sigma in (0, 1):
            w2 = family.pullback_pattern(sigma)
            r = lambda_report(q, w2, oracle)
            sizes = [c["orbit"] for c in r["classes"]]
            census = (sizes.count(4), sizes.count(8), sizes.count(16))
            good = (
                r["lambda_bar"] == r["lambda_ppp"] == q * q
                and census == (1, (q * q - 1) // 2, 0)
                and _report_ok(r)
            )
            res.ok &= good
            extra = f", oracle {'match' if r['oracle']['match'] else 'MISMATCH'}" if oracle else ""
            res.lines.append(
                f"q={q} pullback sigma={sigma}: lambda_bar={r['lambda_bar']} lambda'''={r['lambda_ppp']} "
                f"orbits(4,8,16)={census}{extra} {'ok' if good else 'FAIL'}"
            )
        r = lambda_report(q, family.XY_PATTERN)
        good = r["lambda_bar"] == 1 and r["classes"][0]["orbit"] == 4 and _report_ok(r)
        res.ok &= good
        res.lines.append(f"q={q} xy: lambda_bar={r['lambda_bar']} {'ok' if good else 'FAIL'}")
    except (InvariantViolation, AssertionError) as exc:
        res.ok = False
        res.lines.append(f"q={q}: invariant violation: {exc}")
    return res


def global_checks() -> list[tuple[str, bool]]:
    out = []
    out.append(("det basis invariance", all(f2.det_invariance_check(r) for r in (f2.ODD, f2.EVEN))))
    agree = True
    for ring in (f2.ODD, f2.EVEN):
        for w in f2.TwoForm.all():
            if w:
                witnesses = f2.klein_census(w) if f2.is_admissible(w, ring) else []
                agree &= len(witnesses) == f2.count_four_orbits(w, ring)
    out.append(("four-orbit count vs Klein census", agree))
    parity = all(
        rohlin.rho_bar(a) == t for t in (0, 1) for a in rohlin.enumerate_consistent(t)
    )
    out.append(("Rohlin sum parity", parity))
    return out


def cmd_verify(args) -> int:
    qs = args.q_range
    ok = True
    for name, passed in global_checks():
        print(f"{name}: {'ok' if passed else 'FAIL'}")
        ok &= passed
    oracle_for = [q <= args.oracle_max_q for q in qs]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(verify_q, qs, oracle_for))
    else:
        results = [verify_q(q, o) for q, o in zip(qs, oracle_for)]
    for res in sorted(results, key=lambda r: r.q):
        print("\n".join(res.lines))
        ok &= res.ok
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="homtori", description="Invariants of homology 4-tori and the T^4(q,-q) family.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(p):
        p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("det", help="quadruple cup product bit")
    p.add_argument("--ring", type=_ring, required=True)
    fmt(p)
    p.set_defaults(func=cmd_det)

    for name, func, helptext in (
        ("admissible", cmd_admissible, "admissibility of a w2 class"),
        ("four-orbits", cmd_four_orbits, "number of four-orbits for a w2 class"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--w", type=_two_form, required=True, help='two-form such as "12+34"')
        p.add_argument("--ring", type=_ring, required=True)
        fmt(p)
        p.set_defaults(func=func)

    p = sub.add_parser("lambda", help="representation counts for T^4(q,-q)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--bundle", choices=("pullback", "xy"), default="pullback")
    p.add_argument("--sigma", type=_bit, default=0)
    p.add_argument("--w2", help="six bits ux uy vx vy xy sigma; overrides --bundle")
    p.add_argument("--oracle", action="store_true", help="cross-check with the exhaustive search")
    fmt(p)
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("rho-bar", help="sum of Rohlin invariants from a JSON assignment")
    p.add_argument("--input", required=True, help="JSON file, or - for stdin")
    fmt(p)
    p.set_defaults(func=cmd_rho_bar)

    p = sub.add_parser("verify", help="check all family values over a q-range")
    p.add_argument("--q-range", type=_q_range, required=True, help="odd endpoints, e.g. 1..9")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--oracle-max-q", type=int, default=5, help="run the exhaustive search for q up to this")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"homtori: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedPattern as exc:
        print(f"homtori: unsupported w2 pattern: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvariantViolation, family.ResourceLimitError) as exc:
        print(f"homtori: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
