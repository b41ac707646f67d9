"""Command-line interface: ``rootdual <command> <group-spec> ...``.

Every command prints deterministic JSON on stdout.  Exit codes: 0 success
(negative mathematical verdicts included), 2 malformed input, 3 internal
invariant violation.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from fractions import Fraction
from typing import List, Optional, Sequence

SCHEMA = "rootdual/v1"
log = logging.getLogger("rootdual")


def _encode(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, (tuple, set, frozenset)):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, default=_encode, separators=(",", ":"))


def report(command: str, spec: Optional[str], result, elapsed_ms: Optional[float] = None) -> dict:
    out = {"schema": SCHEMA, "command": command, "input": spec, "result": result}
    if elapsed_ms is not None:
        out["elapsed_ms"] = round(elapsed_ms, 3)
    return out


def _fractions(text: str) -> List[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma separated rationals, got {text!r}") from None


def _indices(text: str) -> List[int]:
    if not text.strip():
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated indices, got {text!r}") from None


# ----------------------------------------------------------------- commands

def cmd_describe(form, args) -> dict:
    from .weyl import longest_element, minus_one_in_W
    brd = form.brd
    return {
        "form": form.to_json(),
        "rank": brd.rank,
        "semisimple_rank": brd.nsimple,
        "roots": len(brd.roots),
        "positive_roots": brd.npos,
        "minus_one_in_W": minus_one_in_W(brd),
        "center": brd.center().labels(),
        "pi1_dual": brd.pi1_of_dual().labels(),
        "w0_length": longest_element(brd).length(),
        "two_rho_check": list(brd.two_rho_check()),
        "cartan_matrix": [list(r) for r in brd.cartan],
    }


def cmd_involution(form, args) -> dict:
    from .duality import duality_involution
    return duality_involution(form).to_json()


def cmd_cohomology(form, args) -> dict:
    from .cohomology import connecting_map_real, prop2_criterion, prop8_injectivity
    from .galois_form import Real
    out = {"prop2": prop2_criterion(form).to_json()}
    if form.brd.nsimple == form.brd.rank:
        out["prop8"] = prop8_injectivity(form).to_json()
    else:
        out["prop8"] = {"status": "not_applicable", "reason": "the group is not semisimple"}
    if isinstance(form.field, Real):
        out["iota_class"] = connecting_map_real(form, [Fraction(1, 2)] * form.brd.nsimple).to_json()
    return out


def cmd_levi(form, args) -> dict:
    from .levi import is_relevant, lemma6_lift_check, p_prime_standardness, solve_t0
    from .weyl import longest_element
    S = sorted(set(args.subset))
    if any(not 0 <= i < form.brd.nsimple for i in S):
        raise ValueError(f"subset indices must lie in 0..{form.brd.nsimple - 1}")
    w, S2, bij = p_prime_standardness(form.brd, S, form)
    out = {"subset": S, "relevant": is_relevant(form, S), "transfer": {str(k): v for k, v in bij.items()},
           "target_subset": list(S2), "w_word": list(w.reduced_word())}
    if out["relevant"]:
        out["t0"] = solve_t0(form, S).to_json()
        ok, cocycle = lemma6_lift_check(form, longest_element(form.brd, S).reduced_word())
        out["w_M_lift"] = {"central": ok, "defect": {str(g): t.to_json() for g, t in cocycle.items()}}
    return out


def cmd_eta(form, args) -> dict:
    from .eta import eta_minus_one, pairing_is_perfect, pi1_boundary
    from .galois_form import Real
    z = args.z if args.z is not None else [Fraction(0)] * form.brd.rank
    if isinstance(form.field, Real):
        res = eta_minus_one(form, z).to_json()
        if form.brd.nsimple == form.brd.rank:
            res["pairing_perfect"] = pairing_is_perfect(form)
        return res
    return {"boundary_class": pi1_boundary(form, z).to_json(), "eta_value": None,
            "note": f"eta is only computed over R, not {form.field.tag}"}


COMMANDS = {
    "describe": cmd_describe,
    "involution": cmd_involution,
    "cohomology": cmd_cohomology,
    "levi": cmd_levi,
    "eta": cmd_eta,
}


# ----------------------------------------------------------------- selftest

def _selftest_checks() -> List[tuple]:
    from .cohomology import prop2_criterion, prop8_injectivity
    from .duality import duality_involution
    from .chevalley import algebra, iota_minus, phi_j_point
    from .galois_form import parse_spec
    from .levi import p_prime_standardness, solve_t0, standard_levis
    from .root_datum import build
    from .weyl import minus_one_in_W

    def minus_one():
        expect = {"A1": True, "A2": False, "B3": True, "C3": True, "D4": True, "D5": False,
                  "E6": False, "E7": True, "F4": True, "G2": True}
        return all(minus_one_in_W(build(t, "sc")) == v for t, v in expect.items())

    def two_rho():
        for t in ("A3", "B3", "G2", "F4"):
            brd = build(t, "sc")
            alg = algebra(brd)
            if alg.torus_conjugation(phi_j_point(brd)) != alg.torus_conjugation(iota_minus(brd)):
                return False
        return True

    def mvw():
        return (duality_involution(parse_spec("Sp6@R")).c_trivial
                and duality_involution(parse_spec("U3@R")).iota_lifts_to_T.status == "yes"
                and duality_involution(parse_spec("U4@R")).iota_lifts_to_T.status == "no")

    def prop2():
        return (prop2_criterion(parse_spec("SL3@Qp7")).verdict == "fails"
                and prop2_criterion(parse_spec("Sp4@Qp3")).verdict == "holds")

    def levi():
        for spec in ("2A3-sc@R", "3D4-sc@Qp3", "B3-sc@R"):
            f = parse_spec(spec)
            for L in standard_levis(f):
                p_prime_standardness(f.brd, L.subset, f if L.relevant else None)
                if L.relevant and solve_t0(f, L.subset).corrected_t0 is None:
                    return False
        return True

    def prop8():
        return all(prop8_injectivity(parse_spec(s)).verified for s in ("2A3-sc@Qp3", "2E6-sc@R", "6D4-sc@Qp5"))

    return [("minus_one_in_W", minus_one), ("two_rho", two_rho), ("mvw", mvw),
            ("prop2", prop2), ("levi_t0", levi), ("prop8", prop8)]


def run_selftest() -> dict:
    results = {}
    for name, fn in _selftest_checks():
        try:
            results[name] = bool(fn())
        except AssertionError as exc:
            log.error("selftest %s: %s", name, exc)
            results[name] = False
    return {"checks": results, "passed": all(results.values())}


# ------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rootdual", description="Exact duality involutions of quasi-split groups.")
    p.add_argument("--timing", action="store_true", help="include elapsed_ms in the report")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("describe", "involution", "cohomology"):
        s = sub.add_parser(name)
        s.add_argument("spec")
    s = sub.add_parser("levi")
    s.add_argument("spec")
    s.add_argument("--subset", type=_indices, required=True, help="simple root indices, e.g. 0,2")
    s = sub.add_parser("eta")
    s.add_argument("spec")
    s.add_argument("--z", type=_fractions, help="central dual element as rationals, e.g. 1/2,0,1/2")
    s = sub.add_parser("catalog")
    s.add_argument("--rank", type=int, default=4)
    s.add_argument("--fields", default=None, help="comma separated field tags")
    sub.add_parser("selftest")
    return p


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    from .galois_form import ParseError, parse_spec
    logging.basicConfig(level=os.environ.get("ROOTDUAL_LOG", "WARNING"), stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    start = time.perf_counter()

    def elapsed():
        ms = (time.perf_counter() - start) * 1000
        log.info("elapsed %.1f ms", ms)
        return ms if args.timing else None

    try:
        if args.command == "selftest":
            res = run_selftest()
            _emit(report("selftest", None, res, elapsed()))
            return 0 if res["passed"] else 3
        if args.command == "catalog":
            from .duality import CATALOG_FIELDS, catalog
            fields = tuple(args.fields.split(",")) if args.fields else CATALOG_FIELDS
            for row in catalog(args.rank, fields=fields):
                _emit(report("catalog", row["form"], row))
            elapsed()
            return 0
        form = parse_spec(args.spec)
        res = COMMANDS[args.command](form, args)
        _emit(report(args.command, args.spec, res, elapsed()))
        return 0
    except ParseError as exc:
        _emit({"schema": SCHEMA, "error": {"kind": "parse", "message": exc.message,
                                           "position": exc.position}})
        sys.stderr.write(f"{exc}\n  {exc.text}\n  {' ' * exc.position}^\n")
        return 2
    except AssertionError as exc:
        _emit({"schema": SCHEMA, "error": {"kind": "invariant", "message": str(exc)}})
        log.error("invariant violation: %s", exc)
        return 3
    except ValueError as exc:
        _emit({"schema": SCHEMA, "error": {"kind": "input", "message": str(exc)}})
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
