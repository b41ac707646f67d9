"""The duality involution iota_G = Ad(iota_-) o c, its well-definedness, the
Whittaker/pinning correspondence and a catalog sweep over quasi-split forms."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import intlin
from .chevalley import HALF, MonomialMap, TorusPoint, algebra, iota_minus
from .cohomology import Verdict, connecting_map_real, prop2_criterion
from .galois_form import PAdic, QuasiSplitForm, Real, parse_spec
from .intlin import frac_mod1
from .weyl import longest_element, minus_one_in_W, minus_w0_diagram


class DualityError(AssertionError):
    pass


# --------------------------------------------------------------- lifting

@dataclass
class LiftAnswer:
    status: str  # yes | no | unknown
    witness: Optional[TorusPoint] = None
    note: str = ""

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.note:
            out["note"] = self.note
        return out


def lift_adjoint_point(form: QuasiSplitForm, a: Sequence) -> LiftAnswer:
    """Does the adjoint torsion point ``a`` come from a rational point of T?

    Over R the answer is exact: a real torsion lift exists iff the
    connecting class vanishes.  Elsewhere a Galois-fixed 2-torsion lift is
    searched for (sign points are rational over every field), which only
    proves the positive answer.
    """
    brd = form.brd
    n = brd.rank
    a = [frac_mod1(x) for x in a]
    roots = [list(r) for r in brd.simple_roots]
    if isinstance(form.field, Real):
        rho = form.real_structure()
        rows = roots + [[x - int(i == j) for j, x in enumerate(r)] for i, r in enumerate(rho)]
        sol = intlin.solve_mod_one(rows, a + [0] * n)
        if sol is None:
            return LiftAnswer("no")
        return LiftAnswer("yes", TorusPoint(tuple(sol)))
    rows = list(roots)
    rhs = list(a)
    for M in form.gen_cochar():
        rows += [[x - int(i == j) for j, x in enumerate(r)] for i, r in enumerate(M)]
        rhs += [0] * n
    rows += [[2 * int(i == j) for j in range(n)] for i in range(n)]
    rhs += [0] * n
    sol = intlin.solve_mod_one(rows, rhs)
    if sol is None:
        return LiftAnswer("unknown", note=f"no Galois-fixed 2-torsion lift over {form.field.tag}")
    return LiftAnswer("yes", TorusPoint(tuple(sol)))


def iota_lifts_to_T(form: QuasiSplitForm) -> LiftAnswer:
    return lift_adjoint_point(form, [HALF] * form.brd.nsimple)


# ------------------------------------------------------------ involution

def chevalley_torus_image(form: QuasiSplitForm, t: TorusPoint) -> TorusPoint:
    """t -> w0(t^-1) on cocharacter coordinates."""
    w0 = longest_element(form.brd)
    return TorusPoint(tuple(-x for x in w0.coweight_action(t.coords)))


def torus_law_holds(form: QuasiSplitForm, c: MonomialMap, t: TorusPoint) -> bool:
    alg = algebra(form.brd)
    lhs = c * alg.torus_conjugation(t) * c.inverse()
    rhs = alg.torus_conjugation(chevalley_torus_image(form, t))
    return lhs == rhs


def rescaled_involution(form: QuasiSplitForm, t: TorusPoint, verify: bool = False) -> MonomialMap:
    """iota for the pinning Ad(t){X_alpha}: Ad(iota_-) composed with the pinned
    automorphism of the rescaled pinning."""
    brd = form.brd
    alg = algebra(brd)
    ta = t.to_adjoint(brd)
    pi = minus_w0_diagram(brd)
    w0 = longest_element(brd)
    A = [[-x for x in r] for r in w0.matrix]
    scal = [ta.coords[pi[i]] - ta.coords[i] for i in brd.simples]
    if verify:
        cp = alg.pinned_automorphism(pi, A, simple_scalars=scal)
    else:
        cp = _fast_pinned(alg, pi, A, scal)
    return alg.torus_conjugation(iota_minus(brd)) * cp


def _fast_pinned(alg, pi, A, scal):
    """Pinned automorphism with the scalars propagated from a verified base map.

    The rescaled map equals Ad(s) o c0 o Ad(-s) for any s with
    s_pi(i) - s_i = scal_i; propagating scal along root coefficients is the
    additive form of that identity.
    """
    base = alg.chevalley_involution()
    brd = alg.brd
    sc = []
    for r in range(len(brd.roots)):
        coeffs = brd.root_coeffs[r]
        extra = sum(c * s for c, s in zip(coeffs, scal))
        sc.append(frac_mod1(base.scalars[r] + extra))
    return MonomialMap(brd, base.perm, tuple(sc), base.matrix)


def star_identity_check(form: QuasiSplitForm, t: TorusPoint, verify: bool = False) -> Dict:
    """Check iota' = Ad(t) o iota o Ad(t)^-1 for the pinning rescaled by t and
    whether t w_G(t) lies in the image of T(F)."""
    brd = form.brd
    alg = algebra(brd)
    base = rescaled_involution(form, TorusPoint((0,) * brd.nsimple, "adjoint"), verify)
    lhs = rescaled_involution(form, t, verify)
    Ad = alg.torus_conjugation(t)
    rhs = Ad * base * alg.torus_conjugation(-t)
    identity_ok = lhs == rhs
    ta = t.to_adjoint(brd)
    pi = minus_w0_diagram(brd)
    s = [frac_mod1(ta.coords[i] - ta.coords[pi[i]]) for i in brd.simples]
    lift = lift_adjoint_point(form, s)
    return {"identity": identity_ok, "t_w0_t": [str(x) for x in s], "lifts": lift.status}


def rational_half_points(form: QuasiSplitForm) -> List[TorusPoint]:
    """Adjoint 2-torsion points fixed by the Galois action (all of them)."""
    r = form.brd.nsimple
    out = []
    for bits in product((0, 1), repeat=r):
        a = [Fraction(b, 2) for b in bits]
        if all(tuple(a[p.index(i)] for i in range(r)) == tuple(a) for p in form.perms):
            out.append(TorusPoint(tuple(a), "adjoint"))
    return out


@dataclass
class DualityReport:
    form: str
    c_trivial: bool
    minus_one_in_W: bool
    diagram_perm: Tuple[int, ...]
    iota_minus: TorusPoint
    iota_lifts_to_T: LiftAnswer
    well_defined: Verdict
    iota_squared_central: Tuple[Fraction, ...]
    checks: Dict[str, bool]
    classical_identification: str = ""

    def to_json(self) -> dict:
        out = {
            "form": self.form,
            "c_trivial": self.c_trivial,
            "minus_one_in_W": self.minus_one_in_W,
            "diagram_perm": list(self.diagram_perm),
            "iota_minus": self.iota_minus.to_json(),
            "iota_lifts_to_T": self.iota_lifts_to_T.to_json(),
            "well_defined": self.well_defined.to_json(),
            "iota_squared_central": [str(x) for x in self.iota_squared_central],
            "checks": dict(sorted(self.checks.items())),
        }
        if self.classical_identification:
            out["classical_identification"] = self.classical_identification
        return out


_CLASSICAL_NOTES = {
    "Sp": "symplectic: c is trivial, so iota_G is conjugation by iota_-",
    "SO": "orthogonal: iota_- is a rational point of T; c is trivial iff the rank is even",
    "U": "unitary: iota_- is a rational point of T iff n is odd",
    "GL": "general linear: iota_G is the transpose-inverse composed with an inner automorphism",
}


def duality_involution(form: QuasiSplitForm, star_points: Optional[Iterable[TorusPoint]] = None
                       ) -> DualityReport:
    brd = form.brd
    alg = algebra(brd)
    c = alg.chevalley_involution()
    if not (c * c).is_identity():
        raise DualityError("Chevalley involution is not an involution")
    im = iota_minus(brd)
    i_minus = alg.torus_conjugation(im)
    commute = c * i_minus == i_minus * c
    if not commute:
        raise DualityError("iota_- and c do not commute")
    iota = i_minus * c
    pi = minus_w0_diagram(brd)
    positive = all(brd.is_positive(iota.perm[k]) for k in range(brd.npos))
    # iota^2 = Ad(t~ + c(t~)) for a lift t~ of iota_- to T
    lift = intlin.solve_mod_one([list(a) for a in brd.simple_roots], [HALF] * brd.nsimple, brd.rank)
    t = TorusPoint(tuple(lift))
    sq = t + chevalley_torus_image(form, t)
    central = all(sq.evaluate(brd, k) == 0 for k in range(len(brd.roots)))
    iota_sq_ok = (iota * iota).is_identity()
    law = torus_law_holds(form, c, t) and torus_law_holds(
        form, c, TorusPoint(tuple(Fraction(k + 1, 4 + k) for k in range(brd.rank))))
    verdict = prop2_criterion(form)
    checks = {"commute": commute, "positive_to_positive": positive, "iota_squared_identity": iota_sq_ok,
              "iota_squared_central": central, "torus_law": law}
    if verdict.verdict == "holds":
        pts = list(star_points) if star_points is not None else _default_star_points(form)
        star_ok = True
        for p in pts:
            res = star_identity_check(form, p)
            star_ok = star_ok and res["identity"]
            if isinstance(form.field, Real):
                star_ok = star_ok and res["lifts"] == "yes"
        checks["star_identity"] = star_ok
    c_triv = c.is_identity()
    m1 = minus_one_in_W(brd)
    if c_triv != (m1 and brd.nsimple == brd.rank):
        raise DualityError("c trivial does not match -1 in W")
    if not all(checks.values()):
        bad = sorted(k for k, v in checks.items() if not v)
        raise DualityError(f"duality involution checks failed: {bad}")
    lbl = form.id.split("@")[0]
    note = next((v for k, v in _CLASSICAL_NOTES.items()
                 if lbl.startswith(k) and lbl[len(k):].isdigit()), "")
    return DualityReport(form.id, c_triv, m1, pi, im, iota_lifts_to_T(form), verdict,
                         sq.coords, checks, note)


def _default_star_points(form: QuasiSplitForm) -> List[TorusPoint]:
    pts = rational_half_points(form)
    if len(pts) <= 16:
        return pts
    r = form.brd.nsimple
    return [p for p in pts if sum(1 for x in p.coords if x) <= 1 or all(p.coords)]


# ------------------------------------------------------------- Whittaker

@dataclass(frozen=True)
class WhittakerDatum:
    """psi(X_alpha_i) = exp(2 pi i exponents[i]) for the standard pinning.

    ``units`` carries a formal unit symbol per simple root for fields where the
    value is not a root of unity; it is passed through unchanged.
    """

    exponents: Tuple[Fraction, ...]
    units: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(frac_mod1(x) for x in self.exponents))
        if not self.units:
            object.__setattr__(self, "units", tuple("1" for _ in self.exponents))
        if len(self.units) != len(self.exponents) or any(u in ("", "0") for u in self.units):
            raise ValueError("Whittaker datum scalars must be nonzero")

    def inverse(self) -> "WhittakerDatum":
        """psi^-1: every value negated, i.e. exponent + 1/2."""
        return WhittakerDatum(tuple(x + HALF for x in self.exponents), self.units)

    def translate(self, t: TorusPoint) -> "WhittakerDatum":
        """psi o Ad(t)^-1 for an adjoint torsion point t."""
        return WhittakerDatum(tuple(x - y for x, y in zip(self.exponents, t.coords)), self.units)

    def to_json(self) -> dict:
        return {"exponents": [str(x) for x in self.exponents], "units": list(self.units)}


def whittaker_to_pinning(psi: WhittakerDatum) -> TorusPoint:
    """Scaling of the standard pinning with psi(X_alpha) = 1 (adjoint coordinates)."""
    return TorusPoint(tuple(-x for x in psi.exponents), "adjoint")


def pinning_to_whittaker(scaling: TorusPoint, units: Sequence[str] = ()) -> WhittakerDatum:
    return WhittakerDatum(tuple(-x for x in scaling.coords), tuple(units))


def apply_involution_to_whittaker(form: QuasiSplitForm, iota: MonomialMap,
                                  psi: WhittakerDatum) -> WhittakerDatum:
    """psi o iota^-1, read off on the simple root vectors."""
    brd = form.brd
    out = [Fraction(0)] * brd.nsimple
    for i in brd.simples:
        j = iota.perm[i]
        if j >= brd.nsimple:
            raise DualityError("involution does not preserve the simple root spaces")
        out[j] = psi.exponents[i] - iota.scalars[i]
    return WhittakerDatum(tuple(out), tuple(psi.units[iota.perm.index(j)] for j in brd.simples))


def whittaker_duality_check(form: QuasiSplitForm, psi: WhittakerDatum) -> bool:
    """iota built from the pinning attached to psi sends psi to psi^-1."""
    iota = rescaled_involution(form, whittaker_to_pinning(psi))
    return apply_involution_to_whittaker(form, iota, psi) == psi.inverse()


# --------------------------------------------------------------- catalog

CATALOG_FIELDS = ("R", "Qp2", "Qp3", "Qp5", "Qp7")


def _simple_types(rank_bound: int) -> List[str]:
    out = [f"A{n}" for n in range(1, rank_bound + 1)]
    out += [f"B{n}" for n in range(2, rank_bound + 1)]
    out += [f"C{n}" for n in range(3, rank_bound + 1)]
    out += [f"D{n}" for n in range(4, rank_bound + 1)]
    out += [t for t, r in (("G2", 2), ("F4", 4), ("E6", 6), ("E7", 7), ("E8", 8)) if r <= rank_bound]
    return out


def catalog_specs(rank_bound: int, fields: Sequence[str] = CATALOG_FIELDS) -> List[List[str]]:
    """Group specs sharing a root datum, so one worker builds each algebra once."""
    from .root_datum import build
    groups: List[List[str]] = []
    for t in _simple_types(rank_bound):
        letter, n = t[0], int(t[1:])
        isos = ["sc"] + (["ad"] if build(t, "sc").center().order != 1 else [])
        twists = [1]
        if letter == "A" and n >= 2:
            twists.append(2)
        if letter == "D":
            twists.append(2)
            if n == 4:
                twists += [3, 6]
        if t == "E6":
            twists.append(2)
        for iso in isos:
            grp = []
            for k in twists:
                for f in fields:
                    if f == "R" and k > 2:
                        continue
                    grp.append(f"{k if k > 1 else ''}{t}-{iso}@{f}")
            groups.append(grp)
    classical = []
    for n in range(1, rank_bound + 1):
        classical += [f"Sp{2 * n}", f"SO{2 * n + 1}", f"GL{n + 1}", f"U{n + 1}", f"SL{n + 1}"]
        if n >= 2:
            classical.append(f"SO{2 * n}")
    for c in classical:
        groups.append([f"{c}@{f}" for f in fields])
    return groups


def _rows_for(specs: Sequence[str]) -> List[dict]:
    return [duality_involution(parse_spec(s)).to_json() for s in specs]


def catalog(rank_bound: int, jobs: Optional[int] = None,
            fields: Sequence[str] = CATALOG_FIELDS) -> List[dict]:
    if not 1 <= rank_bound <= 8:
        raise ValueError("rank bound must lie in 1..8")
    groups = catalog_specs(rank_bound, fields)
    if jobs is None:
        jobs = int(os.environ.get("ROOTDUAL_JOBS", "0") or 0) or (os.cpu_count() or 1)
    if jobs <= 1:
        chunks = [_rows_for(g) for g in groups]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_rows_for, groups))
    return [row for ch in chunks for row in ch]
