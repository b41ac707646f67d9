"""Standard Levi subgroups of the dual group and the torus element t0 that
relates the Chevalley involutions of a Levi and of the ambient group.

All torus points here are adjoint points of the dual torus (values on the
simple roots of the dual group); only their conjugation action matters.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import intlin
from .chevalley import MonomialMap, TorusPoint, algebra
from .cohomology import connecting_map_real, h_n
from .eta import pairing, real_pi1_quotient
from .galois_form import QuasiSplitForm, Real
from .intlin import frac_mod1, matvec
from .root_datum import BasedRootDatum
from .weyl import WeylElement, longest_element


class LeviError(AssertionError):
    pass


@dataclass(frozen=True)
class StandardLevi:
    subset: Tuple[int, ...]
    relevant: bool

    def to_json(self) -> dict:
        return {"subset": list(self.subset), "relevant": self.relevant}


def is_relevant(form: QuasiSplitForm, S: Iterable[int]) -> bool:
    S = set(S)
    return all({p[i] for i in S} == S for p in form.gen_perms)


def standard_levis(form: QuasiSplitForm, proper: bool = False) -> List[StandardLevi]:
    r = form.brd.nsimple
    out = []
    for mask in range(1 << r):
        S = tuple(i for i in range(r) if mask >> i & 1)
        if proper and len(S) == r:
            continue
        out.append(StandardLevi(S, is_relevant(form, S)))
    out.sort(key=lambda L: (len(L.subset), L.subset))
    return out


def p_prime_standardness(brd: BasedRootDatum, S: Iterable[int],
                         form: Optional[QuasiSplitForm] = None
                         ) -> Tuple[WeylElement, Tuple[int, ...], Dict[int, int]]:
    """w = w_G w_M maps the simple roots in S onto simple roots S'.

    Returns (w, S', i -> index of w(alpha_i)).  With a form and a Galois
    stable S the bijection must commute with the Galois permutations.
    """
    S = tuple(sorted(set(S)))
    w = longest_element(brd) * longest_element(brd, S)
    bij = {}
    for i in S:
        j = w.act_root(i)
        if j not in brd.simples:
            raise LeviError(f"w_G w_M sends simple root {i} to a non-simple root")
        bij[i] = j
    if form is not None and is_relevant(form, S):
        for p in form.gen_perms:
            if any(bij[p[i]] != p[bij[i]] for i in S):
                raise LeviError("the transfer S -> S' does not respect Galois orbits")
    return w, tuple(sorted(bij.values())), bij


# ------------------------------------------------------------------- t0

@dataclass
class T0Solution:
    subset: Tuple[int, ...]
    target: Tuple[int, ...]
    discrepancy: Dict[int, Fraction]
    t0: TorusPoint
    sigma_defect: Dict[int, TorusPoint]
    corrected_t0: Optional[TorusPoint]
    word: Tuple[int, ...]
    maps_agree: bool = True
    extras: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "subset": list(self.subset),
            "target_subset": list(self.target),
            "weyl_word": list(self.word),
            "discrepancy": {str(i): str(v) for i, v in sorted(self.discrepancy.items())},
            "t0": self.t0.to_json(),
            "sigma_defect": {str(g): t.to_json() for g, t in sorted(self.sigma_defect.items())},
            "corrected_t0": None if self.corrected_t0 is None else self.corrected_t0.to_json(),
            "maps_agree": self.maps_agree,
        }


def _levi_roots(brd: BasedRootDatum, S: Iterable[int]) -> List[int]:
    S = set(S)
    return [r for r, c in enumerate(brd.root_coeffs) if all(x == 0 or k in S for k, x in enumerate(c))]


def _adjoint_action(form: QuasiSplitForm, g: int, t: TorusPoint) -> TorusPoint:
    return TorusPoint(tuple(matvec(form.adjoint_perm_matrix(g), list(t.coords))), "adjoint")


def levi_sides(form: QuasiSplitForm, S: Iterable[int], shift: Optional[TorusPoint] = None
               ) -> Tuple[MonomialMap, MonomialMap, Tuple[int, ...]]:
    """The two homomorphisms of the dual Levi subalgebra into the dual algebra:
    c_G restricted to the Levi, and Ad(n_{w_G} n_{w_M}) o c_M.

    ``shift`` replaces the Weyl representative n by n Ad(shift); the
    representative is only defined up to the torus.
    """
    return _sides(form.brd.dual(), tuple(sorted(set(S))), shift)


@lru_cache(maxsize=4096)
def _sides(d: BasedRootDatum, S: Tuple[int, ...], shift: Optional[TorusPoint]):
    alg = algebra(d)
    wG, wM = longest_element(d), longest_element(d, S)
    word = wG.reduced_word() + wM.reduced_word()
    n = alg.weyl_representative(word)
    if shift is not None:
        n = n * alg.torus_conjugation(shift)
    lhs = alg.chevalley_involution().restrict(_levi_roots(d, S))
    rhs = n * alg.chevalley_involution(S)
    return lhs, rhs, word


def solve_t0(form: QuasiSplitForm, S: Iterable[int], shift: Optional[TorusPoint] = None
             ) -> T0Solution:
    """Adjoint t0 with Ad(t0) o c_G = Ad(n_{w_G} n_{w_M}) o c_M on the Levi.

    Both sides send the root space of alpha to that of -w_G(alpha), so t0
    acts on the Levi with simple roots S' = -w_G(S).
    """
    S = tuple(sorted(set(S)))
    if not is_relevant(form, S):
        raise LeviError(f"subset {list(S)} is not Galois stable")
    d = form.brd.dual()
    alg = algebra(d)
    lhs, rhs, word = levi_sides(form, S, shift)
    dom = _levi_roots(d, S)
    if lhs.matrix != rhs.matrix:
        raise LeviError("the two sides differ on the Cartan subalgebra")
    for r in dom:
        if lhs.perm[r] != rhs.perm[r]:
            raise LeviError(f"the two sides send root {r} to different root spaces")
    target = tuple(sorted(lhs.perm[i] for i in S))
    disc = {i: frac_mod1(rhs.scalars[i] - lhs.scalars[i]) for i in S}
    a = [Fraction(0)] * d.nsimple
    for i in S:
        a[lhs.perm[i]] = disc[i]
    t0 = TorusPoint(tuple(a), "adjoint")
    for r in dom:
        if frac_mod1(rhs.scalars[r] - lhs.scalars[r]) != t0.evaluate(d, lhs.perm[r]):
            raise LeviError(f"sides are not related by a torus element at root {r}")
    agree = alg.torus_conjugation(t0) * lhs == rhs.restrict(dom)
    if not agree:
        raise LeviError("Ad(t0) does not intertwine the two sides")

    tgt_roots = _levi_roots(d, target)
    defect = {}
    for g in form.gamma.generators:
        dg = _adjoint_action(form, g, t0) - t0
        if any(dg.evaluate(d, r) for r in tgt_roots):
            raise LeviError("t0^sigma / t0 is not central in the Levi")
        defect[g] = dg
    corrected = _correct(form, t0, target, defect)
    return T0Solution(S, target, disc, t0, defect, corrected, word, agree)


def _correct(form: QuasiSplitForm, t0: TorusPoint, target: Sequence[int],
             defect: Dict[int, TorusPoint]) -> Optional[TorusPoint]:
    """Find z0 central in the Levi with z0 + t0 Galois fixed."""
    r = form.brd.nsimple
    rows: List[List[int]] = [[int(j == i) for j in range(r)] for i in target]
    rhs: List[Fraction] = [Fraction(0)] * len(target)
    for g, dg in defect.items():
        P = form.adjoint_perm_matrix(g)
        rows += [[P[i][j] - int(i == j) for j in range(r)] for i in range(r)]
        rhs += [-x for x in dg.coords]
    z0 = intlin.solve_mod_one(rows, rhs, r)
    if z0 is None:
        return None
    t = t0 + TorusPoint(tuple(z0), "adjoint")
    if any(_adjoint_action(form, g, t) != t for g in form.gamma.generators):
        raise LeviError("corrected t0 is not Galois fixed")
    return t


def literal_identity_holds(form: QuasiSplitForm, S: Iterable[int]) -> bool:
    """Whether the maps c_M and Ad(n_{w_G} n_{w_M}) o c_G (restricted to the
    Levi) even send each root space of the Levi to the same root space,
    which conjugation by a torus element would require."""
    S = tuple(sorted(set(S)))
    d = form.brd.dual()
    alg = algebra(d)
    wG, wM = longest_element(d), longest_element(d, S)
    n = alg.weyl_representative(wG.reduced_word() + wM.reduced_word())
    left = alg.chevalley_involution(S)
    right = n * alg.chevalley_involution()
    return all(left.perm[r] == right.perm[r] for r in _levi_roots(d, S))


# --------------------------------------------------------------- lemma 6

def galois_pinned(form: QuasiSplitForm, g: int) -> MonomialMap:
    """The pinned automorphism of the dual algebra through which g acts."""
    d = form.brd.dual()
    return algebra(d).pinned_automorphism(form.perms[g], form.cochar_mats[g])


def is_galois_invariant(form: QuasiSplitForm, w: WeylElement) -> bool:
    for A in form.gen_x():
        lhs = intlin.matmul(A, w.matrix)
        rhs = intlin.matmul(w.matrix, A)
        if lhs != rhs:
            return False
    return True


def lemma6_lift_check(form: QuasiSplitForm, word: Sequence[int]) -> Tuple[bool, Dict[int, TorusPoint]]:
    """For a Galois invariant w, sigma(n_w) n_w^-1 is a central torus element
    for every generator sigma; returns the cocycle in adjoint coordinates
    (zero adjoint coordinates = central)."""
    brd = form.brd
    w = WeylElement.from_word(brd, word)
    if not is_galois_invariant(form, w):
        raise LeviError(f"Weyl element {list(word)} is not Galois invariant")
    d = brd.dual()
    alg = algebra(d)
    n = alg.weyl_representative(word)
    out = {}
    ok = True
    for g in form.gamma.generators:
        P = galois_pinned(form, g)
        q = P * n * P.inverse() * n.inverse()
        if list(q.perm) != list(range(len(d.roots))) or \
                [list(r) for r in q.matrix] != intlin.identity(d.rank):
            raise LeviError("sigma(n_w) n_w^-1 is not a torus element")
        vals = tuple(q.scalars[i] for i in d.simples)
        out[g] = TorusPoint(vals, "adjoint")
        ok = ok and not any(vals)
    return ok, out


# -------------------------------------------------------------- remark 2

def remark2_naturality(form: QuasiSplitForm, S: Iterable[int], a: Optional[Sequence] = None
                       ) -> bool:
    """Naturality of G^ad/G -> H^1(Z(G)) -> characters under passage to the
    Levi M with simple roots S, over R.

    ``a`` is a real adjoint point of G (default iota_-).  Left square: the
    class of a restricted to M, computed from an independent lift, equals
    the push-forward of the class for G.  Right square: pairing the pushed
    class against H^1(C2, pi_1(M^)) agrees with pairing the original class
    against the image in H^1(C2, pi_1(G^)).
    """
    if not isinstance(form.field, Real):
        raise LeviError("naturality is checked over R only")
    S = tuple(sorted(set(S)))
    brd = form.brd
    n = brd.rank
    if a is None:
        a = [Fraction(1, 2)] * brd.nsimple
    cls_G = connecting_map_real(form, a)
    zG = list(cls_G.cocycle_value)
    rho = form.real_structure()
    # the same point viewed in M^ad, lifted independently
    rows = [list(brd.simple_roots[i]) for i in S]
    lift = intlin.solve_mod_one(rows, [a[i] for i in S], n) if S else [Fraction(0)] * n
    zM = [frac_mod1(x - y) for x, y in zip(matvec(rho, lift), lift)]
    diff = [frac_mod1(x - y) for x, y in zip(zG, zM)]
    # diff must be rho(u) - u for some u central in M
    cob_rows = rows + [[rho[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    if intlin.solve_mod_one(cob_rows, [Fraction(0)] * len(rows) + diff, n) is None:
        return False
    QM = real_pi1_quotient(form, S)
    QG = real_pi1_quotient(form)
    HM, HG = h_n(QM.module, 1), h_n(QG.module, 1)
    if any(x == 0 for x in HM.invariant_factors):
        raise LeviError("H^1(C2, pi_1) is infinite")
    for coords in HM.element_coords():
        b = QM.lift(HM.cocycle_from_coords(coords)[(1,)])
        route_M = pairing(form, zM, b)
        # canonical representative of the image class in H^1(C2, pi_1(G^))
        img = HG.classify({(1,): QG.coords(b)})
        b2 = QG.lift(HG.cocycle_from_coords(img)[(1,)]) if HG.invariant_factors else [0] * n
        if route_M != pairing(form, zG, b2):
            return False
    return True
