"""Central elements of the dual group, the boundary into H^1(Gamma, pi_1),
and the character eta_{-1} obtained by pairing with the class of iota_-."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import intlin
from .chevalley import HALF
from .cohomology import (CohomologyClassGroup, GModule, connecting_map_real, cup_pairing_real,
                         h_n, real_center_h1)
from .galois_form import QuasiSplitForm, Real
from .groups import FiniteGroup, cyclic
from .intlin import frac_mod1, matvec

Vec = Tuple[int, ...]


class EtaError(ValueError):
    pass


@dataclass
class LatticeQuotient:
    """Z^n / span(sub) with a group action, in Smith coordinates."""

    module: GModule
    U: List[List[int]]
    Uinv: List[List[int]]
    keep: Tuple[int, ...]

    @classmethod
    def build(cls, group: FiniteGroup, sub: Sequence[Sequence[int]], n: int,
              gen_mats: Sequence[Sequence[Sequence[int]]]) -> "LatticeQuotient":
        if sub:
            S = intlin.smith(intlin.transpose([list(v) for v in sub]))
            U = S.U
            diag = S.diagonal + [0] * (n - len(S.diagonal))
        else:
            U, diag = intlin.identity(n), [0] * n
        Uinv = intlin.integer_inverse(U)
        keep = tuple(k for k in range(n) if diag[k] != 1)
        mats = []
        for A in gen_mats:
            B = intlin.matmul(intlin.matmul(U, A), Uinv)
            mats.append([[B[i][j] for j in keep] for i in keep])
        mod = GModule(group, tuple(diag[k] for k in keep), tuple(mats))
        return cls(mod, U, Uinv, keep)

    def coords(self, x: Sequence[int]) -> Vec:
        y = matvec(self.U, list(x))
        return self.module.reduce([y[k] for k in self.keep])

    def lift(self, c: Sequence[int]) -> List[int]:
        full = [0] * len(self.U)
        for k, v in zip(self.keep, c):
            full[k] = v
        return matvec(self.Uinv, full)


def pi1_quotient(form: QuasiSplitForm, subset: Optional[Sequence[int]] = None,
                 group: Optional[FiniteGroup] = None,
                 gen_mats=None) -> LatticeQuotient:
    """pi_1 of the dual Levi for ``subset``: X / Z{alpha_i : i in subset}."""
    brd = form.brd
    S = brd.simples if subset is None else sorted(subset)
    sub = [list(brd.simple_roots[i]) for i in S]
    if group is None:
        group, gen_mats = form.gamma, form.gen_x()
    return LatticeQuotient.build(group, sub, brd.rank, gen_mats)


def real_pi1_quotient(form: QuasiSplitForm, subset: Optional[Sequence[int]] = None
                      ) -> LatticeQuotient:
    """The same quotient as a module for Gal(C/R), which has order two even
    when the form is split."""
    A = form.x_mats[form.sigma] if form.sigma is not None else intlin.identity(form.brd.rank)
    return pi1_quotient(form, subset, cyclic(2), [A])


# ------------------------------------------------------------ boundary

def check_central_fixed(form: QuasiSplitForm, z: Sequence) -> List[Fraction]:
    """Validate z in X (x) Q/Z as a Gamma-fixed point of the dual center."""
    brd = form.brd
    z = [frac_mod1(Fraction(x)) for x in z]
    if len(z) != brd.rank:
        raise EtaError(f"expected {brd.rank} coordinates, got {len(z)}")
    for i, cr in enumerate(brd.simple_coroots):
        if frac_mod1(intlin.dot(cr, z)) != 0:
            raise EtaError(f"z is not central: simple root {i} of the dual group takes a nonzero value")
    for M in form.gen_x():
        if [frac_mod1(x) for x in matvec(M, z)] != z:
            raise EtaError("z is not fixed by the Galois action")
    return z


def _roots_as_columns(form: QuasiSplitForm) -> List[List[int]]:
    return intlin.transpose([list(a) for a in form.brd.simple_roots])


def sc_lift(form: QuasiSplitForm, z: Sequence) -> List[Fraction]:
    """Coordinates c with sum c_i alpha_i == z mod X (a point of the simply
    connected cover of the dual torus)."""
    R = _roots_as_columns(form)
    c = intlin.solve_mod_one(R, list(z), form.brd.nsimple) if form.brd.nsimple else []
    if c is None:
        raise EtaError("z does not lie in the derived subgroup of the dual group")
    return c


@dataclass
class BoundaryClass:
    cocycle: Dict[int, Vec]  # group element -> representative in X
    class_coords: Tuple[int, ...]
    group: List[int]
    is_zero: bool

    def to_json(self) -> dict:
        return {"cocycle": {str(g): list(v) for g, v in sorted(self.cocycle.items())},
                "class": list(self.class_coords), "h1_pi1": list(self.group),
                "is_zero": self.is_zero}


def _boundary_values(form: QuasiSplitForm, c: Sequence[Fraction]) -> Dict[int, Vec]:
    R = _roots_as_columns(form)
    out = {}
    for g in form.gamma.elements:
        P = form.adjoint_perm_matrix(g)
        diff = [x - y for x, y in zip(matvec(P, c), c)]
        v = matvec(R, diff)
        if any(Fraction(x).denominator != 1 for x in v):
            raise EtaError("boundary value is not integral; z is not Galois fixed")
        out[g] = tuple(int(x) for x in v)
    return out


def _classify(Q: LatticeQuotient, H: CohomologyClassGroup, values: Dict[int, Vec]) -> Tuple[int, ...]:
    return H.classify({(g,): Q.coords(v) for g, v in values.items()})


def pi1_boundary(form: QuasiSplitForm, z: Sequence) -> BoundaryClass:
    """Class of g -> g(z~) - z~ in H^1(Gamma, X / Z Delta)."""
    z = check_central_fixed(form, z)
    c = sc_lift(form, z)
    values = _boundary_values(form, c)
    if form.gamma.order == 1:
        return BoundaryClass(values, (), [], True)
    Q = pi1_quotient(form)
    H = h_n(Q.module, 1)
    coords = _classify(Q, H, values)
    # a second lift differs by an element of the kernel of the isogeny
    r = form.brd.nsimple
    K = _isogeny_kernel(form)
    shift = [sum(col) for col in zip(*K)] if K else [0] * r
    c2 = [x + y for x, y in zip(c, shift)]
    if _classify(Q, H, _boundary_values(form, c2)) != coords:
        raise EtaError("boundary class depends on the chosen lift")
    return BoundaryClass(values, coords, list(H.invariant_factors), not any(coords))


def _isogeny_kernel(form: QuasiSplitForm) -> List[List[Fraction]]:
    """Generators of {c : sum c_i alpha_i in X} / Z^r."""
    from .cohomology import TorsionGroup
    r = form.brd.nsimple
    if not r:
        return []
    T = TorsionGroup.kernel_of(_roots_as_columns(form), r)
    return [list(T.point([int(k == j) for k in range(len(T.orders))])) for j in range(len(T.orders))]


# ------------------------------------------------------------------ eta

@dataclass
class EtaResult:
    value: Fraction
    iota_class: object
    boundary: BoundaryClass

    def to_json(self) -> dict:
        return {"eta_value": str(self.value), "iota_class": self.iota_class.to_json(),
                "boundary_class": self.boundary.to_json()}


def pairing(form: QuasiSplitForm, a: Sequence, b: Sequence[int]) -> Fraction:
    """Cup product of a in H^1(C2, Z(G)) with b in H^1(C2, pi_1(dual))."""
    A = form.x_mats[form.sigma] if form.sigma is not None else intlin.identity(form.brd.rank)
    return cup_pairing_real(a, b, lambda v: matvec(A, list(v)),
                            lambda x, y: intlin.dot(list(x), list(y)))


def eta_minus_one(form: QuasiSplitForm, z: Sequence) -> EtaResult:
    if not isinstance(form.field, Real):
        raise EtaError(f"eta is only implemented over R, not {form.field.tag}")
    bnd = pi1_boundary(form, z)
    iota = connecting_map_real(form, [HALF] * form.brd.nsimple)
    b = bnd.cocycle.get(form.sigma, (0,) * form.brd.rank) if form.sigma is not None \
        else (0,) * form.brd.rank
    return EtaResult(pairing(form, iota.cocycle_value, b), iota, bnd)


def pairing_is_perfect(form: QuasiSplitForm) -> bool:
    """H^1(C2, Z(G)) -> Hom(H^1(C2, pi_1(dual)), 1/2 Z/Z) is an isomorphism."""
    if not isinstance(form.field, Real):
        raise EtaError("the pairing is only implemented over R")
    Zp, _, H = real_center_h1(form)
    Q = real_pi1_quotient(form)
    Hp = h_n(Q.module, 1)
    if (H.order or 1) != (Hp.order or 1):
        return False
    bs = [Q.lift(Hp.cocycle_from_coords(c)[(1,)]) for c in Hp.element_coords()]
    for coords in H.element_coords():
        if not any(coords):
            continue
        a = Zp.point(H.cocycle_from_coords(coords)[(1,)])
        if all(pairing(form, a, b) == 0 for b in bs):
            return False
    return True
