"""Chevalley basis of the Lie algebra attached to a based root datum.

Basis: root vectors X_beta (keyed by root index) and the Cartan
X^vee (x) Q (keyed by ``-(k+1)`` for the k-th standard coordinate).  All
scalars of automorphisms are stored as exponents in Q/Z; a map multiplies
X_beta by exp(2 pi i e).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import intlin
from .intlin import dot, frac_mod1
from .root_datum import BasedRootDatum
from .weyl import WeylElement, longest_element, minus_w0_diagram

Element = Dict[int, Fraction]
HALF = Fraction(1, 2)


class AlgebraError(AssertionError):
    pass


def hkey(k: int) -> int:
    return -(k + 1)


class ChevalleyAlgebra:
    def __init__(self, brd: BasedRootDatum):
        self.brd = brd
        self.N: Dict[Tuple[int, int], int] = {}
        self._sum: Dict[Tuple[int, int], int] = {}
        self._involutions: Dict[Optional[Tuple[int, ...]], "MonomialMap"] = {}
        coeffs, index = brd.root_coeffs, brd.coeff_index
        for i, ci in enumerate(coeffs):
            for j, cj in enumerate(coeffs):
                k = index.get(tuple(a + b for a, b in zip(ci, cj)))
                if k is not None:
                    self._sum[(i, j)] = k
        self._build_constants()

    # ------------------------------------------------------------ constants
    def root_sum(self, i: int, j: int) -> Optional[int]:
        return self._sum.get((i, j))

    def root_diff(self, i: int, j: int) -> Optional[int]:
        return self.root_sum(i, self.brd.negative(j))

    def string_p(self, r: int, s: int) -> int:
        """Largest p with s - p r a root."""
        brd = self.brd
        p = 0
        cur = s
        while True:
            nxt = self.root_diff(cur, r)
            if nxt is None:
                return p
            p += 1
            cur = nxt

    def _build_constants(self) -> None:
        brd = self.brd
        npos = brd.npos
        L = brd.root_lengths
        pos_table: Dict[Tuple[int, int], Fraction] = {}

        def N(r: int, s: int) -> Fraction:
            """Structure constant for arbitrary roots r, s with r + s a root."""
            rp, sp = brd.is_positive(r), brd.is_positive(s)
            if rp and sp:
                return pos_table[(r, s)]
            if not rp and not sp:
                return -pos_table[(brd.negative(r), brd.negative(s))]
            t = brd.negative(self.root_sum(r, s))
            if rp:  # r > 0, s < 0
                if brd.is_positive(t):
                    return L[t] / L[s] * N(t, r)
                return L[t] / L[r] * N(s, t)
            # r < 0, s > 0
            return -N(s, r)

        for xi in range(npos):
            if brd.height(xi) == 1:
                continue
            decomps = [(z, self.root_diff(xi, z)) for z in range(npos)]
            decomps = [(z, e) for z, e in decomps if e is not None and brd.is_positive(e)]
            alpha, beta = decomps[0]
            p = self.string_p(alpha, beta)
            pos_table[(alpha, beta)] = Fraction(p + 1)
            pos_table[(beta, alpha)] = Fraction(-(p + 1))
            Nab = pos_table[(alpha, beta)]
            for zeta, eta in decomps:
                if zeta in (alpha, beta) or zeta > eta:
                    continue
                val = Fraction(0)
                ea = self.root_diff(eta, alpha)
                if ea is not None:
                    val += N(eta, brd.negative(alpha)) * N(zeta, brd.negative(beta)) / L[ea]
                za = self.root_diff(zeta, alpha)
                if za is not None:
                    val += N(brd.negative(alpha), zeta) * N(eta, brd.negative(beta)) / L[za]
                val = L[xi] / Nab * val
                pos_table[(zeta, eta)] = val
                pos_table[(eta, zeta)] = -val
        for (r, s) in self._sum:
            v = N(r, s)
            if v.denominator != 1:
                raise AlgebraError(f"non-integral structure constant at {(r, s)}")
            self.N[(r, s)] = int(v)

    # ------------------------------------------------------------- brackets
    @property
    def dim(self) -> int:
        return self.brd.rank + len(self.brd.roots)

    def basis_keys(self) -> List[int]:
        return [hkey(k) for k in range(self.brd.rank)] + list(range(len(self.brd.roots)))

    def bracket_basis(self, a: int, b: int) -> Element:
        brd = self.brd
        if a < 0 and b < 0:
            return {}
        if a < 0:
            c = brd.roots[b][-a - 1]
            return {b: Fraction(c)} if c else {}
        if b < 0:
            c = brd.roots[a][-b - 1]
            return {a: Fraction(-c)} if c else {}
        if b == brd.negative(a):
            return {hkey(k): Fraction(x) for k, x in enumerate(brd.coroots[a]) if x}
        s = self.root_sum(a, b)
        if s is None:
            return {}
        return {s: Fraction(self.N[(a, b)])}

    def bracket(self, u: Element, v: Element) -> Element:
        out: Element = {}
        for a, x in u.items():
            for b, y in v.items():
                for k, z in self.bracket_basis(a, b).items():
                    out[k] = out.get(k, 0) + x * y * z
        return {k: c for k, c in out.items() if c}

    def exp_ad(self, root: int, coeff: Fraction, v: Element) -> Element:
        """exp(ad(coeff * X_root)) v, a finite sum by nilpotence."""
        out = dict(v)
        term = dict(v)
        k = 0
        x = {root: Fraction(coeff)}
        while term:
            k += 1
            term = {key: c / k for key, c in self.bracket(x, term).items()}
            for key, c in term.items():
                out[key] = out.get(key, 0) + c
            if k > 8:
                raise AlgebraError("ad X is not nilpotent")
        return {k: c for k, c in out.items() if c}

    def jacobi_ok(self, a: int, b: int, c: int) -> bool:
        A, B, C = {a: Fraction(1)}, {b: Fraction(1)}, {c: Fraction(1)}
        tot: Element = {}
        for x, y, z in ((A, B, C), (B, C, A), (C, A, B)):
            for k, v in self.bracket(x, self.bracket(y, z)).items():
                tot[k] = tot.get(k, 0) + v
        return all(v == 0 for v in tot.values())

    # ------------------------------------------------- Weyl representatives
    @cached_property
    def _simple_reps(self) -> Tuple["MonomialMap", ...]:
        return tuple(self._simple_rep(i) for i in self.brd.simples)

    def _simple_rep(self, i: int) -> "MonomialMap":
        brd = self.brd
        a, na = i, brd.negative(i)
        one = Fraction(1)

        def ad_n(v: Element) -> Element:
            v = self.exp_ad(a, one, v)
            v = self.exp_ad(na, -one, v)
            return self.exp_ad(a, one, v)

        s = WeylElement.from_word(brd, (i,))
        perm, scal = [], []
        for r in range(len(brd.roots)):
            img = ad_n({r: one})
            target = s.act_root(r)
            if set(img) != {target} or abs(img[target]) != 1:
                raise AlgebraError(f"Ad(n_{i}) is not monomial on root {r}")
            perm.append(target)
            scal.append(HALF if img[target] < 0 else Fraction(0))
        for k in range(brd.rank):
            img = ad_n({hkey(k): one})
            expect = s.coweight_action([int(j == k) for j in range(brd.rank)])
            got = tuple(img.get(hkey(j), 0) for j in range(brd.rank))
            if got != tuple(Fraction(x) for x in expect) or any(key >= 0 for key in img):
                raise AlgebraError(f"Ad(n_{i}) does not act on the Cartan by s_{i}")
        return MonomialMap(brd, tuple(perm), tuple(scal), s.matrix)

    def weyl_representative(self, word: Iterable[int]) -> "MonomialMap":
        out = MonomialMap.identity(self.brd)
        for i in word:
            out = out * self._simple_reps[i]
        return out

    # --------------------------------------------------- pinned automorphisms
    def pinned_automorphism(self, perm: Sequence[int], matrix=None,
                            simple_scalars: Optional[Sequence] = None,
                            subset: Optional[Iterable[int]] = None) -> "MonomialMap":
        """Automorphism with X_{+-alpha_i} -> exp(+-2 pi i s_i) X_{+-alpha_perm(i)}.

        Extended to the roots spanned by ``subset`` (default Delta) through
        brackets with simple root vectors.  ``matrix`` is the action on X;
        by default it is derived from ``perm`` (see ``diagram_lattice_map``).
        """
        brd = self.brd
        S = tuple(brd.simples) if subset is None else tuple(sorted(set(subset)))
        Sset = set(S)
        perm = tuple(perm)
        if any(perm[i] not in Sset for i in S):
            raise AlgebraError("diagram permutation does not preserve the subset")
        if matrix is None:
            matrix = diagram_lattice_map(brd, perm)
        scal0 = [Fraction(0)] * brd.nsimple if simple_scalars is None else \
            [frac_mod1(x) for x in simple_scalars]

        def in_levi(r):
            return all(c == 0 or k in Sset for k, c in enumerate(brd.root_coeffs[r]))

        def permute(r):
            c = brd.root_coeffs[r]
            c2 = [0] * brd.nsimple
            for k, x in enumerate(c):
                if x:
                    c2[perm[k]] = x
            return brd.coeff_index[tuple(c2)]

        nroots = len(brd.roots)
        img: List[Optional[int]] = [None] * nroots
        sc: List[Optional[Fraction]] = [None] * nroots
        order = sorted((r for r in range(nroots) if in_levi(r)), key=lambda r: abs(brd.height(r)))
        for r in order:
            h = brd.height(r)
            if abs(h) == 1:
                i = r if h == 1 else brd.negative(r)
                img[r] = permute(r)
                sc[r] = scal0[i] if h == 1 else frac_mod1(-scal0[i])
                continue
            sign = 1 if h > 0 else -1
            for i in S:
                a = i if sign > 0 else brd.negative(i)
                b = self.root_diff(r, a)
                if b is not None and (brd.is_positive(b) == (sign > 0)):
                    break
            else:
                raise AlgebraError(f"no simple decomposition for root {r}")
            num = self.N[(img[a], img[b])]
            den = self.N[(a, b)]
            if abs(num) != abs(den):
                raise AlgebraError(f"structure constants incompatible at {(a, b)}")
            img[r] = permute(r)
            sc[r] = frac_mod1(sc[a] + sc[b] + (0 if num == den else HALF))
        f = MonomialMap(brd, tuple(-1 if x is None else x for x in img),
                        tuple(sc), intlin_freeze(matrix))
        bad = f.bracket_failure(self)
        if bad is not None:
            raise AlgebraError(f"pinned extension inconsistent at root pair {bad}")
        return f

    def chevalley_involution(self, subset: Optional[Iterable[int]] = None) -> "MonomialMap":
        """Pinned automorphism acting on the torus by t -> w_S(t^{-1})."""
        S = None if subset is None else tuple(sorted(set(subset)))
        if S not in self._involutions:
            perm = minus_w0_diagram(self.brd, S)
            w = longest_element(self.brd, S)
            A = [[-x for x in row] for row in w.matrix]
            self._involutions[S] = self.pinned_automorphism(perm, A, subset=S)
        return self._involutions[S]

    def torus_conjugation(self, t: "TorusPoint") -> "MonomialMap":
        brd = self.brd
        sc = tuple(t.evaluate(brd, r) for r in range(len(brd.roots)))
        return MonomialMap(brd, tuple(range(len(brd.roots))), sc,
                           intlin_freeze(intlin.identity(brd.rank)))


def intlin_freeze(M) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in M)


def diagram_lattice_map(brd: BasedRootDatum, perm: Sequence[int], center_sign: int = 1):
    """Integer matrix A on X with A alpha_i = alpha_perm(i) and A = center_sign
    on the characters killed by every coroot.  Raises if A is not integral."""
    n = brd.rank
    cols_src = [list(brd.simple_roots[i]) for i in brd.simples]
    cols_dst = [list(brd.simple_roots[perm[i]]) for i in brd.simples]
    if brd.nsimple < n:
        K = intlin.lattice_kernel([list(v) for v in brd.simple_coroots], n) if brd.nsimple \
            else intlin.identity(n)
        for j in range(len(K[0])):
            z = [K[i][j] for i in range(n)]
            cols_src.append(z)
            cols_dst.append([center_sign * x for x in z])
    P = intlin.transpose(cols_src)
    Q = intlin.transpose(cols_dst)
    A = intlin.matmul([[Fraction(x) for x in row] for row in Q], intlin.rational_inverse(P))
    if not all(intlin.is_integral(row) for row in A):
        raise AlgebraError("diagram automorphism does not preserve the lattice X")
    return [[int(x) for x in row] for row in A]


@lru_cache(maxsize=None)
def algebra(brd: BasedRootDatum) -> ChevalleyAlgebra:
    return ChevalleyAlgebra(brd)


# ---------------------------------------------------------------- torus points

@dataclass(frozen=True)
class TorusPoint:
    """A torsion point of the torus: either X^vee (x) Q/Z coordinates
    (``basis='cochar'``) or values on the simple roots (``basis='adjoint'``)."""

    coords: Tuple[Fraction, ...]
    basis: str = "cochar"

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(frac_mod1(x) for x in self.coords))
        if self.basis not in ("cochar", "adjoint"):
            raise ValueError(self.basis)

    def evaluate(self, brd: BasedRootDatum, root: int) -> Fraction:
        v = brd.roots[root] if self.basis == "cochar" else brd.root_coeffs[root]
        return frac_mod1(dot(v, self.coords))

    def to_adjoint(self, brd: BasedRootDatum) -> "TorusPoint":
        if self.basis == "adjoint":
            return self
        return TorusPoint(tuple(dot(a, self.coords) for a in brd.simple_roots), "adjoint")

    def __add__(self, other: "TorusPoint") -> "TorusPoint":
        assert self.basis == other.basis
        return TorusPoint(tuple(a + b for a, b in zip(self.coords, other.coords)), self.basis)

    def __neg__(self) -> "TorusPoint":
        return TorusPoint(tuple(-a for a in self.coords), self.basis)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k) -> "TorusPoint":
        return TorusPoint(tuple(k * a for a in self.coords), self.basis)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coords)

    def to_json(self) -> dict:
        return {"basis": self.basis, "coords": [str(x) for x in self.coords]}


def iota_minus(brd: BasedRootDatum) -> TorusPoint:
    """The adjoint torus point acting by -1 on every simple root space.

    Unique in T^ad: simple roots form a basis of the adjoint character lattice.
    """
    return TorusPoint(tuple(HALF for _ in brd.simples), "adjoint")


def phi_j_point(brd: BasedRootDatum) -> TorusPoint:
    """2 rho^vee (x) 1/4."""
    v = brd.two_rho_check()
    return TorusPoint(tuple(Fraction(x, 4) for x in v), "cochar")


# -------------------------------------------------------------- monomial maps

@dataclass(frozen=True)
class MonomialMap:
    """X_beta -> exp(2 pi i scalars[beta]) X_{perm[beta]}, Cartan via ``matrix``
    (acting on X; on X^vee (x) Q it acts by the inverse transpose).

    ``perm[beta] == -1`` marks a root outside the domain (Levi restrictions).
    """

    brd: BasedRootDatum
    perm: Tuple[int, ...]
    scalars: Tuple[Optional[Fraction], ...]
    matrix: Tuple[Tuple[int, ...], ...]

    @classmethod
    def identity(cls, brd: BasedRootDatum) -> "MonomialMap":
        n = len(brd.roots)
        return cls(brd, tuple(range(n)), tuple(Fraction(0) for _ in range(n)),
                   intlin_freeze(intlin.identity(brd.rank)))

    @property
    def domain(self) -> Tuple[int, ...]:
        return tuple(r for r, p in enumerate(self.perm) if p >= 0)

    def __mul__(self, other: "MonomialMap") -> "MonomialMap":
        """Composition self o other."""
        perm, sc = [], []
        for r in range(len(other.perm)):
            p = other.perm[r]
            if p < 0 or self.perm[p] < 0:
                perm.append(-1)
                sc.append(None)
            else:
                perm.append(self.perm[p])
                sc.append(frac_mod1(other.scalars[r] + self.scalars[p]))
        M = intlin.matmul(self.matrix, other.matrix)
        return MonomialMap(self.brd, tuple(perm), tuple(sc), intlin_freeze(M))

    def inverse(self) -> "MonomialMap":
        n = len(self.perm)
        perm = [-1] * n
        sc: List[Optional[Fraction]] = [None] * n
        for r, p in enumerate(self.perm):
            if p >= 0:
                perm[p] = r
                sc[p] = frac_mod1(-self.scalars[r])
        return MonomialMap(self.brd, tuple(perm), tuple(sc),
                           intlin_freeze(intlin.integer_inverse(self.matrix)))

    def restrict(self, roots: Iterable[int]) -> "MonomialMap":
        keep = set(roots)
        perm = tuple(p if r in keep else -1 for r, p in enumerate(self.perm))
        sc = tuple(s if r in keep else None for r, s in enumerate(self.scalars))
        return MonomialMap(self.brd, perm, sc, self.matrix)

    def cartan_action(self):
        Minv = intlin.rational_inverse(self.matrix)
        return intlin.transpose(Minv)

    def apply(self, v: Element) -> Element:
        """Numerical action is not exact for general roots of unity, so only
        elements supported on roots with scalar in {0, 1/2} and the Cartan are
        accepted."""
        out: Element = {}
        n = self.brd.rank
        A = self.cartan_action()
        for k, c in v.items():
            if k < 0:
                j = -k - 1
                for i in range(n):
                    if A[i][j]:
                        out[hkey(i)] = out.get(hkey(i), 0) + c * A[i][j]
            else:
                if self.perm[k] < 0:
                    raise ValueError(f"root {k} outside the domain")
                s = self.scalars[k]
                if s not in (0, HALF):
                    raise ValueError("apply() supports sign scalars only")
                sign = -1 if s == HALF else 1
                out[self.perm[k]] = out.get(self.perm[k], 0) + sign * c
        return {k: c for k, c in out.items() if c}

    def bracket_failure(self, alg: ChevalleyAlgebra,
                        pairs: Optional[Iterable[Tuple[int, int]]] = None):
        """First basis pair (r, s) where bracket preservation fails, else None."""
        brd = self.brd
        A = self.matrix
        dom = set(self.domain)
        for r in dom:
            if tuple(intlin.matvec(A, brd.roots[r])) != brd.roots[self.perm[r]]:
                return (r, "matrix")
        if pairs is None:
            pairs = ((r, s) for r in dom for s in dom)
        for r, s in pairs:
            if r not in dom or s not in dom:
                continue
            if s == brd.negative(r):
                if frac_mod1(self.scalars[r] + self.scalars[s]) != 0:
                    return (r, s)
                if self.perm[s] != brd.negative(self.perm[r]):
                    return (r, s)
                continue
            t = alg.root_sum(r, s)
            if t is None:
                if alg.root_sum(self.perm[r], self.perm[s]) is not None:
                    return (r, s)
                continue
            if t not in dom or self.perm[t] != alg.root_sum(self.perm[r], self.perm[s]):
                return (r, s)
            n1 = alg.N[(r, s)]
            n2 = alg.N[(self.perm[r], self.perm[s])]
            if abs(n1) != abs(n2):
                return (r, s)
            lhs = frac_mod1(self.scalars[r] + self.scalars[s] + (0 if n1 == n2 else HALF))
            if lhs != self.scalars[t]:
                return (r, s)
        return None

    def is_automorphism(self, alg: ChevalleyAlgebra, pairs=None) -> bool:
        return self.bracket_failure(alg, pairs) is None

    def is_identity(self) -> bool:
        return all(p == r for r, p in enumerate(self.perm) if p >= 0) and \
            all(s == 0 for s in self.scalars if s is not None) and \
            self.matrix == intlin_freeze(intlin.identity(self.brd.rank))

    def to_json(self) -> dict:
        return {
            "perm": list(self.perm),
            "scalars": [None if s is None else str(s) for s in self.scalars],
            "matrix": [list(r) for r in self.matrix],
        }
