"""Based root data in exact integer coordinates.

Characters X and cocharacters X^vee are both Z^n, paired by the dot product.
Roots are generated by reflection closure from the simple roots/coroots, so
simply connected, adjoint, intermediate, and reductive data share one path.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from . import intlin
from .intlin import dot

Vec = Tuple[int, ...]

SCHEMA = "rootdual/v1"


class RootDatumError(ValueError):
    pass


# ---------------------------------------------------------------- Cartan data

def _chain(n: int) -> List[List[int]]:
    C = [[0] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = 2
        if i + 1 < n:
            C[i][i + 1] = C[i + 1][i] = -1
    return C


def cartan_matrix(letter: str, n: int) -> List[List[int]]:
    """Cartan matrix with entries <alpha_i, alpha_j^vee> (Bourbaki numbering)."""
    if letter == "A" and n >= 1:
        return _chain(n)
    if letter == "B" and n >= 2:
        C = _chain(n)
        C[n - 2][n - 1] = -2
        return C
    if letter == "C" and n >= 2:
        C = _chain(n)
        C[n - 1][n - 2] = -2
        return C
    if letter == "D" and n >= 3:
        C = _chain(n - 1) + [[0] * (n - 1)]
        C = [row + [0] for row in C]
        C[n - 1][n - 1] = 2
        C[n - 1][n - 3] = C[n - 3][n - 1] = -1
        return C
    if letter == "E" and n in (6, 7, 8):
        C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        for a, b in edges:
            C[a][b] = C[b][a] = -1
        return C
    if letter == "F" and n == 4:
        C = _chain(4)
        C[1][2] = -2
        return C
    if letter == "G" and n == 2:
        return [[2, -1], [-3, 2]]
    raise RootDatumError(f"unknown Cartan type {letter}{n}")


_FACTOR_RE = re.compile(r"^([A-GT])(\d+)$")


def parse_type(type_spec: str) -> Tuple[List[Tuple[str, int]], int]:
    """'A1xA1', 'E8', 'A1xT1' -> ([(letter, rank), ...], torus_rank)."""
    factors = []
    torus = 0
    for part in re.split(r"[x×*+]", type_spec.replace(" ", "")):
        if not part:
            continue
        m = _FACTOR_RE.match(part)
        if not m:
            raise RootDatumError(f"unknown label {part!r}")
        letter, n = m.group(1), int(m.group(2))
        if letter == "T":
            torus += n
            continue
        if letter == "C" and n == 2:
            letter = "B"
        cartan_matrix(letter, n)  # validates
        factors.append((letter, n))
    if not factors and not torus:
        raise RootDatumError(f"empty type {type_spec!r}")
    return factors, torus


def block_cartan(factors: Sequence[Tuple[str, int]]) -> List[List[int]]:
    r = sum(n for _, n in factors)
    C = [[0] * r for _ in range(r)]
    off = 0
    for letter, n in factors:
        B = cartan_matrix(letter, n)
        for i in range(n):
            for j in range(n):
                C[off + i][off + j] = B[i][j]
        off += n
    return C


# --------------------------------------------------------------- group types

@dataclass(frozen=True)
class FiniteAbelianGroup:
    invariant_factors: Tuple[int, ...]
    free_rank: int = 0

    def __post_init__(self):
        f = self.invariant_factors
        if any(d < 2 for d in f) or any(f[i + 1] % f[i] for i in range(len(f) - 1)):
            raise ValueError(f"not an invariant-factor chain: {f}")

    @classmethod
    def from_diagonal(cls, diag: Sequence[int], free_rank: int = 0) -> "FiniteAbelianGroup":
        return cls(tuple(d for d in diag if d > 1), free_rank)

    @property
    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def labels(self) -> List[str]:
        return [f"Z/{d}" for d in self.invariant_factors] + ["Z"] * self.free_rank

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors), "free_rank": self.free_rank}


# ---------------------------------------------------------------- root datum

def _generate(cartan: List[List[int]]):
    """Reflection closure in simple-root / simple-coroot coefficient space.

    Returns list of (root_coeffs, coroot_coeffs) pairs.
    """
    r = len(cartan)
    seen: Dict[Vec, Vec] = {}
    frontier = []
    for i in range(r):
        e = tuple(int(k == i) for k in range(r))
        seen[e] = e
        frontier.append((e, e))
    while frontier:
        nxt = []
        for c, d in frontier:
            for i in range(r):
                # <beta, alpha_i^vee> and <alpha_i, beta^vee>
                p = sum(c[j] * cartan[j][i] for j in range(r))
                q = sum(cartan[i][j] * d[j] for j in range(r))
                if p == 0 and q == 0:
                    continue
                c2 = tuple(c[k] - (p if k == i else 0) for k in range(r))
                d2 = tuple(d[k] - (q if k == i else 0) for k in range(r))
                if c2 not in seen:
                    seen[c2] = d2
                    nxt.append((c2, d2))
                    if len(seen) > 100000:
                        raise RootDatumError("Cartan matrix is not of finite type")
        frontier = nxt
    return list(seen.items())


@dataclass(frozen=True, eq=False)
class BasedRootDatum:
    """Based root datum (X, Phi, X^vee, Phi^vee, Delta) with X = X^vee = Z^n.

    ``roots[i]`` and ``coroots[i]`` are aligned; the first ``nsimple``
    entries are the simple roots in order, the positive roots are indices
    ``0 .. npos-1`` sorted by height, and ``roots[npos + k] = -roots[k]``.
    """

    rank: int
    simple_roots: Tuple[Vec, ...]
    simple_coroots: Tuple[Vec, ...]
    type_label: Tuple[str, ...] = ()
    torus_rank: int = 0

    def __post_init__(self):
        if len(self.simple_roots) != len(self.simple_coroots):
            raise RootDatumError("simple roots and coroots differ in number")
        for v in self.simple_roots + self.simple_coroots:
            if len(v) != self.rank:
                raise RootDatumError("vector length differs from lattice rank")
        # fills the cache and validates the Cartan matrix
        self._tables  # noqa: B018

    # -- construction helpers
    @classmethod
    def from_simple(cls, simple_roots, simple_coroots, type_label=(), torus_rank=None):
        rank = len(simple_roots[0]) if simple_roots else len(simple_coroots[0])
        sr = tuple(tuple(int(x) for x in v) for v in simple_roots)
        sc = tuple(tuple(int(x) for x in v) for v in simple_coroots)
        if torus_rank is None:
            torus_rank = rank - len(sr)
        return cls(rank, sr, sc, tuple(type_label), torus_rank)

    @property
    def nsimple(self) -> int:
        return len(self.simple_roots)

    @property
    def semisimple_rank(self) -> int:
        return self.nsimple

    @cached_property
    def cartan(self) -> Tuple[Vec, ...]:
        return tuple(tuple(dot(a, b) for b in self.simple_coroots) for a in self.simple_roots)

    @cached_property
    def _tables(self):
        C = [list(r) for r in self.cartan]
        r = len(C)
        for i in range(r):
            if C[i][i] != 2:
                raise RootDatumError("<alpha, alpha^vee> != 2 for a simple root")
            for j in range(r):
                if i != j and (C[i][j] > 0 or (C[i][j] == 0) != (C[j][i] == 0)):
                    raise RootDatumError("not a generalized Cartan matrix")
        pairs = _generate(C) if r else []
        pos = [(c, d) for c, d in pairs if all(x >= 0 for x in c)]
        neg = [(c, d) for c, d in pairs if not all(x >= 0 for x in c)]
        if any(not all(x <= 0 for x in c) for c, _ in neg):
            raise RootDatumError("root neither positive nor negative")
        pos.sort(key=lambda cd: (sum(cd[0]), tuple(-x for x in cd[0])))
        coeffs = [c for c, _ in pos] + [tuple(-x for x in c) for c, _ in pos]
        cocoeffs = [d for _, d in pos] + [tuple(-x for x in d) for _, d in pos]
        if len(coeffs) != len(pairs):
            raise RootDatumError("root system is not symmetric under negation")
        roots = [tuple(sum(c[k] * self.simple_roots[k][j] for k in range(r)) for j in range(self.rank))
                 for c in coeffs]
        coroots = [tuple(sum(d[k] * self.simple_coroots[k][j] for k in range(r)) for j in range(self.rank))
                   for d in cocoeffs]
        return tuple(coeffs), tuple(cocoeffs), tuple(roots), tuple(coroots), len(pos)

    @property
    def root_coeffs(self) -> Tuple[Vec, ...]:
        return self._tables[0]

    @property
    def coroot_coeffs(self) -> Tuple[Vec, ...]:
        return self._tables[1]

    @property
    def roots(self) -> Tuple[Vec, ...]:
        return self._tables[2]

    @property
    def coroots(self) -> Tuple[Vec, ...]:
        return self._tables[3]

    @property
    def npos(self) -> int:
        return self._tables[4]

    @property
    def simples(self) -> Tuple[int, ...]:
        return tuple(range(self.nsimple))

    @cached_property
    def coeff_index(self) -> Dict[Vec, int]:
        return {c: i for i, c in enumerate(self.root_coeffs)}

    @cached_property
    def root_index(self) -> Dict[Vec, int]:
        return {v: i for i, v in enumerate(self.roots)}

    def is_positive(self, idx: int) -> bool:
        return idx < self.npos

    def negative(self, idx: int) -> int:
        return idx + self.npos if idx < self.npos else idx - self.npos

    def height(self, idx: int) -> int:
        return sum(self.root_coeffs[idx])

    def pair(self, x: Sequence, y: Sequence):
        return dot(x, y)

    @cached_property
    def root_lengths(self) -> Tuple[Fraction, ...]:
        """Squared lengths for the W-invariant form sum_beta <x,beta^vee><y,beta^vee>."""
        out = []
        for a in self.roots:
            out.append(Fraction(sum(dot(a, b) ** 2 for b in self.coroots)))
        return tuple(out)

    # -- structural operations
    def dual(self) -> "BasedRootDatum":
        return BasedRootDatum(self.rank, self.simple_coroots, self.simple_roots,
                              tuple(dual_label(t) for t in self.type_label), self.torus_rank)

    def center(self) -> FiniteAbelianGroup:
        """Character group X/Z.Delta of the center."""
        if not self.nsimple:
            return FiniteAbelianGroup((), self.rank)
        diag = intlin.smith([list(v) for v in self.simple_roots]).diagonal
        return FiniteAbelianGroup.from_diagonal(diag, self.rank - self.nsimple)

    def pi1_of_dual(self) -> FiniteAbelianGroup:
        d = self.dual()
        if not d.nsimple:
            return FiniteAbelianGroup((), self.rank)
        # X^vee(dual) / Z Phi^vee(dual) = X / Z Phi
        diag = intlin.smith([list(v) for v in d.simple_coroots]).diagonal
        out = FiniteAbelianGroup.from_diagonal(diag, self.rank - self.nsimple)
        assert out.invariant_factors == self.center().invariant_factors
        return out

    def two_rho_check(self) -> Vec:
        """2 rho^vee = sum of positive coroots; asserts <alpha_i, 2rho^vee> = 2."""
        v = [0] * self.rank
        for k in range(self.npos):
            for j, x in enumerate(self.coroots[k]):
                v[j] += x
        for a in self.simple_roots:
            if dot(a, v) != 2:
                raise AssertionError("<alpha, 2rho^vee> != 2: root generation bug")
        return tuple(v)

    def two_rho_coroot_coeffs(self) -> Vec:
        v = [0] * self.nsimple
        for k in range(self.npos):
            for j, x in enumerate(self.coroot_coeffs[k]):
                v[j] += x
        return tuple(v)

    def reflect(self, i: int, x: Sequence[int]) -> Vec:
        a, av = self.simple_roots[i], self.simple_coroots[i]
        p = dot(x, av)
        return tuple(xi - p * ai for xi, ai in zip(x, a))

    def validate(self) -> None:
        """Exhaustive invariant check (pairing, reflection closure, sign)."""
        roots = set(self.roots)
        coroots = set(self.coroots)
        for a, av in zip(self.roots, self.coroots):
            if dot(a, av) != 2:
                raise RootDatumError("<alpha, alpha^vee> != 2")
            for b, bv in zip(self.roots, self.coroots):
                p = dot(b, av)
                if tuple(x - p * y for x, y in zip(b, a)) not in roots:
                    raise RootDatumError("reflection does not permute roots")
                q = dot(a, bv)
                if tuple(x - q * y for x, y in zip(bv, av)) not in coroots:
                    raise RootDatumError("reflection does not permute coroots")

    # -- identity and serialization
    def key(self):
        return (self.rank, self.simple_roots, self.simple_coroots)

    def __eq__(self, other):
        return isinstance(other, BasedRootDatum) and self.key() == other.key() \
            and self.type_label == other.type_label and self.torus_rank == other.torus_rank

    def __hash__(self):
        return hash(self.key())

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "rank": self.rank,
            "type_label": list(self.type_label),
            "torus_rank": self.torus_rank,
            "simple_roots": [list(v) for v in self.simple_roots],
            "simple_coroots": [list(v) for v in self.simple_coroots],
            "roots": [list(v) for v in self.roots],
            "simples": list(self.simples),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "BasedRootDatum":
        if doc.get("schema") != SCHEMA:
            raise RootDatumError(f"unsupported schema {doc.get('schema')!r}")
        return cls.from_simple(doc["simple_roots"], doc["simple_coroots"],
                               doc.get("type_label", ()), doc.get("torus_rank"))


def dual_label(label: str) -> str:
    m = re.match(r"^([BC])(\d+)$", label)
    if m and int(m.group(2)) > 2:
        return ("C" if m.group(1) == "B" else "B") + m.group(2)
    return label


def build(type_spec: str, isogeny="sc") -> BasedRootDatum:
    """Build a datum from a type label and an isogeny.

    ``isogeny`` is ``"sc"``, ``"ad"``, or a square integer matrix whose rows
    give a basis of X in fundamental-weight coordinates (the lattice must lie
    between the root and weight lattices).
    """
    factors, torus = parse_type(type_spec)
    C = block_cartan(factors)
    r = len(C)
    if isogeny in ("sc", "simply_connected"):
        B = intlin.identity(r)
    elif isogeny in ("ad", "adjoint"):
        B = [list(row) for row in C]
    else:
        B = [[int(x) for x in row] for row in isogeny]
        if len(B) != r or any(len(row) != r for row in B):
            raise RootDatumError("sublattice matrix has the wrong shape")
    try:
        Binv = intlin.rational_inverse(B)
    except ValueError:
        raise RootDatumError("sublattice matrix is singular") from None
    roots_x = intlin.matmul([[Fraction(x) for x in row] for row in C], Binv)
    if not all(intlin.is_integral(row) for row in roots_x):
        raise RootDatumError("sublattice does not contain the root lattice")
    n = r + torus
    simple_roots = [[int(x) for x in row] + [0] * torus for row in roots_x]
    simple_coroots = [[B[k][j] for k in range(r)] + [0] * torus for j in range(r)]
    labels = [f"{letter}{k}" for letter, k in factors] + ([f"T{torus}"] if torus else [])
    if n == 0:
        raise RootDatumError("empty datum")
    return BasedRootDatum.from_simple(simple_roots, simple_coroots, labels, torus) \
        if simple_roots else BasedRootDatum(n, (), (), tuple(labels), torus)


# ------------------------------------------------------------ classical groups

def _e(n: int, i: int, c: int = 1) -> List[int]:
    return [c if k == i else 0 for k in range(n)]


def _sub(u, v):
    return [a - b for a, b in zip(u, v)]


def _add(u, v):
    return [a + b for a, b in zip(u, v)]


def gl(n: int) -> BasedRootDatum:
    roots = [_sub(_e(n, i), _e(n, i + 1)) for i in range(n - 1)]
    return BasedRootDatum.from_simple(roots, roots, [f"A{n - 1}"] if n > 1 else [], 1) \
        if n > 1 else BasedRootDatum(1, (), (), (), 1)


def sp(n: int) -> BasedRootDatum:
    """Sp_{2n} (type C_n, simply connected) in epsilon coordinates."""
    roots = [_sub(_e(n, i), _e(n, i + 1)) for i in range(n - 1)] + [_e(n, n - 1, 2)]
    coroots = [_sub(_e(n, i), _e(n, i + 1)) for i in range(n - 1)] + [_e(n, n - 1)]
    return BasedRootDatum.from_simple(roots, coroots, ["A1" if n == 1 else ("B2" if n == 2 else f"C{n}")], 0)


def so_odd(n: int) -> BasedRootDatum:
    """SO_{2n+1} (type B_n, adjoint)."""
    roots = [_sub(_e(n, i), _e(n, i + 1)) for i in range(n - 1)] + [_e(n, n - 1)]
    coroots = [_sub(_e(n, i), _e(n, i + 1)) for i in range(n - 1)] + [_e(n, n - 1, 2)]
    return BasedRootDatum.from_simple(roots, coroots, ["A1" if n == 1 else f"B{n}"], 0)


def so_even(n: int) -> BasedRootDatum:
    """SO_{2n} (type D_n with X = Z^n), n >= 2."""
    if n < 2:
        raise RootDatumError("SO_2n needs n >= 2")
    roots = [_sub(_e(n, i), _e(n, i + 1)) for i in range(n - 1)] + [_add(_e(n, n - 2), _e(n, n - 1))]
    label = {2: ["A1", "A1"], 3: ["A3"]}.get(n, [f"D{n}"])
    return BasedRootDatum.from_simple(roots, roots, label, 0)
