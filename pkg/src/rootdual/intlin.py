"""Exact integer linear algebra: Smith normal form with transforms, lattice
kernels, subquotients of Z^m / diag(d), and congruence solving over Q/Z.

Matrices are lists of rows of Python ints; vectors are lists.  Nothing here
uses floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(A: Sequence[Sequence]) -> list:
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def vecmat(v: Sequence, A: Sequence[Sequence]) -> list:
    n = len(A[0]) if A else 0
    return [sum(v[i] * A[i][j] for i in range(len(v))) for j in range(n)]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def frac_mod1(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def vec_mod1(v: Sequence) -> tuple:
    return tuple(frac_mod1(x) for x in v)


def is_integral(v: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def rational_inverse(A: Sequence[Sequence]) -> List[List[Fraction]]:
    """Gauss-Jordan inverse over Q.  Raises ValueError if singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def integer_inverse(A: Sequence[Sequence[int]]) -> Matrix:
    inv = rational_inverse(A)
    out = []
    for row in inv:
        if not is_integral(row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


@dataclass
class SmithForm:
    """``U @ A @ V == D`` with ``D`` diagonal, ``d_1 | d_2 | ...``, nonnegative."""

    U: Matrix
    V: Matrix
    D: Matrix

    @property
    def diagonal(self) -> List[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> SmithForm:
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    D = [list(map(int, row)) for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row_dst += q * row_src
        if q:
            D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        if q:
            for row in D:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = D[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                return SmithForm(U, V, D)
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(D[i][j] % p for j in range(t + 1, n))), None)
            if bad is not None:
                add_row(bad, t, 1)
                continue
            break
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return SmithForm(U, V, D)


def invariant_factors(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> List[int]:
    """Nonzero Smith diagonal entries (1's included)."""
    return [d for d in smith(A, ncols).diagonal if d]


def lattice_kernel(A: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis (as columns of the returned n x k matrix) of {x in Z^n : A x = 0}."""
    if not A:
        return identity(ncols)
    S = smith(A)
    r = S.rank
    return [[S.V[i][j] for j in range(r, ncols)] for i in range(ncols)]


def column_basis(G: Sequence[Sequence[int]], nrows: int) -> Matrix:
    """Z-basis (columns, nrows x k) of the lattice spanned by the columns of G."""
    if not G or not G[0]:
        return [[] for _ in range(nrows)]
    S = smith(G)
    Uinv = integer_inverse(S.U)
    cols = []
    for i, d in enumerate(S.diagonal):
        if d:
            cols.append([Uinv[r][i] * d for r in range(nrows)])
    return transpose(cols) if cols else [[] for _ in range(nrows)]


def solve_mod_one(M: Sequence[Sequence[int]], b: Sequence, ncols: Optional[int] = None
                  ) -> Optional[List[Fraction]]:
    """Find rational z with ``M z == b (mod Z)`` componentwise, or None."""
    n = len(M[0]) if M else (ncols or 0)
    if not M:
        return [Fraction(0)] * n
    S = smith(M)
    Ub = [sum(Fraction(u) * Fraction(x) for u, x in zip(row, b)) for row in S.U]
    diag = S.diagonal
    y = [Fraction(0)] * n
    for i, val in enumerate(Ub):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if val.denominator != 1:
                return None
        else:
            y[i] = val / d
    return [sum(Fraction(S.V[i][j]) * y[j] for j in range(n)) for i in range(n)]


def solve_integer(K: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[List[int]]:
    """Integer c with ``K c == v`` (exact), or None."""
    k = len(K[0]) if K and K[0] else 0
    if k == 0:
        return [] if all(x == 0 for x in v) else None
    S = smith(K)
    Uv = matvec(S.U, v)
    diag = S.diagonal
    y = [0] * k
    for i, val in enumerate(Uv):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if val:
                return None
        else:
            if val % d:
                return None
            y[i] = val // d
    return matvec(S.V, y)


@dataclass
class Subquotient:
    """ker(A) / (im(B) + diag(d)Z^m) inside the module Z^m / diag(d)Z^m.

    ``A`` maps into Z^m' / diag(d_tgt).  ``invariants`` lists the orders of
    the cyclic summands (0 for a free summand) and ``reps`` gives one
    representative vector in Z^m for each summand.
    """

    invariants: List[int]
    reps: List[List[int]]
    _kbasis: Matrix = field(repr=False)
    _U: Matrix = field(repr=False)
    _nontrivial: List[int] = field(repr=False)
    _all_d: List[int] = field(repr=False)

    def coords(self, x: Sequence[int]) -> tuple:
        """Coordinates of a kernel element in the summand decomposition."""
        c = solve_integer(self._kbasis, list(x))
        if c is None:
            raise ValueError("vector is not in the kernel lattice")
        uc = matvec(self._U, c)
        out = []
        for idx in self._nontrivial:
            d = self._all_d[idx]
            out.append(uc[idx] % d if d else uc[idx])
        return tuple(out)

    def is_zero(self, x: Sequence[int]) -> bool:
        return all(v == 0 for v in self.coords(x))

    @property
    def order(self) -> Optional[int]:
        if any(d == 0 for d in self.invariants):
            return None
        out = 1
        for d in self.invariants:
            out *= d
        return out


def subquotient(m: int, d_src: Sequence[int], A: Sequence[Sequence[int]],
                d_tgt: Sequence[int], B_cols: Sequence[Sequence[int]]) -> Subquotient:
    """Homology ker A / im B on the module Z^m / diag(d_src).

    ``A`` is a list of rows (m' x m); ``B_cols`` is a list of generator
    vectors (each of length m) spanning the image.
    """
    d_src = list(d_src)
    d_tgt = list(d_tgt)
    # kernel of x -> A x modulo diag(d_tgt)
    if A:
        extra = [i for i, d in enumerate(d_tgt) if d]
        big = [list(row) + [(-d_tgt[i] if i == k else 0) for k in extra]
               for i, row in enumerate(A)]
        K = lattice_kernel(big, m + len(extra))
        gens = [[K[i][j] for i in range(m)] for j in range(len(K[0]) if K and K[0] else 0)]
    else:
        gens = [[int(i == j) for i in range(m)] for j in range(m)]
    for i, d in enumerate(d_src):
        if d:
            gens.append([d if k == i else 0 for k in range(m)])
    Kb = column_basis(transpose(gens), m) if gens else [[] for _ in range(m)]
    r = len(Kb[0]) if Kb and Kb[0] else 0
    img = [list(c) for c in B_cols]
    for i, d in enumerate(d_src):
        if d:
            img.append([d if k == i else 0 for k in range(m)])
    coords = []
    for col in img:
        c = solve_integer(Kb, col)
        if c is None:
            raise ValueError("image is not contained in the kernel (d^2 != 0?)")
        coords.append(c)
    if r == 0:
        return Subquotient([], [], Kb, [], [], [])
    C = transpose(coords) if coords else zeros(r, 0)
    if coords:
        S = smith(C)
        U = S.U
        diag = S.diagonal + [0] * (r - len(S.diagonal))
    else:
        U = identity(r)
        diag = [0] * r
    Uinv = integer_inverse(U)
    nontrivial = [i for i, d in enumerate(diag) if d != 1]
    reps = []
    for i in nontrivial:
        col = [Uinv[k][i] for k in range(r)]
        reps.append(matvec(Kb, col))
    return Subquotient([diag[i] for i in nontrivial], reps, Kb, U, nontrivial, diag)
