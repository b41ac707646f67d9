"""Weyl group elements as integer matrices on X, never enumerating W."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

from .intlin import identity, matmul, matvec
from .root_datum import BasedRootDatum

Matrix = Tuple[Tuple[int, ...], ...]


def _freeze(M) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in M)


def reflection_matrix(brd: BasedRootDatum, i: int) -> Matrix:
    """Matrix of s_i on X (acting on column vectors)."""
    a, av = brd.simple_roots[i], brd.simple_coroots[i]
    n = brd.rank
    return _freeze([[int(r == c) - a[r] * av[c] for c in range(n)] for r in range(n)])


@dataclass(frozen=True)
class WeylElement:
    brd: BasedRootDatum
    matrix: Matrix
    word: Optional[Tuple[int, ...]] = None

    @classmethod
    def identity(cls, brd: BasedRootDatum) -> "WeylElement":
        return cls(brd, _freeze(identity(brd.rank)), ())

    @classmethod
    def from_word(cls, brd: BasedRootDatum, word: Iterable[int]) -> "WeylElement":
        word = tuple(word)
        M = identity(brd.rank)
        for i in word:
            M = matmul(M, reflection_matrix(brd, i))
        return cls(brd, _freeze(M), word)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElement(self.brd, _freeze(matmul(self.matrix, other.matrix)), word)

    def act(self, x: Sequence[int]) -> Tuple[int, ...]:
        return tuple(matvec(self.matrix, x))

    def act_root(self, idx: int) -> int:
        return self.brd.root_index[self.act(self.brd.roots[idx])]

    def root_permutation(self) -> Tuple[int, ...]:
        return tuple(self.act_root(k) for k in range(len(self.brd.roots)))

    def length(self) -> int:
        brd = self.brd
        return sum(1 for k in range(brd.npos) if not brd.is_positive(self.act_root(k)))

    def reduced_word(self) -> Tuple[int, ...]:
        """Deterministic reduced word: peel the smallest right descent."""
        brd = self.brd
        M = [list(r) for r in self.matrix]
        word: List[int] = []
        while True:
            w = WeylElement(brd, _freeze(M))
            i = next((i for i in brd.simples if not brd.is_positive(w.act_root(i))), None)
            if i is None:
                break
            word.append(i)
            M = matmul(M, reflection_matrix(brd, i))
        return tuple(reversed(word))

    def coweight_action(self, t: Sequence) -> tuple:
        """Action on X^vee (inverse transpose); W matrices are unimodular."""
        from .intlin import integer_inverse, transpose
        Minv = integer_inverse([list(r) for r in self.matrix])
        return tuple(matvec(transpose(Minv), t))

    def to_json(self) -> List[int]:
        return list(self.word if self.word is not None else self.reduced_word())


def longest_element(brd: BasedRootDatum, subset: Optional[Iterable[int]] = None) -> WeylElement:
    """Greedy: right-multiply by the smallest s_i in S with w(alpha_i) > 0."""
    return _longest(brd, tuple(sorted(brd.simples if subset is None else set(subset))))


@lru_cache(maxsize=4096)
def _longest(brd: BasedRootDatum, S: Tuple[int, ...]) -> WeylElement:
    if any(i not in brd.simples for i in S):
        raise ValueError(f"subset {S} is not contained in Delta")
    M = identity(brd.rank)
    word: List[int] = []
    while True:
        chosen = None
        for i in S:
            img = tuple(matvec(M, brd.simple_roots[i]))
            if brd.is_positive(brd.root_index[img]):
                chosen = i
                break
        if chosen is None:
            break
        word.append(chosen)
        M = matmul(M, reflection_matrix(brd, chosen))
    return WeylElement(brd, _freeze(M), tuple(word))


def minus_one_in_W(brd: BasedRootDatum) -> bool:
    w0 = longest_element(brd)
    return all(w0.act(a) == tuple(-x for x in a) for a in brd.simple_roots)


def minus_w0_diagram(brd: BasedRootDatum, subset: Optional[Iterable[int]] = None) -> Tuple[int, ...]:
    """Permutation pi of Delta (identity outside S) with -w_S(alpha_i) = alpha_pi(i)."""
    S = brd.simples if subset is None else tuple(sorted(set(subset)))
    w = longest_element(brd, S)
    perm = list(brd.simples)
    for i in S:
        img = tuple(-x for x in w.act(brd.simple_roots[i]))
        j = brd.root_index.get(img)
        if j is None or j >= brd.nsimple:
            raise AssertionError("-w0 does not map a simple root to a simple root")
        perm[i] = j
    if any(perm[perm[i]] != i for i in brd.simples):
        raise AssertionError("-w0 diagram map is not an involution")
    return tuple(perm)


def preserves_cartan(brd: BasedRootDatum, perm: Sequence[int]) -> bool:
    C = brd.cartan
    return all(C[perm[i]][perm[j]] == C[i][j] for i in brd.simples for j in brd.simples)
