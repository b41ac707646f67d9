"""Small finite groups (cyclic groups and S3) with explicit multiplication tables."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Dict, List, Sequence, Tuple, TypeVar

T = TypeVar("T")


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    table: Tuple[Tuple[int, ...], ...]  # table[g][h] = index of g*h
    generators: Tuple[int, ...]
    identity: int = 0

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inverse(self, g: int) -> int:
        return next(h for h in self.elements if self.table[g][h] == self.identity)

    def is_cyclic_generated(self) -> bool:
        return self.name.startswith("C")

    def words(self) -> Dict[int, Tuple[int, ...]]:
        """Shortest word (in generator positions) for every element."""
        out = {self.identity: ()}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for k, s in enumerate(self.generators):
                    h = self.mul(g, s)
                    if h not in out:
                        out[h] = out[g] + (k,)
                        nxt.append(h)
            frontier = nxt
        if len(out) != self.order:
            raise ValueError(f"{self.name}: generators do not generate")
        return out

    def extend(self, gen_images: Sequence[T], compose: Callable[[T, T], T], unit: T,
               equal: Callable[[T, T], bool] = lambda a, b: a == b) -> List[T]:
        """Extend generator images to a homomorphism; raises if relations fail."""
        if len(gen_images) != len(self.generators):
            raise ValueError("wrong number of generator images")
        img: List[T] = [unit] * self.order
        for g, w in self.words().items():
            x = unit
            for k in w:
                x = compose(x, gen_images[k])
            img[g] = x
        for g in self.elements:
            for h in self.elements:
                if not equal(compose(img[g], img[h]), img[self.mul(g, h)]):
                    raise ValueError(f"{self.name}: generator images violate the group relations")
        return img

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order}


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FiniteGroup(f"C{n}", table, (1,) if n > 1 else ())


def trivial() -> FiniteGroup:
    return cyclic(1)


def s3() -> FiniteGroup:
    """S3 on {0,1,2}; generators: the 3-cycle (0 1 2) and the transposition (0 1)."""
    elems = sorted(permutations(range(3)))
    ident = elems.index((0, 1, 2))
    elems.insert(0, elems.pop(ident))
    idx = {p: i for i, p in enumerate(elems)}
    table = tuple(tuple(idx[tuple(p[q[k]] for k in range(3))] for q in elems) for p in elems)
    return FiniteGroup("S3", table, (idx[(1, 2, 0)], idx[(1, 0, 2)]))
