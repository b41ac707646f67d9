"""Quasi-split forms: a finite group acting on a based root datum through
pinned diagram automorphisms, together with a field descriptor."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import intlin
from .chevalley import AlgebraError, diagram_lattice_map
from .cohomology import GModule, TorsionGroup
from .groups import FiniteGroup, cyclic, s3, trivial
from .root_datum import BasedRootDatum, RootDatumError, build, gl, so_even, so_odd, sp
from .weyl import minus_w0_diagram, preserves_cartan


class FormError(ValueError):
    pass


# ------------------------------------------------------------------ fields

@dataclass(frozen=True)
class Real:
    @property
    def tag(self) -> str:
        return "R"


@dataclass(frozen=True)
class PAdic:
    p: int

    def __post_init__(self):
        if self.p < 2 or any(self.p % q == 0 for q in range(2, int(self.p ** 0.5) + 1)):
            raise FormError(f"{self.p} is not prime")

    @property
    def tag(self) -> str:
        return f"Qp{self.p}"


@dataclass(frozen=True)
class AbstractCyclic:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise FormError("cyclic order must be positive")

    @property
    def tag(self) -> str:
        return f"C{self.n}"


Field = Union[Real, PAdic, AbstractCyclic]


def parse_field(tag: str) -> Field:
    if tag == "R":
        return Real()
    m = re.fullmatch(r"Qp(\d+)", tag)
    if m:
        return PAdic(int(m.group(1)))
    m = re.fullmatch(r"C(\d+)", tag)
    if m:
        return AbstractCyclic(int(m.group(1)))
    raise FormError(f"unknown field {tag!r}")


# ------------------------------------------------------------------- forms

Matrix = Tuple[Tuple[int, ...], ...]


def _freeze(M) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in M)


@dataclass(frozen=True, eq=False)
class QuasiSplitForm:
    brd: BasedRootDatum
    gamma: FiniteGroup
    gen_perms: Tuple[Tuple[int, ...], ...]
    field: Field
    gen_matrices: Tuple[Matrix, ...]
    label: str = ""
    perms: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False)
    x_mats: Tuple[Matrix, ...] = field(init=False, repr=False)

    def __post_init__(self):
        brd, G = self.brd, self.gamma
        for p in self.gen_perms:
            if sorted(p) != list(brd.simples) or not preserves_cartan(brd, p):
                raise FormError(f"{p} is not an automorphism of the Cartan matrix")
        perms = G.extend(list(self.gen_perms), lambda a, b: tuple(a[b[i]] for i in range(len(b))),
                         tuple(brd.simples))
        mats = G.extend([tuple(map(tuple, M)) for M in self.gen_matrices],
                        lambda A, B: _freeze(intlin.matmul(A, B)), _freeze(intlin.identity(brd.rank)))
        for g in G.elements:
            A, p = mats[g], perms[g]
            for i in brd.simples:
                if tuple(intlin.matvec(A, brd.simple_roots[i])) != brd.simple_roots[p[i]]:
                    raise FormError("lattice action does not permute the simple roots")
                img = intlin.vecmat(brd.simple_coroots[p[i]], A)
                if tuple(img) != tuple(brd.simple_coroots[i]):
                    raise FormError("lattice action does not permute the simple coroots")
        if isinstance(self.field, Real) and G.order > 2:
            raise FormError("over R the Galois group has order at most 2")
        if isinstance(self.field, AbstractCyclic):
            if not G.name.startswith("C") or self.field.n % G.order:
                raise FormError(f"{G.name} is not a quotient of C{self.field.n}")
        object.__setattr__(self, "perms", tuple(perms))
        object.__setattr__(self, "x_mats", tuple(mats))

    # --------------------------------------------------------------- views
    @property
    def is_split(self) -> bool:
        return all(M == _freeze(intlin.identity(self.brd.rank)) for M in self.gen_matrices)

    @property
    def id(self) -> str:
        return self.label or f"{'/'.join(self.brd.type_label) or 'torus'}@{self.field.tag}"

    @cached_property
    def cochar_mats(self) -> Tuple[Matrix, ...]:
        """Action on X^vee: inverse transpose of the action on X."""
        return tuple(_freeze(intlin.transpose(intlin.integer_inverse(M))) for M in self.x_mats)

    def gen_x(self) -> List[Matrix]:
        return [self.x_mats[g] for g in self.gamma.generators]

    def gen_cochar(self) -> List[Matrix]:
        return [self.cochar_mats[g] for g in self.gamma.generators]

    @cached_property
    def sigma(self) -> Optional[int]:
        """The nontrivial element when Gamma has order 2."""
        return self.gamma.generators[0] if self.gamma.order == 2 else None

    def real_structure(self) -> Matrix:
        """Matrix of complex conjugation on torsion points X^vee (x) Q/Z."""
        if not isinstance(self.field, Real):
            raise FormError("real structure requested for a non-real form")
        th = self.cochar_mats[self.sigma] if self.sigma is not None else \
            _freeze(intlin.identity(self.brd.rank))
        return _freeze([[-x for x in r] for r in th])

    def adjoint_real_structure(self) -> List[List[int]]:
        """Conjugation on adjoint torsion points: a_i -> -a_{pi^-1(i)}."""
        r = self.brd.nsimple
        p = self.perms[self.sigma] if self.sigma is not None else tuple(range(r))
        M = intlin.zeros(r, r)
        for j in range(r):
            M[p[j]][j] = -1
        return M

    def adjoint_perm_matrix(self, g: int) -> List[List[int]]:
        """Action on adjoint cocharacter coordinates (values on simple roots)."""
        r = self.brd.nsimple
        M = intlin.zeros(r, r)
        for j in range(r):
            M[self.perms[g][j]][j] = 1
        return M

    # ---------------------------------------------------------- modules
    def cochar_module(self) -> GModule:
        return GModule.lattice(self.gamma, self.gen_cochar())

    def char_module(self) -> GModule:
        return GModule.lattice(self.gamma, self.gen_x())

    def center_module(self) -> GModule:
        """X/Z Delta (the character group of the center) with its Gamma-action."""
        return quotient_module(self.gamma, [list(a) for a in self.brd.simple_roots],
                               self.brd.rank, self.gen_x())

    def center_points(self) -> TorsionGroup:
        """Z(G)(C) as torsion points of T (semisimple groups only)."""
        if self.brd.nsimple != self.brd.rank:
            raise FormError("center has a torus part")
        return TorsionGroup.kernel_of([list(a) for a in self.brd.simple_roots], self.brd.rank)

    def dual(self) -> "QuasiSplitForm":
        d = self.brd.dual()
        return QuasiSplitForm(d, self.gamma, self.gen_perms, self.field,
                              tuple(self.cochar_mats[g] for g in self.gamma.generators),
                              f"dual({self.id})")

    def to_json(self) -> dict:
        return {"id": self.id, "type": list(self.brd.type_label), "field": self.field.tag,
                "gamma": self.gamma.name, "generator_perms": [list(p) for p in self.gen_perms]}


def quotient_module(G: FiniteGroup, sub_gens: Sequence[Sequence[int]], n: int,
                    gen_mats: Sequence[Sequence[Sequence[int]]]) -> GModule:
    """Z^n / span(sub_gens) with the induced action, in Smith coordinates."""
    if sub_gens:
        S = intlin.smith(intlin.transpose([list(v) for v in sub_gens]))
        U = S.U
        diag = S.diagonal + [0] * (n - len(S.diagonal))
    else:
        U = intlin.identity(n)
        diag = [0] * n
    Uinv = intlin.integer_inverse(U)
    keep = [k for k in range(n) if diag[k] != 1]
    mats = []
    for A in gen_mats:
        B = intlin.matmul(intlin.matmul(U, A), Uinv)
        mats.append([[B[i][j] for j in keep] for i in keep])
    return GModule(G, tuple(diag[k] for k in keep), tuple(mats))


def make_form(brd: BasedRootDatum, gamma: FiniteGroup, gen_perms: Sequence[Sequence[int]],
              field: Field, gen_matrices=None, center_sign: int = 1, label: str = "") -> QuasiSplitForm:
    """Validate and assemble a quasi-split form.

    When ``gen_matrices`` is omitted each generator acts on X by the lattice
    lift of its diagram permutation, acting by ``center_sign`` on the
    characters killed by all coroots.
    """
    gen_perms = tuple(tuple(p) for p in gen_perms)
    if gen_matrices is None:
        try:
            gen_matrices = [diagram_lattice_map(brd, p, center_sign) for p in gen_perms]
        except AlgebraError as exc:
            raise FormError(str(exc)) from None
    return QuasiSplitForm(brd, gamma, gen_perms, field, tuple(_freeze(M) for M in gen_matrices),
                          label)


def split_form(brd: BasedRootDatum, field: Field, label: str = "") -> QuasiSplitForm:
    return make_form(brd, trivial(), [], field, label=label)


def simple_root_orbits(form: QuasiSplitForm) -> List[Tuple[int, ...]]:
    seen = set()
    out = []
    for i in form.brd.simples:
        if i in seen:
            continue
        orb = sorted({form.perms[g][i] for g in form.gamma.elements})
        seen.update(orb)
        out.append(tuple(orb))
    return out


# ------------------------------------------------------------------ twists

def twist_data(letter: str, n: int, k: int) -> Tuple[FiniteGroup, List[Tuple[int, ...]]]:
    """Gamma and generator permutations for the twist ``k`` of a simple type."""
    ident = list(range(n))
    if k == 1:
        return trivial(), []
    if k == 2 and letter == "A" and n >= 2:
        return cyclic(2), [tuple(n - 1 - i for i in range(n))]
    if k == 2 and letter == "D" and n >= 3:
        p = ident[:]
        p[n - 2], p[n - 1] = n - 1, n - 2
        return cyclic(2), [tuple(p)]
    if k == 2 and letter == "E" and n == 6:
        return cyclic(2), [(5, 1, 4, 3, 2, 0)]
    if k == 3 and letter == "D" and n == 4:
        return cyclic(3), [(2, 1, 3, 0)]
    if k == 6 and letter == "D" and n == 4:
        return s3(), [(2, 1, 3, 0), (0, 1, 3, 2)]
    raise FormError(f"no twist of order {k} for {letter}{n}")


# ----------------------------------------------------------------- parsing

class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position
        self.text = text


_CLASSICAL = re.compile(r"(GL|SL|PGL|SU|PU|U|Sp|PSp|SO)(\d+)")


def _classical(name: str, n: int, fld: Field, spec: str) -> QuasiSplitForm:
    lab = f"{name}{n}@{fld.tag}"
    if name == "GL" and n >= 1:
        return split_form(gl(n), fld, lab)
    if name in ("SL", "PGL") and n >= 2:
        return split_form(build(f"A{n - 1}", "sc" if name == "SL" else "ad"), fld, lab)
    if name == "U" and n >= 2:
        return make_form(gl(n), cyclic(2), [tuple(range(n - 2, -1, -1))], fld,
                         center_sign=-1, label=lab)
    if name in ("SU", "PU") and n >= 3:
        return make_form(build(f"A{n - 1}", "sc" if name == "SU" else "ad"), cyclic(2),
                         [tuple(range(n - 2, -1, -1))], fld, label=lab)
    if name in ("Sp", "PSp") and n % 2 == 0 and n >= 2:
        b = sp(n // 2) if name == "Sp" else build("A1" if n == 2 else f"C{n // 2}", "ad")
        return split_form(b, fld, lab)
    if name == "SO" and n >= 3:
        return split_form(so_odd(n // 2) if n % 2 else so_even(n // 2), fld, lab)
    raise ParseError(f"unsupported classical group {name}{n}", 0, spec)


def parse_spec(spec: str) -> QuasiSplitForm:
    """Parse ``<k><Type><rank>[-sc|-ad|-iso=<rows>]@<field>`` or a classical
    alias such as ``Sp6@R`` or ``U4@Qp3``.  ``-iso`` rows are comma separated
    integers, rows separated by ``;``, in fundamental-weight coordinates."""
    s = spec.strip()
    at = s.find("@")
    if at < 0:
        raise ParseError("missing '@<field>'", len(s), spec)
    body, ftag = s[:at], s[at + 1:]
    try:
        fld = parse_field(ftag)
    except FormError as exc:
        raise ParseError(str(exc), at + 1, spec) from None
    m = _CLASSICAL.fullmatch(body)
    if m:
        try:
            return _classical(m.group(1), int(m.group(2)), fld, spec)
        except (FormError, RootDatumError) as exc:
            raise ParseError(str(exc), 0, spec) from None
    pos = 0
    k = 1
    if pos < len(body) and body[pos] in "236":
        k = int(body[pos])
        pos += 1
    m = re.compile(r"[A-GT]\d+(?:x[A-GT]\d+)*").match(body, pos)
    if not m:
        raise ParseError("expected a Cartan type such as 'A3' or 'E6'", pos, spec)
    type_spec = m.group(0)
    pos = m.end()
    iso: Union[str, List[List[int]]] = "sc"
    if pos < len(body):
        rest = body[pos:]
        if rest in ("-sc", "-ad"):
            iso = rest[1:]
        elif rest.startswith("-iso="):
            try:
                iso = [[int(x) for x in row.split(",")] for row in rest[5:].split(";")]
            except ValueError:
                raise ParseError("malformed isogeny matrix", pos + 5, spec) from None
        else:
            raise ParseError("expected '-sc', '-ad' or '-iso=...'", pos, spec)
    try:
        brd = build(type_spec, iso)
    except RootDatumError as exc:
        raise ParseError(str(exc), 0, spec) from None
    label = f"{k if k > 1 else ''}{type_spec}-{iso if isinstance(iso, str) else 'iso'}@{fld.tag}"
    if k == 1:
        try:
            return split_form(brd, fld, label)
        except FormError as exc:
            raise ParseError(str(exc), at + 1, spec) from None
    if "x" in type_spec:
        raise ParseError("twists are only supported for simple types", 0, spec)
    letter, n = type_spec[0], int(type_spec[1:])
    try:
        G, perms = twist_data(letter, n, k)
        return make_form(brd, G, perms, fld, label=label)
    except FormError as exc:
        raise ParseError(str(exc), 0, spec) from None


def commutes_with_minus_w0(form: QuasiSplitForm) -> bool:
    pi = minus_w0_diagram(form.brd)
    return all(tuple(p[pi[i]] for i in form.brd.simples) == tuple(pi[p[i]] for i in form.brd.simples)
               for p in form.perms)
