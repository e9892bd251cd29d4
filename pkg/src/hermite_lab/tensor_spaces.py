"""Standard bases of the four plethysm/wedge spaces and the GL2 action on them.

Spaces, for a descriptor ``(shape, m, ell, field)`` and ``N = ell + m - 1``:

* ``DividedOfSym``    Sym_m Sym^ell F^2,   index: m slots, values in [0, ell]
* ``SymOfDivided``    Sym^m Sym_ell F^2,   index: m slots, values in [0, ell]
* ``WedgeOfSym``      /\\^m Sym^N F^2,      index: m distinct slots in [0, N]
* ``WedgeOfDivided``  /\\^ell Sym_N F^2,    index: ell distinct slots in [0, N]

A slot value ``j`` stands for ``x^j y^(n-j)`` in a symmetric power and for
``F(j) = [x^{(x)j} (x) y^{(x)(n-j)}]_sym`` in a divided power.

GL2 convention: ``g = [[a, b], [c, d]]`` sends ``x -> a x + c y`` and
``y -> b x + d y``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import permutations, product
from math import comb
from typing import Iterable, Sequence

from .errors import RangeViolation, ShapeMismatch, SingularMatrix
from .field import FieldElement, FieldSpec
from .partitions import box_basis


class Shape(enum.Enum):
    DIVIDED_OF_SYM = "DividedOfSym"
    SYM_OF_DIVIDED = "SymOfDivided"
    WEDGE_OF_SYM = "WedgeOfSym"
    WEDGE_OF_DIVIDED = "WedgeOfDivided"


@dataclass(frozen=True)
class SpaceDescriptor:
    shape: Shape
    m: int
    ell: int
    field: FieldSpec

    @property
    def slots(self) -> int:
        return self.ell if self.shape is Shape.WEDGE_OF_DIVIDED else self.m

    @property
    def top(self) -> int:
        """Largest slot value, i.e. the degree of the inner (divided) power."""
        if self.shape in (Shape.WEDGE_OF_SYM, Shape.WEDGE_OF_DIVIDED):
            return self.ell + self.m - 1
        return self.ell

    @property
    def is_wedge(self) -> bool:
        return self.shape in (Shape.WEDGE_OF_SYM, Shape.WEDGE_OF_DIVIDED)

    @property
    def inner_is_divided(self) -> bool:
        return self.shape in (Shape.SYM_OF_DIVIDED, Shape.WEDGE_OF_DIVIDED)

    @property
    def dimension(self) -> int:
        return comb(self.m + self.ell, self.ell)

    def dual(self) -> "SpaceDescriptor":
        """Descriptor of the space identified with the dual via the delta pairing."""
        if self.shape is Shape.SYM_OF_DIVIDED:
            return SpaceDescriptor(Shape.DIVIDED_OF_SYM, self.m, self.ell, self.field)
        if self.shape is Shape.DIVIDED_OF_SYM:
            return SpaceDescriptor(Shape.SYM_OF_DIVIDED, self.m, self.ell, self.field)
        if self.shape is Shape.WEDGE_OF_SYM:
            return SpaceDescriptor(Shape.WEDGE_OF_DIVIDED, self.ell, self.m, self.field)
        return SpaceDescriptor(Shape.WEDGE_OF_SYM, self.ell, self.m, self.field)

    def to_json(self) -> dict:
        return {"shape": self.shape.value, "m": self.m, "ell": self.ell, "field": str(self.field)}

    @classmethod
    def from_json(cls, obj: dict) -> "SpaceDescriptor":
        return cls(Shape(obj["shape"]), int(obj["m"]), int(obj["ell"]), FieldSpec.parse(obj["field"]))


def standard_basis(d: SpaceDescriptor) -> tuple:
    """Basis indices, graded by weight and ordered by the dominance linear extension."""
    return box_basis(d.slots, d.top, d.is_wedge)


@dataclass(frozen=True)
class BasisIndex:
    descriptor: SpaceDescriptor
    parts: tuple


# -- sparse vectors ---------------------------------------------------------------

@dataclass
class SparseVector:
    descriptor: SpaceDescriptor
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {tuple(k): v for k, v in self.terms.items() if v != 0}

    @classmethod
    def basis(cls, d: SpaceDescriptor, index: Sequence[int]) -> "SparseVector":
        return cls(d, {tuple(index): 1})

    @property
    def field(self) -> FieldSpec:
        return self.descriptor.field

    def coeff(self, index: Sequence[int]) -> FieldElement:
        return self.field.element(self.terms.get(tuple(index), 0))

    def support(self) -> list:
        return list(self.terms)

    def _check(self, other: "SparseVector"):
        if other.descriptor != self.descriptor:
            raise ShapeMismatch(f"{self.descriptor} vs {other.descriptor}")

    def __add__(self, other: "SparseVector") -> "SparseVector":
        self._check(other)
        out = dict(self.terms)
        red = self.field.reduce
        for k, v in other.terms.items():
            out[k] = red(out.get(k, 0) + v)
        return SparseVector(self.descriptor, out)

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        return self + other.scale(-1)

    def scale(self, c) -> "SparseVector":
        if isinstance(c, FieldElement):
            c = c.raw
        red = self.field.reduce
        return SparseVector(self.descriptor, {k: red(v * c) for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self.descriptor == other.descriptor and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def dense(self) -> list:
        return [self.terms.get(idx, 0) for idx in standard_basis(self.descriptor)]

    def to_json(self) -> dict:
        fmt = self.field.format
        order = {idx: i for i, idx in enumerate(standard_basis(self.descriptor))}
        keys = sorted(self.terms, key=lambda k: order.get(k, len(order)))
        return {
            "space": self.descriptor.to_json(),
            "terms": [{"index": list(k), "coeff": fmt(self.terms[k])} for k in keys],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SparseVector":
        d = SpaceDescriptor.from_json(obj["space"])
        terms = {}
        for t in obj["terms"]:
            key = tuple(int(x) for x in t["index"])
            terms[key] = d.field.reduce(terms.get(key, 0) + d.field.parse_value(str(t["coeff"])))
        return cls(d, terms)


def sym_product(v: SparseVector, w: SparseVector) -> SparseVector:
    """Product in the polynomial algebra Sym^* Sym_ell F^2 (SymOfDivided only)."""
    if v.descriptor.shape is not Shape.SYM_OF_DIVIDED or w.descriptor.shape is not Shape.SYM_OF_DIVIDED:
        raise ShapeMismatch("sym_product needs SymOfDivided operands")
    if v.descriptor.ell != w.descriptor.ell or v.field != w.field:
        raise ShapeMismatch("inner degree or field differs")
    d = SpaceDescriptor(Shape.SYM_OF_DIVIDED, v.descriptor.m + w.descriptor.m, v.descriptor.ell, v.field)
    red = v.field.reduce
    out: dict = {}
    for a, ca in v.terms.items():
        for b, cb in w.terms.items():
            key = tuple(sorted(a + b, reverse=True))
            out[key] = red(out.get(key, 0) + ca * cb)
    return SparseVector(d, out)


# -- wedge bookkeeping --------------------------------------------------------------

def sort_with_sign(slots: Sequence[int]):
    """Sort decreasingly; return ``(sign, sorted)`` or ``None`` on a repeated value."""
    slots = list(slots)
    if len(set(slots)) != len(slots):
        return None
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(slots)):
        j = i
        while j > 0 and slots[j - 1] < slots[j]:
            slots[j - 1], slots[j] = slots[j], slots[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(slots)


def wedge_normalize(raw_slots: Sequence[int], d: SpaceDescriptor):
    """Bring a wedge word into the standard basis: ``(sign, BasisIndex)`` or ``None`` for zero."""
    top = d.top
    if any(v < 0 or v > top for v in raw_slots):
        raise RangeViolation(f"{tuple(raw_slots)} leaves [0, {top}]")
    res = sort_with_sign(raw_slots)
    if res is None:
        return None
    sign, idx = res
    return d.field.from_integer(sign), BasisIndex(d, idx)


# -- GL2 on one slot ------------------------------------------------------------------

def _check_gl2(g, f: FieldSpec):
    (a, b), (c, dd) = g
    if f.reduce(a * dd - b * c) == 0:
        raise SingularMatrix(f"{g} is singular over {f}")


def sym_power_matrix(g, n: int, f: FieldSpec) -> list:
    """``S[j][i]`` = coefficient of ``x^j y^(n-j)`` in ``g . x^i y^(n-i)``."""
    (a, b), (c, d) = g
    S = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        for u in range(i + 1):
            cu = comb(i, u) * a**u * c ** (i - u)
            for v in range(n - i + 1):
                S[u + v][i] += cu * comb(n - i, v) * b**v * d ** (n - i - v)
    return [[f.reduce(x) for x in row] for row in S]


def divided_power_matrix(g, n: int, f: FieldSpec) -> list:
    """``C[j][k]`` = coefficient of ``F(j)`` in ``g . F(k)`` inside Sym_n F^2.

    Read off as the coefficient of the ordered word ``x^{(x)j} (x) y^{(x)(n-j)}``:
    a word with ``i`` x-letters among the first ``j`` positions contributes
    ``a^i b^(j-i) c^(k-i) d^(n-j-k+i)``.
    """
    (a, b), (c, d) = g
    C = [[0] * (n + 1) for _ in range(n + 1)]
    for k in range(n + 1):
        for j in range(n + 1):
            s = 0
            for i in range(max(0, k - (n - j)), min(j, k) + 1):
                s += comb(j, i) * comb(n - j, k - i) * a**i * b ** (j - i) * c ** (k - i) * d ** (n - j - k + i)
            C[j][k] = s
    return [[f.reduce(x) for x in row] for row in C]


def gl2_on_divided_generator(g, k: int, ell: int, f: FieldSpec) -> list:
    """Coefficients ``c_{k,j}``, ``j = 0..ell``, of ``g . F(k)`` in the ``F(j)`` basis."""
    _check_gl2(g, f)
    C = divided_power_matrix(g, ell, f)
    return [f.element(C[j][k]) for j in range(ell + 1)]


# -- GL2 on whole spaces -------------------------------------------------------------------

def _distinct_arrangements(lam: Sequence[int]) -> list:
    return sorted(set(permutations(lam)))


def _expand(columns: list, collect, red) -> dict:
    """Multiply out ``prod_t sum_j columns[t][j] e_j`` and gather tuples via ``collect``."""
    out: dict = {}
    nz = [[(j, cj) for j, cj in enumerate(col) if cj] for col in columns]
    for choice in product(*nz):
        key = collect(tuple(j for j, _ in choice))
        if key is None:
            continue
        sign, idx = key
        c = sign
        for _, cj in choice:
            c *= cj
        out[idx] = red(out.get(idx, 0) + c)
    return out


def _collect_sym(t):
    return 1, tuple(sorted(t, reverse=True))


def _collect_ordered(t):
    if all(x >= y for x, y in zip(t, t[1:])):
        return 1, t
    return None


def gl2_basis_image(g, d: SpaceDescriptor, index: Sequence[int], P: list | None = None) -> dict:
    f = d.field
    if P is None:
        P = divided_power_matrix(g, d.top, f) if d.inner_is_divided else sym_power_matrix(g, d.top, f)
    cols = lambda word: [[P[j][w] for j in range(d.top + 1)] for w in word]
    if d.shape is Shape.SYM_OF_DIVIDED:
        return _expand(cols(index), _collect_sym, f.reduce)
    if d.shape is Shape.DIVIDED_OF_SYM:
        out: dict = {}
        for w in _distinct_arrangements(index):
            for k, v in _expand(cols(w), _collect_ordered, f.reduce).items():
                out[k] = f.reduce(out.get(k, 0) + v)
        return out
    return _expand(cols(index), sort_with_sign, f.reduce)


def gl2_action(g, v: SparseVector) -> SparseVector:
    d = v.descriptor
    f = d.field
    _check_gl2(g, f)
    P = divided_power_matrix(g, d.top, f) if d.inner_is_divided else sym_power_matrix(g, d.top, f)
    out: dict = {}
    for idx, c in v.terms.items():
        for k, w in gl2_basis_image(g, d, idx, P).items():
            out[k] = f.reduce(out.get(k, 0) + c * w)
    return SparseVector(d, out)


def gl2_matrix(g, d: SpaceDescriptor) -> list:
    """Matrix of ``g`` on ``d`` in the standard basis (column j = image of basis j)."""
    basis = standard_basis(d)
    pos = {idx: i for i, idx in enumerate(basis)}
    M = [[0] * len(basis) for _ in basis]
    f = d.field
    _check_gl2(g, f)
    P = divided_power_matrix(g, d.top, f) if d.inner_is_divided else sym_power_matrix(g, d.top, f)
    for j, idx in enumerate(basis):
        for k, w in gl2_basis_image(g, d, idx, P).items():
            M[pos[k]][j] = w
    return M


# -- duality -----------------------------------------------------------------------------

_DUAL_PAIRS = {
    (Shape.SYM_OF_DIVIDED, Shape.DIVIDED_OF_SYM),
    (Shape.WEDGE_OF_SYM, Shape.WEDGE_OF_DIVIDED),
}


def duality_pairing(f_vec: SparseVector, t_vec: SparseVector) -> FieldElement:
    """Bilinear pairing making the two standard bases mutually dual (Gram matrix = identity).

    Pairs Sym^m Sym_ell with Sym_m Sym^ell, and /\\^m Sym^N with /\\^m Sym_N.
    """
    a, b = f_vec.descriptor, t_vec.descriptor
    if (a.shape, b.shape) not in _DUAL_PAIRS or a.dual() != b:
        raise ShapeMismatch(f"{a} is not paired with {b}")
    red = a.field.reduce
    s = 0
    small, big = (f_vec.terms, t_vec.terms) if len(f_vec.terms) <= len(t_vec.terms) else (t_vec.terms, f_vec.terms)
    for k, v in small.items():
        w = big.get(k)
        if w:
            s += v * w
    return a.field.element(red(s))


def transpose2(g) -> list:
    (a, b), (c, d) = g
    return [[a, c], [b, d]]


def iter_gl2(f: FieldSpec) -> Iterable:
    """All of GL2(GF(p)); only for prime fields."""
    p = f.modulus
    if p is None:
        raise ValueError("GL2(Q) is infinite")
    for a, b, c, d in product(range(p), repeat=4):
        if (a * d - b * c) % p:
            yield [[a, b], [c, d]]
