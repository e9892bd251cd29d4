"""Fixed subspaces of polynomial spaces under SL_l(F_p) x SL_l(F_p).

The group acts on one ``l x l`` matrix ``A`` (or on both slices of a pair) by
``A_ij -> sum_ab g1[a][i] g2[b][j] A_ab``.  Fixed vectors are found as the common nullspace of
``rho(gen) - I`` over transvection generators, which is exact and much cheaper
than enumerating the group.
"""
from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field as dc_field
from importlib import resources

import numpy as np

from . import linalg
from ._kernels import rref_mod_p
from .errors import BudgetExceeded, DegreeMismatch, FixtureParse
from .field import FieldSpec
from .isomorphisms import closure_invariant_basis
from .polyring import Polynomial, boxtimes, determinant, matrix_ring, pair_action, var_index

DEFAULT_BUDGET = 2_000_000


class Slices(enum.Enum):
    ONE = "one"
    TWO = "two"

    @classmethod
    def parse(cls, text) -> "Slices":
        if isinstance(text, Slices):
            return text
        return cls(str(text).lower())


def sl_generators(ell: int, p: int) -> list:
    """Elementary transvections ``I + E_ij`` (``i != j``), ordered by ``(i, j)``."""
    if ell < 2:
        raise ValueError("need ell >= 2")
    gens = []
    for i in range(ell):
        for j in range(ell):
            if i != j:
                g = linalg.identity(ell)
                g[i][j] = 1
                gens.append(g)
    return gens


def group_closure(gens: list, p: int) -> list:
    """All products of ``gens`` over GF(p) (BFS); for small groups only."""
    n = len(gens[0])
    start = tuple(tuple(r) for r in linalg.identity(n))
    seen = {start}
    frontier = [start]
    f = FieldSpec.prime(p)
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = tuple(tuple(r) for r in linalg.matmul([list(r) for r in h], g, f))
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return sorted([list(map(list, h)) for h in seen])


# -- monomial bases and action matrices ----------------------------------------------------

def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def monomial_count(nvars: int, d: int) -> int:
    from math import comb

    return comb(nvars + d - 1, d)


def monomial_basis(ell: int, d: int, slices: Slices) -> list:
    """Degree-``d`` exponent tuples over the matrix ring, lex-descending."""
    nx = ell * ell
    active = nx if slices is Slices.ONE else 2 * nx
    return [c + (0,) * (2 * nx - active) for c in _compositions(d, active)]


def _variable_images(g1, g2, ell: int, f: FieldSpec) -> list:
    ring = matrix_ring(f, ell)
    images = []
    for v in range(ring.nvars):
        e = [0] * ring.nvars
        e[v] = 1
        images.append(pair_action(g1, g2, Polynomial(ring, {tuple(e): 1})).terms)
    return images


def action_matrix(g1, g2, basis: list, ell: int, f: FieldSpec) -> list:
    """Matrix of ``p -> (g1, g2).p`` on ``span(basis)``; column ``j`` is the image of ``basis[j]``."""
    red = f.reduce
    images = _variable_images(g1, g2, ell, f)
    memo: dict = {}

    def image(e: tuple) -> dict:
        if e in memo:
            return memo[e]
        if not any(e):
            res = {e: 1}
        else:
            v = next(i for i, k in enumerate(e) if k)
            prev = image(e[:v] + (e[v] - 1,) + e[v + 1:])
            res = {}
            for a, ca in prev.items():
                for b, cb in images[v].items():
                    k = tuple(x + y for x, y in zip(a, b))
                    res[k] = res.get(k, 0) + ca * cb
            res = {k: red(c) for k, c in res.items() if red(c)}
        memo[e] = res
        return res

    pos = {e: i for i, e in enumerate(basis)}
    n = len(basis)
    M = [[0] * n for _ in range(n)]
    for j, e in enumerate(basis):
        for k, c in image(e).items():
            M[pos[k]][j] = c
    return M


def _generator_pairs(ell: int, p: int) -> list:
    ident = linalg.identity(ell)
    gens = sl_generators(ell, p)
    return [(g, ident) for g in gens] + [(ident, g) for g in gens]


def _nullspace_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning ``{x : A x = 0}`` over GF(p), one per free column."""
    ncols = A.shape[1]
    R, piv = rref_mod_p(A, p)
    piv = [int(c) for c in piv]
    free = [c for c in range(ncols) if c not in set(piv)]
    N = np.zeros((len(free), ncols), dtype=np.int64)
    for k, c in enumerate(free):
        N[k, c] = 1
        for r, pc in enumerate(piv):
            N[k, pc] = (-R[r, c]) % p
    return N


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact ``a @ b mod p`` for reduced operands; float64 BLAS while sums stay below 2**53."""
    if a.shape[1] * (p - 1) ** 2 < 2**53:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % p
    return (a.astype(object) @ b.astype(object) % p).astype(np.int64)


def _intersect_fixed(mats: list, n: int, p: int) -> list:
    """Common fixed space of ``mats`` over GF(p) as RREF rows."""
    B = np.eye(n, dtype=np.int64)  # rows span the current candidate space
    for M in mats:
        if B.shape[0] == 0:
            break
        diff = np.array(M, dtype=np.int64)
        diff[np.diag_indices(n)] -= 1
        A = _matmul_mod(diff % p, B.T, p)
        C = _nullspace_mod_p(A, p)
        B = _matmul_mod(C, B, p)
        if B.shape[0]:
            R, piv = rref_mod_p(B, p)
            B = R[: len(piv)]
    return B.tolist()


def _poly_from_vector(vec, basis, ring) -> Polynomial:
    return Polynomial(ring, {e: c for e, c in zip(basis, vec) if c})


def _vector_from_poly(p: Polynomial, basis) -> list:
    return [p.terms.get(e, 0) for e in basis]


@dataclass
class InvariantReport:
    ell: int
    d: int
    field: FieldSpec
    slices: Slices
    dim_fq_invariants: int
    dim_closure_span: int
    fixed_basis: list
    closure_span: list
    extra_basis: list = dc_field(default_factory=list)
    fixed_rows: list = dc_field(default_factory=list, repr=False)  # RREF coordinates in the monomial basis

    @property
    def strict_superset(self) -> bool:
        return self.dim_fq_invariants > self.dim_closure_span

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "degree": self.d,
            "field": str(self.field),
            "slices": self.slices.value,
            "dim_fq_invariants": self.dim_fq_invariants,
            "dim_closure_span": self.dim_closure_span,
            "strict_superset": self.strict_superset,
            "fixed_basis": [str(p) for p in self.fixed_basis],
            "extra_basis": [str(p) for p in self.extra_basis],
        }


def closure_span(ell: int, d: int, f: FieldSpec, slices: Slices) -> list:
    """Products of mixed determinants of degree ``d`` (empty when ``ell`` does not divide ``d``)."""
    if d % ell:
        return []
    m = d // ell
    if slices is Slices.ONE:
        return [determinant(ell, "X", f) ** m]
    return closure_invariant_basis(ell, m, f)


def fixed_subspace(ell: int, d: int, p: int, slices="one", budget: int = DEFAULT_BUDGET) -> InvariantReport:
    slices = Slices.parse(slices)
    f = FieldSpec.prime(p)
    nvars = ell * ell * (1 if slices is Slices.ONE else 2)
    n = monomial_count(nvars, d)
    if n > budget:
        raise BudgetExceeded(f"{n} monomials exceed the budget of {budget}")
    basis = monomial_basis(ell, d, slices)
    ring = matrix_ring(f, ell)
    mats = [action_matrix(g1, g2, basis, ell, f) for g1, g2 in _generator_pairs(ell, p)]
    fixed = _intersect_fixed(mats, len(basis), p)
    span_polys = closure_span(ell, d, f, slices)
    span_rows = [_vector_from_poly(q, basis) for q in span_polys]
    span_dim = linalg.rank(span_rows, f) if span_rows else 0
    extra = []
    acc = list(span_rows)
    r = span_dim
    for row in fixed:
        trial = acc + [row]
        r2 = linalg.rank(trial, f)
        if r2 > r:
            acc, r = trial, r2
            extra.append(row)
    return InvariantReport(
        ell, d, f, slices, len(fixed), span_dim,
        [_poly_from_vector(v, basis, ring) for v in fixed],
        span_polys,
        [_poly_from_vector(v, basis, ring) for v in extra],
        fixed,
    )


def full_group_fixed_subspace(ell: int, d: int, p: int, slices="one") -> list:
    """Fixed space under every pair of the enumerated group; RREF rows."""
    slices = Slices.parse(slices)
    f = FieldSpec.prime(p)
    basis = monomial_basis(ell, d, slices)
    group = group_closure(sl_generators(ell, p), p)
    mats = [action_matrix(g1, g2, basis, ell, f) for g1 in group for g2 in group]
    return _intersect_fixed(mats, len(basis), p)


def is_fixed(q: Polynomial, ell: int) -> bool:
    p = q.field.modulus
    return all(pair_action(g1, g2, q) == q for g1, g2 in _generator_pairs(ell, p))


# -- listed invariants ---------------------------------------------------------------------------

_TERM = re.compile(r"^(\d+)?((?:A_\{\d+,\d+\}(?:\^\d+)?)*)$")
_FACTOR = re.compile(r"A_\{(\d+),(\d+)\}(?:\^(\d+))?")


def parse_matrix_polynomial(text: str, ell: int, f: FieldSpec) -> Polynomial:
    """Parse ``"A_{2,2} A_{1,1}^2+2 A_{1,2}..."`` into the X slice of the matrix ring."""
    ring = matrix_ring(f, ell)
    body = re.sub(r"\s+", "", text)
    if not body:
        raise FixtureParse("empty polynomial")
    terms: dict = {}
    for chunk in re.split(r"(?=[+-])", body):
        if not chunk:
            continue
        sign = -1 if chunk[0] == "-" else 1
        chunk = chunk.lstrip("+-")
        m = _TERM.match(chunk)
        if not m or not chunk:
            raise FixtureParse(f"cannot parse term {chunk!r}")
        coeff = sign * int(m.group(1) or 1)
        e = [0] * ring.nvars
        for i, j, k in _FACTOR.findall(m.group(2)):
            i, j = int(i), int(j)
            if not (1 <= i <= ell and 1 <= j <= ell):
                raise FixtureParse(f"index ({i},{j}) outside a {ell}x{ell} matrix")
            e[var_index(ell, "X", i, j)] += int(k or 1)
        key = tuple(e)
        terms[key] = terms.get(key, 0) + coeff
    return Polynomial(ring, terms)


def load_listed_invariants(data: dict | None = None) -> list:
    if data is None:
        text = resources.files("hermite_lab").joinpath("data/listed_invariants.json").read_text()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FixtureParse(str(exc)) from None
    out = []
    try:
        for ent in data["entries"]:
            f = FieldSpec.parse(ent["field"])
            ell = int(ent["ell"])
            poly = parse_matrix_polynomial(ent["polynomial"], ell, f)
            if not poly.is_homogeneous(int(ent["degree"])):
                raise FixtureParse(f"listed polynomial is not homogeneous of degree {ent['degree']}")
            out.append((f, ell, int(ent["degree"]), poly))
    except (KeyError, TypeError, ValueError) as exc:
        raise FixtureParse(f"malformed fixture: {exc}") from None
    return out


@dataclass
class ListedVerdict:
    field: FieldSpec
    ell: int
    degree: int
    polynomial: Polynomial
    fixed: bool
    in_closure_span: bool

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "ell": self.ell,
            "degree": self.degree,
            "fixed": self.fixed,
            "in_closure_span": self.in_closure_span,
            "polynomial": str(self.polynomial),
        }


def in_span(q: Polynomial, span: list) -> bool:
    if q.is_zero():
        return True
    if not span:
        return False
    from .isomorphisms import polynomial_rank

    return polynomial_rank(span + [q]) == polynomial_rank(span)


def verify_listed_invariants(data: dict | None = None) -> list:
    """Fixedness and closure-span membership for each listed polynomial."""
    out = []
    for f, ell, d, poly in load_listed_invariants(data):
        span = closure_span(ell, d, f, Slices.ONE)
        out.append(ListedVerdict(f, ell, d, poly, is_fixed(poly, ell), in_span(poly, span)))
    return out


def lift_invariant(p_inv: Polynomial, k: int) -> Polynomial:
    """``p_inv boxtimes F(k)``: a two-slice polynomial of the same degree."""
    d = p_inv.degree()
    if not p_inv.is_homogeneous(d):
        raise DegreeMismatch("lift needs a homogeneous polynomial")
    if not 0 <= k <= d:
        raise DegreeMismatch(f"k={k} outside [0, {d}]")
    return boxtimes(p_inv, (k, d - k))


def sample_pairs(ell: int, p: int) -> list:
    """Every (generator, identity) and (identity, generator) pair."""
    return _generator_pairs(ell, p)


__all__ = [
    "DEFAULT_BUDGET",
    "InvariantReport",
    "ListedVerdict",
    "Slices",
    "action_matrix",
    "closure_span",
    "fixed_subspace",
    "full_group_fixed_subspace",
    "group_closure",
    "in_span",
    "is_fixed",
    "lift_invariant",
    "load_listed_invariants",
    "monomial_basis",
    "parse_matrix_polynomial",
    "sl_generators",
    "verify_listed_invariants",
]
