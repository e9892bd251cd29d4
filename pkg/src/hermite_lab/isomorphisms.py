"""Wronskian, Hodge, dual Wronskian, Hermite reciprocity and the Kronecker-plethysm maps.

All four square maps have integer matrices in the standard bases, so they are
built once over Z (cached) and reduced into whichever field is asked for.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import permutations
from typing import Sequence

import numpy as np

from . import linalg
from .errors import NotHomogeneous, NotInImage, NotInvariant, ShapeMismatch
from .field import FieldSpec
from .partitions import box_basis, dominates_or_equal, pad, tilde_D, tilde_W, tilde_W_star, transpose
from .polyring import (
    Polynomial,
    closure_product,
    matrix_ring,
    phi_decompose,
    phi_evaluate,
)
from .tensor_spaces import Shape, SpaceDescriptor, SparseVector, sort_with_sign, standard_basis


# -- integer columns of the square maps ----------------------------------------------------------

@lru_cache(maxsize=None)
def _wronskian_columns(m: int, ell: int) -> dict:
    d = tuple(range(m - 1, -1, -1))
    out = {}
    for lam in box_basis(m, ell):
        col: dict = {}
        for s in set(permutations(lam)):
            r = sort_with_sign([v + di for v, di in zip(s, d)])
            if r is None:
                continue
            sign, idx = r
            col[idx] = col.get(idx, 0) + sign
        out[lam] = {k: v for k, v in col.items() if v}
    return out


@lru_cache(maxsize=None)
def _hodge_columns(m: int, ell: int) -> dict:
    return {lam: {tilde_D(lam, m, ell): 1} for lam in box_basis(m, ell + m - 1, True)}


@lru_cache(maxsize=None)
def _dual_wronskian_columns(m: int, ell: int, signed: bool = True) -> dict:
    """``/\\^ell Sym_{ell+m-1} -> Sym^ell Sym_m``; out-of-range slot tuples vanish."""
    out = {}
    for lam in box_basis(ell, ell + m - 1, True):
        col: dict = {}
        for pi in permutations(range(ell)):
            word = [lam[p] for p in pi]
            nu = [v - (ell - 1 - i) for i, v in enumerate(word)]
            if any(v < 0 or v > m for v in nu):
                continue
            key = tuple(sorted(nu, reverse=True))
            sign = sort_with_sign(word)[0] if signed else 1
            col[key] = col.get(key, 0) + sign
        out[lam] = {k: v for k, v in col.items() if v}
    return out


def _apply_columns(columns: dict, v: SparseVector, target: SpaceDescriptor) -> SparseVector:
    red = target.field.reduce
    out: dict = {}
    for idx, c in v.terms.items():
        for k, w in columns[idx].items():
            out[k] = red(out.get(k, 0) + c * w)
    return SparseVector(target, out)


def _expect(v: SparseVector, shape: Shape):
    if v.descriptor.shape is not shape:
        raise ShapeMismatch(f"expected {shape.value}, got {v.descriptor.shape.value}")


def wronskian(v: SparseVector) -> SparseVector:
    """Sym_m Sym^ell -> /\\^m Sym^{ell+m-1}: orbit sum of ``sigma.lam + d_m`` wedge words."""
    _expect(v, Shape.DIVIDED_OF_SYM)
    d = v.descriptor
    target = SpaceDescriptor(Shape.WEDGE_OF_SYM, d.m, d.ell, d.field)
    return _apply_columns(_wronskian_columns(d.m, d.ell), v, target)


def hodge(v: SparseVector) -> SparseVector:
    _expect(v, Shape.WEDGE_OF_SYM)
    d = v.descriptor
    target = SpaceDescriptor(Shape.WEDGE_OF_DIVIDED, d.m, d.ell, d.field)
    return _apply_columns(_hodge_columns(d.m, d.ell), v, target)


def dual_wronskian(v: SparseVector, signed: bool = True) -> SparseVector:
    """/\\^ell Sym_{ell+m-1} -> Sym^ell Sym_m.

    ``signed=False`` drops the reordering sign of ``pi.lam``; that variant is
    still unit-triangular after composition but is not GL2-equivariant.
    """
    _expect(v, Shape.WEDGE_OF_DIVIDED)
    d = v.descriptor
    target = SpaceDescriptor(Shape.SYM_OF_DIVIDED, d.ell, d.m, d.field)
    return _apply_columns(_dual_wronskian_columns(d.m, d.ell, signed), v, target)


def hermite_apply(v: SparseVector, signed: bool = True) -> SparseVector:
    return dual_wronskian(hodge(wronskian(v)), signed)


# -- matrices -----------------------------------------------------------------------------------

@dataclass
class LinearMapMatrix:
    source: object  # SpaceDescriptor or a tag string for invariant spaces
    target: object
    source_basis: tuple
    target_basis: tuple
    entries: list  # rows = target basis, columns = source basis
    field: FieldSpec
    basis_order: str = "graded by weight, lex-descending within a weight (a linear extension of dominance)"

    @property
    def shape(self) -> tuple:
        return len(self.target_basis), len(self.source_basis)

    def column(self, j: int) -> list:
        return [row[j] for row in self.entries]

    def det(self):
        return linalg.det(self.entries, self.field)

    def is_invertible(self) -> bool:
        return self.shape[0] == self.shape[1] and self.det() != 0

    def transpose(self) -> "LinearMapMatrix":
        return LinearMapMatrix(
            _dual_tag(self.target), _dual_tag(self.source), self.target_basis, self.source_basis,
            linalg.transpose(self.entries), self.field,
        )

    def to_json(self) -> dict:
        fmt = self.field.format
        tag = lambda s: s.to_json() if isinstance(s, SpaceDescriptor) else s
        return {
            "source": tag(self.source),
            "target": tag(self.target),
            "field": str(self.field),
            "basis_order": [list(b) for b in self.source_basis],
            "target_basis_order": [list(b) for b in self.target_basis],
            "entries": [[fmt(x) for x in row] for row in self.entries],
        }


def _dual_tag(s):
    if isinstance(s, SpaceDescriptor):
        return s.dual()
    return f"dual({s})"


def _integer_matrix(columns: dict, src: Sequence, tgt: Sequence) -> np.ndarray:
    pos = {t: i for i, t in enumerate(tgt)}
    M = np.zeros((len(tgt), len(src)), dtype=np.int64)
    for j, s in enumerate(src):
        for k, v in columns[s].items():
            M[pos[k], j] += v
    return M


@lru_cache(maxsize=None)
def _hermite_integer(m: int, ell: int, signed: bool = True) -> np.ndarray:
    src = box_basis(m, ell)
    wed = box_basis(m, ell + m - 1, True)
    wdiv = box_basis(ell, ell + m - 1, True)
    tgt = box_basis(ell, m)
    W = _integer_matrix(_wronskian_columns(m, ell), src, wed)
    D = _integer_matrix(_hodge_columns(m, ell), wed, wdiv)
    S = _integer_matrix(_dual_wronskian_columns(m, ell, signed), wdiv, tgt)
    R = S @ (D @ W)
    R.setflags(write=False)
    return R


def _to_field(M: np.ndarray, f: FieldSpec) -> list:
    p = f.modulus
    if p is not None:
        return (M % p).tolist()
    return M.tolist()


def map_matrix(name: str, m: int, ell: int, f: FieldSpec, signed: bool = True) -> LinearMapMatrix:
    """Matrix of ``W``, ``D``, ``Wstar`` or ``R`` with parameters ``(m, ell)``."""
    div_sym = SpaceDescriptor(Shape.DIVIDED_OF_SYM, m, ell, f)
    w_sym = SpaceDescriptor(Shape.WEDGE_OF_SYM, m, ell, f)
    w_div = SpaceDescriptor(Shape.WEDGE_OF_DIVIDED, m, ell, f)
    sym_div = SpaceDescriptor(Shape.SYM_OF_DIVIDED, ell, m, f)
    if name == "W":
        cols, s, t = _wronskian_columns(m, ell), div_sym, w_sym
    elif name == "D":
        cols, s, t = _hodge_columns(m, ell), w_sym, w_div
    elif name == "Wstar":
        cols, s, t = _dual_wronskian_columns(m, ell, signed), w_div, sym_div
    elif name == "R":
        return hermite_R(m, ell, f, signed)
    else:
        raise ValueError(f"unknown map {name!r}")
    sb, tb = standard_basis(s), standard_basis(t)
    return LinearMapMatrix(s, t, sb, tb, _to_field(_integer_matrix(cols, sb, tb), f), f)


def hermite_R(m: int, ell: int, f: FieldSpec, signed: bool = True) -> LinearMapMatrix:
    """Matrix of ``Wstar_{ell,m} o D_{m,ell} o W_{m,ell}`` in the standard bases."""
    if m < 1 or ell < 1:
        raise ValueError("m and ell must be positive")
    s = SpaceDescriptor(Shape.DIVIDED_OF_SYM, m, ell, f)
    t = SpaceDescriptor(Shape.SYM_OF_DIVIDED, ell, m, f)
    return LinearMapMatrix(s, t, standard_basis(s), standard_basis(t), _to_field(_hermite_integer(m, ell, signed), f), f)


@dataclass
class TriangularityReport:
    ok: bool
    diagonal: list
    violations: list = dc_field(default_factory=list)

    @property
    def determinant_is_one(self) -> bool:
        return self.ok


def check_triangularity(R: LinearMapMatrix) -> TriangularityReport:
    """Unit-triangularity of R under the pairing ``lam <-> lam^T``.

    For every source ``lam`` the entry at target ``lam^T`` must be 1 and every
    other nonzero entry of the column must sit at a target ``mu`` of the same
    weight that strictly dominates ``lam^T``.  Reordering the target basis as
    the transposes of the source basis then gives a lower unit-triangular
    matrix, which is checked as well.
    """
    ell = R.target.slots
    pos = {t: i for i, t in enumerate(R.target_basis)}
    diag = []
    bad = []
    perm = []
    for j, lam in enumerate(R.source_basis):
        lt = pad(transpose(lam), ell)
        i0 = pos[lt]
        perm.append(i0)
        diag.append(R.entries[i0][j])
        if R.entries[i0][j] != 1:
            bad.append((lam, lt, "diagonal", R.entries[i0][j]))
        for i, mu in enumerate(R.target_basis):
            if i == i0 or not R.entries[i][j]:
                continue
            if sum(mu) != sum(lam) or not dominates_or_equal(mu, lt):
                bad.append((lam, mu, "support below the transpose", R.entries[i][j]))
    # explicit triangular shape in the transposed order
    for j in range(len(perm)):
        for jj in range(j):
            if R.entries[perm[jj]][j]:
                bad.append((R.source_basis[j], R.target_basis[perm[jj]], "above diagonal", R.entries[perm[jj]][j]))
    return TriangularityReport(not bad, diag, bad)


# -- support extremality --------------------------------------------------------------------------

def unique_dominance_max(support: Sequence[tuple]):
    """The element dominating all others, or None."""
    for a in support:
        if all(dominates_or_equal(a, b) for b in support):
            return a
    return None


def unique_dominance_min(support: Sequence[tuple]):
    for a in support:
        if all(dominates_or_equal(b, a) for b in support):
            return a
    return None


# -- Kronecker-plethysm isomorphism -------------------------------------------------------------------

def k_inverse(v: SparseVector) -> Polynomial:
    """``sum_lam v_lam prod_i M_ell(lam_i)`` for ``v`` in Sym^m Sym_ell F^2."""
    _expect(v, Shape.SYM_OF_DIVIDED)
    d = v.descriptor
    acc = Polynomial.zero(matrix_ring(d.field, d.ell))
    for lam, c in v.terms.items():
        acc = acc + closure_product(tuple(lam), d.ell, d.field).scale(c)
    return acc


def k_forward(p: Polynomial, ell: int, m: int, verify: bool = True) -> SparseVector:
    """Invariant of degree ``ell*m`` -> Sym^m Sym_ell F^2 through the diagonal evaluation.

    With ``verify`` (default) the preimage is rebuilt from the generators and
    compared with ``p``, which detects non-invariant input whose diagonal
    evaluation happens to land in the span.
    """
    f = p.field
    if p.ring != matrix_ring(f, ell):
        raise ShapeMismatch(f"expected a polynomial over {ell}x{ell}x2 variables")
    if not p.is_homogeneous(ell * m):
        raise NotHomogeneous(f"expected degree {ell * m}, got {sorted(p.degrees())}")
    try:
        coeffs = phi_decompose(phi_evaluate(p, ell), ell, m)
    except NotInImage as exc:
        raise NotInvariant(str(exc)) from None
    v = SparseVector(SpaceDescriptor(Shape.SYM_OF_DIVIDED, m, ell, f), {lam: c.raw for lam, c in coeffs.items()})
    if verify and k_inverse(v) != p:
        raise NotInvariant("not in the span of the mixed-determinant products")
    return v


def closure_invariant_basis(ell: int, m: int, f: FieldSpec) -> list:
    """``[M(lam) for lam in the (m, ell) box]`` in canonical order."""
    return [closure_product(lam, ell, f) for lam in box_basis(m, ell)]


def polynomial_rank(polys: Sequence[Polynomial]) -> int:
    """Rank of a family of polynomials, over the union of their supports."""
    if not polys:
        return 0
    f = polys[0].field
    monos = sorted(set().union(*(p.terms for p in polys)))
    pos = {e: i for i, e in enumerate(monos)}
    rows = []
    for p in polys:
        row = [0] * len(monos)
        for e, c in p.terms.items():
            row[pos[e]] = c
        rows.append(row)
    return linalg.rank(rows, f)


def k_matrix(m: int, ell: int, f: FieldSpec) -> LinearMapMatrix:
    """Matrix of K_{m,ell} computed by sending each M(lam) through :func:`k_forward`."""
    basis = box_basis(m, ell)
    target = SpaceDescriptor(Shape.SYM_OF_DIVIDED, m, ell, f)
    tb = standard_basis(target)
    cols = [k_forward(closure_product(lam, ell, f), ell, m, verify=False).dense() for lam in basis]
    return LinearMapMatrix(f"Inv(Sym^{ell * m}(F^{ell}x{ell}x2))", target, basis, tb, linalg.transpose(cols), f)


def iso_I(m: int, ell: int, f: FieldSpec, signed: bool = True) -> LinearMapMatrix:
    """``K_{ell,m}^{-1} . R_{m,ell} . (K_{m,ell}^T)^{-1}``.

    Source: the dual of the degree-``ell*m`` closure invariants of
    ``ell x ell x 2`` tensors (dual basis to ``M_ell(lam)``); target: the
    closure invariants of ``m x m x 2`` tensors in the basis ``M_m(mu)``.
    """
    K_small = k_matrix(m, ell, f)  # ell x ell tensors -> Sym^m Sym_ell
    K_big = k_matrix(ell, m, f)  # m x m tensors -> Sym^ell Sym_m
    R = hermite_R(m, ell, f, signed)
    left = linalg.inverse(K_big.entries, f)
    right = linalg.inverse(linalg.transpose(K_small.entries), f)
    entries = linalg.matmul(left, linalg.matmul(R.entries, right, f), f)
    return LinearMapMatrix(
        f"dual(Inv(Sym^{ell * m}(F^{ell}x{ell}x2)))",
        f"Inv(Sym^{ell * m}(F^{m}x{m}x2))",
        K_small.source_basis,
        K_big.source_basis,
        entries,
        f,
    )


def iso_I_images(I: LinearMapMatrix, m: int) -> list:
    """Polynomials ``sum_mu I[mu, lam] M_m(mu)`` for every source basis vector ``lam``."""
    f = I.field
    out = []
    for j in range(len(I.source_basis)):
        acc = Polynomial.zero(matrix_ring(f, m))
        for i, mu in enumerate(I.target_basis):
            c = I.entries[i][j]
            if c:
                acc = acc + closure_product(tuple(mu), m, f).scale(c)
        out.append(acc)
    return out


def transposed_support_prediction(lam: Sequence[int], m: int, ell: int) -> tuple:
    """``Wstar~(D~(W~(lam)))``: where the diagonal of R sits for source ``lam``."""
    return tilde_W_star(tilde_D(tilde_W(lam, m, ell), m, ell), ell, m)
