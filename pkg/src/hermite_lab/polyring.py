"""Sparse polynomials over pairs of ell x ell matrices.

The matrix ring for ``ell`` has ``2*ell**2`` variables in the fixed order
``x11..x_ll`` (slice X, row-major) then ``y11..y_ll`` (slice Y).  Monomials are
dense exponent tuples.  Coefficients are raw values of the ring's field.

Also hosts the evaluation map ``p -> p(nu*I, Diag(mu_1..mu_l))`` into the ring
``F[nu, mu_1, .., mu_l]`` and the inverse problem of expanding a value in
products ``prod_i nu^{lam_i} e_{ell-lam_i}(mu)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Sequence

from . import linalg
from .errors import DegreeMismatch, NotHomogeneous, NotInImage, OutOfRange, SingularMatrix, SpecMismatch
from .field import FieldElement, FieldSpec
from .partitions import box_basis


@dataclass(frozen=True)
class PolyRing:
    field: FieldSpec
    names: tuple
    ell: int | None = None

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def unit(self) -> tuple:
        return (0,) * len(self.names)


@lru_cache(maxsize=None)
def matrix_ring(field: FieldSpec, ell: int) -> PolyRing:
    names = tuple(f"{s}{i}{j}" for s in "xy" for i in range(1, ell + 1) for j in range(1, ell + 1))
    return PolyRing(field, names, ell)


@lru_cache(maxsize=None)
def phi_ring(field: FieldSpec, ell: int) -> PolyRing:
    return PolyRing(field, ("nu",) + tuple(f"mu{i}" for i in range(1, ell + 1)))


def var_index(ell: int, slice_: str, i: int, j: int) -> int:
    """Index of ``x_{i,j}`` (slice ``"X"``) or ``y_{i,j}`` (slice ``"Y"``), 1-based ``i, j``."""
    off = 0 if slice_.upper() == "X" else ell * ell
    return off + (i - 1) * ell + (j - 1)


def _mul_terms(a: dict, b: dict, red) -> dict:
    out: dict = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in ((e, red(c)) for e, c in out.items()) if c != 0}


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict | None = None, *, normalized: bool = False):
        self.ring = ring
        if terms is None:
            terms = {}
        if not normalized:
            red = ring.field.reduce
            terms = {tuple(e): c for e, c in ((e, red(c)) for e, c in terms.items()) if c != 0}
        self.terms = terms

    # -- constructors ---------------------------------------------------------------
    @classmethod
    def zero(cls, ring: PolyRing) -> "Polynomial":
        return cls(ring, {}, normalized=True)

    @classmethod
    def constant(cls, ring: PolyRing, c) -> "Polynomial":
        return cls(ring, {ring.unit: c})

    @classmethod
    def variable(cls, ring: PolyRing, index: int) -> "Polynomial":
        e = [0] * ring.nvars
        e[index] = 1
        return cls(ring, {tuple(e): 1}, normalized=True)

    @classmethod
    def monomial(cls, ring: PolyRing, exps: Sequence[int], c=1) -> "Polynomial":
        return cls(ring, {tuple(exps): c})

    # -- arithmetic -------------------------------------------------------------------
    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring != self.ring:
            raise SpecMismatch(f"ring mismatch: {self.ring.field}/{self.ring.nvars} vs {other.ring.field}/{other.ring.nvars}")
        return other

    def __add__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.ring, other)
        if self._check(other) is NotImplemented:
            return NotImplemented
        red = self.field.reduce
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = red(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out, normalized=True)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.ring, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Polynomial(self.ring, _mul_terms(self.terms, other.terms, self.field.reduce), normalized=True)

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "Polynomial":
        if isinstance(c, FieldElement):
            if c.spec != self.field:
                raise SpecMismatch(f"{c.spec} vs {self.field}")
            c = c.raw
        red = self.field.reduce
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(self.ring, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- structure -----------------------------------------------------------------------
    def degrees(self) -> set:
        return {sum(e) for e in self.terms}

    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        if len(ds) != 1:
            return False
        return degree is None or degree in ds

    def coefficient(self, exps: Sequence[int]) -> FieldElement:
        return self.field.element(self.terms.get(tuple(exps), 0))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def uses_only(self, indices: Iterable[int]) -> bool:
        allowed = set(indices)
        return all(i in allowed for e in self.terms for i, x in enumerate(e) if x)

    def change_field(self, field: FieldSpec) -> "Polynomial":
        ring = PolyRing(field, self.ring.names, self.ring.ell)
        return Polynomial(ring, dict(self.terms))

    def substitute(self, images: Sequence["Polynomial"], target: PolyRing | None = None) -> "Polynomial":
        """Replace variable ``v`` by ``images[v]`` and expand."""
        target = target or (images[0].ring if images else self.ring)
        red = target.field.reduce
        cache: dict = {}
        out: dict = {}
        for e, c in self.terms.items():
            acc = {target.unit: c}
            for v, k in enumerate(e):
                if not k:
                    continue
                pw = cache.get((v, k))
                if pw is None:
                    pw = (images[v] ** k).terms
                    cache[(v, k)] = pw
                acc = _mul_terms(acc, pw, red)
                if not acc:
                    break
            for m, cm in acc.items():
                out[m] = out.get(m, 0) + cm
        return Polynomial(target, out)

    # -- text / json ------------------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for e, c in self.sorted_terms():
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(self.ring.names, e) if k
            )
            cs = self.field.format(c)
            neg = cs.startswith("-")
            cs = cs.lstrip("-")
            if not mono:
                term = cs
            elif cs == "1":
                term = mono
            else:
                term = f"{cs}*{mono}"
            if not out:
                out = f"-{term}" if neg else term
            else:
                out += f" - {term}" if neg else f" + {term}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self.field}, {self})"

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "ell": self.ring.ell,
            "vars": ",".join(self.ring.names),
            "terms": [{"exps": list(e), "coeff": self.field.format(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Polynomial":
        field = FieldSpec.parse(obj["field"])
        names = tuple(obj["vars"].split(","))
        ell = obj.get("ell")
        ring = matrix_ring(field, ell) if ell is not None and names == matrix_ring(field, ell).names else PolyRing(field, names, ell)
        terms: dict = {}
        for t in obj["terms"]:
            e = tuple(int(x) for x in t["exps"])
            if len(e) != ring.nvars:
                raise ValueError("exponent vector length does not match vars")
            terms[e] = terms.get(e, 0) + field.parse_value(str(t["coeff"]))
        return cls(ring, terms)


def poly_arith(op: str, a: Polynomial, b=None) -> Polynomial:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


# -- determinant and the boxtimes product ---------------------------------------------------

def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def determinant(ell: int, slice_: str = "X", field: FieldSpec = FieldSpec.rationals()) -> Polynomial:
    """``sum_pi sgn(pi) prod_i v_{i, pi(i)}`` in the chosen slice."""
    if ell < 1:
        raise ValueError("ell must be positive")
    ring = matrix_ring(field, ell)
    terms: dict = {}
    for perm in permutations(range(ell)):
        e = [0] * ring.nvars
        for i, j in enumerate(perm):
            e[var_index(ell, slice_, i + 1, j + 1)] += 1
        terms[tuple(e)] = terms.get(tuple(e), 0) + _perm_sign(perm)
    return Polynomial(ring, terms)


def _x_word(exps: Sequence[int], nx: int) -> list:
    word = []
    for v in range(nx):
        word.extend([v] * exps[v])
    return word


def boxtimes_word(word: Sequence[int], mu: Sequence[int], ring: PolyRing, coeff=1) -> dict:
    """Raw terms of ``(x_{w_1} ... x_{w_d}) [x] [z1^mu1 z2^mu2]_sym``.

    ``word`` lists slice-X variable indices in any order; the sum runs over the
    distinct arrangements of ``mu1`` ones and ``mu2`` twos, so repeated
    variables collect multiplicities.
    """
    d = len(word)
    mu1, mu2 = mu
    if mu1 + mu2 != d or mu1 < 0 or mu2 < 0:
        raise DegreeMismatch(f"word of length {d} against mu={tuple(mu)}")
    nx = ring.ell * ring.ell
    out: dict = {}
    for xs in combinations(range(d), mu1):
        chosen = set(xs)
        e = [0] * ring.nvars
        for t, v in enumerate(word):
            e[v if t in chosen else v + nx] += 1
        e = tuple(e)
        out[e] = out.get(e, 0) + coeff
    return out


def boxtimes(f: Polynomial, mu: Sequence[int]) -> Polynomial:
    """Bilinear product of a slice-X polynomial of degree ``d`` with ``F(mu1)`` in Sym_d F^2."""
    ring = f.ring
    nx = ring.ell * ring.ell
    d = sum(mu)
    if not f.uses_only(range(nx)):
        raise ValueError("boxtimes takes a polynomial in the slice-X variables only")
    if not f.is_homogeneous(d):
        raise DegreeMismatch(f"degree {sorted(f.degrees())} against |mu| = {d}")
    out: dict = {}
    for e, c in f.terms.items():
        for k, v in boxtimes_word(_x_word(e, nx), mu, ring, c).items():
            out[k] = out.get(k, 0) + v
    return Polynomial(ring, out)


def boxtimes_vector(f: Polynomial, coeffs: Sequence) -> Polynomial:
    """``f [x] sum_k coeffs[k] F(k)`` with ``F(k) = [z1^k z2^(d-k)]_sym``."""
    d = len(coeffs) - 1
    acc = Polynomial.zero(f.ring)
    for k, c in enumerate(coeffs):
        if c:
            acc = acc + boxtimes(f, (k, d - k)).scale(c)
    return acc


@lru_cache(maxsize=None)
def mixed_determinant(ell: int, k: int, field: FieldSpec = FieldSpec.rationals()) -> Polynomial:
    """``det_ell [x] F(k)``: k rows from slice X, the rest from slice Y, summed over row subsets."""
    if not 0 <= k <= ell:
        raise OutOfRange(f"k={k} outside [0, {ell}]")
    return boxtimes(determinant(ell, "X", field), (k, ell - k))


def row_subset_determinant_sum(ell: int, k: int, field: FieldSpec) -> Polynomial:
    """Direct construction: sum over k-subsets S of rows of det with rows in S from slice X."""
    ring = matrix_ring(field, ell)
    terms: dict = {}
    for rows in combinations(range(ell), k):
        rs = set(rows)
        for perm in permutations(range(ell)):
            e = [0] * ring.nvars
            for i, j in enumerate(perm):
                e[var_index(ell, "X" if i in rs else "Y", i + 1, j + 1)] += 1
            terms[tuple(e)] = terms.get(tuple(e), 0) + _perm_sign(perm)
    return Polynomial(ring, terms)


@lru_cache(maxsize=None)
def closure_product(lam: tuple, ell: int, field: FieldSpec) -> Polynomial:
    """``M(lam) = prod_i M_ell(lam_i)``."""
    ring = matrix_ring(field, ell)
    if not lam:
        return Polynomial.constant(ring, 1)
    head = mixed_determinant(ell, lam[0], field)
    if len(lam) == 1:
        return head
    return head * closure_product(lam[1:], ell, field)


# -- group actions ----------------------------------------------------------------------------

def _require_invertible(g, field: FieldSpec):
    if linalg.det(g, field) == 0:
        raise SingularMatrix(f"{g} is singular over {field}")


def pair_action(g1, g2, p: Polynomial) -> Polynomial:
    """``v_{i,j} -> sum_{a,b} g1[a][i] g2[b][j] v_{a,b}`` in both slices."""
    ring = p.ring
    ell = ring.ell
    f = ring.field
    _require_invertible(g1, f)
    _require_invertible(g2, f)
    images = []
    for s in "XY":
        for i in range(ell):
            for j in range(ell):
                terms = {}
                for a in range(ell):
                    if not g1[a][i]:
                        continue
                    for b in range(ell):
                        c = g1[a][i] * g2[b][j]
                        if c:
                            e = [0] * ring.nvars
                            e[var_index(ell, s, a + 1, b + 1)] = 1
                            terms[tuple(e)] = c
                images.append(Polynomial(ring, terms))
    return p.substitute(images, ring)


def _binomial_pair_power(a, c, b, d, alpha: int, beta: int) -> list:
    """Coefficients of ``(a x + c y)^alpha (b x + d y)^beta`` indexed by the exponent of ``x``."""
    out = [0] * (alpha + beta + 1)
    for i in range(alpha + 1):
        ci = comb(alpha, i) * a**i * c ** (alpha - i)
        if not ci:
            continue
        for j in range(beta + 1):
            cj = comb(beta, j) * b**j * d ** (beta - j)
            if cj:
                out[i + j] += ci * cj
    return out


def gl2_poly_action(g, p: Polynomial) -> Polynomial:
    """``x_ij -> a x_ij + c y_ij``, ``y_ij -> b x_ij + d y_ij`` for ``g = [[a, b], [c, d]]``.

    Each matrix position only mixes its own two variables, so a monomial's image
    is a product of independent two-variable factors and expands without merging.
    """
    ring = p.ring
    f = ring.field
    _require_invertible(g, f)
    (a, b), (c, d) = g
    nx = ring.ell * ring.ell
    cache: dict = {}
    out: dict = {}
    for e, coeff in p.terms.items():
        factors = []
        for v in range(nx):
            al, be = e[v], e[v + nx]
            if al or be:
                row = cache.get((al, be))
                if row is None:
                    row = _binomial_pair_power(a, c, b, d, al, be)
                    cache[(al, be)] = row
                factors.append((v, al + be, [(i, x) for i, x in enumerate(row) if x]))
        partial = [([0] * ring.nvars, coeff)]
        for v, tot, row in factors:
            nxt = []
            for ex, cx in partial:
                for i, x in row:
                    ee = ex.copy()
                    ee[v] = i
                    ee[v + nx] = tot - i
                    nxt.append((ee, cx * x))
            partial = nxt
        for ex, cx in partial:
            key = tuple(ex)
            out[key] = out.get(key, 0) + cx
    return Polynomial(ring, out)


# -- evaluation at (nu I, Diag(mu)) --------------------------------------------------------------

def phi_evaluate(p: Polynomial, ell: int | None = None) -> Polynomial:
    """``p(nu * I, Diag(mu_1, .., mu_ell))`` in ``F[nu, mu_1..mu_ell]``."""
    ring = p.ring
    ell = ell or ring.ell
    if ring.ell != ell:
        raise SpecMismatch(f"polynomial lives over {ring.ell}x{ring.ell} matrices, not {ell}")
    target = phi_ring(ring.field, ell)
    nx = ell * ell
    diag = {i * ell + i for i in range(ell)}
    out: dict = {}
    for e, c in p.terms.items():
        if any(k for v, k in enumerate(e[:nx]) if v not in diag) or any(
            k for v, k in enumerate(e[nx:]) if v not in diag
        ):
            continue
        nu = sum(e[i * ell + i] for i in range(ell))
        key = (nu,) + tuple(e[nx + i * ell + i] for i in range(ell))
        out[key] = out.get(key, 0) + c
    return Polynomial(target, out)


@lru_cache(maxsize=None)
def elementary_symmetric(k: int, ell: int, field: FieldSpec) -> Polynomial:
    ring = phi_ring(field, ell)
    terms = {}
    for s in combinations(range(ell), k):
        e = [0] * ring.nvars
        for i in s:
            e[1 + i] = 1
        terms[tuple(e)] = 1
    return Polynomial(ring, terms)


@lru_cache(maxsize=None)
def phi_generator(k: int, ell: int, field: FieldSpec) -> Polynomial:
    """``nu^k e_{ell-k}(mu)``."""
    ring = phi_ring(field, ell)
    e = [0] * ring.nvars
    e[0] = k
    return Polynomial(ring, {tuple(e): 1}) * elementary_symmetric(ell - k, ell, field)


@lru_cache(maxsize=None)
def phi_basis_image(lam: tuple, ell: int, field: FieldSpec) -> Polynomial:
    ring = phi_ring(field, ell)
    acc = Polynomial.constant(ring, 1)
    for k in lam:
        acc = acc * phi_generator(k, ell, field)
    return acc


def phi_decompose(q: Polynomial, ell: int, m: int) -> dict:
    """Coefficients ``c_lam`` with ``q = sum_lam c_lam prod_i nu^{lam_i} e_{ell-lam_i}``.

    Raises :class:`NotInImage` when ``q`` is outside the span.
    """
    f = q.field
    if q.ring != phi_ring(f, ell):
        raise SpecMismatch("expected a polynomial in nu, mu_1..mu_ell")
    if not q.is_homogeneous(ell * m):
        raise NotHomogeneous(f"expected homogeneous degree {ell * m}, got degrees {sorted(q.degrees())}")
    basis = box_basis(m, ell)
    images = [phi_basis_image(lam, ell, f) for lam in basis]
    monos = sorted(set().union(q.terms, *(img.terms for img in images)))
    rows = [[img.terms.get(e, 0) for img in images] for e in monos]
    rhs = [q.terms.get(e, 0) for e in monos]
    x = linalg.solve(rows, rhs, f) if rows else [0] * len(basis)
    if x is None:
        raise NotInImage("nonzero remainder against the span of the generator images")
    return {lam: f.element(c) for lam, c in zip(basis, x)}
