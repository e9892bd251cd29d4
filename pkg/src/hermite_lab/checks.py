"""Property checks behind ``hermite-lab verify``.

Every check takes a :class:`CheckContext` and returns ``(ok, detail)``.  Randomized
checks draw from ``ctx.rng(name)``, a generator seeded from the suite seed and
the check name, so results do not depend on execution order or thread count.
"""
from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb

from . import linalg
from .field import GF2, GF3, GF5, QQ, FieldSpec, from_integer
from .invariant_hunter import (
    Slices,
    closure_span,
    fixed_subspace,
    full_group_fixed_subspace,
    group_closure,
    in_span,
    is_fixed,
    lift_invariant,
    sl_generators,
    verify_listed_invariants,
)
from .isomorphisms import (
    _dual_wronskian_columns,
    _wronskian_columns,
    check_triangularity,
    closure_invariant_basis,
    hermite_R,
    iso_I,
    k_forward,
    k_inverse,
    map_matrix,
    polynomial_rank,
    transposed_support_prediction,
    unique_dominance_max,
    unique_dominance_min,
)
from .partitions import (
    b_coefficient,
    box_basis,
    dominance,
    Dominance,
    enumerate_box,
    gaussian_binomial,
    pad,
    tilde_D,
    tilde_W,
    tilde_W_star,
    transpose,
)
from .polyring import (
    Polynomial,
    boxtimes,
    boxtimes_vector,
    boxtimes_word,
    determinant,
    gl2_poly_action,
    matrix_ring,
    mixed_determinant,
    pair_action,
    phi_evaluate,
    phi_generator,
    row_subset_determinant_sum,
)
from .tensor_spaces import (
    Shape,
    SpaceDescriptor,
    SparseVector,
    duality_pairing,
    gl2_action,
    gl2_matrix,
    gl2_on_divided_generator,
    standard_basis,
    sym_product,
    transpose2,
)

ALL_FIELDS = (QQ, GF2, GF3, GF5)


# -- random sampling ------------------------------------------------------------------------

def random_scalar(rng: random.Random, f: FieldSpec, spread: int = 5):
    if f.modulus is None:
        return rng.randint(-spread, spread)
    return rng.randrange(f.modulus)


def random_gl2(rng: random.Random, f: FieldSpec) -> list:
    while True:
        g = [[random_scalar(rng, f, 3) for _ in range(2)] for _ in range(2)]
        if linalg.det(g, f) != 0:
            return g


def random_sl(rng: random.Random, ell: int, f: FieldSpec, steps: int = 6) -> list:
    """Product of random transvections ``I + c E_ij`` (integer entries over Q)."""
    g = linalg.identity(ell)
    if ell < 2:
        return g
    for _ in range(steps):
        i, j = rng.sample(range(ell), 2)
        t = linalg.identity(ell)
        t[i][j] = f.reduce(rng.randint(-2, 2))
        g = linalg.matmul(g, t, f)
    return g


def random_vector(rng: random.Random, d: SpaceDescriptor, density: float = 1.0) -> SparseVector:
    terms = {}
    for b in standard_basis(d):
        if rng.random() < density:
            terms[b] = random_scalar(rng, d.field, 3)
    return SparseVector(d, terms)


def random_slice_polynomial(rng: random.Random, ell: int, degree: int, f: FieldSpec, nterms: int = 3) -> Polynomial:
    ring = matrix_ring(f, ell)
    terms = {}
    for _ in range(nterms):
        e = [0] * ring.nvars
        for _ in range(degree):
            e[rng.randrange(ell * ell)] += 1
        terms[tuple(e)] = terms.get(tuple(e), 0) + random_scalar(rng, f, 3)
    return Polynomial(ring, terms)


def random_invariant(rng: random.Random, ell: int, m: int, f: FieldSpec) -> Polynomial:
    return k_inverse(random_vector(rng, SpaceDescriptor(Shape.SYM_OF_DIVIDED, m, ell, f), 0.6))


# -- runner --------------------------------------------------------------------------------

@dataclass
class CheckContext:
    seed: int = 0
    fields: tuple = ALL_FIELDS

    def rng(self, name: str) -> random.Random:
        return random.Random(f"{self.seed}:{name}")

    def pick(self, *allowed: FieldSpec) -> tuple:
        """Requested fields intersected with ``allowed``; falls back to ``allowed`` when empty."""
        chosen = tuple(f for f in self.fields if f in allowed)
        return chosen or tuple(allowed)

    def primes(self, *allowed: int) -> tuple:
        chosen = tuple(f.modulus for f in self.fields if f.modulus in allowed)
        return chosen or tuple(allowed)


@dataclass
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.suite}.{self.name}: {self.detail}"

    def to_json(self) -> dict:
        return {"suite": self.suite, "name": self.name, "ok": self.ok, "detail": self.detail}


REGISTRY: list = []


def check(suite: str):
    def deco(fn):
        REGISTRY.append((suite, fn.__name__, fn))
        return fn

    return deco


def suites() -> list:
    return sorted({s for s, _, _ in REGISTRY})


def thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("HERMITE_LAB_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(suite: str = "all", ctx: CheckContext | None = None, threads: int | None = None) -> list:
    ctx = ctx or CheckContext()
    chosen = [(s, n, fn) for s, n, fn in REGISTRY if suite in ("all", s)]
    if not chosen:
        raise ValueError(f"unknown suite {suite!r}; choose from {['all'] + suites()}")

    def one(item):
        s, n, fn = item
        t = time.perf_counter()
        try:
            ok, detail = fn(ctx)
        except Exception as exc:  # report, keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        return CheckResult(s, n, bool(ok), detail, time.perf_counter() - t)

    threads = threads or thread_cap()
    if threads == 1:
        return [one(it) for it in chosen]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, chosen))


def _fails(n_fail: int, n: int, what: str = "cases") -> tuple:
    return n_fail == 0, f"{n - n_fail}/{n} {what}"


# -- field ---------------------------------------------------------------------------------

@check("field")
def field_axioms(ctx):
    rng = ctx.rng("field_axioms")
    bad = total = 0
    for f in ctx.fields:
        sample = [f.element(random_scalar(rng, f, 50)) for _ in range(1000)]
        for _ in range(300):
            a, b, c = rng.choice(sample), rng.choice(sample), rng.choice(sample)
            total += 1
            bad += (a + b) + c != a + (b + c)
            bad += (a * b) * c != a * (b * c)
            bad += a * (b + c) != a * b + a * c
            bad += a + b != b + a or a * b != b * a
        for a in sample:
            if a.raw != 0:
                total += 1
                bad += a * a.inverse() != f.element(1)
    return _fails(bad, total, "axiom samples")


@check("field")
def from_integer_homomorphism(ctx):
    rng = ctx.rng("from_integer_homomorphism")
    bad = 0
    n = 0
    for f in ctx.fields:
        for _ in range(200):
            a, b = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
            n += 1
            bad += from_integer(f, a * b) != from_integer(f, a) * from_integer(f, b)
            bad += from_integer(f, a + b) != from_integer(f, a) + from_integer(f, b)
    return _fails(bad, n)


# -- partitions ----------------------------------------------------------------------------

@check("partitions")
def figure_example(ctx):
    lam = (4, 2, 2, 1)
    a = tilde_W(lam, 5, 4)
    b = tilde_D(a, 5, 4)
    c = tilde_W_star(b, 4, 5)
    ok = (a, b, c) == ((8, 5, 4, 2, 0), (7, 5, 2, 1), (4, 3, 1, 1)) and c == pad(transpose(lam), 4)
    return ok, f"{lam} -> {a} -> {b} -> {c}"


@check("partitions")
def diagram_commutation(ctx):
    bad = n = 0
    for ell in range(1, 9):
        for m in range(1, 9):
            for lam in box_basis(m, ell):
                n += 1
                bad += transposed_support_prediction(lam, m, ell) != pad(transpose(lam), ell)
    return _fails(bad, n, "partitions")


@check("partitions")
def tilde_maps_bijective(ctx):
    bad = 0
    n = 0
    for ell in range(1, 7):
        for m in range(1, 7):
            N = ell + m - 1
            for k in range(ell * m + 1):
                src = enumerate_box(k, m, ell).members
                img = {tilde_W(lam, m, ell) for lam in src}
                target = set(enumerate_box(k + comb(m, 2), m, N, regular=True).members)
                n += 1
                bad += img != target
            wedge = box_basis(m, N, True)
            img = [tilde_D(lam, m, ell) for lam in wedge]
            n += 1
            bad += sorted(img) != sorted(box_basis(ell, N, True))
    return _fails(bad, n, "weight classes")


@check("partitions")
def hodge_reverses_dominance(ctx):
    bad = n = 0
    for ell in range(1, 7):
        for m in range(1, 7):
            N = ell + m - 1
            by_weight: dict = {}
            for lam in box_basis(m, N, True):
                by_weight.setdefault(sum(lam), []).append(lam)
            for group in by_weight.values():
                imgs = {lam: tilde_D(lam, m, ell) for lam in group}
                for lam in group:
                    for mu in group:
                        if lam != mu and dominance(lam, mu) is Dominance.DOMINATES:
                            n += 1
                            bad += dominance(imgs[mu], imgs[lam]) is not Dominance.DOMINATES
    return _fails(bad, n, "comparable pairs")


@check("partitions")
def unimodality(ctx):
    bad = n = 0
    for ell in range(1, 31):
        for m in range(1, 31):
            for k in range(ell * m // 2 + 1):
                n += 1
                bad += b_coefficient(k, ell, m) < 0
    return _fails(bad, n, "coefficients")


@check("partitions")
def gaussian_symmetry(ctx):
    bad = n = 0
    for ell in range(1, 13):
        for m in range(1, 13):
            n += 1
            g = gaussian_binomial(ell, m)
            bad += g != gaussian_binomial(m, ell) or g != g[::-1] or sum(g) != comb(ell + m, m)
    return _fails(bad, n, "boxes")


@check("partitions")
def transpose_involution(ctx):
    bad = n = 0
    for ell in range(1, 9):
        for m in range(1, 9):
            for lam in box_basis(m, ell):
                n += 1
                bad += pad(transpose(transpose(lam)), m) != lam
    return _fails(bad, n, "partitions")


# -- tensor spaces -----------------------------------------------------------------------------

@check("tensor_spaces")
def gl2_is_group_action(ctx):
    rng = ctx.rng("gl2_is_group_action")
    bad = n = 0
    for f in ctx.pick(QQ, GF2, GF3):
        for shape in Shape:
            for _ in range(200):
                d = SpaceDescriptor(shape, rng.randint(1, 3), rng.randint(1, 3), f)
                v = random_vector(rng, d)
                g, h = random_gl2(rng, f), random_gl2(rng, f)
                n += 1
                bad += gl2_action(linalg.identity(2), v) != v
                bad += gl2_action(g, gl2_action(h, v)) != gl2_action(linalg.matmul(g, h, f), v)
    return _fails(bad, n, "samples")


@check("tensor_spaces")
def divided_generator_matches_action(ctx):
    rng = ctx.rng("divided_generator_matches_action")
    bad = n = 0
    for f in ctx.pick(QQ, GF2, GF3):
        gs = [random_gl2(rng, f) for _ in range(10)]
        for ell in range(1, 5):
            d = SpaceDescriptor(Shape.SYM_OF_DIVIDED, 1, ell, f)
            for g in gs:
                for k in range(ell + 1):
                    n += 1
                    img = gl2_action(g, SparseVector.basis(d, (k,)))
                    bad += [img.coeff((j,)) for j in range(ell + 1)] != gl2_on_divided_generator(g, k, ell, f)
    # characteristic-aware example
    g = [[1, 1], [0, 1]]
    q = [c.raw for c in gl2_on_divided_generator(g, 1, 2, QQ)]
    t = [c.raw for c in gl2_on_divided_generator(g, 1, 2, GF2)]
    n += 1
    bad += q != [0, 1, 2] or t != [0, 1, 0]
    return _fails(bad, n, "generators")


@check("tensor_spaces")
def duality_gram_and_contragredience(ctx):
    rng = ctx.rng("duality_gram_and_contragredience")
    bad = n = 0
    for f in ctx.fields:
        for m in range(1, 6):
            for ell in range(1, 6 - m + 1 if m < 5 else 2):
                for shape in (Shape.SYM_OF_DIVIDED, Shape.WEDGE_OF_SYM):
                    d = SpaceDescriptor(shape, m, ell, f)
                    fb, tb = standard_basis(d), standard_basis(d.dual())
                    gram = [[duality_pairing(SparseVector.basis(d, a), SparseVector.basis(d.dual(), b)).raw for b in tb] for a in fb]
                    n += 1
                    bad += gram != linalg.identity(len(fb))
                    g = random_gl2(rng, f)
                    v, w = random_vector(rng, d), random_vector(rng, d.dual())
                    n += 1
                    bad += duality_pairing(gl2_action(g, v), w) != duality_pairing(v, gl2_action(transpose2(g), w))
    return _fails(bad, n, "pairings")


@check("tensor_spaces")
def basis_dimensions(ctx):
    bad = n = 0
    for shape in Shape:
        for m in range(1, 7):
            for ell in range(1, 7):
                n += 1
                d = SpaceDescriptor(shape, m, ell, QQ)
                bad += len(standard_basis(d)) != comb(m + ell, ell) or d.dimension != comb(m + ell, ell)
    return _fails(bad, n, "spaces")


# -- polyring ----------------------------------------------------------------------------------

@check("polyring")
def boxtimes_word_order(ctx):
    rng = ctx.rng("boxtimes_word_order")
    bad = n = 0
    for f in ctx.pick(QQ, GF2, GF3):
        for _ in range(100):
            ell = rng.randint(1, 3)
            d = rng.randint(1, 4)
            ring = matrix_ring(f, ell)
            word = [rng.randrange(ell * ell) for _ in range(d)]
            shuffled = word[:]
            rng.shuffle(shuffled)
            k = rng.randint(0, d)
            n += 1
            a = Polynomial(ring, boxtimes_word(word, (k, d - k), ring))
            b = Polynomial(ring, boxtimes_word(shuffled, (k, d - k), ring))
            bad += a != b
    return _fails(bad, n, "words")


@check("polyring")
def boxtimes_equivariance(ctx):
    rng = ctx.rng("boxtimes_equivariance")
    bad = n = 0
    for f in ctx.pick(GF2, GF3, GF5):
        for _ in range(20):
            ell = rng.randint(1, 3)
            d = rng.randint(1, 4 if ell < 3 else 3)
            F = random_slice_polynomial(rng, ell, d, f)
            k = rng.randint(0, d)
            g1, g2, h = random_sl(rng, ell, f), random_sl(rng, ell, f), random_gl2(rng, f)
            lhs = gl2_poly_action(h, pair_action(g1, g2, boxtimes(F, (k, d - k))))
            coeffs = [c.raw for c in gl2_on_divided_generator(h, k, d, f)]
            rhs = boxtimes_vector(pair_action(g1, g2, F), coeffs)
            n += 1
            bad += lhs != rhs
    return _fails(bad, n, "samples")


@check("polyring")
def mixed_determinant_invariance(ctx):
    rng = ctx.rng("mixed_determinant_invariance")
    bad = n = 0
    for f in ctx.fields:
        for _ in range(100):
            ell = rng.choice((1, 2, 2, 3, 3, 4))
            k = rng.randint(0, ell)
            g1, g2 = random_sl(rng, ell, f), random_sl(rng, ell, f)
            M = mixed_determinant(ell, k, f)
            n += 1
            bad += pair_action(g1, g2, M) != M
    return _fails(bad, n, "pairs")


@check("polyring")
def mixed_determinant_subset_formula(ctx):
    bad = n = 0
    for f in ctx.fields:
        for ell in range(1, 5):
            for k in range(ell + 1):
                n += 1
                bad += mixed_determinant(ell, k, f) != row_subset_determinant_sum(ell, k, f)
    return _fails(bad, n, "(ell, k)")


@check("polyring")
def invariant_degrees(ctx):
    bad = n = 0
    for ell in range(1, 4):
        for m in range(1, 4):
            for p in closure_invariant_basis(ell, m, QQ):
                n += 1
                bad += not p.is_homogeneous() or p.degree() % ell
    for (ell, d, p) in ((2, 4, 2), (2, 6, 3)):
        for q in fixed_subspace(ell, d, p, "two").closure_span:
            n += 1
            bad += q.degree() % ell != 0
    return _fails(bad, n, "basis elements")


@check("polyring")
def phi_identity(ctx):
    bad = n = 0
    for f in ctx.pick(QQ, GF2):
        for ell in range(1, 6):
            for k in range(ell + 1):
                n += 1
                bad += phi_evaluate(mixed_determinant(ell, k, f)) != phi_generator(k, ell, f)
    return _fails(bad, n, "(ell, k)")


def _swap_mu(q: Polynomial, i: int) -> Polynomial:
    terms = {}
    for e, c in q.terms.items():
        e = list(e)
        e[1 + i], e[2 + i] = e[2 + i], e[1 + i]
        terms[tuple(e)] = c
    return Polynomial(q.ring, terms)


@check("polyring")
def phi_symmetric_and_multiplicative(ctx):
    rng = ctx.rng("phi_symmetric_and_multiplicative")
    bad = n = 0
    for f in ctx.pick(QQ, GF2, GF3):
        for _ in range(10):
            ell = rng.randint(1, 3)
            p = random_invariant(rng, ell, rng.randint(1, 2), f)
            q = random_invariant(rng, ell, 1, f)
            ph = phi_evaluate(p)
            for i in range(ell - 1):
                n += 1
                bad += _swap_mu(ph, i) != ph
            n += 1
            bad += phi_evaluate(p * q) != ph * phi_evaluate(q)
        # also on arbitrary polynomials
        for _ in range(10):
            ell = rng.randint(1, 3)
            a = random_slice_polynomial(rng, ell, 2, f) + gl2_poly_action(random_gl2(rng, f), random_slice_polynomial(rng, ell, 2, f))
            b = random_slice_polynomial(rng, ell, 1, f)
            n += 1
            bad += phi_evaluate(a * b) != phi_evaluate(a) * phi_evaluate(b)
    return _fails(bad, n, "samples")


# -- isomorphisms ------------------------------------------------------------------------------

@check("isomorphisms")
def hermite_triangularity(ctx):
    bad = n = 0
    for f in ctx.fields:
        for m in range(1, 6):
            for ell in range(1, 6):
                n += 1
                bad += not check_triangularity(hermite_R(m, ell, f)).ok
    return _fails(bad, n, "matrices")


@check("isomorphisms")
def diagonal_positions_predicted(ctx):
    bad = n = 0
    for m in range(1, 6):
        for ell in range(1, 6):
            R = hermite_R(m, ell, QQ)
            pos = {t: i for i, t in enumerate(R.target_basis)}
            for j, lam in enumerate(R.source_basis):
                n += 1
                pred = transposed_support_prediction(lam, m, ell)
                support = [R.target_basis[i] for i in range(len(pos)) if R.entries[i][j]]
                bad += pred != pad(transpose(lam), ell) or R.entries[pos[pred]][j] != 1
                bad += unique_dominance_min(support) != pred
    return _fails(bad, n, "columns")


@check("isomorphisms")
def support_extremality(ctx):
    bad = n = 0
    for m in range(1, 5):
        for ell in range(1, 5):
            for lam, col in _wronskian_columns(m, ell).items():
                n += 1
                bad += unique_dominance_max(list(col)) != tilde_W(lam, m, ell)
            for lam, col in _dual_wronskian_columns(m, ell).items():
                n += 1
                bad += unique_dominance_min(list(col)) != tilde_W_star(lam, ell, m)
    return _fails(bad, n, "basis images")


@check("isomorphisms")
def hodge_and_hermite_duality(ctx):
    """``D_{m,l} = D*_{l,m}`` and ``R_{m,l} = R*_{l,m}`` as transposes in the dual bases."""
    bad = n = 0
    for f in ctx.fields:
        for m in range(1, 5):
            for ell in range(1, 5):
                n += 2
                bad += map_matrix("D", m, ell, f).entries != linalg.transpose(map_matrix("D", ell, m, f).entries)
                bad += hermite_R(m, ell, f).entries != linalg.transpose(hermite_R(ell, m, f).entries)
    return _fails(bad, n, "identities")


@check("isomorphisms")
def hermite_equivariance(ctx):
    rng = ctx.rng("hermite_equivariance")
    bad = n = 0
    for f in ctx.pick(QQ, GF2, GF3):
        for m in range(1, 4):
            for ell in range(1, 4):
                R = hermite_R(m, ell, f)
                for _ in range(3):
                    g = random_gl2(rng, f)
                    a = linalg.matmul(R.entries, gl2_matrix(g, R.source), f)
                    b = linalg.matmul(gl2_matrix(g, R.target), R.entries, f)
                    n += 1
                    bad += a != b
    return _fails(bad, n, "samples")


@check("isomorphisms")
def k_equivariance(ctx):
    rng = ctx.rng("k_equivariance")
    bad = n = 0
    for f in ctx.pick(QQ, GF2, GF3):
        for _ in range(50):
            ell, m = rng.randint(1, 3), rng.randint(1, 3)
            p = random_invariant(rng, ell, m, f)
            g = random_gl2(rng, f)
            n += 1
            bad += k_forward(gl2_poly_action(g, p), ell, m) != gl2_action(g, k_forward(p, ell, m))
    return _fails(bad, n, "samples")


@check("isomorphisms")
def k_round_trip(ctx):
    rng = ctx.rng("k_round_trip")
    bad = n = 0
    for f in ctx.pick(QQ, GF2, GF3):
        for _ in range(50):
            ell, m = rng.randint(1, 3), rng.randint(1, 3)
            v = random_vector(rng, SpaceDescriptor(Shape.SYM_OF_DIVIDED, m, ell, f), 0.7)
            n += 1
            bad += k_forward(k_inverse(v), ell, m) != v
    return _fails(bad, n, "vectors")


@check("isomorphisms")
def k_multiplicative(ctx):
    rng = ctx.rng("k_multiplicative")
    bad = n = 0
    for f in ctx.pick(QQ, GF2, GF3):
        for _ in range(10):
            ell = rng.randint(1, 3)
            m1, m2 = rng.randint(1, 2), 1
            p, q = random_invariant(rng, ell, m1, f), random_invariant(rng, ell, m2, f)
            n += 1
            bad += k_forward(p * q, ell, m1 + m2) != sym_product(k_forward(p, ell, m1), k_forward(q, ell, m2))
    return _fails(bad, n, "pairs")


@check("isomorphisms")
def closure_basis_rank(ctx):
    bad = n = 0
    detail = []
    for f in ctx.pick(QQ, GF2):
        for ell, m in ((2, 2), (2, 3), (3, 2), (3, 3)):
            r = polynomial_rank(closure_invariant_basis(ell, m, f))
            n += 1
            bad += r != comb(m + ell, ell)
            detail.append(f"{f}:({ell},{m})={r}")
    ok, d = _fails(bad, n, "ranks")
    return ok, d + " " + " ".join(detail)


@check("isomorphisms")
def iso_I_invertible(ctx):
    bad = n = 0
    for f in ctx.pick(QQ, GF2, GF3):
        for m in range(1, 4):
            for ell in range(1, 4):
                n += 1
                bad += not iso_I(m, ell, f).is_invertible()
    return _fails(bad, n, "matrices")


# -- invariant hunter ------------------------------------------------------------------------

@check("invariant_hunter")
def transvections_generate_sl2_f2(ctx):
    order = len(group_closure(sl_generators(2, 2), 2))
    return order == 6, f"|<transvections>| = {order}"


@check("invariant_hunter")
def generators_equal_full_group(ctx):
    bad = n = 0
    for d in range(1, 6):
        n += 1
        bad += full_group_fixed_subspace(2, d, 2) != fixed_subspace(2, d, 2).fixed_rows
    return _fails(bad, n, "degrees")


@check("invariant_hunter")
def determinant_powers_fixed(ctx):
    bad = n = 0
    for p in ctx.primes(2, 3, 5):
        for ell, d in ((2, 2), (2, 4), (2, 6), (3, 3)):
            rep = fixed_subspace(ell, d, p)
            n += 1
            bad += rep.dim_closure_span != 1 or not in_span(determinant(ell, "X", FieldSpec.prime(p)) ** (d // ell), rep.fixed_basis)
    return _fails(bad, n, "(ell, d, p)")


@check("invariant_hunter")
def two_slice_strict_containment(ctx):
    bad = n = 0
    detail = []
    for p in ctx.primes(2, 3):
        for m in (2, 3):
            rep = fixed_subspace(2, 2 * m, p, "two")
            span = closure_span(2, 2 * m, FieldSpec.prime(p), Slices.TWO)
            n += 1
            contained = all(in_span(q, rep.fixed_basis) for q in span)
            bad += not contained or rep.dim_closure_span != comb(m + 2, 2) or rep.dim_fq_invariants <= comb(m + 2, 2)
            detail.append(f"F{p} d={2 * m}: {rep.dim_fq_invariants}>{rep.dim_closure_span}")
    ok, d = _fails(bad, n, "parameter sets")
    return ok, d + " " + "; ".join(detail)


@check("invariant_hunter")
def fixed_subspace_deterministic(ctx):
    a = fixed_subspace(2, 4, 3, "two").to_json()
    b = fixed_subspace(2, 4, 3, "two").to_json()
    return a == b, "repeat run identical" if a == b else "runs differ"


@check("invariant_hunter")
def listed_invariants(ctx):
    verdicts = verify_listed_invariants()
    bad = sum(not v.fixed for v in verdicts)
    strict = {}
    for v in verdicts:
        rep = fixed_subspace(v.ell, v.degree, v.field.modulus)
        strict[v.field] = strict.get(v.field, False) or rep.strict_superset
        if v.field == GF2 and v.in_closure_span:
            bad += 1
    bad += not all(strict.values())
    return bad == 0, f"{sum(v.fixed for v in verdicts)}/{len(verdicts)} fixed; strict superset per field: " + ", ".join(
        f"{k}={s}" for k, s in sorted(strict.items(), key=lambda kv: str(kv[0]))
    )


@check("invariant_hunter")
def lifted_invariants_fixed(ctx):
    bad = n = 0
    for v in verify_listed_invariants():
        d = v.degree
        for k in (0, 1, d):
            q = lift_invariant(v.polynomial, k)
            n += 1
            bad += not is_fixed(q, v.ell) or (k == d and q != v.polynomial)
    for f in ctx.fields:
        n += 1
        bad += lift_invariant(determinant(2, "X", f), 1) != mixed_determinant(2, 1, f)
    return _fails(bad, n, "lifts")


__all__ = [
    "CheckContext",
    "CheckResult",
    "REGISTRY",
    "random_gl2",
    "random_invariant",
    "random_scalar",
    "random_sl",
    "random_slice_polynomial",
    "random_vector",
    "run_suite",
    "suites",
]
