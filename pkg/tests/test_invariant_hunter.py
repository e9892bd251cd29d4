import json
import random
from math import comb

import pytest
import sympy
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from hermite_lab.errors import BudgetExceeded, DegreeMismatch, FixtureParse
from hermite_lab.field import GF2, GF3, FieldSpec
from hermite_lab.invariant_hunter import (
    Slices,
    action_matrix,
    closure_span,
    fixed_subspace,
    full_group_fixed_subspace,
    group_closure,
    in_span,
    is_fixed,
    lift_invariant,
    load_listed_invariants,
    monomial_basis,
    monomial_count,
    parse_matrix_polynomial,
    sl_generators,
    verify_listed_invariants,
)
from hermite_lab.polyring import Polynomial, determinant, matrix_ring, mixed_determinant, var_index


def A(ring, i, j):
    return Polynomial.variable(ring, var_index(ring.ell, "X", i, j))


# -- independent oracle: sympy substitution and rank over GF(p) -----------------------------------

def sympy_action_matrix(g1, g2, basis, ell, p, two=False):
    """Substitute ``A_ij -> sum_ab g1[a][i] g2[b][j] A_ab`` symbolically and read off coefficients."""
    X = [[sympy.Symbol(f"x{i}{j}") for j in range(ell)] for i in range(ell)]
    Y = [[sympy.Symbol(f"y{i}{j}") for j in range(ell)] for i in range(ell)]
    gens = [X[i][j] for i in range(ell) for j in range(ell)] + [Y[i][j] for i in range(ell) for j in range(ell)]
    sub = {}
    for S in (X, Y):
        for i in range(ell):
            for j in range(ell):
                sub[S[i][j]] = sum(g1[a][i] * g2[b][j] * S[a][b] for a in range(ell) for b in range(ell))
    pos = {e: k for k, e in enumerate(basis)}
    M = [[0] * len(basis) for _ in basis]
    for col, e in enumerate(basis):
        mono = sympy.prod([v**k for v, k in zip(gens, e)])
        img = sympy.Poly(sympy.expand(mono.xreplace(sub)), *gens, modulus=p)
        for exps, c in img.terms():
            M[pos[tuple(exps)]][col] = int(c) % p
    return M


def oracle_fixed_dimension(ell, d, p, slices):
    basis = monomial_basis(ell, d, slices)
    n = len(basis)
    ident = [[int(i == j) for j in range(ell)] for i in range(ell)]
    blocks = []
    for g in sl_generators(ell, p):
        for pair in ((g, ident), (ident, g)):
            M = sympy_action_matrix(*pair, basis, ell, p)
            blocks.extend([[(M[i][j] - (i == j)) % p for j in range(n)] for i in range(n)])
    rank = DomainMatrix([[GF(p)(x) for x in row] for row in blocks], (len(blocks), n), GF(p)).rank()
    return n - rank


# -- generators and the group -----------------------------------------------------------------------

def test_sl_generators():
    assert sl_generators(2, 2) == [[[1, 1], [0, 1]], [[1, 0], [1, 1]]]
    assert len(sl_generators(3, 3)) == 6
    with pytest.raises(ValueError):
        sl_generators(1, 2)


@pytest.mark.parametrize("ell,p,order", [(2, 2, 6), (2, 3, 24), (2, 5, 120)])
def test_generated_group_is_all_of_sl(ell, p, order):
    G = group_closure(sl_generators(ell, p), p)
    assert len(G) == order
    f = FieldSpec.prime(p)
    dets = {f.reduce(g[0][0] * g[1][1] - g[0][1] * g[1][0]) for g in G}
    assert dets == {1}


# -- action matrices and fixed spaces ---------------------------------------------------------------

def test_monomial_basis_counts():
    assert len(monomial_basis(2, 4, Slices.ONE)) == monomial_count(4, 4) == 35
    assert len(monomial_basis(2, 3, Slices.TWO)) == monomial_count(8, 3) == 120
    assert all(sum(e[4:]) == 0 for e in monomial_basis(2, 3, Slices.ONE))


@pytest.mark.parametrize("p", [2, 3])
def test_action_matrix_matches_symbolic_substitution(p):
    f = FieldSpec.prime(p)
    rng = random.Random(p)
    for d in (1, 2, 3):
        basis = monomial_basis(2, d, Slices.TWO)
        g1 = [[rng.randrange(p) for _ in range(2)] for _ in range(2)]
        g2 = sl_generators(2, p)[1]
        if (g1[0][0] * g1[1][1] - g1[0][1] * g1[1][0]) % p == 0:
            g1 = sl_generators(2, p)[0]
        assert action_matrix(g1, g2, basis, 2, f) == sympy_action_matrix(g1, g2, basis, 2, p)


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4), (3, 6)])
def test_one_slice_fixed_dimension_against_oracle(p, d):
    rep = fixed_subspace(2, d, p, "one")
    assert rep.dim_fq_invariants == oracle_fixed_dimension(2, d, p, Slices.ONE)
    for q in rep.fixed_basis:
        assert is_fixed(q, 2)


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (3, 2)])
def test_two_slice_fixed_dimension_against_oracle(p, d):
    rep = fixed_subspace(2, d, p, "two")
    assert rep.dim_fq_invariants == oracle_fixed_dimension(2, d, p, Slices.TWO)


def test_fixed_subspace_examples():
    r2 = matrix_ring(GF2, 2)
    rep = fixed_subspace(2, 3, 2, "one")
    assert rep.dim_fq_invariants >= 1 and rep.dim_closure_span == 0
    cubic = A(r2, 2, 2) * A(r2, 1, 1) ** 2 + A(r2, 2, 2) ** 2 * A(r2, 1, 1) + A(r2, 1, 2) * A(r2, 2, 1) ** 2 + A(r2, 1, 2) ** 2 * A(r2, 2, 1)
    assert in_span(cubic, rep.fixed_basis)
    rep = fixed_subspace(2, 2, 2, "one")
    det = A(r2, 1, 1) * A(r2, 2, 2) + A(r2, 1, 2) * A(r2, 2, 1)
    assert det == determinant(2, "X", GF2)
    assert in_span(det, rep.fixed_basis) and rep.dim_closure_span == 1
    r3 = matrix_ring(GF3, 2)
    q = A(r3, 1, 2) ** 2 * A(r3, 2, 1) ** 2 + A(r3, 1, 1) * A(r3, 1, 2) * A(r3, 2, 2) * A(r3, 2, 1) + A(r3, 1, 1) ** 2 * A(r3, 2, 2) ** 2
    assert in_span(q, fixed_subspace(2, 4, 3, "one").fixed_basis)
    assert q == determinant(2, "X", GF3) ** 2


def test_closure_span_inside_fixed_space():
    for p in (2, 3):
        f = FieldSpec.prime(p)
        for d in (2, 4, 6):
            rep = fixed_subspace(2, d, p, "one")
            assert rep.dim_closure_span == 1
            assert all(in_span(q, rep.fixed_basis) for q in rep.closure_span)
        for d in (2, 4):
            rep = fixed_subspace(2, d, p, "two")
            assert rep.dim_closure_span == comb(d // 2 + 2, 2)
            assert all(in_span(q, rep.fixed_basis) for q in closure_span(2, d, f, Slices.TWO))


@pytest.mark.parametrize("p", [2, 3])
def test_two_slice_strict_superset(p):
    for d in (4, 6):
        rep = fixed_subspace(2, d, p, "two")
        assert rep.dim_fq_invariants > comb(d // 2 + 2, 2)
        assert rep.strict_superset
        assert len(rep.extra_basis) == rep.dim_fq_invariants - rep.dim_closure_span


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_generator_fixed_space_equals_full_group_fixed_space(d):
    assert fixed_subspace(2, d, 2, "one").fixed_rows == full_group_fixed_subspace(2, d, 2, "one")


def test_full_group_check_two_slices():
    assert fixed_subspace(2, 2, 2, "two").fixed_rows == full_group_fixed_subspace(2, 2, 2, "two")


def test_fixed_subspace_is_deterministic():
    a = fixed_subspace(2, 5, 2, "one")
    b = fixed_subspace(2, 5, 2, "one")
    assert a.fixed_rows == b.fixed_rows
    assert json.dumps(a.to_json(), sort_keys=True) == json.dumps(b.to_json(), sort_keys=True)


def test_budget():
    with pytest.raises(BudgetExceeded):
        fixed_subspace(2, 6, 2, "two", budget=100)
    with pytest.raises(BudgetExceeded):
        fixed_subspace(3, 9, 3, "two")


# -- listed invariants ------------------------------------------------------------------------------

def test_fixture_loads():
    rows = load_listed_invariants()
    fields = [(str(f), d) for f, _, d, _ in rows]
    assert fields.count(("Fp:2", 5)) == 2 and fields.count(("Fp:2", 6)) == 4
    assert ("Fp:3", 4) in fields and ("Fp:3", 6) in fields
    assert len(rows) == 10


def test_listed_invariants_verdicts():
    verdicts = verify_listed_invariants()
    assert all(v.fixed for v in verdicts)
    for v in verdicts:
        if v.degree % 2:
            assert not v.in_closure_span
    inside = [(str(v.field), v.degree) for v in verdicts if v.in_closure_span]
    assert inside == [("Fp:3", 4)]


def test_quintic_listing():
    r = matrix_ring(GF2, 2)
    q = A(r, 2, 2) * A(r, 1, 1) ** 4 + A(r, 2, 2) ** 4 * A(r, 1, 1) + A(r, 1, 2) * A(r, 2, 1) ** 4 + A(r, 1, 2) ** 4 * A(r, 2, 1)
    listed = [poly for f, _, d, poly in load_listed_invariants() if f == GF2 and d == 5]
    assert q in listed
    assert is_fixed(q, 2) and not in_span(q, closure_span(2, 5, GF2, Slices.ONE))


def test_corrupted_fixture_fails():
    data = json.loads(json.dumps({"entries": [
        {"field": "Fp:2", "ell": 2, "degree": 3,
         "polynomial": "A_{2,2} A_{1,1}^2+A_{2,2}^2 A_{1,1}+A_{1,2} A_{2,1}^2"},
    ]}))
    (v,) = verify_listed_invariants(data)
    assert not v.fixed


@pytest.mark.parametrize("text", ["", "A_{3,1}", "A_{1,1}*A_{2,2}", "B_{1,1}", "A_{1,1}^"])
def test_parse_errors(text):
    with pytest.raises(FixtureParse):
        parse_matrix_polynomial(text, 2, GF2)


def test_malformed_fixtures():
    with pytest.raises(FixtureParse):
        load_listed_invariants({"entries": [{"field": "Fp:2", "ell": 2}]})
    with pytest.raises(FixtureParse):
        load_listed_invariants({"entries": [{"field": "Fp:2", "ell": 2, "degree": 4, "polynomial": "A_{1,1}^3"}]})


def test_parse_examples():
    r = matrix_ring(GF3, 2)
    got = parse_matrix_polynomial("2 A_{1,1}^2A_{2,2} - A_{1,2}", 2, GF3)
    assert got == (A(r, 1, 1) ** 2 * A(r, 2, 2)).scale(2) - A(r, 1, 2)


# -- lifting --------------------------------------------------------------------------------------

def test_lift_examples():
    for f in (GF2, GF3):
        det = determinant(2, "X", f)
        assert lift_invariant(det, 2) == det
        assert lift_invariant(det, 1) == mixed_determinant(2, 1, f)
    with pytest.raises(DegreeMismatch):
        lift_invariant(determinant(2, "X", GF2), 3)


def test_lifted_listed_invariants_are_fixed():
    for f, ell, d, poly in load_listed_invariants():
        if d > 5:
            continue
        for k in range(d + 1):
            assert is_fixed(lift_invariant(poly, k), ell)
    cubic = [poly for f, _, d, poly in load_listed_invariants() if d == 3][0]
    lifted = lift_invariant(cubic, 1)
    assert lifted.is_homogeneous(3) and is_fixed(lifted, 2)
    assert in_span(lifted, fixed_subspace(2, 3, 2, "two").fixed_basis)
