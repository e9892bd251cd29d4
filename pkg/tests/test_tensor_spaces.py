import json
import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from hermite_lab.errors import RangeViolation, ShapeMismatch, SingularMatrix
from hermite_lab.field import GF2, GF3, GF5, QQ, FieldSpec
from hermite_lab import linalg
from hermite_lab.tensor_spaces import (
    Shape,
    SpaceDescriptor,
    SparseVector,
    duality_pairing,
    gl2_action,
    gl2_matrix,
    gl2_on_divided_generator,
    iter_gl2,
    standard_basis,
    sym_product,
    transpose2,
    wedge_normalize,
)

from oracles import (
    divided_generator_word_oracle,
    divided_of_sym_oracle,
    sym_of_divided_oracle,
    wedge_action_oracle,
)

FIELDS = [QQ, GF2, GF3, GF5]


def raw(cs):
    return [c.raw for c in cs]


def test_standard_basis_examples():
    d = SpaceDescriptor(Shape.SYM_OF_DIVIDED, 2, 2, QQ)
    assert set(standard_basis(d)) == {(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)}
    assert standard_basis(SpaceDescriptor(Shape.DIVIDED_OF_SYM, 1, 3, QQ)) == ((0,), (1,), (2,), (3,))
    assert set(standard_basis(SpaceDescriptor(Shape.WEDGE_OF_SYM, 2, 1, QQ))) == {(2, 1), (2, 0), (1, 0)}


@pytest.mark.parametrize("shape", list(Shape))
def test_dimensions(shape):
    for m in range(1, 7):
        for ell in range(1, 7):
            d = SpaceDescriptor(shape, m, ell, QQ)
            assert len(standard_basis(d)) == comb(m + ell, ell) == d.dimension


def test_wedge_normalize_examples():
    d = SpaceDescriptor(Shape.WEDGE_OF_SYM, 2, 2, QQ)
    sign, idx = wedge_normalize((1, 2), d)
    assert sign == QQ.element(-1) and idx.parts == (2, 1)
    d2 = SpaceDescriptor(Shape.WEDGE_OF_SYM, 2, 2, GF2)
    assert wedge_normalize((1, 2), d2)[0] == GF2.element(1)
    assert wedge_normalize((2, 2), d) is None
    d3 = SpaceDescriptor(Shape.WEDGE_OF_SYM, 3, 1, QQ)
    sign, idx = wedge_normalize((0, 2, 1), d3)
    assert sign == QQ.element(1) and idx.parts == (2, 1, 0)
    with pytest.raises(RangeViolation):
        wedge_normalize((5, 0), d)


def test_divided_generator_examples():
    g = [[1, 1], [0, 1]]
    assert raw(gl2_on_divided_generator(g, 1, 2, QQ)) == [0, 1, 2]
    assert raw(gl2_on_divided_generator(g, 1, 2, GF2)) == [0, 1, 0]
    for ell in range(1, 5):
        for k in range(ell + 1):
            assert raw(gl2_on_divided_generator([[1, 0], [0, 1]], k, ell, QQ)) == [int(j == k) for j in range(ell + 1)]
            assert raw(gl2_on_divided_generator([[0, 1], [1, 0]], k, ell, QQ)) == [int(j == ell - k) for j in range(ell + 1)]
    with pytest.raises(SingularMatrix):
        gl2_on_divided_generator([[1, 1], [1, 1]], 0, 2, QQ)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_divided_generator_against_word_oracle_all_of_gl2(p):
    f = FieldSpec.prime(p)
    for g in iter_gl2(f):
        for ell in range(1, 4):
            for k in range(ell + 1):
                assert raw(gl2_on_divided_generator(g, k, ell, f)) == divided_generator_word_oracle(g, k, ell, p)


def test_defining_representation():
    d = SpaceDescriptor(Shape.SYM_OF_DIVIDED, 1, 1, QQ)
    g = [[2, 3], [5, 7]]
    img = gl2_action(g, SparseVector.basis(d, (1,)))
    assert img.terms == {(1,): 2, (0,): 5}


def _random_g(rng, f):
    while True:
        g = [[f.reduce(rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
        if linalg.det(g, f) != 0:
            return g


@pytest.mark.parametrize("f", [QQ, GF3])
def test_sym_of_divided_action_against_sympy(f):
    rng = random.Random(1)
    for _ in range(6):
        g = _random_g(rng, f)
        for m, ell in [(2, 2), (3, 1), (2, 3)]:
            d = SpaceDescriptor(Shape.SYM_OF_DIVIDED, m, ell, f)
            for lam in standard_basis(d):
                assert gl2_action(g, SparseVector.basis(d, lam)).terms == sym_of_divided_oracle(g, lam, ell, f.modulus)


@pytest.mark.parametrize("f", [QQ, GF2])
def test_divided_of_sym_action_against_sympy(f):
    rng = random.Random(2)
    for _ in range(6):
        g = _random_g(rng, f)
        for m, ell in [(2, 2), (3, 1), (2, 3)]:
            d = SpaceDescriptor(Shape.DIVIDED_OF_SYM, m, ell, f)
            for lam in standard_basis(d):
                assert gl2_action(g, SparseVector.basis(d, lam)).terms == divided_of_sym_oracle(g, lam, ell, f.modulus)


@pytest.mark.parametrize("shape", [Shape.WEDGE_OF_SYM, Shape.WEDGE_OF_DIVIDED])
@pytest.mark.parametrize("f", [QQ, GF3])
def test_wedge_action_against_minors(shape, f):
    rng = random.Random(3)
    for _ in range(4):
        g = _random_g(rng, f)
        for m, ell in [(2, 2), (2, 1), (3, 2)]:
            d = SpaceDescriptor(shape, m, ell, f)
            M = gl2_matrix(g, d)
            basis = standard_basis(d)
            oracle = wedge_action_oracle(g, shape is Shape.WEDGE_OF_DIVIDED, d.slots, d.top, f.modulus)
            got = {(basis[i], basis[j]): M[i][j] for i in range(len(basis)) for j in range(len(basis)) if M[i][j]}
            assert got == oracle


@st.composite
def action_case(draw):
    f = draw(st.sampled_from([QQ, GF2, GF3]))
    shape = draw(st.sampled_from(list(Shape)))
    m, ell = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    d = SpaceDescriptor(shape, m, ell, f)
    basis = standard_basis(d)
    rng = random.Random(draw(st.integers(0, 2**32)))
    v = SparseVector(d, {b: f.reduce(rng.randint(-3, 3)) for b in basis})
    return f, v, _random_g(rng, f), _random_g(rng, f)


@given(action_case())
def test_gl2_is_a_left_action(case):
    f, v, g, h = case
    assert gl2_action([[1, 0], [0, 1]], v) == v
    assert gl2_action(g, gl2_action(h, v)) == gl2_action(linalg.matmul(g, h, f), v)


@given(action_case())
def test_pairing_is_contragredient(case):
    f, v, g, _ = case
    d = v.descriptor
    rng = random.Random(0)
    w = SparseVector(d.dual(), {b: f.reduce(rng.randint(-3, 3)) for b in standard_basis(d.dual())})
    if d.shape in (Shape.SYM_OF_DIVIDED, Shape.WEDGE_OF_SYM):
        a, b = duality_pairing(gl2_action(g, v), w), duality_pairing(v, gl2_action(transpose2(g), w))
    else:
        a, b = duality_pairing(w, gl2_action(g, v)), duality_pairing(gl2_action(transpose2(g), w), v)
    assert a == b


def test_pairing_examples_and_gram():
    d = SpaceDescriptor(Shape.SYM_OF_DIVIDED, 1, 2, QQ)  # F(j) in Sym_2
    dual = d.dual()  # monomials x^j y^(2-j)
    assert duality_pairing(SparseVector.basis(d, (2,)), SparseVector.basis(dual, (2,))) == QQ.element(1)
    assert duality_pairing(SparseVector.basis(d, (2,)), SparseVector.basis(dual, (1,))) == QQ.element(0)
    for f in FIELDS:
        for n in range(1, 5):
            for m in range(1, n + 1):
                for shape in (Shape.SYM_OF_DIVIDED, Shape.WEDGE_OF_SYM):
                    d = SpaceDescriptor(shape, m, n, f)
                    fb, tb = standard_basis(d), standard_basis(d.dual())
                    gram = [[duality_pairing(SparseVector.basis(d, a), SparseVector.basis(d.dual(), b)).raw for b in tb] for a in fb]
                    assert gram == linalg.identity(len(fb))
    with pytest.raises(ShapeMismatch):
        duality_pairing(SparseVector.basis(d, fb[0]), SparseVector.basis(d, fb[0]))


def test_sparse_vector_json_round_trip():
    d = SpaceDescriptor(Shape.SYM_OF_DIVIDED, 2, 2, GF3)
    v = SparseVector(d, {(2, 1): 2, (0, 0): 1})
    obj = v.to_json()
    assert obj["space"] == {"shape": "SymOfDivided", "m": 2, "ell": 2, "field": "Fp:3"}
    assert {"index": [2, 1], "coeff": "2"} in obj["terms"]
    assert SparseVector.from_json(json.loads(json.dumps(obj))) == v
    q = SparseVector(SpaceDescriptor(Shape.SYM_OF_DIVIDED, 1, 1, QQ), {(1,): QQ.reduce(__import__("fractions").Fraction(1, 2))})
    assert q.to_json()["terms"][0]["coeff"] == "1/2"
    assert SparseVector.from_json(q.to_json()) == q


def test_vector_arithmetic_and_zero_pruning():
    d = SpaceDescriptor(Shape.SYM_OF_DIVIDED, 1, 2, GF2)
    v = SparseVector(d, {(1,): 1, (0,): 0})
    assert v.support() == [(1,)]
    assert (v + v).is_zero()
    assert (v - v).is_zero()
    with pytest.raises(ShapeMismatch):
        v + SparseVector(SpaceDescriptor(Shape.SYM_OF_DIVIDED, 1, 2, GF3))


def test_sym_product_multiplies_monomials():
    d1 = SpaceDescriptor(Shape.SYM_OF_DIVIDED, 1, 2, QQ)
    v = SparseVector(d1, {(2,): 1, (0,): 1})
    w = sym_product(v, v)
    assert w.descriptor.m == 2
    assert w.terms == {(2, 2): 1, (2, 0): 2, (0, 0): 1}
