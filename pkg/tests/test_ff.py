"""Field arithmetic, dense linear algebra, and Lucas binomials.

Oracles: an in-test exhaustive irreducibility scan (trial division by all
lower-degree monic polynomials), integer powering for element orders, sympy's
DomainMatrix over GF(p) for ranks, math.comb for binomials, and exhaustive
kernel counting over tiny extension fields.
"""

import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from frobpow.ff import (
    CapExceeded,
    Field,
    FieldElem,
    MatrixFq,
    _tables,
    binom_mod_p,
    embed,
    make_field,
    nullspace,
    nullspace_codes,
    rank_codes,
    root_of_unity,
)

F2, F3, F5, F7 = make_field(2), make_field(3), make_field(5), make_field(7)
F4, F8, F9, F25, F27, F49, F81 = (
    make_field(2, 2), make_field(2, 3), make_field(3, 2), make_field(5, 2),
    make_field(3, 3), make_field(7, 2), make_field(3, 4),
)
ALL_FIELDS = [F2, F3, F5, F7, F4, F8, F9, F25, F27, F49]

fields_st = st.sampled_from(ALL_FIELDS)


@st.composite
def field_and_elems(draw, count=3):
    f = draw(fields_st)
    codes = draw(st.lists(st.integers(0, f.order - 1), min_size=count, max_size=count))
    return f, [f.decode(c) for c in codes]


# -- modulus selection ------------------------------------------------------

def _poly_rem(a, b, p):
    # remainder of a by monic b, coefficient lists low-to-high
    a = list(a)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            for j in range(db):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
        a[i] = 0
    return [c % p for c in a[:db]]


def _oracle_irreducible(mod, p):
    # trial division by every monic polynomial of degree 1..deg/2
    r = len(mod) - 1
    for d in range(1, r // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = list(tail) + [1]
            if not any(_poly_rem(mod, div, p)):
                return False
    return True


@pytest.mark.parametrize("p,r", [(2, 2), (3, 2), (5, 2), (7, 2), (2, 3), (3, 3), (2, 4), (2, 6)])
def test_modulus_is_lex_smallest_irreducible(p, r):
    field = make_field(p, r)
    assert _oracle_irreducible(list(field.modulus), p)
    for tail in itertools.product(range(p), repeat=r):
        cand = list(tail) + [1]
        if cand == list(field.modulus):
            break
        assert not _oracle_irreducible(cand, p)


def test_make_field_pinned_moduli():
    assert make_field(2, 2).modulus == (1, 1, 1)  # x^2 + x + 1, the unique one
    assert make_field(3, 2).modulus == (1, 0, 1)  # x^2 + 1; x^2+x and x^2+2x have roots
    assert make_field(5).modulus == (0, 1)


def test_make_field_rejects_bad_input():
    with pytest.raises(ValueError, match="divisible by 2"):
        make_field(6)
    with pytest.raises(ValueError, match="divisible by 3"):
        make_field(9, 2)
    with pytest.raises(ValueError):
        make_field(1)
    with pytest.raises(ValueError):
        make_field(5, 0)
    with pytest.raises(ValueError, match="reducible"):
        Field(2, 2, (0, 0, 1))  # x^2
    with pytest.raises(ValueError):
        Field(2, 2, (1, 1))  # not degree r
    with pytest.raises(ValueError):
        Field(2, 2, (1, 1, 2))  # not monic after reduction
    with pytest.raises(ValueError):
        Field(5, 0, (0, 1))
    with pytest.raises(ValueError):
        Field(2, 1, (1, 1, 1))  # r = 1 takes the placeholder only
    assert make_field(23).p == 23  # trial division walks odd candidates and exits


# -- element arithmetic -----------------------------------------------------

def _check_axioms(f, a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a + f.zero() == a
    assert a * f.one() == a
    assert a - a == f.zero()
    assert a + (-a) == f.zero()
    if a:
        assert a * a.inverse() == f.one()
        assert (b / a) * a == b


def test_field_axioms_random():
    rng = random.Random(20260822)
    for f in ALL_FIELDS:
        for _ in range(1000):
            a, b, c = (f.decode(rng.randrange(f.order)) for _ in range(3))
            _check_axioms(f, a, b, c)


@given(field_and_elems())
def test_field_axioms_property(fe):
    f, (a, b, c) = fe
    _check_axioms(f, a, b, c)


def test_frobenius_exhaustive():
    for f in [F2, F3, F5, F7, F4, F8, F9, F25, F27, F49, F81]:
        assert f.order <= 81
        els = list(f.elements())
        for a in els:
            assert a ** f.order == a
            for b in els:
                assert (a + b) ** f.p == a ** f.p + b ** f.p


def test_int_coercion_and_division():
    a = F5.elem(3)
    assert 2 + a == F5.elem(0) and a - 4 == 4 and 1 - a == 3
    assert 2 * a == 1 and a / 2 == 4 and 2 / a == 4
    assert a ** -1 == 2 and F5.elem(7) == 2
    assert F4.elem([1, 1]) * F4.elem([0, 1]) == F4.elem(1)  # (1+x)x = x+x^2 = 1


def test_elem_validation():
    with pytest.raises(ZeroDivisionError):
        F5.zero().inverse()
    with pytest.raises(ValueError, match="field mismatch"):
        F5.elem(1) + F3.elem(1)
    with pytest.raises(ValueError):
        F4.elem([1, 0, 1])
    with pytest.raises(ValueError):
        F4.elem(F9.elem(1))
    assert F4.elem(F4.one()) == F4.one()
    with pytest.raises(ValueError):
        F5.zero().order()


def test_unrelated_operands():
    a = F5.elem(3)
    for op in (lambda: a + "x", lambda: a - "x", lambda: "x" - a, lambda: a * "x",
               lambda: a / "x", lambda: "x" / a):
        with pytest.raises(TypeError):
            op()
    assert (a == "x") is False
    assert (a != "x") is True
    assert a ** 0 == F5.one()


def test_elements_lex_enumeration():
    for f in (F5, F4, F9):
        seen = [x.coeffs for x in f.elements_lex()]
        assert seen == sorted(seen) and len(seen) == f.order
        assert sorted(seen) == sorted(x.coeffs for x in f.elements())


# -- roots of unity ---------------------------------------------------------

def test_orders_in_f5_by_integer_powering():
    for base in range(2, 5):
        k = 1
        while pow(base, k, 5) != 1:
            k += 1
        assert F5.elem(base).order() == k
    assert F5.elem(2).order() == 4  # 2,4,3,1


def test_root_of_unity_examples():
    assert root_of_unity(F5, 1) == F5.one()
    assert root_of_unity(F5, 4) == F5.elem(2)
    assert root_of_unity(F4, 3).coeffs == (0, 1)  # the class of x


def test_root_of_unity_exact_order():
    for f in ALL_FIELDS:
        q1 = f.order - 1
        for e in range(1, q1 + 1):
            if q1 % e == 0:
                w = root_of_unity(f, e)
                assert w.order() == e
                assert w ** e == f.one()


def test_root_of_unity_lex_first():
    # independently scan coefficient-lex tuples for the first element of order e
    for f, e in [(F9, 4), (F4, 3), (F25, 8), (F7, 6)]:
        for coeffs in itertools.product(range(f.p), repeat=f.r):
            x = f.elem(coeffs)
            if x and x.order() == e:
                assert root_of_unity(f, e) == x
                break


def test_root_of_unity_error():
    with pytest.raises(ValueError, match="no primitive 3-th root of unity"):
        root_of_unity(F5, 3)
    with pytest.raises(ValueError):
        root_of_unity(F4, 2)
    with pytest.raises(ValueError):
        root_of_unity(F4, 0)


# -- linear algebra ---------------------------------------------------------

def test_nullspace_examples():
    assert nullspace(MatrixFq.identity(F3, 2)) == []
    m = MatrixFq.from_rows(F2, [[1, 1], [0, 0]])
    assert nullspace(m) == [(F2.one(), F2.one())]
    m = MatrixFq.from_rows(F5, [[1, 2, 3, 4]])
    basis = nullspace(m)
    assert len(basis) == 3  # rank 1 forces nullity 3
    expect = [(3, 1, 0, 0), (2, 0, 1, 0), (1, 0, 0, 1)]
    assert [[int(str(c)) for c in v] for v in basis] == [list(e) for e in expect]


def test_nullspace_empty_matrix():
    m = MatrixFq(F3, 0, 4, ())
    basis = nullspace(m)
    assert len(basis) == 4
    for i, v in enumerate(basis):
        assert [bool(c) for c in v] == [j == i for j in range(4)]


def _sympy_rank(rows, p):
    K = GF(p)
    shape = (len(rows), len(rows[0]))
    return DomainMatrix([[K(v) for v in row] for row in rows], shape, K).rank()


def test_rank_against_sympy():
    rng = random.Random(7)
    for p in (2, 3, 5, 7):
        f = make_field(p)
        for _ in range(40):
            nr, nc = rng.randrange(1, 7), rng.randrange(1, 9)
            rows = [[rng.randrange(p) for _ in range(nc)] for _ in range(nr)]
            assert rank_codes(rows, f) == _sympy_rank(rows, p)


@given(field_and_elems(count=0), st.integers(1, 5), st.integers(1, 6), st.integers(0, 10 ** 9))
def test_nullspace_annihilates_and_counts(fe, nr, nc, seed):
    f, _ = fe
    rng = random.Random(seed)
    rows = [[rng.randrange(f.order) for _ in range(nc)] for _ in range(nr)]
    basis = nullspace_codes(rows, f)
    rank = rank_codes(rows, f)
    assert rank + len(basis) == nc
    m = MatrixFq.from_rows(f, [[f.decode(v) for v in row] for row in rows])
    for vec in basis:
        image = m.apply(tuple(f.decode(int(v)) for v in vec))
        assert all(not c for c in image)
    if len(basis):
        assert rank_codes(basis, f) == len(basis)


def test_kernel_size_exhaustive_extension_fields():
    # |ker| = q^nullity, counted by brute enumeration of all vectors
    rng = random.Random(11)
    x = F4.elem([0, 1])
    crafted = [
        (F4, [[0, 1], [1, 1]]),          # pivot needs a row swap
        (F4, [[1, 0], [0, 1]]),          # nothing to eliminate
        (F4, [[x, x], [x, x]]),
        (F9, [[0, 0], [0, 1]]),
    ]
    cases = [(f, [[f.elem(v) for v in row] for row in rows]) for f, rows in crafted]
    for f in (F4, F9):
        for _ in range(6):
            nr, nc = rng.randrange(1, 4), rng.randrange(1, 4)
            cases.append((f, [[f.decode(rng.randrange(f.order)) for _ in range(nc)]
                              for _ in range(nr)]))
    for f, rows in cases:
        m = MatrixFq.from_rows(f, rows)
        count = 0
        for vec in itertools.product(list(f.elements()), repeat=m.cols):
            if all(not c for c in m.apply(vec)):
                count += 1
        nullity = len(nullspace(m))
        assert count == f.order ** nullity


def test_degenerate_shapes():
    import numpy as np
    from frobpow.ff import _ppowmod, _rref_codes
    assert rank_codes([], F5) == 0
    assert rank_codes(np.zeros((0, 5), dtype=np.int64), F5) == 0
    assert nullspace_codes([], F5).shape == (0, 0)
    assert nullspace_codes(np.zeros((2, 0), dtype=np.int64), F5).shape == (0, 0)
    assert _rref_codes(np.zeros((2, 0), dtype=np.int64), F5) == []
    assert _ppowmod([0, 1], 0, [1, 1, 1], 2) == [1]
    assert MatrixFq.from_rows(F2, []).rows == 0


def test_matrix_inverse():
    m = MatrixFq.from_rows(F5, [[1, 2], [3, 4]])
    inv = m.inverse()
    assert m * inv == MatrixFq.identity(F5, 2)
    assert inv * m == MatrixFq.identity(F5, 2)
    x = F4.elem([0, 1])
    m4 = MatrixFq.from_rows(F4, [[x, 1], [1, x]])
    assert m4 * m4.inverse() == MatrixFq.identity(F4, 2)
    with pytest.raises(ValueError, match="not invertible"):
        MatrixFq.from_rows(F5, [[1, 2], [2, 4]]).inverse()
    with pytest.raises(ValueError):
        MatrixFq.from_rows(F5, [[1, 2, 3], [4, 5, 6]]).inverse()


def test_matrix_det():
    assert MatrixFq.from_rows(F5, [[1, 2], [3, 4]]).det() == F5.elem(3)  # 4 - 6
    assert MatrixFq.from_rows(F5, [[1, 2], [2, 4]]).det() == F5.zero()
    assert MatrixFq.identity(F4, 3).det() == F4.one()
    swap = MatrixFq.from_rows(F3, [[0, 1], [1, 0]])
    assert swap.det() == -F3.one()
    x = F4.elem([0, 1])
    m = MatrixFq.from_rows(F4, [[x, 1], [1, x]])
    assert m.det() == x * x - F4.one()
    with pytest.raises(ValueError):
        MatrixFq.from_rows(F5, [[1, 2, 3]]).det()


def test_matrix_apply_matches_mul():
    m = MatrixFq.from_rows(F7, [[1, 2, 3], [4, 5, 6]])
    v = (F7.elem(1), F7.elem(0), F7.elem(2))
    col = MatrixFq(F7, 3, 1, v)
    assert m.apply(v) == (m * col).entries
    with pytest.raises(ValueError):
        m.apply((F7.one(),))
    with pytest.raises(ValueError):
        m * MatrixFq.identity(F7, 2)
    with pytest.raises(ValueError):
        m * MatrixFq.identity(F5, 3)
    with pytest.raises(TypeError):
        m * 3


# -- binomials --------------------------------------------------------------

def test_binom_mod_p_against_factorials():
    for p in (2, 3, 5, 7):
        for d in range(65):
            for i in range(d + 5):  # math.comb gives 0 past the diagonal too
                assert binom_mod_p(d, i, p) == math.comb(d, i) % p


def test_binom_mod_p_pinned():
    # d = 2*5^2 - 1 = 49 has base-5 digits (4,4,1); i = 1+5+25 = 31 digits (1,1,1)
    assert binom_mod_p(49, 31, 5) == 1
    assert binom_mod_p(6, 2, 2) == 1  # digits 110 vs 010
    assert binom_mod_p(12, 0, 3) == 1
    assert binom_mod_p(3, 5, 7) == 0
    assert binom_mod_p(5, -1, 5) == 0


# -- embeddings -------------------------------------------------------------

def test_embed_prime_subfield():
    assert embed(F2, F4, F2.one()) == F4.one()
    assert embed(F2, F4, F2.zero()) == F4.zero()
    assert embed(F3, F9, F3.elem(2)) == F9.elem(2)
    assert embed(F5, F5, F5.elem(3)) == F5.elem(3)


def test_embed_is_ring_hom():
    F16 = make_field(2, 4)
    pairs = [(F2, F4), (F4, F16), (F3, F27), (F9, make_field(3, 4))]
    for src, dst in pairs:
        images = {}
        for a in src.elements():
            images[a] = embed(src, dst, a)
        assert len(set(images.values())) == src.order  # injective
        for a in src.elements():
            for b in src.elements():
                assert embed(src, dst, a + b) == images[a] + images[b]
                assert embed(src, dst, a * b) == images[a] * images[b]
            if a:
                assert images[a].order() == a.order()


def test_embed_root_satisfies_modulus():
    F16 = make_field(2, 4)
    z = embed(F4, F16, F4.elem([0, 1]))
    acc = F16.zero()
    for c in reversed(F4.modulus):
        acc = acc * z + c
    assert not acc


def test_embed_errors():
    with pytest.raises(ValueError):
        embed(F4, F8, F4.one())  # 2 does not divide 3
    with pytest.raises(ValueError):
        embed(F2, F9, F2.one())  # characteristic mismatch
    with pytest.raises(ValueError):
        embed(F2, F4, F3.one())  # element from the wrong field


# -- serialization ----------------------------------------------------------

def test_textual_forms():
    assert str(make_field(5)) == "GF(5; modulus=[0,1])"
    assert str(make_field(3, 2)) == "GF(9; modulus=[1,0,1])"
    assert str(F5.elem(3)) == "3"
    assert str(F9.elem([2, 1])) == "[2,1]"
    assert F9.elem([2, 1]).to_json() == [2, 1]
    assert F5.elem(3).to_json() == [3]
    assert MatrixFq.identity(F2, 2).to_json() == [[[1], [0]], [[0], [1]]]


def test_encode_decode_roundtrip():
    for f in ALL_FIELDS:
        for code in range(f.order):
            assert f.encode(f.decode(code)) == code


def test_table_cap():
    with pytest.raises(CapExceeded):
        _tables(make_field(2, 13))
