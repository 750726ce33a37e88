import pytest
import sympy
from helpers import sympy_det, to_sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from graphtorus.multipoly import (
    LinearForm,
    MultiPoly,
    PolyError,
    SymbolicMatrix,
    determinant,
    eval_mod_p,
    is_prime,
    permutation_determinant,
    span_dimension,
)

N = 3


def polys(n=N):
    exps = st.tuples(*[st.integers(0, 2)] * n)
    return st.dictionaries(exps, st.integers(-3, 3), max_size=4).map(lambda d: MultiPoly(n, d))


def sym_matrices(h, n):
    coeff = st.lists(st.integers(-1, 1), min_size=n, max_size=n)
    upper = st.lists(coeff, min_size=h * (h + 1) // 2, max_size=h * (h + 1) // 2)

    def build(vals):
        rows = [[None] * h for _ in range(h)]
        k = 0
        for i in range(h):
            for j in range(i, h):
                rows[i][j] = rows[j][i] = vals[k]
                k += 1
        return SymbolicMatrix.from_rows(rows, n)

    return upper.map(build)


@given(polys(), polys(), polys())
@settings(max_examples=100, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == MultiPoly.zero(N)
    assert a * 1 == a


@given(polys(), polys())
@settings(max_examples=60, deadline=None)
def test_product_matches_sympy(a, b):
    ea, xs = to_sympy(a)
    eb, _ = to_sympy(b)
    ours, _ = to_sympy(a * b)
    assert sympy.expand(ea * eb - ours) == 0


def test_canonical_string_and_order():
    x = [MultiPoly.var(i, 3) for i in (1, 2, 3)]
    p = x[0] * x[1] - x[2] ** 2 + 2
    assert p.to_str() == "x1*x2 - x3^2 + 2"
    assert p.exponents()[0] == (1, 1, 0)


def test_json_round_trip():
    p = MultiPoly(2, {(1, 0): 3, (0, 2): -1})
    assert MultiPoly.from_json(p.to_json()) == p
    assert MultiPoly.from_json([], 4) == MultiPoly.zero(4)
    with pytest.raises(PolyError):
        MultiPoly.from_json([])


def test_homogeneity():
    x1, x2 = MultiPoly.var(1, 2), MultiPoly.var(2, 2)
    assert (x1 * x2 + x2**2).is_homogeneous() == 2
    assert (x1 + x2**2).is_homogeneous() is None
    assert MultiPoly.zero(2).is_homogeneous() == 0


def test_variable_mismatch_rejected():
    with pytest.raises(PolyError):
        MultiPoly.var(1, 2) + MultiPoly.var(1, 3)
    with pytest.raises(PolyError):
        MultiPoly.var(3, 2)


def test_substitute_and_compose():
    x1, x2 = MultiPoly.var(1, 2), MultiPoly.var(2, 2)
    p = x1 * x2
    q = p.extend(3).substitute(1, LinearForm((1, 0, 1)))
    assert q.to_str() == "x1*x2 + x2*x3"
    swapped = p.compose([LinearForm((0, 1)), LinearForm((1, 0))])
    assert swapped == p
    assert (x1 + 2 * x2).evaluate([3, 4]) == 11


@pytest.mark.parametrize("h", [1, 2, 3, 4])
def test_determinant_matches_leibniz_and_sympy(h):
    import random

    rng = random.Random(h)
    n = 4
    for _ in range(5):
        rows = [[None] * h for _ in range(h)]
        for i in range(h):
            for j in range(i, h):
                rows[i][j] = rows[j][i] = [rng.randint(-2, 2) for _ in range(n)]
        m = SymbolicMatrix.from_rows(rows, n)
        d = determinant(m)
        assert d == permutation_determinant(m)
        expr, _ = sympy_det(m)
        ours, _ = to_sympy(d)
        assert sympy.expand(expr - ours) == 0


@given(sym_matrices(3, 3))
@settings(max_examples=40, deadline=None)
def test_determinant_unimodular_invariance(m):
    # det(S^T M S) = det(M) for det S = +-1
    s = [[1, 1, 0], [0, 1, -1], [0, 0, -1]]
    assert determinant(m.congruent(s)) == determinant(m)


def test_determinant_bound():
    m = SymbolicMatrix.from_rows([[[1 if i == j else 0] for j in range(9)] for i in range(9)], 1)
    with pytest.raises(PolyError):
        determinant(m)
    assert determinant(m, bound=9) == MultiPoly.var(1, 1) ** 9


def test_symmetry_enforced():
    with pytest.raises(PolyError):
        SymbolicMatrix.from_rows([[[1, 0], [0, 1]], [[1, 0], [0, 1]]], 2)


def test_span_dimension_and_primes():
    forms = [LinearForm((1, 1, 0)), LinearForm((0, 1, 1)), LinearForm((1, 2, 1))]
    assert span_dimension(forms) == 2
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]
    f = MultiPoly(2, {(2, 0): 1, (0, 1): 1})
    assert eval_mod_p(f, [2, 1], 5) == 0
    with pytest.raises(PolyError):
        eval_mod_p(f, [1, 1], 4)
