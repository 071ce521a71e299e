"""Tests for the exact linear algebra kernel.

The characteristic polynomial has an independent oracle here (recursive
cofactor expansion over polynomial entries) so the library's
Faddeev-LeVerrier path is cross-checked rather than self-certified.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bannai_ito.exactlinalg import (
    Matrix,
    Poly,
    Roots,
    anticommutator,
    char_poly,
    is_squarefree,
    kernel_basis,
    min_poly,
    rational_roots,
    rref,
    spin,
    vec,
)

F = Fraction


# --- independent oracle -----------------------------------------------------

def poly_det(rows):
    """Determinant of a matrix of Poly entries by first-column expansion."""
    if len(rows) == 1:
        return rows[0][0]
    acc = Poly(())
    for i, row in enumerate(rows):
        if row[0].is_zero:
            continue
        minor = [r[1:] for k, r in enumerate(rows) if k != i]
        term = row[0] * poly_det(minor)
        acc = acc + term if i % 2 == 0 else acc - term
    return acc


def char_poly_cofactor(m):
    """det(xI - m) the slow, independent way."""
    n = m.nrows
    ent = [[Poly((-m[i, j], 1)) if i == j else Poly((-m[i, j],))
            for j in range(n)] for i in range(n)]
    return poly_det(ent)


# --- strategies ---------------------------------------------------------------

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=4)


def square_matrices(max_n=4):
    return st.integers(min_value=1, max_value=max_n).flatmap(
        lambda n: st.lists(
            st.lists(rationals, min_size=n, max_size=n),
            min_size=n, max_size=n,
        ).map(Matrix))


# fixed 4x4 examples: the upper-bidiagonal and lower-bidiagonal shapes the
# module constructors produce, frozen here as plain matrices
X4 = Matrix([
    ["-1/2", 0, 0, 0],
    [1, "-1/2", 0, 0],
    [0, 1, "3/2", 0],
    [0, 0, 1, "-5/2"],
])
Y4 = Matrix([
    ["-3/2", 1, 0, 0],
    [0, "1/2", 4, 0],
    [0, 0, "1/2", -3],
    [0, 0, 0, "-3/2"],
])


def test_rational_contract():
    # lowest terms, positive denominator, exact field ops
    assert F(2, 4) == F(1, 2)
    assert F(1, -2).denominator == 2 and F(1, -2).numerator == -1
    assert F(1, 3) + F(1, 6) == F(1, 2)
    assert F(1, 10) * 10 == 1
    assert str(F(-3, 2)) == "-3/2" and str(F(4)) == "4"


def test_matrix_basic_ops():
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix([[0, 1], [1, 0]])
    assert a + b == Matrix([[1, 3], [4, 4]])
    assert a - a == Matrix.zero(2)
    assert a * b == Matrix([[2, 1], [4, 3]])
    assert b * a == Matrix([[3, 4], [1, 2]])
    assert 2 * a == Matrix([[2, 4], [6, 8]])
    assert a.T == Matrix([[1, 3], [2, 4]])
    assert a.trace() == 5
    assert a.matvec((1, 0)) == (F(1), F(3))
    assert Matrix.identity(2) * a == a
    with pytest.raises(ValueError):
        a * Matrix([[1, 2, 3]])


def test_anticommutator_2x2():
    # frozen by hand: XY = [[1/4, -3/2], [1/2, -3/4]],
    # YX = [[-11/4, 9/2], [-3/2, 9/4]], sum below
    x = Matrix([["1/2", 0], [1, "-3/2"]])
    y = Matrix([["1/2", -3], [0, "-3/2"]])
    assert x * y == Matrix([["1/4", "-3/2"], ["1/2", "-3/4"]])
    assert y * x == Matrix([["-11/4", "9/2"], ["-3/2", "9/4"]])
    assert anticommutator(x, y) == Matrix([["-5/2", 3], [-1, "3/2"]])
    assert anticommutator(x, y) == anticommutator(y, x)


def test_rref_and_rank():
    m = Matrix([[1, 2, 3], [2, 4, 6], [1, 1, 1]])
    red, rank = rref(m)
    assert rank == 2
    assert red == Matrix([[1, 0, -1], [0, 1, 2], [0, 0, 0]])
    # idempotent
    assert rref(red)[0] == red
    assert m.rank() == m.T.rank()


def test_kernel_example():
    # kernel of an upper-triangular matrix with two zero diagonal entries in
    # the same "chain": only one free direction survives
    m = Matrix([[-2, 1, 0, 0], [0, 0, 4, 0], [0, 0, 0, -3], [0, 0, 0, -2]])
    ker = kernel_basis(m)
    assert ker == ((F(1, 2), F(1), F(0), F(0)),)
    v = ker[0]
    assert m.matvec(v) == (F(0),) * 4
    # the kernel vector is proportional to (1, 2, 0, 0)
    assert vec((1, 2, 0, 0)) == tuple(2 * c for c in v)


def test_kernel_rank_nullity():
    m = Matrix([[1, 2], [2, 4]])
    ker = kernel_basis(m)
    assert len(ker) == 1
    assert m.matvec(ker[0]) == (F(0), F(0))


def test_char_poly_fixed():
    # frozen expectation: det(xI - Y4) = (x - 1/2)^2 (x + 3/2)^2,
    # cross-checked against the cofactor oracle
    expected = Poly.from_roots(["1/2", "1/2", "-3/2", "-3/2"])
    assert char_poly(Y4) == expected
    assert char_poly_cofactor(Y4) == expected
    assert char_poly(X4) == Poly.from_roots(["-1/2", "-1/2", "3/2", "-5/2"])
    assert char_poly_cofactor(X4) == char_poly(X4)


def test_char_poly_dense_matches_cofactor():
    m = Matrix([[1, 2, 0], [3, "1/2", 1], [-1, 0, 2]])
    assert char_poly(m) == char_poly_cofactor(m)


def test_min_poly_fixed():
    # X4 has a size-2 Jordan block at -1/2, so the factor stays squared
    assert min_poly(X4) == Poly.from_roots(["-1/2", "-1/2", "3/2", "-5/2"])
    assert min_poly(Y4) == Poly.from_roots(["1/2", "1/2", "-3/2", "-3/2"])
    assert min_poly(Matrix.identity(3)) == Poly((-1, 1))
    assert min_poly(Matrix.diagonal([1, 2])) == Poly.from_roots([1, 2])


def test_rational_roots_fixed():
    p = Poly.from_roots(["1/2", "1/2", "-3/2", "-3/2"])
    assert rational_roots(p) == Roots((F(-3, 2), F(-3, 2), F(1, 2), F(1, 2)), True)
    # x^2 - 2 has no rational roots
    assert rational_roots(Poly((-2, 0, 1))) == Roots((), False)
    # mixed: (x - 1)(x^2 - 2)
    mixed = Poly.from_roots([1]) * Poly((-2, 0, 1))
    assert rational_roots(mixed) == Roots((F(1),), False)
    # zero roots are found too
    assert rational_roots(Poly((0, 0, 1))) == Roots((F(0), F(0)), True)


def test_is_squarefree():
    assert is_squarefree(Poly.from_roots([1, 2, "1/2"]))
    assert not is_squarefree(Poly.from_roots([1, 1]))
    assert is_squarefree(Poly((1, 0, 1)))  # x^2 + 1
    assert not is_squarefree(Poly((1, 0, 1)) * Poly((1, 0, 1)))


def test_spin_proper_subspace():
    # lower bidiagonal X with equal diagonal, scalar Y: (0,1) spans an
    # invariant line
    x = Matrix([["-1/2", 0], [1, "-1/2"]])
    y = Matrix.diagonal(["-1/2", "-1/2"])
    basis = spin([(0, 1)], [x, y])
    assert basis == ((F(0), F(1)),)


def test_spin_full_space():
    x = Matrix([["-1/2", 0], [1, "-3/2"]])
    y = Matrix([["1/2", 1], [0, "-1/2"]])
    basis = spin([(1, 0)], [x, y])
    assert len(basis) == 2


def test_poly_str():
    assert str(Poly((-1, 0, 1))) == "x^2 - 1"
    assert str(Poly(("1/2", 1))) == "x + 1/2"
    assert str(Poly(())) == "0"


def test_matrix_det_and_inverse():
    m = Matrix([[1, 2], [3, "1/2"]])
    assert m.det() == F(1, 2) - 6
    inv = m.inverse()
    assert m * inv == Matrix.identity(2)
    with pytest.raises(ValueError):
        Matrix([[1, 1], [1, 1]]).inverse()


# --- properties ---------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(square_matrices(3))
def test_cayley_hamilton(m):
    p = char_poly(m)
    assert p.at_matrix(m) == Matrix.zero(m.nrows)


@pytest.mark.parametrize("n,seed", [(5, 1), (6, 2), (7, 3), (8, 4)])
def test_cayley_hamilton_larger(n, seed):
    import random
    rng = random.Random(seed)
    m = Matrix([[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
                for _ in range(n)])
    p = char_poly(m)
    assert p.degree == n
    assert p.at_matrix(m) == Matrix.zero(n)
    assert (min_poly(m) is not None) and char_poly(m) % min_poly(m) == Poly(())


@settings(max_examples=40, deadline=None)
@given(square_matrices(3))
def test_min_poly_divides_char_poly(m):
    mp = min_poly(m)
    assert mp.leading == 1
    assert mp.at_matrix(m) == Matrix.zero(m.nrows)
    assert char_poly(m) % mp == Poly(())


@settings(max_examples=40, deadline=None)
@given(square_matrices(3))
def test_char_poly_matches_cofactor_oracle(m):
    assert char_poly(m) == char_poly_cofactor(m)


@settings(max_examples=50, deadline=None)
@given(square_matrices(4))
def test_kernel_vectors_annihilate(m):
    ker = kernel_basis(m)
    for v in ker:
        assert m.matvec(v) == (F(0),) * m.nrows
    _, rank = rref(m)
    assert rank + len(ker) == m.ncols


@settings(max_examples=40, deadline=None)
@given(square_matrices(4))
def test_rref_idempotent_and_det(m):
    red, _ = rref(m)
    assert rref(red)[0] == red
    # det cross-check against the characteristic polynomial constant term
    sign = 1 if m.nrows % 2 == 0 else -1
    assert m.det() == sign * char_poly(m)(0)


@settings(max_examples=30, deadline=None)
@given(square_matrices(3), square_matrices(3))
def test_anticommutator_symmetric(a, b):
    if a.shape != b.shape:
        return
    assert anticommutator(a, b) == anticommutator(b, a)


@settings(max_examples=40, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=4),
       st.lists(rationals, min_size=1, max_size=3))
def test_poly_divmod_roundtrip(fc, gc):
    f, g = Poly(fc), Poly(gc)
    if g.is_zero:
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.is_zero or r.degree < g.degree


@settings(max_examples=40, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=4), st.lists(rationals, min_size=1, max_size=4))
def test_poly_gcd_divides(fc, gc):
    f, g = Poly(fc), Poly(gc)
    if f.is_zero or g.is_zero:
        return
    d = f.gcd(g)
    assert f % d == Poly(()) and g % d == Poly(())


@settings(max_examples=40, deadline=None)
@given(st.lists(rationals, min_size=2, max_size=5))
def test_from_roots_recovered(roots):
    p = Poly.from_roots(roots)
    found = rational_roots(p)
    assert found.split
    assert list(found.roots) == sorted(F(r) for r in roots)


@settings(max_examples=30, deadline=None)
@given(square_matrices(3))
def test_spin_is_invariant(m):
    seed = tuple(F(1) if i == 0 else F(0) for i in range(m.nrows))
    basis = spin([seed], [m])
    from bannai_ito.exactlinalg import RrefAccumulator
    acc = RrefAccumulator(m.nrows)
    for b in basis:
        acc.add(b)
    for b in basis:
        assert acc.contains(m.matvec(b))
