"""Exact dense linear algebra over the rationals.

Everything in this module is deterministic and exact: entries are
``fractions.Fraction``, pivoting is positional (first nonzero column, topmost
row), and no floating point is ever involved.  Matrices are immutable; sizes
stay small (a few dozen rows), so the naive cubic algorithms are the right
tool.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

RatLike = Union[int, str, Fraction]
Vector = tuple[Fraction, ...]

_F0 = Fraction(0)
_F1 = Fraction(1)


def rat(x: RatLike) -> Fraction:
    """Coerce an int, a "p/q" string or a Fraction to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def vec(entries: Iterable[RatLike]) -> Vector:
    return tuple(rat(x) for x in entries)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a), _F0)


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Fraction, u: Vector) -> Vector:
    return tuple(c * a for a in u)


def is_zero_vec(u: Sequence[Fraction]) -> bool:
    return not any(u)


class Matrix:
    """Immutable dense matrix over Fraction, stored row-major."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[RatLike]]):
        rs = tuple(tuple(rat(x) for x in row) for row in rows)
        if not rs or not rs[0]:
            raise ValueError("matrix must have at least one row and column")
        ncols = len(rs[0])
        if any(len(r) != ncols for r in rs):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", rs)

    @classmethod
    def _new(cls, rows: tuple[tuple[Fraction, ...], ...]) -> "Matrix":
        # internal: entries already Fraction, shape already checked
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        return m

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._new(tuple(tuple(_F1 if i == j else _F0 for j in range(n))
                              for i in range(n)))

    @classmethod
    def zero(cls, n: int, m: int | None = None) -> "Matrix":
        m = n if m is None else m
        return cls._new(tuple(tuple(_F0 for _ in range(m)) for _ in range(n)))

    @classmethod
    def diagonal(cls, entries: Iterable[RatLike]) -> "Matrix":
        es = vec(entries)
        n = len(es)
        return cls._new(tuple(tuple(es[i] if i == j else _F0 for j in range(n))
                              for i in range(n)))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[RatLike]]) -> "Matrix":
        return cls(zip(*[tuple(c) for c in cols]))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.rows[ij[0]][ij[1]]

    def row(self, i: int) -> Vector:
        return self.rows[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix[{body}]"

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._new(tuple(tuple(a + b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._new(tuple(tuple(a - b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "Matrix":
        return Matrix._new(tuple(tuple(-a for a in r) for r in self.rows))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
            cols = tuple(zip(*other.rows))
            # the `if a` guard skips structural zeros; bidiagonal operands are common
            return Matrix._new(tuple(
                tuple(sum((a * b for a, b in zip(row, col) if a), _F0) for col in cols)
                for row in self.rows))
        return Matrix._new(tuple(tuple(rat(other) * a for a in r) for r in self.rows))

    def __rmul__(self, other: RatLike) -> "Matrix":
        return self.__mul__(other)

    def matvec(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(row, v) if a), _F0)
                     for row in self.rows)

    @property
    def T(self) -> "Matrix":
        return Matrix._new(tuple(zip(*self.rows)))

    def trace(self) -> Fraction:
        if not self.is_square:
            raise ValueError("trace of non-square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), _F0)

    def is_upper_triangular(self) -> bool:
        return all(not self.rows[i][j]
                   for i in range(self.nrows) for j in range(min(i, self.ncols)))

    def is_lower_triangular(self) -> bool:
        return all(not self.rows[i][j]
                   for i in range(self.nrows) for j in range(i + 1, self.ncols))

    def scalar_value(self) -> Fraction | None:
        """Return c if the matrix equals c*I, else None."""
        if not self.is_square:
            return None
        c = self.rows[0][0]
        for i in range(self.nrows):
            for j in range(self.ncols):
                if self.rows[i][j] != (c if i == j else _F0):
                    return None
        return c

    def rank(self) -> int:
        return rref(self)[1]

    def det(self) -> Fraction:
        """Determinant by fraction-preserving Gaussian elimination."""
        if not self.is_square:
            raise ValueError("determinant of non-square matrix")
        m = [list(r) for r in self.rows]
        n = self.nrows
        sign = 1
        result = _F1
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c]), None)
            if piv is None:
                return _F0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                sign = -sign
            p = m[c][c]
            result *= p
            for i in range(c + 1, n):
                f = m[i][c] / p
                if f:
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return result if sign == 1 else -result

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        aug = Matrix._new(tuple(self.rows[i] + Matrix.identity(n).rows[i]
                                for i in range(n)))
        red, rank = rref(aug)
        if rank < n or any(red.rows[i][i] != _F1 for i in range(n)):
            raise ValueError("matrix is singular")
        return Matrix._new(tuple(r[n:] for r in red.rows))


def anticommutator(a: Matrix, b: Matrix) -> Matrix:
    """{a, b} = a*b + b*a."""
    return a * b + b * a


def _rref_rows(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list).

    Pivot choice is positional: scan columns left to right, take the topmost
    row with a nonzero entry.  No magnitude pivoting (arithmetic is exact).
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        if p != _F1:
            rows[r] = [a / p for a in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row echelon form and rank."""
    rows, pivots = _rref_rows([list(r) for r in m.rows])
    return Matrix._new(tuple(tuple(r) for r in rows)), len(pivots)


def kernel_basis(m: Matrix) -> tuple[Vector, ...]:
    """Deterministic basis of the right kernel {v : m v = 0}.

    One basis vector per free column, in ascending column order; the free
    coordinate is set to 1 and pivot coordinates are back-substituted.
    """
    rows, pivots = _rref_rows([list(r) for r in m.rows])
    ncols = m.ncols
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [_F0] * ncols
        v[free] = _F1
        for r, c in enumerate(pivots):
            v[c] = -rows[r][free]
        basis.append(tuple(v))
    return tuple(basis)


class RrefAccumulator:
    """Incrementally maintained rref basis of a growing span of row vectors."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[Fraction]) -> list[Fraction]:
        w = list(v)
        for row, c in zip(self.rows, self.pivots):
            if w[c]:
                f = w[c]
                w = [a - f * b for a, b in zip(w, row)]
        return w

    def add(self, v: Sequence[Fraction]) -> bool:
        """Add v to the span; True if the dimension grew."""
        w = self.reduce(v)
        c = next((j for j, a in enumerate(w) if a), None)
        if c is None:
            return False
        p = w[c]
        if p != _F1:
            w = [a / p for a in w]
        for row in self.rows:
            if row[c]:
                f = row[c]
                row[:] = [a - f * b for a, b in zip(row, w)]
        at = next((k for k, pc in enumerate(self.pivots) if pc > c), len(self.pivots))
        self.rows.insert(at, w)
        self.pivots.insert(at, c)
        return True

    def contains(self, v: Sequence[Fraction]) -> bool:
        return not any(self.reduce(v))

    def basis(self) -> tuple[Vector, ...]:
        return tuple(tuple(r) for r in self.rows)


def spin(vectors: Sequence[Sequence[RatLike]], operators: Sequence[Matrix]) -> tuple[Vector, ...]:
    """Basis of the smallest operator-invariant subspace containing `vectors`.

    Iteratively applies each operator to the working basis and grows an rref
    basis until the dimension stabilizes.  Returned basis rows are in rref,
    sorted by pivot column, so the output is canonical for the subspace.
    """
    if not operators:
        raise ValueError("need at least one operator")
    ncols = operators[0].ncols
    acc = RrefAccumulator(ncols)
    queue = [vec(v) for v in vectors if acc.add(vec(v))]
    while queue and len(acc) < ncols:
        v = queue.pop(0)
        for op in operators:
            w = op.matvec(v)
            if acc.add(w):
                queue.append(w)
    return acc.basis()


class Poly:
    """Univariate polynomial over Fraction; coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RatLike]):
        cs = [rat(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[RatLike]) -> "Poly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-rat(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial has degree -1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero or other.is_zero:
            return Poly(())
        out = [_F0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return Poly(out)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [_F0] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.coeffs
        while len(rem) >= len(d) and any(rem):
            if not rem[-1]:
                rem.pop()
                continue
            k = len(rem) - len(d)
            f = rem[-1] / d[-1]
            q[k] = f
            for i, c in enumerate(d):
                rem[k + i] -= f * c
            rem.pop()
        return Poly(q), Poly(rem)

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __call__(self, x: RatLike) -> Fraction:
        acc = _F0
        for c in reversed(self.coeffs):
            acc = acc * rat(x) + c
        return acc

    def at_matrix(self, m: Matrix) -> Matrix:
        n = m.nrows
        acc = Matrix.zero(n)
        eye = Matrix.identity(n)
        for c in reversed(self.coeffs):
            acc = acc * m + c * eye
        return acc

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        lead = self.leading
        if lead == _F1:
            return self
        return Poly(tuple(c / lead for c in self.coeffs))

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def lcm(self, other: "Poly") -> "Poly":
        if self.is_zero or other.is_zero:
            return Poly(())
        g = self.gcd(other)
        return ((self * other) // g).monic()

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                term = str(c)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                if c == 1:
                    term = xs
                elif c == -1:
                    term = f"-{xs}"
                else:
                    term = f"{c}*{xs}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self})"


class Roots(NamedTuple):
    """Rational roots with multiplicity (sorted) and a full-split flag."""
    roots: tuple[Fraction, ...]
    split: bool


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: Poly) -> Roots:
    """All rational roots of p with multiplicity, via the rational root bound.

    Zero roots are stripped first; then candidates num/den with num | constant
    term and den | leading coefficient (after clearing denominators) are tested
    and deflated until simple.  `split` is True iff the roots found account for
    the whole degree.
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    degree = p.degree
    coeffs = list(p.coeffs)
    roots: list[Fraction] = []
    while coeffs and not coeffs[0]:
        roots.append(_F0)
        coeffs.pop(0)
    work = Poly(coeffs)
    if work.degree > 0:
        scale = 1
        for c in work.coeffs:
            scale = scale * c.denominator // _gcd(scale, c.denominator)
        ints = [int(c * scale) for c in work.coeffs]
        candidates = sorted({Fraction(s * num, den)
                             for num in _divisors(ints[0])
                             for den in _divisors(ints[-1])
                             for s in (1, -1)})
        for cand in candidates:
            while work.degree > 0 and work(cand) == 0:
                roots.append(cand)
                work = work // Poly((-cand, 1))
    return Roots(tuple(sorted(roots)), len(roots) == degree)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def is_squarefree(p: Poly) -> bool:
    """True iff p has no repeated irreducible factor (over Q)."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return True
    return p.gcd(p.derivative()).degree == 0


def char_poly(m: Matrix) -> Poly:
    """Characteristic polynomial det(xI - m), monic, by Faddeev-LeVerrier.

    Triangular matrices short-circuit to the product of (x - diagonal).
    """
    if not m.is_square:
        raise ValueError("characteristic polynomial of non-square matrix")
    if m.is_upper_triangular() or m.is_lower_triangular():
        return Poly.from_roots(tuple(m.rows[i][i] for i in range(m.nrows)))
    n = m.nrows
    eye = Matrix.identity(n)
    mk = m
    cs = []
    for k in range(1, n + 1):
        ck = -mk.trace() / k
        cs.append(ck)
        if k < n:
            mk = m * (mk + ck * eye)
    return Poly(tuple(reversed(cs)) + (_F1,))


def rational_spectrum(m: Matrix) -> Roots:
    """Rational eigenvalues of m with multiplicity, plus a full-split flag.

    Triangular matrices are read off the diagonal; everything else goes
    through the characteristic polynomial's rational roots.
    """
    if not m.is_square:
        raise ValueError("spectrum of non-square matrix")
    if m.is_upper_triangular() or m.is_lower_triangular():
        return Roots(tuple(sorted(m.rows[i][i] for i in range(m.nrows))), True)
    return rational_roots(char_poly(m))


def min_poly(m: Matrix) -> Poly:
    """Minimal polynomial: lcm over standard basis vectors of the Krylov
    annihilator of each vector."""
    if not m.is_square:
        raise ValueError("minimal polynomial of non-square matrix")
    n = m.nrows
    result = Poly((1,))
    for i in range(n):
        if result.degree == n:
            break
        e = tuple(_F1 if j == i else _F0 for j in range(n))
        result = result.lcm(_vector_annihilator(m, e))
    return result


def _vector_annihilator(m: Matrix, v: Vector) -> Poly:
    """Monic p of least degree with p(m) v = 0."""
    krylov: list[Vector] = [v]
    acc = RrefAccumulator(len(v))
    acc.add(v)
    w = v
    while True:
        w = m.matvec(w)
        if not acc.add(w):
            break
        krylov.append(w)
    # express w in terms of the krylov vectors: solve K^T alpha = w
    k = len(krylov)
    aug = Matrix.from_columns(krylov + [list(w)])
    rows, pivots = _rref_rows([list(r) for r in aug.rows])
    # krylov columns are independent, so pivots are exactly columns 0..k-1
    alpha = [_F0] * k
    for r, c in enumerate(pivots):
        alpha[c] = rows[r][k]
    return Poly(tuple(-a for a in alpha) + (_F1,))
