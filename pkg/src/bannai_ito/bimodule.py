"""Finite-dimensional modules of the universal Bannai-Ito algebra.

The algebra is generated by X, Y, Z subject to the condition that
{X, Y} - Z, {Y, Z} - X and {Z, X} - Y are central; a module here is a pair of
exact rational matrices (X, Y) together with the scalar kappa by which
{X, Y} - Z acts, with Z always *derived* as {X, Y} - kappa*I.  Two families of
modules are constructed in closed form: an even-dimensional one (dimension
d + 1 with d odd) and an odd-dimensional one (d even).  Both have X lower
bidiagonal with free subdiagonal 1 and Y upper bidiagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .exactlinalg import Matrix, Poly, RatLike, anticommutator, \
    is_squarefree, min_poly, rat, rational_roots

_F0 = Fraction(0)


class NotAModule(Exception):
    """Raised when the defining relations fail on a purported module."""

    def __init__(self, report: "RelationReport"):
        self.report = report
        bad = ", ".join(c.name for c in report.checks if not c.passed)
        super().__init__(f"defining relations fail: {bad}")


def _sign(i: int) -> int:
    return 1 if i % 2 == 0 else -1


@dataclass(frozen=True)
class SequenceTable:
    """Closed-form eigenvalue/superdiagonal sequences for the even family and
    for Verma-type modules; `delta` may be any rational (it equals d on the
    (d+1)-dimensional module).

    theta(i)      eigenvalue sequence of X
    theta_star(i) eigenvalue sequence of Y
    phi_upper(i)  superdiagonal of Y in the standard ladder basis
    phi_lower(i)  superdiagonal of Y in the reversed-ladder basis
    """

    delta: Fraction
    a: Fraction
    b: Fraction
    c: Fraction

    def theta(self, i: int) -> Fraction:
        return _sign(i) * (2 * self.a - self.delta + 2 * i) / 2

    def theta_star(self, i: int) -> Fraction:
        return _sign(i) * (2 * self.b - self.delta + 2 * i) / 2

    def phi_upper(self, i: int) -> Fraction:
        if i % 2 == 0:
            return i * (self.delta - i + 1)
        s = (2 * self.a + 2 * self.b - self.delta + 2 * i - 1) / 2
        return self.c ** 2 - s ** 2

    def phi_lower(self, i: int) -> Fraction:
        if i % 2 == 0:
            return i * (self.delta - i + 1)
        s = (2 * self.b - 2 * self.a - self.delta + 2 * i - 1) / 2
        return self.c ** 2 - s ** 2

    def central_scalars(self) -> tuple[Fraction, Fraction, Fraction]:
        """(kappa, lambda, mu) acting on the ladder module."""
        a2, b2, c2 = self.a ** 2, self.b ** 2, self.c ** 2
        shift = (self.delta + 1) ** 2 / 4
        return (c2 - a2 - b2 + shift,
                a2 - b2 - c2 + shift,
                b2 - c2 - a2 + shift)


@dataclass(frozen=True)
class OddSequenceTable:
    """Sequences for the odd-dimensional family (d even).

    theta has the same closed form as the even family with delta = d; the
    superdiagonal phi has its own piecewise form and there is no reversed
    counterpart in this family.
    """

    d: int
    a: Fraction
    b: Fraction
    c: Fraction

    def theta(self, i: int) -> Fraction:
        return _sign(i) * (2 * self.a - self.d + 2 * i) / 2

    def theta_star(self, i: int) -> Fraction:
        return _sign(i) * (2 * self.b - self.d + 2 * i) / 2

    def phi(self, i: int) -> Fraction:
        d = self.d
        if i % 2 == 0:
            return Fraction(i) * (d + 1 - 2 * i - 2 * (self.a + self.b + self.c)) / 2
        return Fraction(i - d - 1) * (d + 1 - 2 * i - 2 * (self.a + self.b - self.c)) / 2

    def central_scalars(self) -> tuple[Fraction, Fraction, Fraction]:
        a, b, c, n = self.a, self.b, self.c, self.d + 1
        return (2 * a * b - c * n, 2 * b * c - a * n, 2 * c * a - b * n)


@dataclass(frozen=True)
class EvenParams:
    """Parameters of the even-dimensional family: d odd >= 1, rational a, b, c."""

    d: int
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1 or self.d % 2 == 0:
            raise ValueError(f"even family needs odd d >= 1, got {self.d}")
        for f in "abc":
            object.__setattr__(self, f, rat(getattr(self, f)))

    def table(self) -> SequenceTable:
        return SequenceTable(Fraction(self.d), self.a, self.b, self.c)

    def module(self) -> "BIModule":
        return even_module(self.d, self.a, self.b, self.c)


@dataclass(frozen=True)
class OddParams:
    """Parameters of the odd-dimensional family: d even >= 0, rational a, b, c."""

    d: int
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 0 or self.d % 2 == 1:
            raise ValueError(f"odd family needs even d >= 0, got {self.d}")
        for f in "abc":
            object.__setattr__(self, f, rat(getattr(self, f)))

    def table(self) -> OddSequenceTable:
        return OddSequenceTable(self.d, self.a, self.b, self.c)

    def module(self) -> "BIModule":
        return odd_module(self.d, self.a, self.b, self.c)


def sequences(params: EvenParams | OddParams):
    """Closed-form sequence table for either family."""
    return params.table()


@dataclass(frozen=True)
class TwistSign:
    """A sign pair (eps, eps_prime) in {+-1}^2 acting by X -> eps X,
    Y -> eps' Y, hence Z -> eps eps' Z."""

    eps: int
    eps_prime: int

    def __post_init__(self):
        if self.eps not in (1, -1) or self.eps_prime not in (1, -1):
            raise ValueError("twist signs must be +1 or -1")

    def __mul__(self, other: "TwistSign") -> "TwistSign":
        return TwistSign(self.eps * other.eps, self.eps_prime * other.eps_prime)

    @property
    def is_identity(self) -> bool:
        return self.eps == 1 and self.eps_prime == 1


TWIST_IDENTITY = TwistSign(1, 1)
ALL_TWISTS = (TwistSign(1, 1), TwistSign(1, -1), TwistSign(-1, 1), TwistSign(-1, -1))


@dataclass(frozen=True)
class BIModule:
    """A module given by exact matrices for X and Y plus the central scalar
    kappa; Z is derived, never stored.  lam and mu are optional caches of the
    other two central scalars (check_relations verifies them when present)."""

    X: Matrix
    Y: Matrix
    kappa: Fraction
    lam: Fraction | None = None
    mu: Fraction | None = None
    provenance: str = ""

    def __post_init__(self):
        if not self.X.is_square or self.X.shape != self.Y.shape:
            raise ValueError("X and Y must be square of equal size")
        object.__setattr__(self, "kappa", rat(self.kappa))
        for f in ("lam", "mu"):
            v = getattr(self, f)
            if v is not None:
                object.__setattr__(self, f, rat(v))

    @property
    def dim(self) -> int:
        return self.X.nrows

    @cached_property
    def Z(self) -> Matrix:
        return derive_Z(self.X, self.Y, self.kappa)

    def generator(self, name: str) -> Matrix:
        if name == "X":
            return self.X
        if name == "Y":
            return self.Y
        if name == "Z":
            return self.Z
        raise ValueError(f"unknown generator {name!r} (expected X, Y or Z)")

    def same_matrices(self, other: "BIModule") -> bool:
        """Entrywise equality of X, Y and kappa (hence also of Z)."""
        return (self.X == other.X and self.Y == other.Y
                and self.kappa == other.kappa)


def derive_Z(x: Matrix, y: Matrix, kappa: RatLike) -> Matrix:
    """Z = {X, Y} - kappa * I."""
    return anticommutator(x, y) - rat(kappa) * Matrix.identity(x.nrows)


def even_module(d: int, a: RatLike, b: RatLike, c: RatLike) -> BIModule:
    """The (d+1)-dimensional module of the even-dimensional family, d odd.

    X v_i = theta_i v_i + v_{i+1} (v_{d+1} = 0),
    Y v_i = theta*_i v_i + phi_i v_{i-1}, and kappa, lambda, mu act by the
    three central scalars of the sequence table.
    """
    p = EvenParams(d, rat(a), rat(b), rat(c))
    t = p.table()
    x = _lower_bidiagonal([t.theta(i) for i in range(d + 1)])
    y = _upper_bidiagonal([t.theta_star(i) for i in range(d + 1)],
                          [t.phi_upper(i) for i in range(1, d + 1)])
    kappa, lam, mu = t.central_scalars()
    return BIModule(x, y, kappa, lam, mu, provenance=f"even(d={d},a={p.a},b={p.b},c={p.c})")


def odd_module(d: int, a: RatLike, b: RatLike, c: RatLike) -> BIModule:
    """The (d+1)-dimensional module of the odd-dimensional family, d even."""
    p = OddParams(d, rat(a), rat(b), rat(c))
    t = p.table()
    x = _lower_bidiagonal([t.theta(i) for i in range(d + 1)])
    y = _upper_bidiagonal([t.theta_star(i) for i in range(d + 1)],
                          [t.phi(i) for i in range(1, d + 1)])
    kappa, lam, mu = t.central_scalars()
    return BIModule(x, y, kappa, lam, mu, provenance=f"odd(d={d},a={p.a},b={p.b},c={p.c})")


def _lower_bidiagonal(diag: list[Fraction]) -> Matrix:
    n = len(diag)
    return Matrix([[diag[i] if j == i else (Fraction(1) if j == i - 1 else _F0)
                    for j in range(n)] for i in range(n)])


def _upper_bidiagonal(diag: list[Fraction], sup: list[Fraction]) -> Matrix:
    n = len(diag)
    return Matrix([[diag[i] if j == i else (sup[i] if j == i + 1 else _F0)
                    for j in range(n)] for i in range(n)])


def twist(v: BIModule, sign: TwistSign) -> BIModule:
    """Pull back the action along the sign automorphism: X -> eps X,
    Y -> eps' Y; then kappa -> eps eps' kappa, lambda -> eps lambda,
    mu -> eps' mu."""
    e, ep = sign.eps, sign.eps_prime
    return BIModule(
        e * v.X, ep * v.Y, e * ep * v.kappa,
        None if v.lam is None else e * v.lam,
        None if v.mu is None else ep * v.mu,
        provenance=f"{v.provenance}^({e},{ep})" if v.provenance else f"twist({e},{ep})",
    )


@dataclass(frozen=True)
class RelationCheck:
    name: str
    passed: bool
    scalar: Fraction | None  # discovered scalar when the residual is scalar
    expected: Fraction | None  # stored value it was compared against, if any


@dataclass(frozen=True)
class RelationReport:
    checks: tuple[RelationCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def scalar(self, name: str) -> Fraction | None:
        for c in self.checks:
            if c.name == name:
                return c.scalar
        raise KeyError(name)


def check_relations(v: BIModule) -> RelationReport:
    """Verify the defining relations on the module.

    With Z := {X, Y} - kappa*I the first relation holds identically; the
    content is that {Y, Z} - X and {Z, X} - Y are scalar matrices (centrality
    on a module), matching the stored lam/mu when those are present.
    """
    n = v.dim
    eye = Matrix.identity(n)
    z = v.Z
    checks = [RelationCheck("kappa", True, v.kappa, v.kappa)]
    lam_mat = anticommutator(v.Y, z) - v.X
    mu_mat = anticommutator(z, v.X) - v.Y
    for name, mat, stored in (("lambda", lam_mat, v.lam), ("mu", mu_mat, v.mu)):
        s = mat.scalar_value()
        passed = s is not None and (stored is None or s == stored)
        checks.append(RelationCheck(name, passed, s, stored))
    return RelationReport(tuple(checks))


def central_scalars(v: BIModule) -> tuple[Fraction, Fraction, Fraction]:
    """(kappa, lambda, mu) discovered from the matrices; NotAModule if the
    relations fail."""
    report = check_relations(v)
    if not report.ok:
        raise NotAModule(report)
    return (report.scalar("kappa"), report.scalar("lambda"), report.scalar("mu"))


def minimal_polynomials(v: BIModule) -> dict[str, Poly]:
    return {g: min_poly(v.generator(g)) for g in ("X", "Y", "Z")}


def diagonalizability(v: BIModule) -> dict[str, bool]:
    """Per generator: True iff the minimal polynomial is squarefree and splits
    over Q (equivalently, the generator is diagonalizable over Q)."""
    out = {}
    for g in ("X", "Y", "Z"):
        mp = min_poly(v.generator(g))
        out[g] = is_squarefree(mp) and rational_roots(mp).split
    return out


def example_even() -> BIModule:
    """The pinned 4-dimensional example module (kappa, lambda, mu) = (4, 4, 2).

    Matrices are hardcoded, not constructed, so they can serve as an external
    reference point for the constructors.
    """
    x = Matrix([
        ["-1/2", 0, 0, 0],
        [1, "-1/2", 0, 0],
        [0, 1, "3/2", 0],
        [0, 0, 1, "-5/2"],
    ])
    y = Matrix([
        ["-3/2", 1, 0, 0],
        [0, "1/2", 4, 0],
        [0, 0, "1/2", -3],
        [0, 0, 0, "-3/2"],
    ])
    return BIModule(x, y, Fraction(4), Fraction(4), Fraction(2),
                    provenance="exampleE")


def example_odd() -> BIModule:
    """The pinned 5-dimensional example module (kappa, lambda, mu) = (4, -8, -4)."""
    x = Matrix([
        ["-1/2", 0, 0, 0, 0],
        [1, "-1/2", 0, 0, 0],
        [0, 1, "3/2", 0, 0],
        [0, 0, 1, "-5/2", 0],
        [0, 0, 0, 1, "7/2"],
    ])
    y = Matrix([
        ["-3/2", 4, 0, 0, 0],
        [0, "1/2", -2, 0, 0],
        [0, 0, "1/2", 6, 0],
        [0, 0, 0, "-3/2", -12],
        [0, 0, 0, 0, "5/2"],
    ])
    return BIModule(x, y, Fraction(4), Fraction(-8), Fraction(-4),
                    provenance="exampleO")
