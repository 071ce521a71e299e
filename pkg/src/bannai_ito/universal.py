"""Truncated Verma-type modules and the universal mapping property.

The Verma-type module has an infinite ladder basis m_0, m_1, ... with the same
bidiagonal closed forms as the finite families but a free rational parameter
delta in place of d.  A truncation to n basis vectors cannot satisfy the
defining relations everywhere: applying X to the last basis vector loses the
m_n component, so the presentation relations are exact only on the interior
columns 0 .. n-3.  That window is tracked explicitly and every consumer checks
against it.

The mapping property: if a vector v of a module V satisfies
    Y v = theta*_0 v,
    (Y - theta*_1)(X - theta_0) v = phi_1 v,
and kappa, lambda, mu act on V by the table's central scalars, then
m_i |-> prod_{h<i} (X - theta_h) v extends to a module map.  With delta = d
and the extra premise prod_{i<=d} (X - theta_i) v = 0 the map factors through
the (d+1)-dimensional even-family module, giving an explicit intertwiner.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bimodule import BIModule, EvenParams, SequenceTable, check_relations, \
    even_module
from .exactlinalg import Matrix, RatLike, Vector, anticommutator, is_zero_vec, \
    rat, vec

PREMISES = ("highest_weight", "second_order", "kappa", "lambda", "mu")


class PremiseViolated(Exception):
    """One of the universal-property premises fails; .premise names it."""

    def __init__(self, premise: str, detail: str = ""):
        assert premise in PREMISES
        self.premise = premise
        super().__init__(f"premise {premise!r} violated" + (f": {detail}" if detail else ""))


class AnnihilatorFails(Exception):
    """The degree-(d+1) annihilator premise of the descent map fails."""


@dataclass(frozen=True)
class TruncatedVerma:
    """An n-dimensional window of the Verma-type module M_delta(a, b, c)."""

    table: SequenceTable
    n: int
    X: Matrix
    Y: Matrix
    kappa: Fraction
    lam: Fraction
    mu: Fraction

    @property
    def interior(self) -> range:
        """Basis indices on which the presentation relations are exact."""
        return range(0, self.n - 2)


def truncated_verma(delta: RatLike, a: RatLike, b: RatLike, c: RatLike,
                    n: int) -> TruncatedVerma:
    """First n ladder basis vectors of the Verma-type module."""
    if n < 3:
        raise ValueError("need n >= 3 for a nonempty interior")
    t = SequenceTable(rat(delta), rat(a), rat(b), rat(c))
    x = Matrix([[t.theta(i) if j == i else (Fraction(1) if j == i - 1 else Fraction(0))
                 for j in range(n)] for i in range(n)])
    y = Matrix([[t.theta_star(i) if j == i else (t.phi_upper(i + 1) if j == i + 1 else Fraction(0))
                 for j in range(n)] for i in range(n)])
    kappa, lam, mu = t.central_scalars()
    return TruncatedVerma(t, n, x, y, kappa, lam, mu)


@dataclass(frozen=True)
class VermaRelationReport:
    """Column-by-column residuals of the two nontrivial presentation relations
    ({Y,Z} - X = lambda and {Z,X} - Y = mu, with Z derived)."""

    lambda_ok: tuple[bool, ...]
    mu_ok: tuple[bool, ...]
    interior: range

    @property
    def interior_ok(self) -> bool:
        return all(self.lambda_ok[i] and self.mu_ok[i] for i in self.interior)


def interior_relation_check(tv: TruncatedVerma) -> VermaRelationReport:
    """Check the defining relations column by column on the truncation."""
    eye = Matrix.identity(tv.n)
    z = anticommutator(tv.X, tv.Y) - tv.kappa * eye
    lam_res = anticommutator(tv.Y, z) - tv.X - tv.lam * eye
    mu_res = anticommutator(z, tv.X) - tv.Y - tv.mu * eye
    return VermaRelationReport(
        tuple(is_zero_vec(lam_res.column(j)) for j in range(tv.n)),
        tuple(is_zero_vec(mu_res.column(j)) for j in range(tv.n)),
        tv.interior,
    )


def ladder_vector(tv: TruncatedVerma, i: int, j: int) -> Vector:
    """Apply prod_{h=i}^{j} (X - theta_h) to m_i; the result is exactly m_{j+1}.

    Valid whenever 0 <= i <= j <= n-2 (the last factor must not touch the
    truncation boundary).  The identity is asserted, and the vector returned.
    """
    if not (0 <= i <= j <= tv.n - 2):
        raise ValueError(f"need 0 <= i <= j <= n-2, got i={i}, j={j}, n={tv.n}")
    v = tuple(Fraction(1) if k == i else Fraction(0) for k in range(tv.n))
    for h in range(i, j + 1):
        th = tv.table.theta(h)
        v = tuple(x - th * y for x, y in zip(tv.X.matvec(v), v))
    expected = tuple(Fraction(1) if k == j + 1 else Fraction(0) for k in range(tv.n))
    assert v == expected, "ladder identity broke inside the valid window"
    return v


def _check_premises(t: SequenceTable, v_mod: BIModule, v: Vector) -> None:
    x, y = v_mod.X, v_mod.Y
    if is_zero_vec(v):
        raise PremiseViolated("highest_weight", "seed vector is zero")
    lhs = y.matvec(v)
    th0 = t.theta_star(0)
    if lhs != tuple(th0 * c for c in v):
        raise PremiseViolated("highest_weight", f"Y v != {th0} v")
    th = t.theta(0)
    w = tuple(p - th * q for p, q in zip(x.matvec(v), v))
    th1 = t.theta_star(1)
    lhs2 = tuple(p - th1 * q for p, q in zip(y.matvec(w), w))
    phi1 = t.phi_upper(1)
    if lhs2 != tuple(phi1 * c for c in v):
        raise PremiseViolated("second_order", f"(Y - {th1})(X - {th}) v != {phi1} v")
    report = check_relations(v_mod)
    expected = dict(zip(("kappa", "lambda", "mu"), t.central_scalars()))
    for check in report.checks:
        if not check.passed or check.scalar != expected[check.name]:
            raise PremiseViolated(check.name,
                                  f"acts by {check.scalar}, table requires {expected[check.name]}")


def universal_map(delta: RatLike, a: RatLike, b: RatLike, c: RatLike,
                  v_mod: BIModule, v, count: int) -> tuple[Vector, ...]:
    """Images of the first `count` ladder vectors under the universal map.

    Checks the premises (raising PremiseViolated naming the first failure),
    then returns (v, (X - theta_0) v, (X - theta_1)(X - theta_0) v, ...).
    """
    t = SequenceTable(rat(delta), rat(a), rat(b), rat(c))
    v = vec(v)
    _check_premises(t, v_mod, v)
    images = [v]
    for i in range(count - 1):
        th = t.theta(i)
        v = tuple(p - th * q for p, q in zip(v_mod.X.matvec(v), v))
        images.append(v)
    return tuple(images)


def descend_to_even(params: EvenParams, v_mod: BIModule, v) -> Matrix:
    """Intertwiner from the even-family module with these parameters into v_mod.

    Premises: the universal-map premises for delta = d, plus the annihilator
    condition prod_{i=0}^{d} (X - theta_i) v = 0 (AnnihilatorFails otherwise).
    Columns of the result are the ladder images of v; both intertwining
    equations are asserted before returning.
    """
    d = params.d
    images = universal_map(d, params.a, params.b, params.c, v_mod, v, d + 2)
    if not is_zero_vec(images[d + 1]):
        raise AnnihilatorFails(
            f"prod (X - theta_i) v = {images[d + 1]}, expected zero")
    t = Matrix.from_columns(images[:d + 1])
    e = even_module(params.d, params.a, params.b, params.c)
    assert t * e.X == v_mod.X * t, "X intertwining failed (library bug)"
    assert t * e.Y == v_mod.Y * t, "Y intertwining failed (library bug)"
    return t


@dataclass(frozen=True)
class QuotientReport:
    """Result of comparing the delta = d truncation with the even-family module."""

    superdiagonal_vanishes: bool  # phi_{d+1} = 0, decoupling head from tail
    tail_invariant: bool          # X, Y keep span{m_{d+1}, ...} inside itself
    head_matches: bool            # top-left blocks equal the even-family matrices

    @property
    def ok(self) -> bool:
        return self.superdiagonal_vanishes and self.tail_invariant and self.head_matches


def verma_quotient_check(params: EvenParams, n: int | None = None) -> QuotientReport:
    """With delta = d, the tail span{m_{d+1}, ...} is a submodule of the
    truncation window and the quotient is the even-family module on the nose."""
    d = params.d
    n = d + 5 if n is None else n
    if n < d + 3:
        raise ValueError("need n >= d + 3 to see the tail")
    tv = truncated_verma(d, params.a, params.b, params.c, n)
    sup_zero = tv.table.phi_upper(d + 1) == 0 and tv.Y[d, d + 1] == 0
    tail = all(
        not m[i, j]
        for m in (tv.X, tv.Y)
        for j in range(d + 1, n)
        for i in range(0, d + 1)
    )
    e = params.module()
    head = all(
        Matrix([[m[i, j] for j in range(d + 1)] for i in range(d + 1)]) == em
        for m, em in ((tv.X, e.X), (tv.Y, e.Y))
    )
    return QuotientReport(sup_zero, tail, head)
