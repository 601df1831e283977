"""Adjacency spectra: floating eigenvalues and exact eigenvalue counting.

Two independent routes coexist on purpose.  The floating route diagonalizes
with numpy and backs slack-checked inequalities; the exact route computes
the inertia of A - t*I by symmetric elimination over exact number types
(rationals, and rationals extended by sqrt(2)) and is what certificates rest
on.  Neither route consults the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .graph_core import EdgeSet, Graph, spanning_subgraph

EPS_PER_VERTEX = 1e-9


# ---------------------------------------------------------------------------
# exact numbers: rationals extended by sqrt(2)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Sqrt2Rational:
    """Exact number a + b*sqrt(2) with rational a, b.

    Supports field arithmetic and exact sign evaluation, which is all the
    inertia elimination needs.  Sign uses the fact that a^2 = 2*b^2 has no
    rational solution besides a = b = 0.
    """

    a: Fraction
    b: Fraction

    @classmethod
    def make(cls, a=0, b=0) -> "Sqrt2Rational":
        return cls(Fraction(a), Fraction(b))

    @staticmethod
    def _coerce(x) -> "Sqrt2Rational":
        if isinstance(x, Sqrt2Rational):
            return x
        if isinstance(x, (int, Fraction)):
            return Sqrt2Rational(Fraction(x), Fraction(0))
        raise TypeError(f"cannot mix {type(x).__name__} with Sqrt2Rational")

    def __add__(self, other):
        o = self._coerce(other)
        return Sqrt2Rational(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Sqrt2Rational(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return Sqrt2Rational(
            self.a * o.a + 2 * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        norm = o.a * o.a - 2 * o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(2))")
        return self * Sqrt2Rational(o.a / norm, -o.b / norm)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return Sqrt2Rational(-self.a, -self.b)

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def sign(self) -> int:
        a, b = self.a, self.b
        if a == 0 and b == 0:
            return 0
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        # opposite signs: compare a^2 with 2 b^2; equality cannot happen here
        if a > 0:
            return 1 if a * a > 2 * b * b else -1
        return -1 if a * a > 2 * b * b else 1

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * 2.0 ** 0.5

    def __str__(self) -> str:
        return threshold_token(self)


SQRT2 = Sqrt2Rational.make(0, 1)

ExactNumber = Union[int, Fraction, Sqrt2Rational]


def _sign(x) -> int:
    if isinstance(x, Sqrt2Rational):
        return x.sign()
    return (x > 0) - (x < 0)


def threshold_token(t: ExactNumber) -> str:
    """Stable string form of an exact threshold, used in reports and replay."""
    if isinstance(t, Sqrt2Rational):
        if t.b == 0:
            return str(t.a)
        if t.a == 0 and t.b == 1:
            return "sqrt2"
        if t.a == 0 and t.b == -1:
            return "-sqrt2"
        return f"{t.a}{'+' if t.b > 0 else ''}{t.b}*sqrt2"
    return str(Fraction(t))


def parse_threshold(token: str) -> ExactNumber:
    """Inverse of threshold_token for the forms traces actually emit."""
    if token == "sqrt2":
        return SQRT2
    if token == "-sqrt2":
        return -SQRT2
    return Fraction(token)


# ---------------------------------------------------------------------------
# exact inertia
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InertiaCount:
    """Exact eigenvalue counts of an adjacency matrix against a threshold."""

    threshold: str
    above: int
    at: int
    below: int

    @property
    def total(self) -> int:
        return self.above + self.at + self.below


def _symmetric_inertia(mat: list[list]) -> tuple[int, int, int]:
    """Inertia (positive, zero, negative) of a symmetric matrix of exact numbers.

    Symmetric elimination with 1x1 pivots where a nonzero diagonal entry
    exists, otherwise a 2x2 pivot on an off-diagonal entry (which contributes
    one positive and one negative eigenvalue since its block determinant is
    negative).  Congruence transformations preserve inertia, so the counts
    are exact.  Mutates mat.
    """
    active = list(range(len(mat)))
    pos = neg = zero = 0
    while active:
        p = next((i for i in active if _sign(mat[i][i]) != 0), None)
        if p is not None:
            d = mat[p][p]
            if _sign(d) > 0:
                pos += 1
            else:
                neg += 1
            active.remove(p)
            col = [mat[i][p] for i in active]
            for ii, i in enumerate(active):
                ci = col[ii]
                if not ci:
                    continue
                for jj in range(ii, len(active)):
                    cj = col[jj]
                    if not cj:
                        continue
                    j = active[jj]
                    val = mat[i][j] - ci * cj / d
                    mat[i][j] = val
                    if i != j:
                        mat[j][i] = val
            continue
        # every diagonal entry is zero: look for an off-diagonal pivot
        pivot = None
        for ii, i in enumerate(active):
            for j in active[ii + 1 :]:
                if _sign(mat[i][j]) != 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            zero += len(active)
            break
        p, q = pivot
        a = mat[p][q]
        pos += 1
        neg += 1
        active.remove(p)
        active.remove(q)
        colp = [mat[i][p] for i in active]
        colq = [mat[i][q] for i in active]
        for ii, i in enumerate(active):
            cpi, cqi = colp[ii], colq[ii]
            if not cpi and not cqi:
                continue
            for jj in range(ii, len(active)):
                cpj, cqj = colp[jj], colq[jj]
                if not cpj and not cqj:
                    continue
                j = active[jj]
                val = mat[i][j] - (cpi * cqj + cqi * cpj) / a
                mat[i][j] = val
                if i != j:
                    mat[j][i] = val
    return pos, zero, neg


def count_at_threshold(g: Graph, t: ExactNumber) -> InertiaCount:
    """Exact counts of adjacency eigenvalues above / at / below t.

    t may be an int, a Fraction, or a Sqrt2Rational; arithmetic stays exact
    throughout, so the counts are certificates rather than estimates.
    """
    n = g.n
    if isinstance(t, Sqrt2Rational):
        zero_v: ExactNumber = Sqrt2Rational.make(0, 0)
        one_v: ExactNumber = Sqrt2Rational.make(1, 0)
        diag = -t
    else:
        t = Fraction(t)
        zero_v = Fraction(0)
        one_v = Fraction(1)
        diag = -t
    mat = [
        [
            (diag if i == j else (one_v if g.has_edge(i, j) else zero_v))
            for j in range(n)
        ]
        for i in range(n)
    ]
    pos, zero, neg = _symmetric_inertia(mat)
    return InertiaCount(threshold=threshold_token(t), above=pos, at=zero, below=neg)


# ---------------------------------------------------------------------------
# floating spectrum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Spectrum:
    """Floating adjacency eigenvalues, sorted descending, with a noise bound."""

    values: tuple[float, ...]
    eps: float

    def value(self, i: int) -> float:
        """1-indexed eigenvalue, largest first."""
        if not (1 <= i <= len(self.values)):
            raise ValueError(f"eigenvalue index {i} out of range 1..{len(self.values)}")
        return self.values[i - 1]


def spectrum(g: Graph) -> Spectrum:
    if g.n == 0:
        return Spectrum((), 0.0)
    vals = np.linalg.eigvalsh(np.array(g.adjacency_rows(), dtype=float))
    return Spectrum(tuple(float(x) for x in vals[::-1]), EPS_PER_VERTEX * g.n)


def median_positions(n: int) -> tuple[int, int]:
    """The two median positions (1-indexed, equal when n is odd)."""
    if n < 1:
        raise ValueError("median eigenvalues need at least one vertex")
    return (n + 1) // 2, (n + 2) // 2


# ---------------------------------------------------------------------------
# the median-eigenvalue index and its certificates
# ---------------------------------------------------------------------------

CERTIFIED_LE_ONE = "certified-le-one"
CERTIFIED_GT_ONE = "certified-gt-one"
FLOAT_ONLY = "float-only"


@dataclass(frozen=True)
class HLIndex:
    """max(|median-high eigenvalue|, |median-low eigenvalue|) of a graph."""

    h: int
    l: int
    value: float
    exact_le_one: str  # CERTIFIED_LE_ONE | CERTIFIED_GT_ONE | FLOAT_ONLY


@dataclass(frozen=True)
class RBoundCertificate:
    """Exact certificate that both median eigenvalues lie in [-bound, bound].

    holds is derived purely from the two inertia counts: at most h-1
    eigenvalues exceed the bound and at most n-l lie below its negation.
    Eigenvalues exactly at the bound satisfy it.
    """

    bound: str
    holds: bool
    at_upper: InertiaCount
    at_lower: InertiaCount
    h: int
    l: int


def certify_R_le(g: Graph, bound: ExactNumber) -> RBoundCertificate:
    if g.n < 1:
        raise ValueError("empty graph has no median eigenvalues")
    h, l = median_positions(g.n)
    upper = count_at_threshold(g, bound)
    neg_bound = -bound if isinstance(bound, Sqrt2Rational) else -Fraction(bound)
    lower = count_at_threshold(g, neg_bound)
    holds = upper.above <= h - 1 and lower.below <= g.n - l
    return RBoundCertificate(
        bound=threshold_token(bound),
        holds=holds,
        at_upper=upper,
        at_lower=lower,
        h=h,
        l=l,
    )


def hl_index(g: Graph, exact: bool = True) -> HLIndex:
    if g.n < 1:
        raise ValueError("empty graph has no median eigenvalues")
    h, l = median_positions(g.n)
    s = spectrum(g)
    value = max(abs(s.value(h)), abs(s.value(l)))
    if exact:
        tag = CERTIFIED_LE_ONE if certify_R_le(g, 1).holds else CERTIFIED_GT_ONE
    else:
        tag = FLOAT_ONLY
    return HLIndex(h=h, l=l, value=value, exact_le_one=tag)


# ---------------------------------------------------------------------------
# floating inequality checks (interlacing, edge-partition bounds)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InterlacingCheck:
    """Outcome of checking deletion interlacing on a concrete instance."""

    passed: bool
    worst_slack: float
    k: int


def check_interlacing(g: Graph, deleted: frozenset[int] | set[int]) -> InterlacingCheck:
    """Check lam_i(g) >= lam_i(g - A) >= lam_{i+k}(g) for every valid i.

    A is the deleted vertex set, k = |A|.  Inequalities are allowed 2*eps of
    floating slack; worst_slack reports the tightest margin observed (negative
    means a violation of that size before slack).
    """
    from .graph_core import induced_delete  # local to avoid import clutter

    dset = set(deleted)
    k = len(dset)
    sub, _ = induced_delete(g, dset)
    s_full = spectrum(g)
    s_sub = spectrum(sub)
    slack = 2 * s_full.eps
    worst = 0.0
    passed = True
    for i in range(1, g.n - k + 1):
        m1 = s_full.value(i) - s_sub.value(i)
        m2 = s_sub.value(i) - s_full.value(i + k)
        worst = min(worst, m1, m2)
        if m1 < -slack or m2 < -slack:
            passed = False
    return InterlacingCheck(passed=passed, worst_slack=worst, k=k)


@dataclass(frozen=True)
class EdgePartitionCheck:
    """Outcome of the two-part spectral bound over an edge bipartition."""

    i: int
    j: int
    upper: tuple[float, float] | None  # (lhs, rhs) of lam_i(g) <= lam_j(g1) + lam_{i-j+1}(g2)
    lower: tuple[float, float] | None  # (lhs, rhs) of lam_i(g) >= lam_j(g1) + lam_{i-j+n}(g2)
    slack: float
    passed: bool


def check_edge_partition_bounds(
    g: Graph, part_edges: EdgeSet, i: int, j: int
) -> EdgePartitionCheck:
    """Check the spanning-edge-partition eigenvalue bounds at indices (i, j).

    g splits into g1 = (V, part_edges) and g2 = (V, remaining edges).  The
    upper form applies when i >= j, the lower form when i <= j; whichever
    forms apply are both checked, with 3*eps slack.
    """
    n = g.n
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"indices ({i},{j}) out of range 1..{n}")
    g1 = spanning_subgraph(g, part_edges)
    g2 = spanning_subgraph(g, part_edges.complement_in(g))
    s = spectrum(g)
    s1 = spectrum(g1)
    s2 = spectrum(g2)
    slack = 3 * s.eps
    upper = lower = None
    passed = True
    if i >= j:
        lhs = s.value(i)
        rhs = s1.value(j) + s2.value(i - j + 1)
        upper = (lhs, rhs)
        if lhs > rhs + slack:
            passed = False
    if i <= j:
        lhs = s.value(i)
        rhs = s1.value(j) + s2.value(i - j + n)
        lower = (lhs, rhs)
        if lhs < rhs - slack:
            passed = False
    return EdgePartitionCheck(i=i, j=j, upper=upper, lower=lower, slack=slack, passed=passed)
