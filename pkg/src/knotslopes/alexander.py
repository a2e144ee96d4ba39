"""Alexander polynomials by three independent routes, plus the tests run on them.

* Fox calculus on the Wirtinger presentation of a diagram,
* the reduced Burau representation of a braid,
* the closed formula for torus knots.

All arithmetic is exact.  Results are returned in canonical form: lowest
exponent 0 and positive constant coefficient.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .diagram import BraidWord, PlanarDiagram, braid_closure
from .errors import DomainError
from .laurent import LaurentPolynomial, determinant

__all__ = [
    "CanonicalAlexander",
    "Obstruction",
    "alexander_from_braid",
    "alexander_from_diagram",
    "canonicalize",
    "coefficient_of_t",
    "genus_lower_bound",
    "is_monic",
    "lspace_coefficient_obstruction",
    "multiply",
    "torus_alexander",
    "torus_braid",
    "twist_alexander",
]

T = LaurentPolynomial.monomial(1, 1)
ONE = LaurentPolynomial.constant(1)
ZERO = LaurentPolynomial()


@dataclass(frozen=True)
class CanonicalAlexander:
    poly: LaurentPolynomial

    def __post_init__(self):
        p = self.poly
        if p.is_zero():
            raise DomainError("the zero polynomial is not an Alexander polynomial")
        if p.min_degree != 0 or p[0] <= 0:
            raise DomainError("CanonicalAlexander needs lowest exponent 0 and positive constant")

    @property
    def span(self) -> int:
        return self.poly.max_degree

    @property
    def coefficients(self) -> list[int]:
        return self.poly.coefficient_list()

    def is_palindromic(self) -> bool:
        c = self.coefficients
        return c == c[::-1]

    def value_at_one(self) -> int:
        return self.poly(1)

    def render(self) -> str:
        return self.poly.render()

    def render_symmetric(self) -> str:
        """Symmetric representative ``t^{-span/2} * poly`` (needs even span)."""
        if self.span % 2:
            raise DomainError("odd span has no symmetric representative")
        return self.poly.shift(-(self.span // 2)).render()

    def to_json(self):
        return self.poly.to_json()

    def __str__(self):
        return self.render()

    def __eq__(self, other):
        if isinstance(other, CanonicalAlexander):
            return self.poly == other.poly
        if isinstance(other, (LaurentPolynomial, int)):
            return self.poly == other
        return NotImplemented

    def __hash__(self):
        return hash(self.poly)

    @classmethod
    def parse(cls, text: str) -> CanonicalAlexander:
        return canonicalize(LaurentPolynomial.parse(text))


def canonicalize(p: LaurentPolynomial) -> CanonicalAlexander:
    """Multiply by the unit ``±t^k`` giving lowest exponent 0 and positive constant."""
    if p.is_zero():
        raise DomainError("the zero polynomial is not an Alexander polynomial")
    q = p.shift(-p.min_degree)
    if q[0] < 0:
        q = -q
    return CanonicalAlexander(q)


# ---------------------------------------------------------------------------
# Fox calculus


def _wirtinger_matrix(d: PlanarDiagram) -> list[list[LaurentPolynomial]]:
    parent: dict[int, int] = {e: e for e in d.edges}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for c in d.crossings:
        a, b = find(c.over_in), find(c.over_out)
        if a != b:
            parent[a] = b
    arcs = sorted({find(e) for e in d.edges})
    index = {a: i for i, a in enumerate(arcs)}
    n = len(d.crossings)
    if len(arcs) != n:
        raise DomainError("diagram has a crossingless arc configuration")  # pragma: no cover
    one_minus_t = ONE - T
    m = [[ZERO] * n for _ in range(n)]
    for r, c in enumerate(d.crossings):
        over = index[find(c.over_in)]
        u_in = index[find(c.under_in)]
        u_out = index[find(c.under_out)]
        row = m[r]
        row[over] = row[over] + one_minus_t
        if c.sign > 0:
            row[u_in] = row[u_in] + T
            row[u_out] = row[u_out] - ONE
        else:
            row[u_in] = row[u_in] - ONE
            row[u_out] = row[u_out] + T
    return m


def alexander_from_diagram(d: PlanarDiagram) -> CanonicalAlexander:
    """Fox-calculus Alexander polynomial of a knot diagram."""
    if not d.is_knot():
        raise DomainError(
            f"alexander_from_diagram needs a knot; got {d.component_count} components"
        )
    if d.crossing_count == 0:
        return CanonicalAlexander(ONE)
    m = _wirtinger_matrix(d)
    minor = [row[1:] for row in m[1:]]
    return canonicalize(determinant(minor))


# ---------------------------------------------------------------------------
# reduced Burau


def _burau_generator(n: int, i: int, inverse: bool) -> list[list[LaurentPolynomial]]:
    size = n - 1
    mat = [[ONE if r == c else ZERO for c in range(size)] for r in range(size)]
    tinv = LaurentPolynomial.monomial(1, -1)
    if n == 2:
        mat[0][0] = -tinv if inverse else -T
        return mat
    if not inverse:
        mid = -T
        left, right = T, ONE  # row i-1 gets t at column i; row i+1 gets 1 at column i
    else:
        mid = -tinv
        left, right = ONE, tinv
    k = i - 1  # 0-based row of the generator block centre
    mat[k][k] = mid
    if k - 1 >= 0:
        mat[k - 1][k] = left
    if k + 1 < size:
        mat[k + 1][k] = right
    return mat


def _matmul(a, b):
    n = len(a)
    out = [[ZERO] * n for _ in range(n)]
    for r in range(n):
        for k in range(n):
            x = a[r][k]
            if x.is_zero():
                continue
            for c in range(n):
                y = b[k][c]
                if not y.is_zero():
                    out[r][c] = out[r][c] + x * y
    return out


def reduced_burau(b: BraidWord) -> list[list[LaurentPolynomial]]:
    n = b.strand_count
    size = n - 1
    mat = [[ONE if r == c else ZERO for c in range(size)] for r in range(size)]
    for letter in b.letters:
        mat = _matmul(mat, _burau_generator(n, abs(letter), letter < 0))
    return mat


def alexander_from_braid(b: BraidWord) -> CanonicalAlexander:
    """Alexander polynomial of a closed braid via det(I - Burau) / (1 + ... + t^{n-1})."""
    if b.cycle_count() != 1:
        raise DomainError(f"braid closure has {b.cycle_count()} components, not a knot")
    n = b.strand_count
    if n == 1:
        return CanonicalAlexander(ONE)
    mat = reduced_burau(b)
    diff = [[(ONE if r == c else ZERO) - mat[r][c] for c in range(n - 1)] for r in range(n - 1)]
    num = determinant(diff)
    den = LaurentPolynomial.from_coefficients([1] * n)
    return canonicalize(num.divmod_exact(den))


# ---------------------------------------------------------------------------
# torus knots


def _check_torus(p: int, q: int) -> tuple[int, int]:
    if abs(p) < 2 or abs(q) < 2:
        raise DomainError(f"T({p},{q}) is degenerate (needs |p|, |q| >= 2)")
    if math.gcd(p, q) != 1:
        raise DomainError(f"T({p},{q}) is not a knot: gcd({p},{q}) != 1")
    return abs(p), abs(q)


def torus_alexander(p: int, q: int) -> CanonicalAlexander:
    """(t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)); mirror-invariant in the sign of p."""
    p, q = _check_torus(p, q)
    num = (T ** (p * q) - ONE) * (T - ONE)
    den = (T**p - ONE) * (T**q - ONE)
    return canonicalize(num.divmod_exact(den))


def torus_braid(p: int, q: int) -> BraidWord:
    """(sigma_1 ... sigma_{q-1})^p on q strands; negative p gives the mirror."""
    _check_torus(p, q)
    q = abs(q)
    s = 1 if p > 0 else -1
    return BraidWord(q, tuple(s * i for i in range(1, q)) * abs(p))


def twist_alexander(n: int) -> CanonicalAlexander:
    """Twist knot with n full twists: n - (2n+1)t + n t^2 (n=1 is the figure-eight)."""
    if n < 1:
        raise DomainError("twist_alexander needs n >= 1")
    return CanonicalAlexander(LaurentPolynomial.from_coefficients([n, -(2 * n + 1), n]))


# ---------------------------------------------------------------------------
# tests on polynomials


def multiply(a: CanonicalAlexander, b: CanonicalAlexander) -> CanonicalAlexander:
    return canonicalize(a.poly * b.poly)


def coefficient_of_t(a: CanonicalAlexander) -> int:
    """Degree-1 coefficient; requires the constant term to be 1."""
    if a.poly[0] != 1:
        raise DomainError(f"coefficient_of_t requires constant term 1, got {a.poly[0]}")
    return a.poly[1]


def is_monic(a: CanonicalAlexander) -> bool:
    return abs(a.poly[a.span]) == 1 and abs(a.poly[0]) == 1


class Obstruction(enum.Enum):
    OBSTRUCTED = "Obstructed"
    NOT_OBSTRUCTED = "NotObstructed"

    def __str__(self):
        return self.value


def lspace_coefficient_obstruction(a: CanonicalAlexander, strict: bool = False) -> Obstruction:
    """Obstructed when a coefficient has magnitude >= 2.

    With ``strict=True`` the nonzero coefficients must in addition be ±1 with
    alternating signs (the stronger classical shape test for L-space knots).
    """
    coeffs = a.coefficients
    if any(abs(c) >= 2 for c in coeffs):
        return Obstruction.OBSTRUCTED
    if strict:
        nz = [c for c in coeffs if c]
        if any(x == y for x, y in zip(nz, nz[1:])):
            return Obstruction.OBSTRUCTED
    return Obstruction.NOT_OBSTRUCTED


def genus_lower_bound(a: CanonicalAlexander) -> int:
    if a.span % 2:
        raise DomainError(f"odd span {a.span}: not the Alexander polynomial of a knot")
    return a.span // 2


def alexander_of_braid_closure(b: BraidWord) -> CanonicalAlexander:
    """Convenience: Fox route on the closure diagram."""
    return alexander_from_diagram(braid_closure(b))
