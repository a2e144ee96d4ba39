"""Exact integer Laurent polynomials in one variable ``t``.

Coefficients are Python ints, so there is no overflow.  The zero polynomial
is the empty mapping.  Instances are immutable and hashable.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, ParseError

__all__ = ["LaurentPolynomial", "determinant"]


class LaurentPolynomial:
    __slots__ = ("_c", "_hash")

    def __init__(self, coefficients: Mapping[int, int] | None = None):
        c = {}
        if coefficients:
            for e, a in coefficients.items():
                if a:
                    c[int(e)] = int(a)
        self._c = c
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def constant(cls, a: int) -> LaurentPolynomial:
        return cls({0: a})

    @classmethod
    def monomial(cls, a: int, e: int) -> LaurentPolynomial:
        return cls({e: a})

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[int], low: int = 0) -> LaurentPolynomial:
        """Build ``sum coeffs[i] * t**(low + i)``."""
        return cls({low + i: a for i, a in enumerate(coeffs)})

    # inspection ---------------------------------------------------------

    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self._c)

    def __getitem__(self, e: int) -> int:
        return self._c.get(e, 0)

    def is_zero(self) -> bool:
        return not self._c

    @property
    def min_degree(self) -> int:
        if not self._c:
            raise DomainError("zero polynomial has no degree")
        return min(self._c)

    @property
    def max_degree(self) -> int:
        if not self._c:
            raise DomainError("zero polynomial has no degree")
        return max(self._c)

    @property
    def span(self) -> int:
        return self.max_degree - self.min_degree

    def terms(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs in ascending exponent order."""
        return sorted(self._c.items())

    def coefficient_list(self) -> list[int]:
        """Dense coefficients from min_degree to max_degree."""
        if not self._c:
            return []
        lo, hi = self.min_degree, self.max_degree
        return [self._c.get(e, 0) for e in range(lo, hi + 1)]

    def __call__(self, x):
        """Evaluate at ``x`` (int, Fraction, ...).  Negative powers need x != 0."""
        total = 0
        for e, a in self._c.items():
            total += a * (x**e)
        return total

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> LaurentPolynomial:
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, a in other._c.items():
            c[e] = c.get(e, 0) + a
        return LaurentPolynomial(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c: dict[int, int] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + a1 * a2
        return LaurentPolynomial(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative powers are only defined for monomials")
        result = LaurentPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> LaurentPolynomial:
        """Multiply by t**k."""
        return LaurentPolynomial({e + k: a for e, a in self._c.items()})

    def substitute_inverse(self) -> LaurentPolynomial:
        """Return p(1/t)."""
        return LaurentPolynomial({-e: a for e, a in self._c.items()})

    def divmod_exact(self, other: LaurentPolynomial) -> LaurentPolynomial:
        """Exact quotient ``self / other`` in Z[t, 1/t].

        Raises DomainError when the division leaves a remainder or needs
        non-integer coefficients.
        """
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPolynomial()
        # long division from the top degree, dense arrays
        num = self.coefficient_list()
        den = other.coefficient_list()
        lead = den[-1]
        dn = len(den) - 1
        if len(num) < len(den):
            raise DomainError("inexact polynomial division")
        quot = [0] * (len(num) - dn)
        rem = list(num)
        for i in range(len(num) - 1, dn - 1, -1):
            a = rem[i]
            if a == 0:
                continue
            q, r = divmod(a, lead)
            if r:
                raise DomainError("inexact polynomial division (non-integral coefficient)")
            quot[i - dn] = q
            for j in range(dn + 1):
                rem[i - dn + j] -= q * den[j]
        if any(rem):
            raise DomainError("inexact polynomial division")
        return LaurentPolynomial.from_coefficients(quot, self.min_degree - other.min_degree)

    def __floordiv__(self, other):
        return self.divmod_exact(other)

    def reduce_mod(self, p: int) -> LaurentPolynomial:
        """Coefficients reduced into range(p)."""
        return LaurentPolynomial({e: a % p for e, a in self._c.items()})

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    # text ---------------------------------------------------------------

    def __repr__(self):
        return f"LaurentPolynomial({self.render()!r})"

    def __str__(self):
        return self.render()

    def render(self, var: str = "t") -> str:
        """Ascending exponents with explicit signs, e.g. ``1 - t + t^2``."""
        if not self._c:
            return "0"
        parts = []
        for i, (e, a) in enumerate(self.terms()):
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if e == 0:
                body = str(mag)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                body = mono if mag == 1 else f"{mag}{mono}"
            if i == 0:
                parts.append(("-" if a < 0 else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def to_json(self) -> list[list[str]]:
        """Exponent/coefficient pairs as strings (exact for any consumer)."""
        return [[str(e), str(a)] for e, a in self.terms()]

    @classmethod
    def from_json(cls, pairs: Iterable[Sequence]) -> LaurentPolynomial:
        return cls({int(e): int(a) for e, a in pairs})

    _TERM = re.compile(
        r"""\s*(?P<sign>[+-])?\s*
            (?:
              (?P<coef>\d+)?\s*\*?\s*(?P<var>[a-zA-Z])(?:\s*\^\s*(?P<exp>[+-]?\d+|\(\s*[+-]?\d+\s*\)))?
            | (?P<const>\d+)
            )\s*""",
        re.VERBOSE,
    )

    @classmethod
    def parse(cls, text: str, var: str = "t") -> LaurentPolynomial:
        """Inverse of :meth:`render`; also accepts ``2*t^-1`` and ``t^(-1)``."""
        s = text.strip()
        if not s:
            raise ParseError("empty polynomial")
        if s == "0":
            return cls()
        c: dict[int, int] = {}
        pos = 0
        first = True
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ParseError(f"cannot parse polynomial near {s[pos:]!r}")
            if not first and m.group("sign") is None:
                raise ParseError(f"missing sign before {s[pos:]!r}")
            sign = -1 if m.group("sign") == "-" else 1
            if m.group("const") is not None:
                e, a = 0, int(m.group("const"))
            else:
                if m.group("var") != var:
                    raise ParseError(f"unexpected variable {m.group('var')!r}")
                a = int(m.group("coef")) if m.group("coef") else 1
                raw = m.group("exp")
                e = int(raw.strip("() ")) if raw else 1
            c[e] = c.get(e, 0) + sign * a
            pos = m.end()
            first = False
        return cls(c)


def determinant(matrix: Sequence[Sequence[LaurentPolynomial]]) -> LaurentPolynomial:
    """Fraction-free (Bareiss) determinant over Z[t, 1/t].

    Every division in the elimination is exact, so intermediate entries stay
    in the ring and no rational functions appear.
    """
    n = len(matrix)
    if n == 0:
        return LaurentPolynomial.constant(1)
    m = [[LaurentPolynomial._coerce(x) for x in row] for row in matrix]
    if any(len(row) != n for row in m):
        raise DomainError("determinant needs a square matrix")
    sign = 1
    prev = LaurentPolynomial.constant(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return LaurentPolynomial()
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                val = row_i[j] * pivot - mik * row_k[j]
                row_i[j] = val.divmod_exact(prev) if not val.is_zero() else val
            row_i[k] = LaurentPolynomial()
        prev = pivot
    result = m[n - 1][n - 1]
    return result if sign > 0 else -result
