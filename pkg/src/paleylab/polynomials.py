"""Polynomial arithmetic over Z_p and irreducibility testing.

Polynomials are coefficient tuples over Z_p, index i holding the
coefficient of x^i, with trailing zeros stripped.  The zero polynomial is
the empty tuple.  ``PrimePoly`` is the validated public carrier; the
module-level helpers work on raw tuples and are shared with the field
layer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence


class ParseError(ValueError):
    """Raised on malformed polynomial or element text; carries the offset."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


def trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    """Strip trailing zero coefficients."""
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(coeffs: Sequence[int]) -> int:
    """Degree of a trimmed coefficient tuple; -1 for the zero polynomial."""
    return len(coeffs) - 1


def poly_add(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] = (out[i + j] + ca * cb) % p
    return trim(out)


def poly_divmod(
    a: Sequence[int], b: Sequence[int], p: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Quotient and remainder of a by b over Z_p; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero polynomial")
    rem = list(a)
    if len(rem) < len(b):
        return (), trim(rem)
    inv_lead = pow(b[-1], -1, p)
    quot = [0] * (len(rem) - len(b) + 1)
    for shift in range(len(quot) - 1, -1, -1):
        c = rem[shift + len(b) - 1]
        if c == 0:
            continue
        factor = (c * inv_lead) % p
        quot[shift] = factor
        for i, bc in enumerate(b):
            rem[shift + i] = (rem[shift + i] - factor * bc) % p
    return trim(quot), trim(rem)


def poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    return poly_divmod(a, b, p)[1]


def monic_polys(p: int, deg: int) -> Iterator[tuple[int, ...]]:
    """All monic polynomials of the given degree over Z_p, in base-p order.

    Base-p order: the lower-coefficient tuple (f_0, ..., f_{deg-1}) read as
    a base-p integer with f_0 least significant.
    """
    for lower in product(range(p), repeat=deg):
        # product varies the last position fastest; reverse so f_0 is fastest
        yield lower[::-1] + (1,)


@dataclass(frozen=True)
class PrimePoly:
    """A polynomial over Z_p: prime modulus plus trimmed coefficient tuple."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.p < 2:
            raise ValueError(f"modulus must be at least 2, got {self.p}")
        object.__setattr__(self, "coeffs", trim(self.coeffs))
        if any(not 0 <= c < self.p for c in self.coeffs):
            raise ValueError(f"coefficients must lie in [0, {self.p})")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __str__(self) -> str:
        return poly_to_string(self)

    @classmethod
    def parse(cls, text: str, p: int) -> "PrimePoly":
        return poly_parse(text, p)


def poly_is_irreducible(f: PrimePoly) -> bool:
    """Decide irreducibility over Z_p by full trial division.

    Divides by every monic polynomial of degree 1..deg/2; a root-only test
    misses repeated quadratic factors from degree 4 on (x^4+x^2+1 over Z_2
    is root-free but splits as (x^2+x+1)^2).  Degree-1 polynomials are
    always irreducible.  Constant and zero polynomials are invalid
    candidates and rejected.
    """
    if f.is_zero or f.degree == 0:
        raise ValueError("irreducibility is undefined for constant polynomials")
    if f.degree == 1:
        return True
    for d in range(1, f.degree // 2 + 1):
        for g in monic_polys(f.p, d):
            if not poly_mod(f.coeffs, g, f.p):
                return False
    return True


def find_irreducible(p: int, n: int) -> PrimePoly:
    """Smallest monic irreducible of degree n over Z_p.

    Candidates are ordered by the lower coefficient tuple (f_0,...,f_{n-1})
    read as a base-p integer, so the result is a reproducible canonical
    modulus.  Irreducibles exist for every (p, n), hence this always
    returns.
    """
    if n < 1:
        raise ValueError(f"degree must be at least 1, got {n}")
    for coeffs in monic_polys(p, n):
        f = PrimePoly(p, coeffs)
        if poly_is_irreducible(f):
            return f
    raise AssertionError(f"no irreducible of degree {n} over Z_{p}")  # unreachable


_TERM_RE = re.compile(
    r"\s*(?:(?P<coeff>\d+)\s*\*?\s*)?(?P<var>[a-zA-Z])?(?:\s*\^\s*(?P<exp>\d+))?\s*"
)


def _parse_terms(text: str, var: str) -> list[tuple[int, int, int]]:
    """Split text into (coefficient, exponent, position) triples.

    Accepts any term order, an optional '*' between coefficient and
    variable, and surrounding whitespace.
    """
    if not text.strip():
        raise ParseError("empty polynomial text", 0)
    terms = []
    pos = 0
    for piece in text.split("+"):
        m = _TERM_RE.fullmatch(piece)
        if not m or (m.group("coeff") is None and m.group("var") is None):
            raise ParseError(f"malformed term {piece.strip()!r}", pos)
        if m.group("var") is not None and m.group("var") != var:
            raise ParseError(
                f"unexpected variable {m.group('var')!r}, expected {var!r}",
                pos + m.start("var"),
            )
        if m.group("exp") is not None and m.group("var") is None:
            raise ParseError("exponent without variable", pos)
        coeff = int(m.group("coeff")) if m.group("coeff") is not None else 1
        if m.group("var") is None:
            exp = 0
        elif m.group("exp") is None:
            exp = 1
        else:
            exp = int(m.group("exp"))
        terms.append((coeff, exp, pos))
        pos += len(piece) + 1
    return terms


def poly_parse(text: str, p: int) -> PrimePoly:
    """Parse text like "x^4+x+1" (any term order) into a PrimePoly.

    Coefficients are decimal integers, reduced mod p.
    """
    terms = _parse_terms(text, "x")
    deg = max(exp for _, exp, _ in terms)
    coeffs = [0] * (deg + 1)
    for coeff, exp, _ in terms:
        coeffs[exp] = (coeffs[exp] + coeff) % p
    return PrimePoly(p, tuple(coeffs))


def poly_to_string(f: PrimePoly) -> str:
    """Render in descending powers: "x^4+x+1"; the zero polynomial is "0"."""
    if f.is_zero:
        return "0"
    parts = []
    for exp in range(f.degree, -1, -1):
        c = f.coeffs[exp]
        if c == 0:
            continue
        if exp == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else str(c)
            tail = "x" if exp == 1 else f"x^{exp}"
            parts.append(head + tail)
    return "+".join(parts)
