"""Finite fields GF(p^n) as Z_p[x]/(f): construction, arithmetic, subgroups.

Elements carry two redundant encodings: a coefficient vector over the
basis {1, a, ..., a^(n-1)} where a is a root of the modulus, and a dense
integer index sum(coeffs[i] * p^i).  The index encoding gives O(1) bitset
addressing in the graph layer; 0 and 1 land on indices 0 and 1 for free.

All types are immutable values after construction; the internal caches on
``FieldSpec`` are filled during __init__ and only read afterwards.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterator, Sequence

from .polynomials import (
    ParseError,
    PrimePoly,
    find_irreducible,
    poly_is_irreducible,
)


class NonPrimeError(ValueError):
    """Raised when a field characteristic fails the primality check."""

    def __init__(self, p: int) -> None:
        super().__init__(f"{p} is not prime")
        self.p = p


class BadModulusError(ValueError):
    """Raised for a modulus that would not make the quotient ring a field."""


class NotADivisorError(ValueError):
    """Raised when a requested subgroup order does not divide q-1."""

    def __init__(self, s: int, group_order: int) -> None:
        super().__init__(f"{s} does not divide the group order {group_order}")
        self.s = s


def is_prime(n: int) -> bool:
    """Trial-division primality check, adequate below the q cap."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime factors of n in ascending order, by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def factor_prime_power(q: int) -> tuple[int, int]:
    """Split q into (p, n) with q = p^n, p prime; ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next((d for d in prime_factors(q)), q)
    n = 0
    m = q
    while m % p == 0:
        m //= p
        n += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, n


@dataclass(frozen=True)
class FieldElement:
    """A field element: basis coefficients plus the equivalent dense index."""

    coeffs: tuple[int, ...]
    index: int

    def __str__(self) -> str:
        return _coeffs_to_string(self.coeffs)


class FieldSpec:
    """The concrete field GF(p^n) behind a fixed irreducible monic modulus."""

    def __init__(self, p: int, n: int, modulus: PrimePoly) -> None:
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = modulus
        # x^(n+k) mod f as length-n coefficient rows, for k = 0..n-2
        self._reduction = self._reduction_rows()
        self._pow_p = tuple(p**i for i in range(n))
        self._coeff_cache: list[tuple[int, ...]] = [
            self._index_to_coeffs(i) for i in range(self.q)
        ]

    def __repr__(self) -> str:
        return f"GF({self.q}) = Z_{self.p}[x]/({self.modulus})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.modulus))

    def _reduction_rows(self) -> tuple[tuple[int, ...], ...]:
        # row k holds x^(n+k) mod f; row k+1 = x * row k, reduced via row 0
        p, n = self.p, self.n
        f = self.modulus.coeffs
        cur = [(-f[i]) % p for i in range(n)]
        rows = [tuple(cur)]
        for _ in range(max(0, n - 2)):
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                base = rows[0]
                cur = [(cur[i] + top * base[i]) % p for i in range(n)]
            rows.append(tuple(cur))
        return tuple(rows)

    def _index_to_coeffs(self, index: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            index, r = divmod(index, self.p)
            out.append(r)
        return tuple(out)

    def _coeffs_to_index(self, coeffs: Sequence[int]) -> int:
        return sum(c * w for c, w in zip(coeffs, self._pow_p))

    # element constructors

    def element(self, index: int) -> FieldElement:
        """The element with the given dense index in [0, q)."""
        if not 0 <= index < self.q:
            raise ValueError(f"index {index} outside [0, {self.q})")
        return FieldElement(self._coeff_cache[index], index)

    def from_coeffs(self, coeffs: Sequence[int]) -> FieldElement:
        """The element with the given basis coefficients (mod p, length <= n)."""
        if len(coeffs) > self.n:
            raise ValueError(f"coefficient vector longer than degree {self.n}")
        full = tuple(c % self.p for c in coeffs) + (0,) * (self.n - len(coeffs))
        return FieldElement(full, self._coeffs_to_index(full))

    def elements(self) -> Iterator[FieldElement]:
        for i in range(self.q):
            yield self.element(i)

    @property
    def zero(self) -> FieldElement:
        return self.element(0)

    @property
    def one(self) -> FieldElement:
        return self.element(1)

    # index-level arithmetic (hot paths in the graph layer)

    def add_index(self, i: int, j: int) -> int:
        if self.n == 1:
            return (i + j) % self.p
        if self.p == 2:
            return i ^ j
        a, b = self._coeff_cache[i], self._coeff_cache[j]
        return self._coeffs_to_index([(x + y) % self.p for x, y in zip(a, b)])

    def sub_index(self, i: int, j: int) -> int:
        if self.n == 1:
            return (i - j) % self.p
        if self.p == 2:
            return i ^ j
        a, b = self._coeff_cache[i], self._coeff_cache[j]
        return self._coeffs_to_index([(x - y) % self.p for x, y in zip(a, b)])

    def neg_index(self, i: int) -> int:
        if self.n == 1:
            return (-i) % self.p
        if self.p == 2:
            return i
        return self._coeffs_to_index([(-x) % self.p for x in self._coeff_cache[i]])

    def mul_index(self, i: int, j: int) -> int:
        if self.n == 1:
            return (i * j) % self.p
        return self._coeffs_to_index(
            self._mul_coeffs(self._coeff_cache[i], self._coeff_cache[j])
        )

    def _mul_coeffs(
        self, a: tuple[int, ...], b: tuple[int, ...]
    ) -> tuple[int, ...]:
        p, n = self.p, self.n
        prod = [0] * (2 * n - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                prod[i + j] = (prod[i + j] + ca * cb) % p
        out = prod[:n]
        for k in range(n - 1):
            top = prod[n + k]
            if top:
                row = self._reduction[k]
                for i in range(n):
                    out[i] = (out[i] + top * row[i]) % p
        return tuple(out)

    def pow_index(self, i: int, e: int) -> int:
        """i**e by square-and-multiply; exponent taken mod q-1 for i != 0.

        pow(0, 0) = 1, matching the empty-product convention.
        """
        if i == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("inverse of zero in a finite field")
            return 0
        e %= self.q - 1
        result = 1
        base = i
        while e:
            if e & 1:
                result = self.mul_index(result, base)
            base = self.mul_index(base, base)
            e >>= 1
        return result

    def inv_index(self, i: int) -> int:
        if i == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.pow_index(i, self.q - 2)

    # element-level arithmetic

    def add(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return self.element(self.add_index(x.index, y.index))

    def sub(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return self.element(self.sub_index(x.index, y.index))

    def neg(self, x: FieldElement) -> FieldElement:
        return self.element(self.neg_index(x.index))

    def mul(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return self.element(self.mul_index(x.index, y.index))

    def inv(self, x: FieldElement) -> FieldElement:
        return self.element(self.inv_index(x.index))

    def pow(self, x: FieldElement, e: int) -> FieldElement:
        return self.element(self.pow_index(x.index, e))

    def to_json_dict(self) -> dict:
        """Field description, schema {"p","n","modulus","q"}."""
        return {
            "p": self.p,
            "n": self.n,
            "modulus": list(self.modulus.coeffs),
            "q": self.q,
        }


def field_new(p: int, n: int, modulus: PrimePoly | None = None) -> FieldSpec:
    """Construct GF(p^n), with the canonical minimal modulus when none given.

    A supplied modulus must be monic, of degree n, and irreducible; a
    reducible modulus would make the quotient ring Z_p[x]/(f) fail to be a
    field, so it is rejected rather than silently accepted.
    """
    if not is_prime(p):
        raise NonPrimeError(p)
    if n < 1:
        raise ValueError(f"extension degree must be at least 1, got {n}")
    if modulus is None:
        modulus = find_irreducible(p, n)
    else:
        if modulus.p != p:
            raise BadModulusError(
                f"modulus over Z_{modulus.p} does not match characteristic {p}"
            )
        if modulus.degree != n:
            raise BadModulusError(
                f"modulus degree {modulus.degree} does not match extension degree {n}"
            )
        if not modulus.is_monic:
            raise BadModulusError(f"modulus {modulus} is not monic")
        if not poly_is_irreducible(modulus):
            raise BadModulusError(
                f"modulus {modulus} is reducible over Z_{p}: "
                "the quotient ring is not a field"
            )
    return FieldSpec(p, n, modulus)


def field_from_json_dict(data: dict) -> FieldSpec:
    modulus = PrimePoly(data["p"], tuple(data["modulus"]))
    field = field_new(data["p"], data["n"], modulus)
    if "q" in data and data["q"] != field.q:
        raise ValueError(f"inconsistent q: {data['q']} != {field.q}")
    return field


@dataclass(frozen=True)
class PowerTable:
    """Log/antilog tables for F*_q relative to the canonical generator.

    antilog[j] = g^(j+1), so antilog[q-2] = g^(q-1) = 1; log maps a nonzero
    element index to its exponent in [1, q-1].  The two are mutually
    inverse bijections.
    """

    generator: FieldElement
    antilog: tuple[int, ...]
    log: dict[int, int]

    @property
    def group_order(self) -> int:
        return len(self.antilog)

    def mul_index(self, i: int, j: int) -> int:
        """Table-based product, the fast route cross-checked against mul."""
        if i == 0 or j == 0:
            return 0
        s = self.log[i] + self.log[j]
        return self.antilog[(s - 1) % self.group_order]

    def pow_index(self, i: int, e: int) -> int:
        if i == 0:
            return 1 if e == 0 else 0
        s = self.log[i] * e
        return self.antilog[(s - 1) % self.group_order]


def primitive_element(field: FieldSpec) -> FieldElement:
    """The smallest-index generator of the cyclic group F*_q.

    A candidate g generates iff g^((q-1)/r) != 1 for every prime factor r
    of q-1; generators always exist since F*_q is cyclic.  The smallest-
    index tie-break makes power tables and derived graphs deterministic.
    """
    h = field.q - 1
    factors = prime_factors(h)
    for idx in range(1, field.q):
        if all(field.pow_index(idx, h // r) != 1 for r in factors):
            return field.element(idx)
    raise AssertionError(f"no generator found in {field!r}")  # unreachable


def power_tables(field: FieldSpec) -> PowerTable:
    """Build log/antilog tables from the canonical primitive element."""
    g = primitive_element(field)
    antilog = []
    cur = 1
    for _ in range(field.q - 1):
        cur = field.mul_index(cur, g.index)
        antilog.append(cur)
    log = {idx: j + 1 for j, idx in enumerate(antilog)}
    return PowerTable(generator=g, antilog=tuple(antilog), log=log)


@dataclass(frozen=True)
class ResidueSet:
    """A multiplicative subgroup of F*_q used as a Cayley connection set.

    ``members`` is a bitmask over element indices; ``m_or_order`` records
    the defining parameter (the exponent m, or the subgroup order s);
    ``d`` is the index of the subgroup in F*_q, so |members| = (q-1)/d.
    """

    field: FieldSpec
    members: int
    m_or_order: int
    d: int

    def __contains__(self, index: int) -> bool:
        return bool(self.members >> index & 1)

    def __len__(self) -> int:
        return self.members.bit_count()

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.field.q) if self.members >> i & 1)

    def is_symmetric(self) -> bool:
        """Whether the set is closed under negation (x in S => -x in S)."""
        neg = self.field.neg_index
        return all(self.members >> neg(i) & 1 for i in self.indices)


def residue_subgroup(field: FieldSpec, m: int) -> ResidueSet:
    """The m-th powers (F*_q)^m as a ResidueSet; |set| = (q-1)/gcd(m, q-1)."""
    if m < 1:
        raise ValueError(f"exponent must be at least 1, got {m}")
    mask = 0
    for i in range(1, field.q):
        mask |= 1 << field.pow_index(i, m)
    d = gcd(m, field.q - 1)
    return ResidueSet(field=field, members=mask, m_or_order=m, d=d)


def subgroup_of_order(field: FieldSpec, s: int) -> ResidueSet:
    """The unique subgroup of F*_q with s elements: powers of g^((q-1)/s)."""
    h = field.q - 1
    if s < 1 or h % s != 0:
        raise NotADivisorError(s, h)
    k = h // s
    g = primitive_element(field)
    step = field.pow_index(g.index, k)
    mask = 0
    cur = 1
    for _ in range(s):
        mask |= 1 << cur
        cur = field.mul_index(cur, step)
    return ResidueSet(field=field, members=mask, m_or_order=s, d=k)


# element text format: sums of terms c*a^k rendered in descending powers,
# e.g. "2a+1" or "a^2+2a+2"; prime-field elements render as plain integers.

_ELEMENT_TERM_RE = re.compile(
    r"\s*(?:(?P<coeff>\d+)\s*\*?\s*)?(?P<var>a)?(?:\s*\^\s*(?P<exp>\d+))?\s*"
)


def _coeffs_to_string(coeffs: tuple[int, ...]) -> str:
    parts = []
    for exp in range(len(coeffs) - 1, -1, -1):
        c = coeffs[exp]
        if c == 0:
            continue
        if exp == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else str(c)
            tail = "a" if exp == 1 else f"a^{exp}"
            parts.append(head + tail)
    return "+".join(parts) if parts else "0"


def element_to_string(field: FieldSpec, x: FieldElement | int) -> str:
    """Render an element in the additive basis notation, e.g. "2a+1"."""
    if isinstance(x, int):
        x = field.element(x)
    return _coeffs_to_string(x.coeffs)


def element_parse(field: FieldSpec, text: str) -> FieldElement:
    """Parse basis notation back into an element; inverse of element_to_string."""
    if not text.strip():
        raise ParseError("empty element text", 0)
    coeffs = [0] * field.n
    pos = 0
    for piece in text.split("+"):
        m = _ELEMENT_TERM_RE.fullmatch(piece)
        if not m or (m.group("coeff") is None and m.group("var") is None):
            raise ParseError(f"malformed term {piece.strip()!r}", pos)
        if m.group("exp") is not None and m.group("var") is None:
            raise ParseError("exponent without variable", pos)
        coeff = int(m.group("coeff")) if m.group("coeff") is not None else 1
        if m.group("var") is None:
            exp = 0
        elif m.group("exp") is None:
            exp = 1
        else:
            exp = int(m.group("exp"))
        if exp >= field.n:
            raise ParseError(
                f"power a^{exp} outside basis for degree {field.n}",
                pos + (m.start("exp") if m.group("exp") else m.start("var")),
            )
        if coeff >= field.p:
            raise ParseError(
                f"coefficient {coeff} outside [0, {field.p})",
                pos + m.start("coeff"),
            )
        coeffs[exp] = (coeffs[exp] + coeff) % field.p
        pos += len(piece) + 1
    return field.from_coeffs(coeffs)
