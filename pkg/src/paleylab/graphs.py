"""Cayley graphs on (F_q, +) for the Paley-type families, plus exports.

Adjacency rows are Python ints used as q-bit bitsets: bit y of row x is
set iff {x, y} is an edge.  Vertices are field element indices, so every
export is label-stable given the canonical modulus and generator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .fields import (
    FieldSpec,
    ResidueSet,
    element_to_string,
    primitive_element,
    residue_subgroup,
    subgroup_of_order,
)


class AsymmetricConnectionSetError(ValueError):
    """The connection set is not closed under negation.

    An asymmetric set would make the edge relation x-y in S direction
    dependent, so the undirected graph would be ill defined; this is the
    runtime form of the well-definedness remarks the families rely on.
    """

    def __init__(self, index: int) -> None:
        super().__init__(
            f"connection set is not symmetric: contains {index} but not its negative"
        )
        self.index = index


class CongruenceError(ValueError):
    """A family precondition on (p, n, q) failed; the message names it."""


class Graph:
    """Immutable undirected graph on [0, order) with bitset adjacency rows."""

    __slots__ = ("order", "rows", "label", "connection")

    def __init__(
        self,
        order: int,
        rows: Iterable[int],
        label: str = "",
        connection: tuple[int, ...] | None = None,
    ) -> None:
        self.order = order
        self.rows = tuple(rows)
        self.label = label
        self.connection = connection
        if len(self.rows) != order:
            raise ValueError(f"expected {order} rows, got {len(self.rows)}")
        self._validate()

    def _validate(self) -> None:
        for u, row in enumerate(self.rows):
            if row >> self.order:
                raise ValueError(f"row {u} has bits beyond the vertex range")
            if row >> u & 1:
                raise ValueError(f"loop at vertex {u}")
            rest = row
            while rest:
                v = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if not self.rows[v] >> u & 1:
                    raise ValueError(f"adjacency not symmetric at ({u}, {v})")

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (min, max) pairs in ascending order."""
        for u in range(self.order):
            rest = self.rows[u] >> (u + 1) << (u + 1)
            while rest:
                v = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                yield (u, v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.order == other.order and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.order, self.rows))

    def __repr__(self) -> str:
        name = self.label or "graph"
        return f"{name}: {self.order} vertices, {self.edge_count()} edges"


def _connection_mask(field: FieldSpec, connection) -> int:
    if isinstance(connection, ResidueSet):
        return connection.members
    if isinstance(connection, int):
        return connection
    mask = 0
    for i in connection:
        mask |= 1 << i
    return mask


def build_cayley(field: FieldSpec, connection, label: str = "") -> Graph:
    """Cayley graph on (F_q, +): edge {x, y} iff x - y is in the connection.

    ``connection`` may be a ResidueSet, an iterable of element indices, or
    a raw bitmask; it must be a subset of F*_q and symmetric under
    negation.  The result is |connection|-regular.
    """
    q = field.q
    mask = _connection_mask(field, connection)
    if mask & 1:
        raise ValueError("connection set contains 0")
    if mask >> q:
        raise ValueError("connection set contains indices outside the field")
    members = []
    rest = mask
    while rest:
        i = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        members.append(i)
    for i in members:
        if not mask >> field.neg_index(i) & 1:
            raise AsymmetricConnectionSetError(i)

    if field.n == 1:
        # index addition is rotation mod q: row x = S-mask rotated left by x
        full = (1 << q) - 1
        rows = [
            ((mask << x) | (mask >> (q - x))) & full if x else mask
            for x in range(q)
        ]
    else:
        add = field.add_index
        rows = []
        for x in range(q):
            row = 0
            for s in members:
                row |= 1 << add(x, s)
            rows.append(row)
    assert all(row.bit_count() == len(members) for row in rows)
    return Graph(q, rows, label=label, connection=tuple(members))


class Family(Enum):
    PALEY = "paley"
    CUBIC_PALEY = "cubic"
    QUADRUPLE_PALEY = "quadruple"
    GENERALIZED_PALEY = "gpaley"
    M_PALEY = "mpaley"
    P_STAR = "pstar"


@dataclass(frozen=True)
class FamilySpec:
    """A graph family instance: the variant, its field, and the parameter.

    ``param`` is k for the generalized family (connection = subgroup of
    order (q-1)/k) and m for the m-power family; unused otherwise.
    """

    family: Family
    field: FieldSpec
    param: int | None = None


def _require(ok: bool, message: str) -> None:
    if not ok:
        raise CongruenceError(message)


def pstar_connection(field: FieldSpec) -> tuple[int, ...]:
    """The set M = {g^j : j = 0, 1 mod 4} over the canonical generator g."""
    g = primitive_element(field)
    out = []
    cur = 1
    for j in range(field.q - 1):
        if j % 4 in (0, 1):
            out.append(cur)
        cur = field.mul_index(cur, g.index)
    return tuple(sorted(out))


def build_family(spec: FamilySpec) -> Graph:
    """Build one of the Paley-type families, validating its congruences.

    Preconditions, enforced here rather than left to the caller:
      paley      q = 1 (mod 4)
      cubic      p odd, q = 1 (mod 3)
      quadruple  p odd, q = 1 (mod 8)
      gpaley(k)  k >= 2, k | q-1, (q-1)/k even when q odd
      mpaley(m)  p odd, m odd, m >= 3
      pstar      q = 1 (mod 4); the derived set M must pass the symmetry
                 check, which can legitimately fail and is surfaced

    Even-q generalized Paley graphs are accepted but experimental: the
    evenness condition is vacuous there and the literature definition is
    stated for the odd case.
    """
    field = spec.field
    q, p = field.q, field.p
    fam = spec.family
    if fam is Family.PALEY:
        _require(q % 4 == 1, f"{q} ≢ 1 (mod 4)")
        return build_cayley(field, residue_subgroup(field, 2), f"Paley({q})")
    if fam is Family.CUBIC_PALEY:
        _require(p % 2 == 1, f"characteristic {p} is even")
        _require(q % 3 == 1, f"{q} ≢ 1 (mod 3)")
        return build_cayley(field, residue_subgroup(field, 3), f"CubicPaley({q})")
    if fam is Family.QUADRUPLE_PALEY:
        _require(p % 2 == 1, f"characteristic {p} is even")
        _require(q % 8 == 1, f"{q} ≢ 1 (mod 8)")
        return build_cayley(
            field, residue_subgroup(field, 4), f"QuadruplePaley({q})"
        )
    if fam is Family.GENERALIZED_PALEY:
        k = spec.param
        if k is None:
            raise ValueError("generalized Paley graphs need the parameter k")
        _require(k >= 2, f"k = {k} < 2")
        _require((q - 1) % k == 0, f"{k} does not divide q-1 = {q - 1}")
        s = (q - 1) // k
        if q % 2 == 1:
            _require(s % 2 == 0, f"(q-1)/k = {s} is odd for odd q = {q}")
        return build_cayley(field, subgroup_of_order(field, s), f"GPaley({q},{s})")
    if fam is Family.M_PALEY:
        m = spec.param
        if m is None:
            raise ValueError("m-Paley graphs need the parameter m")
        _require(p % 2 == 1, f"characteristic {p} is even")
        _require(m % 2 == 1 and m >= 3, f"m = {m} is not an odd integer >= 3")
        return build_cayley(field, residue_subgroup(field, m), f"{m}-Paley({q})")
    if fam is Family.P_STAR:
        _require(q % 4 == 1, f"{q} ≢ 1 (mod 4)")
        return build_cayley(field, pstar_connection(field), f"PStar({q})")
    raise ValueError(f"unknown family {fam!r}")


def complement(g: Graph) -> Graph:
    """Complement graph: bitwise-complemented rows minus the diagonal."""
    full = (1 << g.order) - 1
    rows = [full ^ row ^ (1 << x) for x, row in enumerate(g.rows)]
    connection = None
    if g.connection is not None:
        have = set(g.connection)
        connection = tuple(i for i in range(1, g.order) if i not in have)
    label = f"complement({g.label})" if g.label else ""
    return Graph(g.order, rows, label=label, connection=connection)


def export(g: Graph, fmt: str, field: FieldSpec | None = None) -> str:
    """Serialize a graph as "edges", "dot", or "json"; output is deterministic.

    Edges are emitted as "u v" lines with u < v, ascending.  DOT names
    vertices by their element strings when a field is supplied, otherwise
    by index.  JSON follows {"family", "q", "connection", "edges"}.
    """
    if fmt == "edges":
        return "\n".join(f"{u} {v}" for u, v in g.edges())
    if fmt == "dot":
        if field is not None:
            names = [element_to_string(field, i) for i in range(g.order)]
        else:
            names = [str(i) for i in range(g.order)]
        lines = [f'graph "{g.label}" {{']
        seen = 0
        for u, v in g.edges():
            lines.append(f'  "{names[u]}" -- "{names[v]}";')
            seen |= (1 << u) | (1 << v)
        for u in range(g.order):
            if not seen >> u & 1:
                lines.append(f'  "{names[u]}";')
        lines.append("}")
        return "\n".join(lines)
    if fmt == "json":
        payload = {
            "family": g.label,
            "q": g.order,
            "connection": list(g.connection) if g.connection is not None else None,
            "edges": [[u, v] for u, v in g.edges()],
        }
        return json.dumps(payload)
    raise ValueError(f"unknown export format {fmt!r}")


def parse_edge_list(text: str, order: int, label: str = "") -> Graph:
    """Rebuild a graph from "u v" lines; inverse of the edges export."""
    rows = [0] * order
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < order and 0 <= v < order):
            raise ValueError(f"line {lineno}: vertex outside [0, {order})")
        if u == v:
            raise ValueError(f"line {lineno}: loop at {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(order, rows, label=label)
