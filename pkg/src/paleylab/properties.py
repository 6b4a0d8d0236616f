"""Checkers for the structural claims about the graph families.

Every checker either certifies a property or hands back a replayable
witness of its failure: a vertex pair with unequal degrees, a subset pair
(S, T) with no valid outside vertex, and so on.  Witnesses are always the
lexicographically first failure so regression tests stay deterministic.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .fields import FieldElement, FieldSpec, ResidueSet
from .graphs import Graph, complement


class CapExceededError(ValueError):
    """A subset-enumeration size cap was exceeded."""

    def __init__(self, requested: int, cap: int) -> None:
        super().__init__(f"subset size {requested} exceeds the cap {cap}")
        self.requested = requested
        self.cap = cap


class NonAutomorphismError(RuntimeError):
    """An affine map the proofs rely on failed to preserve adjacency.

    Impossible for multiplicatively closed connection sets, so for those
    this is an internal-consistency alarm; for ad-hoc connection sets
    (e.g. the P* set M) it is a genuine outcome and carries the witness.
    """

    def __init__(self, witness: "Witness") -> None:
        super().__init__(
            f"map x -> {witness.params[0]}*x + {witness.params[1]} "
            f"does not preserve adjacency at {witness.vertices}"
        )
        self.witness = witness


EC_N_CAP = 4
PMNK_CAP = 6


@dataclass(frozen=True)
class SrgParams:
    """Strongly-regular parameters (n, k, lam, mu); the identity
    mu*(n-k-1) = k*(k-lam-1) is enforced at construction."""

    n: int
    k: int
    lam: int
    mu: int

    def __post_init__(self) -> None:
        if self.mu * (self.n - self.k - 1) != self.k * (self.k - self.lam - 1):
            raise ValueError(f"srg identity fails for {self}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.lam, self.mu)


@dataclass(frozen=True)
class Witness:
    """A replayable counterexample; shape of ``vertices`` depends on kind.

    kinds: NonRegularPair (u, v); SrgViolation (u, v); DisconnectedPair
    (u, v); EcFailure (S, T); PmnkFailure (A, B); NonAutomorphism (u, v)
    with params = (a, b) identifying the failing map.
    """

    kind: str
    vertices: tuple
    params: tuple = ()
    note: str = ""

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": _listify(self.vertices),
            "params": list(self.params),
            "note": self.note,
        }


def _listify(x):
    if isinstance(x, tuple):
        return [_listify(v) for v in x]
    return x


@dataclass(frozen=True)
class AffineMap:
    """The vertex map x -> a*x + b on F_q; a bijection whenever a != 0."""

    a: FieldElement
    b: FieldElement

    def __post_init__(self) -> None:
        if self.a.index == 0:
            raise ValueError("affine map multiplier must be nonzero")

    def apply_index(self, field: FieldSpec, x: int) -> int:
        return field.add_index(field.mul_index(self.a.index, x), self.b.index)

    def as_permutation(self, field: FieldSpec) -> tuple[int, ...]:
        return tuple(self.apply_index(field, x) for x in range(field.q))


@dataclass(frozen=True)
class TransitivityReport:
    vertex_transitive: bool
    edge_transitive: bool


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        out.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return out


def _image_mask(mask: int, perm) -> int:
    out = 0
    while mask:
        v = (mask & -mask).bit_length() - 1
        mask &= mask - 1
        out |= 1 << perm[v]
    return out


def is_regular(g: Graph) -> tuple[Optional[int], Optional[Witness]]:
    """The common degree if one exists, else a NonRegularPair witness."""
    if g.order == 0:
        return 0, None
    k = g.degree(0)
    for v in range(1, g.order):
        dv = g.degree(v)
        if dv != k:
            return None, Witness(
                kind="NonRegularPair",
                vertices=(0, v),
                note=f"degrees {k} != {dv}",
            )
    return k, None


def is_complete(g: Graph) -> bool:
    """True iff every off-diagonal pair is an edge."""
    full = (1 << g.order) - 1
    return all(row == full ^ (1 << x) for x, row in enumerate(g.rows))


def components(g: Graph) -> list[list[int]]:
    """Connected components via bitmask BFS, each sorted, by least vertex."""
    remaining = (1 << g.order) - 1
    out = []
    while remaining:
        start = remaining & -remaining
        comp = start
        frontier = start
        while frontier:
            reach = 0
            rest = frontier
            while rest:
                v = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                reach |= g.rows[v]
            frontier = reach & ~comp
            comp |= frontier
        out.append(_bits(comp))
        remaining &= ~comp
    return out


def srg_check(g: Graph) -> tuple[Optional[SrgParams], Optional[Witness]]:
    """Strongly-regular parameters, or a witness pair breaking them.

    Requires regularity plus constant common-neighbor counts over all
    adjacent pairs (lam) and all non-adjacent pairs (mu).  Complete and
    empty graphs have mu resp. lam undefined and return absent without a
    witness; the parameter identity is asserted on every result.
    """
    k, w = is_regular(g)
    if k is None:
        return None, w
    n = g.order
    if n <= 1 or k == n - 1 or k == 0:
        return None, None
    lam = mu = None
    for u in range(n):
        row_u = g.rows[u]
        for v in range(u + 1, n):
            c = (row_u & g.rows[v]).bit_count()
            if row_u >> v & 1:
                if lam is None:
                    lam = c
                elif c != lam:
                    return None, Witness(
                        kind="SrgViolation",
                        vertices=(u, v),
                        note=f"adjacent pair has {c} common neighbors, expected {lam}",
                    )
            else:
                if mu is None:
                    mu = c
                elif c != mu:
                    return None, Witness(
                        kind="SrgViolation",
                        vertices=(u, v),
                        note=f"non-adjacent pair has {c} common neighbors, expected {mu}",
                    )
    params = SrgParams(n=n, k=k, lam=lam, mu=mu)
    assert params.mu * (n - k - 1) == k * (k - params.lam - 1)
    return params, None


def self_complementary_by_multiplier(
    g: Graph, field: FieldSpec, connection
) -> Optional[FieldElement]:
    """Least r outside the connection with x -> r*x mapping g onto its
    complement, verified row by row; None when no multiplier works."""
    comp = complement(g)
    conn_mask = connection.members if isinstance(connection, ResidueSet) else 0
    if not isinstance(connection, ResidueSet):
        for i in connection:
            conn_mask |= 1 << i
    for r in range(1, field.q):
        if conn_mask >> r & 1:
            continue
        perm = [field.mul_index(r, x) for x in range(field.q)]
        if all(
            _image_mask(g.rows[u], perm) == comp.rows[perm[u]]
            for u in range(field.q)
        ):
            return field.element(r)
    return None


def _check_automorphism(g: Graph, perm, a: int, b: int) -> None:
    for u in range(g.order):
        if _image_mask(g.rows[u], perm) != g.rows[perm[u]]:
            bad_v = next(
                v for v in _bits(g.rows[u]) if not g.rows[perm[u]] >> perm[v] & 1
            )
            raise NonAutomorphismError(
                Witness(kind="NonAutomorphism", vertices=(u, bad_v), params=(a, b))
            )


def affine_transitivity(
    g: Graph, field: FieldSpec, connection
) -> TransitivityReport:
    """Transitivity of the affine maps x -> a*x + b, a in the connection.

    The maps factor as translation-after-multiplier.  Every multiplier
    x -> a*x (a in the connection) and every translation x -> x + b is
    verified to preserve adjacency edge by edge; each composite map
    x -> a*x + b is then an automorphism as a composition of two verified
    ones.  Vertex and ordered-edge orbits are grown under the verified
    generators, which generate the same group as the full family.

    Raises NonAutomorphismError if any generator map fails the check.
    """
    q = field.q
    members = (
        list(connection.indices)
        if isinstance(connection, ResidueSet)
        else sorted(connection)
    )
    mult_perms = []
    for a in members:
        perm = [field.mul_index(a, x) for x in range(q)]
        _check_automorphism(g, perm, a, 0)
        mult_perms.append(perm)
    trans_perms = []
    for b in range(1, q):
        perm = [field.add_index(x, b) for x in range(q)]
        _check_automorphism(g, perm, 1, b)
        trans_perms.append(perm)
    generators = mult_perms + trans_perms

    orbit = 1 << 0
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for perm in generators:
            y = perm[x]
            if not orbit >> y & 1:
                orbit |= 1 << y
                frontier.append(y)
    vertex_transitive = orbit.bit_count() == q

    first_edge = next(g.edges(), None)
    if first_edge is None:
        return TransitivityReport(vertex_transitive, True)
    seen = {first_edge}
    stack = [first_edge]
    while stack:
        u, v = stack.pop()
        for perm in generators:
            e = (perm[u], perm[v])
            if e not in seen:
                seen.add(e)
                stack.append(e)
    edge_transitive = len(seen) == 2 * g.edge_count()
    return TransitivityReport(vertex_transitive, edge_transitive)


def _ec_scan(
    rows: tuple[int, ...], order: int, n: int, firsts
) -> Optional[tuple[tuple[int, ...], int]]:
    """Scan S-subsets whose least element is in ``firsts``; least failure."""
    full = (1 << order) - 1
    for first in firsts:
        for tail in combinations(range(first + 1, order), n - 1):
            subset = (first,) + tail
            s_mask = 0
            for s in subset:
                s_mask |= 1 << s
            base = full & ~s_mask
            for t_sel in range(1 << n):
                cand = base
                for i in range(n):
                    if t_sel >> i & 1:
                        cand &= rows[subset[i]]
                    else:
                        cand &= ~rows[subset[i]]
                    if not cand:
                        break
                if not cand:
                    return subset, t_sel
    return None


def n_ec_check(
    g: Graph, n: int, jobs: int = 1, cap: int = EC_N_CAP
) -> tuple[bool, Optional[Witness]]:
    """Exhaustive n-existential-closure check.

    For every n-subset S of vertices and every T within S there must be an
    outside vertex adjacent to all of T and to none of S - T.  Failures
    report the lexicographically first (S, T): S in ascending subset
    order, T by its selection mask over S's positions.  ``jobs`` may
    partition the scan by S's least element; the merged witness is the
    least one, so results are independent of the worker count.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if n > cap:
        raise CapExceededError(n, cap)
    if g.order <= n:
        raise ValueError(f"graph order {g.order} must exceed n = {n}")

    firsts = range(g.order - n + 1)
    if jobs > 1:
        chunks = [list(firsts)[i::jobs] for i in range(jobs)]
        results = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_ec_scan, g.rows, g.order, n, chunk)
                for chunk in chunks
                if chunk
            ]
            for fut in futures:
                r = fut.result()
                if r is not None:
                    results.append(r)
        found = min(results) if results else None
    else:
        found = _ec_scan(g.rows, g.order, n, firsts)

    if found is None:
        return True, None
    subset, t_sel = found
    t = tuple(subset[i] for i in range(n) if t_sel >> i & 1)
    return False, Witness(kind="EcFailure", vertices=(subset, t))


def pmnk_check(
    g: Graph, m: int, n: int, k: int, cap: int = PMNK_CAP
) -> tuple[bool, Optional[Witness]]:
    """Exhaustive check of the adjacency property P(m, n, k).

    For all disjoint A, B with |A| = m, |B| = n there must be at least k
    vertices outside both that are adjacent to every vertex of A and to
    none of B.  The first failing (A, B) in lexicographic order is the
    witness.
    """
    if m < 0 or n < 0 or (m == 0 and n == 0):
        raise ValueError("need m, n >= 0 and not both zero")
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if m + n > cap:
        raise CapExceededError(m + n, cap)

    q = g.order
    full = (1 << q) - 1
    for a_set in combinations(range(q), m):
        a_mask = 0
        cand_a = full
        for a in a_set:
            a_mask |= 1 << a
            cand_a &= g.rows[a]
        others = [v for v in range(q) if not a_mask >> v & 1]
        for b_set in combinations(others, n):
            cand = cand_a & ~a_mask
            for b in b_set:
                cand &= ~g.rows[b] & ~(1 << b)
            if cand.bit_count() < k:
                return False, Witness(
                    kind="PmnkFailure",
                    vertices=(a_set, b_set),
                    note=f"only {cand.bit_count()} valid vertices, need {k}",
                )
    return True, None


def iso_to_cycle(g: Graph) -> bool:
    """Whether g is a single cycle: connected and 2-regular."""
    if g.order < 3:
        return False
    k, _ = is_regular(g)
    return k == 2 and len(components(g)) == 1


def iso_to_complete(g: Graph) -> bool:
    return is_complete(g)
