"""Shared constructors with caching so sweeps don't rebuild fields."""

from __future__ import annotations

import paleylab as pl

_FIELDS: dict[tuple, pl.FieldSpec] = {}
_GRAPHS: dict[tuple, pl.Graph] = {}


def get_field(q: int, poly_text: str | None = None) -> pl.FieldSpec:
    key = (q, poly_text)
    if key not in _FIELDS:
        p, n = pl.factor_prime_power(q)
        modulus = pl.poly_parse(poly_text, p) if poly_text else None
        _FIELDS[key] = pl.field_new(p, n, modulus)
    return _FIELDS[key]


def get_graph(family: pl.Family, q: int, param: int | None = None) -> pl.Graph:
    key = (family, q, param)
    if key not in _GRAPHS:
        _GRAPHS[key] = pl.build_family(pl.FamilySpec(family, get_field(q), param))
    return _GRAPHS[key]


def prime_powers(lo: int, hi: int, odd_only: bool = False):
    for q in range(max(lo, 2), hi + 1):
        try:
            p, n = pl.factor_prime_power(q)
        except ValueError:
            continue
        if odd_only and p == 2:
            continue
        yield q, p, n


def paley_orders(hi: int):
    return [q for q, _, _ in prime_powers(5, hi) if q % 4 == 1]
