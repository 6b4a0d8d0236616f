"""Command-line surface: build fields and graphs, verify, export, survey.

Exit codes follow a fixed contract: 0 when everything requested passed,
1 when some verification failed, 2 on precondition errors (non-prime p,
bad modulus, congruence violations, cap violations, malformed input).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from math import gcd

from .fields import (
    BadModulusError,
    FieldSpec,
    NonPrimeError,
    element_to_string,
    factor_prime_power,
    field_new,
    power_tables,
)
from .graphs import (
    CongruenceError,
    Family,
    FamilySpec,
    build_family,
    export,
)
from .polynomials import PrimePoly, poly_parse
from .properties import (
    CapExceededError,
    NonAutomorphismError,
    affine_transitivity,
    components,
    is_complete,
    is_regular,
    n_ec_check,
    pmnk_check,
    self_complementary_by_multiplier,
    srg_check,
)

DEFAULT_Q_CAP = 65536
OUTPUT_FORMATS = ("dot", "edges", "json", "table")


@dataclass
class Config:
    """Runtime limits and defaults; PALEYLAB_Q_CAP overrides the q cap."""

    q_cap: int = DEFAULT_Q_CAP
    ec_n_cap: int = 4
    output_format: str = "table"

    def __post_init__(self) -> None:
        if self.q_cap <= 0 or self.ec_n_cap <= 0:
            raise ValueError("caps must be positive")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"unknown output format {self.output_format!r}")


def config_from_args(args: argparse.Namespace) -> Config:
    q_cap = args.q_cap
    if q_cap is None:
        env = os.environ.get("PALEYLAB_Q_CAP")
        q_cap = int(env) if env else DEFAULT_Q_CAP
    return Config(q_cap=q_cap)


FAMILY_NAMES = {
    "paley": Family.PALEY,
    "cubic": Family.CUBIC_PALEY,
    "quadruple": Family.QUADRUPLE_PALEY,
    "gpaley": Family.GENERALIZED_PALEY,
    "mpaley": Family.M_PALEY,
    "pstar": Family.P_STAR,
}
PARAMETRIC_FAMILIES = {"gpaley", "mpaley"}


def _field_for_order(q: int, config: Config) -> FieldSpec:
    if q > config.q_cap:
        raise ValueError(f"q = {q} exceeds the cap {config.q_cap}")
    p, n = factor_prime_power(q)
    return field_new(p, n)


def _build_from_args(args: argparse.Namespace, config: Config):
    family = FAMILY_NAMES[args.family]
    if args.family in PARAMETRIC_FAMILIES and args.param is None:
        raise ValueError(f"family {args.family} needs a parameter")
    if args.family not in PARAMETRIC_FAMILIES and args.param is not None:
        raise ValueError(f"family {args.family} takes no parameter")
    field = _field_for_order(args.q, config)
    spec = FamilySpec(family, field, args.param)
    return field, build_family(spec)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _generator_symbol(field: FieldSpec, index: int) -> str:
    s = element_to_string(field, index)
    return f"({s})" if "+" in s else s


def cmd_field(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    if args.p ** args.n > config.q_cap:
        raise ValueError(f"q = {args.p ** args.n} exceeds the cap {config.q_cap}")
    modulus = poly_parse(args.poly, args.p) if args.poly else None
    field = field_new(args.p, args.n, modulus)
    if args.json:
        _emit(json.dumps(field.to_json_dict()), args.file)
        return 0
    lines = [f"GF({field.q}) = Z_{field.p}[x]/({field.modulus})"]
    lines.append(
        "elements: "
        + ", ".join(element_to_string(field, i) for i in range(field.q))
    )
    if args.tables:
        table = power_tables(field)
        sym = _generator_symbol(field, table.generator.index)
        lines.append(f"powers of the generator {sym}:")
        for j, idx in enumerate(table.antilog, start=1):
            lines.append(f"{sym}^{j} = {element_to_string(field, idx)}")
    _emit("\n".join(lines), args.file)
    return 0


def cmd_graph(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    field, g = _build_from_args(args, config)
    fmt = args.out or "edges"
    if fmt == "table":
        raise ValueError("graph emission supports dot, edges, or json")
    _emit(export(g, fmt, field), args.file)
    return 0


def parse_props(text: str) -> list[tuple[str, tuple[int, ...]]]:
    """Parse the --props list; pmnk consumes its two comma-joined extras."""
    tokens = [t.strip() for t in text.split(",")]
    props: list[tuple[str, tuple[int, ...]]] = []
    i = 0
    while i < len(tokens):
        t = tokens[i]
        if t.startswith("pmnk:"):
            if i + 2 >= len(tokens):
                raise ValueError("pmnk needs three integers: pmnk:<m>,<n>,<k>")
            props.append(("pmnk", (int(t[5:]), int(tokens[i + 1]), int(tokens[i + 2]))))
            i += 3
        elif t.startswith("ec:"):
            props.append(("ec", (int(t[3:]),)))
            i += 1
        elif t in {"regular", "complete", "connected", "srg", "selfcomp", "symmetric"}:
            props.append((t, ()))
            i += 1
        else:
            raise ValueError(f"unknown property {t!r}")
    return props


def _run_check(name, params, g, field, jobs, config):
    """Run one property check; returns (pass, value, witness-or-None)."""
    connection = g.connection
    if name == "regular":
        k, w = is_regular(g)
        return k is not None, k, w
    if name == "complete":
        return is_complete(g), is_complete(g), None
    if name == "connected":
        comps = components(g)
        return len(comps) == 1, len(comps), None
    if name == "srg":
        params_, w = srg_check(g)
        return params_ is not None, params_ and params_.as_tuple(), w
    if name == "selfcomp":
        r = self_complementary_by_multiplier(g, field, connection)
        return r is not None, r and element_to_string(field, r), None
    if name == "symmetric":
        try:
            report = affine_transitivity(g, field, connection)
        except NonAutomorphismError as exc:
            return False, None, exc.witness
        ok = report.vertex_transitive and report.edge_transitive
        return ok, report.__dict__, None
    if name == "ec":
        ok, w = n_ec_check(g, params[0], jobs=jobs, cap=config.ec_n_cap)
        return ok, ok, w
    if name == "pmnk":
        ok, w = pmnk_check(g, *params)
        return ok, ok, w
    raise ValueError(f"unknown property {name!r}")


def _prop_label(name: str, params: tuple[int, ...]) -> str:
    return f"{name}:{','.join(map(str, params))}" if params else name


def cmd_check(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    props = parse_props(args.props)
    field, g = _build_from_args(args, config)
    jobs = args.jobs or 1
    results = []
    for name, params in props:
        ok, value, witness = _run_check(name, params, g, field, jobs, config)
        results.append((_prop_label(name, params), ok, value, witness))
    if args.json:
        payload = {
            "graph": g.label,
            "checks": [
                {
                    "name": label,
                    "pass": ok,
                    "value": value,
                    "witness": witness.to_json_dict() if witness else None,
                }
                for label, ok, value, witness in results
            ],
        }
        _emit(json.dumps(payload), args.file)
    else:
        lines = [f"graph: {g.label}"]
        for label, ok, value, witness in results:
            entry = f"{label}: {'pass' if ok else 'FAIL'}"
            if value is not None and not isinstance(value, bool):
                entry += f"  {value}"
            if witness is not None:
                entry += f"  witness={witness.to_json_dict()}"
            lines.append(entry)
        _emit("\n".join(lines), args.file)
    return 0 if all(ok for _, ok, _, _ in results) else 1


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"range must look like A..B, got {text!r}")
    return int(lo), int(hi)


def survey_rows(q_range, m_range, config: Config):
    """One row per (q, m): d, degree, completeness, connectivity, components."""
    q_lo, q_hi = q_range
    m_lo, m_hi = m_range
    if q_hi > config.q_cap:
        raise ValueError(f"q range exceeds the cap {config.q_cap}")
    rows = []
    for q in range(max(q_lo, 3), q_hi + 1):
        try:
            p, n = factor_prime_power(q)
        except ValueError:
            continue
        if p == 2:
            continue
        field = field_new(p, n)
        for m in range(max(m_lo, 3), m_hi + 1):
            if m % 2 == 0:
                continue
            g = build_family(FamilySpec(Family.M_PALEY, field, m))
            d = gcd(m, q - 1)
            degree, _ = is_regular(g)
            comps = components(g)
            rows.append(
                {
                    "q": q,
                    "m": m,
                    "d": d,
                    "degree": degree,
                    "complete": is_complete(g),
                    "connected": len(comps) == 1,
                    "components": len(comps),
                }
            )
    return rows


def cmd_survey(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    if args.family != "mpaley":
        raise ValueError("survey currently covers the mpaley family only")
    rows = survey_rows(_parse_range(args.q_range), _parse_range(args.m_range), config)
    if args.json:
        _emit(json.dumps({"family": args.family, "rows": rows}), args.file)
        return 0
    header = f"{'q':>5} {'m':>4} {'d':>4} {'degree':>7} {'complete':>9} {'connected':>10} {'components':>11}"
    lines = [header]
    for r in rows:
        lines.append(
            f"{r['q']:>5} {r['m']:>4} {r['d']:>4} {r['degree']:>7} "
            f"{'yes' if r['complete'] else 'no':>9} "
            f"{'yes' if r['connected'] else 'no':>10} {r['components']:>11}"
        )
    _emit("\n".join(lines), args.file)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q-cap", type=int, default=None, help="max field size")
    common.add_argument("--jobs", type=int, default=None, help="parallel workers")
    common.add_argument("--out", choices=OUTPUT_FORMATS, default=None)
    common.add_argument("--file", default=None, help="write output to a file")
    common.add_argument("--json", action="store_true", help="emit JSON reports")

    parser = argparse.ArgumentParser(
        prog="paleylab",
        description="finite fields GF(p^n) and Paley-type Cayley graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_field = sub.add_parser("field", parents=[common], help="construct a field")
    p_field.add_argument("p", type=int)
    p_field.add_argument("n", type=int)
    p_field.add_argument("--poly", default=None, help='modulus, e.g. "x^2+x+2"')
    p_field.add_argument("--tables", action="store_true", help="print the power table")
    p_field.set_defaults(handler=cmd_field)

    p_graph = sub.add_parser("graph", parents=[common], help="build and emit a graph")
    p_graph.add_argument("family", choices=sorted(FAMILY_NAMES))
    p_graph.add_argument("q", type=int)
    p_graph.add_argument("param", type=int, nargs="?", default=None)
    p_graph.set_defaults(handler=cmd_graph)

    p_check = sub.add_parser("check", parents=[common], help="verify graph properties")
    p_check.add_argument("family", choices=sorted(FAMILY_NAMES))
    p_check.add_argument("q", type=int)
    p_check.add_argument("param", type=int, nargs="?", default=None)
    p_check.add_argument(
        "--props",
        required=True,
        help="comma list: regular,complete,connected,srg,selfcomp,symmetric,"
        "ec:<n>,pmnk:<m>,<n>,<k>",
    )
    p_check.set_defaults(handler=cmd_check)

    p_survey = sub.add_parser("survey", parents=[common], help="m-Paley sweep table")
    p_survey.add_argument("--family", default="mpaley")
    p_survey.add_argument("--q-range", required=True, help="A..B")
    p_survey.add_argument("--m-range", required=True, help="C..D")
    p_survey.set_defaults(handler=cmd_survey)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (
        NonPrimeError,
        BadModulusError,
        CongruenceError,
        CapExceededError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
