"""Command-line front end: one verb per pipeline, file in, stdout out.

Input kinds are recognized by schema: an object with ``support`` is Newton
input, with ``components`` sncd data, with ``cells`` a fan model.  Exit
status is 0 on success, 2 when validation diagnostics were printed, 1 on
parse or usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Any

from .cones import cone_from_rays, complex_from_cones, resolve_complex, star_subdivision
from .mring import LaurentPoly, MClass, MCoeff
from .newton import (
    NewtonInput,
    newton_poles,
    newton_zeta,
    newton_zeta_local,
    nondegeneracy_probe,
)
from .series import ZSeries, format_poles
from .zeta import (
    FanModel,
    SncdComponent,
    SncdData,
    dl_zeta,
    fan_poincare,
    fan_poles,
    nearby_fibre,
    sncd_poincare,
    transport_subdivide,
    validate_model,
)


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Coefficient text form: Laurent polynomial with optional /(L-1)^k.

_TERM_RE = re.compile(
    r"(?P<sign>[+-]?)\s*(?:(?P<coef>\d+)\s*\*?\s*)?(?:L(?:\^(?P<exp>-?\d+))?)?"
)


def parse_coeff(text: str) -> MCoeff:
    s = text.strip().replace(" ", "")
    den_pow = 0
    m = re.fullmatch(r"\((?P<num>.*)\)/\(L-1\)(?:\^(?P<k>\d+))?", s)
    if m is None:
        m = re.fullmatch(r"(?P<num>[^/()]*)/\(L-1\)(?:\^(?P<k>\d+))?", s)
    if m is not None:
        den_pow = int(m.group("k") or 1)
        s = m.group("num")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    coeffs: dict[int, int] = {}
    pos = 0
    if not s:
        raise InputError("empty coefficient")
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if m is None or m.end() == pos:
            raise InputError(f"cannot parse coefficient {text!r} at {s[pos:]!r}")
        sign = -1 if m.group("sign") == "-" else 1
        has_l = "L" in s[m.start() : m.end()]
        coef = m.group("coef")
        if coef is None and not has_l:
            raise InputError(f"cannot parse coefficient {text!r} at {s[pos:]!r}")
        c = sign * int(coef or 1)
        e = int(m.group("exp") or (1 if has_l else 0)) if has_l else 0
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    return MCoeff.make(LaurentPoly.from_dict(coeffs), den_pow)


def parse_mclass(obj: dict[str, Any]) -> MClass:
    return MClass({sym: parse_coeff(str(c)) for sym, c in obj.items()})


def mclass_to_json(c: MClass) -> dict[str, str]:
    return {sym: str(coeff) for sym, coeff in c.sorted_terms()}


def series_to_json(s: ZSeries) -> dict[str, Any]:
    return {
        "terms": [
            {
                "coeff": mclass_to_json(c),
                "T_exp": beta,
                "denominators": [[a, b] for a, b in denoms],
            }
            for (beta, denoms), c in s.sorted_terms()
        ]
    }


# ---------------------------------------------------------------------------
# File loading.


def load_input(path: str) -> dict[str, Any]:
    try:
        with open(path) as f:
            return json.load(f)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}")


def input_kind(data: dict[str, Any]) -> str:
    if "support" in data:
        return "newton"
    if "components" in data:
        return "sncd"
    if "cells" in data:
        return "fan"
    raise InputError("unrecognized input: expected 'support', 'components' or 'cells'")


def parse_newton(data: dict[str, Any]) -> NewtonInput:
    try:
        n = int(data["n"])
        support = tuple(tuple(int(x) for x in w) for w in data["support"])
    except (KeyError, TypeError) as e:
        raise InputError(f"bad newton input: {e}")
    coeffs = None
    if data.get("coeffs") is not None:
        coeffs = {}
        for key, val in data["coeffs"].items():
            pt = tuple(int(x) for x in key.strip("()").split(","))
            coeffs[pt] = Fraction(str(val))
    try:
        return NewtonInput(n, support, coeffs)
    except ValueError as e:
        raise InputError(str(e))


def parse_sncd(data: dict[str, Any]) -> SncdData:
    try:
        comps = tuple(
            SncdComponent(
                id=str(c["id"]),
                N=int(c["N"]),
                mu=int(c["mu"]) if c.get("mu") is not None else None,
                nu=int(c["nu"]) if c.get("nu") is not None else None,
            )
            for c in data["components"]
        )
        strata = tuple(
            (frozenset(str(i) for i in s["J"]), str(s["symbol"])) for s in data["strata"]
        )
        return SncdData(int(data["m"]), comps, strata)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad sncd input: {e}")


def parse_fan(data: dict[str, Any]) -> FanModel:
    try:
        rank = int(data["rank"])
        listed = []
        weights = {}
        for cell_data in data["cells"]:
            rays = [tuple(int(x) for x in r) for r in cell_data["rays"]]
            cell = cone_from_rays(rank, rays)
            listed.append(cell)
            w = parse_mclass(cell_data.get("weight", {}))
            if not w.is_zero():
                weights[cell] = w
        complex_ = complex_from_cones(rank, listed, validate=False)
        maximal = complex_.maximal_cells()
        listed_maximal = [c for c in listed if c in set(maximal)]
        rest = [c for c in maximal if c not in set(listed_maximal)]
        ordered = listed_maximal + rest
        e_list = [tuple(int(x) for x in v) for v in data["e"]]
        a_list = [tuple(int(x) for x in v) for v in data["a"]]
        if len(e_list) != len(ordered) or len(a_list) != len(ordered):
            raise InputError(
                f"need one e and one a vector per maximal cell ({len(ordered)} cells)"
            )
        e_vecs = dict(zip(ordered, e_list))
        a_vecs = dict(zip(ordered, a_list))
        return FanModel(complex_, e_vecs, a_vecs, weights)
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, InputError):
            raise
        raise InputError(f"bad fan-model input: {e}")


def fan_to_json(f: FanModel) -> dict[str, Any]:
    maximal = f.complex.maximal_cells()
    ordered = list(maximal) + [c for c in f.complex.cells if c not in set(maximal)]
    cells = []
    e_list = []
    a_list = []
    for cell in ordered:
        entry: dict[str, Any] = {"rays": [list(r) for r in cell.rays]}
        w = f.weight(cell)
        if not w.is_zero():
            entry["weight"] = mclass_to_json(w)
        cells.append(entry)
    for mc in maximal:
        e_list.append(list(f.e_vecs[mc]))
        a_list.append(list(f.a_vecs[mc]))
    return {"rank": f.complex.ambient_rank, "cells": cells, "e": e_list, "a": a_list}


# ---------------------------------------------------------------------------
# Commands.


def _emit_series(s: ZSeries, args) -> int:
    if args.json:
        print(json.dumps(series_to_json(s), sort_keys=True))
    else:
        print(s)
    return 0


def _emit_poles(poles, args) -> int:
    if args.json:
        print(json.dumps({"poles": [str(p) for p in sorted(poles)]}))
    else:
        print(format_poles(poles))
    return 0


def cmd_newton_zeta(args) -> int:
    return _emit_series(newton_zeta(parse_newton(load_input(args.input))), args)


def cmd_newton_zeta_local(args) -> int:
    return _emit_series(newton_zeta_local(parse_newton(load_input(args.input))), args)


def cmd_newton_poles(args) -> int:
    return _emit_poles(newton_poles(parse_newton(load_input(args.input))), args)


def cmd_sncd_zeta(args) -> int:
    return _emit_series(sncd_poincare(parse_sncd(load_input(args.input))), args)


def cmd_dl_zeta(args) -> int:
    return _emit_series(dl_zeta(parse_sncd(load_input(args.input))), args)


def _load_fan_checked(args) -> FanModel:
    model = parse_fan(load_input(args.input))
    problems = validate_model(model)
    if problems:
        raise Diagnostics(problems)
    return model


class Diagnostics(Exception):
    def __init__(self, problems):
        super().__init__("validation failed")
        self.problems = problems


def cmd_fan_series(args) -> int:
    return _emit_series(fan_poincare(_load_fan_checked(args), args.m), args)


def cmd_fan_poles(args) -> int:
    return _emit_poles(fan_poles(_load_fan_checked(args)), args)


def cmd_nearby(args) -> int:
    data = load_input(args.input)
    kind = input_kind(data)
    if kind != "sncd":
        raise InputError("nearby expects sncd data with nu orders")
    result = nearby_fibre(dl_zeta(parse_sncd(data)))
    if args.json:
        print(json.dumps(mclass_to_json(result), sort_keys=True))
    else:
        print(result)
    return 0


def cmd_expand(args) -> int:
    data = load_input(args.input)
    kind = input_kind(data)
    if kind == "newton":
        series = newton_zeta(parse_newton(data))
    elif kind == "sncd":
        d = parse_sncd(data)
        series = dl_zeta(d) if all(c.nu is not None for c in d.components) else sncd_poincare(d)
    else:
        model = parse_fan(data)
        problems = validate_model(model)
        if problems:
            raise Diagnostics(problems)
        series = fan_poincare(model, args.m)
    coeffs = series.expand(args.degree)
    if args.json:
        print(json.dumps([mclass_to_json(c) for c in coeffs], sort_keys=True))
    else:
        for d, c in enumerate(coeffs, start=1):
            print(f"T^{d}: {c}")
    return 0


def cmd_subdivide(args) -> int:
    model = _load_fan_checked(args)
    try:
        ray = tuple(int(x) for x in args.ray.split(","))
    except ValueError:
        raise InputError(f"bad ray {args.ray!r}")
    new_model = transport_subdivide(model, star_subdivision(model.complex, ray))
    print(json.dumps(fan_to_json(new_model), sort_keys=True))
    return 0


def cmd_resolve(args) -> int:
    model = _load_fan_checked(args)
    new_model = transport_subdivide(model, resolve_complex(model.complex))
    print(json.dumps(fan_to_json(new_model), sort_keys=True))
    return 0


def cmd_validate(args) -> int:
    model = parse_fan(load_input(args.input))
    problems = validate_model(model)
    if problems:
        for p in problems:
            print(p)
        return 2
    print("ok")
    return 0


def cmd_probe(args) -> int:
    inp = parse_newton(load_input(args.input))
    status, face, witness = nondegeneracy_probe(inp, args.prime)
    if args.json:
        print(
            json.dumps(
                {
                    "status": status,
                    "face": face,
                    "witness": list(witness) if witness else None,
                }
            )
        )
    else:
        if status == "fail":
            print(f"fail: face {face} has a singular torus point {witness} mod {args.prime}")
        else:
            print(status)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logzeta",
        description="Motivic zeta functions from combinatorial models, exactly.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, fn, help_, *, degree=False, ray=False, prime=False, m=False):
        p = sub.add_parser(name, help=help_)
        p.add_argument("input", help="input JSON file")
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")
        if degree:
            p.add_argument("--degree", type=int, required=True, help="expansion degree")
        if ray:
            p.add_argument("--ray", required=True, help="subdivision ray, comma separated")
        if prime:
            p.add_argument("--prime", type=int, required=True, help="probe prime")
        if m:
            p.add_argument("--m", type=int, default=0, help="relative dimension")
        p.set_defaults(fn=fn)
        return p

    add("newton-zeta", cmd_newton_zeta, "global zeta function from a Newton support")
    add("newton-zeta-local", cmd_newton_zeta_local, "local zeta function at the origin")
    add("newton-poles", cmd_newton_poles, "candidate poles from the Newton polyhedron")
    add("sncd-zeta", cmd_sncd_zeta, "volume Poincare series of sncd data (uses mu)")
    add("dl-zeta", cmd_dl_zeta, "motivic zeta function of sncd data (uses nu)")
    add("fan-series", cmd_fan_series, "volume Poincare series of a fan model", m=True)
    add("fan-poles", cmd_fan_poles, "candidate poles of a fan model")
    add("nearby", cmd_nearby, "motivic nearby fibre of sncd data")
    add("expand", cmd_expand, "series coefficients T^1..T^D", degree=True, m=True)
    add("subdivide", cmd_subdivide, "star-subdivide a fan model at a ray", ray=True)
    add("resolve", cmd_resolve, "resolve a fan model to smooth cells")
    add("validate", cmd_validate, "check fan-model invariants")
    add("probe-nondegenerate", cmd_probe, "finite-field nondegeneracy probe", prime=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except Diagnostics as d:
        for p in d.problems:
            print(p)
        return 2
    except (InputError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
