"""Command-line entry point.

Exit codes: 0 on success, 1 when a verification or mathematical check fails,
2 on malformed input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Optional

from .arrangement import Arrangement, all_A_layers, arrangement_from_json, xi_of
from .betti import betti_numbers
from .errors import InputError, ToricError
from .fan import (
    Fan,
    fan_from_json,
    fan_to_json,
    is_complete,
    is_smooth,
    locate_points,
    satisfies_intersection_condition,
)
from .strata import build_strata_poset, property_E_witness
from .subdiv import bad_two_cones, construct_fan, normalize_characters
from .wonderful import blowup_schedule, is_building, minimal_building_set, nested_sets

SAMPLES_PER_CONE = 50


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _emit(payload, args, text: Optional[str] = None) -> None:
    out = text if text is not None else json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)


def _load_arrangement(args) -> Arrangement:
    if not args.input:
        raise InputError("--input is required")
    return arrangement_from_json(_read_json(args.input))


def _fan_for(args, a: Arrangement) -> Fan:
    if getattr(args, "fan", None):
        f = fan_from_json(_read_json(args.fan))
        if f.rank != a.rank:
            raise InputError(f"fan rank {f.rank} differs from arrangement rank {a.rank}")
        return f
    return construct_fan(a)[0]


# -- subcommands -----------------------------------------------------------

def cmd_subdivide(args) -> int:
    a = _load_arrangement(args)
    normalize_characters(xi_of(a))  # rejects zero characters
    if args.fan:
        from .subdiv import resolve_all

        start = fan_from_json(_read_json(args.fan))
        fan, trace = resolve_all(start, xi_of(a))
    else:
        fan, trace = construct_fan(a)
    trace_json = [s.to_json() for s in trace]
    if args.trace:
        Path(args.trace).write_text(json.dumps(trace_json, indent=2) + "\n")
    if args.output:
        _emit(fan_to_json(fan), args)
    else:
        _emit({"fan": fan_to_json(fan), "trace": trace_json}, args)
    return 0


def _subdivision_report(f: Fan, ref: Fan, rng: random.Random) -> list:
    """Problems found when checking that ``f`` subdivides ``ref``."""
    problems = []
    ref_sets = [ref.cone_rays(c) for c in ref.maximal_cones]
    for c in f.maximal_cones:
        rays = f.cone_rays(c)
        if not any(locate_points(Fan(ref.rank, ref.rays, (rc,)), rays).all() for rc in ref.maximal_cones):
            problems.append({"cone": [list(r) for r in rays], "problem": "not inside a reference cone"})
    if any(len(c) != f.rank for c in f.maximal_cones) or any(len(c) != ref.rank for c in ref.maximal_cones):
        problems.append({"problem": "fans must be pure and full-dimensional"})
        return problems
    points = []
    for rays in ref_sets:
        for _ in range(SAMPLES_PER_CONE):
            w = [rng.randint(1, 1000) for _ in rays]
            points.append(tuple(sum(a * r[j] for a, r in zip(w, rays)) for j in range(ref.rank)))
    hit = locate_points(f, points).any(axis=1)
    for p, ok in zip(points, hit):
        if not ok:
            problems.append({"point": list(p), "problem": "sample point not covered"})
            break
    return problems


def cmd_verify(args) -> int:
    a = _load_arrangement(args)
    if not args.fan:
        raise InputError("--fan is required")
    f = fan_from_json(_read_json(args.fan))
    if f.rank != a.rank:
        raise InputError(f"fan rank {f.rank} differs from arrangement rank {a.rank}")
    pure = all(len(c) == f.rank for c in f.maximal_cones)
    complete = pure and is_complete(f)
    smooth = is_smooth(f)
    intersections = satisfies_intersection_condition(f)
    if args.reference:
        ref = fan_from_json(_read_json(args.reference))
        if ref.rank != f.rank:
            raise InputError("reference fan has a different rank")
        subdivision = _subdivision_report(f, ref, random.Random(args.seed))
    else:
        # without a reference the fan must cover the whole space
        subdivision = [] if complete else [{"problem": "fan is not complete"}]
    bad = []
    for chi in xi_of(a):
        for c in bad_two_cones(f, chi):
            bad.append({"character": list(chi), "cone": [list(r) for r in f.cone_rays(c)]})
    layers = []
    for L in all_A_layers(a):
        w = property_E_witness(f, L)
        if w is not None:
            layers.append({"layer": L.to_json(), "cone": [list(r) for r in w]})
    ok = smooth and intersections and not subdivision and not bad and not layers
    report = {
        "ok": ok,
        "smooth": smooth,
        "intersections_are_faces": intersections,
        "complete": complete,
        "subdivision_problems": subdivision,
        "bad_two_cones": bad,
        "property_E_violations": layers,
    }
    _emit(report, args)
    return 0 if ok else 1


def _poset(args):
    a = _load_arrangement(args)
    return build_strata_poset(_fan_for(args, a), a)


def _strata_ids(P, strata) -> list:
    return [P.index(s) for s in strata]


def _building_for(args, P) -> list:
    if getattr(args, "building", None):
        data = _read_json(args.building)
        ids = data["building_set"] if isinstance(data, dict) else data
        try:
            return [P.elements[int(i)] for i in ids]
        except (IndexError, ValueError, TypeError) as exc:
            raise InputError(f"bad building set ids: {exc}") from exc
    return minimal_building_set(P)


def cmd_strata(args) -> int:
    P = _poset(args)
    if args.format == "dot":
        _emit(None, args, P.to_dot())
    else:
        _emit(P.to_json(), args)
    return 0


def cmd_building(args) -> int:
    P = _poset(args)
    G = minimal_building_set(P)
    ok = is_building(G, P)
    _emit({"building_set": _strata_ids(P, G), "is_building": ok,
           "strata": [dict(id=P.index(s), **s.to_json()) for s in G]}, args)
    return 0 if ok else 1


def cmd_nested(args) -> int:
    P = _poset(args)
    G = _building_for(args, P)
    family = nested_sets(G, P, cap=args.cap)
    if args.format == "dot":
        lines = ["graph nested {"]
        for k, t in enumerate(family):
            lines.append(f'  t{k} [label="{{{",".join(map(str, _strata_ids(P, t)))}}}"];')
        index = {frozenset(t): k for k, t in enumerate(family)}
        for k, t in enumerate(family):
            for s in t:
                sub = frozenset(t) - {s}
                lines.append(f"  t{index[sub]} -- t{k};")
        lines.append("}")
        _emit(None, args, "\n".join(lines) + "\n")
    else:
        _emit({"building_set": _strata_ids(P, G), "nested_sets": [_strata_ids(P, t) for t in family]}, args)
    return 0


def cmd_schedule(args) -> int:
    P = _poset(args)
    G = _building_for(args, P)
    order = blowup_schedule(G, P)
    _emit({"schedule": [dict(id=P.index(s), **s.to_json()) for s in order]}, args)
    return 0


def cmd_betti(args) -> int:
    if not args.input:
        raise InputError("--input is required")
    f = fan_from_json(_read_json(args.input))
    _emit(list(betti_numbers(f)), args)
    return 0


COMMANDS = {
    "subdivide": cmd_subdivide,
    "verify": cmd_verify,
    "strata": cmd_strata,
    "building": cmd_building,
    "nested": cmd_nested,
    "schedule": cmd_schedule,
    "betti": cmd_betti,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricmodels", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", help="arrangement JSON (fan JSON for betti)")
        p.add_argument("--output", help="write the result here instead of stdout")
        p.add_argument("--format", choices=("json", "dot"), default="json")
        p.add_argument("--seed", type=int, default=0)
        if name != "betti":
            p.add_argument("--fan", help="fan JSON (default: constructed from the arrangement)")
        if name == "subdivide":
            p.add_argument("--trace", help="write the subdivision trace here")
        if name == "verify":
            p.add_argument("--reference", help="fan that must be subdivided (default: require a complete fan)")
        if name in ("nested", "schedule"):
            p.add_argument("--building", help="JSON list of stratum ids forming the building set")
        if name == "nested":
            p.add_argument("--cap", type=int, default=100_000)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ToricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
