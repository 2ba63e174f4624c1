"""Command line interface.

    tropsurf matroid info      --matroid m.json
    tropsurf fan build         --matroid m.json [--out fan.json]
    tropsurf fan reconstruct   --fan fan.json [--out m.json]
    tropsurf cycle degree      --cycle c.json [--matroid m.json]
    tropsurf intersect bezout  --matroid m.json --cycle c1.json --cycle2 c2.json
    tropsurf surface check     --expr x.json
    tropsurf homology diamond  --complex k.json
    tropsurf homology pairing  --complex k.json --cycles cycles.json

Every subcommand accepts --json for machine-readable output and --out to
write the report to a file.  Reports are deterministic.  Exit codes:
0 success, 1 domain error, 2 usage error.  Set TROPSURF_COLOR=0 to
disable ANSI colors (only pass/fail markers are ever colored).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bergman, cosheaf_homology, fan_cycles, fan_intersect
from . import matroid as mt
from . import surface_calculus as sc
from .errors import TropsurfError


def _color_enabled():
    if os.environ.get("TROPSURF_COLOR", "") == "0":
        return False
    return sys.stdout.isatty()


def _mark(ok):
    word = "pass" if ok else "fail"
    if _color_enabled():
        code = "32" if ok else "31"
        return f"\x1b[{code}m{word}\x1b[0m"
    return word


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise TropsurfError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise TropsurfError(f"{path} is not valid JSON: {exc}") from exc


def load_matroid(path):
    obj = _load(path)
    if "lines" in obj:
        return mt.from_lines(int(obj["n"]), [tuple(l) for l in obj["lines"]])
    if "flats" in obj:
        levels = tuple(
            tuple(frozenset(f) for f in level) for level in obj["flats"]
        )
        return mt.Matroid(int(obj["n"]), levels)
    raise TropsurfError(f"{path}: matroid files need a 'lines' or 'flats' key")


def load_cycle(path):
    obj = _load(path)
    return fan_cycles.FanCycle(
        int(obj["dim"]),
        tuple((tuple(r["dir"]), int(r["weight"])) for r in obj["rays"]),
    )


def fan_to_json(plane):
    return {
        "dim": plane.ambient_dim,
        "rays": [
            {"flat": sorted(r.flat), "dir": list(r.direction)} for r in plane.rays
        ],
        "cones": [[c.i, c.j] for c in plane.cones],
    }


def matroid_to_json(m):
    return {
        "n": m.n,
        "flats": [[sorted(f) for f in level] for level in m.flats_by_rank],
    }


def _emit(args, payload, text_lines):
    if args.json:
        out = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        out = "\n".join(text_lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


# -- subcommands -------------------------------------------------------------


def cmd_matroid_info(args):
    m = load_matroid(args.matroid)
    payload = {
        "n": m.n,
        "rank": m.rank,
        "simple": m.is_simple(),
        "flats": [[sorted(f) for f in level] for level in m.flats_by_rank],
        "char_poly": list(mt.characteristic_polynomial(m)),
        "reduced_char_poly": list(mt.reduced_characteristic_polynomial(m)),
        "chi_bar_at_1": mt.chi_bar_at_one(m),
    }
    lines = [
        f"matroid on {m.n} elements, rank {m.rank}",
        f"simple: {'yes' if payload['simple'] else 'no'}",
        "rank-2 flats: "
        + " ".join("{" + ",".join(map(str, sorted(f))) + "}" for f in m.flats(2)),
        f"characteristic polynomial: {payload['char_poly']}",
        f"reduced: {payload['reduced_char_poly']}",
        f"chi-bar(1): {payload['chi_bar_at_1']}",
    ]
    if m.rank == 3 and m.is_simple():
        sat = bergman.has_saturated_triangle(m)
        cls = bergman.classify_missing_ray(m)
        payload["saturated_triangle"] = sat
        payload["missing_ray_class"] = cls.kind
        lines.append(f"saturated triangle: {'yes' if sat else 'no'}")
        lines.append(f"missing-ray class: {cls.kind}")
    _emit(args, payload, lines)


def cmd_fan_build(args):
    m = load_matroid(args.matroid)
    plane = bergman.build_fan(m)
    payload = fan_to_json(plane)
    payload["degenerate_plane"] = plane.degenerate_plane
    payload["K2"] = fan_intersect.k_squared(m)
    payload["c2_vertex"] = fan_intersect.c2_point_multiplicity(m)
    lines = [
        f"fan tropical plane in R^{plane.ambient_dim}",
        f"rays: {len(plane.rays)}  cones: {len(plane.cones)}",
    ]
    for r in plane.rays:
        lines.append(
            "  ray {" + ",".join(map(str, sorted(r.flat))) + "} -> "
            + str(list(r.direction))
        )
    lines.append(f"K^2 = {payload['K2']}")
    lines.append(f"c2 vertex multiplicity = {payload['c2_vertex']}")
    _emit(args, payload, lines)


def cmd_fan_reconstruct(args):
    obj = _load(args.fan)
    m = bergman.reconstruct_matroid(
        [tuple(r["dir"]) for r in obj["rays"]],
        [tuple(c) for c in obj["cones"]],
        int(obj["dim"]),
    )
    payload = matroid_to_json(m)
    lines = [
        f"reconstructed matroid on {m.n} elements",
        "rank-2 flats: "
        + " ".join("{" + ",".join(map(str, sorted(f))) + "}" for f in m.flats(2)),
    ]
    _emit(args, payload, lines)


def cmd_cycle_degree(args):
    c = load_cycle(args.cycle)
    basis = bergman.standard_basis(c.dim)
    balanced = fan_cycles.is_balanced(c)
    payload = {"dim": c.dim, "balanced": balanced}
    lines = [f"cycle with {len(c.rays)} rays in R^{c.dim}",
             f"balanced: {'yes' if balanced else 'no'}"]
    if balanced:
        payload["degree"] = fan_cycles.degree(c, basis)
        lines.append(f"degree: {payload['degree']}")
    if args.matroid:
        m = load_matroid(args.matroid)
        plane = bergman.build_fan(m)
        payload["in_plane"] = fan_cycles.lies_in(c, plane)
        lines.append(f"lies in plane: {'yes' if payload['in_plane'] else 'no'}")
        ends = []
        for d, w in c.rays:
            kind, where = fan_cycles.boundary_point(basis, m, d)
            where = where if kind == "line" else sorted(where)
            ends.append({"dir": list(d), "weight": w, "kind": kind, "at": where})
        payload["boundary"] = ends
        for e in ends:
            lines.append(
                f"  ray {e['dir']} x{e['weight']} ends on {e['kind']} {e['at']}"
            )
    _emit(args, payload, lines)


def cmd_intersect_bezout(args):
    m = load_matroid(args.matroid)
    plane = bergman.build_fan(m)
    c1 = load_cycle(args.cycle)
    c2 = load_cycle(args.cycle2)
    rep = fan_intersect.bezout(plane, c1, c2)
    payload = {
        "deg1": rep["deg1"],
        "deg2": rep["deg2"],
        "vertex": rep["vertex"],
        "corners": [
            {"flat": list(f), "multiplicity": v} for f, v in rep["corners"].items()
        ],
        "total": rep["total"],
    }
    lines = [
        f"deg C1 = {rep['deg1']}, deg C2 = {rep['deg2']}",
        f"vertex multiplicity: {rep['vertex']}",
    ]
    for f, v in rep["corners"].items():
        lines.append(f"  corner p_{{{','.join(map(str, f))}}}: {v}")
    lines.append(f"total = {rep['total']} ({_mark(rep['total'] == rep['deg1'] * rep['deg2'])})")
    _emit(args, payload, lines)


def cmd_surface_check(args):
    x = sc.parse_surface(_load(args.expr))
    payload = sc.surface_report(x)
    payload["adjunction"] = [
        {"id": i, "holds": sc.adjunction_check(x, i)["holds"]} for i, _ in x.ledger
    ]
    lines = [
        f"chi = {x.chi}  K^2 = {x.k2}  c2 = {x.c2}",
        f"noether 12*chi == K^2 + c2: {_mark(payload['noether'])}",
        f"signature hypothesis (K^2 - 2 c2)/3 = {payload['signature_hypothesis']}",
    ]
    for entry in payload["boundary"]:
        adj = next(a["holds"] for a in payload["adjunction"] if a["id"] == entry["id"])
        lines.append(
            f"  boundary {entry['id']}: b1={entry['b1']} "
            f"self={entry['self_intersection']} adjunction {_mark(adj)}"
        )
    _emit(args, payload, lines)


def cmd_homology_diamond(args):
    x = cosheaf_homology.parse_complex(_load(args.complex))
    d = cosheaf_homology.diamond(x)
    payload = {
        f"{p},{q}": {"free_rank": h.free_rank, "torsion": list(h.torsion)}
        for (p, q), h in d.items()
    }
    lines = []
    for p in range(x.max_rank, -1, -1):
        row = "  ".join(
            f"H({p},{q}) = {d[(p, q)]}" for q in range(x.max_dim + 1)
        )
        lines.append(row)
    _emit(args, payload, lines)


def cmd_homology_pairing(args):
    cosheaf_homology.parse_complex(_load(args.complex))  # validates the complex
    obj = _load(args.cycles)
    cycles = {
        name: cosheaf_homology.parse_cycle(c) for name, c in obj["cycles"].items()
    }
    names = sorted(cycles)
    table = {
        a: {
            b: cosheaf_homology.intersection_pairing(cycles[a], cycles[b])
            for b in names
        }
        for a in names
    }
    sig = cosheaf_homology.signature_1_1([cycles[n] for n in names])
    payload = {"pairing": table, "signature": sig}
    width = max(len(n) for n in names)
    lines = [" " * (width + 2) + "  ".join(n.rjust(width) for n in names)]
    for a in names:
        lines.append(
            a.rjust(width) + "  "
            + "  ".join(str(table[a][b]).rjust(width) for b in names)
        )
    lines.append(f"signature: {sig}")
    _emit(args, payload, lines)


# -- wiring ------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tropsurf",
        description="fan tropical planes, tropical surface invariants, "
        "and cellular cosheaf homology",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--out", metavar="PATH", help="write the report to a file")
    verbs = parser.add_subparsers(dest="verb", required=True)

    p = verbs.add_parser("matroid", help="matroid queries").add_subparsers(
        dest="sub", required=True
    )
    q = p.add_parser("info", parents=[common])
    q.add_argument("--matroid", required=True)
    q.set_defaults(func=cmd_matroid_info)

    p = verbs.add_parser("fan", help="fan tropical planes").add_subparsers(
        dest="sub", required=True
    )
    q = p.add_parser("build", parents=[common])
    q.add_argument("--matroid", required=True)
    q.set_defaults(func=cmd_fan_build)
    q = p.add_parser("reconstruct", parents=[common])
    q.add_argument("--fan", required=True)
    q.set_defaults(func=cmd_fan_reconstruct)

    p = verbs.add_parser("cycle", help="fan 1-cycles").add_subparsers(
        dest="sub", required=True
    )
    q = p.add_parser("degree", parents=[common])
    q.add_argument("--cycle", required=True)
    q.add_argument("--matroid")
    q.set_defaults(func=cmd_cycle_degree)

    p = verbs.add_parser("intersect", help="intersection numbers").add_subparsers(
        dest="sub", required=True
    )
    q = p.add_parser("bezout", parents=[common])
    q.add_argument("--matroid", required=True)
    q.add_argument("--cycle", required=True)
    q.add_argument("--cycle2", required=True)
    q.set_defaults(func=cmd_intersect_bezout)

    p = verbs.add_parser("surface", help="surface invariant calculus").add_subparsers(
        dest="sub", required=True
    )
    q = p.add_parser("check", parents=[common])
    q.add_argument("--expr", required=True)
    q.set_defaults(func=cmd_surface_check)

    p = verbs.add_parser("homology", help="cosheaf homology").add_subparsers(
        dest="sub", required=True
    )
    q = p.add_parser("diamond", parents=[common])
    q.add_argument("--complex", required=True)
    q.set_defaults(func=cmd_homology_diamond)
    q = p.add_parser("pairing", parents=[common])
    q.add_argument("--complex", required=True)
    q.add_argument("--cycles", required=True)
    q.set_defaults(func=cmd_homology_pairing)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except TropsurfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
