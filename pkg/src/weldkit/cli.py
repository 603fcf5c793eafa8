"""Command line front end.

Verbs: build, weld, info, barrier, bound, verify, sweep, export.
Exit codes: 0 on success, 1 for validation and metadata problems, 2
when a search refuses to start because it would exceed its state cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from .builders import (
    SolidSpec,
    SurfaceSpec,
    build_repetition,
    build_solid,
    build_surface,
    build_two_qubit,
    build_welded_solid,
    build_welded_surface,
    cubic,
    flat_region_graph,
    grid2d,
    parse_weld_graph,
    path,
    star,
)
from . import gf2
from .css import dumps, encoded_qubits, loads
from .energy import (
    DEFAULT_STATE_CAP,
    exact_barrier,
    parity_lower_bound,
    verify_bound,
)
from .errors import (
    FeasibilityError,
    MetadataError,
    ValidationError,
    WeldkitError,
)
from .pauli import format_operator
from .verify import run_verification
from .welding import parse_identification, weld

FAMILIES = (
    "two-qubit",
    "repetition",
    "surface",
    "solid",
    "welded-surface",
    "welded-solid",
)

SWEEP_STATE_CAP = 1 << 18


def _graph_from_spec(text: str):
    """A weld graph from 'path:n', 'star:n', 'grid:a,b', 'cubic:a,b,c',
    or else a file in the v/e line format."""
    head, sep, rest = text.partition(":")
    makers = {"path": (path, 1), "star": (star, 1), "grid": (grid2d, 2), "cubic": (cubic, 3)}
    if sep and head in makers:
        maker, arity = makers[head]
        try:
            nums = [int(part) for part in rest.split(",")]
        except ValueError:
            raise ValidationError(f"graph spec {text!r} has non-integer sizes")
        if len(nums) != arity:
            raise ValidationError(f"graph spec {head!r} takes {arity} size(s)")
        return maker(*nums)
    try:
        with open(text) as handle:
            return parse_weld_graph(handle.read())
    except OSError as err:
        raise ValidationError(f"cannot read weld graph {text!r}: {err}")


def _family_code(args):
    family = args.family
    if family == "two-qubit":
        return build_two_qubit()
    if family == "repetition":
        return build_repetition(args.length)
    if family == "surface":
        return build_surface(SurfaceSpec(args.width, args.height))
    if family == "solid":
        return build_solid(
            SolidSpec(args.dx, args.dy, args.dz, args.horizontal_plaquettes)
        )
    if family == "welded-surface":
        return build_welded_surface(
            _graph_from_spec(args.graph),
            args.boundary,
            SurfaceSpec(args.width, args.height),
        )
    if family == "welded-solid":
        return build_welded_solid(
            _graph_from_spec(args.graph), SolidSpec(args.dx, args.dy, args.dz)
        )
    raise ValidationError(f"unknown family {family!r}")


def _add_family_options(parser, required: bool):
    parser.add_argument("--family", choices=FAMILIES, required=required)
    parser.add_argument("--length", type=int, default=3, help="repetition length")
    parser.add_argument("--width", type=int, default=2, help="surface width")
    parser.add_argument("--height", type=int, default=2, help="surface height")
    parser.add_argument("--dx", type=int, default=1, help="solid x size")
    parser.add_argument("--dy", type=int, default=1, help="solid y size")
    parser.add_argument("--dz", type=int, default=2, help="solid z size")
    parser.add_argument(
        "--horizontal-plaquettes",
        action="store_true",
        help="generate the redundant horizontal plaquettes of a solid",
    )
    parser.add_argument(
        "--graph",
        default="path:2",
        help="weld graph: path:n, star:n, grid:a,b, cubic:a,b,c, or a file",
    )
    parser.add_argument(
        "--boundary",
        choices=("rough", "smooth"),
        default="rough",
        help="which surface boundaries get welded",
    )


def _load_code(path_arg: str):
    try:
        with open(path_arg) as handle:
            return loads(handle.read())
    except OSError as err:
        raise ValidationError(f"cannot read code file {path_arg!r}: {err}")
    except json.JSONDecodeError as err:
        raise ValidationError(f"bad JSON in {path_arg!r}: {err}")


def _code_for_analysis(args):
    if args.code is not None and args.family is not None:
        raise ValidationError("give a code file or --family, not both")
    if args.code is not None:
        return _load_code(args.code)
    if args.family is not None:
        return _family_code(args)
    raise ValidationError("give a code file or --family")


def _emit(args, text: str):
    if getattr(args, "out", None):
        with open(args.out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _barrier_json(result) -> dict:
    return {
        "method": result.method,
        "barrier": result.barrier,
        "witness": [[q, kind] for q, kind in result.witness.steps],
        "states_explored": result.states_explored,
    }


def cmd_build(args) -> int:
    code = _family_code(args)
    _emit(args, dumps(code, "json" if args.json else "text"))
    return 0


def cmd_weld(args) -> int:
    code1 = _load_code(args.code1)
    code2 = _load_code(args.code2)
    try:
        with open(args.ident) as handle:
            ident = parse_identification(handle.read())
    except OSError as err:
        raise ValidationError(f"cannot read identification {args.ident!r}: {err}")
    merged = weld(code1, code2, ident, args.type)
    _emit(args, dumps(merged, "json" if args.json else "text"))
    return 0


def cmd_info(args) -> int:
    code = _load_code(args.code)
    fields = {
        "qubits": code.n,
        "encoded": encoded_qubits(code),
        "x_generators": int(code.x_rows.shape[0]),
        "x_rank": gf2.rank(code.x_rows),
        "z_generators": int(code.z_rows.shape[0]),
        "z_rank": gf2.rank(code.z_rows),
        "logicals": [
            {
                "x": format_operator(lc.x_rep),
                "z": format_operator(lc.z_rep),
            }
            for lc in code.logicals
        ],
    }
    if args.json:
        _emit(args, json.dumps(fields, indent=2) + "\n")
        return 0
    lines = [
        f"qubits: {fields['qubits']}",
        f"encoded: {fields['encoded']}",
        f"x generators: {fields['x_generators']} (rank {fields['x_rank']})",
        f"z generators: {fields['z_generators']} (rank {fields['z_rank']})",
    ]
    for i, lc in enumerate(fields["logicals"]):
        lines.append(f"logical {i}: X={lc['x']}  Z={lc['z']}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _pick_rep(code, kind: str, index: int):
    if not code.logicals:
        raise ValidationError("code has no logical classes to walk to")
    if not 0 <= index < len(code.logicals):
        raise ValidationError(
            f"logical index {index} out of range for {len(code.logicals)} classes"
        )
    logical = code.logicals[index]
    return logical.z_rep if kind == "z" else logical.x_rep


def cmd_barrier(args) -> int:
    code = _code_for_analysis(args)
    rep = _pick_rep(code, args.kind, args.logical)
    result = exact_barrier(code, rep, args.kind, args.max_states)
    if args.json:
        _emit(args, json.dumps(_barrier_json(result), indent=2) + "\n")
        return 0
    steps = " ".join(f"{q}{kind}" for q, kind in result.witness.steps)
    _emit(
        args,
        f"barrier: {result.barrier}\n"
        f"method: {result.method}\n"
        f"states explored: {result.states_explored}\n"
        f"witness: {steps}\n",
    )
    return 0


def cmd_bound(args) -> int:
    code = _code_for_analysis(args)
    report = verify_bound(code, args.kind, args.logical, args.max_states)
    if args.json:
        _emit(
            args,
            json.dumps(
                {
                    "bound": _barrier_json(report.bound),
                    "exact": _barrier_json(report.exact),
                    "ok": report.ok,
                    "saturated": report.saturated,
                },
                indent=2,
            )
            + "\n",
        )
        return 0
    _emit(
        args,
        f"parity bound: {report.bound.barrier}\n"
        f"exact barrier: {report.exact.barrier}\n"
        f"bound holds: {report.ok}\n"
        f"saturated: {report.saturated}\n",
    )
    return 0


def cmd_verify(args) -> int:
    report = run_verification(seed=args.seed, rounds=args.rounds)
    if args.json:
        payload = [
            {"name": c.name, "ok": c.ok, "detail": c.detail} for c in report.checks
        ]
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        _emit(args, report.summary() + "\n")
    return 0 if report.ok else 1


def cmd_sweep(args) -> int:
    """Exact barriers and parity bounds over a small welded-solid grid.

    Cells whose coset spaces outgrow the cap leave the exact columns
    blank; the bounds always fill in, which is the point of having
    them.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(
        ["d", "R", "n", "barrier_X", "barrier_Z", "bound_X", "bound_Z", "seconds"]
    )
    for d in range(1, args.max_size + 1):
        for pieces in range(1, args.max_pieces + 1):
            started = time.perf_counter()
            spec = SolidSpec(d, d, 2)
            if pieces == 1:
                code = build_solid(spec)
            else:
                code = build_welded_solid(grid2d(pieces, pieces), spec)
            logical = code.logicals[0]
            cells = {}
            for kind, rep in (("X", logical.x_rep), ("Z", logical.z_rep)):
                try:
                    cells[f"barrier_{kind}"] = exact_barrier(
                        code, rep, kind.lower(), args.max_states
                    ).barrier
                except FeasibilityError:
                    cells[f"barrier_{kind}"] = ""
                graph = flat_region_graph(code, "z" if kind == "X" else "x")
                cells[f"bound_{kind}"] = parity_lower_bound(
                    graph, rep, args.max_states
                ).barrier
            writer.writerow(
                [
                    d,
                    pieces,
                    code.n,
                    cells["barrier_X"],
                    cells["barrier_Z"],
                    cells["bound_X"],
                    cells["bound_Z"],
                    f"{time.perf_counter() - started:.3f}",
                ]
            )
    _emit(args, buffer.getvalue())
    return 0


def cmd_export(args) -> int:
    code = _load_code(args.code)
    _emit(args, dumps(code, args.format))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weldkit",
        description="Build lattice stabilizer codes by welding and measure their energy barriers.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("build", help="construct a code and print it")
    _add_family_options(p, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_build)

    p = sub.add_parser("weld", help="weld two code files along an identification")
    p.add_argument("code1")
    p.add_argument("code2")
    p.add_argument("--ident", required=True, help="file of 'qubit1 qubit2' lines")
    p.add_argument("--type", choices=("x", "z"), required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_weld)

    p = sub.add_parser("info", help="summarize a code file")
    p.add_argument("code")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_info)

    p = sub.add_parser("barrier", help="exact energy barrier of a logical")
    p.add_argument("code", nargs="?", help="code file; or use --family")
    _add_family_options(p, required=False)
    p.add_argument("--kind", choices=("x", "z"), required=True)
    p.add_argument("--logical", type=int, default=0, help="logical class index")
    p.add_argument("--max-states", type=int, default=DEFAULT_STATE_CAP)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_barrier)

    p = sub.add_parser(
        "bound", help="parity lower bound checked against the exact barrier"
    )
    p.add_argument("code", nargs="?", help="code file; or use --family")
    _add_family_options(p, required=False)
    p.add_argument("--kind", choices=("x", "z"), required=True)
    p.add_argument("--logical", type=int, default=0)
    p.add_argument("--max-states", type=int, default=DEFAULT_STATE_CAP)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("verify", help="run the built-in check suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rounds", type=int, default=200)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("sweep", help="barrier table over welded-solid sizes, as CSV")
    p.add_argument("--max-size", type=int, default=2, help="largest piece side d")
    p.add_argument("--max-pieces", type=int, default=3, help="largest grid side R")
    p.add_argument("--max-states", type=int, default=SWEEP_STATE_CAP)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("export", help="rewrite a code file in another format")
    p.add_argument("code")
    p.add_argument("--format", choices=("text", "json"), required=True)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_export)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except FeasibilityError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except WeldkitError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
