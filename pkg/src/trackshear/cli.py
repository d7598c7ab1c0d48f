"""Command line interface.

Exit codes: 0 success, 1 a check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from pathlib import Path
from typing import Any

import numpy as np

from . import io
from .io import FormatError, format_float, format_rational
from .shear import ShearError, compose_shearing, finite_difference_check, finite_gap_derivative
from .symplectic import gram_matrix, pair
from .track import (
    TrackError,
    check_maximal_carrying,
    connected_components,
    is_orientable,
    orientation_cover,
    region_analysis,
    validate_track,
)
from .weights import WeightError, check_twisted, twisted_subspace_basis

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _digest(path: str) -> str:
    try:
        return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _report(argv: list[str], inputs: list[str], outputs: dict, warnings: list[str] | None = None) -> dict:
    return {
        "command": argv,
        "inputs": {p: _digest(p) for p in inputs},
        "outputs": outputs,
        "warnings": warnings or [],
    }


def _text(report: dict) -> str:
    lines = ["command: " + " ".join(report["command"])]
    lines.extend(f"input {path}: {h}" for path, h in report["inputs"].items())

    def emit(key: str, value: Any) -> None:
        if isinstance(value, dict):
            for k, v in value.items():
                emit(f"{key}.{k}", v)
        elif value and isinstance(value, list) and isinstance(value[0], dict):
            for item in value:
                lines.append(f"{key}: " + ", ".join(f"{k}={v}" for k, v in item.items()))
        elif value and isinstance(value, list) and isinstance(value[0], list):
            lines.append(f"{key}:")
            lines.extend("  " + " ".join(str(x) for x in row) for row in value)
        else:
            lines.append(f"{key}: {value}")

    for k, v in report["outputs"].items():
        emit(k, v)
    lines.extend("warning: " + w for w in report["warnings"])
    return "\n".join(lines) + "\n"


def _load_track(path: str):
    return io.load_track(path)


def cmd_validate(args, argv) -> tuple[dict, int]:
    t = _load_track(args.track)
    v = validate_track(t)
    out: dict[str, Any] = {"valid": v.valid, "violations": v.violations}
    if v.valid:
        r = region_analysis(t)
        out.update(
            switches=len(t.switches),
            edges=len(t.edges),
            regions=[{"length": n, "cusps": c} for n, c in r.regions],
            euler_characteristic=r.euler_characteristic,
            genus=r.genus if r.genus is not None else "undefined",
            maximal=check_maximal_carrying(t),
        )
    return _report(argv, [args.track], out), EXIT_OK if v.valid else EXIT_CHECK


def cmd_cover(args, argv) -> tuple[dict, int]:
    t = _load_track(args.track)
    if t.involution is not None or t.is_oriented:
        raise InputError("track is already oriented")
    v = validate_track(t)
    if not v.valid:
        raise InputError("invalid track: " + "; ".join(v.violations))
    c = orientation_cover(t)
    data = io.track_to_dict(c)
    out: dict[str, Any] = {
        "orientable": is_orientable(t),
        "cover_connected": connected_components(c) == 1,
        "switches": len(c.switches),
        "edges": len(c.edges),
    }
    if args.output:
        Path(args.output).write_text(io.dumps(data), encoding="utf-8")
        out["written"] = args.output
    else:
        out["cover"] = data
    return _report(argv, [args.track], out), EXIT_OK


def _load_cover(path: str):
    c = _load_track(path)
    v = validate_track(c)
    if not v.valid:
        raise InputError("invalid track: " + "; ".join(v.violations))
    if not c.is_oriented:
        raise InputError("pairings need an oriented track (divergence flags on every switch)")
    return c


def cmd_pair(args, argv) -> tuple[dict, int]:
    c = _load_cover(args.cover)
    w1, w2 = io.load_weights(args.cocycle1), io.load_weights(args.cocycle2)
    for w, p in ((w1, args.cocycle1), (w2, args.cocycle2)):
        if w.d != args.n - 1:
            raise InputError(f"{p}: d = {w.d} but --n {args.n} needs d = {args.n - 1}")
        if set(w.weights) != set(c.edges):
            raise InputError(f"{p}: weights must be given on exactly the edges of the track")
    res = pair(w1, w2, c, args.n)
    warnings = list(res.warnings)
    if c.involution is not None:
        for w, p in ((w1, args.cocycle1), (w2, args.cocycle2)):
            if not check_twisted(w, c):
                warnings.append(f"{p} is not twisted (w(iota e) != reverse(w(e)))")
    out = {
        "omega": format_rational(res.thm2),
        "thm1": format_rational(res.thm1),
        "thm2": format_rational(res.thm2),
        "difference": format_rational(res.difference),
        "n": args.n,
    }
    return _report(argv, [args.cover, args.cocycle1, args.cocycle2], out, warnings), EXIT_OK if res.difference == 0 else EXIT_CHECK


def cmd_gram(args, argv) -> tuple[dict, int]:
    c = _load_cover(args.cover)
    if c.involution is None:
        raise InputError("gram needs an orientation cover (involution block)")
    if args.n < 2:
        raise InputError("--n must be at least 2")
    g = gram_matrix(twisted_subspace_basis(c, args.n), args.n)
    antisym = all(g.matrix[i][j] == -g.matrix[j][i] for i in range(g.dimension) for j in range(g.dimension))
    out = {
        "gram": [[format_rational(x) for x in row] for row in g.matrix],
        "rank": g.rank,
        "dimension": g.dimension,
        "n": args.n,
    }
    ok = antisym and g.rank % 2 == 0
    return _report(argv, [args.cover], out, g.warnings), EXIT_OK if ok else EXIT_CHECK


def cmd_gap(args, argv) -> tuple[dict, int]:
    cfg = io.load_config(args.config)
    d = finite_gap_derivative(cfg)
    if d.dtype == object:
        deriv = [[format_rational(x) for x in row] for row in d]
    else:
        deriv = [[format_float(x) for x in row] for row in d]
    rep = finite_difference_check(cfg)
    out = {
        "derivative": deriv,
        "fd_steps": [format_float(h) for h in rep.steps],
        "fd_relative_errors": [format_float(e) for e in rep.relative_errors],
        "fd_slope": format_float(rep.slope),
        "richardson_relative_error": format_float(rep.richardson_error),
        "determinant": format_float(np.linalg.det(compose_shearing(cfg))),
    }
    return _report(argv, [args.config], out), EXIT_OK


def cmd_selfcheck(args, argv) -> tuple[dict, int]:
    from .selfcheck import run_selfcheck

    if args.n_max < 2:
        raise InputError("--n-max must be at least 2")
    start = time.perf_counter()
    results = run_selfcheck(args.n_max, args.seed, args.cocycles, args.configs)
    elapsed = time.perf_counter() - start
    out = {
        "seed": args.seed,
        "n_max": args.n_max,
        "checks": [r.as_dict() for r in results],
        "all_passed": all(r.passed for r in results),
    }
    warnings = [f"runtime {elapsed:.1f} s"] if args.timing else []
    return _report(argv, [], out, warnings), EXIT_OK if out["all_passed"] else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trackshear", description=__doc__.splitlines()[0])
    fmt = argparse.ArgumentParser(add_help=False)
    group = fmt.add_mutually_exclusive_group()
    group.add_argument("--json", dest="fmt", action="store_const", const="json", help="print the report as JSON")
    group.add_argument("--text", dest="fmt", action="store_const", const="text", help="print a plain-text report (default)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[fmt], help="check a track file and analyse its complementary regions")
    p.add_argument("track")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cover", parents=[fmt], help="build the orientation double cover")
    p.add_argument("track")
    p.add_argument("-o", "--output", help="write the cover track here instead of embedding it in the report")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("pair", parents=[fmt], help="evaluate the pairing of two cocycles by both formulas")
    p.add_argument("cover")
    p.add_argument("cocycle1")
    p.add_argument("cocycle2")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("gram", parents=[fmt], help="Gram matrix of the pairing on a twisted cocycle basis")
    p.add_argument("cover")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("gap", parents=[fmt], help="gap-formula derivative of a shearing configuration")
    p.add_argument("config")
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("selfcheck", parents=[fmt], help="run the consistency checks on the genus-2 fixture")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cocycles", type=int, default=200, help="random twisted cocycles per n")
    p.add_argument("--configs", type=int, default=50, help="random shearing configurations")
    p.add_argument("--timing", action="store_true", help="add the wall-clock runtime as a warning line")
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.func(args, ["trackshear", *argv])
    except (InputError, FormatError, TrackError, WeightError, ShearError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(io.dumps(report) if args.fmt == "json" else _text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
