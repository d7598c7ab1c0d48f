"""JSON readers and writers.

Rationals are always strings of the form ``"p/q"`` or ``"p"``; decimals are
rejected so that nothing passes through a float by accident.  Unknown keys
are rejected everywhere.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from .shear import LineDecomposition, ShearConfiguration, ShearStep, exact_matrix
from .track import EndRef, Involution, Switch, TrainTrack
from .weights import WeightSystem

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


class FormatError(ValueError):
    pass


def _keys(obj: Any, where: str, required: set[str], optional: set[str] = frozenset()) -> None:
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    missing = required - obj.keys()
    if missing:
        raise FormatError(f"{where}: missing {sorted(missing)}")
    unknown = obj.keys() - required - optional
    if unknown:
        raise FormatError(f"{where}: unknown fields {sorted(unknown)}")


def parse_rational(s: Any) -> Fraction:
    if not isinstance(s, str) or not _RATIONAL.match(s.strip()):
        raise FormatError(f"not a rational string: {s!r}")
    try:
        return Fraction(s.strip())
    except ZeroDivisionError:
        raise FormatError(f"zero denominator in {s!r}") from None


def format_rational(x: Fraction | int) -> str:
    return str(Fraction(x))


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def _endref(obj: Any, where: str) -> EndRef:
    _keys(obj, where, {"edge", "end"})
    if not isinstance(obj["edge"], str) or obj["end"] not in (0, 1) or isinstance(obj["end"], bool):
        raise FormatError(f"{where}: bad edge end {obj!r}")
    return EndRef(obj["edge"], obj["end"])


def track_from_dict(data: Any) -> TrainTrack:
    _keys(data, "track", {"switches", "edges"}, {"tie_transport", "involution"})
    if not isinstance(data["switches"], list) or not isinstance(data["edges"], list):
        raise FormatError("track: switches and edges must be lists")
    switches = []
    for i, s in enumerate(data["switches"]):
        where = f"switches[{i}]"
        _keys(s, where, {"id", "trunk", "left", "right"}, {"divergence"})
        div = s.get("divergence")
        if div not in (None, "L", "R"):
            raise FormatError(f"{where}: divergence must be 'L' or 'R'")
        if not isinstance(s["id"], str):
            raise FormatError(f"{where}: id must be a string")
        switches.append(
            Switch(
                s["id"],
                _endref(s["trunk"], where + ".trunk"),
                _endref(s["left"], where + ".left"),
                _endref(s["right"], where + ".right"),
                div,
            )
        )
    edges = []
    for i, e in enumerate(data["edges"]):
        _keys(e, f"edges[{i}]", {"id"})
        if not isinstance(e["id"], str):
            raise FormatError(f"edges[{i}]: id must be a string")
        edges.append(e["id"])
    transport = data.get("tie_transport")
    if transport is not None:
        if not isinstance(transport, dict) or any(v not in (1, -1) or isinstance(v, bool) for v in transport.values()):
            raise FormatError("tie_transport: expected a map edge -> +1/-1")
    involution = None
    if "involution" in data:
        inv = data["involution"]
        _keys(inv, "involution", {"switches", "edges"})
        for part in ("switches", "edges"):
            m = inv[part]
            if not isinstance(m, dict) or not all(isinstance(v, str) for v in m.values()):
                raise FormatError(f"involution.{part}: expected a map of ids")
        involution = Involution(dict(inv["switches"]), dict(inv["edges"]))
    return TrainTrack(tuple(switches), tuple(edges), transport, involution)


def track_to_dict(t: TrainTrack) -> dict:
    def ref(r: EndRef) -> dict:
        return {"edge": r.edge, "end": r.end}

    switches = []
    for s in t.switches:
        item = {"id": s.id, "trunk": ref(s.trunk), "left": ref(s.left), "right": ref(s.right)}
        if s.divergence is not None:
            item["divergence"] = s.divergence
        switches.append(item)
    out: dict = {"switches": switches, "edges": [{"id": e} for e in t.edges]}
    if t.tie_transport is not None:
        out["tie_transport"] = {e: int(t.tie_transport[e]) for e in t.edges}
    if t.involution is not None:
        out["involution"] = {
            "switches": {s: t.involution.switches[s] for s in t.switch_ids},
            "edges": {e: t.involution.edges[e] for e in t.edges},
        }
    return out


def weights_from_dict(data: Any) -> WeightSystem:
    _keys(data, "weights file", {"d", "weights"})
    d = data["d"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise FormatError("d must be a positive integer")
    if not isinstance(data["weights"], dict):
        raise FormatError("weights must be a map edge -> list of rationals")
    weights = {}
    for e, v in data["weights"].items():
        if not isinstance(v, list) or len(v) != d:
            raise FormatError(f"weight of edge {e!r} must be a list of {d} rationals")
        weights[e] = tuple(parse_rational(x) for x in v)
    return WeightSystem(d, weights)


def weights_to_dict(w: WeightSystem, edges=None) -> dict:
    order = edges if edges is not None else list(w.weights)
    return {"d": w.d, "weights": {e: [format_rational(x) for x in w[e]] for e in order}}


def _matrix(rows: Any, where: str) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) and len(r) == len(rows) for r in rows):
        raise FormatError(f"{where}: expected a square row-major array")
    flat = [x for r in rows for x in r]
    if all(isinstance(x, str) for x in flat):
        return exact_matrix([[parse_rational(x) for x in r] for r in rows])
    if all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in flat):
        return np.array(rows, dtype=float)
    raise FormatError(f"{where}: entries must be all rational strings or all numbers")


def _amplitude(v: Any, where: str) -> tuple:
    if not isinstance(v, list):
        raise FormatError(f"{where}: expected a list")
    if all(isinstance(x, str) for x in v):
        return tuple(parse_rational(x) for x in v)
    if all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v):
        return tuple(float(x) for x in v)
    raise FormatError(f"{where}: entries must be all rational strings or all numbers")


def config_from_dict(data: Any) -> ShearConfiguration:
    _keys(data, "configuration", {"n", "steps", "final"})
    steps = []
    for i, st in enumerate(data["steps"]):
        where = f"steps[{i}]"
        _keys(st, where, {"minus", "plus", "amplitude"})
        steps.append(
            ShearStep(
                LineDecomposition(_matrix(st["minus"], where + ".minus")),
                LineDecomposition(_matrix(st["plus"], where + ".plus")),
                _amplitude(st["amplitude"], where + ".amplitude"),
            )
        )
    _keys(data["final"], "final", {"lines", "amplitude"})
    cfg = ShearConfiguration(
        tuple(steps),
        LineDecomposition(_matrix(data["final"]["lines"], "final.lines")),
        _amplitude(data["final"]["amplitude"], "final.amplitude"),
    )
    if cfg.n != data["n"]:
        raise FormatError(f"n = {data['n']} does not match matrices of size {cfg.n}")
    return cfg


def _matrix_out(m: np.ndarray) -> list:
    if m.dtype == object:
        return [[format_rational(x) for x in row] for row in m]
    return [[float(x) for x in row] for row in m]


def _amplitude_out(v: tuple) -> list:
    return [format_rational(x) if isinstance(x, (Fraction, int)) else float(x) for x in v]


def config_to_dict(cfg: ShearConfiguration) -> dict:
    return {
        "n": cfg.n,
        "steps": [
            {"minus": _matrix_out(st.minus.matrix), "plus": _matrix_out(st.plus.matrix), "amplitude": _amplitude_out(st.amplitude)}
            for st in cfg.steps
        ],
        "final": {"lines": _matrix_out(cfg.final.matrix), "amplitude": _amplitude_out(cfg.final_amplitude)},
    }


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def load_track(path: str | Path) -> TrainTrack:
    return track_from_dict(read_json(path))


def load_weights(path: str | Path) -> WeightSystem:
    return weights_from_dict(read_json(path))


def load_config(path: str | Path) -> ShearConfiguration:
    return config_from_dict(read_json(path))
