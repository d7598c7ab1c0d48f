"""Tracks shipped with the package."""

from __future__ import annotations

import json
from importlib import resources

from .io import track_from_dict
from .track import Switch, TrainTrack


def _load(name: str) -> TrainTrack:
    text = resources.files("trackshear").joinpath("data").joinpath(name).read_text(encoding="utf-8")
    return track_from_dict(json.loads(text))


def genus2_complete() -> TrainTrack:
    """Non-orientable track on the genus-2 surface; its four complementary regions are trigons."""
    return _load("genus2_complete.json")


def theta() -> TrainTrack:
    """Two switches joined by three edges, trunks on a common edge."""
    return _load("theta.json")


def theta_oriented() -> TrainTrack:
    """The theta track with ``A`` left-diverging and ``B`` right-diverging."""
    t = theta()
    flags = {"A": "L", "B": "R"}
    return TrainTrack(
        tuple(Switch(s.id, s.trunk, s.left, s.right, flags[s.id]) for s in t.switches),
        t.edges,
        t.tie_transport,
    )
