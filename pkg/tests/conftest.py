import random
from fractions import Fraction

import pytest

from trackshear import fixtures
from trackshear.track import EndRef, Switch, TrainTrack, orientation_cover
from trackshear.weights import WeightSystem, twisted_subspace_basis

F = Fraction


def with_transport(t: TrainTrack, signs: dict) -> TrainTrack:
    return TrainTrack(t.switches, t.edges, dict(signs), t.involution)


def random_track(rng: random.Random, n_switches: int) -> TrainTrack:
    """Uniformly random pairing of the 3V slots into edges (may be disconnected)."""
    slots = [(i, name) for i in range(n_switches) for name in ("trunk", "left", "right")]
    rng.shuffle(slots)
    where = {}
    edges = []
    for k in range(0, len(slots), 2):
        e = f"e{k // 2}"
        edges.append(e)
        where[slots[k]] = EndRef(e, 0)
        where[slots[k + 1]] = EndRef(e, 1)
    switches = tuple(
        Switch(f"s{i}", where[(i, "trunk")], where[(i, "left")], where[(i, "right")]) for i in range(n_switches)
    )
    return TrainTrack(switches, tuple(edges))


def scalar(**kw) -> WeightSystem:
    return WeightSystem.from_values({k: F(v) for k, v in kw.items()})


@pytest.fixture(scope="session")
def base():
    return fixtures.genus2_complete()


@pytest.fixture(scope="session")
def cover(base):
    return orientation_cover(base)


@pytest.fixture(scope="session")
def twisted(cover):
    return {n: twisted_subspace_basis(cover, n) for n in range(2, 7)}


@pytest.fixture
def theta():
    return fixtures.theta()


@pytest.fixture
def theta_or():
    return fixtures.theta_oriented()


@pytest.fixture
def w1():
    return scalar(e1=2, e2=1, e3=1)


@pytest.fixture
def w2():
    return scalar(e1=0, e2=1, e3=-1)
