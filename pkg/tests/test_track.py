import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_track, with_transport
from trackshear.track import (
    EndRef,
    Involution,
    Switch,
    TrackError,
    TrainTrack,
    check_maximal_carrying,
    connected_components,
    is_orientable,
    orientation_cover,
    quotient,
    region_analysis,
    ribbon_tie_transport,
    validate_track,
)

R = EndRef

ANNULUS = TrainTrack(
    (
        Switch("s0", R("e1", 1), R("e2", 1), R("e0", 0)),
        Switch("s1", R("e0", 1), R("e2", 0), R("e1", 0)),
    ),
    ("e0", "e1", "e2"),
)


def faces_oracle(t):
    """Face count and per-face cusps from the dart permutation sigma . alpha."""
    darts = [R(e, j) for e in t.edges for j in (0, 1)]
    num = {d: i for i, d in enumerate(darts)}
    sigma = [0] * len(darts)
    for s in t.switches:
        cyc = [num[s.trunk], num[s.right], num[s.left]]
        for i in range(3):
            sigma[cyc[i]] = cyc[(i + 1) % 3]
    alpha = [i ^ 1 for i in range(len(darts))]  # darts of one edge are adjacent
    cusp_dart = {num[s.left] for s in t.switches}
    right_of = {num[s.left]: num[s.right] for s in t.switches}
    seen, faces = set(), []
    for i in range(len(darts)):
        if i in seen:
            continue
        cusps, j = 0, i
        while j not in seen:
            seen.add(j)
            k = sigma[alpha[j]]
            if k in cusp_dart and alpha[j] == right_of[k]:
                cusps += 1
            j = k
        faces.append(cusps)
    return sorted(faces)


def test_theta_valid(theta):
    assert validate_track(theta).valid


def test_slot_reuse():
    t = TrainTrack(
        (Switch("A", R("e1", 0), R("e2", 0), R("e3", 0)), Switch("B", R("e1", 0), R("e2", 1), R("e3", 1))),
        ("e1", "e2", "e3"),
    )
    rep = validate_track(t)
    assert not rep.valid and any("slot reuse" in v for v in rep.violations)


def test_not_trivalent():
    t = TrainTrack(
        (Switch("A", R("e1", 0), R("e2", 0), R("e1", 1)), Switch("B", R("e2", 1), R("e1", 0), R("e2", 0))),
        ("e1", "e2"),
    )
    rep = validate_track(t)
    assert not rep.valid and any("not trivalent" in v for v in rep.violations)


def test_empty_and_single_switch_rejected():
    assert not validate_track(TrainTrack((), ())).valid
    one = TrainTrack((Switch("A", R("e1", 0), R("e1", 1), R("e2", 0)),), ("e1", "e2"))
    assert not validate_track(one).valid


def test_disconnected_rejected(theta):
    copy = TrainTrack(
        tuple(Switch(s.id + "x", *(R(r.edge + "x", r.end) for r in (s.trunk, s.left, s.right))) for s in theta.switches),
        tuple(e + "x" for e in theta.edges),
    )
    t = TrainTrack(theta.switches + copy.switches, theta.edges + copy.edges)
    assert any("not connected" in v for v in validate_track(t).violations)


def test_involution_axioms_checked(cover):
    bad = TrainTrack(cover.switches, cover.edges, cover.tie_transport, Involution({s: s for s in cover.switch_ids}, cover.involution.edges))
    assert not validate_track(bad).valid
    flags = TrainTrack(
        tuple(Switch(s.id, s.trunk, s.left, s.right, "L") for s in cover.switches), cover.edges, cover.tie_transport, cover.involution
    )
    assert any("flip" in v for v in validate_track(flags).violations)


def test_cover_trivial_signs_disconnected(theta):
    c = orientation_cover(with_transport(theta, {"e1": 1, "e2": 1, "e3": 1}))
    assert validate_track(c).valid
    assert connected_components(c) == 2
    inv = c.involution.switches
    comp_of = {}
    for s in c.switch_ids:
        comp_of[s] = s[-1]
    assert all(comp_of[s] != comp_of[inv[s]] for s in c.switch_ids)


def test_cover_one_negative_sign_connected(theta):
    c = orientation_cover(with_transport(theta, {"e1": -1, "e2": 1, "e3": 1}))
    assert validate_track(c).valid
    assert connected_components(c) == 1
    assert (len(c.switches), len(c.edges)) == (4, 6)


def test_cover_involution_is_an_involution(cover):
    inv = cover.involution
    assert all(inv.switches[inv.switches[s]] == s for s in cover.switch_ids)
    assert all(inv.edges[inv.edges[e]] == e for e in cover.edges)


def test_cover_of_cover_refused(cover):
    with pytest.raises(TrackError, match="already oriented"):
        orientation_cover(cover)


def test_quotient_recovers_base(base, cover):
    q = quotient(cover)
    assert q.switches == base.switches and q.edges == base.edges
    assert dict(q.tie_transport) == dict(base.tie_transport)


def test_orientability_examples(theta):
    assert is_orientable(with_transport(theta, {"e1": 1, "e2": 1, "e3": 1}))
    for e in theta.edges:
        signs = {f: (-1 if f == e else 1) for f in theta.edges}
        assert not is_orientable(with_transport(theta, signs))


def cover_graph(t):
    g = nx.MultiGraph()
    g.add_nodes_from(t.switch_ids)
    for e in t.edges:
        g.add_edge(t.end_location(R(e, 0))[0], t.end_location(R(e, 1))[0])
    return g


def gauge(t, sid):
    """Flip the sign of every edge end at one switch (loops flip twice)."""
    signs = dict(t.signs())
    for ref in t.switch(sid).ends():
        signs[ref.edge] = -signs[ref.edge]
    return with_transport(t, signs)


@given(st.integers(0, 10**6), st.sampled_from([2, 4, 6]))
@settings(max_examples=60, deadline=None)
def test_gauge_invariance(seed, v):
    rng = random.Random(seed)
    t = random_track(rng, v)
    if not validate_track(t).valid:
        return
    t = with_transport(t, {e: rng.choice((1, -1)) for e in t.edges})
    g = gauge(t, rng.choice(t.switch_ids))
    assert is_orientable(t) == is_orientable(g)
    assert nx.is_isomorphic(cover_graph(orientation_cover(t)), cover_graph(orientation_cover(g)))


@given(st.integers(0, 10**6), st.sampled_from([2, 4, 6, 8]))
@settings(max_examples=80, deadline=None)
def test_cover_properties(seed, v):
    rng = random.Random(seed)
    t = random_track(rng, v)
    if not validate_track(t).valid:
        return
    t = with_transport(t, {e: rng.choice((1, -1)) for e in t.edges})
    c = orientation_cover(t)
    assert validate_track(c).valid
    assert (len(c.switches), len(c.edges)) == (2 * len(t.switches), 2 * len(t.edges))
    assert is_orientable(t) == (connected_components(c) == 2)


@given(st.integers(0, 10**6), st.sampled_from([2, 4, 6, 8, 10]))
@settings(max_examples=80, deadline=None)
def test_regions_match_oracle(seed, v):
    t = random_track(random.Random(seed), v)
    if not validate_track(t).valid:
        return
    r = region_analysis(t)
    assert sorted(c for _, c in r.regions) == faces_oracle(t)
    assert r.euler_characteristic == len(t.switches) - len(t.edges) + len(r.regions)
    assert sum(c for _, c in r.regions) == len(t.switches)
    assert sum(n for n, _ in r.regions) == 2 * len(t.edges)


def test_theta_regions(theta):
    # traced by hand: e1.0 > e3.1 > e2.0 > e1.1 > e3.0 > e2.1, one cusp at A and one at B
    r = region_analysis(theta)
    assert r.regions == [(6, 2)]
    assert r.euler_characteristic == 0 and r.genus == 1
    assert not check_maximal_carrying(theta)


def test_genus2_fixture(base):
    r = region_analysis(base)
    assert all(c == 3 for _, c in r.regions)
    assert r.euler_characteristic == -2 and r.genus == 2
    assert check_maximal_carrying(base)
    assert sorted(c for _, c in r.regions) == faces_oracle(base)


def test_genus2_signs_are_ribbon_signs(base):
    assert dict(base.tie_transport) == ribbon_tie_transport(base)
    assert not is_orientable(base)
    assert connected_components(orientation_cover(base)) == 1


def test_annular_region_not_maximal():
    assert validate_track(ANNULUS).valid
    assert 0 in [c for _, c in region_analysis(ANNULUS).regions]
    assert not check_maximal_carrying(ANNULUS)


def test_invalid_input_raises():
    with pytest.raises(TrackError):
        region_analysis(TrainTrack((), ()))
    with pytest.raises(TrackError):
        is_orientable(TrainTrack((), ()))
