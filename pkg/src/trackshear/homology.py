"""Closed 1-chains of weight systems and their intersection numbers.

Collapsing each tie of an oriented track gives a trivalent graph whose edges
are directed to the left of the oriented ties.  At a left-diverging switch
the trunk comes in and both branches go out; at a right-diverging switch the
branches come in and the trunk goes out.  A chain crossing an oriented tie
from its right side to its left side counts ``+1``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .track import EndRef, TrackError, TrainTrack
from .weights import WeightError, WeightSystem, check_switch_relations


def leftward_tail(t: TrainTrack, edge: str) -> int:
    """End (0 or 1) from which ``edge`` points to the left of the ties."""
    outgoing = []
    for j in (0, 1):
        sid, slot = t.end_location(EndRef(edge, j))
        flag = t.switch(sid).divergence
        if flag is None:
            raise TrackError(f"switch {sid} has no divergence flag")
        outgoing.append((flag == "L") != (slot == "trunk"))
    if outgoing[0] == outgoing[1]:
        raise TrackError(f"divergence flags give edge {edge!r} no consistent direction")
    return 0 if outgoing[0] else 1


@dataclass
class OneChain:
    """Rational combination of directed edges.

    ``coefficients[(e, j)]`` is the coefficient of ``e`` traversed from its
    end ``j`` to its other end.
    """

    track: TrainTrack
    coefficients: dict[tuple[str, int], Fraction] = field(default_factory=dict)

    def boundary(self) -> dict[str, Fraction]:
        out: dict[str, Fraction] = defaultdict(Fraction)
        for s in self.track.switches:
            out[s.id] = Fraction(0)
        for (e, j), c in self.coefficients.items():
            tail = self.track.end_location(EndRef(e, j))[0]
            head = self.track.end_location(EndRef(e, 1 - j))[0]
            out[head] += c
            out[tail] -= c
        return dict(out)

    def is_closed(self) -> bool:
        return not any(self.boundary().values())

    def __add__(self, other: "OneChain") -> "OneChain":
        coeffs = dict(self.coefficients)
        for k, c in other.coefficients.items():
            coeffs[k] = coeffs.get(k, Fraction(0)) + c
        return OneChain(self.track, coeffs)


def homology_class(w: WeightSystem, t: TrainTrack) -> OneChain:
    """The cycle ``sum_e w(e) f_e`` with ``f_e`` directed left of the ties."""
    if w.d != 1:
        raise WeightError("homology classes are built from scalar weight systems")
    if not check_switch_relations(w, t):
        raise WeightError("switch relations fail; the chain would not be closed")
    return OneChain(t, {(e, leftward_tail(t, e)): w.scalar(e) for e in t.edges})


def tie_pairing(ch: OneChain, edge: str) -> Fraction:
    """Signed crossing count of ``ch`` with a generic tie of ``edge``."""
    if edge not in ch.track.edges:
        raise TrackError(f"unknown edge {edge!r}")
    tail = leftward_tail(ch.track, edge)
    total = Fraction(0)
    for j in (0, 1):
        c = ch.coefficients.get((edge, j))
        if c:
            total += c if j == tail else -c
    return total


def _check_inputs(w1: WeightSystem, w2: WeightSystem, t: TrainTrack) -> None:
    for w in (w1, w2):
        if w.d != 1:
            raise WeightError("intersection numbers need scalar weight systems")
        if not check_switch_relations(w, t):
            raise WeightError("switch relations fail")


def intersection_antisym(w1: WeightSystem, w2: WeightSystem, t: TrainTrack, check: bool = True) -> Fraction:
    """Half the antisymmetrised branch products, summed over every switch."""
    if check:
        _check_inputs(w1, w2, t)
    (a1, d1), (a2, d2) = w1.integral, w2.integral
    total = 0
    for s in t.switches:
        r, l = s.right.edge, s.left.edge
        total += a1[r][0] * a2[l][0] - a1[l][0] * a2[r][0]
    return Fraction(total, 2 * d1 * d2)


def intersection_raw(w1: WeightSystem, w2: WeightSystem, t: TrainTrack, check: bool = True) -> Fraction:
    """One signed branch product per switch, chosen by its divergence flag."""
    if not t.is_oriented:
        raise TrackError("intersection_raw needs divergence flags on every switch")
    if check:
        _check_inputs(w1, w2, t)
    (a1, d1), (a2, d2) = w1.integral, w2.integral
    total = 0
    for s in t.switches:
        r, l = s.right.edge, s.left.edge
        if s.divergence == "L":
            total += a1[r][0] * a2[l][0]
        else:
            total -= a1[l][0] * a2[r][0]
    return Fraction(total, d1 * d2)
