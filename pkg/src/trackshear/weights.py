"""Edge weight systems and their solution spaces, over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Mapping, Sequence

from . import exact
from .track import TrackError, TrainTrack, validate_track

Vector = tuple[Fraction, ...]


class WeightError(ValueError):
    pass


@dataclass(frozen=True)
class WeightSystem:
    """A vector in ``Q^d`` on every edge of a track."""

    d: int
    weights: Mapping[str, Vector]

    @classmethod
    def from_values(cls, values: Mapping[str, object], d: int | None = None) -> "WeightSystem":
        """Accept scalars (``d = 1``) or sequences of rationals per edge."""
        out = {}
        for e, v in values.items():
            if isinstance(v, (list, tuple)):
                out[e] = tuple(exact.as_fraction(x) for x in v)
            else:
                out[e] = (exact.as_fraction(v),)
        dims = {len(v) for v in out.values()}
        if d is None:
            if len(dims) != 1:
                raise WeightError("cannot infer the dimension")
            d = dims.pop()
        elif dims - {d}:
            raise WeightError(f"weight vectors must have length {d}")
        return cls(d, out)

    @classmethod
    def zero(cls, t: TrainTrack, d: int = 1) -> "WeightSystem":
        return cls(d, {e: (Fraction(0),) * d for e in t.edges})

    @cached_property
    def integral(self) -> tuple[dict[str, tuple[int, ...]], int]:
        """Integer weights and the common denominator they are scaled by."""
        den = 1
        for v in self.weights.values():
            for x in v:
                den = lcm(den, x.denominator)
        return {e: tuple(int(x * den) for x in v) for e, v in self.weights.items()}, den

    def __getitem__(self, edge: str) -> Vector:
        try:
            return self.weights[edge]
        except KeyError:
            raise WeightError(f"no weight on edge {edge!r}") from None

    def scalar(self, edge: str) -> Fraction:
        if self.d != 1:
            raise WeightError("scalar weights need d = 1")
        return self[edge][0]

    def coordinate(self, a: int) -> "WeightSystem":
        """The ``a``-th coordinate (1-based) as a ``d = 1`` system."""
        if not 1 <= a <= self.d:
            raise WeightError(f"coordinate {a} out of range 1..{self.d}")
        return WeightSystem(1, {e: (v[a - 1],) for e, v in self.weights.items()})

    def __add__(self, other: "WeightSystem") -> "WeightSystem":
        if self.d != other.d or set(self.weights) != set(other.weights):
            raise WeightError("weight systems live on different spaces")
        return WeightSystem(
            self.d, {e: tuple(x + y for x, y in zip(v, other.weights[e])) for e, v in self.weights.items()}
        )

    def scale(self, q: Fraction | int) -> "WeightSystem":
        q = Fraction(q)
        return WeightSystem(self.d, {e: tuple(q * x for x in v) for e, v in self.weights.items()})

    def __rmul__(self, q: Fraction | int) -> "WeightSystem":
        return self.scale(q)

    def flat(self, edges: Sequence[str]) -> list[Fraction]:
        return [x for e in edges for x in self[e]]


@dataclass(frozen=True)
class SubspaceBasis:
    track: TrainTrack
    d: int
    basis: tuple[WeightSystem, ...]
    twisted_n: int | None = None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def combine(self, coefficients: Sequence[Fraction | int]) -> WeightSystem:
        if len(coefficients) != len(self.basis):
            raise WeightError("wrong number of coefficients")
        out = {e: [Fraction(0)] * self.d for e in self.track.edges}
        for c, b in zip(coefficients, self.basis):
            if not c:
                continue
            for e, v in b.weights.items():
                row = out[e]
                for k, x in enumerate(v):
                    if x:
                        row[k] += c * x
        return WeightSystem(self.d, {e: tuple(v) for e, v in out.items()})


def reverse_coordinates(x: Sequence[Fraction]) -> Vector:
    return tuple(reversed(x))


def check_switch_relations(w: WeightSystem, t: TrainTrack) -> bool:
    """True iff ``trunk = left + right`` at every switch, coordinatewise."""
    for s in t.switches:
        trunk, left, right = w[s.trunk.edge], w[s.left.edge], w[s.right.edge]
        if any(a != b + c for a, b, c in zip(trunk, left, right)):
            return False
    return True


def check_twisted(w: WeightSystem, t: TrainTrack) -> bool:
    """True iff ``w(iota(e))`` is the coordinate reversal of ``w(e)`` for every edge."""
    if t.involution is None:
        raise TrackError("track has no involution")
    return all(w[t.involution.edges[e]] == reverse_coordinates(w[e]) for e in t.edges)


def _require_valid(t: TrainTrack) -> None:
    report = validate_track(t)
    if not report.valid:
        raise TrackError("invalid track: " + "; ".join(report.violations))


def switch_relation_rows(t: TrainTrack, d: int = 1) -> list[list[int]]:
    """One row per (switch, coordinate); unknowns ordered by edge, then coordinate."""
    ncols = len(t.edges) * d
    rows = []
    for s in t.switches:
        for k in range(d):
            row = [0] * ncols
            row[t.edge_index(s.trunk.edge) * d + k] += 1
            row[t.edge_index(s.left.edge) * d + k] -= 1
            row[t.edge_index(s.right.edge) * d + k] -= 1
            rows.append(row)
    return rows


def _unflatten(t: TrainTrack, d: int, x: Sequence[Fraction]) -> WeightSystem:
    return WeightSystem(d, {e: tuple(x[i * d:(i + 1) * d]) for i, e in enumerate(t.edges)})


def weight_space_basis(t: TrainTrack, d: int = 1) -> SubspaceBasis:
    """Basis of all ``Q^d``-valued edge weight systems on ``t``.

    The scalar kernel is computed once; the ``d``-dimensional space is its
    tensor product with the standard basis of ``Q^d``.
    """
    _require_valid(t)
    if d < 1:
        raise WeightError("d must be positive")
    scalar = exact.kernel_basis(switch_relation_rows(t), len(t.edges))
    basis = []
    for v in scalar:
        for k in range(d):
            zero = (Fraction(0),) * d
            weights = {}
            for i, e in enumerate(t.edges):
                weights[e] = zero if not v[i] else zero[:k] + (v[i],) + zero[k + 1:]
            basis.append(WeightSystem(d, weights))
    return SubspaceBasis(t, d, tuple(basis))


def twisted_subspace_basis(c: TrainTrack, n: int) -> SubspaceBasis:
    """Basis of ``Q^(n-1)`` weight systems with ``w(iota(e)) = reverse(w(e))``."""
    _require_valid(c)
    if c.involution is None:
        raise TrackError("twisted cocycles need a track with an involution")
    if n < 2:
        raise WeightError("n must be at least 2")
    d = n - 1
    rows = switch_relation_rows(c, d)
    ncols = len(c.edges) * d
    for e in c.edges:
        ie = c.edge_index(c.involution.edges[e])
        i = c.edge_index(e)
        for k in range(d):
            row = [0] * ncols
            row[ie * d + k] += 1
            row[i * d + (d - 1 - k)] -= 1
            if any(row):
                rows.append(row)
    kernel = exact.kernel_basis(rows, ncols)
    return SubspaceBasis(c, d, tuple(_unflatten(c, d, x) for x in kernel), twisted_n=n)


def expected_twisted_dimension(genus: int, n: int) -> int:
    return 6 * (genus - 1) * (n - 1) + (n - 1) // 2
