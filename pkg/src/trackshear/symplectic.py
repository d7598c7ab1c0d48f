"""Goldman pairing of shearing cocycles on an orientation cover.

Two evaluators are provided and deliberately share no intersection code:

* :func:`pairing_thm1` weights the intersection numbers of the coordinate
  homology classes by the coupling constants, going through
  :func:`trackshear.homology.intersection_raw` (the divergence-flag formula);
* :func:`pairing_thm2` sums the antisymmetrised branch products directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import exact
from .homology import intersection_raw
from .track import TrainTrack, check_maximal_carrying, quotient
from .weights import SubspaceBasis, WeightError, WeightSystem, check_switch_relations


def coupling_constant(n: int, a: int, b: int) -> int:
    if n < 2 or not (1 <= a <= n - 1 and 1 <= b <= n - 1):
        raise ValueError(f"need 1 <= a, b <= n - 1, got n={n}, a={a}, b={b}")
    if a > b:
        a, b = b, a
    return 2 * a * (n - b)


@dataclass(frozen=True)
class CouplingMatrix:
    n: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, n: int) -> "CouplingMatrix":
        return cls(n, tuple(tuple(coupling_constant(n, a, b) for b in range(1, n)) for a in range(1, n)))

    def __call__(self, a: int, b: int) -> int:
        return self.entries[a - 1][b - 1]


def track_warnings(t: TrainTrack) -> list[str]:
    """Reasons the combinatorial value may lack its geometric meaning."""
    warnings = []
    if t.involution is None:
        warnings.append("track is not an orientation cover (no involution)")
    try:
        # trigons of the base may lift to hexagons, so covers are judged downstairs
        base = quotient(t) if t.involution is not None else t
        if not check_maximal_carrying(base):
            warnings.append("track has a complementary region that is not a trigon")
    except ValueError as exc:
        warnings.append(f"region analysis failed: {exc}")
    return warnings


def _check_pair(alpha1: WeightSystem, alpha2: WeightSystem, t: TrainTrack, n: int) -> None:
    if n < 2:
        raise WeightError("n must be at least 2")
    for alpha in (alpha1, alpha2):
        if alpha.d != n - 1:
            raise WeightError(f"weights have dimension {alpha.d}, expected n - 1 = {n - 1}")
        if not check_switch_relations(alpha, t):
            raise WeightError("switch relations fail")


def _switch_terms(alpha1: WeightSystem, alpha2: WeightSystem, t: TrainTrack, n: int) -> tuple[dict[str, int], int]:
    """Integer per-switch sums and the denominator that turns them into pairings."""
    c = CouplingMatrix.build(n).entries
    w1, d1 = alpha1.integral
    w2, d2 = alpha2.integral
    idx = range(n - 1)
    out = {}
    for s in t.switches:
        r1, l1 = w1[s.right.edge], w1[s.left.edge]
        r2, l2 = w2[s.right.edge], w2[s.left.edge]
        cl2 = [sum(c[a][b] * l2[b] for b in idx) for a in idx]
        cr2 = [sum(c[a][b] * r2[b] for b in idx) for a in idx]
        out[s.id] = sum(r1[a] * cl2[a] - l1[a] * cr2[a] for a in idx)
    return out, 2 * d1 * d2


def pairing_thm2(alpha1: WeightSystem, alpha2: WeightSystem, t: TrainTrack, n: int) -> Fraction:
    _check_pair(alpha1, alpha2, t, n)
    terms, den = _switch_terms(alpha1, alpha2, t, n)
    return Fraction(sum(terms.values()), den)


def pairing_thm1(alpha1: WeightSystem, alpha2: WeightSystem, t: TrainTrack, n: int) -> Fraction:
    _check_pair(alpha1, alpha2, t, n)
    coords1 = [alpha1.coordinate(a) for a in range(1, n)]
    coords2 = [alpha2.coordinate(b) for b in range(1, n)]
    # coordinates of systems that pass the switch check pass it too
    return sum(
        (
            coupling_constant(n, a, b) * intersection_raw(coords1[a - 1], coords2[b - 1], t, check=False)
            for a in range(1, n)
            for b in range(1, n)
        ),
        Fraction(0),
    )


def switch_contributions(alpha1: WeightSystem, alpha2: WeightSystem, t: TrainTrack, n: int) -> dict[str, Fraction]:
    """Per-switch terms of :func:`pairing_thm2` (they sum to the pairing)."""
    _check_pair(alpha1, alpha2, t, n)
    terms, den = _switch_terms(alpha1, alpha2, t, n)
    return {sid: Fraction(v, den) for sid, v in terms.items()}


@dataclass
class PairingResult:
    thm1: Fraction
    thm2: Fraction
    warnings: list[str] = field(default_factory=list)

    @property
    def difference(self) -> Fraction:
        return self.thm1 - self.thm2


def pair(alpha1: WeightSystem, alpha2: WeightSystem, t: TrainTrack, n: int) -> PairingResult:
    return PairingResult(
        pairing_thm1(alpha1, alpha2, t, n),
        pairing_thm2(alpha1, alpha2, t, n),
        track_warnings(t),
    )


@dataclass
class GramReport:
    basis: SubspaceBasis
    matrix: list[list[Fraction]]
    rank: int
    warnings: list[str] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.matrix)


def gram_matrix(basis: SubspaceBasis, n: int) -> GramReport:
    """Pairings of every ordered pair of basis vectors, with the exact rank."""
    if basis.d != n - 1:
        raise WeightError(f"basis has dimension {basis.d}, expected n - 1 = {n - 1}")
    t = basis.track
    vecs = basis.basis
    m = [[pairing_thm2(vi, vj, t, n) for vj in vecs] for vi in vecs]
    return GramReport(basis, m, exact.rank(m) if m else 0, track_warnings(t))
