"""Shearing maps in SL_n and their infinitesimal generators in sl_n.

Matrices are numpy arrays.  An array of ``dtype=object`` holding
``Fraction`` entries is treated as exact: inverses, traces and products stay
rational.  Any other dtype is treated as binary64.  Exponentials only occur in
:func:`elementary_shear` and :func:`compose_shearing`, which are float-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import exact
from .symplectic import coupling_constant
from .track import TrainTrack
from .weights import WeightSystem


class ShearError(ValueError):
    pass


def is_exact(m: np.ndarray) -> bool:
    return m.dtype == object


def exact_matrix(rows: Sequence[Sequence[object]]) -> np.ndarray:
    return np.array([[exact.as_fraction(x) for x in r] for r in rows], dtype=object)


def exact_identity(n: int) -> np.ndarray:
    return exact_matrix([[int(i == j) for j in range(n)] for i in range(n)])


def _inverse(m: np.ndarray) -> np.ndarray:
    try:
        if is_exact(m):
            return np.array(exact.inverse(m.tolist()), dtype=object)
        if np.linalg.cond(m) > 1e12:
            raise np.linalg.LinAlgError
        return np.linalg.inv(m)
    except (ZeroDivisionError, np.linalg.LinAlgError):
        raise ShearError("line decomposition is singular") from None


@dataclass(frozen=True, eq=False)
class LineDecomposition:
    """Columns of ``matrix`` span the lines ``L_1, ..., L_n`` in order."""

    matrix: np.ndarray
    _inv: np.ndarray = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        m = self.matrix
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShearError("line decomposition must be a square matrix")
        object.__setattr__(self, "_inv", _inverse(m))

    @classmethod
    def identity(cls, n: int, exact_mode: bool = True) -> "LineDecomposition":
        return cls(exact_identity(n) if exact_mode else np.eye(n))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def exact(self) -> bool:
        return is_exact(self.matrix)

    def conjugate(self, diagonal: Sequence) -> np.ndarray:
        """``L diag(diagonal) L^-1``."""
        d = np.array(diagonal, dtype=object if self.exact else float)
        return (self.matrix * d) @ self._inv


def amplitudes_to_potentials(u: Sequence) -> list:
    """Solve ``v_a - v_(a+1) = u_a`` with ``sum(v) = 0``."""
    n = len(u) + 1
    v = []
    for a in range(1, n + 1):
        below = sum((Fraction(b, n) * u[b - 1] for b in range(1, a)), 0)
        above = sum((Fraction(n - b, n) * u[b - 1] for b in range(a, n)), 0)
        v.append(above - below)
    if not any(isinstance(x, Fraction) for x in u):
        v = [float(x) for x in v]
    return v


def shear_eigenvalues(n: int, a: int) -> list[Fraction]:
    if not 1 <= a <= n - 1:
        raise ShearError(f"shear index a={a} out of range 1..{n - 1}")
    return [Fraction(n - a, n) if b <= a else Fraction(-a, n) for b in range(1, n + 1)]


def infinitesimal_shear(n: int, a: int, L: LineDecomposition) -> np.ndarray:
    if L.n != n:
        raise ShearError(f"decomposition has size {L.n}, expected {n}")
    eig = shear_eigenvalues(n, a)
    return L.conjugate(eig if L.exact else [float(x) for x in eig])


def _shear_deviation(u: Sequence[float], L: LineDecomposition) -> np.ndarray:
    """``elementary_shear(u, L) - I``, accurate even for tiny ``u``."""
    if len(u) != L.n - 1:
        raise ShearError(f"amplitude has length {len(u)}, expected {L.n - 1}")
    v = amplitudes_to_potentials([float(x) for x in u])
    m = L.matrix.astype(float) if L.exact else L.matrix
    inv = L._inv.astype(float) if L.exact else L._inv
    return (m * np.expm1(v)) @ inv


def elementary_shear(u: Sequence[float], L: LineDecomposition) -> np.ndarray:
    return np.eye(L.n) + _shear_deviation(u, L)


def killing_form(x: np.ndarray, y: np.ndarray):
    if x.ndim != 2 or x.shape[0] != x.shape[1] or x.shape != y.shape:
        raise ShearError(f"killing form needs square matrices of one size, got {x.shape} and {y.shape}")
    # Tr(XY) without forming XY
    return 2 * x.shape[0] * (x * y.T).sum()


@dataclass
class CouplingReport:
    n: int
    killing: list[list[Fraction]]
    coupling: list[list[int]]
    mismatches: list[tuple[int, int]]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_coupling(n: int, L: LineDecomposition | None = None) -> CouplingReport:
    """Killing pairings of the infinitesimal shears on one shared decomposition."""
    L = L or LineDecomposition.identity(n)
    gens = [infinitesimal_shear(n, a, L) for a in range(1, n)]
    killing = [[killing_form(x, y) for y in gens] for x in gens]
    coupling = [[coupling_constant(n, a, b) for b in range(1, n)] for a in range(1, n)]
    bad = [(a + 1, b + 1) for a in range(n - 1) for b in range(n - 1) if killing[a][b] != coupling[a][b]]
    return CouplingReport(n, killing, coupling, bad)


@dataclass(frozen=True)
class ShearStep:
    """A gap bounded by the leaves with decompositions ``minus`` and ``plus``.

    ``amplitude`` is the cumulative cocycle value from the start of the arc to
    the gap.
    """

    minus: LineDecomposition
    plus: LineDecomposition
    amplitude: tuple


@dataclass(frozen=True)
class ShearConfiguration:
    steps: tuple[ShearStep, ...]
    final: LineDecomposition
    final_amplitude: tuple

    def __post_init__(self) -> None:
        n = self.final.n
        for st in self.steps:
            if st.minus.n != n or st.plus.n != n:
                raise ShearError("all decompositions must have the same size")
            if len(st.amplitude) != n - 1:
                raise ShearError(f"amplitudes must have length {n - 1}")
        if len(self.final_amplitude) != n - 1:
            raise ShearError(f"amplitudes must have length {n - 1}")

    @property
    def n(self) -> int:
        return self.final.n

    @classmethod
    def from_increments(cls, gaps, final: LineDecomposition, last_increment) -> "ShearConfiguration":
        """Build from per-leaf increments instead of cumulative amplitudes.

        ``gaps`` yields ``(minus, plus, increment)``; the amplitude of a gap is
        the running sum of the increments up to and including it, and the
        final amplitude adds ``last_increment``.
        """
        steps = []
        running = None
        for minus, plus, inc in gaps:
            running = tuple(inc) if running is None else tuple(x + y for x, y in zip(running, inc))
            steps.append(ShearStep(minus, plus, running))
        total = tuple(last_increment) if running is None else tuple(x + y for x, y in zip(running, last_increment))
        return cls(tuple(steps), final, total)


def shearing_deviation(cfg: ShearConfiguration, scale: float = 1.0) -> np.ndarray:
    """``compose_shearing(cfg, scale) - I`` without forming the identity.

    Factors are multiplied left to right as ``(I + P)(I + A) - I = P + A + PA``
    so that a product close to the identity keeps full relative precision.
    """
    factors = []
    for st in cfg.steps:
        amp = [scale * float(x) for x in st.amplitude]
        factors.append(_shear_deviation(amp, st.minus))
        factors.append(_shear_deviation([-x for x in amp], st.plus))
    factors.append(_shear_deviation([scale * float(x) for x in cfg.final_amplitude], cfg.final))
    dev = np.zeros((cfg.n, cfg.n))
    for a in factors:
        dev = dev + a + dev @ a
    return dev


def compose_shearing(cfg: ShearConfiguration, scale: float = 1.0) -> np.ndarray:
    """Ordered product of the elementary shears of ``scale * cfg``, left to right."""
    return np.eye(cfg.n) + shearing_deviation(cfg, scale)


def finite_gap_derivative(cfg: ShearConfiguration) -> np.ndarray:
    """Derivative of :func:`compose_shearing` in the scale at zero.

    Exact when every decomposition and amplitude is rational.
    """
    n = cfg.n
    decomps = [cfg.final] + [L for st in cfg.steps for L in (st.minus, st.plus)]
    exact_mode = all(L.exact for L in decomps)
    out = np.zeros((n, n), dtype=object if exact_mode else float)
    if exact_mode:
        out[...] = Fraction(0)
    for a in range(1, n):
        for st in cfg.steps:
            c = st.amplitude[a - 1]
            if c:
                out = out + c * (infinitesimal_shear(n, a, st.minus) - infinitesimal_shear(n, a, st.plus))
        c = cfg.final_amplitude[a - 1]
        if c:
            out = out + c * infinitesimal_shear(n, a, cfg.final)
    return out


@dataclass
class FiniteDifferenceReport:
    steps: tuple[float, ...]
    relative_errors: list[float]
    slope: float
    richardson_error: float


def finite_difference_check(cfg: ShearConfiguration, steps: Sequence[float] = (1e-3, 1e-4, 1e-5)) -> FiniteDifferenceReport:
    """Compare :func:`finite_gap_derivative` with central differences.

    The slope is the least-squares fit of log(error) against log(h).  The
    Richardson value combines the two largest steps as ``(4 D(h/2) - D(h)) / 3``
    with ``h`` the largest step.
    """
    exact_d = np.asarray(finite_gap_derivative(cfg), dtype=float)
    norm = np.linalg.norm(exact_d)
    if norm == 0:
        norm = 1.0

    def central(h: float) -> np.ndarray:
        return (shearing_deviation(cfg, h) - shearing_deviation(cfg, -h)) / (2 * h)

    errors = [float(np.linalg.norm(central(h) - exact_d) / norm) for h in steps]
    logs = np.log(np.array(steps))
    slope = float(np.polyfit(logs, np.log(np.maximum(errors, 1e-300)), 1)[0])
    h = max(steps)
    rich = (4 * central(h / 2) - central(h)) / 3
    return FiniteDifferenceReport(tuple(steps), errors, slope, float(np.linalg.norm(rich - exact_d) / norm))


SideCochain = Mapping[tuple[str, str], np.ndarray]


def abg_from_cochain(t: TrainTrack, u1: SideCochain, u2: SideCochain):
    """Half the antisymmetrised Killing pairings of branch values, summed over switches.

    ``u[(switch_id, "left")]`` and ``u[(switch_id, "right")]`` are the
    cochain values on the two branches at a switch.
    """
    total = 0
    for s in t.switches:
        try:
            r1, l1 = u1[(s.id, "right")], u1[(s.id, "left")]
            r2, l2 = u2[(s.id, "right")], u2[(s.id, "left")]
        except KeyError as exc:
            raise ShearError(f"no cochain value at switch side {exc.args[0]}") from None
        total = total + killing_form(r1, l2) - killing_form(l1, r2)
    return total / 2


def degenerate_cochain(
    alpha: WeightSystem, t: TrainTrack, n: int, decompositions: Mapping[str, LineDecomposition]
) -> dict[tuple[str, str], np.ndarray]:
    """Side values ``sum_a alpha^(a)(e_side) t^(a)`` on one decomposition per switch."""
    out = {}
    for s in t.switches:
        L = decompositions[s.id]
        gens = [infinitesimal_shear(n, a, L) for a in range(1, n)]
        for side in ("left", "right"):
            w = alpha[s.slot(side).edge]
            m = gens[0] * w[0]
            for a in range(1, n - 1):
                m = m + gens[a] * w[a]
            out[(s.id, side)] = m
    return out
