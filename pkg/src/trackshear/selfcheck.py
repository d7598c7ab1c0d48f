"""End-to-end consistency checks on the shipped genus-2 fixture."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import fixtures
from .homology import homology_class, intersection_antisym, intersection_raw, tie_pairing
from .sampling import random_configuration, random_element, random_exact_decomposition
from .shear import abg_from_cochain, degenerate_cochain, finite_difference_check, verify_coupling
from .symplectic import coupling_constant, gram_matrix, pairing_thm1, pairing_thm2
from .track import orientation_cover, region_analysis
from .weights import WeightSystem, expected_twisted_dimension, twisted_subspace_basis, weight_space_basis

FD_STEPS = (1e-3, 1e-4, 1e-5)
SLOPE_RANGE = (1.8, 2.2)
FD_TOLERANCE = 1e-6


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _coupling(n_max: int) -> CheckResult:
    bad = [(r.n, m) for r in map(verify_coupling, range(2, n_max + 1)) for m in r.mismatches]
    return CheckResult("coupling", not bad, f"B(t_a, t_b) = C(a, b) for n = 2..{n_max}" if not bad else f"mismatches {bad}")


def _degeneration(cover, corpus) -> CheckResult:
    ok = coupling_constant(2, 1, 1) == 2
    for a1, a2 in corpus.get(2, []):
        ok &= pairing_thm2(a1, a2, cover, 2) == 2 * intersection_antisym(a1, a2, cover)
    return CheckResult("n2_degeneration", ok, "C(1,1) = 2 and omega = 2 x intersection for n = 2")


def run_selfcheck(n_max: int = 6, seed: int = 0, cocycles: int = 200, configs: int = 50) -> list[CheckResult]:
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    rng = random.Random(seed)
    base = fixtures.genus2_complete()
    cover = orientation_cover(base)
    genus = region_analysis(base).genus
    ns = range(2, n_max + 1)
    results = [_coupling(n_max)]

    dims = {n: twisted_subspace_basis(cover, n) for n in ns}
    want = {n: expected_twisted_dimension(genus, n) for n in ns}
    got = {n: b.dimension for n, b in dims.items()}
    w_dim = weight_space_basis(base, 1).dimension
    chi = region_analysis(base).euler_characteristic
    results.append(
        CheckResult("dimensions", got == want and w_dim == 3 * abs(chi), f"weights {w_dim}, twisted {got}, expected {want}")
    )

    corpus = {}
    for n in ns:
        elems = [random_element(dims[n], rng) for _ in range(cocycles)]
        corpus[n] = list(zip(elems, elems[1:] + elems[:1]))

    bad = [n for n, pairs in corpus.items() for a1, a2 in pairs if pairing_thm1(a1, a2, cover, n) != pairing_thm2(a1, a2, cover, n)]
    results.append(CheckResult("theorem_consistency", not bad, f"{sum(map(len, corpus.values()))} pairs, failures for n in {sorted(set(bad))}"))

    scalars = [(a1.coordinate(1), a2.coordinate(n - 1)) for n, pairs in corpus.items() for a1, a2 in pairs]
    agree = all(intersection_raw(w1, w2, cover) == intersection_antisym(w1, w2, cover) for w1, w2 in scalars)
    # unit weight on a single edge breaks the switch relations at its ends
    other = scalars[0][0]
    control = any(
        intersection_raw(broken, other, cover, check=False) != intersection_antisym(broken, other, cover, check=False)
        for broken in (WeightSystem(1, {e: (Fraction(int(e == f)),) for e in cover.edges}) for f in cover.edges)
    )
    results.append(CheckResult("intersection_formulas", agree and control, f"agree={agree}, negative control differs={control}"))

    hom_ok = True
    for w, _ in scalars:
        ch = homology_class(w, cover)
        hom_ok &= ch.is_closed() and all(tie_pairing(ch, e) == w.scalar(e) for e in cover.edges)
    results.append(CheckResult("homology", hom_ok, "closed chains with tie pairing equal to weights"))

    anti_ok = True
    for n, pairs in corpus.items():
        for a1, a2 in pairs[:20]:
            q = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
            anti_ok &= pairing_thm2(a1, a1, cover, n) == 0
            anti_ok &= pairing_thm2(a1, a2, cover, n) == -pairing_thm2(a2, a1, cover, n)
            anti_ok &= pairing_thm2(q * a1, a2, cover, n) == q * pairing_thm2(a1, a2, cover, n)
    ranks = {}
    for n in ns:
        g = gram_matrix(dims[n], n)
        anti_ok &= all(g.matrix[i][j] == -g.matrix[j][i] for i in range(g.dimension) for j in range(g.dimension))
        anti_ok &= g.rank % 2 == 0
        ranks[n] = g.rank
    results.append(CheckResult("antisymmetry", anti_ok, f"gram ranks {ranks}"))

    nrng = np.random.default_rng(seed)
    worst_err, slopes = 0.0, []
    for _ in range(configs):
        n = int(nrng.integers(2, min(5, n_max) + 1))
        m = int(nrng.integers(0, 21))
        rep = finite_difference_check(random_configuration(n, m, nrng), FD_STEPS)
        worst_err = max(worst_err, rep.relative_errors[1])
        slopes.append(rep.slope)
    fd_ok = worst_err <= FD_TOLERANCE and all(SLOPE_RANGE[0] <= s <= SLOPE_RANGE[1] for s in slopes)
    results.append(
        CheckResult("gap_formula", fd_ok, f"{configs} configs, slopes in [{min(slopes):.4f}, {max(slopes):.4f}], max rel. error {worst_err:.3g}")
    )

    bridge_ok = True
    for n in ns:
        a1, a2 = corpus[n][0]
        decomps = {s: random_exact_decomposition(n, rng) for s in cover.switch_ids}
        u1 = degenerate_cochain(a1, cover, n, decomps)
        u2 = degenerate_cochain(a2, cover, n, decomps)
        bridge_ok &= abg_from_cochain(cover, u1, u2) == pairing_thm2(a1, a2, cover, n)
    results.append(CheckResult("bridge", bridge_ok, "Killing switch-sum on shared decompositions equals the edge-weight formula"))

    results.append(_degeneration(cover, corpus))
    return results
