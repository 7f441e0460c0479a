"""Independent oracles used by the test suite.

Everything here deliberately avoids the production code paths it checks:
multiplication is redone by polynomial convolution, numeric values by
high-precision complex arithmetic, and minimal gate counts by layer-by-layer
closures that are exhaustive over circuits of unbounded length.
"""

from __future__ import annotations

import mpmath

from ctsynth.ring import ZOmega
from ctsynth.unitary import H, P, RingUnitary, T, X, I2


def poly_mul(a: tuple[int, int, int, int], b: tuple[int, int, int, int]) -> tuple:
    """Coordinate product in Z[t]/(t^4 + 1), by plain convolution."""
    c = [0] * 8
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            c[i + j] += ai * bj
    return tuple(c[i] - c[i + 4] for i in range(4))


def to_complex(x: ZOmega, dps: int = 60) -> mpmath.mpc:
    with mpmath.workdps(dps):
        w = mpmath.exp(mpmath.mpc(0, mpmath.pi / 4))
        return x.x0 + x.x1 * w + x.x2 * w**2 + x.x3 * w**3


def complex_model_agrees(a: ZOmega, b: ZOmega, tol: float = 1e-40) -> bool:
    """Add/mul/conj/√2-scaling against high-precision complex arithmetic."""
    with mpmath.workdps(60):
        ca, cb = to_complex(a), to_complex(b)
        sqrt2 = mpmath.sqrt(2)

        def close(x: ZOmega, value) -> bool:
            ref = to_complex(x)
            scale = max(mpmath.mpf(1), abs(ref), abs(value))
            return abs(ref - value) / scale < tol

        return (
            close(a + b, ca + cb)
            and close(a * b, ca * cb)
            and close(a.conj(), mpmath.conj(ca))
            and close(a.mul_sqrt2(), ca * sqrt2)
        )


def _closure(generators: list[RingUnitary]) -> list[RingUnitary]:
    """All phase classes generated by the given gates, one representative each."""
    reps = {I2.canonical()[0]: I2}
    frontier = [I2]
    while frontier:
        nxt = []
        for v in frontier:
            for g in generators:
                w = v @ g
                key = w.canonical()[0]
                if key not in reps:
                    reps[key] = w
                    nxt.append(w)
        frontier = nxt
    return list(reps.values())


def clifford_classes() -> list[RingUnitary]:
    return _closure([H, P])


def monomial_classes() -> list[RingUnitary]:
    return _closure([X, T])


def _layered_min_counts(
    layer_zero: list[RingUnitary],
    step_matrices: list[RingUnitary],
    targets: set[tuple],
    max_layers: int,
) -> dict[tuple, int]:
    """Minimal number of step layers needed to reach each target phase class.

    Layer n holds every class expressible as L0·(S·L0)^n; the step set must
    be such that this stratification is exhaustive over all circuits.
    """
    dist: dict[tuple, int] = {}
    frontier: list[RingUnitary] = []
    for v in layer_zero:
        key = v.canonical()[0]
        if key not in dist:
            dist[key] = 0
            frontier.append(v)
    remaining = set(targets) - dist.keys()
    n = 0
    while remaining and frontier and n < max_layers:
        n += 1
        nxt = []
        for v in frontier:
            for m in step_matrices:
                w = v @ m
                key = w.canonical()[0]
                if key not in dist:
                    dist[key] = n
                    nxt.append(w)
                    remaining.discard(key)
        frontier = nxt
    return dist


def exact_min_t_map(targets: set[tuple], max_layers: int = 16) -> dict[tuple, int]:
    """True minimal T count per phase class, over circuits of any length.

    Any library circuit with n T-type gates rewrites exactly as
    C0·T·C1·T·...·T·Cn with Clifford segments (T† is Z·P·T up to nothing),
    so stratifying by Clifford layers is exhaustive.
    """
    cliffs = clifford_classes()
    assert len(cliffs) == 24
    return _layered_min_counts(cliffs, [T @ c for c in cliffs], targets, max_layers)


def exact_min_h_map(targets: set[tuple], max_layers: int = 16) -> dict[tuple, int]:
    """True minimal H count per phase class, over circuits of any length.

    The non-Hadamard library gates generate the monomial group (diagonal and
    antidiagonal matrices), so any circuit with n Hadamards rewrites as
    M0·H·M1·...·H·Mn with monomial segments.
    """
    monos = monomial_classes()
    assert len(monos) == 16
    return _layered_min_counts(monos, [H @ m for m in monos], targets, max_layers)


def ht_ball(depth: int) -> dict[tuple, RingUnitary]:
    """One representative per phase class reachable by ≤ depth gates over {H, T}."""
    reps = {I2.canonical()[0]: I2}
    frontier = [I2]
    for _ in range(depth):
        nxt = []
        for v in frontier:
            for g in (H, T):
                w = v @ g
                key = w.canonical()[0]
                if key not in reps:
                    reps[key] = w
                    nxt.append(w)
        frontier = nxt
    return reps
