"""Exhaustive mod-8 residue verification of the descent lemma.

The lemma behind each synthesis step says that for unit-vector numerator
pairs (x, y) of equal low √2-valuation, every valuation jump d in {1, 2, 3}
is realized by |x + ω^k·y|² for some k in {0, 1, 2, 3}.  Whether a given
jump occurs depends only on the coordinates of x and y modulo 8, so the
statement reduces to a finite check over residue vectors, reproduced here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

__all__ = [
    "AT_LEAST_6",
    "ResidueVector",
    "residue_add",
    "residue_mul_omega",
    "residue_mul_sqrt2",
    "residue_forms",
    "residue_gde_abs_sq",
    "verify_lemma",
    "find_counterexample",
    "LemmaWitness",
]

ResidueVector = tuple[int, int, int, int]


class _AtLeastSix:
    """Capped valuation: the mod-8 data only shows the value is ≥ 6."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "AT_LEAST_6"


AT_LEAST_6 = _AtLeastSix()


def residue_add(x: ResidueVector, y: ResidueVector) -> ResidueVector:
    return (
        (x[0] + y[0]) & 7,
        (x[1] + y[1]) & 7,
        (x[2] + y[2]) & 7,
        (x[3] + y[3]) & 7,
    )


def residue_mul_omega(x: ResidueVector) -> ResidueVector:
    return ((-x[3]) & 7, x[0], x[1], x[2])


def residue_mul_sqrt2(x: ResidueVector) -> ResidueVector:
    return (
        (x[1] - x[3]) & 7,
        (x[0] + x[2]) & 7,
        (x[1] + x[3]) & 7,
        (x[2] - x[0]) & 7,
    )


def residue_forms(x: ResidueVector) -> tuple[int, int]:
    """(P mod 8, Q mod 8) of any lift of the residue vector."""
    p = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]) & 7
    q = (x[0] * (x[1] - x[3]) + x[2] * (x[1] + x[3])) & 7
    return p, q


def _v2_mod8(a: int) -> Optional[int]:
    """2-adic valuation of a residue mod 8; None encodes "at least 3"."""
    if a & 1:
        return 0
    if a & 2:
        return 1
    if a & 4:
        return 2
    return None


def residue_gde_abs_sq(x: ResidueVector):
    """√2-valuation of |x|² as far as mod-8 data determines it.

    Exact values 0..5 are returned when determined; otherwise both form
    valuations exceed the mod-8 horizon, the true value is at least 6, and
    AT_LEAST_6 is returned.
    """
    p, q = residue_forms(x)
    va = _v2_mod8(p)
    vb = _v2_mod8(q)
    if va is None:
        if vb is None:
            return AT_LEAST_6
        return 2 * vb + 1
    if vb is None or vb >= va:
        return 2 * va
    return 2 * vb + 1


@dataclass(frozen=True)
class LemmaWitness:
    """A failing case: no allowed k realizes valuation jump d for (x, y)."""

    x: ResidueVector
    y: ResidueVector
    d: int


# Packed form: each coordinate in a 4-bit field, so vector addition mod 8 is
# a single integer add-and-mask.
_MASK = 0x7777


def _pack(x: ResidueVector) -> int:
    return x[0] | (x[1] << 4) | (x[2] << 8) | (x[3] << 12)


def _unpack(p: int) -> ResidueVector:
    return (p & 7, (p >> 4) & 7, (p >> 8) & 7, (p >> 12) & 7)


def _gde_by_packed() -> list[int]:
    """Capped gde of |·|² for every packed vector; -1 encodes AT_LEAST_6."""
    out = [0] * 0x8000
    for p in range(0x8000):
        if p & ~_MASK:
            continue
        g = residue_gde_abs_sq(_unpack(p))
        out[p] = -1 if g is AT_LEAST_6 else g
    return out


def find_counterexample(
    k_powers: Iterable[int] = (0, 1, 2, 3),
    d_values: Iterable[int] = (1, 2, 3),
) -> Optional[LemmaWitness]:
    """Run the full residue case check; return the first failing case, if any.

    Residue vectors are bucketed by (gde class j ∈ {0, 1}, P mod 8, Q mod 8);
    each bucket is paired against the bucket with negated forms (the
    necessary condition for |x|² + |y|² to be a power of two), and every
    jump d must be realized by some allowed power of ω.
    """
    k_powers = tuple(k_powers)
    d_values = tuple(d_values)
    gde_lut = _gde_by_packed()

    buckets: dict[tuple[int, int, int], list[int]] = {}
    for c0 in range(8):
        for c1 in range(8):
            for c2 in range(8):
                for c3 in range(8):
                    vec = (c0, c1, c2, c3)
                    j = residue_gde_abs_sq(vec)
                    if j == 0 or j == 1:
                        p, q = residue_forms(vec)
                        buckets.setdefault((j, p, q), []).append(_pack(vec))

    for j in (0, 1):
        for a_x in range(8):
            for b_x in range(8):
                xs = buckets.get((j, a_x, b_x))
                if not xs:
                    continue
                ys = buckets.get((j, (-a_x) & 7, (-b_x) & 7))
                if not ys:
                    continue
                needed = tuple(d + j for d in d_values)
                for py in ys:
                    rotations = []
                    vy = _unpack(py)
                    for k in k_powers:
                        vr = vy
                        for _ in range(k):
                            vr = residue_mul_omega(vr)
                        rotations.append(_pack(vr))
                    for px in xs:
                        got = {gde_lut[(px + pr) & _MASK] for pr in rotations}
                        for d, need in zip(d_values, needed):
                            if need not in got:
                                return LemmaWitness(x=_unpack(px), y=vy, d=d)
    return None


def verify_lemma(
    k_powers: Iterable[int] = (0, 1, 2, 3),
    d_values: Iterable[int] = (1, 2, 3),
) -> bool:
    """True iff every residue case admits every required valuation jump."""
    return find_counterexample(k_powers, d_values) is None
