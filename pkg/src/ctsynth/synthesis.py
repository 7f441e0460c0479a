"""Descent synthesis of ring unitaries into {H, T, T†, P, P†, Z, X, Y} circuits.

The core loop peels one Hadamard layer per step, lowering the denominator
measure by exactly one each time, until the residual lands in a finite
lookup table of low-measure unitaries built once by breadth-first search.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from enum import Enum
from math import isqrt
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .ring import RingScalar, ZOmega
from .unitary import (
    DenMat,
    RingState,
    RingUnitary,
    complete_from_column,
    _canonical_denmat,
    _denmat_from_unitary,
    _denmat_is_monomial,
    _denmat_measure,
    _denmat_reduce,
    _t_add,
    _t_rot,
    _t_sub,
)
from . import unitary as _u

__all__ = [
    "Gate",
    "GateCounts",
    "Circuit",
    "CircuitFormatError",
    "SynthesisError",
    "TableMissError",
    "InternalInvariantError",
    "CertificateError",
    "LookupTable",
    "OptimalityCertificate",
    "SynthesisInfo",
    "build_table",
    "get_default_table",
    "enumerate_sde_le3",
    "reduce_step",
    "synthesize",
    "synthesize_info",
    "prepare_state",
    "normalize_ht",
    "certify_optimality",
    "brute_force_min_counts",
]


class SynthesisError(RuntimeError):
    pass


class TableMissError(SynthesisError):
    """A residual low-measure unitary is absent from the lookup table."""


class InternalInvariantError(SynthesisError):
    """No descent power worked; this would falsify the descent lemma."""


class CertificateError(SynthesisError):
    """An optimality assertion failed for a synthesized circuit."""


class CircuitFormatError(ValueError):
    pass


class Gate(Enum):
    H = "H"
    T = "T"
    TDAG = "t"
    P = "P"
    PDAG = "p"
    Z = "Z"
    X = "X"
    Y = "Y"

    @property
    def token(self) -> str:
        return self.value

    def __repr__(self) -> str:
        return f"Gate.{self.name}"


_GATE_FROM_TOKEN = {g.value: g for g in Gate}

GATE_UNITARIES = {
    Gate.H: _u.H,
    Gate.T: _u.T,
    Gate.TDAG: _u.TDAG,
    Gate.P: _u.P,
    Gate.PDAG: _u.PDAG,
    Gate.Z: _u.Z,
    Gate.X: _u.X,
    Gate.Y: _u.Y,
}

# Diagonal gates accumulate into T-power runs; the value is the T exponent mod 8.
_RUN_DELTA = {Gate.T: 1, Gate.TDAG: 7, Gate.P: 2, Gate.PDAG: 6, Gate.Z: 4}


@dataclass(frozen=True)
class GateCounts:
    n_g: int
    n_T: int
    n_H: int
    n_P: int
    n_Pl: int

    @classmethod
    def from_gates(cls, gates: Iterable[Gate]) -> GateCounts:
        n_g = n_t = n_h = n_p = n_pl = 0
        for g in gates:
            n_g += 1
            if g is Gate.H:
                n_h += 1
            elif g is Gate.T or g is Gate.TDAG:
                n_t += 1
            elif g is Gate.P or g is Gate.PDAG:
                n_p += 1
            else:
                n_pl += 1
        return cls(n_g, n_t, n_h, n_p, n_pl)

    def to_json(self) -> dict:
        return {
            "n_g": self.n_g,
            "n_T": self.n_T,
            "n_H": self.n_H,
            "n_P": self.n_P,
            "n_Pl": self.n_Pl,
        }


class Circuit:
    """Gate sequence in matrix-product order.

    The textual form reads like the matrix product: "HT" denotes H·T, whose
    rightmost factor T is the first gate applied to a ket.
    """

    __slots__ = ("gates",)

    def __init__(self, gates: Iterable[Gate] = ()) -> None:
        self.gates = tuple(gates)

    @property
    def text(self) -> str:
        return "".join(g.value for g in self.gates)

    @classmethod
    def from_text(cls, text: str) -> Circuit:
        gates = []
        for ch in text:
            if ch.isspace():
                continue
            g = _GATE_FROM_TOKEN.get(ch)
            if g is None:
                raise CircuitFormatError(f"unknown gate token {ch!r}")
            gates.append(g)
        return cls(gates)

    def counts(self) -> GateCounts:
        return GateCounts.from_gates(self.gates)

    def evaluate(self) -> RingUnitary:
        return _unitary_from_denmat(_eval_denmat(self.gates))

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Circuit):
            return self.gates == other.gates
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if isinstance(other, Circuit):
            return Circuit(self.gates + other.gates)
        return NotImplemented

    def __repr__(self) -> str:
        return f"Circuit({self.text!r})"


def _unitary_from_denmat(m: DenMat) -> RingUnitary:
    return _u._unitary_from_denmat(m)


_ID_DENMAT: DenMat = ((1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0), (1, 0, 0, 0), 0)


def _denmat_apply_right(m: DenMat, g: Gate) -> DenMat:
    """m · G for a single library gate G."""
    n00, n01, n10, n11, k = m
    if g is Gate.H:
        return _denmat_reduce(
            (_t_add(n00, n01), _t_sub(n00, n01), _t_add(n10, n11), _t_sub(n10, n11), k + 1)
        )
    if g is Gate.X:
        return (n01, n00, n11, n10, k)
    if g is Gate.Y:
        return (_t_rot(n01, 2), _t_rot(n00, 6), _t_rot(n11, 2), _t_rot(n10, 6), k)
    r = _RUN_DELTA[g]
    return (n00, _t_rot(n01, r), n10, _t_rot(n11, r), k)


def _denmat_left_htj(m: DenMat, j: int) -> DenMat:
    """H·T^j·m (j taken mod 8)."""
    n00, n01, n10, n11, k = m
    a = _t_rot(n10, j)
    b = _t_rot(n11, j)
    return _denmat_reduce((_t_add(n00, a), _t_add(n01, b), _t_sub(n00, a), _t_sub(n01, b), k + 1))


def _denmat_right_tjh(m: DenMat, j: int) -> DenMat:
    """m·T^j·H (j taken mod 8)."""
    n00, n01, n10, n11, k = m
    a = _t_rot(n01, j)
    b = _t_rot(n11, j)
    return _denmat_reduce((_t_add(n00, a), _t_sub(n00, a), _t_add(n10, b), _t_sub(n10, b), k + 1))


def _eval_denmat(gates: Iterable[Gate], start: DenMat = _ID_DENMAT) -> DenMat:
    m = start
    for g in gates:
        m = _denmat_apply_right(m, g)
    return m


def evaluate_word(text: str) -> RingUnitary:
    return Circuit.from_text(text).evaluate()


# ---------------------------------------------------------------------------
# One descent step: pick k in {0,1,2,3} with measure(H·T^{∓k}·U) = measure − 1.
# The candidate test only needs the valuation of |top-left entry|² capped at
# a small target, so it runs on coordinates mod 16 before any big arithmetic.
# ---------------------------------------------------------------------------


def _mask16(t):
    return (t[0] & 15, t[1] & 15, t[2] & 15, t[3] & 15)


def _capped_gde16(p: int, q: int) -> Optional[int]:
    """gde of p + √2·q from 4-bit data; None means the value is at least 8."""
    va = (p & -p).bit_length() - 1 if p else None
    vb = (q & -q).bit_length() - 1 if q else None
    if va is None:
        if vb is None:
            return None
        return 2 * vb + 1
    if vb is None or vb >= va:
        return 2 * va
    return 2 * vb + 1


def _descend_step(m: DenMat, s: int, negative_powers: bool) -> tuple[Optional[int], DenMat]:
    n00, _, n10, _, k_den = m
    target = 2 * k_den + 3 - s
    m00 = _mask16(n00)
    m10 = _mask16(n10)
    for k in range(4):
        j = k if negative_powers else (-k) % 8
        v = _t_add(m00, _t_rot(m10, j))
        v = (v[0] & 15, v[1] & 15, v[2] & 15, v[3] & 15)
        p = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]) & 15
        q = (v[0] * (v[1] - v[3]) + v[2] * (v[1] + v[3])) & 15
        if _capped_gde16(p, q) == target:
            return k, _denmat_left_htj(m, j)
    return None, m


def reduce_step(u: RingUnitary, *, negative_powers: bool = False) -> tuple[int, RingUnitary]:
    """One descent step on a measure ≥ 4 unitary: returns (k, H·T^{∓k}·u)."""
    m = _denmat_from_unitary(u)
    s = _denmat_measure(m)
    if s < 4:
        raise InternalInvariantError(f"descent requires sde measure >= 4, got {s}")
    k, m2 = _descend_step(m, s, negative_powers)
    if k is None:
        raise InternalInvariantError("no power k in {0,1,2,3} lowers the measure")
    return k, _unitary_from_denmat(m2)


# ---------------------------------------------------------------------------
# Run rewriting into the full gate library.
# ---------------------------------------------------------------------------

_RUN_REWRITE = {
    0: (),
    1: (Gate.T,),
    2: (Gate.P,),
    3: (Gate.Z, Gate.TDAG),
    4: (Gate.Z,),
    5: (Gate.Z, Gate.T),
    6: (Gate.PDAG,),
    7: (Gate.TDAG,),
}

_RUN_REWRITE_PREFER_P = dict(_RUN_REWRITE)
_RUN_REWRITE_PREFER_P[3] = (Gate.P, Gate.T)


def _run_gates(r: int, prefer_p: bool) -> tuple[Gate, ...]:
    table = _RUN_REWRITE_PREFER_P if prefer_p else _RUN_REWRITE
    return table[r & 7]


def normalize_ht(c: Circuit, *, prefer_p: bool = False) -> Circuit:
    """Collapse diagonal runs to their cheapest exact form (T⁴→Z, T³→Z·T†, T²→P, ...).

    Every rewrite is an exact matrix identity, so the evaluated unitary is
    unchanged, global phase included.
    """
    out: list[Gate] = []
    run = 0
    for g in c.gates:
        d = _RUN_DELTA.get(g)
        if d is not None:
            run += d
        else:
            out.extend(_run_gates(run, prefer_p))
            run = 0
            out.append(g)
    out.extend(_run_gates(run, prefer_p))
    return Circuit(out)


# ---------------------------------------------------------------------------
# Lookup table of all unitaries with sde measure at most 3.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TableEntry:
    circuit: Circuit
    phase: int  # evaluate(circuit) = ω^phase · representative of the key


class LookupTable:
    FORMAT_VERSION = 1
    GENERATORS = "HT"
    CANONICAL_SCHEME = "phase-lexmin-common-denominator-v1"

    def __init__(self, entries: dict[tuple, TableEntry]) -> None:
        self.entries = entries
        self.entry_count = len(entries)
        self.max_circuit_length = max((len(e.circuit) for e in entries.values()), default=0)

    def lookup(self, key: tuple) -> Optional[TableEntry]:
        return self.entries.get(key)

    def save(self, path: str | Path) -> None:
        payload = {
            "format_version": self.FORMAT_VERSION,
            "generators": self.GENERATORS,
            "canonical_scheme": self.CANONICAL_SCHEME,
            "entry_count": self.entry_count,
            "max_circuit_length": self.max_circuit_length,
            "entries": [
                {"key": ",".join(map(str, key)), "circuit": e.circuit.text, "phase": e.phase}
                for key, e in sorted(self.entries.items())
            ],
        }
        Path(path).write_text(json.dumps(payload, indent=0) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> LookupTable:
        payload = json.loads(Path(path).read_text())
        if payload.get("format_version") != cls.FORMAT_VERSION:
            raise SynthesisError(f"unsupported table format version {payload.get('format_version')!r}")
        if payload.get("canonical_scheme") != cls.CANONICAL_SCHEME:
            raise SynthesisError(f"table uses canonical scheme {payload.get('canonical_scheme')!r}")
        entries = {}
        for item in payload["entries"]:
            key = tuple(int(v) for v in item["key"].split(","))
            entries[key] = TableEntry(Circuit.from_text(item["circuit"]), int(item["phase"]))
        return cls(entries)


def build_table() -> LookupTable:
    """Closure from the identity over the measure ≤ 4 region, up to global phase.

    Phase classes are settled in lexicographic (n_H, n_T, n_g) cost order over
    the whole gate library, so every retained circuit has the fewest Hadamards
    possible and, among those, the fewest T gates.  A plain shortest-word
    search over {H, T} does not have this property: some measure-3 classes
    have short three-Hadamard words but only longer two-Hadamard circuits,
    and a handful need a trailing Pauli that {H, T} words can only spell with
    two extra Hadamards.
    """
    entries: dict[tuple, TableEntry] = {}
    visited: set[tuple] = set()
    # heap item: (n_H, n_T, n_g, word, denmat)
    heap: list[tuple[int, int, int, str, DenMat]] = [(0, 0, 0, "", _ID_DENMAT)]
    while heap:
        n_h, n_t, n_g, word, m = heapq.heappop(heap)
        key, q = _canonical_denmat(m)
        if key in visited:
            continue
        visited.add(key)
        s = _denmat_measure(m)
        if s <= 3:
            entries[key] = TableEntry(normalize_ht(Circuit.from_text(word)), q)
        for g in _ALL_GATES:
            m2 = _denmat_apply_right(m, g)
            if _denmat_measure(m2) > 4:
                continue
            heapq.heappush(
                heap,
                (
                    n_h + (g is Gate.H),
                    n_t + (g is Gate.T or g is Gate.TDAG),
                    n_g + 1,
                    word + g.value,
                    m2,
                ),
            )
    return LookupTable(entries)


_DEFAULT_TABLE: Optional[LookupTable] = None


def get_default_table() -> LookupTable:
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = build_table()
    return _DEFAULT_TABLE


def enumerate_sde_le3() -> set[RingUnitary]:
    """Direct enumeration of all phase classes with sde measure ≤ 3.

    Independent of the breadth-first construction: unit columns with common
    denominator exponent m ≤ 2 are enumerated from the coordinate box
    P(x) ≤ 2^m and completed over all eight determinant phases.
    """
    reps: dict[tuple, RingUnitary] = {}
    for m in (0, 1, 2):
        cap = 1 << m
        bound = isqrt(cap)
        box = range(-bound, bound + 1)
        xs = []
        by_pq: dict[tuple[int, int], list] = {}
        for c0 in box:
            for c1 in box:
                for c2 in box:
                    for c3 in box:
                        p = c0 * c0 + c1 * c1 + c2 * c2 + c3 * c3
                        if p > cap:
                            continue
                        q = c0 * (c1 - c3) + c2 * (c1 + c3)
                        xs.append(((c0, c1, c2, c3), p, q))
                        by_pq.setdefault((p, q), []).append((c0, c1, c2, c3))
        for xc, p, q in xs:
            for yc in by_pq.get((cap - p, -q), ()):
                state = RingState(
                    RingScalar(ZOmega(*xc), m), RingScalar(ZOmega(*yc), m)
                )
                for k in range(8):
                    u = complete_from_column(state, k)
                    if u.sde_measure() > 3:
                        continue
                    key, phase = u.canonical()
                    if key not in reps:
                        reps[key] = u.phase_mul(-phase)
    return set(reps.values())


# ---------------------------------------------------------------------------
# Synthesis.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SynthesisInfo:
    circuit: Circuit
    phase_k: int  # evaluate(circuit) = ω^phase_k · input
    descent_steps: int
    initial_measure: int
    residual_key: tuple


def synthesize_info(
    u: RingUnitary,
    table: Optional[LookupTable] = None,
    *,
    negative_powers: bool = False,
    prefer_p: bool = False,
) -> SynthesisInfo:
    u.validate()
    if table is None:
        table = get_default_table()
    m = _denmat_from_unitary(u)
    s = _denmat_measure(m)
    s0 = s
    prefix: list[Gate] = []
    steps = 0
    t_gate = Gate.TDAG if negative_powers else Gate.T
    while s > 3:
        k, m = _descend_step(m, s, negative_powers)
        if k is None:
            raise InternalInvariantError(
                f"no power k in {{0,1,2,3}} lowers the measure at s={s}"
            )
        prefix.extend([t_gate] * k)
        prefix.append(Gate.H)
        s -= 1
        steps += 1
    key, q = _canonical_denmat(m)
    entry = table.lookup(key)
    if entry is None:
        raise TableMissError(f"residual unitary with measure {s} missing from table")
    circuit = normalize_ht(Circuit(prefix + list(entry.circuit.gates)), prefer_p=prefer_p)
    return SynthesisInfo(
        circuit=circuit,
        phase_k=(entry.phase - q) % 8,
        descent_steps=steps,
        initial_measure=s0,
        residual_key=key,
    )


def synthesize(
    u: RingUnitary,
    table: Optional[LookupTable] = None,
    *,
    negative_powers: bool = False,
    prefer_p: bool = False,
) -> Circuit:
    return synthesize_info(
        u, table, negative_powers=negative_powers, prefer_p=prefer_p
    ).circuit


def _phase_gadget(r: int, prefer_p: bool) -> tuple[Gate, ...]:
    """Gates evaluating exactly to ω^r·I: X·T^r·X·T^r with runs rewritten."""
    r &= 7
    if r == 0:
        return ()
    run = _run_gates(r, prefer_p)
    return (Gate.X,) + run + (Gate.X,) + run


def prepare_state(
    s: RingState,
    table: Optional[LookupTable] = None,
    *,
    negative_powers: bool = False,
    prefer_p: bool = False,
) -> Circuit:
    """A circuit sending |0⟩ to the state exactly, with no global-phase freedom.

    All eight column completions are tried for one whose synthesized circuit
    lands on the state with phase zero; otherwise an explicit ω^r·I gadget is
    appended.
    """
    infos = []
    for k in range(8):
        info = synthesize_info(
            complete_from_column(s, k), table,
            negative_powers=negative_powers, prefer_p=prefer_p,
        )
        if info.phase_k == 0:
            return info.circuit
        infos.append(info)
    info = infos[0]
    gadget = _phase_gadget((-info.phase_k) % 8, prefer_p)
    return Circuit(info.circuit.gates + gadget)


# ---------------------------------------------------------------------------
# Optimality certification and the brute-force oracle.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OptimalityCertificate:
    h_claimed: int
    t_claimed: int
    l: int
    j: int

    def to_json(self) -> dict:
        return {
            "h_claimed": self.h_claimed,
            "t_claimed": self.t_claimed,
            "l": self.l,
            "j": self.j,
        }


def certify_optimality(u: RingUnitary, c: Circuit) -> OptimalityCertificate:
    """Check the minimal-count identities for a synthesized circuit.

    The Hadamard count must equal measure − 1, and the T count must equal
    h + 1 − (l mod 2) − (j mod 2) for the (l, j) that raise the measure of
    H·T^l·U·T^j·H by exactly two.  The parity terms enter complemented: a
    power that raises the measure must merge with the boundary run of an
    H-optimal circuit into a run of odd T-exponent, so (l mod 2) is the
    complement of the leading run's T parity (and likewise for j), and the
    subcircuit bound t(HT^l·U·T^j·H) = h + 1 forces the count above.
    Exhaustive search over all short circuits confirms this version and
    refutes the uncomplemented one whenever the parity sum differs from 1.
    """
    s = u.sde_measure()
    if s < 4:
        raise CertificateError(f"certification requires sde measure >= 4, got {s}")
    counts = c.counts()
    h = s - 1
    if counts.n_H != h:
        raise CertificateError(f"Hadamard count {counts.n_H} differs from claimed {h}")
    m = _denmat_from_unitary(u)
    pairs = []
    for l in range(4):
        left = _denmat_left_htj(m, l)
        for j in range(4):
            v = _denmat_right_tjh(left, j)
            if _denmat_measure(v) == s + 2:
                pairs.append((l, j))
    if not pairs:
        raise CertificateError("no (l, j) raises the measure by exactly 2")
    parities = {(l & 1) + (j & 1) for l, j in pairs}
    if len(parities) != 1:
        raise CertificateError(f"inconsistent parity sums among valid (l, j): {sorted(pairs)}")
    l, j = pairs[0]
    t = h + 1 - (l & 1) - (j & 1)
    if counts.n_T != t:
        raise CertificateError(f"T count {counts.n_T} differs from claimed {t}")
    return OptimalityCertificate(h_claimed=h, t_claimed=t, l=l, j=j)


_ALL_GATES = (Gate.H, Gate.T, Gate.TDAG, Gate.P, Gate.PDAG, Gate.Z, Gate.X, Gate.Y)


def brute_force_min_counts(u: RingUnitary, depth: int) -> Optional[tuple[int, int]]:
    """Exact (min H, min T) over all library circuits of length ≤ depth, up to phase.

    Tracks the Pareto frontier of (H, T) pairs per phase class, so a class
    reached cheaply in one count and later cheaply in the other reports both
    minima.  Returns None if the unitary is unreachable within depth.
    """
    target, _ = u.canonical()
    best: dict[tuple, list[tuple[int, int]]] = {}
    start_key, _ = _canonical_denmat(_ID_DENMAT)
    best[start_key] = [(0, 0)]
    frontier: list[tuple[DenMat, int, int]] = [(_ID_DENMAT, 0, 0)]
    for _ in range(depth):
        next_frontier: list[tuple[DenMat, int, int]] = []
        for m, h, t in frontier:
            for g in _ALL_GATES:
                m2 = _denmat_apply_right(m, g)
                h2 = h + (g is Gate.H)
                t2 = t + (g is Gate.T or g is Gate.TDAG)
                key, _ = _canonical_denmat(m2)
                plist = best.setdefault(key, [])
                if any(ph <= h2 and pt <= t2 for ph, pt in plist):
                    continue
                plist[:] = [pair for pair in plist if not (h2 <= pair[0] and t2 <= pair[1])]
                plist.append((h2, t2))
                next_frontier.append((m2, h2, t2))
        frontier = next_frontier
    pareto = best.get(target)
    if pareto is None:
        return None
    return (min(h for h, _ in pareto), min(t for _, t in pareto))
