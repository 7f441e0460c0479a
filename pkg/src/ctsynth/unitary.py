"""Ring-valued qubit states and 2×2 unitaries with exact global-phase handling."""

from __future__ import annotations

from typing import Optional

from .ring import (
    RealZSqrt2,
    RingFormatError,
    RingScalar,
    ZOmega,
    gde_real,
    is_unit_modulus,
)

__all__ = [
    "StateError",
    "UnitarityError",
    "RingState",
    "RingUnitary",
    "complete_from_column",
    "u_mul",
    "u_dagger",
    "u_apply",
    "equal_up_to_phase",
    "sde_measure",
    "validate",
    "H",
    "T",
    "TDAG",
    "P",
    "PDAG",
    "Z",
    "X",
    "Y",
    "I2",
    "KET_ZERO",
]


class StateError(ValueError):
    """A 2-vector over the ring is not a valid unit state."""


class UnitarityError(ValueError):
    """A 2×2 matrix over the ring violates a unitarity constraint."""


class RingState:
    """Unit column vector (z, w) with entries in Z[1/√2, i]."""

    __slots__ = ("z", "w")

    def __init__(self, z: RingScalar, w: RingScalar) -> None:
        if z.abs_sq() + w.abs_sq() != RingScalar.ONE:
            raise StateError("column norm: |z|^2 + |w|^2 != 1")
        self.z = z
        self.w = w

    def __repr__(self) -> str:
        return f"RingState({self.z!r}, {self.w!r})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RingState):
            return self.z == other.z and self.w == other.w
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.z, self.w))

    def to_json(self) -> dict:
        return {"z": self.z.to_json(), "w": self.w.to_json()}

    @classmethod
    def from_json(cls, obj: object) -> RingState:
        if not isinstance(obj, dict) or set(obj) != {"z", "w"}:
            raise RingFormatError(f'expected {{"z": .., "w": ..}}, got {obj!r}')
        return cls(RingScalar.from_json(obj["z"]), RingScalar.from_json(obj["w"]))


class RingUnitary:
    """2×2 unitary with entries in Z[1/√2, i], stored row-major."""

    __slots__ = ("z00", "z01", "z10", "z11")

    def __init__(
        self, z00: RingScalar, z01: RingScalar, z10: RingScalar, z11: RingScalar
    ) -> None:
        self.z00 = z00
        self.z01 = z01
        self.z10 = z10
        self.z11 = z11

    @property
    def entries(self) -> tuple[RingScalar, RingScalar, RingScalar, RingScalar]:
        return (self.z00, self.z01, self.z10, self.z11)

    def __repr__(self) -> str:
        return f"RingUnitary({self.z00!r}, {self.z01!r}, {self.z10!r}, {self.z11!r})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RingUnitary):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.entries)

    def validate(self) -> int:
        """Check exact unitarity and return the determinant phase index k (det = ω^k)."""
        one = RingScalar.ONE
        if self.z00.abs_sq() + self.z10.abs_sq() != one:
            raise UnitarityError("column norm: first column is not a unit vector")
        if self.z01.abs_sq() + self.z11.abs_sq() != one:
            raise UnitarityError("column norm: second column is not a unit vector")
        inner = self.z00.conj() * self.z01 + self.z10.conj() * self.z11
        if not inner.is_zero():
            raise UnitarityError("orthogonality: columns are not orthogonal")
        det = self.z00 * self.z11 - self.z01 * self.z10
        k = is_unit_modulus(det)
        if k is None:
            raise UnitarityError("determinant: det is not a power of ω")
        return k

    def __matmul__(self, other: RingUnitary) -> RingUnitary:
        return RingUnitary(
            self.z00 * other.z00 + self.z01 * other.z10,
            self.z00 * other.z01 + self.z01 * other.z11,
            self.z10 * other.z00 + self.z11 * other.z10,
            self.z10 * other.z01 + self.z11 * other.z11,
        )

    def dagger(self) -> RingUnitary:
        return RingUnitary(
            self.z00.conj(), self.z10.conj(), self.z01.conj(), self.z11.conj()
        )

    def apply(self, s: RingState) -> RingState:
        return RingState(
            self.z00 * s.z + self.z01 * s.w,
            self.z10 * s.z + self.z11 * s.w,
        )

    def phase_mul(self, n: int) -> RingUnitary:
        """ω^n times this unitary."""
        return RingUnitary(
            self.z00.mul_omega_pow(n),
            self.z01.mul_omega_pow(n),
            self.z10.mul_omega_pow(n),
            self.z11.mul_omega_pow(n),
        )

    def first_column(self) -> RingState:
        return RingState(self.z00, self.z10)

    def is_monomial(self) -> bool:
        return (self.z01.is_zero() and self.z10.is_zero()) or (
            self.z00.is_zero() and self.z11.is_zero()
        )

    def sde_measure(self) -> int:
        """Common sde(|entry|²); zero by definition for the monomial unitaries."""
        if self.is_monomial():
            return 0
        s = self.z00.abs_sq().sde
        assert s is not None
        return s

    def equal_up_to_phase(self, other: RingUnitary) -> Optional[int]:
        """The k with self = ω^k·other, if any."""
        for k in range(8):
            if self == other.phase_mul(k):
                return k
        return None

    def canonical(self) -> tuple[tuple, int]:
        """Deterministic phase-class key, plus the phase q with self = ω^q·representative."""
        return _canonical_denmat(_denmat_from_unitary(self))

    def to_json(self) -> dict:
        return {
            "z00": self.z00.to_json(),
            "z01": self.z01.to_json(),
            "z10": self.z10.to_json(),
            "z11": self.z11.to_json(),
        }

    @classmethod
    def from_json(cls, obj: object) -> RingUnitary:
        names = ("z00", "z01", "z10", "z11")
        if not isinstance(obj, dict) or set(obj) != set(names):
            raise RingFormatError(f"expected a matrix object with keys {names}, got {obj!r}")
        u = cls(*(RingScalar.from_json(obj[n]) for n in names))
        u.validate()
        return u


def u_mul(a: RingUnitary, b: RingUnitary) -> RingUnitary:
    return a @ b


def u_dagger(a: RingUnitary) -> RingUnitary:
    return a.dagger()


def u_apply(a: RingUnitary, s: RingState) -> RingState:
    return a.apply(s)


def validate(u: RingUnitary) -> int:
    return u.validate()


def sde_measure(u: RingUnitary) -> int:
    return u.sde_measure()


def equal_up_to_phase(a: RingUnitary, b: RingUnitary) -> Optional[int]:
    return a.equal_up_to_phase(b)


def complete_from_column(s: RingState, k: int) -> RingUnitary:
    """The unitary with first column (z, w) and second column (−w*·ω^k, z*·ω^k)."""
    return RingUnitary(
        s.z,
        (-s.w.conj()).mul_omega_pow(k),
        s.w,
        s.z.conj().mul_omega_pow(k),
    )


def _scalar(x0: int = 0, x1: int = 0, x2: int = 0, x3: int = 0, k: int = 0) -> RingScalar:
    return RingScalar(ZOmega(x0, x1, x2, x3), k)


_ZERO = RingScalar.ZERO
_ONE = RingScalar.ONE
_MINUS_ONE = RingScalar.from_int(-1)
_IRT2 = RingScalar.INV_SQRT2
_OMEGA = _scalar(0, 1)
_I = _scalar(0, 0, 1)

I2 = RingUnitary(_ONE, _ZERO, _ZERO, _ONE)
H = RingUnitary(_IRT2, _IRT2, _IRT2, -_IRT2)
T = RingUnitary(_ONE, _ZERO, _ZERO, _OMEGA)
TDAG = RingUnitary(_ONE, _ZERO, _ZERO, _scalar(0, 0, 0, -1))
P = RingUnitary(_ONE, _ZERO, _ZERO, _I)
PDAG = RingUnitary(_ONE, _ZERO, _ZERO, _scalar(0, 0, -1))
Z = RingUnitary(_ONE, _ZERO, _ZERO, _MINUS_ONE)
X = RingUnitary(_ZERO, _ONE, _ONE, _ZERO)
Y = RingUnitary(_ZERO, _scalar(0, 0, -1), _I, _ZERO)

KET_ZERO = RingState(_ONE, _ZERO)


# ---------------------------------------------------------------------------
# Common-denominator matrix form used by the search and descent inner loops.
#
# A matrix is held as (n00, n01, n10, n11, K): four coordinate 4-tuples over
# a shared denominator (√2)^K, reduced so that not all four numerators are
# divisible by √2 (K = 0 floor).  For unitaries this form is unique.
# ---------------------------------------------------------------------------

DenMat = tuple[tuple[int, int, int, int], tuple[int, int, int, int],
               tuple[int, int, int, int], tuple[int, int, int, int], int]

_T_ZERO = (0, 0, 0, 0)


def _t_add(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def _t_sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])


def _t_neg(a):
    return (-a[0], -a[1], -a[2], -a[3])


def _t_rot(a, n):
    """Coordinates of ω^n times the element with coordinates a."""
    n &= 7
    if n >= 4:
        a = (-a[0], -a[1], -a[2], -a[3])
        n -= 4
    if n == 0:
        return a
    if n == 1:
        return (-a[3], a[0], a[1], a[2])
    if n == 2:
        return (-a[2], -a[3], a[0], a[1])
    return (-a[1], -a[2], -a[3], a[0])


def _t_mul_sqrt2(a):
    return (a[1] - a[3], a[0] + a[2], a[1] + a[3], a[2] - a[0])


def _t_sqrt2_divides(a):
    return (a[0] + a[2]) & 1 == 0 and (a[1] + a[3]) & 1 == 0


def _t_div_sqrt2(a):
    return ((a[1] - a[3]) >> 1, (a[0] + a[2]) >> 1, (a[1] + a[3]) >> 1, (a[2] - a[0]) >> 1)


def _t_norm_pq(a):
    """(P, Q) of the element with coordinates a."""
    return (
        a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3],
        a[0] * (a[1] - a[3]) + a[2] * (a[1] + a[3]),
    )


def _gde_real_pair(p: int, q: int) -> Optional[int]:
    return gde_real(RealZSqrt2(p, q)) if (p or q) else None


def _denmat_reduce(m: DenMat) -> DenMat:
    n00, n01, n10, n11, k = m
    while k > 0 and all(
        _t_sqrt2_divides(n) for n in (n00, n01, n10, n11)
    ):
        n00, n01, n10, n11 = (
            _t_div_sqrt2(n00),
            _t_div_sqrt2(n01),
            _t_div_sqrt2(n10),
            _t_div_sqrt2(n11),
        )
        k -= 1
    return (n00, n01, n10, n11, k)


def _denmat_from_unitary(u: RingUnitary) -> DenMat:
    ks = [e.k for e in u.entries if not e.is_zero()]
    K = max(ks) if ks else 0
    if K < 0:
        K = 0
    nums = []
    for e in u.entries:
        if e.is_zero():
            nums.append(_T_ZERO)
        else:
            c = e.num.coords
            d = K - e.k
            if d >= 2:
                f = 1 << (d >> 1)
                c = (c[0] * f, c[1] * f, c[2] * f, c[3] * f)
            if d & 1:
                c = _t_mul_sqrt2(c)
            nums.append(c)
    return _denmat_reduce((nums[0], nums[1], nums[2], nums[3], K))


def _unitary_from_denmat(m: DenMat) -> RingUnitary:
    n00, n01, n10, n11, k = m
    return RingUnitary(
        RingScalar(ZOmega(*n00), k),
        RingScalar(ZOmega(*n01), k),
        RingScalar(ZOmega(*n10), k),
        RingScalar(ZOmega(*n11), k),
    )


def _denmat_is_monomial(m: DenMat) -> bool:
    n00, n01, n10, n11, _ = m
    return (n01 == _T_ZERO and n10 == _T_ZERO) or (n00 == _T_ZERO and n11 == _T_ZERO)


def _denmat_measure(m: DenMat) -> int:
    """sde(|z00|²) of the reduced matrix, with the monomial convention of 0."""
    if _denmat_is_monomial(m):
        return 0
    p, q = _t_norm_pq(m[0])
    g = _gde_real_pair(p, q)
    assert g is not None
    return 2 * m[4] - g


def _canonical_denmat(m: DenMat) -> tuple[tuple, int]:
    """Lexicographically least coordinate tuple over the 8 phase rotations.

    Returns (key, q) where the input equals ω^q times the representative
    encoded by the key.
    """
    n00, n01, n10, n11, k = m
    best = None
    best_j = 0
    for j in range(8):
        cand = _t_rot(n00, j) + _t_rot(n01, j) + _t_rot(n10, j) + _t_rot(n11, j)
        if best is None or cand < best:
            best = cand
            best_j = j
    return best + (k,), (-best_j) % 8


def _denmat_from_key(key: tuple) -> DenMat:
    return (key[0:4], key[4:8], key[8:12], key[12:16], key[16])


def canonical_key(u: RingUnitary) -> tuple:
    return u.canonical()[0]
