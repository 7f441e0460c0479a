"""Exact arithmetic in Z[ω] and Z[1/√2, i], where ω = exp(iπ/4).

All coordinates are plain Python integers, so every operation is exact at
any size.  The √2-adic valuations defined here (``gde`` on Z[ω], ``sde`` on
ring scalars) drive the synthesis and verification algorithms in the rest
of the package.
"""

from __future__ import annotations

from typing import Optional

__all__ = [
    "INFINITE",
    "GdeValue",
    "DivisibilityError",
    "RingFormatError",
    "ZOmega",
    "RealZSqrt2",
    "RingScalar",
    "zw_add",
    "zw_mul",
    "zw_conj",
    "zw_mul_omega",
    "mul_sqrt2",
    "div_sqrt2",
    "gde",
    "gde_base2",
    "gde_omega",
    "gde_real",
    "norm_sq",
    "form_P",
    "form_Q",
    "form_F",
    "sde",
    "scalar_add",
    "scalar_mul",
    "scalar_conj",
    "scalar_abs_sq",
    "is_unit_modulus",
]

# Valuation of zero (and of anything with respect to base omega).
INFINITE = None

GdeValue = Optional[int]


class DivisibilityError(ArithmeticError):
    """√2 does not divide the given element of Z[ω]."""


class RingFormatError(ValueError):
    """A serialized ring value is malformed or violates a representation invariant."""


def gde_base2(n: int) -> GdeValue:
    """Largest e with 2^e | n; INFINITE for n = 0."""
    if n == 0:
        return INFINITE
    return (n & -n).bit_length() - 1


class ZOmega:
    """Cyclotomic integer x0 + x1·ω + x2·ω² + x3·ω³, with ω⁴ = −1."""

    __slots__ = ("x0", "x1", "x2", "x3")

    def __init__(self, x0: int, x1: int = 0, x2: int = 0, x3: int = 0) -> None:
        self.x0 = x0
        self.x1 = x1
        self.x2 = x2
        self.x3 = x3

    @property
    def coords(self) -> tuple[int, int, int, int]:
        return (self.x0, self.x1, self.x2, self.x3)

    def __repr__(self) -> str:
        return f"ZOmega({self.x0}, {self.x1}, {self.x2}, {self.x3})"

    def __str__(self) -> str:
        return f"{self.x0}{self.x1:+}ω{self.x2:+}ω²{self.x3:+}ω³"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.coords == (other, 0, 0, 0)
        if isinstance(other, ZOmega):
            return self.coords == other.coords
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coords)

    def __add__(self, other: int | ZOmega) -> ZOmega:
        if isinstance(other, int):
            return ZOmega(self.x0 + other, self.x1, self.x2, self.x3)
        if isinstance(other, ZOmega):
            return ZOmega(
                self.x0 + other.x0,
                self.x1 + other.x1,
                self.x2 + other.x2,
                self.x3 + other.x3,
            )
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: int | ZOmega) -> ZOmega:
        return self + (-other)

    def __rsub__(self, other: int | ZOmega) -> ZOmega:
        return (-self) + other

    def __neg__(self) -> ZOmega:
        return ZOmega(-self.x0, -self.x1, -self.x2, -self.x3)

    def __mul__(self, other: int | ZOmega) -> ZOmega:
        if isinstance(other, int):
            return ZOmega(self.x0 * other, self.x1 * other, self.x2 * other, self.x3 * other)
        if isinstance(other, ZOmega):
            a0, a1, a2, a3 = self.coords
            b0, b1, b2, b3 = other.coords
            return ZOmega(
                a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
                a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
                a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
                a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
            )
        return NotImplemented

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.x0 == 0 and self.x1 == 0 and self.x2 == 0 and self.x3 == 0

    def conj(self) -> ZOmega:
        return ZOmega(self.x0, -self.x3, -self.x2, -self.x1)

    def mul_omega(self) -> ZOmega:
        return ZOmega(-self.x3, self.x0, self.x1, self.x2)

    def mul_omega_pow(self, n: int) -> ZOmega:
        n &= 7
        c = self.coords
        if n >= 4:
            c = (-c[0], -c[1], -c[2], -c[3])
            n -= 4
        if n == 0:
            return ZOmega(*c)
        if n == 1:
            return ZOmega(-c[3], c[0], c[1], c[2])
        if n == 2:
            return ZOmega(-c[2], -c[3], c[0], c[1])
        return ZOmega(-c[1], -c[2], -c[3], c[0])

    def mul_sqrt2(self) -> ZOmega:
        return ZOmega(
            self.x1 - self.x3,
            self.x0 + self.x2,
            self.x1 + self.x3,
            self.x2 - self.x0,
        )

    def sqrt2_divides(self) -> bool:
        return (self.x0 + self.x2) & 1 == 0 and (self.x1 + self.x3) & 1 == 0

    def div_sqrt2(self) -> ZOmega:
        if not self.sqrt2_divides():
            raise DivisibilityError(f"sqrt(2) does not divide {self!r}")
        return ZOmega(
            (self.x1 - self.x3) >> 1,
            (self.x0 + self.x2) >> 1,
            (self.x1 + self.x3) >> 1,
            (self.x2 - self.x0) >> 1,
        )

    @classmethod
    def from_int(cls, n: int) -> ZOmega:
        return cls(n, 0, 0, 0)

    @classmethod
    def omega_pow(cls, n: int) -> ZOmega:
        return _OMEGA_POWERS[n & 7]

    def to_text(self) -> str:
        return f"{self.x0},{self.x1},{self.x2},{self.x3}"

    @classmethod
    def from_text(cls, text: str) -> ZOmega:
        parts = text.split(",")
        if len(parts) != 4:
            raise RingFormatError(f"expected 4 comma-separated integers, got {text!r}")
        try:
            return cls(*(int(p) for p in parts))
        except ValueError as exc:
            raise RingFormatError(f"non-integer coordinate in {text!r}") from exc


_OMEGA_POWERS = (
    ZOmega(1, 0, 0, 0),
    ZOmega(0, 1, 0, 0),
    ZOmega(0, 0, 1, 0),
    ZOmega(0, 0, 0, 1),
    ZOmega(-1, 0, 0, 0),
    ZOmega(0, -1, 0, 0),
    ZOmega(0, 0, -1, 0),
    ZOmega(0, 0, 0, -1),
)

_ZW_ZERO = ZOmega(0, 0, 0, 0)
_ZW_ONE = ZOmega(1, 0, 0, 0)


class RealZSqrt2:
    """Real element a + √2·b of Z[ω], kept as the integer pair (a, b)."""

    __slots__ = ("a", "b")

    def __init__(self, a: int, b: int = 0) -> None:
        self.a = a
        self.b = b

    def __repr__(self) -> str:
        return f"RealZSqrt2({self.a}, {self.b})"

    def __str__(self) -> str:
        return f"{self.a}{self.b:+}√2"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.a == other and self.b == 0
        if isinstance(other, RealZSqrt2):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __add__(self, other: int | RealZSqrt2) -> RealZSqrt2:
        if isinstance(other, int):
            return RealZSqrt2(self.a + other, self.b)
        if isinstance(other, RealZSqrt2):
            return RealZSqrt2(self.a + other.a, self.b + other.b)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: int | RealZSqrt2) -> RealZSqrt2:
        return self + (-other)

    def __neg__(self) -> RealZSqrt2:
        return RealZSqrt2(-self.a, -self.b)

    def __mul__(self, other: int | RealZSqrt2) -> RealZSqrt2:
        if isinstance(other, int):
            return RealZSqrt2(self.a * other, self.b * other)
        if isinstance(other, RealZSqrt2):
            return RealZSqrt2(
                self.a * other.a + 2 * self.b * other.b,
                self.a * other.b + self.b * other.a,
            )
        return NotImplemented

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def embed(self) -> ZOmega:
        return ZOmega(self.a, self.b, 0, -self.b)

    @classmethod
    def from_zomega(cls, x: ZOmega) -> RealZSqrt2:
        if x.x2 != 0 or x.x1 != -x.x3:
            raise RingFormatError(f"{x!r} is not a real element of Z[ω]")
        return cls(x.x0, x.x1)


def zw_add(a: ZOmega, b: ZOmega) -> ZOmega:
    return a + b


def zw_mul(a: ZOmega, b: ZOmega) -> ZOmega:
    return a * b


def zw_conj(a: ZOmega) -> ZOmega:
    return a.conj()


def zw_mul_omega(a: ZOmega) -> ZOmega:
    return a.mul_omega()


def mul_sqrt2(x: ZOmega) -> ZOmega:
    return x.mul_sqrt2()


def div_sqrt2(x: ZOmega) -> ZOmega:
    return x.div_sqrt2()


def gde(x: ZOmega) -> GdeValue:
    """Greatest e with (√2)^e | x, by repeated exact division; INFINITE iff x = 0."""
    if x.is_zero():
        return INFINITE
    e = 0
    while x.sqrt2_divides():
        x = x.div_sqrt2()
        e += 1
    return e


def gde_omega(x: ZOmega) -> GdeValue:
    """Valuation of base ω: every power of ω is a unit, so this is always INFINITE."""
    return INFINITE


def form_P(x: ZOmega) -> int:
    return x.x0 * x.x0 + x.x1 * x.x1 + x.x2 * x.x2 + x.x3 * x.x3


def form_Q(x: ZOmega) -> int:
    return x.x0 * (x.x1 - x.x3) + x.x2 * (x.x1 + x.x3)


def form_F(x: ZOmega, y: ZOmega) -> int:
    return x.x0 * y.x0 + x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3


def norm_sq(x: ZOmega) -> RealZSqrt2:
    """|x|² as the real element P(x) + √2·Q(x); equals x·conj(x) under embedding."""
    return RealZSqrt2(form_P(x), form_Q(x))


def gde_real(r: RealZSqrt2) -> GdeValue:
    """√2-valuation of a + √2·b, split on whether it is even or odd."""
    va = gde_base2(r.a)
    vb = gde_base2(r.b)
    if va is INFINITE:
        if vb is INFINITE:
            return INFINITE
        return 2 * vb + 1
    if vb is INFINITE or vb >= va:
        return 2 * va
    return 2 * vb + 1


class RingScalar:
    """Element num/(√2)^k of Z[1/√2, i], kept canonical: gde(num) = 0 unless num = 0."""

    __slots__ = ("num", "k")

    def __init__(self, num: ZOmega, k: int = 0) -> None:
        if num.is_zero():
            num, k = _ZW_ZERO, 0
        else:
            while num.sqrt2_divides():
                num = num.div_sqrt2()
                k -= 1
        self.num = num
        self.k = k

    def __repr__(self) -> str:
        return f"RingScalar({self.num!r}, k={self.k})"

    def __str__(self) -> str:
        return f"({self.num})/√2^{self.k}"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == RingScalar.from_int(other)
        if isinstance(other, RingScalar):
            return self.k == other.k and self.num == other.num
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num.coords, self.k))

    def __add__(self, other: RingScalar) -> RingScalar:
        if not isinstance(other, RingScalar):
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.k >= other.k:
            return RingScalar(self.num + _scale_up(other.num, self.k - other.k), self.k)
        return RingScalar(_scale_up(self.num, other.k - self.k) + other.num, other.k)

    def __sub__(self, other: RingScalar) -> RingScalar:
        return self + (-other)

    def __neg__(self) -> RingScalar:
        out = RingScalar.__new__(RingScalar)
        out.num = -self.num
        out.k = self.k
        return out

    def __mul__(self, other: RingScalar) -> RingScalar:
        if not isinstance(other, RingScalar):
            return NotImplemented
        return RingScalar(self.num * other.num, self.k + other.k)

    def conj(self) -> RingScalar:
        out = RingScalar.__new__(RingScalar)
        out.num = self.num.conj()
        out.k = self.k
        return out

    def abs_sq(self) -> RingScalar:
        return self * self.conj()

    def mul_omega_pow(self, n: int) -> RingScalar:
        out = RingScalar.__new__(RingScalar)
        out.num = self.num.mul_omega_pow(n)
        out.k = self.k
        return out

    def times_sqrt2_pow(self, e: int) -> RingScalar:
        """The value scaled by (√2)^e; canonical form is preserved."""
        if self.num.is_zero():
            return self
        out = RingScalar.__new__(RingScalar)
        out.num = self.num
        out.k = self.k - e
        return out

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_real(self) -> bool:
        return self.num.x2 == 0 and self.num.x1 == -self.num.x3

    @property
    def sde(self) -> GdeValue:
        """Smallest e with value·(√2)^e in Z[ω]; INFINITE sentinel (for −∞) at zero."""
        if self.num.is_zero():
            return INFINITE
        return self.k

    @classmethod
    def from_int(cls, n: int) -> RingScalar:
        return cls(ZOmega(n), 0)

    @classmethod
    def from_zomega(cls, num: ZOmega, k: int = 0) -> RingScalar:
        return cls(num, k)

    def to_json(self) -> dict:
        return {"c": list(self.num.coords), "k": self.k}

    @classmethod
    def from_json(cls, obj: object) -> RingScalar:
        if not isinstance(obj, dict) or set(obj) != {"c", "k"}:
            raise RingFormatError(f'expected {{"c": [..], "k": ..}}, got {obj!r}')
        coords = obj["c"]
        if (
            not isinstance(coords, list)
            or len(coords) != 4
            or not all(isinstance(c, int) and not isinstance(c, bool) for c in coords)
        ):
            raise RingFormatError(f'field "c" must be a list of 4 integers, got {coords!r}')
        if not isinstance(obj["k"], int) or isinstance(obj["k"], bool):
            raise RingFormatError(f'field "k" must be an integer, got {obj["k"]!r}')
        num = ZOmega(*coords)
        k = obj["k"]
        if num.is_zero():
            if k != 0:
                raise RingFormatError("non-canonical scalar: zero must carry k = 0")
        elif num.sqrt2_divides():
            raise RingFormatError("non-canonical scalar: numerator is divisible by sqrt(2)")
        return cls(num, k)


def _scale_up(num: ZOmega, e: int) -> ZOmega:
    """num·(√2)^e for e ≥ 0."""
    if e >= 2:
        num = num * (1 << (e >> 1))
    if e & 1:
        num = num.mul_sqrt2()
    return num


RingScalar.ZERO = RingScalar(_ZW_ZERO, 0)
RingScalar.ONE = RingScalar(_ZW_ONE, 0)
RingScalar.INV_SQRT2 = RingScalar(_ZW_ONE, 1)


def sde(z: RingScalar) -> GdeValue:
    return z.sde


def scalar_add(a: RingScalar, b: RingScalar) -> RingScalar:
    return a + b


def scalar_mul(a: RingScalar, b: RingScalar) -> RingScalar:
    return a * b


def scalar_conj(a: RingScalar) -> RingScalar:
    return a.conj()


def scalar_abs_sq(a: RingScalar) -> RingScalar:
    return a.abs_sq()


def is_unit_modulus(z: RingScalar) -> Optional[int]:
    """The exponent n with z = ω^n, if z is one of the eight units of modulus 1."""
    if z.k != 0:
        return None
    for n, w in enumerate(_OMEGA_POWERS):
        if z.num == w:
            return n
    return None
