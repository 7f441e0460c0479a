from __future__ import annotations

import random

import pytest

from ctsynth.ring import INFINITE, RealZSqrt2, RingFormatError, RingScalar, ZOmega, gde_real, norm_sq
from ctsynth.unitary import (
    H,
    I2,
    KET_ZERO,
    P,
    PDAG,
    RingState,
    RingUnitary,
    StateError,
    T,
    TDAG,
    UnitarityError,
    X,
    Y,
    Z,
    complete_from_column,
    equal_up_to_phase,
    sde_measure,
    u_apply,
    u_dagger,
    u_mul,
    validate,
)
from conftest import random_unitary, random_word
from ctsynth.synthesis import Circuit

ALL_GATES = {"H": H, "T": T, "TDAG": TDAG, "P": P, "PDAG": PDAG, "Z": Z, "X": X, "Y": Y}


def ht_power(n: int) -> RingUnitary:
    return Circuit.from_text("HT" * n).evaluate()


def test_gate_constants_are_unitary():
    for u in ALL_GATES.values():
        validate(u)


def test_det_phase_indices():
    assert validate(H) == 4
    assert validate(T) == 1
    assert validate(I2) == 0
    assert validate(P) == 2


def test_h_squared_is_identity():
    assert u_mul(H, H) == I2


def test_t_squared_is_p():
    assert u_mul(T, T) == P


def test_daggers_invert():
    assert u_mul(T, TDAG) == I2
    assert u_mul(P, PDAG) == I2
    assert u_dagger(H) == H
    for u in ALL_GATES.values():
        assert u_mul(u, u_dagger(u)) == I2


def test_apply_ht_to_ket_zero():
    s = u_apply(u_mul(H, T), KET_ZERO)
    irt2 = RingScalar.INV_SQRT2
    assert s == RingState(irt2, irt2)


def test_validate_rejects_spec_counterexample():
    one, zero = RingScalar.ONE, RingScalar.ZERO
    bad = RingUnitary(one, one, zero, one)
    with pytest.raises(UnitarityError):
        validate(bad)


def test_validate_rejects_non_orthogonal_columns():
    one, irt2 = RingScalar.ONE, RingScalar.INV_SQRT2
    bad = RingUnitary(one, irt2, RingScalar.ZERO, irt2)
    with pytest.raises(UnitarityError, match="orthogonal"):
        validate(bad)


def test_validate_rejects_non_unit_column():
    one, zero = RingScalar.ONE, RingScalar.ZERO
    bad = RingUnitary(one, zero, one, zero)
    with pytest.raises(UnitarityError, match="column norm"):
        validate(bad)


def test_validate_ht_fourth_power():
    assert validate(ht_power(4)) == 4  # det (HT)^4 = (−ω)^4 = ω^4


def test_det_phase_additive_under_product():
    rng = random.Random(11)
    gates = list(ALL_GATES.values())
    for _ in range(200):
        a = random_unitary(rng, 12)
        b = rng.choice(gates)
        assert validate(u_mul(a, b)) == (validate(a) + validate(b)) % 8


def test_state_rejects_non_unit_vector():
    with pytest.raises(StateError, match="norm"):
        RingState(RingScalar.ONE, RingScalar.ONE)


# --- sde measure -----------------------------------------------------------------


def test_sde_measure_monomials_are_zero():
    for a in range(8):
        for b in range(8):
            wa = RingScalar(ZOmega.omega_pow(a), 0)
            wb = RingScalar(ZOmega.omega_pow(b), 0)
            zero = RingScalar.ZERO
            assert sde_measure(RingUnitary(wa, zero, zero, wb)) == 0
            assert sde_measure(RingUnitary(zero, wa, wb, zero)) == 0


def test_sde_measure_follows_table_denominators():
    # |z_n|^2 has denominator (√2)^(n+1) for the (HT)^n sequence
    for n in range(1, 7):
        assert sde_measure(ht_power(n)) == n + 1


def test_sde_measure_of_h():
    assert sde_measure(H) == 2  # |1/√2|² = 1/2 = 1/(√2)²


def test_sde_measure_same_for_all_entries():
    rng = random.Random(17)
    for _ in range(200):
        u = random_unitary(rng, 64)
        if u.is_monomial():
            continue
        sdes = {e.abs_sq().sde for e in u.entries}
        assert len(sdes) == 1


# --- phase classes ---------------------------------------------------------------


def test_equal_up_to_phase_examples():
    u = ht_power(2)
    assert equal_up_to_phase(u, u) == 0
    assert equal_up_to_phase(u.phase_mul(3), u) == 3
    assert equal_up_to_phase(H, T) is None


def test_canonical_key_is_phase_invariant():
    rng = random.Random(23)
    for _ in range(100):
        u = random_unitary(rng, 32)
        key, q = u.canonical()
        for j in range(8):
            key2, q2 = u.phase_mul(j).canonical()
            assert key2 == key
            assert (q2 - q) % 8 == j


def test_complete_from_column_identity():
    assert complete_from_column(KET_ZERO, 0) == I2


def test_complete_from_column_h():
    irt2 = RingScalar.INV_SQRT2
    assert complete_from_column(RingState(irt2, irt2), 4) == H


def test_complete_from_column_recovers_unitary_at_unique_k():
    rng = random.Random(31)
    for _ in range(50):
        u = random_unitary(rng, 48)
        col = u.first_column()
        hits = [k for k in range(8) if complete_from_column(col, k) == u]
        assert len(hits) == 1
        assert hits[0] == validate(u)
        for k in range(8):
            validate(complete_from_column(col, k))


# --- lemma properties on circuit-generated states ---------------------------------


def state_numerators(s: RingState) -> tuple[ZOmega, ZOmega, int]:
    m = s.z.sde
    assert m == s.w.sde or (s.z.is_zero() or s.w.is_zero())
    m = max(v for v in (s.z.sde, s.w.sde) if v is not INFINITE)
    x = s.z.times_sqrt2_pow(m)
    y = s.w.times_sqrt2_pow(m)
    assert x.k <= 0 and y.k <= 0
    return _as_zomega(x), _as_zomega(y), m


def _as_zomega(v: RingScalar) -> ZOmega:
    out = v.num
    for _ in range(-v.k):
        out = out.mul_sqrt2()
    return out


def random_states(seed: int, count: int, length: int):
    rng = random.Random(seed)
    for _ in range(count):
        u = random_unitary(rng, length)
        yield u.first_column()


def test_state_component_sdes_agree():
    for s in random_states(41, 400, 48):
        if (s.z.sde or 0) >= 1 or (s.w.sde or 0) >= 1:
            assert s.z.sde == s.w.sde
            x, y, _ = state_numerators(s)
            gx = gde_real(norm_sq(x))
            gy = gde_real(norm_sq(y))
            assert gx == gy
            assert gx <= 1


def test_descent_window_for_all_powers():
    # applying H·T^k moves the measure by at most one in either direction
    irt2 = RingScalar.INV_SQRT2
    for s in random_states(43, 300, 64):
        sz = s.z.abs_sq().sde
        if sz is INFINITE or sz < 4:
            continue
        for k in range(8):
            z2 = (s.z + s.w.mul_omega_pow(k)) * irt2
            delta = z2.abs_sq().sde - sz
            assert -1 <= delta <= 1


def test_every_step_direction_is_achievable():
    # each target change in {−1, 0, +1} is hit by some k in {0,1,2,3}
    irt2 = RingScalar.INV_SQRT2
    checked = 0
    for s in random_states(47, 11_000, 192):
        sz = s.z.abs_sq().sde
        if sz is INFINITE or sz < 4:
            continue
        deltas = set()
        for k in range(4):
            z2 = (s.z + s.w.mul_omega_pow(k)) * irt2
            deltas.add(z2.abs_sq().sde - sz)
        assert deltas == {-1, 0, 1}
        checked += 1
    assert checked >= 10_000


def test_sum_norm_valuation_bound():
    for s in random_states(53, 400, 48):
        x, y, m = state_numerators(s)
        if x.is_zero() or y.is_zero():
            continue
        gx = gde_real(norm_sq(x))
        gy = gde_real(norm_sq(y))
        gs = gde_real(norm_sq(x + y))
        bound = min(2 * m, 1 + (gx + gy) // 2)
        assert gs is INFINITE or gs >= bound


# --- serialization ---------------------------------------------------------------


def test_matrix_json_round_trip():
    rng = random.Random(61)
    for _ in range(20):
        u = random_unitary(rng, 32)
        assert RingUnitary.from_json(u.to_json()) == u


def test_matrix_json_rejects_bad_shapes():
    with pytest.raises(RingFormatError, match="matrix"):
        RingUnitary.from_json({"z00": {"c": [1, 0, 0, 0], "k": 0}})


def test_matrix_json_rejects_non_unitary():
    one = {"c": [1, 0, 0, 0], "k": 0}
    zero = {"c": [0, 0, 0, 0], "k": 0}
    irt2 = {"c": [1, 0, 0, 0], "k": 1}
    with pytest.raises(UnitarityError, match="column norm"):
        RingUnitary.from_json({"z00": one, "z01": one, "z10": zero, "z11": one})
    with pytest.raises(UnitarityError, match="orthogonal"):
        RingUnitary.from_json({"z00": one, "z01": irt2, "z10": zero, "z11": irt2})


def test_matrix_json_rejects_non_canonical_entry():
    two = {"c": [2, 0, 0, 0], "k": 2}
    zero = {"c": [0, 0, 0, 0], "k": 0}
    with pytest.raises(RingFormatError, match="non-canonical"):
        RingUnitary.from_json({"z00": two, "z01": zero, "z10": zero, "z11": two})
