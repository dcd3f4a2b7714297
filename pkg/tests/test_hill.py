"""Determinant, discriminant and derivative-identity tests."""

import cmath
import math

import numpy as np
import pytest

from eulerhill import (
    BranchCutError,
    DiscriminantConfig,
    PoleProximityError,
    Side,
    discriminant,
    discriminant_slope_at_zero,
    fredholm_derivative_check,
    hill_determinant,
    hill_matrix,
    s_at_origin,
    s_of_c,
)

N16 = DiscriminantConfig(half_width=16)


def test_hill_matrix_diagonal_at_origin():
    sp = s_at_origin(Side.UPPER)
    hm = hill_matrix(sp, 0.3 + 0.1j, N16)
    B = hm.array
    off = B - np.diag(np.diag(B))
    assert np.max(np.abs(off)) == 0.0
    nn = np.arange(-16, 17)
    assert np.allclose(np.diag(B), (0.3 + 0.1j) - nn.astype(float) ** 2)


def test_hill_matrix_three_by_three():
    sp = s_of_c(0.3 + 0.4j)
    lam = 0.7 - 0.2j
    B = hill_matrix(sp, lam, DiscriminantConfig(half_width=1)).array
    s, k = sp.s, sp.kappa
    expected = np.array(
        [
            [lam - 1.0, -1j * k * s, -k * s * s],
            [1j * k * s, lam, -1j * k * s],
            [-k * s * s, 1j * k * s, lam - 1.0],
        ]
    )
    assert np.max(np.abs(B - expected)) < 1e-15


def test_hill_matrix_toeplitz_off_diagonal():
    sp = s_of_c(0.2j)
    lam = 0.4
    B = hill_matrix(sp, lam, DiscriminantConfig(half_width=6)).array
    nn = np.arange(-6, 7)
    off = B - np.diag(lam - nn.astype(float) ** 2)
    for i in range(12):
        for j in range(12):
            assert abs(off[i, j] - off[i + 1, j + 1]) < 1e-15


def test_hill_determinant_is_one_at_origin():
    sp = s_at_origin(Side.LOWER)
    for lam in (0.3, 2.5 + 0.7j, -4.2):
        assert abs(hill_determinant(sp, lam, N16) - 1.0) < 1e-12


def test_hill_determinant_vanishes_at_g0():
    for c in (2.0, 0.3 + 0.4j, 0.5j):
        sp = s_of_c(c)
        assert abs(hill_determinant(sp, sp.g0, N16)) < 1e-8


def test_hill_determinant_pole_guard():
    sp = s_of_c(2.0)
    with pytest.raises(PoleProximityError):
        hill_determinant(sp, 1.0 + 1e-12, N16)
    with pytest.raises(PoleProximityError):
        hill_determinant(sp, 1e-10j, N16)


def test_discriminant_closed_form_at_origin():
    sp = s_at_origin(Side.UPPER)
    for d in np.linspace(0.0, 1.0, 41):
        ref = 2.0 * math.cos(2.0 * math.pi * math.sqrt(1.0 - d * d))
        assert abs(discriminant(sp, d * d, N16) - ref) < 1e-12


def test_discriminant_is_two_at_mu_zero():
    for c in (2.0, -3.5, 0.2j, 0.1 + 0.2j, 0.5 + 0.7j):
        assert abs(discriminant(s_of_c(c), 0.0, N16) - 2.0) < 1e-12


def test_discriminant_exceeds_two_for_real_c():
    sp = s_of_c(2.0)
    for mu in (0.5, 1.0, 2.0):
        val = discriminant(sp, mu, N16)
        assert abs(val.imag) < 1e-10
        assert val.real > 2.0


def test_three_by_three_closed_form():
    """N=1 determinant equals the factored rational function of (kappa, d^2)."""
    rng = np.random.default_rng(0)
    cfg = DiscriminantConfig(half_width=1)
    checked = 0
    while checked < 50:
        s = complex(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9))
        if not 0.05 < abs(s) < 0.92:
            continue
        kappa = -(1.0 + s * s) / (1.0 - s * s)
        c = (s + 1.0 / s) / 2.0
        sp = s_of_c(c)
        if abs(sp.s - s) > 1e-12:  # rounding put c on the other branch; skip
            continue
        d2 = rng.uniform(0.05, 1.3)
        lam = 1.0 + kappa - d2
        if min(abs(lam), abs(lam - 1.0)) < 1e-3:
            continue
        D = hill_determinant(sp, lam, cfg)
        expected = (
            d2 * ((2.0 + d2) * kappa - d2) * (3.0 * kappa**2 - d2 * kappa - 1.0 + d2)
        ) / ((1.0 + kappa - d2) * (d2 - kappa) ** 2 * (1.0 - kappa) ** 2)
        assert abs(D - expected) <= 1e-12 * max(1.0, abs(expected))
        checked += 1


def test_three_by_three_endpoint_roots():
    # the last factor of the closed form vanishes at (d, kappa) = (1, 0)
    # and (0, -1/sqrt(3))
    f = lambda d2, kappa: 3.0 * kappa**2 - d2 * kappa - 1.0 + d2
    assert abs(f(1.0, 0.0)) < 1e-15
    assert abs(f(0.0, -1.0 / math.sqrt(3.0))) < 1e-15
    # and those parameters correspond to c = 0 and c = i/sqrt(2)
    assert s_at_origin(Side.UPPER).kappa == 0
    assert abs(s_of_c(1j / math.sqrt(2.0)).kappa + 1.0 / math.sqrt(3.0)) < 1e-14


def test_pole_freeness_at_integer_squares():
    c = 0.3 + 0.4j
    sp = s_of_c(c)
    for n2 in (0, 1, 4, 9):
        mu0 = sp.g0 - n2  # Lambda = n2 exactly
        v0 = discriminant(sp, mu0, N16)
        v1 = discriminant(sp, mu0 + 1e-9, N16)
        assert np.isfinite(v0.real) and np.isfinite(v0.imag)
        assert abs(v0 - v1) < 1e-6  # limit from nearby mu


def test_realness_imaginary_c():
    for beta in (0.2, 0.5, 0.9):
        sp = s_of_c(1j * beta)
        for mu in (0.04, 0.3, 0.8, 1.4):
            assert abs(discriminant(sp, mu, N16).imag) < 1e-10


def test_realness_real_c():
    for c in (1.5, 3.0, -2.2):
        sp = s_of_c(c)
        for mu in (0.1, 0.6, 1.1):
            assert abs(discriminant(sp, mu, N16).imag) < 1e-10


def test_truncation_stability():
    """Half-width stability on the standard grid.

    The corrected evaluation is stable to ~1e-9 from N = 32 on; at the
    default N = 16 the worst drift (largest |Delta|, real c) is below 1e-6.
    """
    grid = [(c, mu) for c in (0.2j, 0.5j, 0.1 + 0.2j, 2.0)
            for mu in (0.0, 0.5, 1.0, 1.5)]
    for c, mu in grid:
        sp = s_of_c(c)
        d32 = abs(
            discriminant(sp, mu, DiscriminantConfig(half_width=32))
            - discriminant(sp, mu, DiscriminantConfig(half_width=37))
        )
        assert d32 <= 1e-9, (c, mu, d32)
        d16 = abs(
            discriminant(sp, mu, N16)
            - discriminant(sp, mu, DiscriminantConfig(half_width=21))
        )
        assert d16 <= 1e-6, (c, mu, d16)


def test_slope_closed_form_values():
    assert abs(discriminant_slope_at_zero(2.0) - 12.0 * math.pi**2 / math.sqrt(3.0)) < 1e-12
    assert abs(discriminant_slope_at_zero(1j / math.sqrt(2.0))) < 1e-12
    for beta in (0.1, 0.3, 0.6):
        val = discriminant_slope_at_zero(1j * beta)
        assert abs(val.imag) < 1e-12
        assert val.real < 0.0
    for beta in (0.8, 1.5):
        assert discriminant_slope_at_zero(1j * beta).real > 0.0
    with pytest.raises(BranchCutError):
        discriminant_slope_at_zero(0.3)


def test_slope_matches_finite_differences():
    h = 1e-5
    for c in (2.0, 3j, 0.5 + 0.7j):
        sp = s_of_c(c)
        fd = (discriminant(sp, h, N16) - discriminant(sp, -h, N16)) / (2.0 * h)
        cl = discriminant_slope_at_zero(c)
        assert abs(fd - cl) <= 1e-5 * abs(cl), (c, fd, cl)


def test_fredholm_check_at_origin():
    sp = s_at_origin(Side.UPPER)
    for direction in ("mu", "c"):
        lhs, rhs = fredholm_derivative_check(sp, 0.37, N16, direction=direction)
        assert abs(rhs) < 1e-10
        assert abs(lhs) < 1e-4


def test_fredholm_check_generic_point():
    sp = s_of_c(0.1 + 0.2j)
    lam = 0.3
    for direction in ("mu", "c"):
        lhs, rhs = fredholm_derivative_check(sp, lam, N16, direction=direction)
        assert abs(lhs - rhs) < 1e-6, (direction, lhs, rhs)


def test_fredholm_check_near_identity():
    # far from the cut the D-form matrix is close to the identity, so the
    # derivative reduces to the trace of the perturbation
    sp = s_of_c(50.0)
    lhs, rhs = fredholm_derivative_check(sp, 0.4, N16, direction="mu")
    assert abs(lhs - rhs) < 1e-8
