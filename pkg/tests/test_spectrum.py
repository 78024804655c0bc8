import math

import numpy as np
import pytest

from helpers import mirror, random_drive, random_scalars
from qsatom import (DriveConfig, MOLLOW_SCALARS, PhaseShiftTable,
                    build_drift, build_spectral_drift, elastic_line,
                    local_maxima, low_intensity_x, mollow_inel_x,
                    mollow_xsections, reduced_scalars, resolvent,
                    scalars_from_phase_shifts, sigma_el, sigma_inel,
                    sigma_inel_x, sigma_tot_x,
                    spectral_coefficients, spectral_diff)
from qsatom.model import SQRT_4PI
from qsatom.spectrum import _row2_cofactors

MIXED_TABLE = PhaseShiftTable([-0.2, 0.15, 0.05, -0.3], [0.4, -0.1, 0.02, 0.11])


def _spectral_drift(sc, dc):
    rs = reduced_scalars(sc, dc)
    return rs, build_spectral_drift(rs, dc.eta, sc.s, dc.gammatilde)


def test_resolvent_decoupled_diagonal():
    # no drive, no s-wave difference: the three modes decouple and the
    # resolvent diagonal is the reciprocal of the shifted decay rates
    sc = MOLLOW_SCALARS
    dc = DriveConfig(0.0, 0.6, 0.4)
    rs, sd = _spectral_drift(sc, dc)
    x = 0.9
    r = resolvent(sd, x)
    gt = dc.gammatilde
    assert r[0, 0] == pytest.approx(1.0 / (2.0 + gt + 2j * x), rel=1e-14)
    assert r[1, 1] == pytest.approx(1.0 / (rs.bprime + gt + 2j * x), rel=1e-14)
    assert r[2, 2] == pytest.approx(1.0 / (np.conj(rs.bprime) + gt + 2j * x), rel=1e-14)


def test_resolvent_decays_at_large_frequency(fano_scalars):
    _, sd = _spectral_drift(fano_scalars, DriveConfig(2.0, 0.5, 0.3))
    for x in (1e3, -1e4):
        r = resolvent(sd, x)
        assert np.max(np.abs(r)) <= 1.0 / abs(x)


def test_resolvent_matches_generic_inverse():
    rng = np.random.default_rng(71)
    worst = 0.0
    for _ in range(100):
        sc, dc = random_scalars(rng), random_drive(rng)
        _, sd = _spectral_drift(sc, dc)
        x = rng.uniform(-20.0, 20.0)
        adj = resolvent(sd, x)
        gen = np.linalg.inv(sd.matrix + 2j * x * np.eye(3))
        worst = max(worst, float(np.max(np.abs(adj - gen))))
    assert worst <= 1e-12


def test_row2_only_from_cofactors(fano_scalars):
    # the closed production rows never include row 2; the cofactor row
    # must complete the adjugate so that A @ inv = identity
    _, sd = _spectral_drift(fano_scalars, DriveConfig(2.0, -1.0, 0.5))
    x = 1.7
    full = resolvent(sd, x)
    a = sd.matrix + 2j * x * np.eye(3)
    assert np.max(np.abs(a @ full - np.eye(3))) < 1e-13
    det = np.linalg.det(a)
    assert np.max(np.abs(_row2_cofactors(sd, x) / det - full[1])) < 1e-15


def test_spectral_drift_eigenvalues_shift_by_width():
    rng = np.random.default_rng(19)
    for _ in range(40):
        sc = random_scalars(rng)
        dc = random_drive(rng)
        if dc.eta == 0.0:
            continue
        rs = reduced_scalars(sc, dc)
        sd = build_spectral_drift(rs, dc.eta, sc.s, dc.gammatilde)
        gp = build_drift(rs, dc.eta, sc.s)
        shifted = np.linalg.eigvals(gp.matrix) + dc.gammatilde
        for lam in np.linalg.eigvals(sd.matrix):
            assert np.min(np.abs(shifted - lam)) < 1e-10


def test_spectral_coefficients_structure(fano_scalars):
    dc = DriveConfig(2.0, 1.0, 0.6)
    rs = reduced_scalars(fano_scalars, dc)
    co = spectral_coefficients(rs, dc.eta, fano_scalars.s)
    assert np.array_equal(co.cdoubleprime, [1.0, 0.0, 0.0])
    assert co.cprime[1] == 0.0 and co.cprime[2] == 1.0
    # d'' encodes the dressed decay scalars directly
    den = rs.z ** 2 + rs.zeta2
    assert co.ddoubleprime[0] == pytest.approx(rs.kappa2 * (den - dc.eta ** 2 * rs.kappa2))
    assert co.ddoubleprime[2] == pytest.approx(rs.kappa2 * complex(rs.kappa2, -rs.y))


def test_inelastic_spectrum_vanishes_without_drive(fano_scalars):
    dc = DriveConfig(0.0, 1.2, 0.5)
    for x in (-3.0, 0.0, 7.7):
        assert sigma_inel_x(fano_scalars, dc, x) == 0.0


def test_inelastic_spectrum_mirror_symmetry():
    rng = np.random.default_rng(97)
    for _ in range(80):
        sc, dc = random_scalars(rng), random_drive(rng, gamma_min=0.05)
        sc2, dc2 = mirror(sc, dc)
        x = rng.uniform(-10.0, 10.0)
        a = sigma_inel_x(sc, dc, x)
        b = sigma_inel_x(sc2, dc2, -x)
        assert abs(a - b) <= 1e-12
        assert a >= -1e-12


def test_inelastic_spectrum_positive_on_dense_grid(fano_scalars):
    xs = np.linspace(-30.0, 30.0, 1501)
    for eta2, zt in ((10.0, 0.0), (28.0, 3.0), (40.0, -4.0)):
        vals = sigma_inel_x(fano_scalars, DriveConfig(math.sqrt(eta2), zt, 0.6), xs)
        assert float(np.min(vals)) >= -1e-12


def test_inelastic_spectrum_integrates_to_cross_section(fano_scalars):
    from qsatom.oracle import integrate_line
    dc = DriveConfig(math.sqrt(18.0), 0.0, 0.6)
    closed = sigma_inel(fano_scalars, dc)
    value, _, converged = integrate_line(
        lambda x: sigma_inel_x(fano_scalars, dc, x), 20.0, tol=1e-10)
    assert converged
    assert value == pytest.approx(closed, rel=1e-6)


def test_total_spectrum_composition(fano_scalars):
    dc = DriveConfig(2.0, 1.0, 0.6)
    weight, center = elastic_line(fano_scalars, dc)
    assert center == 0.0
    assert weight == pytest.approx(sigma_el(fano_scalars, dc), rel=1e-14)
    for x in (0.0, -2.2, 5.0):
        lor = weight * (0.6 / (2 * math.pi)) / (x ** 2 + 0.09)
        assert sigma_tot_x(fano_scalars, dc, x) == pytest.approx(
            lor + sigma_inel_x(fano_scalars, dc, x), rel=1e-14)


def test_total_spectrum_rejects_zero_width(fano_scalars):
    with pytest.raises(ValueError):
        sigma_tot_x(fano_scalars, DriveConfig(1.0, 0.0, 0.0), 0.3)


def test_total_spectrum_tail_small_positive(fano_scalars):
    dc = DriveConfig(math.sqrt(18.0), 0.0, 0.6)
    v = sigma_tot_x(fano_scalars, dc, 100.0)
    assert 0.0 < v < 1e-5


def test_mollow_spectrum_even_in_x():
    for x in (0.3, 1.7, 9.0):
        assert mollow_inel_x(0.8, 2.0, 0.6, x) == mollow_inel_x(0.8, 2.0, 0.6, -x)
        assert mollow_inel_x(-0.8, 2.0, 0.6, x) == mollow_inel_x(0.8, 2.0, 0.6, x)


def test_mollow_spectrum_matches_resolvent_route():
    xs = np.linspace(-8.0, 8.0, 41)
    worst = 0.0
    for zt in np.linspace(-3.0, 3.0, 21):
        dc = DriveConfig(2.0, float(zt), 0.6)
        got = sigma_inel_x(MOLLOW_SCALARS, dc, xs)
        ref = mollow_inel_x(float(zt), 2.0, 0.6, xs)
        worst = max(worst, float(np.max(np.abs(got - ref) / np.abs(ref))))
    assert worst <= 1e-10


def test_total_spectrum_mollow_reference():
    dc = DriveConfig(math.sqrt(10.0), 0.0, 0.6)
    el = mollow_xsections(0.0, dc.eta).elastic
    for x in (0.0, 1.1, -4.0):
        lor = el * (0.6 / (2 * math.pi)) / (x ** 2 + 0.09)
        assert sigma_tot_x(MOLLOW_SCALARS, dc, x) == pytest.approx(
            lor + mollow_inel_x(0.0, dc.eta, 0.6, x), rel=1e-10)


def test_strong_drive_triplet_positions_and_ratio():
    dc = DriveConfig(10.0, 0.0, 0.01)
    peaks = local_maxima(lambda x: sigma_inel_x(MOLLOW_SCALARS, dc, x),
                         -15.0, 15.0, num=3001)
    assert len(peaks) == 3
    xs = sorted(p[0] for p in peaks)
    assert xs[0] == pytest.approx(-10.0, abs=0.5)
    assert xs[1] == pytest.approx(0.0, abs=0.2)
    assert xs[2] == pytest.approx(10.0, abs=0.5)
    heights = {round(p[0]): p[1] for p in peaks}
    ratio = heights[0] / heights[10]
    assert ratio == pytest.approx((3.0 + 2 * 0.01) / (1.0 + 0.01), rel=0.1)


def test_low_intensity_spectrum_invariances(fano_scalars):
    args = (1.3, 0.5, 0.1)  # ztilde, gammatilde, eta
    for x in (0.2, 1.9, -3.3):
        a = low_intensity_x(fano_scalars, args[0], args[1], args[2], x)
        assert a == low_intensity_x(fano_scalars, args[0], args[1], args[2], -x)
        flipped, _ = mirror(fano_scalars, DriveConfig(args[2], 0.0))
        b = low_intensity_x(flipped, -args[0], args[1], args[2], x)
        assert a == pytest.approx(b, rel=1e-12)


def test_low_intensity_spectrum_is_weak_drive_limit(fano_scalars):
    # ratio exact/approx tends to 1 like 1 + O(eta^2); Richardson in eta^2
    zt, gt, x = 1.3, 0.5, 0.7

    def ratio(eta):
        dc = DriveConfig(eta, zt, gt)
        return sigma_inel_x(fano_scalars, dc, x) \
            / low_intensity_x(fano_scalars, zt, gt, eta, x)

    extrapolated = (4.0 * ratio(0.05) - ratio(0.1)) / 3.0
    assert abs(extrapolated - 1.0) <= 1e-4


def test_angular_elastic_weight_matches_amplitude_at_zero_drive():
    from qsatom import g_pm
    dc = DriveConfig(0.0, 0.9, 0.5)
    z = 2.0 * dc.ztilde
    d0m = MIXED_TABLE.delta_minus[0]
    for theta in (0.4, 1.3, 2.8):
        el, inel = spectral_diff(MIXED_TABLE, dc, theta, 0.8)
        _, gm = g_pm(MIXED_TABLE, theta)
        amp2 = abs(gm - 1j * np.exp(2j * d0m) / (SQRT_4PI * (z + 1j))) ** 2
        lor = (0.5 / (2 * math.pi)) / (0.8 ** 2 + 0.0625)
        assert el == pytest.approx(amp2 * lor, rel=1e-12)
        assert inel == pytest.approx(0.0, abs=1e-15)


def test_angular_elastic_weight_integrates_to_elastic_cross_section():
    # the angular elastic density is |a(theta)|^2 times a unit Lorentzian;
    # its solid-angle integral at fixed x must reproduce the elastic line
    sc = scalars_from_phase_shifts(MIXED_TABLE)
    dc = DriveConfig(2.0, 0.8, 0.6)
    x = 0.45
    nodes, weights = np.polynomial.legendre.leggauss(64)
    integral = 2.0 * math.pi * sum(
        w * spectral_diff(MIXED_TABLE, dc, math.acos(c), x)[0]
        for c, w in zip(nodes, weights))
    lorentz = (0.6 / (2.0 * math.pi)) / (x ** 2 + 0.09)
    assert integral == pytest.approx(sigma_el(sc, dc) * lorentz, rel=1e-10)


def test_angular_inelastic_density_integrates_to_spectrum():
    sc = scalars_from_phase_shifts(MIXED_TABLE)
    dc = DriveConfig(2.0, 0.8, 0.6)
    nodes, weights = np.polynomial.legendre.leggauss(64)
    rng = np.random.default_rng(3)
    for x in rng.uniform(-6.0, 6.0, 10):
        integral = 2.0 * math.pi * sum(
            w * spectral_diff(MIXED_TABLE, dc, math.acos(c), float(x))[1]
            for c, w in zip(nodes, weights))
        assert integral == pytest.approx(sigma_inel_x(sc, dc, float(x)), abs=1e-8)


def test_angular_spectral_sum_rule():
    # at fixed angle, the spectral densities integrate over frequency to
    # the differential cross section
    from qsatom import sigma_diff
    from qsatom.oracle import integrate_line
    dc = DriveConfig(2.0, 0.8, 0.6)
    for theta in (0.4, 1.2, 2.6):
        def density(xs):
            xs = np.atleast_1d(xs)
            return np.array([sum(spectral_diff(MIXED_TABLE, dc, theta, float(x)))
                             for x in xs])
        value, _, converged = integrate_line(density, 15.0, tol=1e-10)
        assert converged
        assert value == pytest.approx(sigma_diff(MIXED_TABLE, dc, theta), rel=1e-6)


def test_angular_elastic_weight_isotropic_for_pure_swave():
    table = PhaseShiftTable([0.2], [-0.1])
    dc = DriveConfig(1.5, 0.3, 0.4)
    vals = [spectral_diff(table, dc, th, 1.1)[0] for th in (0.2, 1.0, 2.0, 3.0)]
    assert max(vals) - min(vals) < 1e-15


def test_spectral_diff_requires_width():
    with pytest.raises(ValueError):
        spectral_diff(MIXED_TABLE, DriveConfig(1.0, 0.0, 0.0), 1.0, 0.5)


def test_local_maxima_on_known_function():
    peaks = local_maxima(lambda x: math.cos(x), 0.5, 13.0, num=801, xtol=1e-8)
    assert [round(p[0] / math.pi) for p in peaks] == [2, 4]
    for p in peaks:
        assert p[0] == pytest.approx(round(p[0] / math.pi) * math.pi, abs=1e-6)
