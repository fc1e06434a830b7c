import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from uavcover import (DomainError, brute_force_height, hex_moments,
                      hexagon_cell_power, optimal_average_power,
                      power_formula_audit, solve_common_height_closed,
                      solve_common_height_numeric, triangle_nodes)
from uavcover.hexagon import SQRT3, _critical_gap, hex_circumradius, hex_inradius


def quad_moment(area, two_k, order=64):
    r2, w = triangle_nodes(area, order)
    return float(np.dot(r2 ** (two_k // 2), w))


def test_hexagon_geometry_relations():
    area = 7.3
    r = hex_inradius(area)
    assert_allclose(2.0 * SQRT3 * r * r, area)
    assert_allclose(hex_circumradius(area), 2.0 * r / SQRT3)


def test_moments_closed_forms():
    m = hex_moments(12.0)
    assert_allclose(m.m0, 1.0)
    m1 = hex_moments(1.0)
    assert_allclose(m1.m2, 5.0 / (216.0 * SQRT3))
    assert_allclose(m1.m4, 7.0 / 2430.0)
    assert_allclose(m1.m6, 83.0 / (72.0 * 35.0 * 27.0 * SQRT3))


@pytest.mark.parametrize("area", [1.0, 100.0, 1e4])
def test_moments_match_quadrature(area):
    m = hex_moments(area)
    for two_k, closed in ((0, m.m0), (2, m.m2), (4, m.m4), (6, m.m6)):
        assert abs(quad_moment(area, two_k) - closed) / closed < 1e-6


def test_gamma1_root_is_moment_ratio():
    m = hex_moments(1.0)
    sol = solve_common_height_numeric(1.0, 1.0, 1.0)
    assert_allclose(sol.z, m.m2 / m.m0, rtol=1e-12)
    closed = solve_common_height_closed(1, 1.0, 1.0)
    assert_allclose(closed.c_factor, math.sqrt(5.0 / (18.0 * SQRT3)), rtol=1e-15)


@pytest.mark.parametrize("gamma", [1, 2, 3])
def test_closed_vs_numeric_agreement(gamma):
    for kappa in sorted({1.0, float(gamma), 2.0 * gamma - 1.0}):
        for area in (1.0, 100.0, 1e4):
            closed = solve_common_height_closed(gamma, kappa, area)
            numeric = solve_common_height_numeric(float(gamma), kappa, area)
            assert abs(closed.h_star - numeric.h_star) / numeric.h_star < 1e-8
            assert_allclose(closed.h_star, closed.c_factor * math.sqrt(area))


def test_gamma2_kappa2_quadratic_value():
    # with kappa=2 the linear term of the quadratic vanishes: z^2 = 14 H^2/405
    sol = solve_common_height_closed(2, 2.0, 1.0)
    assert_allclose(sol.z, math.sqrt(14.0 / 405.0), rtol=1e-12)
    assert_allclose(sol.h_star, (14.0 / 405.0) ** 0.25, rtol=1e-12)
    numeric = solve_common_height_numeric(2.0, 2.0, 1.0)
    assert_allclose(numeric.z, sol.z, rtol=1e-10)


def test_gamma3_uv_display_matches_cardano():
    for kappa in (1.0, 2.0, 3.0, 4.0, 5.0):
        k = kappa
        u = (143360.0 - 16728.0 * k - 444.0 * k * k + 37.0 * k ** 3) / 4375.0
        v = (12.0 * (6.0 - k) / (125.0 * 35.0) * math.sqrt(3.0 / 5.0)
             * math.sqrt(6607552.0 + 659680.0 * k + 103387.0 * k * k
                         - 108408.0 * k ** 3 + 9034.0 * k ** 4))
        z_uv = (5.0 / (18.0 * SQRT3)
                * (np.cbrt(u - v) + np.cbrt(u + v) - (4.0 - k)) / (6.0 - k))
        sol = solve_common_height_closed(3, kappa, 1.0)
        assert_allclose(sol.z, z_uv, rtol=1e-10)


def test_gamma3_discriminant_positive_over_kappa_range():
    for k in np.linspace(1.0, 5.0, 81):
        a2 = 5.0 * (4.0 - k) / (6.0 * SQRT3 * (6.0 - k))
        a1 = 14.0 * (2.0 - k) / (135.0 * (6.0 - k))
        a0 = -83.0 * k / (5670.0 * SQRT3 * (6.0 - k))
        q = a1 / 3.0 - a2 * a2 / 9.0
        p = a1 * a2 / 6.0 - a0 / 2.0 - a2 ** 3 / 27.0
        assert q ** 3 + p * p > 0.0


def test_kappa_domain_enforced():
    with pytest.raises(DomainError):
        solve_common_height_closed(1, 1.5, 1.0)
    with pytest.raises(DomainError):
        solve_common_height_closed(2, 0.5, 1.0)
    with pytest.raises(DomainError):
        solve_common_height_closed(2, 3.5, 1.0)
    with pytest.raises(DomainError):
        solve_common_height_numeric(1.0, 2.5, 1.0)   # 2*gamma/kappa < 1


def test_numeric_solver_handles_fractional_gamma():
    sol = solve_common_height_numeric(1.5, 1.0, 1.0)
    r2, w = triangle_nodes(1.0, 64)
    assert _critical_gap(sol.z * 0.9, 1.5, 1.0, r2, w) < 0.0
    assert _critical_gap(sol.z * 1.1, 1.5, 1.0, r2, w) > 0.0


def test_root_uniqueness_by_dense_sampling():
    r2, w = triangle_nodes(1.0, 48)
    for gamma, kappa in ((1.5, 1.0), (2.0, 2.0), (3.0, 4.0)):
        zs = np.linspace(1e-6, 4.0, 4000)
        signs = np.sign([_critical_gap(z, gamma, kappa, r2, w) for z in zs])
        assert np.count_nonzero(np.diff(signs)) == 1


def test_scale_factor_decreasing_in_gamma():
    c1 = solve_common_height_closed(1, 1.0, 1.0).c_factor
    c2 = solve_common_height_closed(2, 1.0, 1.0).c_factor
    c3 = solve_common_height_closed(3, 1.0, 1.0).c_factor
    assert c1 > c2 > c3


def test_optimal_power_gamma1_value():
    p = optimal_average_power(1, 1.0, 1.0)
    assert_allclose(p, math.sqrt(10.0 / (9.0 * SQRT3)), rtol=1e-12)
    quad = hexagon_cell_power(solve_common_height_closed(1, 1.0, 1.0).h_star,
                              1.0, 1.0, 1.0, order=96)
    assert_allclose(p, quad, rtol=1e-10)


def test_optimal_power_matches_quadrature_gamma2():
    sol = solve_common_height_closed(2, 1.0, 1.0)
    quad = hexagon_cell_power(sol.h_star, 2.0, 1.0, 1.0, order=96)
    assert abs(optimal_average_power(2, 1.0, 1.0) - quad) / quad < 1e-4
    c = sol.c_factor
    published = 14.0 / (405.0 * c) + 5.0 * c / (9.0 * SQRT3) + c ** 3
    assert_allclose(optimal_average_power(2, 1.0, 1.0), published, rtol=1e-10)


def test_optimal_power_area_scaling():
    for gamma in (1, 2, 3):
        base = optimal_average_power(gamma, 1.0, 1.0)
        for area in (100.0, 1e4):
            scaled = optimal_average_power(gamma, 1.0, area)
            assert_allclose(scaled / base, area ** ((2 * gamma - 1) / 2.0),
                            rtol=1e-10)


def test_optimal_power_physical_divides_by_directivity():
    for kappa in (1.0, 3.0):
        norm = optimal_average_power(2, kappa, 1.0)
        phys = optimal_average_power(2, kappa, 1.0, normalized=False)
        assert_allclose(phys, norm / (2.0 * (kappa + 1.0)), rtol=1e-14)


def test_brute_force_tracks_closed_forms():
    for gamma, kappa in ((1, 1.0), (2, 1.0)):
        alpha = 2.0 * gamma - kappa
        closed = solve_common_height_closed(gamma, kappa, 1.0)
        h_bf = brute_force_height(1.0, kappa, alpha, samples=5000)
        assert abs(h_bf - closed.h_star) / closed.h_star < 0.02


def test_brute_force_refinement_never_hurts():
    closed = solve_common_height_closed(2, 1.0, 1.0).h_star
    gaps = []
    for samples in (625, 1250, 2500, 5000):
        h = brute_force_height(1.0, 1.0, 3.0, samples=samples)
        gaps.append(abs(h - closed))
    assert all(a >= b - 1e-12 for a, b in zip(gaps, gaps[1:]))


def test_power_formula_audit_flags_display_mismatches():
    rows = {r.gamma: r for r in power_formula_audit()}
    assert rows[1].rel_gap_moment < 1e-4
    assert rows[2].rel_gap_moment < 1e-9
    assert rows[3].rel_gap_moment < 1e-9
    # the display coefficients disagree for gamma 1 and 3; the audit says so
    assert_allclose(rows[1].quadrature / rows[1].display_form,
                    math.sqrt(5.0), rtol=1e-6)
    assert rows[2].rel_gap_display < 1e-9
    assert rows[3].rel_gap_display > 0.1
    assert "matches" in rows[2].note
    assert "disagree" in rows[3].note or "sqrt(5)" in rows[3].note
