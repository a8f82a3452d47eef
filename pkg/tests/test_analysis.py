import math

import numpy as np
import pytest

from lo_dynamics import build_params, detect_psi_zeros, shoot_unstable_manifold
from lo_dynamics.analysis import (
    DensityReport,
    density_report,
    dirichlet_solutions,
    graph_volume,
    theta_infinity,
    theta_of_radius,
)
from lo_dynamics.errors import InsufficientHits, NotTypeII, RadiusOutOfRange
from lo_dynamics.geometry import los_volume, unit_ball_volume, unit_sphere_volume
from lo_dynamics.radial import ProfileSample, cone_profile, to_profile


def _cone_volume_exact(params, R):
    phi0 = params.phi0
    r_bar = R / math.sqrt(1.0 + phi0 ** 2)
    return (unit_sphere_volume(params.n) * math.sqrt(1.0 + phi0 ** 2)
            * (1.0 + params.lambda_sq * phi0 ** 2) ** (params.p / 2.0)
            * r_bar ** (params.n + 1) / (params.n + 1))


@pytest.fixture(scope="module")
def cone322(p322):
    return cone_profile(p322, list(np.geomspace(1e-8, 50.0, 4000)))


def test_cone_volume_closed_form(p322, cone322):
    for R in [0.5, 2.0, 11.0]:
        got = graph_volume(cone322, p322, R)
        assert got == pytest.approx(_cone_volume_exact(p322, R), rel=1e-8)


def test_flat_disk_volume(p322):
    flat = [ProfileSample(r=r, rho=0.0, rho_r=0.0, rho_rr=0.0)
            for r in np.geomspace(1e-8, 10.0, 2000)]
    R = 3.0
    got = graph_volume(flat, p322, R)
    n = p322.n
    assert got == pytest.approx(unit_sphere_volume(n) * R ** (n + 1) / (n + 1), rel=1e-8)
    assert got == pytest.approx(unit_ball_volume(n + 1) * R ** (n + 1), rel=1e-8)


def test_quadrature_panel_refinement(p322, cone322):
    a = graph_volume(cone322, p322, 2.0, n_panels=8192)
    b = graph_volume(cone322, p322, 2.0, n_panels=16384)
    assert abs(b / a - 1.0) < 1e-9


def test_quadrature_sample_refinement(p322):
    coarse = cone_profile(p322, list(np.geomspace(1e-8, 50.0, 2000)))
    fine = cone_profile(p322, list(np.geomspace(1e-8, 50.0, 4000)))
    a = graph_volume(coarse, p322, 2.0)
    b = graph_volume(fine, p322, 2.0)
    assert abs(b / a - 1.0) < 1e-9


def test_radius_out_of_range(p322, cone322):
    with pytest.raises(RadiusOutOfRange):
        graph_volume(cone322, p322, 1e-10)
    with pytest.raises(RadiusOutOfRange):
        graph_volume(cone322, p322, 1e4)


def test_theta_infinity_identity():
    for npk in [(3, 2, 2), (3, 2, 4), (5, 4, 6), (15, 8, 2)]:
        params = build_params(*npk)
        t_inf = theta_infinity(params)
        n = params.n
        assert t_inf * (n + 1) * unit_ball_volume(n + 1) == pytest.approx(
            los_volume(params), rel=1e-10)


def test_cone_theta_constant(p324):
    prof = cone_profile(p324, list(np.geomspace(1e-8, 50.0, 4000)))
    t_inf = theta_infinity(p324)
    for R in [0.3, 1.0, 9.0]:
        assert theta_of_radius(prof, p324, R) == pytest.approx(t_inf, rel=1e-8)


@pytest.mark.parametrize("fixture", ["traj322", "traj324"])
def test_theta_nondecreasing_along_orbit(fixture, request):
    traj = request.getfixturevalue(fixture)
    profile = to_profile(traj)
    r2 = np.array([s.r ** 2 + s.rho ** 2 for s in profile])
    radii = np.sqrt(np.geomspace(r2[2], r2[-1] * 0.999, 50))
    thetas = [theta_of_radius(profile, traj.params, R) for R in radii]
    diffs = np.diff(thetas)
    assert np.all(diffs > -1e-9)


def test_density_report_324(p324, traj324):
    report = density_report(traj324, p324)
    assert isinstance(report, DensityReport)
    assert len(report.thetas) >= 10
    assert report.strictly_below_cone
    assert report.thetas[0] < report.theta_infinity - 1e-9
    assert np.all(np.diff(report.thetas) > -1e-9)
    # R_i = sqrt(d_i^2 + rho(d_i)^2) = d_i sqrt(1 + phi0^2) at slope crossings
    for R, expect in zip(report.radii, (h * math.hypot(1.0, p324.phi0)
                                        for h in _dilations(traj324, p324))):
        assert R == pytest.approx(expect, rel=1e-9)


def _dilations(traj, params):
    from lo_dynamics import detect_phi_hits
    return [h.dilation for h in detect_phi_hits(traj, params.phi0)]


def test_density_rejects_type1(p322, traj322):
    with pytest.raises(NotTypeII):
        density_report(traj322, p322)


def test_density_needs_hits(p324):
    short = shoot_unstable_manifold(p324, t_max=1.0, max_crossings=10 ** 6)
    with pytest.raises(InsufficientHits):
        density_report(short, p324)


def test_dirichlet_type1_unique(p322, traj322):
    report = dirichlet_solutions(traj322, 0.5 * p322.phi0)
    assert len(report.dilations) == 1
    assert not report.count_is_lower_bound
    assert not report.includes_singular_cone


def test_dirichlet_type2_at_cone_slope(p324, traj324):
    report = dirichlet_solutions(traj324, p324.phi0)
    assert len(report.dilations) >= 10
    assert report.count_is_lower_bound
    assert report.includes_singular_cone


def test_dirichlet_above_cone_slope(p324, traj324):
    phi_1 = detect_psi_zeros(traj324)[0].phi
    phi_b = p324.phi0 + 0.3 * (phi_1 - p324.phi0)
    report = dirichlet_solutions(traj324, phi_b)
    assert len(report.dilations) >= 2
    assert report.count_is_lower_bound
    assert not report.includes_singular_cone


def test_dilations_reproduce_boundary_data(p324, traj324):
    phi_b = p324.phi0
    report = dirichlet_solutions(traj324, phi_b)
    for d in report.dilations:
        t = math.log(d)
        rho_over_d = traj324.phi_at(t)  # rho(d)/d = phi(log d)
        assert abs(rho_over_d - phi_b) < 1e-9


def test_dirichlet_rejects_nonpositive_slope(traj322):
    with pytest.raises(ValueError):
        dirichlet_solutions(traj322, 0.0)
