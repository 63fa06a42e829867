import math

import numpy as np
import pytest

from g4curves.core import GalileanMotion, GVector4, g_norm
from g4curves.curve import Curve, Domain, helix
from g4curves.errors import DegenerateFrameError
from g4curves.frenet import (KAPPA_ZERO, TAU_ZERO, MovedCurve, frenet_at, frenet_grid,
                             frenet_residuals, invariance_check, orthonormality_defects)

from oracles import frenet_by_finite_differences, helix_curvatures, helix_frame

R2 = 1 / math.sqrt(2)


@pytest.mark.parametrize("s", [0.0, 0.9, 4.0])
def test_circular_helix(s):
    fd = frenet_at(helix(1, 1, 0), s)
    assert fd.kappa == pytest.approx(1, abs=1e-14)
    assert fd.tau == pytest.approx(1, abs=1e-14)
    assert fd.sigma == pytest.approx(0, abs=1e-14)
    np.testing.assert_allclose(fd.e.to_tuple(), (0, 0, 0, -1), atol=1e-14)


@pytest.mark.parametrize("s", [0.0, 1.0, 2.5])
def test_helix_111(s):
    fd = frenet_at(helix(1, 1, 1), s)
    assert fd.kappa == pytest.approx(math.sqrt(2), abs=1e-14)
    assert fd.tau == pytest.approx(R2, abs=1e-14)
    # orientation convention e = t ^ n ^ b gives sigma = -pq/kappa
    assert fd.sigma == pytest.approx(-R2, abs=1e-14)
    t, n, b = helix_frame(1, 1, 1, s)
    np.testing.assert_allclose(fd.t.to_tuple(), t, atol=1e-14)
    np.testing.assert_allclose(fd.n.to_tuple(), n, atol=1e-14)
    np.testing.assert_allclose(fd.b.to_tuple(), b, atol=1e-14)


def test_frame_vectors_isotropic():
    fd = frenet_at(helix(2, 1, 3), 0.4)
    assert fd.t.x1 == 1.0
    assert fd.n.x1 == fd.b.x1 == fd.e.x1 == 0.0


def test_line_is_degenerate():
    fd = frenet_at(Curve.from_strings("line", "0", "0", "0"), 1.0)
    assert fd.degenerate == KAPPA_ZERO
    assert fd.n is None and fd.kappa is None
    with pytest.raises(DegenerateFrameError):
        fd.frame()


def test_plane_curve_has_zero_torsion():
    fd = frenet_at(Curve.from_strings("parabola", "s^2", "0", "0"), 0.3)
    assert fd.degenerate == TAU_ZERO
    assert fd.kappa == pytest.approx(2.0)
    assert fd.b is None and fd.tau is None


def test_grid():
    line = Curve.from_strings("line", "0", "0", "0", domain=Domain(0, 1, 3))
    assert [f.degenerate for f in frenet_grid(line)] == [KAPPA_ZERO] * 3
    two = frenet_grid(helix(1, 1, 1, Domain(0.0, 1.0, 2)))
    assert [f.s for f in two] == [0.0, 1.0]
    full = frenet_grid(helix(1, 1, 1, Domain(0.0, 2 * math.pi, 256)))
    assert len(full) == 256 and not any(f.is_degenerate for f in full)


@pytest.mark.parametrize("abc", [(0.5, 1.3, 0.4), (2.0, 0.7, 1.5), (1.2, 1.9, 0.2)])
def test_closed_form_curvatures(abc):
    kappa, tau, sigma_abs = helix_curvatures(*abc)
    for s in (0.0, 0.37, 3.0):
        fd = frenet_at(helix(*abc), s)
        assert fd.kappa == pytest.approx(kappa, abs=1e-9)
        assert fd.tau == pytest.approx(tau, abs=1e-9)
        assert abs(fd.sigma) == pytest.approx(sigma_abs, abs=1e-9)


def test_unit_spatial_norm_of_e():
    c = Curve.from_strings("p", "s^2/2", "s^3/6", "s^4/24", domain=Domain(-1, 1, 9))
    for fd in frenet_grid(c):
        assert g_norm(fd.e) == pytest.approx(1.0, abs=1e-9)
        assert max(orthonormality_defects(fd).values()) <= 1e-9


@pytest.mark.parametrize("curve, s", [(helix(1, 1, 1), 1.0), (helix(2, 1, 0), 0.0)])
def test_residuals_small(curve, s):
    assert max(frenet_residuals(curve, s, 1e-4)) <= 1e-6


def test_residuals_converge_quadratically():
    c = helix(1, 1, 1)
    coarse = frenet_residuals(c, 1.0, 1e-4)
    fine = frenet_residuals(c, 1.0, 5e-5)
    for r0, r1 in zip(coarse, fine):
        assert 3.5 <= r0 / r1 <= 4.5


def test_residuals_need_frame():
    with pytest.raises(DegenerateFrameError):
        frenet_residuals(Curve.from_strings("line", "s", "0", "0"), 0.0)


@pytest.mark.parametrize("srcs, params, s", [
    (("sin(s)", "s^3/3", "cosh(s)"), {}, 0.6),
    (("a*cos(p*s)", "a*sin(p*s)", "q*s^2/2"), {"a": 2.0, "p": 1.0, "q": 3.0}, 1.1),
    (("s^2/2", "s^3/6", "s^4/24"), {}, -0.7),
    (("exp(s/2)", "log(2 + s)", "s*sin(s)"), {}, 0.2),
])
def test_jets_agree_with_finite_difference_pipeline(srcs, params, s):
    kappa, tau, sigma = frenet_by_finite_differences(srcs, params, s)
    fd = frenet_at(Curve.from_strings("c", *srcs, params), s)
    assert abs(fd.kappa - kappa) <= 1e-6
    assert abs(fd.tau - tau) <= 1e-6
    assert abs(fd.sigma - sigma) <= 1e-6


def test_moved_curve_points_follow_motion():
    m = GalileanMotion.random(np.random.default_rng(1))
    c = helix(1.5, 0.8, 0.6)
    moved = MovedCurve(c, m)
    for s in (0.0, 1.3):
        image = m.apply(c.point(s))
        got = moved.point(s + m.td)
        np.testing.assert_allclose(got.to_tuple(), image.to_tuple(), atol=1e-12)
        jets = moved.spatial_jets(s + m.td)
        np.testing.assert_allclose([j.value for j in jets], image.spatial, atol=1e-12)


def test_identity_invariance():
    rec = invariance_check(helix(1, 1, 1), GalileanMotion.identity(), 0.8)
    assert rec.max_curvature_delta() <= 1e-12
    assert rec.max_frame_delta() <= 1e-12


def test_rotation_invariance():
    m = GalileanMotion(alpha=0.4, beta=1.7, gamma_angle=-0.9)
    rec = invariance_check(helix(1, 1, 1), m, 2.0)
    assert rec.max_curvature_delta() <= 1e-9
    assert rec.max_frame_delta() <= 1e-9


def test_boost_invariance():
    m = GalileanMotion(v=3.0, d1=0.0, d2=math.pi / 2, d3=math.pi / 2)
    rec = invariance_check(helix(1, 1, 1), m, 0.5)
    assert rec.max_curvature_delta() <= 1e-9
    assert rec.max_frame_delta() <= 1e-9


def test_random_motion_invariance():
    rng = np.random.default_rng(42)
    c = Curve.from_strings("p", "s^2/2", "s^3/6", "s^4/24", domain=Domain(-1, 1, 16))
    for _ in range(100):
        m = GalileanMotion.random(rng)
        rec = invariance_check(c, m, float(rng.uniform(-1, 1)))
        assert rec.max_curvature_delta() <= 1e-8


def test_boosted_tangent():
    m = GalileanMotion(v=2.0, d1=math.pi / 2, d2=0.0, d3=math.pi / 2)
    c = helix(1, 1, 1)
    before = frenet_at(c, 0.3).t
    after = frenet_at(MovedCurve(c, m), 0.3).t
    expected = GVector4(1.0, before.x2, before.x3 + 2.0, before.x4)
    np.testing.assert_allclose(after.to_tuple(), expected.to_tuple(), atol=1e-14)
