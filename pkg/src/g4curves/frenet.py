"""Frenet apparatus of admissible curves in G4.

For ``alpha(s) = (s, y, z, w)`` the frame is built from jets at ``s``::

    t = alpha'                      (absolute part 1)
    kappa = |alpha''|,  n = alpha'' / kappa
    tau = |n'|,         b = n' / tau
    e = t ^ n ^ b                   (ternary cross product)
    sigma = <b', e>

and satisfies ``t' = kappa n``, ``n' = tau b``, ``b' = -tau n + sigma e``,
``e' = -sigma b``. Every derivative comes from jet arithmetic; finite
differences appear only in :func:`frenet_residuals`, which checks those
equations independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Protocol

import numpy as np

from .core import GalileanMotion, GPoint4, GVector4, g_cross, g_dot, g_norm
from .curve import Domain
from .errors import DegenerateFrameError
from .jets import Jet, jet_add, jet_const, jet_div, jet_fun, jet_mul, jet_scale, jet_var

EPS_DEGENERATE = 1e-9

KAPPA_ZERO = "kappa_zero"
TAU_ZERO = "tau_zero"


class CurveLike(Protocol):
    name: str
    domain: Domain

    def point(self, s: float) -> GPoint4: ...

    def spatial_jets(self, s: float) -> tuple[Jet, Jet, Jet]: ...


@dataclass(frozen=True)
class FrenetData:
    s: float
    t: GVector4
    n: GVector4 | None = None
    b: GVector4 | None = None
    e: GVector4 | None = None
    kappa: float | None = None
    tau: float | None = None
    sigma: float | None = None
    degenerate: str | None = None

    @property
    def is_degenerate(self) -> bool:
        return self.degenerate is not None

    def frame(self) -> tuple[GVector4, GVector4, GVector4, GVector4]:
        if self.degenerate:
            raise DegenerateFrameError(self.s, self.degenerate)
        return (self.t, self.n, self.b, self.e)


def _norm_jet(v: list[Jet]) -> Jet:
    sq = jet_add(jet_add(jet_mul(v[0], v[0]), jet_mul(v[1], v[1])), jet_mul(v[2], v[2]))
    return jet_fun("sqrt", sq)


def _iso(v: list[Jet], k: int = 0) -> GVector4:
    """Isotropic vector from the order-``k`` derivative of three spatial jets."""
    f = math.factorial(k)
    return GVector4(0.0, f * v[0].coeffs[k], f * v[1].coeffs[k], f * v[2].coeffs[k])


@dataclass(frozen=True)
class FrameJets:
    """Jets of the frame ingredients at one parameter value.

    Truncation leaves ``d1`` exact to order 4, ``d2``/``kappa``/``n`` to
    order 3, ``dn``/``tau``/``b`` to order 2 and ``db`` to order 1.
    Fields past a degeneracy are ``None``.
    """

    s: float
    d1: list[Jet]
    d2: list[Jet]
    kappa: Jet | None = None
    n: list[Jet] | None = None
    dn: list[Jet] | None = None
    tau: Jet | None = None
    b: list[Jet] | None = None
    db: list[Jet] | None = None
    degenerate: str | None = None


def frame_jets(c: CurveLike, s: float, eps_degenerate: float = EPS_DEGENERATE) -> FrameJets:
    spatial = c.spatial_jets(s)
    d1 = [j.diff() for j in spatial]
    d2 = [j.diff() for j in d1]
    if math.sqrt(sum(j.value ** 2 for j in d2)) <= eps_degenerate:
        return FrameJets(s, d1, d2, degenerate=KAPPA_ZERO)
    kappa = _norm_jet(d2)
    n = [jet_div(j, kappa) for j in d2]
    dn = [j.diff() for j in n]
    if math.sqrt(sum(j.value ** 2 for j in dn)) <= eps_degenerate:
        return FrameJets(s, d1, d2, kappa, n, dn, degenerate=TAU_ZERO)
    tau = _norm_jet(dn)
    b = [jet_div(j, tau) for j in dn]
    db = [j.diff() for j in b]
    return FrameJets(s, d1, d2, kappa, n, dn, tau, b, db)


def frenet_at(c: CurveLike, s: float, eps_degenerate: float = EPS_DEGENERATE) -> FrenetData:
    """Frame and curvatures of ``c`` at ``s``.

    Degeneracy is a result state: when ``kappa`` (or ``tau``) is at or below
    ``eps_degenerate`` the fields from that stage on are left unset.
    """
    s = float(s)
    fj = frame_jets(c, s, eps_degenerate)
    t = GVector4(1.0, fj.d1[0].value, fj.d1[1].value, fj.d1[2].value)
    if fj.degenerate == KAPPA_ZERO:
        return FrenetData(s, t, degenerate=KAPPA_ZERO)
    n = _iso(fj.n)
    if fj.degenerate == TAU_ZERO:
        return FrenetData(s, t, n, kappa=fj.kappa.value, degenerate=TAU_ZERO)
    b = _iso(fj.b)
    e = g_cross(t, n, b)
    sigma = g_dot(_iso(fj.db), e)
    return FrenetData(s, t, n, b, e, fj.kappa.value, fj.tau.value, sigma)


def frenet_grid(c: CurveLike, eps_degenerate: float = EPS_DEGENERATE) -> list[FrenetData]:
    return [frenet_at(c, s, eps_degenerate) for s in c.domain.grid()]


def orthonormality_defects(fd: FrenetData) -> dict[str, float]:
    """``|<u,v>_G - delta_uv|`` for the ten pairs of the frame."""
    names = ("t", "n", "b", "e")
    vecs = fd.frame()
    out = {}
    for i in range(4):
        for j in range(i, 4):
            target = 1.0 if i == j else 0.0
            out[names[i] + names[j]] = abs(g_dot(vecs[i], vecs[j]) - target)
    return out


class FrenetResiduals(NamedTuple):
    t_eq: float
    n_eq: float
    b_eq: float
    e_eq: float


def frenet_residuals(c: CurveLike, s: float, h: float = 1e-4,
                     eps_degenerate: float = EPS_DEGENERATE) -> FrenetResiduals:
    """Galilean norms of the Frenet equations with central-difference derivatives.

    Each residual is O(h^2) for analytic curves.
    """
    lo, mid, hi = (frenet_at(c, x, eps_degenerate) for x in (s - h, s, s + h))
    for fd in (lo, mid, hi):
        if fd.is_degenerate:
            raise DegenerateFrameError(fd.s, fd.degenerate)

    def ddx(name: str) -> GVector4:
        return (getattr(hi, name) - getattr(lo, name)) * (1.0 / (2.0 * h))

    k, tau, sig = mid.kappa, mid.tau, mid.sigma
    return FrenetResiduals(
        g_norm(ddx("t") - k * mid.n),
        g_norm(ddx("n") - tau * mid.b),
        g_norm(ddx("b") + tau * mid.n - sig * mid.e),
        g_norm(ddx("e") + sig * mid.b),
    )


# --------------------------------------------------------------------------
# Galilean motions acting on curves

@dataclass(frozen=True)
class MovedCurve:
    """Image of a curve under a Galilean motion, reparameterised admissibly.

    The motion shifts the absolute coordinate by ``d``, so the image point of
    ``base(s)`` is this curve's point at ``s + d``.
    """

    base: CurveLike
    motion: GalileanMotion

    @property
    def name(self) -> str:
        return f"{self.base.name}*motion"

    @property
    def domain(self) -> Domain:
        d = self.base.domain
        return Domain(d.lo + self.motion.td, d.hi + self.motion.td, d.samples)

    def point(self, s: float) -> GPoint4:
        p = self.motion.apply(self.base.point(s - self.motion.td))
        return GPoint4(float(s), p.x2, p.x3, p.x4)

    def spatial_jets(self, s: float) -> tuple[Jet, Jet, Jet]:
        s0 = float(s) - self.motion.td
        ys = self.base.spatial_jets(s0)
        r = self.motion.rotation
        boost = self.motion.boost
        shift = self.motion.translation
        time = jet_var(s0)
        out = []
        for i in range(3):
            acc = jet_const(float(shift[i]))
            acc = jet_add(acc, jet_scale(time, float(boost[i])))
            for k in range(3):
                acc = jet_add(acc, jet_scale(ys[k], float(r[i, k])))
            out.append(acc)
        return tuple(out)


def transform_curve(c: CurveLike, m: GalileanMotion) -> MovedCurve:
    return MovedCurve(c, m)


@dataclass(frozen=True)
class InvarianceRecord:
    s: float
    d_kappa: float
    d_tau: float
    d_sigma: float
    d_n: float
    d_b: float
    d_e: float

    def max_curvature_delta(self) -> float:
        return max(self.d_kappa, self.d_tau, self.d_sigma)

    def max_frame_delta(self) -> float:
        return max(self.d_n, self.d_b, self.d_e)


def _rotated(r: np.ndarray, v: GVector4) -> np.ndarray:
    return r @ np.array(v.spatial)


def invariance_check(c: CurveLike, m: GalileanMotion, s: float,
                     eps_degenerate: float = EPS_DEGENERATE) -> InvarianceRecord:
    """Compare the Frenet data of ``c`` at ``s`` with that of its image at ``s + d``.

    Frame deviations are Euclidean norms of ``n_moved - R n`` (likewise b, e).
    """
    before = frenet_at(c, s, eps_degenerate)
    after = frenet_at(MovedCurve(c, m), s + m.td, eps_degenerate)
    for fd in (before, after):
        if fd.is_degenerate:
            raise DegenerateFrameError(fd.s, fd.degenerate)
    r = m.rotation

    def dev(name: str) -> float:
        moved = np.array(getattr(after, name).spatial)
        return float(np.linalg.norm(moved - _rotated(r, getattr(before, name))))

    return InvarianceRecord(
        float(s),
        abs(after.kappa - before.kappa),
        abs(after.tau - before.tau),
        abs(after.sigma - before.sigma),
        dev("n"), dev("b"), dev("e"),
    )
