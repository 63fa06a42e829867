"""Vectors, points, metric and motions of Galilean 4-space.

Coordinates are stored with the absolute (time-like) coordinate first:
``(x1, x2, x3, x4)``. A vector is isotropic when its absolute part vanishes;
isotropic vectors are the only ones measured with a Euclidean norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import InvalidMotionError

ISOTROPY_RTOL = 1e-12
DIRECTION_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class GVector4:
    x1: float
    x2: float
    x3: float
    x4: float

    def __iter__(self) -> Iterator[float]:
        yield self.x1
        yield self.x2
        yield self.x3
        yield self.x4

    def __add__(self, other: GVector4) -> GVector4:
        return GVector4(self.x1 + other.x1, self.x2 + other.x2,
                        self.x3 + other.x3, self.x4 + other.x4)

    def __sub__(self, other: GVector4) -> GVector4:
        return GVector4(self.x1 - other.x1, self.x2 - other.x2,
                        self.x3 - other.x3, self.x4 - other.x4)

    def __mul__(self, k: float) -> GVector4:
        return GVector4(k * self.x1, k * self.x2, k * self.x3, k * self.x4)

    __rmul__ = __mul__

    def __neg__(self) -> GVector4:
        return GVector4(-self.x1, -self.x2, -self.x3, -self.x4)

    @property
    def spatial(self) -> tuple[float, float, float]:
        return (self.x2, self.x3, self.x4)

    def is_isotropic(self) -> bool:
        return is_isotropic(self)

    def to_tuple(self) -> tuple[float, float, float, float]:
        return (self.x1, self.x2, self.x3, self.x4)


@dataclass(frozen=True, slots=True)
class GPoint4:
    x1: float
    x2: float
    x3: float
    x4: float

    def __post_init__(self):
        if not all(math.isfinite(c) for c in self):
            raise ValueError(f"non-finite point coordinate in {self!r}")

    def __iter__(self) -> Iterator[float]:
        yield self.x1
        yield self.x2
        yield self.x3
        yield self.x4

    def __add__(self, v: GVector4) -> GPoint4:
        return GPoint4(self.x1 + v.x1, self.x2 + v.x2, self.x3 + v.x3, self.x4 + v.x4)

    def __sub__(self, other: GPoint4) -> GVector4:
        return GVector4(self.x1 - other.x1, self.x2 - other.x2,
                        self.x3 - other.x3, self.x4 - other.x4)

    @property
    def spatial(self) -> tuple[float, float, float]:
        return (self.x2, self.x3, self.x4)

    def to_tuple(self) -> tuple[float, float, float, float]:
        return (self.x1, self.x2, self.x3, self.x4)


def is_isotropic(v: GVector4) -> bool:
    """True when the absolute part is zero up to rounding dust.

    A literal zero always qualifies; computed vectors pass when
    ``|x1| <= 1e-12 * (1 + max |component|)``.
    """
    if v.x1 == 0.0:
        return True
    scale = max(abs(v.x1), abs(v.x2), abs(v.x3), abs(v.x4))
    return abs(v.x1) <= ISOTROPY_RTOL * (1.0 + scale)


def _spatial_dot(a: GVector4, b: GVector4) -> float:
    return a.x2 * b.x2 + a.x3 * b.x3 + a.x4 * b.x4


def g_dot(a: GVector4, b: GVector4) -> float:
    """Galilean scalar product of two vectors.

    Both non-isotropic: product of absolute parts. Exactly one isotropic: 0.
    Both isotropic: Euclidean product of the spatial parts.
    """
    iso_a = is_isotropic(a)
    iso_b = is_isotropic(b)
    if not iso_a and not iso_b:
        return a.x1 * b.x1
    if iso_a and iso_b:
        return _spatial_dot(a, b)
    return 0.0


def g_norm(a: GVector4) -> float:
    if not is_isotropic(a):
        return abs(a.x1)
    return math.sqrt(_spatial_dot(a, a))


def g_distance(p: GPoint4, q: GPoint4) -> float:
    """Galilean distance between points.

    Simultaneous points (equal absolute coordinate, compared exactly) are
    separated by the Euclidean distance of their spatial parts; otherwise by
    the absolute time difference.
    """
    if p.x1 != q.x1:
        return abs(q.x1 - p.x1)
    return math.sqrt((q.x2 - p.x2) ** 2 + (q.x3 - p.x3) ** 2 + (q.x4 - p.x4) ** 2)


def _det3(m: list[list[float]]) -> float:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def g_cross(a: GVector4, b: GVector4, c: GVector4) -> GVector4:
    """Ternary cross product: determinant with first row ``(0, e2, e3, e4)``.

    The expansion along the first row gives signed cofactors for ``e2..e4``;
    the absolute component of the result is always 0.
    """
    rows = [a.to_tuple(), b.to_tuple(), c.to_tuple()]

    def minor(col: int) -> float:
        return _det3([[r[j] for j in range(4) if j != col] for r in rows])

    return GVector4(0.0, -minor(1), minor(2), -minor(3))


def to_curve_order(p: tuple[float, float, float, float]) -> tuple[float, float, float, float]:
    """``(x, y, z, t)`` as written in the motion formulas -> ``(t, x, y, z)``."""
    x, y, z, t = p
    return (t, x, y, z)


def from_curve_order(p: tuple[float, float, float, float]) -> tuple[float, float, float, float]:
    t, x, y, z = p
    return (x, y, z, t)


def rotation_matrix(alpha: float, beta: float, gamma: float) -> np.ndarray:
    """Spatial rotation of a Galilean motion (z-x-z Euler angles)."""
    ca, sa = math.cos(alpha), math.sin(alpha)
    cb, sb = math.cos(beta), math.sin(beta)
    cg, sg = math.cos(gamma), math.sin(gamma)
    return np.array([
        [cb * ca - cg * sb * sa, sb * ca + cg * cb * sa, sg * sa],
        [-(cb * sa + cg * sb * ca), -sb * sa + cg * cb * ca, sg * ca],
        [sg * sb, -sg * cb, cg],
    ])


@dataclass(frozen=True)
class GalileanMotion:
    """Rotation, uniform boost and translation of G4.

    Acts on ``(x, y, z, t)`` as
    ``(x, y, z) -> R (x, y, z) + v t (cos d1, cos d2, cos d3) + (a, b, c)``
    and ``t -> t + d``. The boost direction angles must satisfy
    ``cos^2 d1 + cos^2 d2 + cos^2 d3 = 1``; they are validated, never
    renormalised.
    """

    alpha: float = 0.0
    beta: float = 0.0
    gamma_angle: float = 0.0
    v: float = 0.0
    d1: float = 0.0
    d2: float = math.pi / 2
    d3: float = math.pi / 2
    ta: float = 0.0
    tb: float = 0.0
    tc: float = 0.0
    td: float = 0.0
    rotation: np.ndarray = field(init=False, repr=False, compare=False)
    direction: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        values = (self.alpha, self.beta, self.gamma_angle, self.v, self.d1, self.d2,
                  self.d3, self.ta, self.tb, self.tc, self.td)
        if not all(math.isfinite(x) for x in values):
            raise InvalidMotionError("motion parameters must be finite")
        direction = np.array([math.cos(self.d1), math.cos(self.d2), math.cos(self.d3)])
        err = abs(float(direction @ direction) - 1.0)
        if err > DIRECTION_TOL:
            raise InvalidMotionError(
                f"direction cosines do not satisfy cos^2 d1 + cos^2 d2 + cos^2 d3 = 1 "
                f"(off by {err:.3g})")
        object.__setattr__(self, "rotation",
                           rotation_matrix(self.alpha, self.beta, self.gamma_angle))
        object.__setattr__(self, "direction", direction)

    @classmethod
    def identity(cls) -> GalileanMotion:
        return cls()

    @classmethod
    def from_sequence(cls, values) -> GalileanMotion:
        """Build from ``alpha,beta,gamma,v,d1,d2,d3,a,b,c,d`` (CLI order)."""
        values = [float(x) for x in values]
        if len(values) != 11:
            raise InvalidMotionError(f"expected 11 motion parameters, got {len(values)}")
        return cls(*values)

    @classmethod
    def random(cls, rng: np.random.Generator, speed: float = 3.0,
               shift: float = 2.0) -> GalileanMotion:
        """A random valid motion; the boost direction is uniform on the sphere."""
        u = rng.normal(size=3)
        u /= np.linalg.norm(u)
        d1, d2, d3 = (float(math.acos(max(-1.0, min(1.0, c)))) for c in u)
        alpha, beta, gamma = rng.uniform(-math.pi, math.pi, size=3)
        return cls(float(alpha), float(beta), float(gamma),
                   float(rng.uniform(-speed, speed)), d1, d2, d3,
                   *(float(x) for x in rng.uniform(-shift, shift, size=4)))

    def as_sequence(self) -> list[float]:
        return [self.alpha, self.beta, self.gamma_angle, self.v, self.d1, self.d2,
                self.d3, self.ta, self.tb, self.tc, self.td]

    @property
    def boost(self) -> np.ndarray:
        """Boost velocity vector ``v (cos d1, cos d2, cos d3)``."""
        return self.v * self.direction

    @property
    def translation(self) -> np.ndarray:
        return np.array([self.ta, self.tb, self.tc])

    def apply_xyzt(self, p: tuple[float, float, float, float]) -> tuple[float, ...]:
        """Apply to ``(x, y, z, t)``."""
        x, y, z, t = p
        xyz = self.rotation @ np.array([x, y, z]) + self.boost * t + self.translation
        return (float(xyz[0]), float(xyz[1]), float(xyz[2]), t + self.td)

    def apply(self, p: GPoint4) -> GPoint4:
        return GPoint4(*to_curve_order(self.apply_xyzt(from_curve_order(p.to_tuple()))))

    def apply_vector(self, w: GVector4) -> GVector4:
        """Linear part of the motion, in curve order."""
        spatial = self.rotation @ np.array(w.spatial) + self.boost * w.x1
        return GVector4(w.x1, float(spatial[0]), float(spatial[1]), float(spatial[2]))


def apply_motion(m: GalileanMotion, p: GPoint4) -> GPoint4:
    return m.apply(p)


def apply_motion_to_vector(m: GalileanMotion, v: GVector4) -> GVector4:
    return m.apply_vector(v)
