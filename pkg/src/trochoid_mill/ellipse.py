"""Centered-ellipse geometry for the co-rotating double-speed rig.

A co-polarized rig with the tablet spinning at exactly twice the turntable
rate traces a centered ellipse on the sheet: semi-major axis a + b along
the start line, semi-minor |a - b| across it.  This module turns such rigs
into ellipse specs and provides the two polar radius forms (one measured
from the center, one from a focus -- their angle arguments are different
quantities and are never interconverted) plus an on-curve residual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

from trochoid_mill.kinematics import Point2, Polarization, Rig


class LineSegmentDegeneracy(ValueError):
    """Raised when a = b: the 'ellipse' collapses to a straight stroke."""

    def __init__(self, half_length: float):
        self.half_length = half_length
        super().__init__(f"degenerate ellipse: line segment of half-length {half_length}")


class CircleDegeneracy(ValueError):
    """Raised when a = 0: the pen just runs on a circle."""

    def __init__(self, radius: float):
        self.radius = radius
        super().__init__(f"degenerate ellipse: circle of radius {radius}")


@dataclass(frozen=True)
class EllipseSpec:
    """Semi-axes and eccentricity of a centered ellipse, mutually consistent."""

    semi_major: float
    semi_minor: float
    eccentricity: float

    def __post_init__(self) -> None:
        a_axis, b_axis, e = self.semi_major, self.semi_minor, self.eccentricity
        if not (a_axis > 0 and b_axis > 0):
            raise ValueError(f"semi-axes must be positive, got A={a_axis}, B={b_axis}")
        if b_axis > a_axis:
            raise ValueError(f"semi-minor axis exceeds semi-major: A={a_axis}, B={b_axis}")
        if not (0.0 <= e < 1.0):
            raise ValueError(f"eccentricity must lie in [0, 1), got {e}")
        expected_b = a_axis * math.sqrt(1.0 - e * e)
        if abs(b_axis - expected_b) > 1e-12 * a_axis:
            raise ValueError(
                f"inconsistent ellipse: B={b_axis} but A*sqrt(1-e^2)={expected_b}"
            )

    @classmethod
    def from_axes(cls, semi_major: float, semi_minor: float) -> "EllipseSpec":
        a_axis = float(semi_major)
        b_axis = float(semi_minor)
        if not (a_axis > 0 and 0 < b_axis <= a_axis):
            raise ValueError(f"need 0 < B <= A, got A={a_axis}, B={b_axis}")
        ratio = b_axis / a_axis
        e = math.sqrt(max(0.0, 1.0 - ratio * ratio))
        return cls(semi_major=a_axis, semi_minor=b_axis, eccentricity=e)


def ellipse_from_rig(rig: Rig) -> EllipseSpec:
    """Ellipse spec of a co rig with omega_pen exactly 2*omega_table.

    Degenerate cases raise typed signals instead of returning a spec with
    e = 1 or a zero axis: a = b collapses to a line segment of half-length
    a + b, a = 0 to a circle of radius b.
    """
    if rig.polarization is not Polarization.CO or rig.omega_pen != 2 * rig.omega_table:
        raise ValueError(
            "only a co-polarized rig with omega_pen = 2*omega_table traces a centered ellipse"
        )
    if rig.a == rig.b:
        raise LineSegmentDegeneracy(float(rig.a + rig.b))
    if rig.a == 0:
        raise CircleDegeneracy(float(rig.b))
    return EllipseSpec.from_axes(float(rig.a + rig.b), float(abs(rig.a - rig.b)))


def ellipse_polar_focal(spec: EllipseSpec, angle: float) -> float:
    """Radius measured from a focus, angle measured from the periapsis direction.

    r = A(1 - e^2)/(1 + e*cos(angle)); angle 0 gives the near vertex
    A(1 - e), angle pi the far vertex A(1 + e).
    """
    e = spec.eccentricity
    return spec.semi_major * (1.0 - e * e) / (1.0 + e * math.cos(angle))


def ellipse_polar_centered(spec: EllipseSpec, angle: float) -> float:
    """Radius measured from the center, angle from the major axis.

    r = A*sqrt((1 - e^2)/(1 - e^2 cos^2(angle))); angle 0 gives A,
    angle pi/2 gives B.
    """
    e = spec.eccentricity
    e2 = e * e
    c = math.cos(angle)
    return spec.semi_major * math.sqrt((1.0 - e2) / (1.0 - e2 * c * c))


def on_ellipse_residual(point: Point2, spec: EllipseSpec) -> float:
    """|x^2/A^2 + y^2/B^2 - 1|: zero iff the point lies on the ellipse."""
    x, y = point
    return abs(
        (x / spec.semi_major) ** 2 + (y / spec.semi_minor) ** 2 - 1.0
    )


def focal_points(spec: EllipseSpec) -> Tuple[Point2, Point2]:
    """The two foci, at (+/- A*e, 0) for a major axis along x."""
    c = spec.semi_major * spec.eccentricity
    return Point2(c, 0.0), Point2(-c, 0.0)
