"""Straight-rail variant: a spinning wheel translating along a line.

The wheel's center height is fixed at R above the rail; it translates at
r*omega while spinning at omega, so r = R reproduces honest rolling (a
cycloid), r > R adds forward slip and r < R backward slip.  The traced
point rides the rim at radius R:

    x(t) = r*omega*t + R*sin(omega*t)
    y(t) = R + R*cos(omega*t)

which hangs between y = 0 (rail contact) and y = 2R.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from trochoid_mill.kinematics import Point2, Scalar, as_frequency, _check_length


@dataclass(frozen=True)
class LinearRig:
    """Wheel on a rail: drive radius r (sets translation rate r*omega),
    pen radius R on the wheel, spin frequency omega (exact rational)."""

    r: Scalar
    R: Scalar
    omega: Fraction

    def __post_init__(self) -> None:
        _check_length("r", self.r)
        _check_length("R", self.R)
        if self.R == 0:
            raise ValueError("R must be positive: the pen sits on the wheel rim")
        object.__setattr__(self, "omega", as_frequency(self.omega))

    @classmethod
    def from_speed(
        cls, speed: Scalar, R: Scalar, omega: Union[int, str, Fraction]
    ) -> "LinearRig":
        """Alternate constructor from the translation speed V = r*omega."""
        w = as_frequency(omega)
        _check_length("speed", speed)
        r = Fraction(speed) / w if isinstance(speed, (int, Fraction)) else speed / float(w)
        return cls(r=r, R=R, omega=w)


class LinearCurveKind(Enum):
    CYCLOID = "cycloid"
    TROCHOID_FORWARD = "trochoid_forward"
    TROCHOID_BACKWARD = "trochoid_backward"


def linear_pen_position(rig: LinearRig, t: float) -> Point2:
    """Pen position (r*omega*t + R*sin(omega*t), R + R*cos(omega*t))."""
    w = float(rig.omega)
    phase = w * t
    return Point2(
        rig.r * w * t + rig.R * math.sin(phase),
        rig.R + rig.R * math.cos(phase),
    )


def linear_pen_velocity(rig: LinearRig, t: float) -> Point2:
    w = float(rig.omega)
    phase = w * t
    return Point2(rig.r * w + rig.R * w * math.cos(phase), -rig.R * w * math.sin(phase))


def linear_pen_speed(rig: LinearRig, t: float) -> float:
    vx, vy = linear_pen_velocity(rig, t)
    return math.hypot(vx, vy)


def linear_slide_fraction(rig: LinearRig) -> Scalar:
    """Slip as a fraction of the distance covered: (r - R)/r.

    Exact rational for rational radii.  Positive means forward slip,
    negative backward, zero pure rolling.  Undefined at r = 0 (the wheel
    spins in place; there is no covered distance to compare against).
    """
    if rig.r == 0:
        raise ValueError("slide fraction is undefined at r = 0: the wheel does not translate")
    diff = rig.r - rig.R
    if isinstance(diff, (int, Fraction)) and isinstance(rig.r, (int, Fraction)):
        return Fraction(diff) / Fraction(rig.r)
    return diff / rig.r


def classify_linear(rig: LinearRig) -> LinearCurveKind:
    """Tag the traced curve by the sign of r - R (exact comparison)."""
    if rig.r == rig.R:
        return LinearCurveKind.CYCLOID
    if rig.r > rig.R:
        return LinearCurveKind.TROCHOID_FORWARD
    return LinearCurveKind.TROCHOID_BACKWARD
