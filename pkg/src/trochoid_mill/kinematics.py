"""Exact kinematics of the two-turntable rig.

Geometry: a turntable spins about the origin at frequency ``omega_table``
(rad/s).  A second, smaller tablet is mounted with its center at distance
``a`` from the origin and spins about its own center at ``omega_pen``.
The pen is fixed to the tablet at radius ``b``.  With anti polarization
the tablet spins against the turntable's sense, so relative to the sheet
the two angular rates add; with co polarization it spins the same way and
the rates subtract.

In the laboratory frame the tablet center never moves: the pen runs on a
circle of radius ``b`` around the fixed point ``(a, 0)``.  On the turntable
sheet (the rotating frame) the same motion traces epitrochoids,
hypotrochoids, centered ellipses, line segments and circles.  Frequencies
are exact rationals so commensurability, closure and rolling conditions are
decided exactly, never by floating-point luck.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Optional, Union

Scalar = Union[int, float, Fraction]

TWO_PI = 2.0 * math.pi


def as_frequency(value: Union[int, str, Fraction]) -> Fraction:
    """Validate and normalize a frequency to a positive Fraction in lowest terms.

    Accepts integers, Fractions and fraction strings like ``"15"`` or
    ``"3/4"``.  Floats are rejected: commensurability decisions (closure,
    rolling, classification) need exact ratios, and a float smuggles in a
    binary approximation of whatever the caller meant.
    """
    if isinstance(value, bool):
        raise TypeError("frequency must be a rational number, not a bool")
    if isinstance(value, float):
        raise TypeError(
            "frequency must be an exact rational (int, Fraction or 'p/q' string), not a float"
        )
    if isinstance(value, Fraction):
        freq = value
    elif isinstance(value, int):
        freq = Fraction(value)
    elif isinstance(value, str):
        text = value.strip()
        # "p" or "p/q" only; a decimal like "2.5" is rejected for the same
        # reason a float is, even though Fraction() would happily parse it.
        if not re.fullmatch(r"[+-]?\d+(?:/\d+)?", text):
            raise ValueError(f"not a valid frequency: {value!r}")
        try:
            freq = Fraction(text)
        except ZeroDivisionError as exc:
            raise ValueError(f"not a valid frequency: {value!r}") from exc
    else:
        raise TypeError(f"frequency must be int, str or Fraction, got {type(value).__name__}")
    if freq <= 0:
        raise ValueError(f"frequency must be positive, got {freq}")
    return freq


def _check_length(name: str, value: Scalar) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, float, Fraction)):
        raise TypeError(f"{name} must be a real number, got {type(value).__name__}")
    if isinstance(value, float) and not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    if value < 0:
        raise ValueError(f"{name} must be >= 0, got {value}")


def _normalize_phase(name: str, value: float) -> float:
    """Reduce a phase angle into [0, 2*pi)."""
    if isinstance(value, bool) or not isinstance(value, (int, float, Fraction)):
        raise TypeError(f"{name} must be a real number, got {type(value).__name__}")
    phase = float(value)
    if not math.isfinite(phase):
        raise ValueError(f"{name} must be finite, got {value}")
    if 0.0 <= phase < TWO_PI:
        return phase
    phase = math.fmod(phase, TWO_PI)
    if phase < 0.0:
        phase += TWO_PI
    if phase >= TWO_PI:  # fmod rounding can land exactly on 2*pi
        phase -= TWO_PI
    return phase


class Polarization(Enum):
    """Spin sense of the pen tablet relative to the turntable."""

    ANTI = "anti"  # opposite spin senses; seen from the sheet the rates add
    CO = "co"  # same spin sense; seen from the sheet the rates subtract

    @property
    def sign(self) -> int:
        return 1 if self is Polarization.ANTI else -1


class Frame(Enum):
    """Reference frame a trace is expressed in."""

    TURNTABLE = "table"
    LAB = "lab"


class Point2(NamedTuple):
    x: float
    y: float


class SlideDirection(Enum):
    """Sign of the contact-point slip between tablet rim and turntable sheet."""

    FORWARD = "forward"
    BACKWARD = "backward"
    NONE = "none"


@dataclass(frozen=True)
class Rig:
    """Parameter set of the two-turntable machine.

    ``a`` is the center distance (cm), ``b`` the pen radius on the tablet
    (cm).  ``omega_table`` and ``omega_pen`` are exact rational angular
    frequencies (rad/s, always positive; the spin *sense* lives in
    ``polarization``).  Phases are start angles in [0, 2*pi) and are
    normalized on construction.
    """

    a: Scalar
    b: Scalar
    omega_table: Fraction
    omega_pen: Fraction
    polarization: Polarization
    phase_table: float = 0.0
    phase_pen: float = 0.0

    def __post_init__(self) -> None:
        _check_length("a", self.a)
        _check_length("b", self.b)
        if self.a == 0 and self.b == 0:
            raise ValueError("a and b cannot both be zero: the pen would sit on the axis")
        object.__setattr__(self, "omega_table", as_frequency(self.omega_table))
        object.__setattr__(self, "omega_pen", as_frequency(self.omega_pen))
        if not isinstance(self.polarization, Polarization):
            raise TypeError("polarization must be a Polarization")
        object.__setattr__(self, "phase_table", _normalize_phase("phase_table", self.phase_table))
        object.__setattr__(self, "phase_pen", _normalize_phase("phase_pen", self.phase_pen))

    @property
    def combined_frequency(self) -> Fraction:
        """Signed rate of the pen's combined angle in the turntable frame.

        The pen term's angle advances at ``omega_table + s*omega_pen`` where
        s is +1 (anti) or -1 (co).  May be zero or negative for co rigs.
        """
        return self.omega_table + self.polarization.sign * self.omega_pen


def pen_position_turntable(rig: Rig, t: float) -> Point2:
    """Pen position on the turntable sheet at time t.

    x = a*cos(theta) + b*cos(theta + s*phi)
    y = a*sin(theta) + b*sin(theta + s*phi)

    with theta = omega_table*t + phase_table and phi = omega_pen*t +
    phase_pen.  The combined angle is computed from the exact rational sum
    omega_table + s*omega_pen, so commensurate rigs close exactly.
    """
    s = rig.polarization.sign
    theta = float(rig.omega_table) * t + rig.phase_table
    combined = float(rig.combined_frequency) * t + (rig.phase_table + s * rig.phase_pen)
    return Point2(
        rig.a * math.cos(theta) + rig.b * math.cos(combined),
        rig.a * math.sin(theta) + rig.b * math.sin(combined),
    )


def pen_position_lab(rig: Rig, t: float) -> Point2:
    """Pen position in the laboratory frame at time t.

    The tablet center is pinned at (a, 0); only the pen angle moves:
    (a + b*cos(s*phi), b*sin(s*phi)) with phi = omega_pen*t + phase_pen.
    """
    s = rig.polarization.sign
    phi = float(rig.omega_pen) * t + rig.phase_pen
    return Point2(rig.a + rig.b * math.cos(s * phi), rig.b * math.sin(s * phi))


def lab_to_table(point: Point2, angle: float) -> Point2:
    """Express a lab-frame point on the turntable sheet.

    The sheet has rotated by ``angle``; the point's sheet coordinates are
    the lab coordinates rotated by +angle:

    X = x*cos(angle) - y*sin(angle)
    Y = x*sin(angle) + y*cos(angle)
    """
    c, s = math.cos(angle), math.sin(angle)
    x, y = point
    return Point2(x * c - y * s, x * s + y * c)


def table_to_lab(point: Point2, angle: float) -> Point2:
    """Inverse of :func:`lab_to_table`: rotate sheet coordinates by -angle."""
    c, s = math.cos(angle), math.sin(angle)
    x, y = point
    return Point2(x * c + y * s, -x * s + y * c)


def pen_velocity_turntable(rig: Rig, t: float) -> Point2:
    """Time derivative of :func:`pen_position_turntable`."""
    s = rig.polarization.sign
    w_table = float(rig.omega_table)
    w_comb = float(rig.combined_frequency)
    theta = w_table * t + rig.phase_table
    combined = w_comb * t + (rig.phase_table + s * rig.phase_pen)
    return Point2(
        -rig.a * w_table * math.sin(theta) - rig.b * w_comb * math.sin(combined),
        rig.a * w_table * math.cos(theta) + rig.b * w_comb * math.cos(combined),
    )


def pen_speed_turntable(rig: Rig, t: float) -> float:
    vx, vy = pen_velocity_turntable(rig, t)
    return math.hypot(vx, vy)


def rolling_residual(rig: Rig) -> Scalar:
    """Rim slip rate at the virtual contact point (cm/s); zero means pure rolling.

    Anti rigs roll on an inner guide circle of radius a - b, co rigs inside
    an outer ring of radius a + b.  The residual is

        anti: (a - b)*omega_table - b*omega_pen
        co:   (a + b)*omega_table - b*omega_pen

    computed through Python's numeric tower, so it is exact (int/Fraction)
    whenever a and b are exact.  Positive residual means the contact point
    runs ahead of the rim (forward slip), negative means it lags.
    """
    if rig.polarization is Polarization.ANTI:
        return (rig.a - rig.b) * rig.omega_table - rig.b * rig.omega_pen
    return (rig.a + rig.b) * rig.omega_table - rig.b * rig.omega_pen


def design_epicycloid(a: Scalar, n_e: int, omega_pen: Union[int, str, Fraction]) -> Rig:
    """Anti rig that rolls purely and closes with n_e outward cusps.

    Chooses b = a/(n_e + 1) and omega_table = omega_pen/n_e, which satisfies
    the anti rolling condition (a - b)*omega_table = b*omega_pen.
    """
    if not isinstance(n_e, int) or isinstance(n_e, bool) or n_e < 1:
        raise ValueError(f"n_e must be a positive integer, got {n_e!r}")
    _check_length("a", a)
    if a == 0:
        raise ValueError("a must be positive to design an epicycloid")
    omega = as_frequency(omega_pen)
    b = Fraction(a) / (n_e + 1) if isinstance(a, (int, Fraction)) else a / (n_e + 1)
    return Rig(a=a, b=b, omega_table=omega / n_e, omega_pen=omega, polarization=Polarization.ANTI)


def design_hypocycloid(a: Scalar, n_h: int, omega_pen: Union[int, str, Fraction]) -> Rig:
    """Co rig that rolls purely and closes with n_h inward cusps (n_h >= 2).

    Chooses b = a/(n_h - 1) and omega_table = omega_pen/n_h, which satisfies
    the co rolling condition (a + b)*omega_table = b*omega_pen.  n_h = 2 is
    the degenerate straight-line case (b = a).
    """
    if not isinstance(n_h, int) or isinstance(n_h, bool) or n_h < 2:
        raise ValueError(f"n_h must be an integer >= 2, got {n_h!r}")
    _check_length("a", a)
    if a == 0:
        raise ValueError("a must be positive to design a hypocycloid")
    omega = as_frequency(omega_pen)
    b = Fraction(a) / (n_h - 1) if isinstance(a, (int, Fraction)) else a / (n_h - 1)
    return Rig(a=a, b=b, omega_table=omega / n_h, omega_pen=omega, polarization=Polarization.CO)


def _fraction_gcd(p: Fraction, q: Fraction) -> Fraction:
    """Greatest common rational divisor; gcd(x, 0) = x."""
    return Fraction(
        math.gcd(p.numerator * q.denominator, q.numerator * p.denominator),
        p.denominator * q.denominator,
    )


def closure_fraction(rig: Rig) -> Fraction:
    """Exact rational k such that the turntable trace closes after k turns
    of a unit-frequency clock, i.e. closure time T = 2*pi*k."""
    comb = rig.combined_frequency
    base = _fraction_gcd(rig.omega_table, abs(comb))
    return 1 / base


def closure_period(rig: Rig) -> float:
    """Smallest T > 0 with pen_position_turntable(rig, t + T) == (rig, t).

    Both angles advance at rational rates (omega_table and omega_table +
    s*omega_pen), so the motion closes after 2*pi over their rational gcd.
    A zero combined rate (co rig with omega_pen == omega_table) leaves the
    pen term frozen and the period is the turntable's own 2*pi/omega_table,
    which the gcd convention gcd(x, 0) = x already yields.
    """
    k = closure_fraction(rig)
    return TWO_PI * (k.numerator / k.denominator)


@dataclass(frozen=True)
class Epicycloid:
    """Pure rolling, anti polarization, integer frequency ratio n = omega_pen/omega_table."""

    n: int


@dataclass(frozen=True)
class Hypocycloid:
    """Pure rolling, co polarization, integer frequency ratio n >= 2."""

    n: int


@dataclass(frozen=True)
class Epitrochoid:
    """Anti-polarization curve with rim slip (or commensurate non-integer roll)."""

    slide: SlideDirection
    roll_ratio: Optional[Fraction] = None  # set only for pure roll at non-integer ratio


@dataclass(frozen=True)
class Hypotrochoid:
    """Co-polarization curve with rim slip (or commensurate non-integer roll)."""

    slide: SlideDirection
    roll_ratio: Optional[Fraction] = None


@dataclass(frozen=True)
class Ellipse:
    """Centered ellipse traced by a co rig with omega_pen = 2*omega_table."""

    semi_major: Scalar
    semi_minor: Scalar
    eccentricity: float


@dataclass(frozen=True)
class LineSegment:
    """Degenerate ellipse: co rig, omega_pen = 2*omega_table, a = b."""

    half_length: Scalar


@dataclass(frozen=True)
class Circle:
    """One radius is zero: the pen runs on a circle."""

    radius: Scalar


CurveClass = Union[Epicycloid, Hypocycloid, Epitrochoid, Hypotrochoid, Ellipse, LineSegment, Circle]


def classify(rig: Rig, tol: float = 1e-9) -> CurveClass:
    """Name the curve a rig traces on the turntable sheet.

    Decision order:

    1. a == 0 or b == 0: a circle (radius b or a).
    2. co polarization with omega_pen exactly 2*omega_table: a centered
       ellipse with semi-axes a + b and |a - b|, collapsing to a line
       segment of half-length a + b when a == b.
    3. rolling residual zero within tol*b*omega_pen: pure rolling.  An
       integer frequency ratio gives an epicycloid/hypocycloid with that
       cusp count; a non-integer rational ratio still rolls and closes but
       has no integer cusp count, so it is reported as a trochoid with
       slide NONE and the reduced ratio attached.
    4. otherwise a trochoid, sliding forward when the residual is positive
       and backward when negative.

    tol is relative to the rim speed scale b*omega_pen and must lie in
    (0, 1).  The decision depends only on frequency ratios, so rescaling
    both frequencies by a common rational factor never changes the class.
    """
    if not (isinstance(tol, (int, float)) and 0.0 < tol < 1.0):
        raise ValueError(f"tol must lie in (0, 1), got {tol!r}")

    if rig.a == 0:
        return Circle(radius=rig.b)
    if rig.b == 0:
        return Circle(radius=rig.a)

    anti = rig.polarization is Polarization.ANTI
    if not anti and rig.omega_pen == 2 * rig.omega_table:
        if rig.a == rig.b:
            return LineSegment(half_length=rig.a + rig.b)
        semi_major = rig.a + rig.b
        semi_minor = abs(rig.a - rig.b)
        ratio = float(semi_minor) / float(semi_major)
        return Ellipse(
            semi_major=semi_major,
            semi_minor=semi_minor,
            eccentricity=math.sqrt(max(0.0, 1.0 - ratio * ratio)),
        )

    residual = rolling_residual(rig)
    rim_scale = float(rig.b) * float(rig.omega_pen)
    if abs(float(residual)) <= tol * rim_scale:
        ratio = rig.omega_pen / rig.omega_table
        if ratio.denominator == 1 and (anti or ratio >= 3):
            n = ratio.numerator
            return Epicycloid(n=n) if anti else Hypocycloid(n=n)
        # Rolls purely but closes without an integer cusp count (or, for a
        # co rig, with a ratio too small to bend into cusps): report the
        # trochoid family with no slide and the exact ratio.
        if anti:
            return Epitrochoid(slide=SlideDirection.NONE, roll_ratio=ratio)
        return Hypotrochoid(slide=SlideDirection.NONE, roll_ratio=ratio)

    direction = SlideDirection.FORWARD if float(residual) > 0 else SlideDirection.BACKWARD
    return Epitrochoid(slide=direction) if anti else Hypotrochoid(slide=direction)
