"""Controlled rolling-plus-sliding perturbations of a two-turntable rig.

Two knobs turn pure rolling into rolling plus a measured slip:

* STCP nudges the center distance ``a`` while every frequency stays put.
  The slip accumulated per radian of turntable rotation is exactly the
  nudge itself.
* STCF retunes the turntable frequency while the geometry stays put.  The
  slip per radian is ``b*omega_pen*(W' - W)/(W*W')``, an exact rational.

Both perturbations commute with plain rolling: nudging then rolling lands
the pen exactly where rolling then nudging does.  For STCF the perturbed
curve is the unperturbed one carried by a slow extra rotation at the
detuning rate, so the traced figure keeps its size and shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Tuple, Union

from trochoid_mill.kinematics import (
    Point2,
    Polarization,
    Rig,
    Scalar,
    SlideDirection,
    TWO_PI,
    as_frequency,
    lab_to_table,
    pen_position_turntable,
    rolling_residual,
)


class SlideMethod(Enum):
    STCP = "stcp"  # shift the tablet center: a -> a +/- magnitude (cm)
    STCF = "stcf"  # retune the turntable: omega_table -> omega_table +/- magnitude (rad/s)


@dataclass(frozen=True)
class SlideOp:
    """A single sliding perturbation: what to nudge, by how much, which way."""

    method: SlideMethod
    magnitude: Scalar
    direction: SlideDirection

    def __post_init__(self) -> None:
        if not isinstance(self.method, SlideMethod):
            raise TypeError("method must be a SlideMethod")
        if self.direction not in (SlideDirection.FORWARD, SlideDirection.BACKWARD):
            raise ValueError("direction must be FORWARD or BACKWARD")
        if isinstance(self.magnitude, str):
            object.__setattr__(self, "magnitude", Fraction(self.magnitude))
        if self.method is SlideMethod.STCF:
            # frequency detunings stay exact rationals, like frequencies
            object.__setattr__(self, "magnitude", as_frequency(self.magnitude))
        else:
            if isinstance(self.magnitude, bool) or not isinstance(
                self.magnitude, (int, float, Fraction)
            ):
                raise TypeError("magnitude must be a real number")
            if not self.magnitude > 0:
                raise ValueError(f"magnitude must be positive, got {self.magnitude}")

    @property
    def signed_magnitude(self) -> Scalar:
        return self.magnitude if self.direction is SlideDirection.FORWARD else -self.magnitude


def apply_stcp(rig: Rig, op: SlideOp) -> Rig:
    """Shift the tablet center: a -> a + magnitude (forward) or a - magnitude (backward).

    All other knobs are untouched.  Rejects a backward shift past the
    turntable axis (resulting a < 0).
    """
    if op.method is not SlideMethod.STCP:
        raise ValueError("apply_stcp requires an STCP op")
    new_a = rig.a + op.signed_magnitude
    if new_a < 0:
        raise ValueError(
            f"backward slide of {op.magnitude} would pull the tablet center past the axis (a={rig.a})"
        )
    return Rig(
        a=new_a,
        b=rig.b,
        omega_table=rig.omega_table,
        omega_pen=rig.omega_pen,
        polarization=rig.polarization,
        phase_table=rig.phase_table,
        phase_pen=rig.phase_pen,
    )


def apply_stcf(rig: Rig, op: SlideOp) -> Rig:
    """Retune the turntable: omega_table -> omega_table +/- magnitude, exact rational."""
    if op.method is not SlideMethod.STCF:
        raise ValueError("apply_stcf requires an STCF op")
    new_omega = rig.omega_table + op.signed_magnitude
    if new_omega <= 0:
        raise ValueError(
            f"backward detune of {op.magnitude} would stop or reverse the turntable "
            f"(omega_table={rig.omega_table})"
        )
    return Rig(
        a=rig.a,
        b=rig.b,
        omega_table=new_omega,
        omega_pen=rig.omega_pen,
        polarization=rig.polarization,
        phase_table=rig.phase_table,
        phase_pen=rig.phase_pen,
    )


def apply_slide(rig: Rig, op: SlideOp) -> Rig:
    """Apply either kind of sliding perturbation."""
    if op.method is SlideMethod.STCP:
        return apply_stcp(rig, op)
    return apply_stcf(rig, op)


@dataclass(frozen=True)
class SlideReport:
    """Slip bookkeeping for one perturbation.

    ``delta_v`` is the slip speed at the rolling contact (cm/s),
    ``rate_per_radian`` the slip length per radian of turntable rotation
    (cm/rad).  Both are exact rationals whenever the rig is.  ``delta_s``,
    the slip per full turntable revolution, is 2*pi times the rate and is
    a float only because of pi.  Positive values mean forward slip.
    """

    delta_v: Scalar
    rate_per_radian: Scalar

    @property
    def delta_s(self) -> float:
        return TWO_PI * float(self.rate_per_radian)

    @property
    def direction(self) -> SlideDirection:
        if self.rate_per_radian > 0:
            return SlideDirection.FORWARD
        if self.rate_per_radian < 0:
            return SlideDirection.BACKWARD
        return SlideDirection.NONE


_ROLL_TOL = 1e-9


def _require_pure_rolling(rig: Rig, what: str) -> None:
    slip = abs(float(rolling_residual(rig)))
    if slip > _ROLL_TOL * float(rig.b) * float(rig.omega_pen):
        raise ValueError(f"{what} must satisfy the pure-rolling condition; slip rate {slip:g} cm/s")


def _require_same_fields(base: Rig, perturbed: Rig, allowed: str) -> None:
    fields = {"a", "b", "omega_table", "omega_pen", "polarization", "phase_table", "phase_pen"}
    for name in sorted(fields - {allowed}):
        if getattr(base, name) != getattr(perturbed, name):
            raise ValueError(f"perturbed rig may differ from base only in {allowed}; {name} differs")


def slide_report_stcp(base: Rig, perturbed: Rig) -> SlideReport:
    """Slip report for a center-distance change on a pure-rolling base.

    The slip speed is the perturbed rig's rolling residual (the base's is
    zero), and the slip per radian of turntable rotation is exactly the
    center-distance change itself, sign and all.
    """
    _require_same_fields(base, perturbed, "a")
    _require_pure_rolling(base, "base rig")
    delta_v = rolling_residual(perturbed) - rolling_residual(base)
    # numeric tower: Fraction stays Fraction, float stays float
    return SlideReport(delta_v=delta_v, rate_per_radian=delta_v / base.omega_table)


def slide_report_stcf(base: Rig, perturbed: Rig) -> SlideReport:
    """Slip report for a turntable retune on a pure-rolling base.

    Slip accumulates over the *new* turntable period, so the rate per
    radian is delta_v / omega_table', which reduces to the exact rational
    b*omega_pen*(W' - W)/(W*W') when the base rolls purely.
    """
    _require_same_fields(base, perturbed, "omega_table")
    _require_pure_rolling(base, "base rig")
    delta_v = rolling_residual(perturbed) - rolling_residual(base)
    return SlideReport(delta_v=delta_v, rate_per_radian=delta_v / perturbed.omega_table)


def roll_then_slide_stcp(rig: Rig, t: float, direction: SlideDirection, delta_a: Scalar) -> Point2:
    """Roll through time t, then shift the tablet center by delta_a.

    The shift moves the pen along the instantaneous center line (the ray
    from the origin through the tablet center), so the result is the base
    position plus (delta_a*cos(theta), delta_a*sin(theta)).  delta_a = 0 is
    allowed and is the identity.
    """
    if delta_a < 0:
        raise ValueError(f"delta_a must be >= 0, got {delta_a}")
    if direction is SlideDirection.BACKWARD and rig.a - delta_a < 0:
        raise ValueError(f"backward slide of {delta_a} would pull the tablet center past the axis")
    signed = delta_a if direction is SlideDirection.FORWARD else -delta_a
    base = pen_position_turntable(rig, t)
    theta = float(rig.omega_table) * t + rig.phase_table
    return Point2(base.x + signed * math.cos(theta), base.y + signed * math.sin(theta))


# The commutator check drives a tiny explicit state machine so that the two
# operation orders are genuinely computed as two different programs.
@dataclass(frozen=True)
class _PenState:
    a: Scalar
    theta: float
    phi: float


def _rolled(state: _PenState, rig: Rig, dt: float) -> _PenState:
    return _PenState(
        a=state.a,
        theta=state.theta + float(rig.omega_table) * dt,
        phi=state.phi + float(rig.omega_pen) * dt,
    )


def _slid(state: _PenState, rig: Rig, op: SlideOp, dt: float) -> _PenState:
    if op.method is SlideMethod.STCP:
        # instantaneous center shift; angles frozen
        new_a = state.a + op.signed_magnitude
        if new_a < 0:
            raise ValueError("slide would pull the tablet center past the axis")
        return _PenState(a=new_a, theta=state.theta, phi=state.phi)
    # STCF slide: the retuned turntable advances alone for dt, pen clock stopped
    new_omega = rig.omega_table + op.signed_magnitude
    if new_omega <= 0:
        raise ValueError("detune would stop or reverse the turntable")
    return _PenState(a=state.a, theta=state.theta + float(new_omega) * dt, phi=state.phi)


def _pen_of_state(state: _PenState, rig: Rig) -> Point2:
    combined = state.theta + rig.polarization.sign * state.phi
    return Point2(
        state.a * math.cos(state.theta) + rig.b * math.cos(combined),
        state.a * math.sin(state.theta) + rig.b * math.sin(combined),
    )


def commutator_residual(rig: Rig, op: SlideOp, t1: float, t2: float) -> float:
    """Distance between (roll t1, then slide t2) and (slide t2, then roll t1).

    For STCP the slide is instantaneous and t2 is ignored.  Rolling and
    sliding act on disjoint parts of the pen state, so the two orders agree
    to rounding; the returned distance is bounded by 1e-9 cm in practice.
    """
    start = _PenState(a=rig.a, theta=rig.phase_table, phi=rig.phase_pen)
    roll_first = _pen_of_state(_slid(_rolled(start, rig, t1), rig, op, t2), rig)
    slide_first = _pen_of_state(_rolled(_slid(start, rig, op, t2), rig, t1), rig)
    return math.hypot(roll_first.x - slide_first.x, roll_first.y - slide_first.y)


def stcf_rotation_identity(
    rig: Rig,
    delta_omega: Union[int, str, Fraction],
    direction: SlideDirection,
    t: float,
) -> Tuple[Point2, Point2]:
    """Evaluate a turntable retune two ways: directly, and as a slow rotation.

    Returns (direct, rotated): the retuned rig's pen position computed from
    its own closed form, and the base rig's pen position rotated by
    +/-delta_omega*t.  The two coincide (within rounding): retuning the
    turntable only carries the whole undistorted figure around at the
    detuning rate, which is why retuned figures keep their size.
    """
    op = SlideOp(method=SlideMethod.STCF, magnitude=delta_omega, direction=direction)
    direct = pen_position_turntable(apply_stcf(rig, op), t)
    signed_rate = float(op.magnitude) if direction is SlideDirection.FORWARD else -float(op.magnitude)
    rotated = lab_to_table(pen_position_turntable(rig, t), signed_rate * t)
    return direct, rotated
