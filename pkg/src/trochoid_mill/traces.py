"""Sampling rigs into traces, cusp/teeth counting, and family sweeps.

Traces are uniform-in-time samples over exactly one closure period (the
machine runs at constant rates, so uniform time is what the pen actually
draws).  Cusp counting works on pen speed: at a true cusp the pen speed
is exactly zero, so cusps are speed minima that refine to (numerically)
nothing, while trochoid "teeth" are speed minima that stay finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, List, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import minimize_scalar

from trochoid_mill.kinematics import (
    Frame,
    Point2,
    Rig,
    Scalar,
    closure_period,
    pen_speed_turntable,
)
from trochoid_mill.linear import LinearRig, linear_pen_position
from trochoid_mill.sliding import SlideDirection, SlideMethod, SlideOp, apply_slide


@dataclass(frozen=True, eq=False)
class Trace:
    """A sampled pen path: strictly increasing times, one point per time."""

    frame: Frame
    ts: np.ndarray
    xs: np.ndarray
    ys: np.ndarray
    rig_snapshot: Union[Rig, LinearRig]
    closed: bool

    def __post_init__(self) -> None:
        ts = np.asarray(self.ts, dtype=float)
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        if not (ts.ndim == 1 and ts.shape == xs.shape == ys.shape):
            raise ValueError("ts, xs, ys must be 1-d arrays of equal length")
        if len(ts) == 0:
            raise ValueError("a trace needs at least one sample")
        if len(ts) > 1 and not np.all(np.diff(ts) > 0):
            raise ValueError("timestamps must be strictly increasing")
        for arr in (ts, xs, ys):
            arr.flags.writeable = False
        object.__setattr__(self, "ts", ts)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    def __len__(self) -> int:
        return len(self.ts)

    @property
    def samples(self) -> Iterator[Tuple[float, Point2]]:
        for t, x, y in zip(self.ts, self.xs, self.ys):
            yield float(t), Point2(float(x), float(y))

    def point(self, i: int) -> Point2:
        return Point2(float(self.xs[i]), float(self.ys[i]))


def sample_trace(rig: Rig, frame: Frame = Frame.TURNTABLE, samples_per_closure: int = 4096) -> Trace:
    """Sample one full closure period of a rig, endpoint duplicated.

    Returns samples_per_closure + 1 points at uniform time spacing; the
    default 4096 gives the busiest supported figures a few hundred points
    per lobe.
    """
    if not isinstance(samples_per_closure, int) or samples_per_closure < 16:
        raise ValueError(f"samples_per_closure must be an integer >= 16, got {samples_per_closure}")
    if not isinstance(frame, Frame):
        raise TypeError("frame must be a Frame")
    period = closure_period(rig)
    ts = np.linspace(0.0, period, samples_per_closure + 1)
    a_f, b_f = float(rig.a), float(rig.b)
    s = rig.polarization.sign
    if frame is Frame.TURNTABLE:
        theta = float(rig.omega_table) * ts + rig.phase_table
        combined = float(rig.combined_frequency) * ts + (rig.phase_table + s * rig.phase_pen)
        xs = a_f * np.cos(theta) + b_f * np.cos(combined)
        ys = a_f * np.sin(theta) + b_f * np.sin(combined)
    else:
        pen_angle = s * (float(rig.omega_pen) * ts + rig.phase_pen)
        xs = a_f + b_f * np.cos(pen_angle)
        ys = b_f * np.sin(pen_angle)
    return Trace(frame=frame, ts=ts, xs=xs, ys=ys, rig_snapshot=rig, closed=True)


def sample_linear(rig: LinearRig, t_end: float, n: int) -> Trace:
    """n uniform samples of the rail rig on [0, t_end]; never closed."""
    if not t_end > 0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n}")
    ts = np.linspace(0.0, float(t_end), n)
    r_f, big_r, w = float(rig.r), float(rig.R), float(rig.omega)
    phase = w * ts
    xs = r_f * w * ts + big_r * np.sin(phase)
    ys = big_r + big_r * np.cos(phase)
    return Trace(frame=Frame.LAB, ts=ts, xs=xs, ys=ys, rig_snapshot=rig, closed=False)


class AmbiguousCuspCountError(Exception):
    """A speed minimum sits too close to the cusp threshold to call either way."""

    def __init__(self, minima: Sequence[float], threshold: float):
        self.minima = list(minima)
        self.threshold = threshold
        super().__init__(
            f"speed minima {self.minima} too close to cusp threshold {threshold:g}"
        )


def _grid_speeds(rig: Rig, ts: np.ndarray) -> np.ndarray:
    # vectorized twin of pen_velocity_turntable
    s = rig.polarization.sign
    a_f, b_f = float(rig.a), float(rig.b)
    w = float(rig.omega_table)
    c = float(rig.combined_frequency)
    theta = w * ts + rig.phase_table
    combined = c * ts + (rig.phase_table + s * rig.phase_pen)
    vx = -a_f * w * np.sin(theta) - b_f * c * np.sin(combined)
    vy = a_f * w * np.cos(theta) + b_f * c * np.cos(combined)
    return np.hypot(vx, vy)


def _cyclic_minima_groups(values: np.ndarray) -> List[Tuple[int, int]]:
    """Index groups (start, end incl., cyclic) of local minima, plateaus merged."""
    n = len(values)
    is_min = (values <= np.roll(values, 1)) & (values <= np.roll(values, -1))
    idx = np.flatnonzero(is_min)
    if len(idx) == 0 or len(idx) == n:
        return []
    groups: List[List[int]] = [[int(idx[0]), int(idx[0])]]
    for i in idx[1:]:
        if i == groups[-1][1] + 1:
            groups[-1][1] = int(i)
        else:
            groups.append([int(i), int(i)])
    # merge a group wrapping around the end into the one starting at 0
    if len(groups) > 1 and groups[0][0] == 0 and groups[-1][1] == n - 1:
        groups[0][0] = groups[-1][0] - n
        groups.pop()
    return [(g[0], g[1]) for g in groups]


def count_cusps(trace: Trace) -> int:
    """Count cusps (speed-minima at zero speed) of a closed trace.

    Each local minimum of pen speed on the sample grid is refined to
    machine precision; minima below 1e-6*(a+b)*max(omega_table, omega_pen)
    count as cusps.  If any minimum lands within a factor 10 of that
    threshold the count is declared ambiguous rather than guessed.  When
    no minimum reaches the threshold the curve has no cusps and the count
    of finite speed minima (the trochoid's "teeth") is returned instead.
    """
    if not trace.closed:
        raise ValueError("cusp counting needs a closed trace over one full closure period")
    rig = trace.rig_snapshot
    if not isinstance(rig, Rig):
        raise TypeError("cusp counting is defined for two-turntable rigs")
    ts = trace.ts[:-1]  # drop the duplicated endpoint
    dt = float(trace.ts[1] - trace.ts[0])
    speeds = _grid_speeds(rig, ts)
    groups = _cyclic_minima_groups(speeds)
    if not groups:
        return 0

    refined: List[float] = []
    for lo, hi in groups:
        t_lo = float(trace.ts[0]) + (lo - 1) * dt
        t_hi = float(trace.ts[0]) + (hi + 1) * dt
        res = minimize_scalar(
            lambda t: pen_speed_turntable(rig, t),
            bounds=(t_lo, t_hi),
            method="bounded",
            options={"xatol": 1e-12},
        )
        refined.append(float(res.fun))

    scale = float(rig.a) + float(rig.b)
    threshold = 1e-6 * scale * max(float(rig.omega_table), float(rig.omega_pen))
    if any(threshold / 10.0 <= m <= 10.0 * threshold for m in refined):
        raise AmbiguousCuspCountError(refined, threshold)
    cusps = sum(1 for m in refined if m < threshold)
    return cusps if cusps > 0 else len(refined)


@dataclass(frozen=True)
class FamilySpec:
    """A base rig plus an ordered list of signed slide magnitudes.

    Each step perturbs the *base* rig by its absolute value in the
    direction of its sign (STCP: center-distance nudge in cm; STCF:
    turntable detune in rad/s).  A zero step keeps the base unchanged, so
    sweeps like (-2, -1, 0, +1) bracket the unperturbed curve.
    """

    base: Rig
    method: SlideMethod
    steps: Tuple[Scalar, ...] = field(default=())

    def __post_init__(self) -> None:
        if not isinstance(self.method, SlideMethod):
            raise TypeError("method must be a SlideMethod")
        steps = tuple(self.steps)
        if not steps:
            raise ValueError("steps must be nonempty")
        object.__setattr__(self, "steps", steps)

    def rigs(self) -> List[Rig]:
        out = []
        for i, step in enumerate(self.steps):
            try:
                if step == 0:
                    out.append(self.base)
                else:
                    direction = SlideDirection.FORWARD if step > 0 else SlideDirection.BACKWARD
                    op = SlideOp(method=self.method, magnitude=abs(step), direction=direction)
                    out.append(apply_slide(self.base, op))
            except (ValueError, TypeError) as exc:
                raise ValueError(f"family step {i} ({step!r}) is invalid: {exc}") from exc
        return out


def sweep_family(spec: FamilySpec, frame: Frame = Frame.TURNTABLE, samples: int = 4096) -> List[Trace]:
    """One trace per family step, in step order."""
    return [sample_trace(rig, frame, samples) for rig in spec.rigs()]
