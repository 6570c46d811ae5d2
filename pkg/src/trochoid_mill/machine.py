"""Deterministic simulated-time machine behind the control service.

The machine advances in fixed ticks of simulated time (default 240 per
simulated second).  Angles are tracked per-axis against anchors: each
angle is anchor + rate * (ticks since anchor)/tick_rate, and a frequency
change simply re-anchors that axis at the current tick, so angles are
phase-continuous across knob turns and every run is a pure function of
(initial rig, message log, tick count).  No wall clock ever enters the
state, which is what makes recorded sessions replay bit-identically.

Knob changes apply between ticks.  Changing a or b moves the pen by at
most that distance (the center shifts, angles hold); changing a frequency
moves it not at all (only future rates change).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import cos, sin
from typing import Any, Dict, List, Mapping, Sequence, Tuple, Union

from trochoid_mill.kinematics import Point2, Polarization, Rig, table_to_lab
from trochoid_mill.wire import rig_to_wire, scalar_from_wire, _frequency_from_wire


# --- control messages --------------------------------------------------------


@dataclass(frozen=True)
class SetParam:
    name: str  # one of: a, b, omega_table, omega_pen
    value: Any


@dataclass(frozen=True)
class SetPolarization:
    value: Polarization


@dataclass(frozen=True)
class Start:
    pass


@dataclass(frozen=True)
class Pause:
    pass


@dataclass(frozen=True)
class Reset:
    pass


@dataclass(frozen=True)
class PenUp:
    pass


@dataclass(frozen=True)
class PenDown:
    pass


@dataclass(frozen=True)
class Snapshot:
    pass


ControlMessage = Union[SetParam, SetPolarization, Start, Pause, Reset, PenUp, PenDown, Snapshot]

_SIMPLE_MESSAGES = {
    "start": Start,
    "pause": Pause,
    "reset": Reset,
    "pen_up": PenUp,
    "pen_down": PenDown,
    "snapshot": Snapshot,
}

PARAM_NAMES = ("a", "b", "omega_table", "omega_pen")


class ControlError(Exception):
    """A rejected control message; code is machine-readable."""

    def __init__(self, code: str, detail: str):
        self.code = code
        self.detail = detail
        super().__init__(f"{code}: {detail}")

    def to_wire(self) -> Dict[str, str]:
        return {"type": "error", "code": self.code, "detail": self.detail}


def parse_message(data: Mapping[str, Any]) -> ControlMessage:
    """Decode a wire dict {type, ...} into a ControlMessage."""
    if not isinstance(data, Mapping):
        raise ControlError("InvalidValue", "message must be a JSON object")
    kind = data.get("type")
    if kind in _SIMPLE_MESSAGES:
        return _SIMPLE_MESSAGES[kind]()
    if kind == "set_param":
        name = data.get("name")
        if name not in PARAM_NAMES:
            raise ControlError("InvalidValue", f"unknown parameter {name!r}")
        if "value" not in data:
            raise ControlError("InvalidValue", "set_param needs a value")
        return SetParam(name=name, value=data["value"])
    if kind == "set_polarization":
        value = data.get("value")
        if value not in ("co", "anti"):
            raise ControlError("InvalidValue", f"polarization must be 'co' or 'anti', got {value!r}")
        return SetPolarization(value=Polarization(value))
    raise ControlError("InvalidValue", f"unknown message type {kind!r}")


def message_to_wire(msg: ControlMessage) -> Dict[str, Any]:
    if isinstance(msg, SetParam):
        return {"type": "set_param", "name": msg.name, "value": msg.value}
    if isinstance(msg, SetPolarization):
        return {"type": "set_polarization", "value": msg.value.value}
    for name, cls in _SIMPLE_MESSAGES.items():
        if isinstance(msg, cls):
            return {"type": name}
    raise TypeError(f"not a control message: {type(msg).__name__}")


# --- samples and pen history --------------------------------------------------


@dataclass(frozen=True)
class SampleEvent:
    t_sim: float
    table_point: Point2
    lab_point: Point2
    pen_down: bool
    rig_revision: int

    def to_wire(self) -> Dict[str, Any]:
        return {
            "type": "sample",
            "t": self.t_sim,
            "table": [self.table_point.x, self.table_point.y],
            "lab": [self.lab_point.x, self.lab_point.y],
            "pen_down": self.pen_down,
            "rev": self.rig_revision,
        }


@dataclass
class PenSegment:
    """A run of consecutive pen-down samples under one rig revision."""

    revision: int
    xs: List[float]
    ys: List[float]


# --- the machine ---------------------------------------------------------------


class Machine:
    """Tick-stepped two-turntable machine with phase-continuous knobs."""

    def __init__(self, rig: Rig, tick_rate: int = 240):
        if not isinstance(tick_rate, int) or tick_rate <= 0:
            raise ValueError(f"tick_rate must be a positive integer, got {tick_rate}")
        self.rig = rig
        self.tick_rate = tick_rate
        self.tick = 0
        self.running = False
        self.pen_down = False
        self.revision = 0
        self.segments: List[PenSegment] = []
        self._segment_open = False
        self._anchor_theta_tick = 0
        self._anchor_theta = rig.phase_table
        self._anchor_phi_tick = 0
        self._anchor_phi = rig.phase_pen

    # angle bookkeeping

    def _theta_at(self, tick: int) -> float:
        dt = (tick - self._anchor_theta_tick) / self.tick_rate
        return self._anchor_theta + float(self.rig.omega_table) * dt

    def _phi_at(self, tick: int) -> float:
        dt = (tick - self._anchor_phi_tick) / self.tick_rate
        return self._anchor_phi + float(self.rig.omega_pen) * dt

    @property
    def theta(self) -> float:
        return self._theta_at(self.tick)

    @property
    def phi(self) -> float:
        return self._phi_at(self.tick)

    @property
    def t_sim(self) -> float:
        return self.tick / self.tick_rate

    def _table_point(self, theta: float, phi: float) -> Point2:
        combined = theta + self.rig.polarization.sign * phi
        return Point2(
            self.rig.a * cos(theta) + self.rig.b * cos(combined),
            self.rig.a * sin(theta) + self.rig.b * sin(combined),
        )

    # message handling (applied between ticks)

    def handle(self, msg: ControlMessage) -> Dict[str, Any]:
        """Apply one control message; returns the ack dict, raises ControlError."""
        if isinstance(msg, SetParam):
            return self._set_param(msg)
        if isinstance(msg, SetPolarization):
            if self.running:
                raise ControlError(
                    "PolarizationWhileRunning",
                    "polarization can only be flipped while paused",
                )
            if msg.value is not self.rig.polarization:
                self.rig = replace(self.rig, polarization=msg.value)
                self.revision += 1
                self._segment_open = False
            return self._ack("set_polarization", rev=self.revision)
        if isinstance(msg, Start):
            self.running = True
            return self._ack("start")
        if isinstance(msg, Pause):
            self.running = False
            return self._ack("pause")
        if isinstance(msg, Reset):
            self.tick = 0
            self._anchor_theta_tick = 0
            self._anchor_theta = self.rig.phase_table
            self._anchor_phi_tick = 0
            self._anchor_phi = self.rig.phase_pen
            self.pen_down = False
            self.segments = []
            self._segment_open = False
            return self._ack("reset")
        if isinstance(msg, PenUp):
            self.pen_down = False
            self._segment_open = False
            return self._ack("pen_up")
        if isinstance(msg, PenDown):
            self.pen_down = True
            return self._ack("pen_down")
        if isinstance(msg, Snapshot):
            return self._ack("snapshot", state=self.state_snapshot())
        raise ControlError("InvalidValue", f"unsupported message {type(msg).__name__}")

    def _set_param(self, msg: SetParam) -> Dict[str, Any]:
        name = msg.name
        if name not in PARAM_NAMES:
            raise ControlError("InvalidValue", f"unknown parameter {name!r}")
        try:
            if name in ("omega_table", "omega_pen"):
                value = _frequency_from_wire(msg.value)
            else:
                value = scalar_from_wire(msg.value)
            new_rig = replace(self.rig, **{name: value})
        except (ValueError, TypeError) as exc:
            raise ControlError("InvalidValue", str(exc)) from exc
        # frequency changes re-anchor their axis at the current tick so the
        # angle stays continuous while the rate changes under it
        if name == "omega_table":
            self._anchor_theta = self.theta
            self._anchor_theta_tick = self.tick
        elif name == "omega_pen":
            self._anchor_phi = self.phi
            self._anchor_phi_tick = self.tick
        self.rig = new_rig
        self.revision += 1
        self._segment_open = False
        return self._ack("set_param", rev=self.revision)

    def _ack(self, message: str, **extra: Any) -> Dict[str, Any]:
        ack: Dict[str, Any] = {"type": "ack", "message": message}
        ack.update(extra)
        return ack

    # stepping

    def step(self) -> SampleEvent:
        """Advance one tick and emit the sample; only valid while running."""
        if not self.running:
            raise RuntimeError("machine is paused; step has no meaning")
        self.tick += 1
        theta = self._theta_at(self.tick)
        phi = self._phi_at(self.tick)
        table_point = self._table_point(theta, phi)
        lab_point = table_to_lab(table_point, theta)
        if self.pen_down:
            if not self._segment_open or self.segments[-1].revision != self.revision:
                self.segments.append(PenSegment(revision=self.revision, xs=[], ys=[]))
                self._segment_open = True
            self.segments[-1].xs.append(table_point.x)
            self.segments[-1].ys.append(table_point.y)
        return SampleEvent(
            t_sim=self.t_sim,
            table_point=table_point,
            lab_point=lab_point,
            pen_down=self.pen_down,
            rig_revision=self.revision,
        )

    def state_snapshot(self) -> Dict[str, Any]:
        return {
            "rig": rig_to_wire(self.rig),
            "theta": self.theta,
            "phi": self.phi,
            "t_sim": self.t_sim,
            "running": self.running,
            "pen_down": self.pen_down,
            "tick_rate": self.tick_rate,
            "revision": self.revision,
        }

    def pen_polylines(self) -> List[Tuple[int, List[Tuple[float, float]]]]:
        """Pen-down table-frame polylines with their revisions, oldest first."""
        return [
            (seg.revision, list(zip(seg.xs, seg.ys)))
            for seg in self.segments
            if seg.xs
        ]


def replay(
    rig: Rig,
    log: Sequence[Tuple[int, Mapping[str, Any]]],
    ticks: int,
    tick_rate: int = 240,
) -> List[SampleEvent]:
    """Re-run a recorded session: (tick_stamp, message) pairs against a fresh machine.

    A stamp of k means "applied after k ticks had been stepped" (stamps from
    a live session are the machine tick at receipt, so pauses stack messages
    on one stamp).  Returns the emitted samples; if the log leaves the
    machine paused with no further messages, the stream simply ends there.
    Replay is unthrottled and bit-identical to the live run.
    """
    if ticks < 0:
        raise ValueError("ticks must be >= 0")
    stamps = [int(stamp) for stamp, _ in log]
    if any(later < earlier for earlier, later in zip(stamps, stamps[1:])):
        raise ValueError("log stamps must be non-decreasing")
    machine = Machine(rig, tick_rate)
    events: List[SampleEvent] = []
    i = 0
    while len(events) < ticks:
        while i < len(log) and stamps[i] <= machine.tick:
            machine.handle(parse_message(log[i][1]))
            i += 1
        if not machine.running:
            if i >= len(log):
                break
            # everything stamped <= current tick was drained above
            raise ValueError(
                f"log stamps a message at tick {stamps[i]} but the machine is paused at {machine.tick}"
            )
        events.append(machine.step())
    return events
