"""Flat serialization of rigs, ops and curve classes.

Frequencies travel as fraction strings ("3", "15/4"), never floats: the
wire format preserves the exactness the core relies on.  Lengths keep
their numeric type (int/float) or become fraction strings when they are
non-integer rationals.  Dicts are built in a fixed key order so JSON
dumps are stable for golden tests.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, Mapping, Union

from trochoid_mill.ellipse import EllipseSpec
from trochoid_mill.kinematics import (
    Circle,
    CurveClass,
    Ellipse,
    Epicycloid,
    Epitrochoid,
    Hypocycloid,
    Hypotrochoid,
    LineSegment,
    Polarization,
    Rig,
    Scalar,
    SlideDirection,
    as_frequency,
)
from trochoid_mill.linear import LinearRig
from trochoid_mill.sliding import SlideMethod, SlideOp

WireScalar = Union[int, float, str]


def scalar_to_wire(value: Scalar) -> WireScalar:
    """Lossless scalar encoding: exact rationals stay exact."""
    if isinstance(value, bool):
        raise TypeError("bool is not a length")
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    if isinstance(value, (int, float)):
        return value
    raise TypeError(f"cannot serialize {type(value).__name__} as a scalar")


def scalar_from_wire(value: WireScalar) -> Scalar:
    if isinstance(value, bool):
        raise TypeError("bool is not a length")
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        try:
            frac = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a numeric value: {value!r}") from exc
        return int(frac) if frac.denominator == 1 else frac
    raise TypeError(f"cannot parse {type(value).__name__} as a scalar")


def frequency_to_wire(freq: Fraction) -> str:
    return str(freq)


def rig_to_wire(rig: Rig) -> Dict[str, Any]:
    return {
        "a": scalar_to_wire(rig.a),
        "b": scalar_to_wire(rig.b),
        "omega_table": frequency_to_wire(rig.omega_table),
        "omega_pen": frequency_to_wire(rig.omega_pen),
        "polarization": rig.polarization.value,
        "phase_table": rig.phase_table,
        "phase_pen": rig.phase_pen,
    }


_RIG_KEYS = {"a", "b", "omega_table", "omega_pen", "polarization", "phase_table", "phase_pen"}


def rig_from_wire(data: Mapping[str, Any]) -> Rig:
    unknown = set(data) - _RIG_KEYS
    if unknown:
        raise ValueError(f"unknown rig fields: {sorted(unknown)}")
    missing = {"a", "b", "omega_table", "omega_pen", "polarization"} - set(data)
    if missing:
        raise ValueError(f"missing rig fields: {sorted(missing)}")
    pol = data["polarization"]
    if not isinstance(pol, str) or pol not in ("co", "anti"):
        raise ValueError(f"polarization must be 'co' or 'anti', got {pol!r}")
    if isinstance(data["omega_table"], float) or isinstance(data["omega_pen"], float):
        raise TypeError("frequencies must be exact: integers or 'p/q' strings, not floats")
    return Rig(
        a=scalar_from_wire(data["a"]),
        b=scalar_from_wire(data["b"]),
        omega_table=_frequency_from_wire(data["omega_table"]),
        omega_pen=_frequency_from_wire(data["omega_pen"]),
        polarization=Polarization(pol),
        phase_table=float(data.get("phase_table", 0.0)),
        phase_pen=float(data.get("phase_pen", 0.0)),
    )


def _frequency_from_wire(value: Any) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"frequency must be an int or 'p/q' string, got {value!r}")
    if not isinstance(value, (int, str)):
        raise TypeError(f"frequency must be an int or 'p/q' string, got {type(value).__name__}")
    return as_frequency(value)


def linear_rig_to_wire(rig: LinearRig) -> Dict[str, Any]:
    return {
        "r": scalar_to_wire(rig.r),
        "R": scalar_to_wire(rig.R),
        "omega": frequency_to_wire(rig.omega),
    }


def linear_rig_from_wire(data: Mapping[str, Any]) -> LinearRig:
    unknown = set(data) - {"r", "R", "omega"}
    if unknown:
        raise ValueError(f"unknown linear rig fields: {sorted(unknown)}")
    missing = {"r", "R", "omega"} - set(data)
    if missing:
        raise ValueError(f"missing linear rig fields: {sorted(missing)}")
    return LinearRig(
        r=scalar_from_wire(data["r"]),
        R=scalar_from_wire(data["R"]),
        omega=_frequency_from_wire(data["omega"]),
    )


def slide_op_to_wire(op: SlideOp) -> Dict[str, str]:
    mag = op.magnitude
    if isinstance(mag, Fraction):
        mag_text = str(mag)
    elif isinstance(mag, int):
        mag_text = str(mag)
    else:
        mag_text = repr(float(mag))
    return {
        "method": op.method.value,
        "magnitude": mag_text,
        "direction": op.direction.value,
    }


def slide_op_from_wire(data: Mapping[str, Any]) -> SlideOp:
    missing = {"method", "magnitude", "direction"} - set(data)
    if missing:
        raise ValueError(f"missing slide op fields: {sorted(missing)}")
    method = data["method"]
    if method not in ("stcp", "stcf"):
        raise ValueError(f"method must be 'stcp' or 'stcf', got {method!r}")
    direction = data["direction"]
    if direction not in ("forward", "backward"):
        raise ValueError(f"direction must be 'forward' or 'backward', got {direction!r}")
    magnitude = data["magnitude"]
    if not isinstance(magnitude, str):
        raise TypeError("magnitude must travel as a decimal-or-fraction string")
    return SlideOp(
        method=SlideMethod(method),
        magnitude=Fraction(magnitude.strip()),
        direction=SlideDirection(direction),
    )


def ellipse_spec_to_wire(spec: EllipseSpec) -> Dict[str, float]:
    return {"A": spec.semi_major, "B": spec.semi_minor, "e": spec.eccentricity}


def curve_class_to_wire(curve: CurveClass) -> Dict[str, Any]:
    """Stable-key-order dict naming the curve, e.g. {"class": "epicycloid", "n": 5}."""
    if isinstance(curve, Epicycloid):
        return {"class": "epicycloid", "n": curve.n}
    if isinstance(curve, Hypocycloid):
        return {"class": "hypocycloid", "n": curve.n}
    if isinstance(curve, (Epitrochoid, Hypotrochoid)):
        name = "epitrochoid" if isinstance(curve, Epitrochoid) else "hypotrochoid"
        out: Dict[str, Any] = {"class": name, "slide": curve.slide.value}
        if curve.roll_ratio is not None:
            out["ratio"] = str(curve.roll_ratio)
        return out
    if isinstance(curve, Ellipse):
        return {
            "class": "ellipse",
            "A": scalar_to_wire(curve.semi_major),
            "B": scalar_to_wire(curve.semi_minor),
            "e": curve.eccentricity,
        }
    if isinstance(curve, LineSegment):
        return {"class": "line_segment", "half_length": scalar_to_wire(curve.half_length)}
    if isinstance(curve, Circle):
        return {"class": "circle", "radius": scalar_to_wire(curve.radius)}
    raise TypeError(f"not a curve class: {type(curve).__name__}")
