"""Wire serialization: rigs, slide operations, curve tags."""

from __future__ import annotations

import json
from fractions import Fraction

import pytest

from trochoid_mill.kinematics import (
    Circle,
    Ellipse,
    Epicycloid,
    Epitrochoid,
    Hypocycloid,
    Hypotrochoid,
    LineSegment,
    Polarization,
    Rig,
    SlideDirection,
)
from trochoid_mill.linear import LinearRig
from trochoid_mill.sliding import SlideMethod, SlideOp
from trochoid_mill.wire import (
    curve_class_to_wire,
    frequency_to_wire,
    linear_rig_from_wire,
    linear_rig_to_wire,
    rig_from_wire,
    rig_to_wire,
    scalar_from_wire,
    scalar_to_wire,
    slide_op_from_wire,
    slide_op_to_wire,
)

ANTI_RIG = Rig(a=12, b=2, omega_table=3, omega_pen=15, polarization=Polarization.ANTI)


def test_scalar_wire_forms():
    assert scalar_to_wire(3) == 3
    assert scalar_to_wire(Fraction(6, 2)) == 3
    assert scalar_to_wire(Fraction(3, 4)) == "3/4"
    assert scalar_to_wire(2.5) == 2.5
    assert scalar_from_wire("3/4") == Fraction(3, 4)
    assert scalar_from_wire("12") == 12
    assert scalar_from_wire(7) == 7
    assert scalar_from_wire(0.25) == 0.25


def test_frequency_wire_is_always_text():
    assert frequency_to_wire(Fraction(15)) == "15"
    assert frequency_to_wire(Fraction(15, 4)) == "15/4"


def test_rig_round_trip_and_key_order():
    wire = rig_to_wire(ANTI_RIG)
    assert list(wire) == [
        "a", "b", "omega_table", "omega_pen", "polarization", "phase_table", "phase_pen",
    ]
    assert wire["omega_table"] == "3"
    assert wire["polarization"] == "anti"
    assert rig_from_wire(wire) == ANTI_RIG


def test_rig_round_trip_fractional_fields():
    rig = Rig(
        a=Fraction(7, 3),
        b=Fraction(1, 2),
        omega_table=Fraction(3, 2),
        omega_pen=Fraction(15, 4),
        polarization=Polarization.CO,
        phase_table=0.5,
    )
    wire = rig_to_wire(rig)
    assert wire["a"] == "7/3"
    assert wire["omega_pen"] == "15/4"
    assert rig_from_wire(wire) == rig


def test_rig_from_wire_rejects_bad_payloads():
    good = rig_to_wire(ANTI_RIG)
    with pytest.raises(ValueError):
        rig_from_wire({**good, "polarization": "sideways"})
    with pytest.raises(TypeError):
        rig_from_wire({**good, "omega_table": 3.0})  # frequencies stay rational on the wire
    with pytest.raises(ValueError):
        rig_from_wire({**good, "extra": 1})
    missing = dict(good)
    del missing["a"]
    with pytest.raises(ValueError):
        rig_from_wire(missing)


def test_rig_from_wire_defaults_phases():
    wire = rig_to_wire(ANTI_RIG)
    del wire["phase_table"]
    del wire["phase_pen"]
    assert rig_from_wire(wire) == ANTI_RIG


def test_linear_rig_round_trip():
    rig = LinearRig(r=Fraction(5, 2), R=10, omega=Fraction(3, 2))
    wire = linear_rig_to_wire(rig)
    assert list(wire) == ["r", "R", "omega"]
    assert wire["omega"] == "3/2"
    assert linear_rig_from_wire(wire) == rig


def test_slide_op_round_trip():
    op = SlideOp(SlideMethod.STCP, Fraction(3, 4), SlideDirection.FORWARD)
    wire = slide_op_to_wire(op)
    assert wire == {"method": "stcp", "magnitude": "3/4", "direction": "forward"}
    assert slide_op_from_wire(wire) == op
    stcf = slide_op_from_wire({"method": "stcf", "magnitude": "2", "direction": "backward"})
    assert stcf.method is SlideMethod.STCF
    assert stcf.magnitude == 2


def test_slide_op_wire_accepts_decimal_strings_for_geometry():
    op = slide_op_from_wire({"method": "stcp", "magnitude": "0.5", "direction": "forward"})
    assert op.magnitude == Fraction(1, 2)


def test_slide_op_wire_rejects_numbers():
    with pytest.raises((TypeError, ValueError)):
        slide_op_from_wire({"method": "stcp", "magnitude": 0.5, "direction": "forward"})


def test_curve_tags_are_stable_json():
    assert json.dumps(curve_class_to_wire(Epicycloid(n=5)), separators=(",", ":")) == (
        '{"class":"epicycloid","n":5}'
    )
    assert curve_class_to_wire(Hypocycloid(n=3)) == {"class": "hypocycloid", "n": 3}
    plain = curve_class_to_wire(Epitrochoid(slide=SlideDirection.FORWARD))
    assert plain == {"class": "epitrochoid", "slide": "forward"}
    rolling = curve_class_to_wire(
        Hypotrochoid(slide=SlideDirection.NONE, roll_ratio=Fraction(7, 2))
    )
    assert rolling == {"class": "hypotrochoid", "slide": "none", "ratio": "7/2"}
    seg = curve_class_to_wire(LineSegment(half_length=4.0))
    assert seg == {"class": "line_segment", "half_length": 4.0}
    circle = curve_class_to_wire(Circle(radius=2.0))
    assert circle == {"class": "circle", "radius": 2.0}
    ellipse = curve_class_to_wire(Ellipse(semi_major=4.0, semi_minor=2.0, eccentricity=0.75))
    assert list(ellipse) == ["class", "A", "B", "e"]
    assert ellipse["A"] == 4.0