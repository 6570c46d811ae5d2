"""Trochoid mill: a two-turntable drawing machine, modeled exactly.

A pen rides at a fixed radius on a small tablet whose center is carried
by a larger turntable.  Both axes spin at exact rational frequencies.
Depending on the spin sense of the tablet relative to the turntable the
pen traces epi- or hypo-trochoids on the turntable sheet, and controlled
frequency or geometry perturbations turn pure rolling into measured
rolling-plus-sliding.

The package exposes the kinematic core (`kinematics`), sliding operators
(`sliding`), ellipse geometry (`ellipse`), the linear rail variant
(`linear`), trace sampling (`traces`), SVG/CSV output (`render`), wire
serialization (`wire`), the deterministic tick machine (`machine`), the
seeded verification suites (`verify`), the HTTP/WebSocket control
service (`service`) and the command line front end (`cli`).
"""

from trochoid_mill.kinematics import (
    Circle,
    CurveClass,
    Ellipse,
    Epicycloid,
    Epitrochoid,
    Frame,
    Hypocycloid,
    Hypotrochoid,
    LineSegment,
    Point2,
    Polarization,
    Rig,
    SlideDirection,
    as_frequency,
    classify,
    closure_period,
    design_epicycloid,
    design_hypocycloid,
    lab_to_table,
    pen_position_lab,
    pen_position_turntable,
    rolling_residual,
    table_to_lab,
)
from trochoid_mill.sliding import (
    SlideMethod,
    SlideOp,
    SlideReport,
    apply_slide,
    apply_stcf,
    apply_stcp,
    commutator_residual,
    roll_then_slide_stcp,
    slide_report_stcf,
    slide_report_stcp,
    stcf_rotation_identity,
)
from trochoid_mill.ellipse import EllipseSpec, ellipse_from_rig
from trochoid_mill.linear import LinearRig, linear_pen_position, linear_slide_fraction
from trochoid_mill.traces import FamilySpec, Trace, count_cusps, sample_linear, sample_trace, sweep_family
from trochoid_mill.render import RenderStyle, to_csv, to_svg

__version__ = "0.1.0"

__all__ = [
    "Circle",
    "CurveClass",
    "Ellipse",
    "EllipseSpec",
    "Epicycloid",
    "Epitrochoid",
    "FamilySpec",
    "Frame",
    "Hypocycloid",
    "Hypotrochoid",
    "LinearRig",
    "LineSegment",
    "Point2",
    "Polarization",
    "RenderStyle",
    "Rig",
    "SlideDirection",
    "SlideMethod",
    "SlideOp",
    "SlideReport",
    "Trace",
    "apply_slide",
    "apply_stcf",
    "apply_stcp",
    "as_frequency",
    "classify",
    "closure_period",
    "commutator_residual",
    "count_cusps",
    "design_epicycloid",
    "design_hypocycloid",
    "ellipse_from_rig",
    "lab_to_table",
    "linear_pen_position",
    "linear_slide_fraction",
    "pen_position_lab",
    "pen_position_turntable",
    "roll_then_slide_stcp",
    "rolling_residual",
    "sample_linear",
    "sample_trace",
    "slide_report_stcf",
    "slide_report_stcp",
    "stcf_rotation_identity",
    "sweep_family",
    "table_to_lab",
    "to_csv",
    "to_svg",
]
