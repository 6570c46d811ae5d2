"""Acceptance gate: the ten binding checks, one printed verdict line each.

Each test prints "ACCEPTANCE <n> <name>: PASS|FAIL" with capture suspended
so the verdict always reaches the terminal; tolerances are stated inline.
"""

from __future__ import annotations

import math
import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from trochoid_mill.ellipse import ellipse_from_rig, on_ellipse_residual
from trochoid_mill.kinematics import (
    Polarization,
    Rig,
    SlideDirection,
    design_epicycloid,
    design_hypocycloid,
    lab_to_table,
    pen_position_lab,
    pen_position_turntable,
)
from trochoid_mill.linear import LinearRig, linear_pen_speed, linear_slide_fraction
from trochoid_mill.machine import Machine, parse_message, replay
from trochoid_mill.sliding import (
    SlideMethod,
    SlideOp,
    apply_stcf,
    apply_stcp,
    commutator_residual,
    slide_report_stcf,
    slide_report_stcp,
    stcf_rotation_identity,
)
from trochoid_mill.traces import count_cusps, sample_linear, sample_trace

ANTI_RIG = Rig(a=12, b=2, omega_table=3, omega_pen=15, polarization=Polarization.ANTI)
CO_RIG = Rig(a=12, b=2, omega_table=3, omega_pen=15, polarization=Polarization.CO)


@contextmanager
def criterion(num: int, name: str, cap):
    def report(verdict: str) -> None:
        with cap.disabled():
            print(f"ACCEPTANCE {num:>2} {name}: {verdict}", file=sys.stdout, flush=True)

    try:
        yield
    except BaseException:
        report("FAIL")
        raise
    report("PASS")


def _rolling_rig(rng: random.Random, pol: Polarization) -> Rig:
    b = Fraction(rng.randint(1, 12), rng.randint(1, 4))
    om = Fraction(rng.randint(1, 9), rng.randint(1, 4))
    if pol is Polarization.ANTI:
        w = om * rng.randint(1, 8) + Fraction(rng.randint(0, 9), 2)
        a = b * (om + w) / om
    else:
        w = om * rng.randint(2, 8) + Fraction(rng.randint(1, 9), 2)
        a = b * (w - om) / om
    return Rig(a=a, b=b, omega_table=om, omega_pen=w, polarization=pol)


def test_criterion_1_closed_form_regression(capfd):
    with criterion(1, "closed-form curve regression", capfd):
        started = time.perf_counter()
        faster = SlideOp(SlideMethod.STCF, 1, SlideDirection.FORWARD)
        slower = SlideOp(SlideMethod.STCF, 1, SlideDirection.BACKWARD)
        cases = [
            (ANTI_RIG, 3, 18, +1),
            (apply_stcf(ANTI_RIG, faster), 4, 19, +1),
            (apply_stcf(ANTI_RIG, slower), 2, 17, +1),
            (CO_RIG, 3, 12, -1),
            (apply_stcf(CO_RIG, faster), 4, 11, -1),
            (apply_stcf(CO_RIG, slower), 2, 13, -1),
        ]
        for rig, table_freq, pen_freq, pen_sign in cases:
            trace = sample_trace(rig)
            t = trace.ts
            want_x = 12 * np.cos(table_freq * t) + 2 * np.cos(pen_freq * t)
            want_y = 12 * np.sin(table_freq * t) + pen_sign * 2 * np.sin(pen_freq * t)
            assert float(np.max(np.abs(trace.xs - want_x))) <= 1e-12
            assert float(np.max(np.abs(trace.ys - want_y))) <= 1e-12
        assert time.perf_counter() - started < 1.0


def test_criterion_2_stcf_slide_rates_exact(capfd):
    with criterion(2, "frequency-slide rates exact", capfd):
        fwd = slide_report_stcf(
            ANTI_RIG, apply_stcf(ANTI_RIG, SlideOp(SlideMethod.STCF, 1, SlideDirection.FORWARD))
        )
        assert isinstance(fwd.rate_per_radian, Fraction)
        assert fwd.rate_per_radian == Fraction(5, 2)
        assert fwd.direction is SlideDirection.FORWARD
        back = slide_report_stcf(
            ANTI_RIG, apply_stcf(ANTI_RIG, SlideOp(SlideMethod.STCF, 1, SlideDirection.BACKWARD))
        )
        assert isinstance(back.rate_per_radian, Fraction)
        assert back.rate_per_radian == Fraction(-5)
        assert abs(back.rate_per_radian) == 5
        assert back.direction is SlideDirection.BACKWARD


def test_criterion_3_stcp_rate_law(capfd):
    with criterion(3, "center-shift rate law", capfd):
        rng = random.Random(90210)
        for i in range(100):
            pol = Polarization.ANTI if i % 2 == 0 else Polarization.CO
            base = _rolling_rig(rng, pol)
            delta = base.a * Fraction(rng.randint(1, 99), 100)
            direction = rng.choice([SlideDirection.FORWARD, SlideDirection.BACKWARD])
            perturbed = apply_stcp(base, SlideOp(SlideMethod.STCP, delta, direction))
            report = slide_report_stcp(base, perturbed)
            expected = delta if direction is SlideDirection.FORWARD else -delta
            assert report.rate_per_radian == expected


def test_criterion_4_operations_commute(capfd):
    with criterion(4, "roll/slide operations commute", capfd):
        rng = random.Random(40334)
        worst = 0.0
        for i in range(100):
            pol = Polarization.ANTI if i % 2 == 0 else Polarization.CO
            rig = _rolling_rig(rng, pol)
            if i % 2 == 0:
                op = SlideOp(
                    SlideMethod.STCP,
                    rig.a * Fraction(rng.randint(1, 50), 100),
                    rng.choice([SlideDirection.FORWARD, SlideDirection.BACKWARD]),
                )
            else:
                mag = Fraction(rng.randint(1, 4), rng.randint(1, 3))
                direction = rng.choice([SlideDirection.FORWARD, SlideDirection.BACKWARD])
                if direction is SlideDirection.BACKWARD and mag >= rig.omega_table:
                    direction = SlideDirection.FORWARD
                op = SlideOp(SlideMethod.STCF, mag, direction)
            worst = max(
                worst,
                commutator_residual(rig, op, rng.uniform(0.0, 25.0), rng.uniform(0.0, 25.0)),
            )
        assert worst < 1e-9


def test_criterion_5_frame_equivalence(capfd):
    with criterion(5, "turntable/lab frame equivalence", capfd):
        rng = random.Random(11235)
        worst = 0.0
        for _ in range(100):
            a = Fraction(rng.randint(0, 40), rng.randint(1, 4))
            b = Fraction(rng.randint(1, 40), rng.randint(1, 4))
            rig = Rig(
                a=a,
                b=b,
                omega_table=Fraction(rng.randint(1, 12), rng.randint(1, 4)),
                omega_pen=Fraction(rng.randint(1, 24), rng.randint(1, 4)),
                polarization=rng.choice([Polarization.ANTI, Polarization.CO]),
                phase_table=rng.uniform(0.0, 2.0 * math.pi),
                phase_pen=rng.uniform(0.0, 2.0 * math.pi),
            )
            for _ in range(100):
                t = rng.uniform(0.0, 40.0)
                theta = float(rig.omega_table) * t + rig.phase_table
                composed = lab_to_table(pen_position_lab(rig, t), theta)
                direct = pen_position_turntable(rig, t)
                worst = max(worst, math.hypot(composed.x - direct.x, composed.y - direct.y))
        assert worst <= 1e-9


def test_criterion_6_ellipse_genesis(capfd):
    with criterion(6, "double-speed co rigs trace ellipses", capfd):
        rng = random.Random(62446)
        count = 0
        while count < 50:
            a = Fraction(rng.randint(0, 24), rng.randint(1, 3))
            b = Fraction(rng.randint(1, 24), rng.randint(1, 3))
            if a == b or a == 0:
                continue
            om = Fraction(rng.randint(1, 9), rng.randint(1, 3))
            rig = Rig(a=a, b=b, omega_table=om, omega_pen=2 * om, polarization=Polarization.CO)
            spec = ellipse_from_rig(rig)
            worst = max(
                on_ellipse_residual(pen_position_turntable(rig, rng.uniform(0.0, 30.0)), spec)
                for _ in range(40)
            )
            assert worst < 1e-9
            count += 1
        # equal radii: the ellipse collapses onto the x axis with reach 2b
        seg = Rig(a=3, b=3, omega_table=2, omega_pen=4, polarization=Polarization.CO)
        seg_trace = sample_trace(seg, samples_per_closure=4096)
        assert float(np.max(np.abs(seg_trace.ys))) < 1e-12
        assert float(np.max(np.abs(seg_trace.xs))) == pytest.approx(6.0, abs=1e-12)
        # centered pen: a circle of the pen radius
        circ = Rig(a=0, b=4, omega_table=2, omega_pen=4, polarization=Polarization.CO)
        circ_trace = sample_trace(circ, samples_per_closure=4096)
        radii = np.hypot(circ_trace.xs, circ_trace.ys)
        assert float(np.max(np.abs(radii - 4.0))) < 1e-12


def test_criterion_7_cusp_counts(capfd):
    with criterion(7, "designed cusp counts", capfd):
        started = time.perf_counter()
        for n in range(1, 9):
            rig = design_epicycloid(12, n, 15)
            assert count_cusps(sample_trace(rig)) == n
        for n in range(3, 9):
            rig = design_hypocycloid(12, n, 15)
            assert count_cusps(sample_trace(rig)) == n
        assert time.perf_counter() - started < 5.0


def test_criterion_8_linear_rig(capfd):
    with criterion(8, "straight-rail closed forms and slide fractions", capfd):
        by_radius = {
            5: LinearRig(r=5, R=10, omega=1),
            10: LinearRig(r=10, R=10, omega=1),
            20: LinearRig(r=20, R=10, omega=1),
        }
        for r, rig in by_radius.items():
            trace = sample_linear(rig, 4.0 * math.pi, 2048)
            t = trace.ts
            assert float(np.max(np.abs(trace.xs - (r * t + 10 * np.sin(t))))) <= 1e-12
            assert float(np.max(np.abs(trace.ys - (10 + 10 * np.cos(t))))) <= 1e-12
        assert linear_slide_fraction(by_radius[10]) == 0
        assert linear_slide_fraction(by_radius[5]) == Fraction(-1)
        assert linear_slide_fraction(by_radius[20]) == Fraction(1, 2)
        assert linear_pen_speed(by_radius[10], math.pi) < 1e-9


def test_criterion_9_retune_size_invariance(capfd):
    with criterion(9, "frequency retune preserves the figure", capfd):
        rng = random.Random(98765)
        worst = 0.0
        for rig in (ANTI_RIG, CO_RIG):
            for direction in (SlideDirection.FORWARD, SlideDirection.BACKWARD):
                for _ in range(250):
                    t = rng.uniform(0.0, 50.0)
                    direct, rotated = stcf_rotation_identity(rig, 1, direction, t)
                    worst = max(worst, math.hypot(direct.x - rotated.x, direct.y - rotated.y))
        assert worst <= 1e-9


def test_criterion_10_replay_determinism(capfd):
    with criterion(10, "session replay is bit-identical", capfd):
        machine = Machine(ANTI_RIG, tick_rate=240)
        log = []
        events = []

        def send(wire):
            machine.handle(parse_message(wire))
            log.append((machine.tick, wire))

        send({"type": "pen_down"})
        send({"type": "start"})
        for _ in range(800):
            events.append(machine.step())
        send({"type": "set_param", "name": "a", "value": "13"})
        for _ in range(800):
            events.append(machine.step())
        send({"type": "set_param", "name": "omega_table", "value": "4"})
        for _ in range(800):
            events.append(machine.step())
        assert machine.t_sim == 10.0

        replayed = replay(ANTI_RIG, log, ticks=2400)
        assert len(replayed) == 2400
        for live, again in zip(events, replayed):
            assert live.t_sim.hex() == again.t_sim.hex()
            assert live.table_point.x.hex() == again.table_point.x.hex()
            assert live.table_point.y.hex() == again.table_point.y.hex()
            assert live.lab_point.x.hex() == again.lab_point.x.hex()
            assert live.lab_point.y.hex() == again.lab_point.y.hex()
            assert (live.pen_down, live.rig_revision) == (again.pen_down, again.rig_revision)

        # before any knob touch the stream is plain trace sampling of the rig
        worst = 0.0
        for event in events[:800]:
            p = pen_position_turntable(ANTI_RIG, event.t_sim)
            worst = max(
                worst,
                math.hypot(event.table_point.x - p.x, event.table_point.y - p.y),
            )
        assert worst <= 1e-9
