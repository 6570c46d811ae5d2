"""Seeded, deterministic verification suites for the machine's core claims.

Each suite draws its cases from its own deterministically derived RNG, so
`run_all(seed=42)` always checks the same cases.  Suites return structured
results rather than asserting, so the CLI can print a table and tests can
assert on the summary.

Suites:

* t1-equivalence: the sheet-frame position law equals the lab-frame circle
  carried through the frame rotation.
* t2-ellipse: co rigs at double speed land on their predicted ellipse;
  degenerate cases collapse to the line segment and circle.
* t3-commutator: roll and slide commute for both slide methods.
* t5-stcp-rate: center-distance nudges slide exactly their own length per
  radian (anti rigs).
* t7-stcp-rate-hypo: same law on co rigs.
* t8-stcf-size: a turntable retune only rotates the figure, never resizes it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from trochoid_mill.ellipse import ellipse_from_rig, on_ellipse_residual
from trochoid_mill.kinematics import (
    Polarization,
    Rig,
    lab_to_table,
    pen_position_lab,
    pen_position_turntable,
)
from trochoid_mill.sliding import (
    SlideDirection,
    SlideMethod,
    SlideOp,
    apply_stcp,
    commutator_residual,
    slide_report_stcp,
    stcf_rotation_identity,
)

TOLERANCE = 1e-9
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    failures: int
    worst: float  # largest residual seen (0.0 for exact-equality suites)
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _rng_for(seed: int, name: str) -> random.Random:
    # string seeding hashes deterministically (not PYTHONHASHSEED-dependent)
    return random.Random(f"{seed}:{name}")


def _random_fraction(rng: random.Random, lo: int = 1, hi: int = 24, max_den: int = 6) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def _random_rig(rng: random.Random, polarization: Optional[Polarization] = None) -> Rig:
    pol = polarization or rng.choice([Polarization.ANTI, Polarization.CO])
    return Rig(
        a=Fraction(rng.randint(1, 40), rng.randint(1, 4)),
        b=Fraction(rng.randint(1, 16), rng.randint(1, 4)),
        omega_table=_random_fraction(rng),
        omega_pen=_random_fraction(rng),
        polarization=pol,
        phase_table=rng.uniform(0.0, TWO_PI),
        phase_pen=rng.uniform(0.0, TWO_PI),
    )


def _random_rolling_rig(rng: random.Random, polarization: Polarization) -> Rig:
    """Random rig satisfying the pure-rolling condition exactly."""
    b = Fraction(rng.randint(1, 12), rng.randint(1, 4))
    w_table = _random_fraction(rng)
    if polarization is Polarization.ANTI:
        w_pen = _random_fraction(rng)
        a = b * (w_table + w_pen) / w_table
    else:
        w_pen = w_table + _random_fraction(rng)  # co rolling needs omega_pen > omega_table
        a = b * (w_pen - w_table) / w_table
    return Rig(
        a=a,
        b=b,
        omega_table=w_table,
        omega_pen=w_pen,
        polarization=polarization,
        phase_table=rng.uniform(0.0, TWO_PI),
        phase_pen=rng.uniform(0.0, TWO_PI),
    )


def _dist(p, q) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def _suite_t1_equivalence(rng: random.Random) -> SuiteResult:
    failures = 0
    worst = 0.0
    cases = 100
    for _ in range(cases):
        rig = _random_rig(rng)
        for _ in range(100):
            t = rng.uniform(0.0, 50.0)
            theta = float(rig.omega_table) * t + rig.phase_table
            composed = lab_to_table(pen_position_lab(rig, t), theta)
            err = _dist(pen_position_turntable(rig, t), composed)
            worst = max(worst, err)
            if err >= TOLERANCE:
                failures += 1
    return SuiteResult("t1-equivalence", cases, failures, worst, "100 times per rig")


def _suite_t2_ellipse(rng: random.Random) -> SuiteResult:
    failures = 0
    worst = 0.0
    cases = 50
    for _ in range(cases):
        w = _random_fraction(rng)
        a = Fraction(rng.randint(1, 30), rng.randint(1, 4))
        b = Fraction(rng.randint(1, 30), rng.randint(1, 4))
        if a == b:
            a = a + 1
        rig = Rig(a=a, b=b, omega_table=w, omega_pen=2 * w, polarization=Polarization.CO)
        spec = ellipse_from_rig(rig)
        bad = False
        for _ in range(40):
            t = rng.uniform(0.0, 20.0)
            res = on_ellipse_residual(pen_position_turntable(rig, t), spec)
            worst = max(worst, res)
            bad = bad or res >= TOLERANCE
        failures += bad

    # degenerate line segment: a = b collapses y identically; the stroke
    # spans exactly +/- (a+b) along x (attained at t = 0)
    seg = Rig(a=3, b=3, omega_table=2, omega_pen=4, polarization=Polarization.CO)
    seg_y = max(abs(pen_position_turntable(seg, rng.uniform(0, 10)).y) for _ in range(200))
    seg_x = max(abs(pen_position_turntable(seg, rng.uniform(0, 10)).x) for _ in range(200))
    if seg_y > 1e-12 or seg_x > 6.0 + 1e-12 or pen_position_turntable(seg, 0.0).x != 6.0:
        failures += 1
    # degenerate circle: a = 0 keeps the pen at radius b
    hub = Rig(a=0, b=5, omega_table=2, omega_pen=4, polarization=Polarization.CO)
    hub_err = max(
        abs(math.hypot(*pen_position_turntable(hub, rng.uniform(0, 10))) - 5.0) for _ in range(200)
    )
    if hub_err > 1e-12:
        failures += 1
    return SuiteResult("t2-ellipse", cases + 2, failures, worst, "plus both degeneracies")


def _suite_t3_commutator(rng: random.Random) -> SuiteResult:
    failures = 0
    worst = 0.0
    cases = 100
    for i in range(cases):
        rig = _random_rig(rng)
        if i % 2 == 0:
            magnitude = Fraction(rng.randint(1, 8), rng.randint(1, 4))
            direction = rng.choice([SlideDirection.FORWARD, SlideDirection.BACKWARD])
            if direction is SlideDirection.BACKWARD and magnitude > rig.a:
                direction = SlideDirection.FORWARD
            op = SlideOp(SlideMethod.STCP, magnitude, direction)
        else:
            magnitude = _random_fraction(rng, 1, 6, 3)
            direction = rng.choice([SlideDirection.FORWARD, SlideDirection.BACKWARD])
            if direction is SlideDirection.BACKWARD and magnitude >= rig.omega_table:
                direction = SlideDirection.FORWARD
            op = SlideOp(SlideMethod.STCF, magnitude, direction)
        t1 = rng.uniform(0.0, 30.0)
        t2 = rng.uniform(0.0, 30.0)
        err = commutator_residual(rig, op, t1, t2)
        worst = max(worst, err)
        if err >= TOLERANCE:
            failures += 1
    return SuiteResult("t3-commutator", cases, failures, worst, "stcp and stcf alternating")


def _stcp_rate_suite(name: str, polarization: Polarization, rng: random.Random) -> SuiteResult:
    failures = 0
    cases = 100
    for _ in range(cases):
        base = _random_rolling_rig(rng, polarization)
        # random exact-rational nudge inside (0, a)
        num = rng.randint(1, 50)
        delta = base.a * Fraction(num, 51)
        direction = rng.choice([SlideDirection.FORWARD, SlideDirection.BACKWARD])
        op = SlideOp(SlideMethod.STCP, delta, direction)
        report = slide_report_stcp(base, apply_stcp(base, op))
        expected = delta if direction is SlideDirection.FORWARD else -delta
        if report.rate_per_radian != expected:
            failures += 1
    return SuiteResult(name, cases, failures, 0.0, "exact rational equality")


def _suite_t5_stcp_rate(rng: random.Random) -> SuiteResult:
    return _stcp_rate_suite("t5-stcp-rate", Polarization.ANTI, rng)


def _suite_t7_stcp_rate_hypo(rng: random.Random) -> SuiteResult:
    return _stcp_rate_suite("t7-stcp-rate-hypo", Polarization.CO, rng)


def _suite_t8_stcf_size(rng: random.Random) -> SuiteResult:
    failures = 0
    worst = 0.0
    reference_rigs = [
        Rig(a=12, b=2, omega_table=3, omega_pen=15, polarization=Polarization.ANTI),
        Rig(a=12, b=2, omega_table=3, omega_pen=15, polarization=Polarization.CO),
    ]
    cases = 0
    for rig in reference_rigs:
        for direction in (SlideDirection.FORWARD, SlideDirection.BACKWARD):
            cases += 1
            bad = False
            for _ in range(1000):
                t = rng.uniform(0.0, 30.0)
                direct, rotated = stcf_rotation_identity(rig, 1, direction, t)
                err = _dist(direct, rotated)
                worst = max(worst, err)
                bad = bad or err >= TOLERANCE
            failures += bad
    # a handful of random rigs and detunes on top of the fixed ones
    for _ in range(20):
        cases += 1
        rig = _random_rig(rng)
        delta = _random_fraction(rng, 1, 6, 3)
        direction = rng.choice([SlideDirection.FORWARD, SlideDirection.BACKWARD])
        if direction is SlideDirection.BACKWARD and delta >= rig.omega_table:
            direction = SlideDirection.FORWARD
        bad = False
        for _ in range(50):
            t = rng.uniform(0.0, 30.0)
            direct, rotated = stcf_rotation_identity(rig, delta, direction, t)
            err = _dist(direct, rotated)
            worst = max(worst, err)
            bad = bad or err >= TOLERANCE
        failures += bad
    return SuiteResult("t8-stcf-size", cases, failures, worst, "reference rigs + random detunes")


SUITES: Dict[str, Callable[[random.Random], SuiteResult]] = {
    "t1-equivalence": _suite_t1_equivalence,
    "t2-ellipse": _suite_t2_ellipse,
    "t3-commutator": _suite_t3_commutator,
    "t5-stcp-rate": _suite_t5_stcp_rate,
    "t7-stcp-rate-hypo": _suite_t7_stcp_rate_hypo,
    "t8-stcf-size": _suite_t8_stcf_size,
}


def run_suite(name: str, seed: int) -> SuiteResult:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](_rng_for(seed, name))


def run_all(seed: int, names: Optional[Sequence[str]] = None) -> List[SuiteResult]:
    selected = list(names) if names else list(SUITES)
    return [run_suite(name, seed) for name in selected]
