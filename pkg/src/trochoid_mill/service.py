"""HTTP/WebSocket control service around the tick machine.

One machine per named session; the stepping loop of each session is a
single asyncio task, and control messages are queued into it so handling
is always serialized with stepping (messages apply between ticks, exactly
as in offline replay).  Samples are fanned out to any number of
subscribers over bounded queues; a slow consumer drops samples but never
stalls the machine, and acks/errors are delivered to the sender even
under pressure.

Endpoints:

* ``WS /machine?session=``: bidirectional control; client sends
  ``{type: ...}`` control messages, server streams ``sample`` events plus
  ``ack``/``error`` replies (first message is a ``hello`` ack with the
  state snapshot and any existing pen segments).
* ``GET /state?session=``: machine state snapshot.
* ``GET /export.svg?session=``: the session's pen-down trace as SVG, one
  path per rig revision.
* ``GET /api/log?session=``: the accepted-message log for offline replay.
* ``POST /api/classify | /api/trace | /api/family | /api/linear |
  /api/slide-report``: stateless wrappers over the core library.
"""

from __future__ import annotations

import asyncio
import os
from contextlib import asynccontextmanager
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from fastapi import FastAPI, HTTPException, Query, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from trochoid_mill.kinematics import Frame, Polarization, Rig, classify, closure_period
from trochoid_mill.machine import ControlError, Machine, parse_message
from trochoid_mill.render import RenderStyle, polylines_to_svg, to_svg
from trochoid_mill.sliding import apply_slide, slide_report_stcf, slide_report_stcp, SlideMethod
from trochoid_mill.traces import FamilySpec, sample_linear, sample_trace, sweep_family
from trochoid_mill.wire import (
    curve_class_to_wire,
    linear_rig_from_wire,
    rig_from_wire,
    rig_to_wire,
    scalar_from_wire,
    scalar_to_wire,
    slide_op_from_wire,
)

DEFAULT_PORT = 7420
DEFAULT_RIG = Rig(a=12, b=2, omega_table=3, omega_pen=15, polarization=Polarization.ANTI)

SUBSCRIBER_QUEUE_SIZE = 1024


class MachineSession:
    """One machine plus its stepping task, subscribers, and message log."""

    def __init__(self, name: str, rig: Rig, tick_rate: int = 240, throttled: bool = True):
        self.name = name
        self.machine = Machine(rig, tick_rate)
        self.throttled = throttled
        self.inbox: asyncio.Queue = asyncio.Queue()
        self.subscribers: List[asyncio.Queue] = []
        self.log: List[Tuple[int, Dict[str, Any]]] = []
        self._task: Optional[asyncio.Task] = None

    def ensure_running_loop(self) -> None:
        if self._task is None or self._task.done():
            self._task = asyncio.get_running_loop().create_task(self._run())

    async def _run(self) -> None:
        tick_seconds = 1.0 / self.machine.tick_rate
        while True:
            # apply everything queued, then step once if running
            while True:
                try:
                    wire_msg, reply_queue = self.inbox.get_nowait()
                except asyncio.QueueEmpty:
                    break
                self._apply(wire_msg, reply_queue)
            if self.machine.running:
                event = self.machine.step()
                payload = event.to_wire()
                for queue in list(self.subscribers):
                    self._offer(queue, payload, force=False)
                if self.throttled:
                    await asyncio.sleep(tick_seconds)
                else:
                    await asyncio.sleep(0)
            else:
                wire_msg, reply_queue = await self.inbox.get()
                self._apply(wire_msg, reply_queue)

    def _apply(self, wire_msg: Dict[str, Any], reply_queue: Optional[asyncio.Queue]) -> None:
        try:
            msg = parse_message(wire_msg)
            ack = self.machine.handle(msg)
        except ControlError as exc:
            payload = exc.to_wire()
        else:
            # only accepted messages enter the replayable log
            self.log.append((self.machine.tick, dict(wire_msg)))
            payload = ack
        if reply_queue is not None:
            self._offer(reply_queue, payload, force=True)

    @staticmethod
    def _offer(queue: asyncio.Queue, payload: Dict[str, Any], force: bool) -> None:
        try:
            queue.put_nowait(payload)
        except asyncio.QueueFull:
            if not force:
                return  # slow subscriber drops a sample
            try:
                queue.get_nowait()
            except asyncio.QueueEmpty:
                pass
            try:
                queue.put_nowait(payload)
            except asyncio.QueueFull:
                pass

    def stop(self) -> None:
        if self._task is not None:
            self._task.cancel()
            self._task = None


class SessionHub:
    def __init__(self, tick_rate: int = 240, throttled: bool = True):
        self.tick_rate = tick_rate
        self.throttled = throttled
        self.sessions: Dict[str, MachineSession] = {}

    def get_or_create(self, name: str) -> MachineSession:
        if name not in self.sessions:
            self.sessions[name] = MachineSession(
                name, DEFAULT_RIG, tick_rate=self.tick_rate, throttled=self.throttled
            )
        session = self.sessions[name]
        session.ensure_running_loop()
        return session

    def stop_all(self) -> None:
        for session in self.sessions.values():
            session.stop()


# --- request/response models ---------------------------------------------------

WireNumber = Union[int, float, str]


class RigModel(BaseModel):
    a: WireNumber
    b: WireNumber
    omega_table: Union[int, str]
    omega_pen: Union[int, str]
    polarization: Literal["co", "anti"]
    phase_table: float = 0.0
    phase_pen: float = 0.0

    def to_rig(self) -> Rig:
        try:
            return rig_from_wire(self.model_dump())
        except (ValueError, TypeError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc


class ClassifyRequest(BaseModel):
    rig: RigModel
    tol: float = 1e-9


class TraceRequest(BaseModel):
    rig: RigModel
    frame: Literal["table", "lab"] = "table"
    samples: int = Field(default=4096, ge=16, le=1_000_000)


class FamilyRequest(BaseModel):
    rig: RigModel
    method: Literal["stcp", "stcf"]
    steps: List[WireNumber]
    frame: Literal["table", "lab"] = "table"
    samples: int = Field(default=2048, ge=16, le=1_000_000)


class LinearRequest(BaseModel):
    r: WireNumber
    R: WireNumber
    omega: Union[int, str]
    t_end: float = Field(gt=0)
    samples: int = Field(default=1024, ge=2, le=1_000_000)


class SlideOpModel(BaseModel):
    method: Literal["stcp", "stcf"]
    magnitude: str
    direction: Literal["forward", "backward"]


class SlideReportRequest(BaseModel):
    rig: RigModel
    op: SlideOpModel


def create_app(
    tick_rate: int = 240,
    throttled: bool = True,
    ui_dir: Optional[Union[str, Path]] = None,
) -> FastAPI:
    hub = SessionHub(tick_rate=tick_rate, throttled=throttled)

    @asynccontextmanager
    async def lifespan(_: FastAPI):
        try:
            yield
        finally:
            hub.stop_all()

    app = FastAPI(title="trochoid-mill control service", lifespan=lifespan)
    app.state.hub = hub

    @app.get("/")
    def index() -> Dict[str, Any]:
        return {
            "service": "trochoid-mill",
            "endpoints": [
                "/machine (websocket)",
                "/state",
                "/export.svg",
                "/api/log",
                "/api/classify",
                "/api/trace",
                "/api/family",
                "/api/linear",
                "/api/slide-report",
                "/ui/",
            ],
        }

    @app.get("/state")
    async def state(session: str = Query(default="default")) -> Dict[str, Any]:
        return hub.get_or_create(session).machine.state_snapshot()

    @app.get("/export.svg")
    async def export_svg(session: str = Query(default="default")) -> Response:
        sess = hub.get_or_create(session)
        polylines = [points for _, points in sess.machine.pen_polylines()]
        svg = polylines_to_svg(polylines, RenderStyle())
        return Response(content=svg, media_type="image/svg+xml")

    @app.get("/api/log")
    async def session_log(session: str = Query(default="default")) -> JSONResponse:
        sess = hub.get_or_create(session)
        return JSONResponse(
            {
                "session": session,
                "tick_rate": sess.machine.tick_rate,
                "rig0": rig_to_wire(DEFAULT_RIG),
                "log": [[tick, msg] for tick, msg in sess.log],
            }
        )

    @app.websocket("/machine")
    async def machine_ws(websocket: WebSocket, session: str = Query(default="default")) -> None:
        await websocket.accept()
        sess = hub.get_or_create(session)
        queue: asyncio.Queue = asyncio.Queue(maxsize=SUBSCRIBER_QUEUE_SIZE)
        sess.subscribers.append(queue)

        await websocket.send_json(
            {
                "type": "ack",
                "message": "hello",
                "state": sess.machine.state_snapshot(),
                "segments": [
                    {"rev": rev, "points": [[x, y] for x, y in points]}
                    for rev, points in sess.machine.pen_polylines()
                ],
            }
        )

        async def writer() -> None:
            while True:
                payload = await queue.get()
                await websocket.send_json(payload)

        writer_task = asyncio.get_running_loop().create_task(writer())
        try:
            while True:
                data = await websocket.receive_json()
                await sess.inbox.put((data, queue))
        except WebSocketDisconnect:
            pass
        finally:
            writer_task.cancel()
            if queue in sess.subscribers:
                sess.subscribers.remove(queue)

    @app.post("/api/classify")
    def api_classify(request: ClassifyRequest) -> Dict[str, Any]:
        rig = request.rig.to_rig()
        try:
            curve = classify(rig, tol=request.tol)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return curve_class_to_wire(curve)

    @app.post("/api/trace")
    def api_trace(request: TraceRequest) -> Dict[str, Any]:
        rig = request.rig.to_rig()
        frame = Frame.TURNTABLE if request.frame == "table" else Frame.LAB
        trace = sample_trace(rig, frame, request.samples)
        return {
            "frame": request.frame,
            "period": closure_period(rig),
            "closed": trace.closed,
            "t": trace.ts.tolist(),
            "x": trace.xs.tolist(),
            "y": trace.ys.tolist(),
        }

    @app.post("/api/family")
    def api_family(request: FamilyRequest) -> Response:
        rig = request.rig.to_rig()
        try:
            steps = tuple(scalar_from_wire(step) for step in request.steps)
            spec = FamilySpec(base=rig, method=SlideMethod(request.method), steps=steps)
            frame = Frame.TURNTABLE if request.frame == "table" else Frame.LAB
            traces = sweep_family(spec, frame, request.samples)
        except (ValueError, TypeError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return Response(content=to_svg(traces), media_type="image/svg+xml")

    @app.post("/api/linear")
    def api_linear(request: LinearRequest) -> Dict[str, Any]:
        try:
            rig = linear_rig_from_wire({"r": request.r, "R": request.R, "omega": request.omega})
            trace = sample_linear(rig, request.t_end, request.samples)
        except (ValueError, TypeError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return {
            "t": trace.ts.tolist(),
            "x": trace.xs.tolist(),
            "y": trace.ys.tolist(),
        }

    @app.post("/api/slide-report")
    def api_slide_report(request: SlideReportRequest) -> Dict[str, Any]:
        base = request.rig.to_rig()
        try:
            op = slide_op_from_wire(request.op.model_dump())
            perturbed = apply_slide(base, op)
            if op.method is SlideMethod.STCP:
                report = slide_report_stcp(base, perturbed)
            else:
                report = slide_report_stcf(base, perturbed)
        except (ValueError, TypeError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return {
            "rig": rig_to_wire(perturbed),
            "delta_v": scalar_to_wire(report.delta_v),
            "delta_s": report.delta_s,
            "rate_per_radian": scalar_to_wire(report.rate_per_radian),
            "direction": report.direction.value,
        }

    ui_path = Path(ui_dir) if ui_dir else _default_ui_dir()
    if ui_path is not None and ui_path.is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_path), html=True), name="ui")

    return app


def _default_ui_dir() -> Optional[Path]:
    env = os.environ.get("TROCHOID_MILL_UI")
    if env:
        return Path(env)
    # repo layout: src/trochoid_mill/service.py -> repo root -> frontend/dist
    candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    return candidate if candidate.is_dir() else None
