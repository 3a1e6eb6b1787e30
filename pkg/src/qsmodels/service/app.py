"""FastAPI service: headless match runs over REST and the live duel socket.

The duel endpoint speaks the protocolVersion-1 frame vocabulary. Exactly one
client connection is served at a time (duel semantics); a slow client never
blocks the tick loop -- its send queue drops the oldest state frame on
overflow, never an input.
"""

from __future__ import annotations

import asyncio
import contextlib
import socket
import time

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from pydantic import BaseModel, ValidationError

from ..arena import FIRE, IDLE, Command, WorldState, move_step, step, turn
from ..events import EventLog
from ..executive import Executive, ExecutiveConfig
from ..match import (
    ConfigError,
    MatchConfig,
    RealClock,
    ThreadedPlanService,
    make_backend,
    make_enemy,
    run_match,
)
from .frames import (
    EndFrame,
    InputFrame,
    build_config_frame,
    build_state_frame,
)


class BindError(Exception):
    pass


ARROW_DIRECTIONS = {
    "ArrowUp": "N",
    "ArrowRight": "E",
    "ArrowDown": "S",
    "ArrowLeft": "W",
}
FIRE_KEYS = (" ", "Space")
TURN_LEFT = {"N": "W", "W": "S", "S": "E", "E": "N"}
TURN_RIGHT = {"N": "E", "E": "S", "S": "W", "W": "N"}
SEND_QUEUE_FRAMES = 32


class HumanEnemy:
    """Enemy side driven by the connected client; idles when disconnected.

    Key priority within one tick: fire, then movement, then turning.
    """

    def __init__(self) -> None:
        self.keys: tuple[str, ...] = ()
        self.connected = False

    def set_keys(self, keys: list[str]) -> None:
        self.keys = tuple(keys)  # latest-wins within a tick

    def clear(self) -> None:
        self.keys = ()
        self.connected = False

    def decide(self, world: WorldState) -> Command:
        if not self.connected:
            return IDLE
        held = self.keys
        if any(k in FIRE_KEYS for k in held):
            return FIRE
        for key, direction in ARROW_DIRECTIONS.items():
            if key in held:
                return move_step(direction)
        if "q" in held:
            return turn(TURN_LEFT[world.enemy.facing])
        if "e" in held:
            return turn(TURN_RIGHT[world.enemy.facing])
        return IDLE


class DuelServer:
    """Owns the live match loop; the websocket session feeds it input."""

    def __init__(self, config: MatchConfig) -> None:
        config.validate()
        self.config = config
        self.bundle = config.load_bundle()
        self.human = HumanEnemy()
        self.client_queue: asyncio.Queue | None = None
        self.client_joined = asyncio.Event()
        self.end_frame: EndFrame | None = None
        self.log = EventLog()
        if config.log_path:
            self.log.stream = open(config.log_path, "w", encoding="utf-8")

    def _broadcast(self, frame: BaseModel) -> None:
        q = self.client_queue
        if q is None:
            return
        payload = frame.model_dump_json()
        with contextlib.suppress(asyncio.QueueEmpty):
            if q.full():
                q.get_nowait()  # drop the oldest state frame, never input
        with contextlib.suppress(asyncio.QueueFull):
            q.put_nowait(payload)

    async def run(self) -> None:
        await self.client_joined.wait()
        config = self.config
        from ..arena import initial_world

        world = initial_world(
            self.bundle, seed=config.seed, enemy_armed_tier=config.enemy_armed_tier
        )
        clock = RealClock()
        service = ThreadedPlanService(make_backend(config))
        executive = Executive(
            self.bundle,
            service,
            ExecutiveConfig(
                horizon_max=config.horizon_max,
                enemy_tier_estimate=config.assumed_enemy_tier,
            ),
            event_sink=self.log.append,
            now_ms=clock.now_ms,
        )
        if config.enemy == "human":
            enemy = self.human
        else:
            import random

            enemy = make_enemy(config, self.bundle, random.Random(config.seed))
        outcome = "timeout"
        period_s = config.tick_period_ms / 1000.0
        start = time.monotonic()
        try:
            for i in range(config.duration_ticks):
                delay = start + i * period_s - time.monotonic()
                if delay > 0:
                    await asyncio.sleep(delay)
                bot_cmd = executive.tick(world)
                enemy_cmd = enemy.decide(world)
                world = step(world, bot_cmd, enemy_cmd)
                self._broadcast(build_state_frame(world, executive))
                if world.enemy.health == 0:
                    outcome = "bot_win"
                    break
                if world.bot.health == 0:
                    outcome = "enemy_win"
                    break
        finally:
            service.shutdown()
        self.log.append(
            {"event": "opponent_counts", "tick": world.tick, **executive.opponent.to_record()}
        )
        self.end_frame = EndFrame(outcome=outcome)
        self._broadcast(self.end_frame)
        if self.log.stream is not None:
            self.log.stream.close()
            self.log.stream = None


class MatchRunRequest(BaseModel):
    map_text: str | None = None
    map_path: str | None = None
    seed: int = 0
    solver: str = "oracle"
    enemy: str = "patrol"
    horizon_max: int = 8
    tick_ms: int = 100
    ticks: int = 600
    include_log: bool = False


class MatchRunResponse(BaseModel):
    report: dict
    log: list[dict] | None = None


def create_app(duel_config: MatchConfig | None = None) -> FastAPI:
    duel = DuelServer(duel_config) if duel_config is not None else None

    @contextlib.asynccontextmanager
    async def lifespan(app: FastAPI):
        task = asyncio.create_task(duel.run()) if duel is not None else None
        yield
        if task is not None:
            task.cancel()
            with contextlib.suppress(asyncio.CancelledError):
                await task

    app = FastAPI(title="qsmodels duel service", lifespan=lifespan)
    app.state.duel = duel

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok"}

    @app.post("/matches", response_model=MatchRunResponse)
    def run_headless(request: MatchRunRequest) -> MatchRunResponse:
        from fastapi import HTTPException

        from ..arena import MapInvalidError, MapParseError

        config = MatchConfig(
            map_text=request.map_text,
            map_path=request.map_path,
            seed=request.seed,
            solver=request.solver,
            enemy=request.enemy,
            horizon_max=request.horizon_max,
            tick_period_ms=request.tick_ms,
            duration_ticks=request.ticks,
            time_mode="fast",
        )
        log = EventLog()
        try:
            report = run_match(config, event_log=log)
        except (ConfigError, MapParseError, MapInvalidError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return MatchRunResponse(
            report=report.as_dict(), log=log.records if request.include_log else None
        )

    @app.websocket("/duel")
    async def duel_socket(ws: WebSocket) -> None:
        await ws.accept()
        if duel is None:
            await ws.send_json({"type": "error", "reason": "no duel configured"})
            await ws.close()
            return
        if duel.client_queue is not None:
            await ws.send_json({"type": "error", "reason": "duel already has a client"})
            await ws.close()
            return
        queue: asyncio.Queue = asyncio.Queue(maxsize=SEND_QUEUE_FRAMES)
        duel.client_queue = queue
        duel.human.connected = True
        await ws.send_text(
            build_config_frame(duel.bundle, duel.config.tick_period_ms).model_dump_json()
        )
        if duel.end_frame is not None:
            await ws.send_text(duel.end_frame.model_dump_json())
        duel.client_joined.set()

        async def sender() -> None:
            while True:
                await ws.send_text(await queue.get())

        send_task = asyncio.create_task(sender())
        try:
            while True:
                text = await ws.receive_text()
                try:
                    frame = InputFrame.model_validate_json(text)
                    if frame.type != "input":
                        raise ValueError(f"unexpected frame type {frame.type!r}")
                except (ValidationError, ValueError) as exc:
                    await ws.send_json({"type": "error", "reason": str(exc)[:200]})
                    break  # protocol violation closes this connection only
                duel.human.set_keys(frame.keys)
        except WebSocketDisconnect:
            pass
        finally:
            send_task.cancel()
            with contextlib.suppress(asyncio.CancelledError):
                await send_task
            duel.client_queue = None
            duel.human.clear()
            with contextlib.suppress(RuntimeError):
                await ws.close()

    return app


def serve_duel(config: MatchConfig) -> None:
    """Run the duel service until terminated. Raises BindError up front."""
    import uvicorn

    config.validate()
    if not config.serve_address:
        raise BindError("no serve address configured")
    host, _, port_s = config.serve_address.rpartition(":")
    if not host or not port_s.isdigit():
        raise BindError(f"serve address must be HOST:PORT, got {config.serve_address!r}")
    port = int(port_s)
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
    except OSError as exc:
        raise BindError(f"cannot bind {config.serve_address}: {exc}")
    finally:
        probe.close()
    uvicorn.run(create_app(config), host=host, port=port, log_level="warning")
