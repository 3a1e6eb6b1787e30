"""Wire protocol frames (protocolVersion 1): pydantic models and builders.

One JSON object per text frame over a single bidirectional connection.
Server to client: config (once), state (each tick), end (once).
Client to server: input (at most one per client frame).
"""

from __future__ import annotations

from pydantic import BaseModel, Field

from ..arena import MapBundle, WorldState
from ..executive import Executive

PROTOCOL_VERSION = 1

_KIND_NAMES = {"health": "health", "ammo": "ammo"}


def _kind_name(kind) -> str:
    if kind.name == "weapon":
        return f"weapon{kind.tier}"
    return _KIND_NAMES[kind.name]


class WaypointSpec(BaseModel):
    id: str
    x: int
    y: int


class ItemSpec(BaseModel):
    id: str
    kind: str
    waypoint: str


class MapSpec(BaseModel):
    width: int
    height: int
    rows: list[str]
    waypoints: list[WaypointSpec]
    edges: list[list[str]]
    items: list[ItemSpec]


class ConfigFrame(BaseModel):
    type: str = "config"
    map: MapSpec
    tickMs: int
    protocolVersion: int = PROTOCOL_VERSION


class AgentFrame(BaseModel):
    cell: list[int]
    facing: str
    health: int
    tier: int


class ItemStateFrame(BaseModel):
    id: str
    available: bool


class PlanStep(BaseModel):
    t: int
    action: str


class PreemptionInfo(BaseModel):
    tick: int
    step: int | None = None
    emergency: str
    action: str


class StateFrame(BaseModel):
    type: str = "state"
    tick: int
    bot: AgentFrame
    enemy: AgentFrame
    items: list[ItemStateFrame]
    mode: str
    plan: list[PlanStep]
    currentStep: int | None = None
    lastPreemption: PreemptionInfo | None = None


class EndFrame(BaseModel):
    type: str = "end"
    outcome: str


class InputFrame(BaseModel):
    type: str = "input"
    keys: list[str] = Field(default_factory=list)


def build_config_frame(bundle: MapBundle, tick_ms: int) -> ConfigFrame:
    grid, graph = bundle.grid, bundle.graph
    return ConfigFrame(
        map=MapSpec(
            width=grid.width,
            height=grid.height,
            rows=list(grid.rows),
            waypoints=[WaypointSpec(id=w, x=c[0], y=c[1]) for w, c in graph.waypoints],
            edges=[[a, b] for a, b in sorted(graph.edges)],
            items=[
                ItemSpec(id=i.item_id, kind=_kind_name(i.kind), waypoint=i.waypoint)
                for i in bundle.items
            ],
        ),
        tickMs=tick_ms,
    )


def build_state_frame(world: WorldState, executive: Executive) -> StateFrame:
    state = executive.state
    plan = state.plan.steps if state.plan is not None else ()
    return StateFrame(
        tick=world.tick,
        bot=AgentFrame(
            cell=list(world.bot.cell),
            facing=world.bot.facing,
            health=world.bot.health,
            tier=world.bot.armed_tier,
        ),
        enemy=AgentFrame(
            cell=list(world.enemy.cell),
            facing=world.enemy.facing,
            health=world.enemy.health,
            tier=world.enemy.armed_tier,
        ),
        items=[
            ItemStateFrame(id=i.item_id, available=i.available) for i in world.items
        ],
        mode=state.mode,
        plan=[PlanStep(t=t, action=a.render()) for t, a in enumerate(plan)],
        currentStep=state.current_step if state.plan is not None else None,
        lastPreemption=(
            PreemptionInfo(**state.last_preemption) if state.last_preemption else None
        ),
    )
