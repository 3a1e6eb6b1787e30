from .app import BindError, DuelServer, HumanEnemy, create_app, serve_duel
from .frames import (
    ConfigFrame,
    EndFrame,
    InputFrame,
    StateFrame,
    build_config_frame,
    build_state_frame,
)

__all__ = [
    "BindError",
    "ConfigFrame",
    "DuelServer",
    "EndFrame",
    "HumanEnemy",
    "InputFrame",
    "StateFrame",
    "build_config_frame",
    "build_state_frame",
    "create_app",
    "serve_duel",
]
