"""Two-layer planning duel agent with a deterministic grid arena."""

__version__ = "0.1.0"
