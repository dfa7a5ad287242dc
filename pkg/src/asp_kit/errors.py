"""Exception hierarchy shared by every module."""

from __future__ import annotations

import os

DEFAULT_ORACLE_LIMIT = 40


def oracle_limit() -> int:
    """Vertex bound for brute-force searches; ``ASP_KIT_ORACLE_LIMIT`` overrides it."""
    raw = os.environ.get("ASP_KIT_ORACLE_LIMIT")
    if raw is None or raw.strip() == "":
        return DEFAULT_ORACLE_LIMIT
    return int(raw)


class AspKitError(Exception):
    """Base class for all library errors."""


class GraphError(AspKitError, ValueError):
    """Malformed graph data (self-loop, duplicate edge, unknown vertex)."""


class SizeLimitExceeded(AspKitError):
    def __init__(self, size: int, limit: int, what: str = "graph"):
        super().__init__(f"{what} has {size} vertices, above the limit of {limit}")
        self.size = size
        self.limit = limit


class PreconditionViolated(AspKitError, ValueError):
    pass


class NotV3C(PreconditionViolated):
    """Input is not virtually 3-connected."""


class NotTriconnected(PreconditionViolated):
    pass


class NotTwoConnected(PreconditionViolated):
    pass


class NotCubic(PreconditionViolated):
    pass


class ParallelThreads(PreconditionViolated):
    """Two threads share the same window; no structural family allows this."""


class TagMismatch(PreconditionViolated):
    pass


class NotASPInput(PreconditionViolated):
    """Raised by red-link testing when the input already holds a forbidden shape."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotASP(AspKitError):
    """The coloring procedure met a configuration that no ASP graph can contain."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotASPP(NotASP):
    pass


class ColoringInconsistency(AspKitError):
    """The coloring procedure got stuck on an input classified as ASP/ASP-P."""


class CliqueException(AspKitError):
    """The input contains the excluded clique; ``coloring`` uses one extra color."""

    clique_size = 0

    def __init__(self, coloring):
        super().__init__(
            f"graph contains K{self.clique_size}; returning a {coloring.palette_size}-coloring"
        )
        self.coloring = coloring


class K6Exception(CliqueException):
    clique_size = 6


class K5Exception(CliqueException):
    clique_size = 5
