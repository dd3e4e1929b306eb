"""
Decision backends for the monitor loop
"""

from .base import DecisionBackend
from .ddd import DddBackend
from .oracle import OracleBackend

BACKENDS = {
    DddBackend.name: DddBackend,
    OracleBackend.name: OracleBackend,
}


def get_backend(name: str) -> DecisionBackend:
    """Get a decision backend by name"""
    try:
        return BACKENDS[name]()
    except KeyError:
        raise ValueError(
            f"Unsupported backend: {name} (choose from {', '.join(BACKENDS)})"
        ) from None


__all__ = [
    "DecisionBackend",
    "DddBackend",
    "OracleBackend",
    "BACKENDS",
    "get_backend",
]
