"""
Command-line interface for timed trace monitoring
"""

from .commands import cli, main

__all__ = ["cli", "main"]
