"""Command-line interface."""

from .interface import app, cli

__all__ = ["app", "cli"]
