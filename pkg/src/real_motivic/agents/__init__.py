"""Agents orchestrating the engine's routes and validation suites."""

from .validator import ValidationAgent

__all__ = ["ValidationAgent"]
