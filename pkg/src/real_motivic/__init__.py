"""Real motivic engine - motivic Milnor fibres, zeta functions and Euler calculus over the reals."""

__version__ = "0.1.0"
__author__ = "Real Motivic Team"

from .server import get_server, server

__all__ = ["server", "get_server"]
