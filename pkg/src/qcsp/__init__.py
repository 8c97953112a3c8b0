"""Fault-tolerant resource estimates for quantum search on constraint satisfaction problems."""

__version__ = "0.1.0"
