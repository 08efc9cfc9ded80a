"""Linearizability of finite group actions on rational surfaces, decided exactly."""

__version__ = "0.1.0"
