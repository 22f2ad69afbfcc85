"""Executable circumference bounds: exact invariants, exact-rational bound
evaluation, extremal generators and the HC-extension machinery."""

__version__ = "0.1.0"
