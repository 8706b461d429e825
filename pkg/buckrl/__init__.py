"""Workbench for deep Q-network voltage control of a buck converter feeding constant power loads."""

__version__ = "0.1.0"
