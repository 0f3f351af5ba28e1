"""Exact description complexity, formula-size games and entropy of finite model classes."""

__version__ = "0.1.0"
