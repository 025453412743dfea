"""Deterministic theorem-proving decision engine for claim adjudication."""

__version__ = "0.1.0"
