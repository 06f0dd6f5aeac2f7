"""Maternity care messaging service: registration, reviews, advice, rescue."""

__version__ = "0.1.0"
