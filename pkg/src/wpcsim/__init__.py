"""Microwave power transfer and wirelessly powered communication toolkit."""

__version__ = "0.1.0"
