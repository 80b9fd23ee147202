"""Base nonlinearity package."""

from .base_nonlinearity import Nonlinearity, SignPattern

__all__ = ['Nonlinearity', 'SignPattern']
