"""Piecewise-linear tabulated nonlinearity package."""

from .tabulated import Tabulated

__all__ = ['Tabulated']
