"""Bistable nonlinearity package."""

from .bistable import BistableCubic, DampedBistable

__all__ = ['BistableCubic', 'DampedBistable']
