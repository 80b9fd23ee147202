"""Arrhenius nonlinearity package."""

from .arrhenius import Arrhenius

__all__ = ['Arrhenius']
