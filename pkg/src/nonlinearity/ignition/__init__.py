"""Ignition nonlinearity package."""

from .ignition import Ignition

__all__ = ['Ignition']
