"""KPP and power-combustion nonlinearity package."""

from .kpp import KPP

__all__ = ['KPP']
