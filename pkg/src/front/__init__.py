"""Traveling-front profiles and speeds."""

from .shooting import FrontSolution, Shot, Verdict, front_speed, profile_residual, shoot

__all__ = [
    'FrontSolution',
    'Shot',
    'Verdict',
    'front_speed',
    'profile_residual',
    'shoot',
]
