"""Reaction-term families: ignition, KPP/combustion, Arrhenius, bistable, tabulated."""

from typing import Any, Dict, Mapping

from .base import Nonlinearity, SignPattern
from .ignition import Ignition
from .kpp import KPP
from .arrhenius import Arrhenius
from .bistable import BistableCubic, DampedBistable
from .tabulated import Tabulated
from ..errors import ConfigError


def from_config(section: Mapping[str, Any]) -> Nonlinearity:
    """Build a nonlinearity from the ``nonlinearity`` section of a run config."""
    kind = section.get("kind")
    amplitude = float(section.get("amplitude", 1.0))
    builders: Dict[str, Any] = {
        "ignition": lambda: Ignition(theta0=float(section.get("theta0", 0.3)), amplitude=amplitude),
        "kpp": lambda: KPP(p=float(section.get("p", 1.0)), amplitude=amplitude),
        "arrhenius": lambda: Arrhenius(A=float(section.get("A", 1.0)), amplitude=amplitude),
        "bistable": lambda: BistableCubic(a=float(section.get("a", 0.25)), amplitude=amplitude),
        "damped_bistable": lambda: DampedBistable(
            theta0=float(section.get("theta0", 0.3)),
            kappa=float(section.get("kappa", 0.1)),
            amplitude=amplitude,
        ),
        "tabulated": lambda: Tabulated.from_pairs(
            section.get("table") or [],
            declared=section.get("declared") or "bistable",
            amplitude=amplitude,
        ),
    }
    if kind not in builders:
        raise ConfigError(f"nonlinearity.kind: unknown kind '{kind}' (expected one of {sorted(builders)})")
    return builders[kind]()


__all__ = [
    'Nonlinearity',
    'SignPattern',
    'Ignition',
    'KPP',
    'Arrhenius',
    'BistableCubic',
    'DampedBistable',
    'Tabulated',
    'from_config',
]
