"""Reaction terms: closed forms, sign patterns and the balance temperature."""

import math

import numpy as np
import pytest

from src.checks import check_antiderivative, check_endpoints, check_lipschitz
from src.errors import ConfigError, DomainError, SignPatternError, UnsupportedKindError
from src.nonlinearity import (
    KPP,
    Arrhenius,
    BistableCubic,
    DampedBistable,
    Ignition,
    Tabulated,
    from_config,
)

TABLE = [[0.0, 0.0], [0.2, -0.05], [0.4, 0.0], [0.7, 0.2], [1.0, 0.0]]

KINDS = [
    Ignition(theta0=0.3),
    KPP(p=1.0),
    KPP(p=4.0),
    Arrhenius(A=1.0),
    BistableCubic(a=0.25),
    BistableCubic(a=0.6),
    DampedBistable(theta0=0.3, kappa=0.1),
    Tabulated.from_pairs(TABLE, declared="bistable"),
]


def cubic_theta2(a):
    """Smaller root of 3θ² − 4(1 + a)θ + 6a = 0."""
    return (4.0 * (1.0 + a) - math.sqrt(16.0 * (1.0 + a) ** 2 - 72.0 * a)) / 6.0


@pytest.mark.parametrize("spec", KINDS, ids=lambda spec: spec.kind)
class TestEveryKind:
    def test_endpoints_vanish(self, spec):
        assert check_endpoints(spec).passed

    def test_lipschitz_constant_bounds_samples(self, spec):
        assert check_lipschitz(spec).passed

    def test_potential_is_antiderivative(self, spec):
        result = check_antiderivative(spec)
        assert result.passed, result.detail

    def test_scaled_multiplies_rate(self, spec):
        theta = np.linspace(0.0, 1.0, 11)
        np.testing.assert_allclose(spec.scaled(3.0).eval_f(theta), 3.0 * spec.eval_f(theta), atol=1e-15)

    def test_zero_amplitude_is_heat_flow(self, spec):
        heat = spec.with_amplitude(0.0)
        assert heat.lipschitz_constant() == 0.0
        assert np.all(heat.eval_f(np.linspace(0.0, 1.0, 11)) == 0.0)


def test_cubic_theta2_matches_quadratic_root():
    assert abs(BistableCubic(a=0.25).theta2() - 0.3923748) <= 1e-7
    for a in (0.1, 0.3, 0.45):
        assert abs(BistableCubic(a=a).theta2() - cubic_theta2(a)) <= 1e-10


def test_tabulated_theta2_solves_its_segment():
    spec = Tabulated.from_pairs(TABLE, declared="bistable")
    assert spec.theta0 == pytest.approx(0.4)
    theta2 = spec.theta2()
    assert theta2 == pytest.approx(0.4 + math.sqrt(0.03), abs=1e-12)
    assert abs(spec.potential(theta2)) <= 1e-12


def test_damped_bistable_balance_approaches_theta0():
    gaps = [DampedBistable(theta0=0.3, kappa=k).theta2() - 0.3 for k in (0.1, 0.01, 1e-4)]
    assert gaps[0] > gaps[1] > gaps[2] > 0.0
    assert gaps[2] < 2e-3


def test_cubic_mean_rate_is_exact_for_polynomials():
    spec = BistableCubic(a=0.25)
    expected = (spec.potential(0.5) - spec.potential(0.4)) / 0.1
    assert spec.mean_rate(0.4, 0.5) == pytest.approx(expected, rel=1e-12)


def test_ignition_vanishes_below_theta0():
    spec = Ignition(theta0=0.3)
    assert np.all(spec.eval_f(np.linspace(0.0, 0.3, 31)) == 0.0)
    assert spec.eval_f(0.65) == pytest.approx(0.35 * 0.35)
    assert spec.delta == pytest.approx(0.35)


@pytest.mark.parametrize(
    "spec, pattern",
    [
        (Ignition(theta0=0.3), "ignition"),
        (KPP(p=2.0), "positive"),
        (BistableCubic(a=0.25), "bistable"),
    ],
)
def test_sign_pattern(spec, pattern):
    report = spec.check_sign_pattern()
    assert report.pattern == pattern


def test_declared_family_must_match_samples():
    with pytest.raises(SignPatternError):
        Tabulated.from_pairs(TABLE, declared="ignition")


@pytest.mark.parametrize(
    "build",
    [
        lambda: BistableCubic(a=0.0),
        lambda: Ignition(theta0=1.2),
        lambda: KPP(p=0.5),
        lambda: Arrhenius(A=-1.0),
        lambda: Ignition(theta0=0.3, amplitude=-1.0),
        lambda: Tabulated.from_pairs([[0.0, 0.0], [0.5, 0.1]], declared="kpp"),
    ],
)
def test_invalid_parameters(build):
    with pytest.raises(DomainError):
        build()


def test_eval_outside_unit_interval():
    with pytest.raises(DomainError):
        Ignition(theta0=0.3).eval_f(1.5)


@pytest.mark.parametrize("spec", [Ignition(theta0=0.3), KPP(p=1.0), BistableCubic(a=0.6)], ids=str)
def test_theta2_needs_negative_then_positive_potential(spec):
    with pytest.raises(UnsupportedKindError):
        spec.theta2()


def test_from_config_builds_each_kind():
    assert isinstance(from_config({"kind": "bistable", "a": 0.3}), BistableCubic)
    assert from_config({"kind": "kpp", "p": 2.0, "amplitude": 2.0}).amplitude == 2.0
    assert isinstance(from_config({"kind": "tabulated", "table": TABLE, "declared": "bistable"}), Tabulated)
    with pytest.raises(ConfigError):
        from_config({"kind": "quadratic"})
