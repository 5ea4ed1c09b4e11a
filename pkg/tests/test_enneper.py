import math

import numpy as np
import pytest

from enneper_forge import enneper, fixtures
from enneper_forge.cexpr import HoloFn
from enneper_forge.errors import DegenerateAt, NotHolomorphic
from enneper_forge.geometry import immersion_margin
from enneper_forge.hfield import Domain, HarmonicField
from enneper_forge.surface import EnneperData, eval_point

LOG = HarmonicField(HoloFn.constant(0), 1.0)
ZERO_H = HarmonicField.parse("0")


def test_build_catenoid_on_wide_annulus():
    imm = enneper.build("z/2", "1/(2*z)", LOG, Domain.annulus(0.2, 5))
    assert imm.report.passed
    # |L'| = |P'| on the neck: the planar part folds, the surface does not
    assert imm.report.planar_condition_fails
    for t in np.linspace(0, 2 * np.pi, 7):
        z = np.exp(1j * t)
        hz = imm.data.hz(z)
        assert immersion_margin(imm, z) == pytest.approx(2 * abs(hz) ** 2, abs=1e-14)
        assert immersion_margin(imm, z) == pytest.approx(0.5, abs=1e-14)


def test_build_plane():
    imm = enneper.build("z", "0", ZERO_H, Domain.disk(0, 1))
    assert imm.report.passed
    assert not imm.report.planar_condition_fails


def test_build_rank_one():
    with pytest.raises(DegenerateAt):
        enneper.build("z", "z", ZERO_H, Domain.disk(0, 1))


def test_build_rejects_non_harmonic_height():
    class Wobbly(HarmonicField):
        def __call__(self, z):
            return abs(z) ** 2

    with pytest.raises(NotHolomorphic):
        enneper.build("z", "0", Wobbly(HoloFn.constant(0), 0.0), Domain.disk(0, 1))


def test_eval_point_examples(surfaces):
    cat = surfaces["catenoid"]
    p, h = eval_point(cat, 1)
    assert p == pytest.approx(1) and h == pytest.approx(0)
    p, h = eval_point(cat, math.e)
    assert p == pytest.approx(math.cosh(1), abs=1e-15) and h == pytest.approx(1)
    p, h = eval_point(surfaces["plane"], 3 + 4j)
    assert p == 3 + 4j and h == 0


def test_hopf_catenoid_and_helicoids(rng, surfaces):
    zs = Domain.annulus(0.5, 2).random_points(rng, 10)
    assert np.max(np.abs(enneper.hopf(surfaces["catenoid"]).values(zs))) < 1e-15
    zs = Domain.half_plane(0).random_points(rng, 10)
    assert np.max(np.abs(enneper.hopf(surfaces["helicoid_y2"]).values(zs))) < 1e-12
    assert abs(enneper.hopf(surfaces["helicoid_y1"])(0) - 0.25) < 1e-12


def test_to_weierstrass_examples(rng, surfaces):
    w = enneper.to_weierstrass(surfaces["plane"])
    assert [p(0.3) for p in w.phis] == [0.5, -0.5j, 0]
    w = enneper.to_weierstrass(surfaces["helicoid_y2"])
    for z in Domain.half_plane(0).random_points(rng, 10):
        got = [p(z) for p in w.phis]
        want = [np.cosh(z) / 2, 0.5j * np.sinh(z), 0.5j]
        assert np.allclose(got, want, rtol=1e-13, atol=1e-13)
    w = enneper.to_weierstrass(surfaces["catenoid"])
    zs = Domain.annulus(0.5, 2).random_points(rng, 10)
    assert np.max(np.abs(w.hopf().values(zs))) < 1e-14


class TestScale:
    def test_identity(self, rng, surfaces):
        y1 = surfaces["helicoid_y1"]
        s = enneper.scale(y1, 1)
        zs = y1.domain.random_points(rng, 20, 0.1)
        X0 = np.array([y1.points(z) for z in zs]) - y1.points(y1.base_point)
        X1 = np.array([s.points(z) for z in zs]) - s.points(s.base_point)
        assert np.max(np.abs(X0 - X1)) < 1e-12

    def test_hopf_factor(self, surfaces):
        s = enneper.scale(surfaces["helicoid_y1"], 2)
        assert abs(enneper.hopf(s)(0) - 1.0) < 1e-12

    def test_catenoid_by_i_is_minimal(self, rng, surfaces):
        c = enneper.scale(surfaces["catenoid"], 1j)
        zs = c.domain.random_points(rng, 50, 1e-3)
        assert np.max(np.abs(enneper.hopf(c).values(zs))) < 1e-12

    def test_vanishing_factor(self, surfaces):
        with pytest.raises(DegenerateAt):
            enneper.scale(surfaces["helicoid_y1"], "z")

    def test_nonconstant_factor_on_disk(self, rng, surfaces):
        y1 = surfaces["helicoid_y1"]
        s = enneper.scale(y1, "exp(z)")
        for z in y1.domain.random_points(rng, 10, 0.1):
            assert abs(enneper.hopf(s)(z) - np.exp(2 * z) * enneper.hopf(y1)(z)) < 1e-10 * max(1, abs(np.exp(2 * z)))

    def test_planar_period_reported(self):
        # f = 1/z turns L' = 1/2 into 1/(2z): L1 picks up log z
        d = EnneperData(HoloFn.parse("z/2"), HoloFn.parse("0"), HarmonicField.parse("0"), Domain.annulus(0.5, 2))
        s = enneper.scale(d, "1/z")
        assert s.slit
        assert abs(s.periods["planar"] - math.pi * 1j) < 1e-9


class TestConjugate:
    def test_plane(self, surfaces):
        c = enneper.conjugate(surfaces["plane"])
        assert abs(c.L(1) - c.L(0) - 1j) < 1e-15
        assert abs(c.P(0.3)) == 0
        assert c.h(0.4 + 0.1j) == pytest.approx(0.0)

    def test_catenoid_period(self, surfaces):
        c = enneper.conjugate(surfaces["catenoid"])
        assert c.slit
        # h1 = -arg z up to a constant
        assert abs(c.periods["height"] + 2 * math.pi) < 1e-9

    def test_twice_reflects(self, rng, surfaces):
        y1 = surfaces["helicoid_y1"]
        cc = enneper.conjugate(enneper.conjugate(y1))
        zs = y1.domain.random_points(rng, 20, 0.1)
        base = y1.points(y1.base_point)
        # f^2 = -1: X -> -X + const
        for z in zs:
            got = cc.points(z) - cc.points(y1.base_point)
            assert np.max(np.abs(got + (y1.points(z) - base))) < 1e-9


def test_holomorphy_check_fixtures(surfaces):
    for d in surfaces.values():
        assert enneper.holomorphy_check(d) < 1e-6


def test_fixture_configs_build():
    for name, cfg in fixtures.configs().items():
        d = fixtures.from_config(cfg)
        imm = enneper.build(d.L, d.P, d.h, d.domain, 32)
        assert imm.report.passed, name
