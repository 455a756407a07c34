import math

import numpy as np
import pytest

from gffads.adsboundary import (AdSFieldSpec, ads2pt, ads_commutator,
                                ads_commutator_mass_route, bonus_locality,
                                boundary_limit_check, boundary_limit_const,
                                ccr_check, holographic_lift,
                                mass_change_kernel_check)
from gffads.correlators import BesselZ, GaussianPacket, smeared2pt
from gffads.errors import DomainError, LightConeProximityError
from gffads.fock import LightconeGrid, inner_product, position_wavefunction
from gffads.quadrature import FINE_SCHEDULE
from gffads.spacetime import MinkVector
from gffads.specfun import Order

from conftest import rel_err


SPEC = AdSFieldSpec(Order(0.5))


class TestAdSFieldSpec:
    def test_delta_and_mass(self):
        assert SPEC.delta == pytest.approx(1.5)
        assert SPEC.mass_squared == pytest.approx(-0.75)
        assert AdSFieldSpec(Order(0.0)).mass_squared == pytest.approx(-1.0)

    def test_dimension_guard(self):
        with pytest.raises(DomainError):
            AdSFieldSpec(Order(0.5), d=1)


class TestAds2pt:
    def test_depth_domain(self):
        with pytest.raises(DomainError):
            ads2pt(SPEC, 0.0, 1.0, MinkVector((0.0, 1.0)))

    def test_depth_exchange_symmetry(self):
        x = MinkVector((0.0, 1.0))
        a = ads2pt(SPEC, 0.6, 1.3, x)
        b = ads2pt(SPEC, 1.3, 0.6, x)
        assert abs(a.value - b.value) < 1e-12 * abs(a.value)

    def test_chordal_dependence(self):
        # two configurations with equal chordal distance
        # u = (r^2 + (z - z')^2) / (2 z z') give equal correlators
        a = ads2pt(SPEC, 1.0, 1.0, MinkVector((0.0, 1.0)), epsilon=1e-6)
        r2 = 0.5 * 2.0 * 0.8 * 1.25 - 0.45 ** 2
        b = ads2pt(SPEC, 0.8, 1.25, MinkVector((0.0, math.sqrt(r2))),
                   epsilon=1e-6)
        assert abs(a.value - b.value) < 1e-9 * abs(a.value)

    def test_dilation_invariance(self):
        lam = 1.5
        x = MinkVector((0.0, 0.9))
        a = ads2pt(SPEC, 0.7, 1.1, x, epsilon=1e-3)
        b = ads2pt(SPEC, lam * 0.7, lam * 1.1, x.scale(lam),
                   epsilon=lam * 1e-3)
        assert abs(a.value - b.value) < 1e-9 * abs(a.value)


class TestBoundaryLimit:
    def test_const_value(self):
        # 2^(-nu - 1/2) / Gamma(nu + 1) at nu = 1/2 is 1 / sqrt(pi)
        assert boundary_limit_const(0.5) == pytest.approx(
            1.0 / math.sqrt(math.pi), rel=1e-13)

    @pytest.mark.parametrize("nu", [0.0, 0.5])
    def test_scaled_correlator_converges(self, nu):
        rep = boundary_limit_check(AdSFieldSpec(Order(nu)),
                                   (0.08, 0.04, 0.02), MinkVector((0.0, 4.0)))
        assert rep["monotone"]
        assert rep["relative_deviations"][-1] < 1e-2

    def test_validation(self):
        with pytest.raises(DomainError):
            boundary_limit_check(SPEC, (0.02, 0.04), MinkVector((0.0, 4.0)))
        with pytest.raises(DomainError):
            boundary_limit_check(SPEC, (0.04, 0.02), MinkVector((2.0, 0.5)))


class TestHolographicLift:
    def setup_method(self):
        self.f = GaussianPacket(MinkVector((0.0, 0.0)), 1.0,
                                MinkVector((2.0, 0.3)))
        self.grid = LightconeGrid(n=160, kmin=1e-5)
        self.psi = position_wavefunction(self.f, None, self.grid)

    def test_methods_agree(self):
        kp, km, _ = self.grid.mesh()
        a = holographic_lift(SPEC, 0.4, self.psi, method="bessel_j")
        b = holographic_lift(SPEC, 0.4, self.psi, method="j_even")
        assert np.max(np.abs(a(kp, km) - b(kp, km))) < 1e-10

    def test_boundary_scaling_limit(self):
        # z^(-Delta) h_z(k^2) -> c_nu (k^2)^(nu/2) as z -> 0
        z = 1e-4
        kp, km, _ = self.grid.mesh()
        lifted = holographic_lift(SPEC, z, self.psi)(kp, km) / z ** SPEC.delta
        target = boundary_limit_const(SPEC.nu) * (kp * km) ** (SPEC.nu / 2.0) \
            * self.psi(kp, km)
        assert np.max(np.abs(lifted - target)) <= \
            1e-6 * np.max(np.abs(target))

    def test_inner_product_reproduces_bulk_2pt(self):
        l1 = holographic_lift(SPEC, 0.3, self.psi)
        l2 = holographic_lift(SPEC, 0.5, self.psi)
        got = inner_product(l1, l2)
        want = smeared2pt(BesselZ(0.3, SPEC.order), self.f,
                          BesselZ(0.5, SPEC.order), self.f, n_nodes=240).value
        assert rel_err(got, want) < 1e-8

    def test_validation(self):
        with pytest.raises(DomainError):
            holographic_lift(SPEC, 0.0, self.psi)
        with pytest.raises(DomainError):
            holographic_lift(SPEC, 0.4, self.psi, method="nope")


class TestCcr:
    def test_overlapping_profiles(self):
        g = lambda z: np.exp(-(np.asarray(z) - 1.0) ** 2 / (2 * 0.12 ** 2))
        gp = lambda z: np.exp(-(np.asarray(z) - 1.1) ** 2 / (2 * 0.15 ** 2))
        f = lambda x: np.exp(-np.asarray(x) ** 2 / 2)
        fp = lambda x: np.exp(-(np.asarray(x) - 0.3) ** 2 / (2 * 0.8 ** 2))
        rep = ccr_check(SPEC, g, gp, f, fp, (0.4, 1.6), (0.4, 1.8))
        assert rep["relative_discrepancy"] < 1e-6
        assert abs(rep["mode_value"]) > 0.1

    def test_disjoint_profiles_vanish(self):
        g = lambda z: np.exp(-(np.asarray(z) - 1.0) ** 2 / (2 * 0.12 ** 2))
        gp = lambda z: np.exp(-(np.asarray(z) - 2.5) ** 2 / (2 * 0.15 ** 2))
        f = lambda x: np.exp(-np.asarray(x) ** 2 / 2)
        fp = lambda x: np.exp(-(np.asarray(x) - 0.3) ** 2 / (2 * 0.8 ** 2))
        rep = ccr_check(SPEC, g, gp, f, fp, (0.4, 1.6), (1.9, 3.1))
        assert abs(rep["mode_value"]) < 1e-10
        assert abs(rep["product_value"]) < 1e-10


class TestBonusLocality:
    def test_vanishing_region(self):
        # a^2 < (b - c)^2: the integral vanishes even though the boundary
        # interval is timelike
        a, b, c = 0.4, 1.0, 1.5
        res = bonus_locality(0.0, Order(0.5), a, b, c,
                             schedule=FINE_SCHEDULE)
        scale = abs(bonus_locality(0.0, Order(0.5), 1.0, b, c,
                                   schedule=FINE_SCHEDULE).value)
        assert abs(res.value) < 1e-5 * scale

    @pytest.mark.parametrize("a", [0.6, 1.2, 2.0])
    def test_interior_closed_form(self, a):
        # |b - c| < a < b + c: I = 1 / (pi sqrt(b c) sqrt(a^2 - (b - c)^2))
        b, c = 1.0, 1.5
        res = bonus_locality(0.0, Order(0.5), a, b, c,
                             schedule=FINE_SCHEDULE)
        oracle = 1.0 / (math.pi * math.sqrt(b * c)
                        * math.sqrt(a * a - (b - c) ** 2))
        assert rel_err(res.value.real, oracle) < 1e-6

    def test_far_region_closed_form(self):
        # a > b + c picks up both cosine terms
        a, b, c = 3.0, 1.0, 1.5
        res = bonus_locality(0.0, Order(0.5), a, b, c,
                             schedule=FINE_SCHEDULE)
        oracle = (1.0 / (math.pi * math.sqrt(b * c))) * (
            1.0 / math.sqrt(a * a - (b - c) ** 2)
            - 1.0 / math.sqrt(a * a - (b + c) ** 2))
        assert rel_err(res.value.real, oracle) < 1e-8

    def test_depth_exchange_symmetry(self):
        r1 = bonus_locality(0.0, Order(0.7), 1.1, 0.8, 1.4,
                            schedule=FINE_SCHEDULE)
        r2 = bonus_locality(0.0, Order(0.7), 1.1, 1.4, 0.8,
                            schedule=FINE_SCHEDULE)
        assert abs(r1.value - r2.value) < 1e-9

    def test_domain(self):
        with pytest.raises(DomainError):
            bonus_locality(0.0, Order(0.5), -1.0, 1.0, 1.0)


class TestAdsCommutator:
    def test_spacelike_zero(self):
        res = ads_commutator(SPEC, 0.5, 0.7, MinkVector((0.1, 2.0)))
        assert res.value == 0.0

    def test_boundary_lightcone_rejected(self):
        with pytest.raises(DomainError):
            ads_commutator(SPEC, 0.5, 0.7, MinkVector((1.0, 1.0)))

    def test_guard_band(self):
        # tau^2 = 0.251 sits within 5 percent of (z - z')^2 = 0.25
        with pytest.raises(LightConeProximityError):
            ads_commutator(SPEC, 1.0, 0.5,
                           MinkVector((math.sqrt(0.251), 0.0)))

    def test_vanishes_inside_ads_spacelike_wedge(self):
        # tau^2 < (z - z')^2: boundary-timelike but bulk-spacelike
        res = ads_commutator(SPEC, 0.5, 1.5, MinkVector((0.6, 0.0)),
                             schedule=FINE_SCHEDULE)
        scale = abs(ads_commutator(SPEC, 0.5, 0.7, MinkVector((1.0, 0.2)),
                                   schedule=FINE_SCHEDULE).value)
        assert abs(res.value) < 1e-5 * scale

    @pytest.mark.parametrize("z,zp,t", [(0.5, 0.7, 1.0), (0.8, 1.0, 1.4),
                                        (0.3, 0.9, 1.1)])
    def test_two_routes_agree(self, z, zp, t):
        x = MinkVector((t, 0.2))
        a = ads_commutator(SPEC, z, zp, x, schedule=FINE_SCHEDULE)
        b = ads_commutator_mass_route(SPEC, z, zp, x,
                                      schedule=FINE_SCHEDULE)
        assert abs(a.value - b.value) < 1e-8
        assert abs(a.value) > 1e-3

    def test_antisymmetry(self):
        x = MinkVector((1.0, 0.2))
        a = ads_commutator(SPEC, 0.5, 0.7, x, schedule=FINE_SCHEDULE)
        b = ads_commutator(SPEC, 0.5, 0.7, -x, schedule=FINE_SCHEDULE)
        assert abs(a.value + b.value) < 1e-8


class TestMassChangeKernel:
    def test_identity_order(self):
        rep = mass_change_kernel_check(0.5, 0.5, 0.7, 1.2)
        assert rep["relative_deviation"] < 5e-3

    def test_order_change(self):
        rep = mass_change_kernel_check(0.5, 1.5, 0.7, 1.2)
        assert rep["relative_deviation"] < 5e-3

    def test_validation(self):
        with pytest.raises(DomainError):
            mass_change_kernel_check(0.5, 1.5, -0.1, 1.0)
        with pytest.raises(DomainError):
            mass_change_kernel_check(0.5, 1.5, 0.7, 1.2,
                                     epsilons=(0.1, 0.2, 0.05))
