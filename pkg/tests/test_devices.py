import math
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from wpcsim.devices import (
    AmbientSource,
    DeviceProfile,
    TransmitterSpec,
    builtin_ambient_table,
    builtin_catalog,
    closed_loop_swipt,
    dbm_to_watts,
    integrated_swipt,
    link_efficiency,
    pt_range,
    scavenged_power,
    watts_to_dbm,
)
from wpcsim.linkphys import Aperture, CarrierSpec


@pytest.fixture
def fig4_tx():
    return TransmitterSpec(
        radiated_power_w=50.0,
        aperture=Aperture.from_radius(3.0),
        carrier=CarrierSpec(2.5e9),
    )


def bisect_range(tx, dev, lo=1e-3, hi=1e5):
    """Independent oracle: bisection on delivered DC power vs consumption."""

    def surplus(d):
        return dev.rf_to_dc * tx.radiated_power_w * link_efficiency(tx, dev, d) - dev.consumption_w

    if surplus(lo) < 0:
        return None
    for _ in range(200):
        mid = (lo + hi) / 2
        if surplus(mid) >= 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


class TestDbm:
    def test_minus_10_dbm(self):
        assert dbm_to_watts(-10) == pytest.approx(1e-4)

    def test_roundtrip(self):
        assert watts_to_dbm(dbm_to_watts(-63.2)) == pytest.approx(-63.2)


class TestCatalog:
    def test_four_profiles(self):
        assert len(builtin_catalog()) == 4

    def test_tablet_entry(self):
        tablet = {d.name: d for d in builtin_catalog()}["tablet"]
        assert tablet.consumption_w == 5.0
        assert tablet.antenna_radius_m == 0.09

    def test_common_conversion_and_sensitivity(self):
        for dev in builtin_catalog():
            assert dev.rf_to_dc == 0.7
            assert dev.sensitivity_w == pytest.approx(1e-4)


class TestPtRange:
    def test_smartphone(self, fig4_tx):
        phone = {d.name: d for d in builtin_catalog()}["smartphone"]
        assert pt_range(fig4_tx, phone) == pytest.approx(19.64, abs=0.02)

    def test_laptop(self, fig4_tx):
        laptop = {d.name: d for d in builtin_catalog()}["laptop"]
        assert pt_range(fig4_tx, laptop) == pytest.approx(7.72, abs=0.01)

    def test_infeasible(self):
        tx = TransmitterSpec(0.3, Aperture.from_radius(3.0), CarrierSpec(2.5e9))
        phone = {d.name: d for d in builtin_catalog()}["smartphone"]
        assert pt_range(tx, phone) is None

    def test_matches_bisection_oracle(self, fig4_tx):
        for dev in builtin_catalog():
            closed = pt_range(fig4_tx, dev)
            oracle = bisect_range(fig4_tx, dev)
            assert closed == pytest.approx(oracle, rel=1e-6)

    def test_sensitivity_floor_binds(self, fig4_tx):
        # sensitivity above the power-constraint level shortens the range
        dev = DeviceProfile("weak", 1e-6, 0.03, rf_to_dc=0.7, sensitivity_w=1e-2)
        unconstrained = DeviceProfile("weak", 1e-6, 0.03, rf_to_dc=0.7, sensitivity_w=1e-12)
        r = pt_range(fig4_tx, dev)
        assert r < pt_range(fig4_tx, unconstrained)
        # received RF power at the returned range equals the sensitivity
        received = fig4_tx.radiated_power_w * link_efficiency(fig4_tx, dev, r)
        assert received == pytest.approx(dev.sensitivity_w, rel=1e-9)

    @given(scale=st.floats(min_value=1.1, max_value=10))
    def test_monotone_in_power(self, scale):
        tx = TransmitterSpec(50.0, Aperture.from_radius(3.0), CarrierSpec(2.5e9))
        phone = {d.name: d for d in builtin_catalog()}["smartphone"]
        boosted = replace(tx, radiated_power_w=tx.radiated_power_w * scale)
        assert pt_range(boosted, phone) > pt_range(tx, phone)

    def test_doubling_tx_radius_doubles_range(self, fig4_tx):
        phone = {d.name: d for d in builtin_catalog()}["smartphone"]
        doubled = replace(fig4_tx, aperture=Aperture.from_radius(6.0))
        assert pt_range(doubled, phone) == pytest.approx(
            2 * pt_range(fig4_tx, phone), rel=1e-9
        )

    def test_range_ordering(self, fig4_tx):
        ranges = {d.name: pt_range(fig4_tx, d) for d in builtin_catalog()}
        small = [ranges["zigbee"], ranges["smartphone"], ranges["tablet"]]
        assert (max(small) - min(small)) / max(small) <= 0.15
        for r in small:
            assert 2.0 <= r / ranges["laptop"] <= 2.7


class TestIntegratedSwipt:
    def test_snr_arithmetic(self):
        # received RF -60 dBm over noise -120 dBm is 60 dB; engineer the
        # link so beam efficiency gives exactly -60 dBm received
        tx = TransmitterSpec(1.0, Aperture(1.0), CarrierSpec(2.5e9))
        dev = DeviceProfile("probe", 1e-12, 0.01, rf_to_dc=1.0, sensitivity_w=1e-30)
        d = 100.0
        eta = link_efficiency(tx, dev, d)
        scaled = replace(tx, radiated_power_w=dbm_to_watts(-60) / eta)
        budget = integrated_swipt(scaled, dev, d, noise_power_w=dbm_to_watts(-120))
        assert budget.snr_db == pytest.approx(60.0, rel=1e-9)

    def test_feasible_boundary_at_pt_range(self, fig4_tx):
        phone = {d.name: d for d in builtin_catalog()}["smartphone"]
        r = pt_range(fig4_tx, phone)
        budget = integrated_swipt(fig4_tx, phone, r, noise_power_w=1e-15)
        assert budget.harvested_power_w == pytest.approx(0.5, rel=1e-9)
        # feasible just inside the range (the boundary itself rounds either way)
        assert integrated_swipt(fig4_tx, phone, r * (1 - 1e-6), 1e-15).feasible

    def test_infeasible_beyond_range(self, fig4_tx):
        phone = {d.name: d for d in builtin_catalog()}["smartphone"]
        r = pt_range(fig4_tx, phone)
        assert not integrated_swipt(fig4_tx, phone, r * 1.01, 1e-15).feasible


class TestClosedLoopSwipt:
    def test_double_attenuation_factor(self):
        # eta_B = 0.1 engineered via geometry; BS receives one extra eta_B
        carrier = CarrierSpec(2.5e9)
        dev = DeviceProfile("probe", 1e-9, 0.05, rf_to_dc=1.0, sensitivity_w=1e-30)
        a_r = dev.receive_aperture.area_m2
        d = 10.0
        b = -math.log(1 - 0.1)
        a_t = b * (carrier.wavelength_m * d) ** 2 / a_r
        tx = TransmitterSpec(10.0, Aperture(a_t), carrier)
        assert link_efficiency(tx, dev, d) == pytest.approx(0.1, rel=1e-12)
        integrated = integrated_swipt(tx, dev, d, 1e-15)
        closed = closed_loop_swipt(tx, dev, d, uplink_fraction=1.0, noise_power_w=1e-15)
        one_way = integrated.harvested_power_w  # rf_to_dc = 1
        bs_received = 1e-15 * 10 ** (closed.snr_db / 10)
        assert one_way == pytest.approx(1.0, rel=1e-9)
        assert bs_received == pytest.approx(0.1 * one_way, rel=1e-9)

    def test_halving_eta_quarters_bs_power(self, fig4_tx):
        dev = DeviceProfile("probe", 1e-9, 0.03, rf_to_dc=1.0, sensitivity_w=1e-30)
        noise = 1e-15

        def bs_power(d):
            snr = closed_loop_swipt(fig4_tx, dev, d, 1.0, noise).snr_db
            return noise * 10 ** (snr / 10)

        # pick distances in the far field where eta ~ 1/d^2
        d1 = 200.0
        e1 = link_efficiency(fig4_tx, dev, d1)
        # solve for the distance with half the beam efficiency
        d2 = math.sqrt(
            fig4_tx.aperture.area_m2
            * dev.receive_aperture.area_m2
            / (-math.log(1 - e1 / 2))
        ) / fig4_tx.carrier.wavelength_m
        assert bs_power(d2) == pytest.approx(bs_power(d1) / 4, rel=1e-9)

    def test_closed_loop_range_strictly_shorter(self, fig4_tx):
        # noise high enough that the uplink SNR constraint binds before the
        # power constraint: the extra eta_B factor then shortens the range
        phone = {d.name: d for d in builtin_catalog()}["smartphone"]
        noise = 1e-3
        threshold = 10.0
        distances = [0.5 + 0.1 * i for i in range(300)]
        integrated_ok = [
            d
            for d in distances
            if integrated_swipt(fig4_tx, phone, d, noise, threshold).feasible
        ]
        closed_ok = [
            d
            for d in distances
            if closed_loop_swipt(fig4_tx, phone, d, 1.0, noise, threshold).feasible
        ]
        assert closed_ok and integrated_ok
        assert max(closed_ok) < max(integrated_ok)

    def test_uplink_fraction_validation(self, fig4_tx):
        phone = builtin_catalog()[1]
        with pytest.raises(ValueError):
            closed_loop_swipt(fig4_tx, phone, 5.0, 0.0, 1e-15)


class TestScavenging:
    def test_gsm1800_at_50m(self):
        row = builtin_ambient_table()[2]
        low, high = scavenged_power(row, 0.01)
        assert low == pytest.approx(0.05e-6, rel=1e-9)
        assert high == pytest.approx(50e-6, rel=1e-9)

    def test_wifi_at_12m(self):
        row = builtin_ambient_table()[6]
        low, high = scavenged_power(row, 0.01)
        assert low == pytest.approx(1e-9, rel=1e-9)
        assert high == pytest.approx(5e-9, rel=1e-9)

    def test_zero_area(self):
        row = builtin_ambient_table()[0]
        assert scavenged_power(row, 0.0) == (0.0, 0.0)

    @given(area=st.floats(min_value=1e-6, max_value=1.0), k=st.floats(min_value=0.1, max_value=10))
    def test_linear_in_area(self, area, k):
        row = builtin_ambient_table()[3]
        low1, high1 = scavenged_power(row, area)
        low2, high2 = scavenged_power(row, k * area)
        assert low2 == pytest.approx(k * low1, rel=1e-9)
        assert high2 == pytest.approx(k * high1, rel=1e-9)
        assert low1 <= high1


class TestAmbientTable:
    def test_row_count(self):
        assert len(builtin_ambient_table()) == 7

    def test_gsm900_outdoor_row(self):
        row = builtin_ambient_table()[0]
        assert row.density_low_w_per_m2 == pytest.approx(1e-6)
        assert row.density_high_w_per_m2 == pytest.approx(1e-4)

    def test_gsm1800_at_500m(self):
        row = builtin_ambient_table()[4]
        assert row.density_low_w_per_m2 == pytest.approx(5e-7)
        assert row.density_high_w_per_m2 == pytest.approx(5e-5)

    def test_invalid_band_rejected(self):
        with pytest.raises(ValueError):
            AmbientSource("x", "y", 2.0, 1.0)
