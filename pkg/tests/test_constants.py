import math

import pytest
from hypothesis import given, strategies as st

from thermal_forces import constants as C


def test_codata_exact_values():
    assert C.h == 6.62607015e-34
    assert C.c == 299792458.0
    assert C.k_B == 1.380649e-23
    assert C.e == 1.602176634e-19


def test_hbar_from_h():
    assert C.hbar == C.h / (2 * math.pi)
    assert math.isclose(C.hbar, 1.054571817e-34, rel_tol=1e-9)


def test_flux_quanta():
    assert C.flux_quantum_pair == pytest.approx(2.067833848e-15, rel=1e-9)
    assert C.flux_quantum_electron == 2 * C.flux_quantum_pair


def test_xi_room_temperature_micron():
    xi = C.xi_parameter(1e-6, 300.0).value
    assert xi == pytest.approx(2 * math.pi * C.k_B * 300 * 1e-6 / (C.hbar * C.c), rel=1e-15)
    assert xi == pytest.approx(0.8232, abs=1e-4)


def test_first_matsubara_frequency():
    assert C.matsubara_frequency(1, 300.0) == pytest.approx(2.4678e14, rel=1e-4)
    assert C.matsubara_frequency(0, 300.0) == 0.0


def test_temperature_for_xi_roundtrip():
    T = C.temperature_for_xi(5.0, 1e-6)
    assert C.xi_parameter(1e-6, T).value == pytest.approx(5.0, rel=1e-14)


@pytest.mark.parametrize("a,T", [(0.0, 300.0), (-1e-6, 300.0), (1e-6, -1.0)])
def test_xi_domain(a, T):
    with pytest.raises(ValueError):
        C.xi_parameter(a, T)


@given(st.floats(1e-9, 1e-3), st.floats(1e-3, 1e4), st.floats(0.1, 10.0))
def test_xi_bilinear(a, T, s):
    base = C.xi_parameter(a, T).value
    assert C.xi_parameter(s * a, T).value == pytest.approx(s * base, rel=1e-13)
    assert C.xi_parameter(a, s * T).value == pytest.approx(s * base, rel=1e-13)


@given(st.integers(0, 1000), st.floats(1e-3, 1e4))
def test_matsubara_linear_in_n(n, T):
    assert C.matsubara_frequency(n, T) == pytest.approx(n * C.matsubara_frequency(1, T), rel=1e-13)
