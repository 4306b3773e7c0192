import cmath
import math

import numpy as np
import pytest

import eit4


def test_hamiltonian_is_hermitian():
    cfg = eit4.DriveConfig(delta=0.3, omega_c=2.0, omega_r=0.5, omega_r_prime=0.5j, omega_p=0.1, omega_p_prime=0.1)
    h = eit4.build_hamiltonian(cfg)
    assert h.shape == (5, 5)
    assert np.allclose(h, h.conj().T, atol=1e-15)


def test_dressed_norm_identity():
    cfg = eit4.DriveConfig(omega_c=1.0, omega_r=0.7, omega_r_prime=0.2 + 0.4j, omega_p=0.3, omega_p_prime=-0.1j)
    d = eit4.dressed_basis(cfg)
    lhs = abs(d.omega0) ** 2 + abs(d.omega) ** 2
    rhs = abs(cfg.omega_p) ** 2 + abs(cfg.omega_p_prime) ** 2
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_steady_state_matches_closed_form():
    cfg = eit4.DriveConfig(omega_c=4.0, omega_r=1.0, omega_r_prime=1.0)
    relax = eit4.RelaxationParams(gamma_ex=1e-4)
    num = eit4.steady_state_numeric(cfg, relax)
    ana = eit4.steady_state_analytic(cfg, relax)
    assert np.trace(num).real == pytest.approx(1.0, abs=1e-12)
    assert np.max(np.abs(num - ana)) < 1e-9
    assert np.linalg.eigvalsh(num).min() > -1e-12


def test_resonant_absorption_matches_perturbative_formula():
    sc = eit4.ScenarioConfig()
    sc.omega_c, sc.omega_r, sc.gamma_ratio = 1.0, 0.01, 1e-4
    chi = eit4.chi_components(eit4.DriveConfig(omega_c=1.0), sc.relaxation(), sc.polarization(), 0.0)
    for psi in (0.0, math.pi / 6):
        num = eit4.chi_of_psi(chi, psi).chi_psi.imag
        ana = eit4.im_chi_resonant_analytic(1.0, 0.01, 1e-4, psi)
        assert num == pytest.approx(ana, rel=1e-3)


def test_no_transparency_angle_raises():
    with pytest.raises(eit4.NoTransparencyAngle):
        eit4.non_raman_angle_analytic(1.0, 0.005, 1e-4)


def test_preset_spectrum_and_emitters():
    sc = eit4.preset("fig2a")
    sc.delta_points = 41
    pts = eit4.run_spectrum(sc)
    assert len(pts) == 41
    assert [pts[i].delta for i in eit4.local_minima([p.chi_psi.imag for p in pts])] == [0.0]
    csv = eit4.spectrum_csv(pts)
    assert csv.splitlines()[0].startswith("delta,re_chi_x,im_chi_x")
    assert csv == eit4.spectrum_csv(eit4.run_spectrum(sc))
    assert '"points"' in eit4.spectrum_json(sc, pts)
    assert eit4.spectrum_svg(sc, pts).startswith("<svg")


def test_config_errors_map_to_value_error():
    with pytest.raises(ValueError):
        eit4.parse_config("colour = red\n")
    with pytest.raises(ValueError):
        eit4.preset("fig9")
    sc = eit4.parse_config("omega_c = 2\nomega_r = 0.1\n")
    assert sc.omega_c == 2.0
    assert sc.sigma() == pytest.approx(0.1 / math.sqrt(2))


def test_format_real():
    assert eit4.format_real(-0.25) == "-2.5000000000000000e-01"
    assert cmath.isclose(complex(float(eit4.format_real(math.pi))), math.pi)
