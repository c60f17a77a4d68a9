import math

import pytest

import bbfric

HBAR = 1.054571817e-34
K_B = 1.380649e-23
C = 299792458.0
T2 = 300.0
W2 = K_B * T2 / HBAR


def lorentz(chi=1.0, width=0.1):
    w0 = 2.0 * chi * W2
    return bbfric.PolarizabilityModel.lorentz(alpha0=1e-24, omega0=w0, gamma_d=width * w0)


def test_version():
    assert bbfric.__version__ == "0.1.0"


def test_model_and_errors():
    m = lorentz()
    assert m.alpha_imag(0.0) == 0.0
    assert m.alpha_imag(-0.3 * m.omega0) == -m.alpha_imag(0.3 * m.omega0)
    with pytest.raises(ValueError):
        bbfric.PolarizabilityModel.lorentz(alpha0=-1.0, omega0=1.0, gamma_d=1.0)
    d = bbfric.PolarizabilityModel.delta_resonance(alpha0=1e-24, omega0=1e14)
    assert not d.is_smooth
    with pytest.raises(bbfric.UnsupportedEvaluation):
        d.alpha_imag(1e14)


def test_frame_identity():
    m = lorentz()
    cfg = bbfric.QuadratureConfig()
    cfg.rel_tol = 1e-10
    kw = dict(model=m, beta=0.5, Omega=0.4 * m.omega0, theta=math.pi / 3, T1=900.0, T2=T2, cfg=cfg)
    direct = bbfric.force_comoving(**kw)
    combo = bbfric.force_comoving_from_lab(**kw)
    assert direct.converged and combo.converged
    assert direct.value < 0.0
    assert abs(direct.value - combo.value) <= 1e-6 * abs(direct.value)
    assert "ForceResult(value=" in repr(direct)


def test_rest_and_heating_sign():
    m = lorentz()
    assert bbfric.force_comoving(model=m, beta=0.0, T1=T2, T2=T2).value == 0.0
    assert bbfric.heating_rate_lab(model=m, beta=0.0, T1=100.0, T2=T2).value > 0.0
    assert bbfric.heating_rate_lab(model=m, beta=0.0, T1=900.0, T2=T2).value < 0.0


def test_nonrel_chain():
    m = lorentz(2.0, 0.05)
    a = bbfric.force_nonrel(V=1e5, Omega=0.0, theta=0.7, model=m, T2=T2)
    b = bbfric.force_mkrtchian(V=1e5, model=m, T2=T2)
    assert a.value == pytest.approx(b.value, rel=1e-9)
    assert bbfric.force_unit(V=1e5, model=m) > 0.0
    assert bbfric.reduced_chi(omega0=m.omega0, T2=T2) == pytest.approx(2.0, rel=1e-15)


def test_resonance():
    assert bbfric.rotation_correction_G(2.5) == pytest.approx(-0.465392, abs=1e-6)
    assert bbfric.acceleration_threshold(2.5) == pytest.approx(0.7329, abs=1e-4)
    assert bbfric.acceleration_threshold(0.5) is None
    lo, hi = bbfric.acceleration_window()
    assert lo == pytest.approx(1.3158, abs=1e-3)
    assert hi == pytest.approx(3.6040, abs=1e-3)
    f0 = bbfric.resonance_force_exact(u=0.0, chi=2.5)
    assert f0 == pytest.approx(-2.5 / math.sinh(2.5) ** 2, rel=1e-14)
    assert bbfric.resonance_force_quadratic(u=0.0, chi=2.5) == pytest.approx(f0, rel=1e-14)
    rows = bbfric.fig2_curves([0.0, 0.5, 1.0])
    assert len(rows) == 12
    assert rows[0][:2] == (1.5, 0.0)


def test_dipole_warnings():
    m = lorentz()
    assert bbfric.validate_dipole_conditions(model=m, radius=1e-8, T1=T2, T2=T2, Omega=1e9) == []
    warnings = bbfric.validate_dipole_conditions(model=m, radius=1e-8, T1=T2, T2=T2,
                                                 Omega=0.5 * C / 1e-8)
    assert len(warnings) == 1


def test_evolve():
    m = lorentz()
    solver = bbfric.SolverConfig()
    solver.record_heating = False
    solver.sample_interval = 1.0
    out = bbfric.evolve(model=m, beta0=0.0, Omega=0.0, theta=0.0, T1=T2, T2=T2, mass=1e-20,
                        radius=1e-9, t_end=3.0, solver=solver)
    assert out["status"] == "ok"
    assert [s[1] for s in out["samples"]] == [0.0] * 4
    assert [s[0] for s in out["samples"]] == [0.0, 1.0, 2.0, 3.0]
