import json
import math

import numpy as np
import pytest

from oscigen.errors import IntegrationError
from oscigen.excitation import (
    bogoliubov_from_frequency,
    excitation_report,
    nu_from_force,
)
from oscigen.ode import integrate_path
from oscigen.profiles import (
    ForceProfile,
    FrequencyProfile,
    ProfileError,
    load_profile,
)


# -- profile admission -------------------------------------------------------

def test_unknown_kinds_rejected():
    with pytest.raises(ProfileError):
        ForceProfile("sawtooth", {"f0": 1.0})
    with pytest.raises(ProfileError):
        FrequencyProfile("linear", {"omega": 1.0})


def test_missing_fields_rejected():
    with pytest.raises(ProfileError):
        ForceProfile("gaussian", {"f0": 1.0})
    with pytest.raises(ProfileError):
        FrequencyProfile("tanh_ramp", {"omega2_minus": 1.0, "T": 1.0})


def test_nondecaying_tabulated_force_rejected():
    ts = np.linspace(-1.0, 1.0, 32)
    with pytest.raises(ProfileError):
        ForceProfile.tabulated(ts, np.cos(ts))


def test_nonpositive_frequency_rejected():
    with pytest.raises(ProfileError):
        FrequencyProfile.constant(0.0)
    with pytest.raises(ProfileError):
        FrequencyProfile.sudden_step(1.0, -2.0)
    ts = np.linspace(0.0, 10.0, 64)
    with pytest.raises(ProfileError):
        FrequencyProfile.tabulated(ts, np.ones_like(ts) - 2.0)


def test_profile_evaluation():
    g = ForceProfile.gaussian(2.0, 1.5, 1.0)
    assert g(1.0) == pytest.approx(2.0)
    assert g(1.0 + 1.5) == pytest.approx(2.0 * math.exp(-1.0))
    r = ForceProfile.rectangular(1.0, 0.0, 1.0)
    assert r(0.5) == 1.0 and r(2.0) == 0.0
    f = FrequencyProfile.tanh_ramp(1.0, 4.0, 1.0)
    assert f.omega_minus == 1.0 and f.omega_plus == 2.0
    assert f.omega_sq(0.0) == pytest.approx(2.5)


def test_load_profile_from_json_file(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"kind": "gaussian", "f0": 1.0, "tau": 1.0, "t0": 0.0}))
    prof = load_profile(path)
    assert isinstance(prof, ForceProfile)
    path.write_text("not json {")
    with pytest.raises(ProfileError):
        load_profile(path)


def test_load_tabulated_needs_disambiguation(tmp_path):
    ts = np.arange(-8.0, 8.01, 0.125)
    doc = {"kind": "tabulated", "times": list(ts), "values": list(np.exp(-ts**2))}
    with pytest.raises(ProfileError):
        load_profile(doc)
    assert isinstance(load_profile(dict(doc), what="nu"), ForceProfile)
    doc["profile"] = "force"
    assert isinstance(load_profile(doc), ForceProfile)


def test_load_tabulated_from_csv(tmp_path):
    ts = np.arange(-8.0, 8.01, 0.125)
    lines = ["# time, force"]
    lines += [f"{t},{math.exp(-t*t)}" for t in ts]
    (tmp_path / "f.csv").write_text("\n".join(lines))
    doc = {"kind": "tabulated", "csv": "f.csv", "profile": "force"}
    (tmp_path / "p.json").write_text(json.dumps(doc))
    prof = load_profile(tmp_path / "p.json")
    assert isinstance(prof, ForceProfile)
    assert prof.times.size == ts.size


# -- nu extraction -----------------------------------------------------------

def test_nu_gaussian_closed_form():
    nu = nu_from_force(ForceProfile.gaussian(1.0, 1.0, 0.0), 1.0)
    assert nu.value == pytest.approx(math.pi * math.exp(-0.5) / 2.0, abs=1e-10)
    # t0 only shifts the phase
    nu2 = nu_from_force(ForceProfile.gaussian(1.0, 1.0, 3.7), 1.0)
    assert nu2.value == pytest.approx(nu.value, rel=1e-14)


def test_nu_rectangular():
    # |FT|^2 = 4 f0^2 sin^2(omega T / 2) / omega^2
    f0, t_on, t_off, omega = 1.5, 0.3, 2.1, 1.7
    want = 2.0 * f0**2 * math.sin(omega * (t_off - t_on) / 2.0) ** 2 / omega**3
    nu = nu_from_force(ForceProfile.rectangular(f0, t_on, t_off), omega)
    assert nu.value == pytest.approx(want, rel=1e-13)
    # a full-period pulse excites nothing
    zero = nu_from_force(ForceProfile.rectangular(1.0, 0.0, 2.0 * math.pi), 1.0)
    assert zero.value < 1e-30


def test_nu_damped_cosine_against_tabulated_route():
    f0, gamma, omega_d, omega = 1.0, 0.8, 2.0, 1.3
    closed = nu_from_force(ForceProfile.damped_cosine(f0, gamma, omega_d), omega)
    # the |t| kink at zero caps the spline at second order, so sample densely
    ts = np.arange(-30.0, 30.0 + 1e-9, 0.01)
    tab = ForceProfile.tabulated(ts, f0 * np.exp(-gamma * np.abs(ts)) * np.cos(omega_d * ts))
    sampled = nu_from_force(tab, omega)
    assert sampled.value == pytest.approx(closed.value, rel=1e-4)


def test_nu_tabulated_gaussian_64_samples_per_period():
    ts = np.arange(-8.0, 8.0 + 1e-9, 2.0 * math.pi / 64.0)
    tab = ForceProfile.tabulated(ts, np.exp(-(ts**2)))
    nu = nu_from_force(tab, 1.0)
    want = math.pi * math.exp(-0.5) / 2.0
    assert nu.value == pytest.approx(want, rel=1e-6)


def test_nu_zero_force():
    nu = nu_from_force(ForceProfile.gaussian(0.0, 1.0, 0.0), 1.0)
    assert nu.value == 0.0


def test_nu_argument_validation():
    with pytest.raises(ValueError):
        nu_from_force(ForceProfile.gaussian(1.0, 1.0, 0.0), 0.0)
    with pytest.raises(TypeError):
        nu_from_force(FrequencyProfile.constant(1.0), 1.0)


# -- rho extraction ----------------------------------------------------------

def test_rho_constant_frequency():
    r = bogoliubov_from_frequency(FrequencyProfile.constant(1.3))
    assert r.rho == 0.0
    assert r.alpha == 1.0 and r.beta == 0.0
    assert r.wronskian_residual == 0.0


def test_rho_sudden_step():
    r = bogoliubov_from_frequency(FrequencyProfile.sudden_step(1.0, 2.0))
    assert r.rho == pytest.approx(1.0 / 9.0, abs=1e-12)
    assert r.wronskian_residual < 1e-12
    # general jump formula ((w+ - w-)/(w+ + w-))^2
    r = bogoliubov_from_frequency(FrequencyProfile.sudden_step(0.7, 1.9, t_jump=2.0))
    want = ((1.9 - 0.7) / (1.9 + 0.7)) ** 2
    assert r.rho == pytest.approx(want, rel=1e-12)


def test_rho_tanh_ramp_reflection_formula():
    wm, wp, T = 1.0, 2.0, 1.0
    r = bogoliubov_from_frequency(FrequencyProfile.tanh_ramp(wm**2, wp**2, T), tol=1e-10)
    want = (
        math.sinh(math.pi * (wp - wm) * T / 2.0) ** 2
        / math.sinh(math.pi * (wp + wm) * T / 2.0) ** 2
    )
    assert r.rho == pytest.approx(want, rel=1e-6)
    assert r.wronskian_residual < 1e-9
    assert r.steps > 100


def test_rho_adiabatic_suppression():
    T = 20.0 / 3.0
    r = bogoliubov_from_frequency(FrequencyProfile.tanh_ramp(1.0, 4.0, T), tol=1e-10)
    assert r.rho < 1e-3
    assert r.wronskian_residual < 1e-9


def test_rho_sudden_limit_of_fast_ramp():
    r = bogoliubov_from_frequency(
        FrequencyProfile.tanh_ramp(1.0, 4.0, 1e-3 / 2.0), tol=1e-10
    )
    assert r.rho == pytest.approx(1.0 / 9.0, rel=1e-2)


def test_rho_tabulated_profile():
    T = 1.0
    ts = np.arange(-14.0, 14.0 + 1e-9, 0.05)
    om = np.sqrt(1.0 + 3.0 * (1.0 + np.tanh(ts / T)) / 2.0)
    prof = FrequencyProfile.tabulated(ts, om)
    r = bogoliubov_from_frequency(prof, tol=1e-9)
    want = (
        math.sinh(math.pi * 0.5) ** 2 / math.sinh(math.pi * 1.5) ** 2
    )
    assert r.rho == pytest.approx(want, rel=1e-4)
    assert r.wronskian_residual < 1e-8


def test_wronskian_contract_scales_with_tolerance():
    r = bogoliubov_from_frequency(FrequencyProfile.tanh_ramp(1.0, 4.0, 1.0), tol=1e-8)
    assert r.wronskian_residual < 10.0 * 1e-8
    assert 0.0 <= r.rho < 1.0


def test_tolerance_domain():
    prof = FrequencyProfile.tanh_ramp(1.0, 4.0, 1.0)
    with pytest.raises(ValueError):
        bogoliubov_from_frequency(prof, tol=1e-3)
    with pytest.raises(ValueError):
        bogoliubov_from_frequency(prof, tol=1e-13)


# -- integrator --------------------------------------------------------------

def test_integrator_reproduces_harmonic_motion():
    def rhs(t, y):
        return np.array([y[1], -y[0]], dtype=complex)

    y0 = np.array([1.0, 0.0], dtype=complex)
    span = 20.0 * math.pi
    states, stats = integrate_path(rhs, 0.0, [span], y0, rtol=1e-11, atol=1e-13)
    assert states[0][0].real == pytest.approx(1.0, abs=1e-8)
    assert states[0][1].real == pytest.approx(0.0, abs=1e-8)
    assert stats.steps > 50


def test_integrator_step_budget():
    def rhs(t, y):
        return np.array([y[1], -y[0]], dtype=complex)

    with pytest.raises(IntegrationError):
        integrate_path(
            rhs, 0.0, [1000.0], np.array([1.0, 0.0], dtype=complex),
            rtol=1e-12, atol=1e-14, max_steps=10,
        )


# -- combined reports --------------------------------------------------------

def test_report_for_constant_frequency():
    rep = excitation_report(FrequencyProfile.constant(1.0))
    d = rep.to_json_dict()
    assert d["rho"] == 0.0
    assert d["mean_n0"] == 0.0
    assert d["vacuum_row"][0] == 1.0
    assert all(x == 0.0 for x in d["vacuum_row"][1:])


def test_report_for_sudden_step():
    rep = excitation_report(FrequencyProfile.sudden_step(1.0, 2.0))
    assert rep.value == pytest.approx(1.0 / 9.0, abs=1e-12)
    assert rep.mean_n0 == pytest.approx(0.125, abs=1e-12)
    # vacuum row must agree with the parametric family's table
    from oscigen.parametric import param_prob_table

    row = param_prob_table(rep.value, size=8, mode="float").values[0]
    assert np.allclose(rep.vacuum_row, row, atol=1e-12)


def test_report_for_zero_force():
    rep = excitation_report(ForceProfile.gaussian(0.0, 1.0, 0.0), omega=1.0)
    assert rep.value == 0.0
    assert rep.mean_n0 == 0.0
    assert rep.vacuum_row[0] == 1.0


def test_report_poisson_row_matches_forced_table():
    from oscigen.forced import forced_prob_table

    rep = excitation_report(ForceProfile.gaussian(1.0, 1.0, 0.0), omega=1.0)
    row = forced_prob_table(rep.value, size=8, mode="float").values[0]
    assert np.allclose(rep.vacuum_row, row, atol=1e-12)
    assert rep.mean_n0 == pytest.approx(rep.value)


def test_report_requires_omega_for_force():
    with pytest.raises(ValueError):
        excitation_report(ForceProfile.gaussian(1.0, 1.0, 0.0))
