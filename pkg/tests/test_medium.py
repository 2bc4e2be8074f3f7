import json
import math

import numpy as np
import pytest
from scipy.constants import c, epsilon_0, hbar

from conftest import DIPOLE, GAMMA, make_config
from src.medium import (
    ConfigError,
    FieldSet,
    InvalidParameterError,
    LevelScheme,
    SchemeInconsistencyError,
    Variant,
    angular_to_wavelength,
    build_scheme,
    closure_frequency,
    coupling_constant,
    field_coupling,
    decay_rate_from_dipole,
    dipole_from_decay_rate,
    intensity_to_rabi,
    level_phases,
    load_config,
    per_cm3,
    rabi_to_intensity,
    wavelength_to_angular,
    wavenumber_to_angular,
)


def transitions_config(variant: str, transitions: dict) -> dict:
    raw = make_config(variant)
    raw["scheme"].pop("levels")
    raw["scheme"]["transitions"] = transitions
    return raw


class TestCouplingConstant:
    def test_hand_evaluation(self):
        nu, density, dipole = 2.4e15, 1.4e19, 2e-29
        expected = nu * density * dipole**2 / (2 * epsilon_0 * hbar * c)
        assert coupling_constant(nu, density, dipole) == pytest.approx(expected, rel=1e-12)

    def test_empty_medium(self):
        assert coupling_constant(2.4e15, 0.0, DIPOLE) == 0.0

    def test_linear_in_density_quadratic_in_dipole(self):
        base = coupling_constant(2.4e15, 1e18, DIPOLE)
        assert coupling_constant(2.4e15, 2e18, DIPOLE) == pytest.approx(2 * base, rel=1e-15)
        assert coupling_constant(2.4e15, 1e18, 3 * DIPOLE) == pytest.approx(9 * base, rel=1e-14)

    def test_per_field_coupling(self):
        raw = make_config(dipoles=(DIPOLE, 2 * DIPOLE, DIPOLE, 0.5 * DIPOLE))
        scheme, fields, medium = build_scheme(raw)
        for j, scale in zip((1, 2, 3, 4), (1.0, 4.0, 1.0, 0.25)):
            expected = scale * coupling_constant(fields.nu(j), medium.density, DIPOLE)
            assert field_coupling(scheme, fields, medium, j) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("nu,density,dipole", [
        (0.0, 1e18, DIPOLE),
        (-1.0, 1e18, DIPOLE),
        (2.4e15, -1.0, DIPOLE),
        (2.4e15, 1e18, 0.0),
    ])
    def test_invalid_arguments(self, nu, density, dipole):
        with pytest.raises(InvalidParameterError):
            coupling_constant(nu, density, dipole)


class TestUnits:
    @pytest.mark.parametrize("wavelength", [236e-9, 780e-9, 5.26e-6, 23.4e-6, 1e-3])
    def test_wavelength_round_trip(self, wavelength):
        assert angular_to_wavelength(wavelength_to_angular(wavelength)) == pytest.approx(wavelength, rel=1e-12)

    def test_wavenumber(self):
        assert wavenumber_to_angular(10.0) == pytest.approx(2 * math.pi * c * 1000.0, rel=1e-15)
        assert angular_to_wavelength(wavenumber_to_angular(10.0)) == pytest.approx(1e-3, rel=1e-12)

    def test_per_cm3(self):
        assert per_cm3(1.4e19) == pytest.approx(1.4e13)

    def test_dipole_decay_round_trip(self):
        omega = wavelength_to_angular(780e-9)
        dipole = dipole_from_decay_rate(omega, GAMMA)
        assert decay_rate_from_dipole(omega, dipole) == pytest.approx(GAMMA, rel=1e-12)
        # Rb D2 dipole is a few e-29 C m
        assert 1e-29 < dipole < 5e-29

    def test_intensity_round_trip(self):
        intensity = rabi_to_intensity(1e7, DIPOLE)
        assert intensity == pytest.approx(0.5 * epsilon_0 * c * (hbar * 1e7 / DIPOLE) ** 2)
        assert intensity_to_rabi(intensity, DIPOLE) == pytest.approx(1e7, rel=1e-12)


class TestClosure:
    @pytest.mark.parametrize("variant,expected", [
        (Variant.DOUBLE_LAMBDA, 3.0 - 2.0 + 5.0),
        (Variant.LADDER_LAMBDA, 10.0 - 2.0 - 5.0),
        (Variant.V_LAMBDA, 3.0 + 2.0 - 1.0),
    ])
    def test_frequency_closure(self, variant, expected):
        nus = {
            Variant.DOUBLE_LAMBDA: (3.0, 2.0, 5.0),
            Variant.LADDER_LAMBDA: (10.0, 2.0, 5.0),
            Variant.V_LAMBDA: (3.0, 2.0, 1.0),
        }[variant]
        assert closure_frequency(variant, *nus) == pytest.approx(expected)

    def test_level_phases_reference(self):
        phases = level_phases(Variant.DOUBLE_LAMBDA, 3.0, 2.0, 5.0)
        assert phases == {"a": 3.0, "b": 0.0, "c": 1.0, "d": 6.0}

    @pytest.mark.parametrize("variant", ["double_lambda", "ladder_lambda", "v_lambda"])
    def test_built_fields_satisfy_closure(self, variant):
        _, fields, _ = build_scheme(make_config(variant, detunings=(1e6, -3e5, 2e5)))
        expected = closure_frequency(Variant(variant), fields.nu(1), fields.nu(2), fields.nu(3))
        assert fields.nu(4) == pytest.approx(expected, rel=1e-15)


class TestBuildScheme:
    def test_double_lambda_from_levels(self, dl_scheme):
        scheme, fields, medium = dl_scheme
        assert scheme.variant is Variant.DOUBLE_LAMBDA
        assert scheme.energies["b"] == 0.0
        assert scheme.omega_cb == pytest.approx(scheme.omega_ab - scheme.omega_ac, rel=1e-9)
        assert fields.nu(1) == pytest.approx(scheme.omega_ab)
        assert fields.rabi(2) == pytest.approx(GAMMA)
        assert medium.density == 1e16
        assert medium.length == 1e-3

    def test_rb_from_wavelengths(self):
        raw = transitions_config("v_lambda", {
            "ab": {"value": 780, "unit": "nm"},
            "ac": {"value": 565, "unit": "nm"},
            "db": {"value": 23.4, "unit": "um"},
        })
        scheme, fields, _ = build_scheme(raw)
        assert scheme.variant is Variant.V_LAMBDA
        assert angular_to_wavelength(fields.nu(1)) == pytest.approx(780e-9, rel=1e-12)
        assert angular_to_wavelength(fields.nu(2)) == pytest.approx(565e-9, rel=1e-12)
        assert angular_to_wavelength(fields.nu(4)) == pytest.approx(23.4e-6, rel=1e-9)
        # field 3 follows from the closure rather than the quoted 335 nm
        assert angular_to_wavelength(fields.nu(3)) == pytest.approx(332.3e-9, rel=1e-3)

    def test_no_resonance_at_236nm(self):
        omega_ab = wavelength_to_angular(236e-9)
        omega_vib = wavenumber_to_angular(1900.0)
        raw = transitions_config("ladder_lambda", {
            "ab": {"value": 236, "unit": "nm"},
            "ac": {"value": omega_ab - 2 * omega_vib, "unit": "rad/s"},
            "db": {"value": 1900, "unit": "cm-1"},
        })
        scheme, _, _ = build_scheme(raw)
        assert scheme.omega_ab == pytest.approx(2 * math.pi * c / 236e-9, rel=1e-12)
        assert scheme.omega_db == pytest.approx(omega_vib, rel=1e-12)
        assert scheme.energies["c"] == pytest.approx(2 * omega_vib, rel=1e-9)

    def test_inconsistent_transitions(self):
        raw = transitions_config("double_lambda", {
            "ab": {"value": 2.4e15, "unit": "rad/s"},
            "ac": {"value": 2.3e15, "unit": "rad/s"},
            "cb": {"value": 2.0e14, "unit": "rad/s"},
            "dc": {"value": 2.2e15, "unit": "rad/s"},
        })
        with pytest.raises(SchemeInconsistencyError, match="ω_cb = ω_ab - ω_ac"):
            build_scheme(raw)

    def test_levels_and_transitions_exclusive(self, dl_config):
        dl_config["scheme"]["transitions"] = {"ab": {"value": 780, "unit": "nm"}}
        with pytest.raises(ConfigError, match="exactly one"):
            build_scheme(dl_config)

    def test_missing_field(self, dl_config):
        del dl_config["fields"]["2"]
        with pytest.raises(ConfigError, match=r"\['2'\]"):
            build_scheme(dl_config)

    def test_unknown_unit(self, dl_config):
        dl_config["medium"]["density"]["unit"] = "ft-3"
        with pytest.raises(ConfigError, match="unknown density unit"):
            build_scheme(dl_config)

    def test_wrong_geometry(self, dl_config):
        dl_config["scheme"]["levels"]["d"] = {"value": 1e10, "unit": "rad/s"}
        with pytest.raises(SchemeInconsistencyError, match="field 3"):
            build_scheme(dl_config)

    def test_negative_rate_rejected(self, dl_config):
        dl_config["scheme"]["decay"]["a"] = {"value": -1.0, "unit": "rad/s"}
        with pytest.raises(SchemeInconsistencyError):
            build_scheme(dl_config)

    def test_nonpositive_length(self, dl_config):
        dl_config["medium"]["length"]["value"] = 0.0
        with pytest.raises(InvalidParameterError):
            build_scheme(dl_config)

    def test_field4_detuning_ignored(self, dl_config, caplog):
        dl_config["fields"]["4"]["detuning"] = {"value": 1e6, "unit": "rad/s"}
        with caplog.at_level("WARNING"):
            _, fields, _ = build_scheme(dl_config)
        assert "Field 4 detuning ignored" in caplog.text
        assert fields.nu(4) == pytest.approx(closure_frequency(Variant.DOUBLE_LAMBDA, fields.nu(1),
                                                               fields.nu(2), fields.nu(3)))

    def test_cyclic_units(self, dl_config):
        dl_config["fields"]["2"]["rabi"] = {"value": 6, "unit": "MHz"}
        _, fields, _ = build_scheme(dl_config)
        assert fields.rabi(2) == pytest.approx(GAMMA)

    def test_phase_applied(self, dl_config):
        dl_config["fields"]["2"]["phase"] = math.pi / 2
        _, fields, _ = build_scheme(dl_config)
        np.testing.assert_allclose(fields.rabi(2), 1j * GAMMA, atol=1e-6)


class TestLoadConfig:
    def test_round_trip_file(self, config_file):
        scheme, fields, medium = build_scheme(load_config(config_file))
        assert scheme.variant is Variant.DOUBLE_LAMBDA

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="does not exist"):
            load_config(tmp_path / "absent.json")

    def test_bad_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigError, match="not valid JSON"):
            load_config(path)

    def test_unknown_key_wrapped(self, tmp_path, dl_config):
        dl_config["medium"]["temperature"] = {"value": 300, "unit": "K"}
        path = tmp_path / "extra.json"
        path.write_text(json.dumps(dl_config), encoding="utf-8")
        with pytest.raises(ConfigError, match="invalid simulation config"):
            load_config(path)


class TestModels:
    def test_coherence_decay_defaults_to_half_sum(self):
        scheme = LevelScheme(
            variant=Variant.DOUBLE_LAMBDA,
            energies={"a": 10.0, "b": 0.0, "c": 1.0, "d": 9.0},
            dipoles=(DIPOLE,) * 4,
            decay={"a": 4.0, "d": 2.0},
            dephasing={"cb": 0.5},
        )
        assert scheme.coherence_decay("a", "b") == 2.0
        assert scheme.coherence_decay("d", "a") == 3.0
        assert scheme.coherence_decay("b", "c") == 0.5
        assert scheme.branching_ratios("a") == {"b": 1.0}

    def test_wavevectors_required(self, dl_scheme):
        _, fields, _ = dl_scheme
        with pytest.raises(ValueError, match="wavevectors"):
            fields.k(1)
        filled = fields.with_wavevectors((1.0, 2.0, 3.0, 4.0))
        assert filled.k(4) == 4.0
        assert isinstance(filled, FieldSet)

    def test_branching_must_sum_to_one(self):
        with pytest.raises(ValueError, match="sum to 1"):
            LevelScheme(
                variant=Variant.DOUBLE_LAMBDA,
                energies={"a": 10.0, "b": 0.0, "c": 1.0, "d": 9.0},
                dipoles=(DIPOLE,) * 4,
                branching={"a": {"b": 0.5, "c": 0.4}},
            )
