from __future__ import annotations

import numpy as np
import pytest

from twoproj_cli.algebra import SCALAR, SPINOR, VECTOR, classify_spin
from twoproj_cli.bargmann import QuadratureSpec
from twoproj_cli.cone import build_radial_table
from twoproj_cli.errors import ConfigurationError, DomainError
from twoproj_cli.spectrum import (
    EIGENVALUE_TOL,
    energy_range,
    finite_section,
    spectrum_range,
    spin_from_spectral_value,
)


def test_spectrum_fills_unit_interval(spectrum_table):
    report = spectrum_range(spectrum_table)
    assert report.samples == 200 * 50
    assert report.observed_min < 1e-3
    assert report.observed_max > 0.999
    assert report.empty_bins == 0
    assert 0.0 <= report.observed_min <= report.observed_max <= 1.0


def test_spectrum_needs_wide_table(small_table):
    with pytest.raises(ConfigurationError):
        spectrum_range(small_table)


def test_finite_sections_fill_outward(spectrum_table):
    quad = QuadratureSpec(192)
    sections = [finite_section(n, 0.0, spectrum_table, quad) for n in (4, 16, 64)]
    for section in sections:
        eig = section.eigenvalues
        assert eig[0] >= -EIGENVALUE_TOL
        assert eig[-1] <= 1.0 + EIGENVALUE_TOL
    mins = [s.eigenvalues[0] for s in sections]
    maxs = [s.eigenvalues[-1] for s in sections]
    assert mins[0] >= mins[1] - EIGENVALUE_TOL >= mins[2] - 2 * EIGENVALUE_TOL
    assert maxs[0] <= maxs[1] + EIGENVALUE_TOL <= maxs[2] + 2 * EIGENVALUE_TOL


def test_finite_section_is_symmetric(spectrum_table):
    section = finite_section(8, 1.0, spectrum_table)
    np.testing.assert_array_equal(section.matrix, section.matrix.T)


def test_finite_section_rejects_bad_settings(spectrum_table):
    with pytest.raises(ConfigurationError):
        finite_section(1, 0.0, spectrum_table)
    with pytest.raises(ConfigurationError):
        finite_section(16, 0.0, spectrum_table, QuadratureSpec(8))


def test_spin_from_spectral_value():
    assert spin_from_spectral_value(0.0) == SCALAR
    assert spin_from_spectral_value(0.3) == SPINOR
    assert spin_from_spectral_value(1.0) == VECTOR
    with pytest.raises(DomainError):
        spin_from_spectral_value(1.2)


def test_refining_the_table_never_widens_gaps(cfg):
    coarse = build_radial_table(np.linspace(-10.0, 10.0, 41), np.linspace(0.0, 10.0, 21), cfg)
    fine = build_radial_table(np.linspace(-10.0, 10.0, 81), np.linspace(0.0, 10.0, 41), cfg)
    assert spectrum_range(fine).max_gap <= spectrum_range(coarse).max_gap + 1e-12


def test_spin_from_spectral_value_matches_classify_spin(spectrum_table):
    sampled = spectrum_table.mu_complement_values.ravel()
    values = np.concatenate((np.linspace(0.0, 1.0, 1001), [1e-14, 1.0 - 1e-14], sampled))
    for v in np.clip(values, 0.0, 1.0):
        assert spin_from_spectral_value(float(v)) == classify_spin(float(v))


def test_energy_range_is_positive(cfg):
    table = build_radial_table(np.linspace(-2.0, 6.0, 9), np.linspace(0.0, 2.0, 3), cfg)
    low, high = energy_range(table)
    assert 0.0 < low < high
