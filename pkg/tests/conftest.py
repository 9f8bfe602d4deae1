from __future__ import annotations

import numpy as np
import pytest

from twoproj_cli.cone import ConeConfig, RadialTable, build_radial_table
from twoproj_cli.spectrum import default_table


@pytest.fixture(scope="session")
def cfg() -> ConeConfig:
    return ConeConfig()


@pytest.fixture(scope="session")
def spectrum_table(cfg: ConeConfig) -> RadialTable:
    return default_table(cfg)


@pytest.fixture(scope="session")
def evolution_table(cfg: ConeConfig) -> RadialTable:
    """Covers the [-8, 8]^2 momentum grid (and rho up to 8 for 4D grids of half-width 4)."""
    return build_radial_table(np.linspace(-8.0, 8.0, 129), np.linspace(0.0, 8.0, 65), cfg)


@pytest.fixture(scope="session")
def wide_table(cfg: ConeConfig) -> RadialTable:
    return build_radial_table(np.linspace(-24.0, 24.0, 97), np.linspace(0.0, 24.0, 49), cfg)


@pytest.fixture(scope="session")
def small_table(cfg: ConeConfig) -> RadialTable:
    return build_radial_table(np.linspace(-4.0, 4.0, 33), np.linspace(0.0, 4.0, 17), cfg)
