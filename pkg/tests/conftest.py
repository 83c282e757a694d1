import math

import pytest
from hypothesis import HealthCheck, settings

from weakinterference.model import MeasurementSetup

settings.register_profile(
    "default", deadline=None, max_examples=200, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

NM = 1e-9
UM = 1e-6
DELTA = 10 * NM
WAIST = 10 * UM
THETA_FIG1 = math.radians(0.01)


@pytest.fixture
def fig1_setup():
    """Factory for the Fig. 1/2 scenario at a given post-selection angle (deg)."""

    def make(alpha_deg, theta=THETA_FIG1):
        return MeasurementSetup.from_angles(math.radians(alpha_deg), theta, DELTA, -DELTA, WAIST)

    return make


@pytest.fixture
def fig4_setup():
    def make(delta=DELTA, theta_deg=0.0, alpha_deg=45.0):
        return MeasurementSetup.from_angles(math.radians(alpha_deg), math.radians(theta_deg), delta, -delta, WAIST)

    return make
