import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("fast", max_examples=15, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "ci"))
