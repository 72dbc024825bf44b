"""Shared pytest configuration.

Hypothesis runs with the deadline disabled because several properties
exercise adaptive quadrature, whose per-example latency varies too much
for wall-clock deadlines to be meaningful.
"""

from hypothesis import HealthCheck, settings

settings.register_profile(
    "quadrature",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("quadrature")
