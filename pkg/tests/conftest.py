from hypothesis import HealthCheck, settings

# Property tests share one slow box with BFS-heavy checks; wall-clock
# deadlines would make them flaky without catching anything real.
settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")
