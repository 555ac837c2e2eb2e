import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


_LIMIT = 60.0


def pytest_sessionstart(session):
    import time

    session.config._zerofree_t0 = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    import time

    t0 = getattr(session.config, "_zerofree_t0", None)
    if t0 is None or session.config.option.collectonly:
        return
    took = time.perf_counter() - t0
    ok = took < _LIMIT
    reporter = session.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None:
        reporter.write_line(
            f"{'PASS' if ok else 'FAIL'} criterion 7 (runtime): suite finished in {took:.1f} s (limit {_LIMIT:.0f} s)"
        )
    if not ok and exitstatus == 0:
        session.exitstatus = 1
