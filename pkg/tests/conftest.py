import os

from hypothesis import HealthCheck, settings

from hildenkit.braid.properties import SEED_ENV

# one profile for the whole suite; HILDENKIT_SEED pins the hypothesis seed too
settings.register_profile(
    "hildenkit",
    max_examples=200,
    deadline=None,
    derandomize=SEED_ENV not in os.environ,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("hildenkit")


def pytest_configure(config):
    seed = os.environ.get(SEED_ENV)
    if seed is not None and config.getoption("hypothesis_seed", None) is None:
        config.option.hypothesis_seed = int(seed)


_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" in report.nodeid and (report.when == "call" or report.failed):
        _ACCEPTANCE[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", {})
    criteria = getattr(mod, "CRITERIA", {})
    terminalreporter.section("acceptance criteria")
    for test, outcome in _ACCEPTANCE.items():
        verdict = "PASS" if outcome == "passed" else "FAIL"
        name = criteria.get(test, test)
        detail = results.get(name, (None, outcome))[1]
        terminalreporter.write_line(f"{verdict} {name}: {detail}")
