import numpy as np

from transinvest.model import FirmParams

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS = {}


def random_firms(n, seed=2024):
    """Reproducible batch of valid parameter sets with a positive baseline margin."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        c = rng.uniform(0.2, 3.0)
        out.append(FirmParams(p=c + rng.uniform(0.2, 5.0), c=c, A=rng.uniform(10, 1000),
                              k=rng.uniform(0.2, 6.0), beta=rng.uniform(0.3, 1.0),
                              B=rng.uniform(0.0, 3.0)))
    return out


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
