import sys
import warnings

import numpy as np
import pytest

from kernelsig import KernelSpec, SignatureModel, gen_circle
from kernelsig.errors import IllConditionedWarning


@pytest.fixture(autouse=True)
def _quiet_conditioning():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IllConditionedWarning)
        yield


@pytest.fixture(scope="session")
def circle30():
    return gen_circle(30)


@pytest.fixture(scope="session")
def circle_gauss(circle30):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IllConditionedWarning)
        return SignatureModel.fit(circle30, KernelSpec.gauss(), 0.0)


def fd_gradient(f, x, h=1e-5):
    """Central differences of a scalar or vector valued ``f``."""
    x = np.asarray(x, dtype=float)
    cols = []
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        cols.append((np.asarray(f(x + e)) - np.asarray(f(x - e))) / (2 * h))
    return np.stack(cols, axis=-1)


def rel_err(approx, exact):
    approx, exact = np.asarray(approx), np.asarray(exact)
    return float(np.linalg.norm(approx - exact) / max(np.linalg.norm(exact), 1e-300))


def random_model(rng, spec, m=None, d=None, alpha=0.0):
    d = d or int(rng.integers(2, 4))
    m = m or int(rng.integers(5, 25))
    pts = rng.uniform(-1, 1, (m, d))
    return SignatureModel.fit(pts, spec, alpha)


def random_rotation(rng, d):
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
