import os

import mpmath as mp
import pytest

from lerchkit import identities


def approx_equal(a, b, tol):
    """Absolute comparison of two mp numbers (complex-safe)."""
    return abs(mp.mpmathify(a) - mp.mpmathify(b)) <= mp.mpf(tol)


def assert_close(a, b, tol, label=""):
    d = abs(mp.mpmathify(a) - mp.mpmathify(b))
    assert d <= mp.mpf(tol), (
        f"{label}: |{mp.nstr(mp.mpmathify(a), 20)} - "
        f"{mp.nstr(mp.mpmathify(b), 20)}| = {mp.nstr(d, 5)} > {tol}")


@pytest.fixture(scope="session")
def registry_records():
    """Single shared full-registry run; several tests consume it."""
    cases = identities.identity_registry()
    jobs = min(4, os.cpu_count() or 1)
    return identities.verify_many(cases, p=132, jobs=jobs)
