import pytest

from qlfd import CertifyOptions, certify
from qlfd.fixtures import builtin

_CACHE = {}


def certified(name, **kw):
    """Session-cached certification report for a builtin fixture."""
    key = (name, tuple(sorted(kw.items())))
    if key not in _CACHE:
        q, d = builtin(name)
        opts = CertifyOptions(**kw) if kw else None
        _CACHE[key] = certify(q, d, opts)
    return _CACHE[key]


@pytest.fixture(scope="session")
def report_for():
    return certified
