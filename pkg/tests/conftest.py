import numpy as np
import pytest


def cgauss(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def rand_symmetric(rng, n):
    z = cgauss(rng, n, n)
    return (z + z.T) / 2


def rand_hermitian(rng, n):
    z = cgauss(rng, n, n)
    return (z + z.conj().T) / 2


def rand_psd(rng, n, rank=None):
    g = cgauss(rng, n if rank is None else rank, n)
    return g.conj().T @ g


def rel_err(a, b):
    return abs(a - b) / max(1.0, abs(b))


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record the verdict of an acceptance criterion for the summary table."""
    def record(number: int, ok: bool, detail: str) -> bool:
        prev = _ACCEPTANCE.get(number)
        if prev is not None:
            ok = ok and prev[0]
            detail = f"{prev[1]}; {detail}"
        _ACCEPTANCE[number] = (ok, detail)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
