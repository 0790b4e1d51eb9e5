import numpy as np
import pytest
from hypothesis import settings

from bama.bitio import BitBlock, BitVector

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")

_ACCEPTANCE_KEY = pytest.StashKey[list]()


def bits_from_positions(positions, n=16):
    return BitVector.from_positions(n, positions)


def block_from_positions(positions, n=16, index=0):
    return BitBlock(index, bits_from_positions(positions, n), n)


def random_bits(rng, n, p):
    return (rng.random(n) < p).astype(np.uint8)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def criterion(request):
    """Record one acceptance line; call ``criterion(name, ok, detail)`` before asserting."""
    lines = request.config.stash.setdefault(_ACCEPTANCE_KEY, [])

    def record(name, ok, detail=""):
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}".rstrip())
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
