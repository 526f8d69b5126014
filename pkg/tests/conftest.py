import numpy as np
import pytest

from semibound import (
    BoundStateProblem,
    harmonic,
    linear,
    massless,
    nonrelativistic,
    power,
    relativistic,
)


def count_sign_changes(values: np.ndarray, threshold: float = 1e-6) -> int:
    """Sign alternations of the samples, ignoring entries below threshold*max."""
    v = np.asarray(values, dtype=float)
    finite = np.isfinite(v)
    big = finite & (np.abs(v) > threshold * np.abs(v[finite]).max())
    s = np.sign(v[big])
    return int(np.sum(s[1:] * s[:-1] < 0))


@pytest.fixture(scope="session")
def benchmark_a():
    """Relativistic paper benchmark: sqrt(p^2 + m^2) + lam|x|, m = lam = 0.2."""
    return BoundStateProblem(relativistic(0.2), linear(0.2))


@pytest.fixture(scope="session")
def benchmark_b():
    """Massless paper benchmark: |p| + lam|x|, lam = 0.2."""
    return BoundStateProblem(massless(), linear(0.2))


@pytest.fixture(scope="session")
def oscillator():
    """Nonrelativistic harmonic oscillator, m = omega = 1."""
    return BoundStateProblem(nonrelativistic(1.0), harmonic(1.0, 1.0))


@pytest.fixture(scope="session")
def airy_problem():
    """p^2 + |x| (2m = 1, lam = 1): eigenvalues at Airy / Airy-prime zeros."""
    return BoundStateProblem(nonrelativistic(0.5), linear(1.0))


def builtin_problems():
    """Every built-in kinetic law paired with every built-in potential."""
    laws = [nonrelativistic(1.0), relativistic(0.2), massless()]
    pots = [linear(0.2), harmonic(1.0, 1.0), power(0.5, 4.0)]
    return [BoundStateProblem(law, pot) for law in laws for pot in pots]
