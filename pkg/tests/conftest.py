import numpy as np
import pytest

from homofiber import get_entry, make_system, metric_norm


def combo(space, coeffs):
    """Linear combination of a Subspace basis."""
    return sum(c * e for c, e in zip(coeffs, space.basis))


def seeded_unit_pair(system, rng):
    """Random metric-unit (Xa, Xb); Xb is None when there is no second module."""
    ca = rng.standard_normal(system.ma.dim)
    Xa = combo(system.ma, ca)
    Xa = Xa / metric_norm(system, Xa)
    if system.mb is None or system.mb.dim == 0:
        return Xa, None
    cb = rng.standard_normal(system.mb.dim)
    Xb = combo(system.mb, cb)
    return Xa, Xb / metric_norm(system, Xb)


@pytest.fixture(scope="session")
def entries():
    """Catalog entries built once per test session."""
    names = ("hopf:1", "hopf:2", "hopf:3", "su2", "kahler_s2", "twistor_su3")
    return {name: get_entry(name) for name in names}


@pytest.fixture(scope="session")
def hopf1(entries):
    return entries["hopf:1"]


def default_weights(entry, ratio=None):
    if entry.split.s == 1:
        return (1.0,)
    return (1.0, float(ratio)) if ratio is not None else entry.weights


def system_for(entry, ratio=None, k=0.0):
    return make_system(entry, weights=default_weights(entry, ratio), k=k)
