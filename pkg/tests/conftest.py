import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from singlocus.verify import AlgebraContext

_CONTEXTS = {}


def get_context(label) -> AlgebraContext:
    """Session-wide cache: algebras and derived artifacts are expensive."""
    ctx = _CONTEXTS.get(label)
    if ctx is None:
        ctx = AlgebraContext(label)
        _CONTEXTS[label] = ctx
    return ctx


@pytest.fixture(scope="session")
def ctx_a1():
    return get_context("A1")


@pytest.fixture(scope="session")
def ctx_a2():
    return get_context("A2")


@pytest.fixture(scope="session")
def ctx_a3():
    return get_context("A3")


@pytest.fixture(scope="session")
def ctx_b2():
    return get_context("B2")


@pytest.fixture(scope="session")
def ctx_c2():
    return get_context("C2")


@pytest.fixture(scope="session")
def ctx_g2():
    return get_context("G2")
