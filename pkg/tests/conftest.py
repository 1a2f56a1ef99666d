import os

import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from square_tiled import Origami
from square_tiled.core import _is_connected0

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# Named surfaces, 1-based cycle notation.
NAMED = {
    "torus": ("()", "()", 1),
    "eierlegende_wollmilchsau": ("(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)", 8),
    "four_square_holonomy": ("(1,2)(3,4)", "(2,3)", 4),
    "swiss_cross": ("(2,1,3)", "(5,1,4)", 5),
    "l_shape_5": ("(1,2,3,4)", "(1,5)", 5),
    "l_shape_6": ("(1,2,3,4,5)", "(1,6)", 6),
    "klein_four_cover": ("(1,2)(3,4)", "(1,3)(2,4)", 4),
}

# two rows of six squares; tau images spelled out in one-line form
ORNITHORYNQUE = Origami.from_images(
    [2, 3, 4, 5, 6, 1, 8, 9, 10, 11, 12, 7],
    [9, 8, 7, 12, 11, 10, 5, 6, 3, 4, 1, 2],
)


def named(name: str) -> Origami:
    if name == "ornithorynque":
        return ORNITHORYNQUE
    s, t, n = NAMED[name]
    return Origami.from_cycles(s, t, n)


@pytest.fixture
def surface():
    return named


@st.composite
def origamis(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    r = tuple(draw(st.permutations(range(n))))
    u = tuple(draw(st.permutations(range(n))))
    assume(_is_connected0(r, u))
    return Origami.from_zero_based(r, u)


@st.composite
def singular_origamis(draw, min_n=3, max_n=8):
    """Connected origamis with at least one cone point (genus at least two)."""
    from square_tiled.topology import singular_mask

    o = draw(origamis(min_n, max_n))
    assume(any(singular_mask(o)))
    return o


@st.composite
def relabellings(draw, n):
    from square_tiled import Permutation

    return Permutation(tuple(x + 1 for x in draw(st.permutations(range(n)))))


# acceptance results, printed once per criterion at the end of the run
ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = {}


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(ACCEPTANCE, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        ok, title, failed = results[num]
        line = f"{'PASS' if ok else 'FAIL'} criterion {num}: {title}"
        if failed:
            line += " [failed: " + "; ".join(failed) + "]"
        terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Context manager that collects named checks and records one verdict."""
    from contextlib import contextmanager

    @contextmanager
    def run(num, title):
        checks = []
        try:
            yield checks
        except Exception as exc:
            checks.append((f"raised {type(exc).__name__}: {exc}", False))
            raise
        finally:
            failed = [name for name, ok in checks if not ok]
            request.config.stash[ACCEPTANCE][num] = (bool(checks) and not failed, title, failed)
        assert not failed, failed

    return run
